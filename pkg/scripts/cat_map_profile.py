"""Degree profile of the cat map and the iterate-based growth estimates."""

import argparse

from torusdyn.automorphism import TorusAut
from torusdyn.degrees import degree_profile, growth_limit_estimate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--matrix", default="2,1;1,1", help="rows separated by ';'")
    ap.add_argument("--n-max", type=int, default=20)
    args = ap.parse_args()
    rows = [[int(x) for x in r.split(",")] for r in args.matrix.split(";")]
    f = TorusAut(rows)
    prof = degree_profile(f)
    for p, d in enumerate(prof.degrees):
        print(f"d_{p} in [{float(d.lo):.15g}, {float(d.hi):.15g}]")
    print(f"h_a in [{float(prof.h_a.lo):.15g}, {float(prof.h_a.hi):.15g}]")
    for p in range(1, f.k):
        g = growth_limit_estimate(f, p, n_max=args.n_max)
        for n, est in enumerate(g.estimates, 1):
            print(f"p={p} n={n:2d} a_n={float(est.mid):.12f}")
        print(f"p={p} relative error at n={args.n_max}: <= {float(g.final_rel_error.hi):.3e}")


if __name__ == "__main__":
    main()

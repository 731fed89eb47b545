"""Signature of Q_Omega over random Kahler data, with exact inertia."""

import argparse
from collections import Counter

from torusdyn.cohomology import TorusModel
from torusdyn.hodge import random_kahler_form, signature_check, trial_rng


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    model = TorusModel(args.k)
    seen = Counter()
    for t in range(args.trials):
        rng = trial_rng(args.seed, t)
        cs = [random_kahler_form(rng, args.k) for _ in range(args.k - 2)]
        v = signature_check(cs, random_kahler_form(rng, args.k), model)
        seen[(v.signature, v.primitive_inertia, v.ok)] += 1
    for (sig, prim, ok), n in seen.items():
        print(f"{n:3d} trials: signature {sig}, primitive inertia {prim}, ok={ok}")


if __name__ == "__main__":
    main()

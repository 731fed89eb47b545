"""Certified phi-image ranks for the bundled groups and unit groups."""

import argparse

from torusdyn import corpus
from torusdyn.groups import invariant_chain, phi_map


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--word-cap", type=int, default=3)
    args = ap.parse_args()
    for name, G in corpus.bundled_groups().items():
        img = phi_map(G, invariant_chain(G), args.word_cap)
        print(f"{name:22s} k={G.k} gens={len(G.generators)} rank in [{img.rank_lower}, {img.rank_upper}] (max {G.k - 1})")


if __name__ == "__main__":
    main()

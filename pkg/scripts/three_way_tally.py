"""Tabulate where the three density forms disagree, split by hole content.

A hole state has a psi creator; it lies in the kernel of every pi_N, so the
finite-particle identities cannot see it.
"""
import sys

from spincs.fermi import three_way_check


def main(s=2, charges=(0, 1, 2), degree_bound=3):
    rep = three_way_check(s, charges, degree_bound)
    cols = ["cases", "NO~REC", "NO~COMP", "NO~COMP(hole-free)", "REC~COMP(hole-free)"]
    print(f"s={s} charges={list(charges)} degree<={degree_bound}")
    print(f"{'piece':<8}" + "".join(f"{c:>22}" for c in cols))
    for name, row in rep.notes["mismatch"].items():
        print(f"{name:<8}" + "".join(f"{row[c]:>22}" for c in cols))
    return 0


if __name__ == "__main__":
    sys.exit(main(*(int(x) for x in sys.argv[1:2])))

"""Link-by-link check of the finite-variable reduction of [Q, sum of difference parts].

Random antisymmetric inputs in N + s variables; prints which links of the
chain hold and compares the final factor N with N (s + 1).
"""
import random

from spincs import finite
from spincs.fermi import _omega_lenient, difference_reduction_check


def main(seed=0):
    rng = random.Random(seed)
    for s in (1, 2):
        for N in (1, 2):
            done = 0
            while done < 3:
                f = finite.project_pm(finite.random_spinpoly(N + s, s, 4, rng), -1)
                if not _omega_lenient(f, N):
                    continue
                done += 1
                links = difference_reduction_check(f, N)
                print(f"s={s} N={N}", {k: ("ok" if v else "FAILS") for k, v in links.items()})


if __name__ == "__main__":
    main()

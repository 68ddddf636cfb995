"""Nilpotency orders of ad_Q on T_ab,n and on the Euler power operators.

Prints, for each operator X and each r, the number of basis states on which
ad_Q^r(X) does not vanish.
"""
from fractions import Fraction

from spincs.fermi import (Q_operator, TEvaluator, ad_Q, component_states, euler_power_operator)


def tally(X, Qop, states, r_max):
    ops = [X]
    for _ in range(r_max):
        ops.append(ad_Q(ops[-1], Qop))
    return {r: sum(1 for st in states if ops[r].state(st)) for r in range(r_max + 1)}


def main(s=2, charges=(0, 1, 2), degree_bound=2):
    Qop = Q_operator(s)
    states = component_states(s, charges, degree_bound)
    print(f"s={s} charges={list(charges)} degree<={degree_bound}: {len(states)} states")
    for n in (1, 2, 3):
        print(f"euler^{n}", tally(euler_power_operator(n), Qop, states, n + 2))
    ev = TEvaluator(s)
    for n in (0, 1, 2):
        for a, b in [(1, 1), (1, 2)]:
            X = ev.operator(a, b, n, "COMPOSITIONAL", Fraction(3, 2))
            print(f"T_{a}{b},{n}", tally(X, Qop, states, n + 2))


if __name__ == "__main__":
    main()

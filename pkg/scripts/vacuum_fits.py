"""Diagonal vacuum matrix elements of the T^{k,l} pieces for one color.

For each piece the values <N| T^{k,l}_11 |N>, N = 0..6, are printed with the
interpolating polynomial in N fitted on the first points and checked on the
held-out ones.
"""
from fractions import Fraction

from spincs.fermi import a0_polynomial_fit, poly_eval


def show(label, coeffs, values, held):
    poly = " + ".join(f"({c})N^{k}" for k, c in enumerate(coeffs) if c) or "0"
    print(f"{label:<10} values {[str(y) for _, y in values]}  fit {poly}  held-out ok: {held}")


def main():
    Ns = range(0, 7)
    print("reference (2N^3 - 3N^2 + N)/6:", [str(Fraction(2 * N**3 - 3 * N**2 + N, 6)) for N in Ns])
    for piece in [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]:
        coeffs, values, held = a0_polynomial_fit(1, 1, 2, 1, Ns, piece=piece, degree=3)
        show(f"T^{piece}", coeffs, values, held)
    for n in (0, 1, 2):
        coeffs, values, held = a0_polynomial_fit(1, 1, n, 1, Ns, beta=Fraction(3, 2))
        show(f"T_11,{n}", coeffs, values, held)


if __name__ == "__main__":
    main()

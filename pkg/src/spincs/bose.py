"""Bosonic limit: polysymmetric functions, vertex operators and the pullbacks
of symmetrization, Dunkl operators and Yangian generators.

The ring is polynomials in ``p[c,k]`` (c = 1..s, k >= 0). The vertex
operator ``Phi_c(z) = exp(sum_{n>0} a_{c,n} z^n / n) q_c`` with
``a_{c,n} = n d/dp[c,n]`` and ``q_c = exp(d/dp[c,0])`` is the substitution
``p[c,k] -> p[c,k] + z^k`` for every k >= 0; its inverse subtracts ``z^k``.
The left vacuum pairing sets every ``p[c,k]`` to zero.

Series in one or two variables are dicts from exponent tuples to
:class:`PolySym` coefficients. Every object is polynomial in its variables
except where ``phi^-_c(z) = sum_{m>=0} p[c,m] z^{-m}`` enters, and that
factor is only ever used inside a coefficient extraction, which is finite.
"""
from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import finite
from .finite import SpinPolynomial
from .fock import add_into
from .scalars import BETA, inverse_beta, format_scalar, parse_scalar

Gen = Tuple[int, int]                 # (color, k) for p[c,k]
Mono = Tuple[Tuple[Gen, int], ...]    # sorted ((c, k), exponent) pairs
ONE_MONO: Mono = ()


def _mono_mul(m1: Mono, m2: Mono) -> Mono:
    d = dict(m1)
    for g, e in m2:
        d[g] = d.get(g, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Mono) -> int:
    return sum(k * e for (_, k), e in m)


class PolySym:
    """Element of the polysymmetric ring: a sparse map monomial -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Mono, object]] = None):
        self.terms: Dict[Mono, object] = {}
        for m, c in (terms or {}).items():
            if c:
                self.terms[tuple(sorted(m))] = c

    @classmethod
    def _build(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = {m: c for m, c in terms.items() if c}
        return obj

    @classmethod
    def one(cls, coeff=1) -> "PolySym":
        return cls._build({ONE_MONO: coeff})

    @classmethod
    def gen(cls, c: int, k: int, power: int = 1) -> "PolySym":
        return cls._build({(((c, k), power),) if power else (): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, PolySym):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other: "PolySym") -> "PolySym":
        t = dict(self.terms)
        for m, c in other.terms.items():
            add_into(t, m, c)
        return PolySym._build(t)

    def __neg__(self):
        return PolySym._build({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PolySym):
            return self.scale(other)
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                add_into(t, _mono_mul(m1, m2), c1 * c2)
        return PolySym._build(t)

    def scale(self, c) -> "PolySym":
        if not c:
            return PolySym()
        return PolySym._build({m: v * c for m, v in self.terms.items()})

    def degree_max(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"PolySym({format_polysym(self)})"


def format_polysym(v: PolySym) -> str:
    if not v.terms:
        return "0"
    parts = []
    for m in sorted(v.terms, key=lambda m: (mono_degree(m), m)):
        c = v.terms[m]
        gens = " * ".join(f"p[{col},{k}]" + (f"^{e}" if e != 1 else "") for (col, k), e in m)
        cs = format_scalar(c)
        if not gens:
            parts.append(cs if " " not in cs else f"({cs})")
        elif cs == "1":
            parts.append(gens)
        elif cs == "-1":
            parts.append("-" + gens)
        else:
            parts.append(f"({cs}) * {gens}")
    return " + ".join(parts)


_GEN = re.compile(r"p\[\s*(\d+)\s*,\s*(\d+)\s*\](?:\^(\d+))?")


def parse_polysym(text: str) -> PolySym:
    """Parse the output of :func:`format_polysym`."""
    text = text.strip()
    if text == "0":
        return PolySym()
    out = PolySym()
    depth = 0
    start = 0
    pieces = []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0 and text[i - 1] == " " and text[i + 1:i + 2] == " ":
            pieces.append(text[start:i])
            start = i + 1
    pieces.append(text[start:])
    for piece in pieces:
        piece = piece.strip()
        coef = parse_scalar("1")
        m = re.match(r"\((.*)\)\s*\*\s*(.*)$", piece)
        if piece.startswith("(") and piece.endswith(")") and not m:
            out = out + PolySym.one(parse_scalar(piece[1:-1]))
            continue
        if m:
            coef, piece = parse_scalar(m.group(1)), m.group(2)
        elif piece.startswith("-p"):
            coef, piece = parse_scalar("-1"), piece[1:]
        elif not piece.startswith("p["):
            out = out + PolySym.one(parse_scalar(piece))
            continue
        mono = []
        for g in piece.split("*"):
            gm = _GEN.fullmatch(g.strip())
            if not gm:
                raise ValueError(f"cannot parse generator {g.strip()!r}")
            mono.append(((int(gm.group(1)), int(gm.group(2))), int(gm.group(3) or 1)))
        out = out + PolySym({tuple(mono): 1}).scale(coef)
    return out


# ------------------------------------------------------------ Heisenberg action

def heis_apply(c: int, k: int, v: PolySym) -> PolySym:
    """a_{c,k}: multiplication by p[c,-k] for k <= 0, k d/dp[c,k] for k > 0."""
    if k <= 0:
        return PolySym.gen(c, -k) * v
    t: dict = {}
    g = (c, k)
    for m, coef in v.terms.items():
        d = dict(m)
        e = d.get(g, 0)
        if not e:
            continue
        if e == 1:
            del d[g]
        else:
            d[g] = e - 1
        add_into(t, tuple(sorted(d.items())), coef * (k * e))
    return PolySym._build(t)


def q_apply(c: int, direction: int, v: PolySym) -> PolySym:
    """q_c^{+-1}: substitution p[c,0] -> p[c,0] +- 1."""
    return shift(v, c, direction, 0, nvars=1)[(0,)]


# ------------------------------------------------------------ substitutions

Series = Dict[Tuple[int, ...], PolySym]


def _series_add(t: Series, key, val: PolySym):
    cur = t.get(key)
    val = val if cur is None else cur + val
    if val:
        t[key] = val
    elif key in t:
        del t[key]


def shift(v: PolySym, c: int, sign: int, var: int, nvars: int, base=None) -> Series:
    """Substitute p[c,k] -> p[c,k] + sign z_var^k (k >= 0) in v.

    Returns a series in ``nvars`` variables; ``base`` is an exponent tuple
    added to every output key.
    """
    base = base or (0,) * nvars
    out: Series = {}
    for m, coef in v.terms.items():
        # expand each factor (p + sign z^k)^e and convolve
        partial: Dict[Tuple[int, Mono], object] = {(0, ()): coef}
        for (col, k), e in m:
            if col != c:
                partial = {(zp, _mono_mul(mm, (((col, k), e),))): cc
                           for (zp, mm), cc in partial.items()}
                continue
            nxt: dict = {}
            for r in range(e + 1):
                w = math.comb(e, r) * (sign ** r)
                rest = (((col, k), e - r),) if e - r else ()
                for (zp, mm), cc in partial.items():
                    add_into(nxt, (zp + k * r, _mono_mul(mm, rest)), cc * w)
            partial = nxt
        for (zp, mm), cc in partial.items():
            key = list(base)
            key[var] += zp
            _series_add(out, tuple(key), PolySym._build({mm: cc}))
    return out


def shift_series(F: Series, c: int, sign: int, var: int) -> Series:
    out: Series = {}
    for key, f in F.items():
        for k2, g in shift(f, c, sign, var, len(key), key).items():
            _series_add(out, k2, g)
    return out


def phi_minus_coeff(c: int, G: Series, var: int, target: int) -> Series:
    """Coefficient of z_var^target in phi^-_c(z_var) G; the variable is removed.

    phi^-_c(z) = sum_{m >= 0} p[c,m] z^{-m}, so this is
    sum_m p[c,m] [z^{target+m}] G, finite because G is polynomial in z_var.
    """
    out: Series = {}
    for key, f in G.items():
        m = key[var] - target
        if m < 0:
            continue
        rest = key[:var] + key[var + 1:]
        _series_add(out, rest, PolySym.gen(c, m) * f)
    return out


# ------------------------------------------------------------ vertex operators

def Phi_apply(c: int, v: PolySym) -> Series:
    """Phi_c(z) v as a polynomial series in z."""
    return shift(v, c, 1, 0, 1)


def Phi_vector(v: PolySym, s: int) -> Dict[int, Series]:
    """Phi(z) v = sum_c Phi_c(z) v (x) e_c, as color -> series."""
    return {c: Phi_apply(c, v) for c in range(1, s + 1)}


def PhiStar_term(c: int, k: int, v: PolySym) -> Series:
    """Phi*(z)(v (x) z^k (x) e_c) = z^k phi^-_c(z) q_c^{-1} exp(-sum a_{c,n} z^n/n) v.

    Returned without the phi^- factor, which only makes sense inside an
    extraction; see :func:`S_script`.
    """
    return shift(v, c, -1, 0, 1, (k,))


def S_script(F: Dict[int, Series]) -> PolySym:
    """Zero coefficient of Phi*(z) F(z): sum_c [z^0] phi^-_c(z) Phi_c^{-1}(z) F_c(z)."""
    out = PolySym()
    for c, Fc in F.items():
        G = shift_series(Fc, c, -1, 0)
        res = phi_minus_coeff(c, G, 0, 0)
        if () in res:
            out = out + res[()]
    return out


# ------------------------------------------------------------ projections

def _eval_mono(m: Mono, colors: Sequence[int], coef, s: int) -> Dict[Tuple[int, ...], object]:
    """Evaluate a monomial at p[c,k] = sum_{j: colors_j = c} x_j^k."""
    N = len(colors)
    slots = {c: [j for j in range(N) if colors[j] == c] for c in range(1, s + 1)}
    acc: Dict[Tuple[int, ...], object] = {(0,) * N: coef}
    for (c, k), e in m:
        js = slots.get(c, [])
        if not js:
            return {}
        for _ in range(e):
            nxt: dict = {}
            for ex, cc in acc.items():
                for j in js:
                    ex2 = list(ex)
                    ex2[j] += k
                    add_into(nxt, tuple(ex2), cc)
            acc = nxt
    return acc


def pi_bar_N(v: PolySym, N: int, s: int) -> SpinPolynomial:
    """<0| Phi(x_N) ... Phi(x_1) |v>, slot j carrying x_j and its color."""
    t: dict = {}
    for colors in itertools.product(range(1, s + 1), repeat=N):
        for m, coef in v.terms.items():
            for ex, cc in _eval_mono(m, colors, coef, s).items():
                add_into(t, (ex, colors), cc)
    return SpinPolynomial(N, s, t)


def slot_one_embed(F: Dict[int, Series], N: int, s: int) -> SpinPolynomial:
    """(pi_bar_{N-1} (x) 1) F(x_1): slot 1 from F, slots 2..N from pi_bar_{N-1}."""
    t: dict = {}
    for c, Fc in F.items():
        for (k,), f in Fc.items():
            if k < 0:
                raise ValueError("F is not polynomial in z")
            rest = pi_bar_N(f, N - 1, s)
            for (ex, cols), val in rest.terms.items():
                add_into(t, ((k,) + ex, (c,) + cols), val)
    return SpinPolynomial(N, s, t)


# ------------------------------------------------------------ Dunkl pullback

def _euler(Fc: Series) -> Series:
    return {k: f.scale(k[0]) for k, f in Fc.items() if k[0]}


def difference_contour(a_F: Series, s: int) -> Series:
    """z oint dxi/(xi^2 (1 - z/xi)) sum_c phi^-_c(xi) Phi_c^{-1}(xi) Phi_c(z) F(xi).

    Variables: index 0 is xi, index 1 is z. The kernel is expanded for
    |z| < |xi| as sum_j z^j xi^{-2-j}.
    """
    out: Series = {}
    # F(xi) lifted to two variables
    F2 = {(k[0], 0): f for k, f in a_F.items()}
    for c in range(1, s + 1):
        G = shift_series(F2, c, 1, 1)      # Phi_c(z)
        G = shift_series(G, c, -1, 0)      # Phi_c^{-1}(xi)
        jmax = max((key[0] for key in G), default=-1)
        for j in range(0, jmax + 1):
            res = phi_minus_coeff(c, G, 0, 1 + j)   # leaves the z variable
            for (zp,), f in res.items():
                _series_add(out, (zp + j + 1,), f)
    return out


def difference_divided(a_F: Series, s: int) -> Series:
    """x1 oint dx2/x2 Phi*^(2)(x2) (Phi^(2)(x2) F(x1) - Phi^(2)(x1) F(x2)) / (x1 - x2).

    The numerator is formed in two variables and divided exactly by
    (x1 - x2); variables: index 0 is x1, index 1 is x2.
    """
    out: Series = {}
    for c in range(1, s + 1):
        num: Series = {}
        for (k,), f in a_F.items():
            for key, g in shift(f, c, 1, 1, 2, (k, 0)).items():      # Phi_c(x2) F(x1)
                _series_add(num, key, g)
            for key, g in shift(f, c, 1, 0, 2, (0, k)).items():      # Phi_c(x1) F(x2)
                _series_add(num, key, -g)
        quo = divide_by_difference(num)
        G = shift_series(quo, c, -1, 1)                              # Phi_c^{-1}(x2)
        res = phi_minus_coeff(c, G, 1, 0)
        for (p1,), f in res.items():
            _series_add(out, (p1 + 1,), f)
    return out


def divide_by_difference(num: Series) -> Series:
    """Exact quotient num(x1, x2) / (x1 - x2); raises if not divisible."""
    rem = dict(num)
    quo: Series = {}
    while rem:
        # leading term in x1-degree
        key = max(rem, key=lambda k: (k[0], -k[1]))
        i, j = key
        if i == 0:
            raise ValueError("numerator is not divisible by (x1 - x2)")
        f = rem[key]
        _series_add(quo, (i - 1, j), f)
        _series_add(rem, (i, j), -f)
        _series_add(rem, (i - 1, j + 1), f)
    return quo


def D_bose(F: Dict[int, Series], s: int, beta=BETA, route: str = "contour") -> Dict[int, Series]:
    """D F = z dF/dz + beta * difference part, color by color.

    ``route='contour'`` uses the single-contour form with the kernel
    expanded for |z| < |xi|; ``route='divided'`` uses the divided
    difference of the two orderings. They must agree.
    """
    diff = difference_contour if route == "contour" else difference_divided
    if route not in ("contour", "divided"):
        raise ValueError(f"unknown route {route!r}")
    out = {}
    for a, Fa in F.items():
        G = _euler(Fa)
        for key, f in diff(Fa, s).items():
            _series_add(G, key, f.scale(beta))
        out[a] = G
    return out


def T_bose_apply(a: int, b: int, n: int, v: PolySym, s: int, beta=BETA,
                 route: str = "contour") -> PolySym:
    """T_{ab,n} v = (-1)^n beta^{-n} oint dz/z Phi*(z) E_ab D^n Phi(z) v."""
    Phi = Phi_vector(v, s)
    F = {a: Phi[b]}
    for _ in range(n):
        F = D_bose(F, s, beta, route)
    out = S_script(F)
    if n:
        f = inverse_beta(beta, n)
        out = out.scale(-f if n % 2 else f)
    return out


# ------------------------------------------------------------ bases

def polysym_basis(s: int, degree: int, max_zero_power: int = 1) -> List[PolySym]:
    """Monomials of weighted degree ``degree`` with p[c,0] powers <= max_zero_power."""
    gens = [(c, k) for c in range(1, s + 1) for k in range(1, degree + 1)]
    out = []

    def rec(i, left, acc):
        if left == 0:
            yield acc
            return
        if i == len(gens):
            return
        c, k = gens[i]
        for e in range(left // k, -1, -1):
            yield from rec(i + 1, left - e * k, acc + ((gens[i], e),) if e else acc)

    zero_parts = list(itertools.product(range(max_zero_power + 1), repeat=s))
    for mono in rec(0, degree, ()):
        for zp in zero_parts:
            extra = tuple(((c + 1, 0), e) for c, e in enumerate(zp) if e)
            out.append(PolySym._build({tuple(sorted(mono + extra)): 1}))
    return out


def random_polysym(s: int, degree_bound: int, rng, nterms: int = 3) -> PolySym:
    out = PolySym()
    for _ in range(nterms):
        d = rng.randint(0, degree_bound)
        basis = polysym_basis(s, d)
        out = out + rng.choice(basis).scale(rng.randint(-3, 3))
    return out


# ------------------------------------------------------------ checks

def _report(name, **notes):
    return finite.CheckReport(name, True, notes=dict(notes))


def _fail(rep, **payload):
    rep.passed = False
    if len(rep.failures) < 20:
        rep.failures.append(payload)


def _basis_upto(s, degree_bound, max_zero_power):
    return [v for d in range(degree_bound + 1) for v in polysym_basis(s, d, max_zero_power)]


def _F_basis(s, degree_bound, max_zero_power):
    """Slot-one tensors z^k f (x) e_c with k + deg f <= degree_bound."""
    out = []
    for c in range(1, s + 1):
        for k in range(degree_bound + 1):
            for f in _basis_upto(s, degree_bound - k, max_zero_power):
                out.append({c: {(k,): f}})
    return out


def commutativity_check(s: int, degree_bound: int, max_zero_power: int = 1) -> "finite.CheckReport":
    """Phi_b(z1) Phi_c(z2) = Phi_c(z2) Phi_b(z1) on basis elements."""
    rep = _report("phi_commutativity", s=s)
    for v in _basis_upto(s, degree_bound, max_zero_power):
        for b in range(1, s + 1):
            for c in range(1, s + 1):
                rep.cases += 1
                lhs = shift_series(shift(v, c, 1, 1, 2), b, 1, 0)
                rhs = shift_series(shift(v, b, 1, 0, 2), c, 1, 1)
                if lhs != rhs:
                    _fail(rep, b=b, c=c, v=format_polysym(v))
    return rep


def vertex_embedding_check(s: int, N_values: Sequence[int], degree_bound: int,
                  max_zero_power: int = 1) -> "finite.CheckReport":
    """(pi_bar_{N-1} (x) 1) Phi(z) v = iota_N pi_bar_N(v)."""
    rep = _report("vertex_embedding", s=s)
    for N in N_values:
        for v in _basis_upto(s, degree_bound, max_zero_power):
            rep.cases += 1
            lhs = slot_one_embed(Phi_vector(v, s), N, s)
            rhs = finite.iota_reassemble(finite.iota_decompose(pi_bar_N(v, N, s)), N, s)
            if lhs != rhs:
                _fail(rep, N=N, v=format_polysym(v))
    return rep


def vertex_symmetrization_check(s: int, N_values: Sequence[int], degree_bound: int,
                  max_zero_power: int = 1) -> "finite.CheckReport":
    """E_N (pi_bar_{N-1} (x) 1)(F) = pi_bar_N S(F)."""
    rep = _report("vertex_symmetrization", s=s)
    for N in N_values:
        for F in _F_basis(s, degree_bound, max_zero_power):
            rep.cases += 1
            lhs = finite.finite_symmetrize(slot_one_embed(F, N, s), 1)
            rhs = pi_bar_N(S_script(F), N, s)
            if lhs != rhs:
                _fail(rep, N=N, F=repr(F))
    return rep


def bose_dunkl_check(s: int, N_values: Sequence[int], degree_bound: int, beta=BETA,
                 max_zero_power: int = 1, routes=("contour", "divided")) -> "finite.CheckReport":
    """(pi_bar_{N-1} (x) 1) D F(x_1) = D_1 (pi_bar_{N-1} (x) 1) F(x_1); routes must agree."""
    rep = _report("bose_dunkl", s=s, beta=str(beta), routes=list(routes))
    for F in _F_basis(s, degree_bound, max_zero_power):
        DFs = [D_bose(F, s, beta, r) for r in routes]
        if any(DF != DFs[0] for DF in DFs[1:]):
            _fail(rep, relation="routes disagree", F=repr(F))
        for N in N_values:
            rep.cases += 1
            lhs = slot_one_embed(DFs[0], N, s)
            rhs = finite.dunkl_apply(1, slot_one_embed(F, N, s), beta)
            if lhs != rhs:
                _fail(rep, N=N, F=repr(F))
    return rep


def bose_yangian_check(s: int, n_values: Sequence[int], N_values: Sequence[int], degree_bound: int,
                 beta=BETA, max_zero_power: int = 1) -> "finite.CheckReport":
    """pi_bar_N T_ab,n = t_ab,n pi_bar_N; both sign branches are tried."""
    rep = _report("bose_yangian", s=s, beta=str(beta))
    fails = {1: 0, -1: 0}
    basis = _basis_upto(s, degree_bound, max_zero_power)
    for n in n_values:
        for a in range(1, s + 1):
            for b in range(1, s + 1):
                for v in basis:
                    Tv = T_bose_apply(a, b, n, v, s, beta)
                    for N in N_values:
                        rep.cases += 1
                        lhs = pi_bar_N(Tv, N, s)
                        p = pi_bar_N(v, N, s)
                        for sg in (1, -1):
                            if lhs != finite.yangian_t_apply(a, b, n, sg, p, beta):
                                fails[sg] += 1
                                if sg == 1:
                                    _fail(rep, n=n, a=a, b=b, N=N, v=format_polysym(v))
    rep.notes["branches"] = {"+": fails[1], "-": fails[-1]}
    rep.notes["passing_branch"] = [k for k, sg in (("+", 1), ("-", -1)) if fails[sg] == 0]
    return rep

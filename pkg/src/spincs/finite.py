"""Finite-N spin Calogero-Sutherland phase space.

Elements of ``(C[x] (x) C^s)^{(x)N}`` are stored as :class:`SpinPolynomial`:
a sparse map from ``(exponents, colors)`` to exact coefficients. Colors are
1-based, slots are 1-based in the public API and 0-based internally.

The Dunkl (Heckman) operators are

    D_i = x_i d/dx_i + beta * sum_{j != i} x_i (1 - K_ij) / (x_i - x_j)

where K_ij swaps coordinates only. Divided differences are done by monomial
telescoping so every result stays an exact polynomial.
"""
from __future__ import annotations

import itertools
import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .report import CheckReport
from .scalars import BETA, ParamScalar, format_scalar, inverse_beta, parse_scalar

Monomial = Tuple[Tuple[int, ...], Tuple[int, ...]]


class SpinPolynomial:
    """Vector-valued polynomial in x_1..x_N with values in (C^s)^{(x)N}."""

    __slots__ = ("N", "s", "terms")

    def __init__(self, N: int, s: int, terms: Optional[Dict[Monomial, object]] = None):
        self.N = N
        self.s = s
        self.terms: Dict[Monomial, object] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    if len(mono[0]) != N or len(mono[1]) != N:
                        raise ValueError("monomial length does not match N")
                    if any(not 1 <= col <= s for col in mono[1]):
                        raise ValueError("color out of range")
                    self.terms[mono] = c

    @classmethod
    def monomial(cls, exps: Sequence[int], colors: Sequence[int], s: int, coeff=1):
        return cls(len(exps), s, {(tuple(exps), tuple(colors)): coeff})

    @classmethod
    def _build(cls, N, s, terms):
        obj = cls.__new__(cls)
        obj.N, obj.s, obj.terms = N, s, terms
        return obj

    def zero(self) -> "SpinPolynomial":
        return SpinPolynomial._build(self.N, self.s, {})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SpinPolynomial):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return (self.N, self.s) == (other.N, other.s) and self.terms == other.terms

    def _check(self, other):
        if (self.N, self.s) != (other.N, other.s):
            raise ValueError(f"shape mismatch: {(self.N, self.s)} vs {(other.N, other.s)}")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return SpinPolynomial._build(self.N, self.s, t)

    def __neg__(self):
        return SpinPolynomial._build(self.N, self.s, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SpinPolynomial":
        if not c:
            return self.zero()
        return SpinPolynomial._build(
            self.N, self.s, {m: v * c for m, v in self.terms.items() if v * c}
        )

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, c):
        return self.scale(c)

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def map_coeffs(self, f) -> "SpinPolynomial":
        t = {}
        for m, c in self.terms.items():
            v = f(c)
            if v:
                t[m] = v
        return SpinPolynomial._build(self.N, self.s, t)

    def sort_key(self):
        return sorted(self.terms, key=monomial_order)

    def __repr__(self):
        return f"SpinPolynomial(N={self.N}, s={self.s}, {format_spinpoly(self)!r})"

    def __str__(self):
        return format_spinpoly(self)


def monomial_order(m: Monomial):
    """Graded lexicographic order on (total degree, exponents, colors)."""
    exps, cols = m
    return (sum(exps), exps, cols)


def _acc(t: dict, key, c):
    v = t.get(key, 0) + c
    if v:
        t[key] = v
    else:
        t.pop(key, None)


# ---------------------------------------------------------------- slot ops

@dataclass(frozen=True)
class SlotOperatorSpec:
    """One of E_ab at slot i, K_ij, P_ij, sigma_ij, x_i*, x_i d/dx_i."""

    kind: str
    i: int
    j: int = 0
    a: int = 0
    b: int = 0


def _check_slot(i, N):
    if not 1 <= i <= N:
        raise IndexError(f"slot {i} out of range 1..{N}")


def apply_slot(op: SlotOperatorSpec, p: SpinPolynomial) -> SpinPolynomial:
    N = p.N
    _check_slot(op.i, N)
    i = op.i - 1
    kind = op.kind
    if kind in ("K", "P", "sigma"):
        _check_slot(op.j, N)
        j = op.j - 1
        swap_e = kind in ("K", "sigma")
        swap_c = kind in ("P", "sigma")
        t = {}
        for (e, c), v in p.terms.items():
            if swap_e:
                e = list(e)
                e[i], e[j] = e[j], e[i]
                e = tuple(e)
            if swap_c:
                c = list(c)
                c[i], c[j] = c[j], c[i]
                c = tuple(c)
            _acc(t, (e, c), v)
        return SpinPolynomial._build(N, p.s, t)
    if kind == "E":
        if not (1 <= op.a <= p.s and 1 <= op.b <= p.s):
            raise IndexError("color out of range")
        t = {}
        for (e, c), v in p.terms.items():
            if c[i] == op.b:
                c2 = c[:i] + (op.a,) + c[i + 1:]
                _acc(t, (e, c2), v)
        return SpinPolynomial._build(N, p.s, t)
    if kind == "x":
        t = {}
        for (e, c), v in p.terms.items():
            e2 = e[:i] + (e[i] + 1,) + e[i + 1:]
            _acc(t, (e2, c), v)
        return SpinPolynomial._build(N, p.s, t)
    if kind == "euler":
        t = {}
        for (e, c), v in p.terms.items():
            if e[i]:
                t[(e, c)] = v * e[i]
        return SpinPolynomial._build(N, p.s, t)
    raise ValueError(f"unknown slot operator kind {kind!r}")


def K(i, j, p):
    return apply_slot(SlotOperatorSpec("K", i, j), p)


def P(i, j, p):
    return apply_slot(SlotOperatorSpec("P", i, j), p)


def sigma(i, j, p):
    return apply_slot(SlotOperatorSpec("sigma", i, j), p)


def E_slot(a, b, i, p):
    return apply_slot(SlotOperatorSpec("E", i, a=a, b=b), p)


def permute(perm: Sequence[int], p: SpinPolynomial, coords=True, colors=True) -> SpinPolynomial:
    """Diagonal action: the content of slot k moves to slot perm[k] (0-based)."""
    N = p.N
    t = {}
    for (e, c), v in p.terms.items():
        if coords:
            e2 = [0] * N
            for k in range(N):
                e2[perm[k]] = e[k]
            e = tuple(e2)
        if colors:
            c2 = [0] * N
            for k in range(N):
                c2[perm[k]] = c[k]
            c = tuple(c2)
        _acc(t, (e, c), v)
    return SpinPolynomial._build(N, p.s, t)


def perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for k in range(len(perm)):
        if seen[k]:
            continue
        length = 0
        j = k
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def project_pm(p: SpinPolynomial, sign: int) -> SpinPolynomial:
    """(1/N!) sum over S_N of sign^sigma * sigma(p), diagonal action."""
    N = p.N
    t: dict = {}
    for perm in itertools.permutations(range(N)):
        w = perm_sign(perm) if sign < 0 else 1
        for m, v in permute(perm, p).terms.items():
            _acc(t, m, v * w)
    inv = Fraction(1, math.factorial(N))
    return SpinPolynomial._build(N, p.s, {m: v * inv for m, v in t.items()})


def is_symmetric(p: SpinPolynomial, sign: int) -> bool:
    for i in range(1, p.N):
        q = sigma(i, i + 1, p)
        if sign < 0:
            q = -q
        if q != p:
            return False
    return True


# ---------------------------------------------------------------- Dunkl

def _divided_difference(a: int, b: int):
    """(x^a y^b - x^b y^a)/(x - y) as a list of ((p, q), coeff) for x^p y^q."""
    if a == b:
        return []
    if a > b:
        # (xy)^b (x^{a-b} - y^{a-b})/(x-y)
        return [((b + k, b + (a - b - 1 - k)), 1) for k in range(a - b)]
    return [((p, q), -c) for (p, q), c in _divided_difference(b, a)]


def difference_part(i: int, p: SpinPolynomial) -> SpinPolynomial:
    """sum_{j != i} x_i (1 - K_ij) p / (x_i - x_j); slots 1-based."""
    N = p.N
    _check_slot(i, N)
    ii = i - 1
    t: dict = {}
    for (e, c), v in p.terms.items():
        for jj in range(N):
            if jj == ii:
                continue
            for (pi, pj), w in _divided_difference(e[ii], e[jj]):
                e2 = list(e)
                e2[ii] = pi + 1
                e2[jj] = pj
                _acc(t, (tuple(e2), c), v * w)
    return SpinPolynomial._build(N, p.s, t)


def dunkl_apply(i: int, p: SpinPolynomial, beta=BETA) -> SpinPolynomial:
    euler = apply_slot(SlotOperatorSpec("euler", i), p)
    return euler + difference_part(i, p).scale(beta)


def dunkl_power(i: int, n: int, p: SpinPolynomial, beta=BETA) -> SpinPolynomial:
    for _ in range(n):
        p = dunkl_apply(i, p, beta)
    return p


# ---------------------------------------------------------------- random inputs

def random_spinpoly(N, s, degree_bound, rng: random.Random, nterms=4, coeff_range=3):
    t: dict = {}
    for _ in range(nterms):
        exps = tuple(rng.randint(0, degree_bound) for _ in range(N))
        while sum(exps) > degree_bound:
            exps = tuple(max(0, x - 1) for x in exps)
        cols = tuple(rng.randint(1, s) for _ in range(N))
        c = Fraction(rng.randint(-coeff_range, coeff_range), rng.randint(1, 2))
        _acc(t, (exps, cols), c)
    return SpinPolynomial._build(N, s, t)


# ---------------------------------------------------------------- checks

def daha_check(N: int, s: int, degree_bound: int, trials: int = 5, seed: int = 0,
               beta=BETA, pairs: Optional[Iterable[Tuple[int, int]]] = None) -> CheckReport:
    """K_ij D_i = D_j K_ij and [D_i, D_j] = beta (D_j - D_i) K_ij on random inputs."""
    rng = random.Random(seed)
    if pairs is None:
        pairs = [(i, j) for i in range(1, N + 1) for j in range(1, N + 1) if i != j]
    pairs = list(pairs)
    for i, j in pairs:
        if i == j:
            raise ValueError("degenerate index pair i == j")
    rep = CheckReport("daha", True)
    for _ in range(trials):
        p = random_spinpoly(N, s, degree_bound, rng)
        for i, j in pairs:
            rep.cases += 1
            lhs = K(i, j, dunkl_apply(i, p, beta))
            rhs = dunkl_apply(j, K(i, j, p), beta)
            if lhs != rhs:
                rep.passed = False
                rep.failures.append({"relation": "K D", "i": i, "j": j, "p": str(p)})
            di_dj = dunkl_apply(i, dunkl_apply(j, p, beta), beta)
            dj_di = dunkl_apply(j, dunkl_apply(i, p, beta), beta)
            kp = K(i, j, p)
            rhs2 = (dunkl_apply(j, kp, beta) - dunkl_apply(i, kp, beta)).scale(beta)
            if di_dj - dj_di != rhs2:
                rep.passed = False
                rep.failures.append({"relation": "[D,D]", "i": i, "j": j, "p": str(p)})
    return rep


def yangian_t_apply(a: int, b: int, n: int, sign: int, p: SpinPolynomial, beta=BETA) -> SpinPolynomial:
    """t_{ab,n} p = (-sign)^n beta^{-n} sum_i E_{ab,i} D_i^n p.

    ``sign`` is the +/- in the denominator ``beta*u +/- D_i``.
    """
    out = p.zero()
    for i in range(1, p.N + 1):
        out = out + E_slot(a, b, i, dunkl_power(i, n, p, beta))
    if n:
        factor = inverse_beta(beta, n)
        if sign > 0 and n % 2:
            factor = -factor
        out = out.scale(factor)
    return out


# ------------------------------------------------------------ graded bases

def orbit_basis(N: int, s: int, degree: int, sign: int) -> List[SpinPolynomial]:
    """Basis of the degree-d part of Lambda^{s,N}_sign, graded-lex ordered.

    Each vector is the signed sum over the S_N-orbit of a representative
    monomial with coefficient +1 on the representative (the smallest
    monomial of the orbit in :func:`monomial_order`).
    """
    pairs = [(e, c) for e in range(degree + 1) for c in range(1, s + 1)]
    basis = []
    for combo in itertools.combinations_with_replacement(pairs, N):
        if sum(e for e, _ in combo) != degree:
            continue
        if sign < 0 and len(set(combo)) < N:
            continue
        mono = (tuple(e for e, _ in combo), tuple(c for _, c in combo))
        vec = project_pm(SpinPolynomial._build(N, s, {mono: Fraction(1)}), sign)
        rep = min(vec.terms, key=monomial_order)
        vec = vec.scale(1 / vec.terms[rep])
        basis.append((rep, vec))
    basis.sort(key=lambda rv: monomial_order(rv[0]))
    return [v for _, v in basis]


def _rep(v: SpinPolynomial):
    return min(v.terms, key=monomial_order)


def coordinates(p: SpinPolynomial, basis: List[SpinPolynomial]) -> List[object]:
    """Coordinates of a (skew)symmetric p in an orbit basis; checks exactness."""
    out = []
    rest = p
    for b in basis:
        r = _rep(b)
        c = p.terms.get(r, 0)
        out.append(c)
        if c:
            rest = rest - b.scale(c)
    if rest:
        raise ValueError("vector is not in the span of the basis")
    return out


def operator_matrix(op, basis: List[SpinPolynomial]) -> List[List[object]]:
    """Matrix (rows = output coordinates) of a linear map preserving span(basis)."""
    cols = [coordinates(op(b), basis) for b in basis]
    n = len(basis)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, m, k = len(A), len(B), (len(B[0]) if B else 0)
    out = [[0] * k for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for l in range(m):
            a = Ai[l]
            if not a:
                continue
            Bl = B[l]
            row = out[i]
            for j in range(k):
                if Bl[j]:
                    row[j] = row[j] + a * Bl[j]
    return out


def mat_sub(A, B):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[x * c for x in row] for row in A]


def mat_is_zero(A) -> bool:
    return all(not x for row in A for x in row)


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def commutator(A, B):
    return mat_sub(mat_mul(A, B), mat_mul(B, A))


def yangian_mode_relation(t, a, b, c, d, m, n, dim):
    """Residual of the mode-form Yangian relation.

    ``t(a, b, k)`` returns the matrix of t_{ab,k}; k = -1 stands for delta_ab.
    Returns LHS - RHS of
    [t_ab,m+1, t_cd,n] - [t_ab,m, t_cd,n+1] = t_cb,m t_ad,n - t_cb,n t_ad,m.
    """
    def T(x, y, k):
        if k == -1:
            return identity(dim) if x == y else [[0] * dim for _ in range(dim)]
        return t(x, y, k)

    lhs = mat_sub(commutator(T(a, b, m + 1), T(c, d, n)), commutator(T(a, b, m), T(c, d, n + 1)))
    rhs = mat_sub(mat_mul(T(c, b, m), T(a, d, n)), mat_mul(T(c, b, n), T(a, d, m)))
    return mat_sub(lhs, rhs)


def yangian_relation_check(N: int, s: int, degree_bound: int, sign: int, max_mode: int = 1,
                           beta=BETA, index_sets=None) -> CheckReport:
    """Mode-form Yangian relation for m, n in 0..max_mode on Lambda^{s,N}_sign."""
    rep = CheckReport("yangian_finite", True, notes={"sign": sign, "N": N, "s": s})
    colors = range(1, s + 1)
    if index_sets is None:
        index_sets = list(itertools.product(colors, repeat=4))
    for deg in range(degree_bound + 1):
        basis = orbit_basis(N, s, deg, sign)
        if not basis:
            continue
        cache = {}

        def t(x, y, k):
            key = (x, y, k)
            if key not in cache:
                cache[key] = operator_matrix(
                    lambda v: yangian_t_apply(x, y, k, sign, v, beta), basis)
            return cache[key]

        for a, b, c, d in index_sets:
            for m in range(max_mode + 1):
                for n in range(max_mode + 1):
                    rep.cases += 1
                    res = yangian_mode_relation(t, a, b, c, d, m, n, len(basis))
                    if not mat_is_zero(res):
                        rep.passed = False
                        rep.failures.append({"abcd": (a, b, c, d), "m": m, "n": n, "degree": deg})
    return rep


# ---------------------------------------------------------- quantum determinant

def _shifted_series(coeffs: Dict[int, object], shift: int, order: int, one, zero) -> Dict[int, object]:
    """Expand delta + sum_m t_m (u - shift)^{-m-1} in powers u^{-k}, k <= order.

    ``coeffs`` maps m -> t_m (m >= 0). Returns {k: coefficient of u^{-k}}.
    """
    out = {0: one}
    for m, tm in coeffs.items():
        for j in range(order + 1):
            k = m + 1 + j
            if k > order:
                break
            c = math.comb(m + j, j) * shift ** j
            if c:
                term = mat_scale(tm, c)
                out[k] = mat_add(out[k], term) if k in out else term
    return out


def qdet_coeffs(N: int, s: int, order_bound: int, sign: int, degree: int, beta=BETA):
    """Coefficients of qdet t(u) in u^{-k}, k = 0..order_bound, as matrices.

    qdet t(u) = sum_sigma sgn(sigma) t_{sigma(1),1}(u) t_{sigma(2),2}(u-1) ...
    acting on the degree-``degree`` part of Lambda^{s,N}_sign.
    """
    if s > 3:
        raise ValueError("qdet enumeration is limited to s <= 3")
    if order_bound < 1:
        warnings.warn("order_bound < 1 only exposes the trivial leading coefficient")
    basis = orbit_basis(N, s, degree, sign)
    dim = len(basis)
    if not dim:
        return [[] for _ in range(order_bound + 1)], basis
    one = identity(dim)
    zero = [[0] * dim for _ in range(dim)]
    mats = {}

    def tm(a, b, m):
        if (a, b, m) not in mats:
            mats[(a, b, m)] = operator_matrix(
                lambda v: yangian_t_apply(a, b, m, sign, v, beta), basis)
        return mats[(a, b, m)]

    def series(a, b, shift):
        coeffs = {m: tm(a, b, m) for m in range(order_bound)}
        ser = _shifted_series(coeffs, shift, order_bound, one, zero)
        if a != b:
            ser[0] = zero
        return ser

    def mul_series(x, y):
        out = {}
        for i, A in x.items():
            for j, B in y.items():
                if i + j > order_bound:
                    continue
                prod = mat_mul(A, B)
                out[i + j] = mat_add(out[i + j], prod) if (i + j) in out else prod
        return out

    total = {k: zero for k in range(order_bound + 1)}
    for perm in itertools.permutations(range(s)):
        sg = perm_sign(perm)
        acc = None
        for col in range(s):
            ser = series(perm[col] + 1, col + 1, col)
            acc = ser if acc is None else mul_series(acc, ser)
        for k, A in acc.items():
            total[k] = mat_add(total[k], mat_scale(A, sg))
    return [total[k] for k in range(order_bound + 1)], basis


# ------------------------------------------------------------ iota / E_N / A_N

def iota_decompose(p: SpinPolynomial):
    """Group terms by slot-1 (exponent, color); remainders live on N-1 slots."""
    groups: Dict[Tuple[int, int], dict] = {}
    for (e, c), v in p.terms.items():
        key = (e[0], c[0])
        groups.setdefault(key, {})[(e[1:], c[1:])] = v
    out = []
    for key in sorted(groups):
        out.append((key, SpinPolynomial._build(p.N - 1, p.s, groups[key])))
    return out


def iota_reassemble(groups, N: int, s: int) -> SpinPolynomial:
    t = {}
    for (e1, c1), rest in groups:
        for (e, c), v in rest.terms.items():
            _acc(t, ((e1,) + e, (c1,) + c), v)
    return SpinPolynomial._build(N, s, t)


def _is_partially_symmetric(u: SpinPolynomial, sign: int) -> bool:
    for i in range(2, u.N):
        q = sigma(i, i + 1, u)
        if sign < 0:
            q = -q
        if q != u:
            return False
    return True


def finite_symmetrize(u: SpinPolynomial, sign: int, check: bool = True) -> SpinPolynomial:
    """E_N(u) = sum_j sigma_1j u (sign +), A_N(u) = u - sum_{j>=2} sigma_1j u (sign -)."""
    if check and not _is_partially_symmetric(u, sign):
        raise ValueError("input is not (anti)symmetric in slots 2..N")
    out = u
    for j in range(2, u.N + 1):
        if sign > 0:
            out = out + sigma(1, j, u)
        else:
            out = out - sigma(1, j, u)
    return out


def omega_apply(p: SpinPolynomial, N: int) -> SpinPolynomial:
    """omega_N: Lambda^{s,N+s} -> Lambda^{s,N}.

    Keeps terms whose last s slots carry colors (1..s) and exponent 0, drops
    those slots, and divides by x_1...x_N.
    """
    s = p.s
    if p.N != N + s:
        raise ValueError(f"omega_{N} expects N+s = {N + s} slots, got {p.N}")
    want = tuple(range(1, s + 1))
    t = {}
    for (e, c), v in p.terms.items():
        if c[N:] != want or any(e[N:]):
            continue
        if any(x == 0 for x in e[:N]):
            raise ValueError("omega: division by x_1...x_N is not exact")
        _acc(t, (tuple(x - 1 for x in e[:N]), c[:N]), v)
    return SpinPolynomial._build(N, s, t)


# ---------------------------------------------------------------- text format

def format_spinpoly(p: SpinPolynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    for m in sorted(p.terms, key=monomial_order):
        e, c = m
        coef = format_scalar(p.terms[m])
        xs = "*".join(f"x{k + 1}^{e[k]}" for k in range(p.N) if e[k])
        body = f"({coef})"
        if xs:
            body += f" * {xs}"
        body += f" * e({','.join(map(str, c))})"
        parts.append(body)
    return " + ".join(parts)


def parse_spinpoly(text: str, N: int, s: int) -> SpinPolynomial:
    """Parse the output of :func:`format_spinpoly`."""
    text = text.strip()
    if text == "0":
        return SpinPolynomial(N, s)
    t: dict = {}
    depth = 0
    start = 0
    chunks = []
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0 and text[k - 1] == " " and text[k + 1:k + 2] == " ":
            chunks.append(text[start:k])
            start = k + 1
    chunks.append(text[start:])
    for chunk in chunks:
        chunk = chunk.strip()
        if not chunk.startswith("("):
            raise ValueError(f"term must start with a parenthesised coefficient: {chunk!r}")
        close = chunk.index(")")
        coef = parse_scalar(chunk[1:close])
        rest = [f.strip() for f in chunk[close + 1:].split("*") if f.strip()]
        exps = [0] * N
        cols = None
        for f in rest:
            if f.startswith("e("):
                cols = tuple(int(x) for x in f[2:-1].split(","))
            elif f.startswith("x"):
                var, _, pw = f[1:].partition("^")
                exps[int(var) - 1] += int(pw) if pw else 1
            else:
                raise ValueError(f"unknown factor {f!r}")
        if cols is None or len(cols) != N:
            raise ValueError(f"missing or malformed color tuple in {chunk!r}")
        c = coef if not coef.is_const() else coef.coeff(0)
        _acc(t, (tuple(exps), cols), c)
    return SpinPolynomial(N, s, t)

"""Operator-valued Laurent series in one variable, as coefficient oracles.

A :class:`Field` ``A(z) = sum_k A_k z^k`` is known only through
``apply(k, v) = A_k v``. Every field is homogeneous: the coefficient ``A_k``
shifts the Fock degree by ``delta - k`` where ``delta`` is the total degree of
the field (``deg z = 1``). Because Fock degrees are non-negative this gives an
exact bound beyond which coefficients vanish on a given state, which is what
makes all sums below finite without heuristic cutoffs.

Two-variable kernel integrals ``int dw K(z, w) A(z) B(w)`` are evaluated in
one of three regimes. In this calculus ``A(z) B(w)`` is an honest operator
product in the region ``|z| < |w|``; in the opposite region the product is
read as ``(+-) B(w) A(z)``. AROUND is LARGE minus SMALL.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .fock import (
    PSI,
    PSI_STAR,
    FockVector,
    ModeOp,
    State,
    _apply_mode_state,
    add_into,
    apply_mode,
    E_mode_apply,
    normal_order_word,
    state_degree,
)


class WindowUnderflow(RuntimeError):
    """Raised when a truncated region of a series would be read."""


class Field:
    parity: int = 0
    delta: int = 0

    def __init__(self):
        self._cache: Dict[Tuple[int, State], FockVector] = {}

    def apply_state(self, k: int, st: State) -> FockVector:
        key = (k, st)
        r = self._cache.get(key)
        if r is None:
            if k > state_degree(st) + self.delta:
                r = FockVector()
            else:
                r = self._compute(k, st)
            self._cache[key] = r
        return r

    def _compute(self, k: int, st: State) -> FockVector:
        raise NotImplementedError

    def apply(self, k: int, v: FockVector) -> FockVector:
        t: dict = {}
        for st, c in v.terms.items():
            for st2, c2 in self.apply_state(k, st).terms.items():
                add_into(t, st2, c * c2)
        return FockVector._build(t)

    def max_exponent(self, v: FockVector) -> int:
        """Largest k with possibly nonzero A_k v."""
        return v.degree_max() + self.delta


# ------------------------------------------------------------ basic fields

class PsiField(Field):
    """Psi_c(z) = sum psi[c,k] z^k."""

    parity = 1
    delta = 0

    def __init__(self, c: int):
        super().__init__()
        self.c = c

    def _compute(self, k, st):
        return apply_mode(ModeOp(PSI, self.c, k), FockVector.basis(st))


class PsiStarField(Field):
    """Psi*_c(z) = sum psi*[c,n] z^{n-1}."""

    parity = 1
    delta = -1

    def __init__(self, c: int):
        super().__init__()
        self.c = c

    def _compute(self, k, st):
        return apply_mode(ModeOp(PSI_STAR, self.c, k + 1), FockVector.basis(st))


class EField(Field):
    """E_ab(z) = sum E_{ab,n} z^n (affine generators by mode action)."""

    parity = 0
    delta = 0

    def __init__(self, a: int, b: int):
        super().__init__()
        self.a, self.b = a, b

    def _compute(self, k, st):
        return E_mode_apply(self.a, self.b, k, FockVector.basis(st))


class IdentityField(Field):
    """The constant series 1 (used as a trivial factor in kernel integrals)."""

    parity = 0
    delta = 0

    def _compute(self, k, st):
        return FockVector.basis(st) if k == 0 else FockVector()


# ------------------------------------------------------------ combinators

class EulerField(Field):
    """(z d/dz)^p applied to a field."""

    def __init__(self, inner: Field, power: int = 1):
        super().__init__()
        self.inner, self.power = inner, power
        self.parity, self.delta = inner.parity, inner.delta

    def _compute(self, k, st):
        w = k ** self.power
        if not w:
            return FockVector()
        return self.inner.apply_state(k, st).scale(w)


class ZShiftField(Field):
    """z^m times a field."""

    def __init__(self, inner: Field, m: int):
        super().__init__()
        self.inner, self.m = inner, m
        self.parity, self.delta = inner.parity, inner.delta + m

    def _compute(self, k, st):
        return self.inner.apply_state(k - self.m, st)


class SplitField(Field):
    """f(z)_+ (exponents >= 0) or f(z)_- (exponents < 0)."""

    def __init__(self, inner: Field, sign: int):
        super().__init__()
        self.inner, self.sign = inner, sign
        self.parity, self.delta = inner.parity, inner.delta

    def _compute(self, k, st):
        if (k >= 0) == (self.sign > 0):
            return self.inner.apply_state(k, st)
        return FockVector()


class ModeSplitField(Field):
    """Psi*_{c,-} (modes n <= 0) or Psi*_{c,+} (modes n > 0).

    This is the splitting by mode index used for the antisymmetrization
    pullback; it is a different rule from :class:`SplitField` in general,
    although on Psi* itself the two coincide.
    """

    def __init__(self, c: int, sign: int):
        super().__init__()
        self.c, self.sign = c, sign
        self.parity, self.delta = 1, -1

    def _compute(self, k, st):
        n = k + 1
        if (n > 0) == (self.sign > 0):
            return apply_mode(ModeOp(PSI_STAR, self.c, n), FockVector.basis(st))
        return FockVector()


class SumField(Field):
    """Linear combination of fields of equal parity and degree."""

    def __init__(self, parts: Sequence[Tuple[object, Field]]):
        super().__init__()
        parts = [(c, f) for c, f in parts if c]
        self.parts = parts
        if parts:
            pars = {f.parity for _, f in parts}
            degs = {f.delta for _, f in parts}
            if len(pars) > 1:
                raise ValueError("mixed parity in a sum of fields")
            if len(degs) > 1:
                raise ValueError(f"mixed total degree in a sum of fields: {sorted(degs)}")
            self.parity, self.delta = pars.pop(), degs.pop()

    def _compute(self, k, st):
        out = FockVector()
        for c, f in self.parts:
            out = out + f.apply_state(k, st).scale(c)
        return out


# ------------------------------------------------------------ kernels

class KernelRegime(enum.Enum):
    SMALL = "small"    # |w| << |z|
    LARGE = "large"    # |w| >> |z|
    AROUND = "around"  # w around z: LARGE minus SMALL


@dataclass(frozen=True)
class Kernel:
    """coef * z^alpha * w^gamma * (w - z)^(-p)."""

    coef: object
    alpha: int
    gamma: int
    p: int

    @classmethod
    def zw(cls, coef, alpha, gamma, p):
        """coef * z^alpha w^gamma (z - w)^(-p)."""
        return cls(coef * (-1) ** p, alpha, gamma, p)

    @property
    def degree(self) -> int:
        return self.alpha + self.gamma - self.p

    def expansion(self, regime: KernelRegime, j: int):
        """j-th term of the geometric expansion: (coef, z power, w power)."""
        c = math.comb(self.p - 1 + j, j) if self.p > 0 else (1 if j == 0 else 0)
        if not c:
            return None
        if regime is KernelRegime.LARGE:
            return (self.coef * c, self.alpha + j, self.gamma - self.p - j)
        if regime is KernelRegime.SMALL:
            return (self.coef * c * (-1) ** self.p, self.alpha - self.p - j, self.gamma + j)
        raise ValueError("AROUND has no single expansion")


class KernelProductField(Field):
    """z -> int dw/(2 pi i) K(z, w) A(z) B(w) in the given regime.

    With A the identity field this is a kernel integral of B alone.
    """

    def __init__(self, kernel: Kernel, A: Optional[Field], B: Field, regime: KernelRegime):
        super().__init__()
        self.kernel = kernel
        self.A = A if A is not None else IdentityField()
        self.B = B
        self.regime = regime
        self.parity = (self.A.parity + B.parity) % 2
        self.delta = self.A.delta + B.delta + kernel.degree + 1

    def _part(self, regime, k, st):
        K = self.kernel
        A, B = self.A, self.B
        d = state_degree(st)
        out: dict = {}
        j = 0
        while True:
            term = K.expansion(regime, j)
            if term is None:
                if K.p == 0 and j > 0:
                    break
                j += 1
                continue
            c, za, wb = term
            # coefficient of z^k overall, residue in w
            m = -1 - wb   # exponent taken from B
            n = k - za    # exponent taken from A
            if regime is KernelRegime.LARGE:
                # A(z) B(w) v, B acts first; stop once B_m kills v
                if m > d + B.delta:
                    break
                bv = B.apply_state(m, st)
                for st2, c2 in bv.terms.items():
                    for st3, c3 in A.apply_state(n, st2).terms.items():
                        add_into(out, st3, c * c2 * c3)
            else:
                # B(w) A(z) v with the parity sign of the exchange
                if n > d + A.delta:
                    break
                sg = -1 if (A.parity and B.parity) else 1
                av = A.apply_state(n, st)
                for st2, c2 in av.terms.items():
                    for st3, c3 in B.apply_state(m, st2).terms.items():
                        add_into(out, st3, sg * c * c2 * c3)
            j += 1
            if K.p == 0:
                break
        return FockVector._build(out)

    def _compute(self, k, st):
        if self.regime is KernelRegime.AROUND:
            return self._part(KernelRegime.LARGE, k, st) - self._part(KernelRegime.SMALL, k, st)
        return self._part(self.regime, k, st)


def contour_extract(kernel: Kernel, A: Optional[Field], B: Field, regime: KernelRegime,
                    k: int, v: FockVector) -> FockVector:
    """Coefficient z^k of int dw K(z,w) A(z) B(w) applied to v."""
    return KernelProductField(kernel, A, B, regime).apply(k, v)


# ------------------------------------------------------------ series

@dataclass
class StateSeries:
    """Laurent-in-z series of Fock vectors over a materialized window."""

    coeffs: Dict[int, FockVector]
    low: int
    high: int
    exact_below: bool
    variable: str = "z"

    def coeff(self, k: int) -> FockVector:
        if k < self.low and not self.exact_below:
            raise WindowUnderflow(f"exponent {k} below materialized window [{self.low}, {self.high}]")
        if k > self.high:
            return FockVector()
        return self.coeffs.get(k, FockVector())

    def nonzero_exponents(self) -> List[int]:
        return sorted(k for k, v in self.coeffs.items() if v)


def field_apply(f: Field, v: FockVector, window: Tuple[int, int], exact_below: bool = False) -> StateSeries:
    """Materialize A(z) v on exponents in ``window`` (inclusive)."""
    lo, hi = window
    if lo > hi:
        raise ValueError("empty window")
    top = min(hi, f.max_exponent(v))
    coeffs = {k: f.apply(k, v) for k in range(lo, top + 1)}
    return StateSeries({k: c for k, c in coeffs.items() if c}, lo, hi, exact_below)


def split_series(ser: StateSeries, sign: int) -> StateSeries:
    if sign > 0:
        return StateSeries({k: c for k, c in ser.coeffs.items() if k >= 0}, max(ser.low, 0),
                           ser.high, True if ser.low >= 0 or ser.exact_below else True)
    if not ser.exact_below:
        raise WindowUnderflow("cannot take the negative part of a series truncated from below")
    return StateSeries({k: c for k, c in ser.coeffs.items() if k < 0}, ser.low, min(ser.high, -1), True)


# ------------------------------------------------------------ normal-ordered products

@dataclass
class NOLeaf:
    species: str  # PSI or PSI_STAR
    color: int


@dataclass
class NOZ:
    power: int


@dataclass
class NOGroup:
    children: list
    deriv: int = 0
    split: int = 0  # 0, +1 or -1


def _collect(node, leaves, groups, zpow, path):
    """Flatten the tree: leaves in order; groups as (leaf index set, z shift, deriv, split)."""
    if isinstance(node, NOLeaf):
        leaves.append(node)
        return [len(leaves) - 1], 0
    if isinstance(node, NOZ):
        return [], node.power
    idx = []
    z = 0
    for ch in node.children:
        i, zz = _collect(ch, leaves, groups, zpow, path)
        idx.extend(i)
        z += zz
    if node.deriv or node.split:
        groups.append((tuple(idx), z, node.deriv, node.split))
    return idx, z


class NOProductField(Field):
    """Normal-ordered product of Psi / Psi* leaves with derivatives, splits and z powers.

    Each leaf contributes one mode; a group's exponent is the sum of its
    leaves' exponents (psi[c,k] -> k, psi*[c,n] -> n - 1) plus its z powers.
    A group with ``deriv = p`` is weighted by exponent^p, a group with a split
    keeps only exponents >= 0 (``+``) or < 0 (``-``). The word is reordered with
    annihilators to the right, contractions dropped.
    """

    def __init__(self, root: NOGroup, coef=1):
        super().__init__()
        self.root = root
        self.coef = coef
        self.leaves: List[NOLeaf] = []
        self.groups: list = []
        _, self.ztot = _collect(root, self.leaves, self.groups, 0, ())
        self.parity = len(self.leaves) % 2
        self.delta = self.ztot - sum(1 for l in self.leaves if l.species == PSI_STAR)

    def _exponent(self, leaf: NOLeaf, mode_index: int) -> int:
        return mode_index if leaf.species == PSI else mode_index - 1

    def _compute(self, k, st):
        leaves = self.leaves
        r = len(leaves)
        nstar = sum(1 for l in leaves if l.species == PSI_STAR)
        # sum of leaf mode degrees (= -index) is fixed by the target exponent
        total_deg = self.ztot - nstar - k
        out: dict = {}
        annih_opts = []
        for leaf in leaves:
            opts = []
            for (c, rk, d) in st:
                if c != leaf.color:
                    continue
                if leaf.species == PSI and rk == 0:
                    opts.append(d)      # psi[c,d] annihilates psi*[c,-d]
                elif leaf.species == PSI_STAR and rk == 1:
                    opts.append(d)      # psi*[c,d] annihilates psi[c,-d]
            annih_opts.append(opts)

        indices = [0] * r

        def creators(pos_list, budget, acc):
            if not pos_list:
                if budget == 0:
                    yield dict(acc)
                return
            i = pos_list[0]
            leaf = leaves[i]
            lo = 1 if leaf.species == PSI else 0
            rest_min = sum(1 if leaves[q].species == PSI else 0 for q in pos_list[1:])
            for dg in range(lo, budget - rest_min + 1):
                acc[i] = -dg
                yield from creators(pos_list[1:], budget - dg, acc)
            acc.pop(i, None)

        for mask in range(1 << r):
            ann = [i for i in range(r) if mask >> i & 1]
            cre = [i for i in range(r) if not mask >> i & 1]
            if any(not annih_opts[i] for i in ann):
                continue

            def ann_assign(pos, used, acc, degsum):
                if pos == len(ann):
                    yield dict(acc), degsum
                    return
                i = ann[pos]
                for d in annih_opts[i]:
                    key = (leaves[i].species, leaves[i].color, d)
                    if key in used:
                        continue
                    acc[i] = d
                    yield from ann_assign(pos + 1, used | {key}, acc, degsum - d)
                acc.pop(i, None)

            for amap, adeg in ann_assign(0, frozenset(), {}, 0):
                budget = total_deg - adeg
                if budget < 0:
                    continue
                for cmap in creators(cre, budget, {}):
                    idx = {**amap, **cmap}
                    word = [ModeOp(leaves[i].species, leaves[i].color, idx[i]) for i in range(r)]
                    # creators must really be creators and annihilators annihilators
                    if any(word[i].is_creator() for i in ann) or any(not word[i].is_creator() for i in cre):
                        continue
                    w = self.coef
                    exps = [self._exponent(leaves[i], idx[i]) for i in range(r)]
                    ok = True
                    for (gidx, gz, deriv, split) in self.groups:
                        e = sum(exps[i] for i in gidx) + gz
                        if split and ((e >= 0) != (split > 0)):
                            ok = False
                            break
                        if deriv:
                            w = w * e ** deriv
                            if not w:
                                ok = False
                                break
                    if not ok:
                        continue
                    sign, nword = normal_order_word(word)
                    cur = st
                    for m in reversed(nword):
                        res = _apply_mode_state(m, cur)
                        if res is None:
                            cur = None
                            break
                        sign *= res[0]
                        cur = res[1]
                    if cur is not None:
                        add_into(out, cur, w if sign > 0 else -w)
        return FockVector._build(out)


def eval_no_expr(f: NOProductField, k: int, v: FockVector) -> FockVector:
    return f.apply(k, v)


# ------------------------------------------------------------ pullback operators

class NormalProductField(Field):
    """Normal product of Psi*_c with F at the same point.

    (Psi*_c F)(z) = Psi*_{c,-}(z) F(z) + sigma F(z) Psi*_{c,+}(z), sigma = -1
    for odd F; the z^{-1} coefficient is the antisymmetrization pullback.
    """

    def __init__(self, c: int, F: Field):
        super().__init__()
        self.c, self.F = c, F
        self.parity = 1 - F.parity
        self.delta = F.delta - 1

    def _compute(self, q, st):
        F, c = self.F, self.c
        d = state_degree(st)
        sigma = -1 if F.parity else 1
        out: dict = {}
        # creation part psi*[c,n], n <= 0, after F_{q-n+1}
        for n in range(q + 1 - d - F.delta, 1):
            for st2, c2 in F.apply_state(q - n + 1, st).terms.items():
                r = _apply_mode_state(ModeOp(PSI_STAR, c, n), st2)
                if r is not None:
                    add_into(out, r[1], c2 if r[0] > 0 else -c2)
        # annihilation part psi*[c,n], n > 0, applied first
        for (col, rk, dd) in st:
            if col != c or rk != 1:
                continue
            r = _apply_mode_state(ModeOp(PSI_STAR, c, dd), st)
            if r is None:
                continue
            c0 = sigma * r[0]
            for st2, c2 in F.apply_state(q - dd + 1, r[1]).terms.items():
                add_into(out, st2, c0 * c2)
        return FockVector._build(out)


class DifferencePartField(Field):
    """Difference part of the fermionic Dunkl pullback applied to a field F.

    (Delta F)_k = sum_b [ sum_{n<=0} psi*[b,n] G^b_{-n,k-1}
                          + sigma sum_{n>0} G^b_{-n,k-1} psi*[b,n] ]
    where G^b(w, z) is the divided difference
    (Psi_b(w) F(z) - Psi_b(z) F(w)) / (z - w) expanded for |w| < |z|.

    ``variant='radial'`` reads the second product in its own region,
    G_{P,Q} = sum_{j>=0} psi[b,P-j] F_{Q+j+1} - (-1)^{|F|} F_{P-j} psi[b,Q+j+1]...
    with the exchange sign of Psi and F; ``variant='telescoped'`` uses the
    mode-space telescoping of the antisymmetric numerator,
    G_{P,Q} = sum_{m<=min} psi[b,m] F_{S-m} - sum_{m>max} psi[b,m] F_{S-m},
    which needs the cutoff ``K`` on the second sum.
    """

    def __init__(self, F: Field, s: int, variant: str = "telescoped", cutoff: Optional[int] = None):
        super().__init__()
        self.F, self.s, self.variant, self.cutoff = F, s, variant, cutoff
        self.parity, self.delta = F.parity, F.delta
        self.truncated = False
        self._psi = {b: PsiField(b) for b in range(1, s + 1)}
        if variant == "ordered":
            self._J = {b: NormalProductField(b, self._psi[b]) for b in range(1, s + 1)}
            self._M = {b: NormalProductField(b, F) for b in range(1, s + 1)}

    def _G(self, b, P, Q, st) -> FockVector:
        F = self.F
        psi_b = self._psi[b]
        d = state_degree(st)
        out: dict = {}

        def emit(vec, c):
            for st2, c2 in vec.terms.items():
                add_into(out, st2, c * c2)

        if self.variant == "radial":
            # Psi_b(w) F(z)/(z-w): sum_j psi[b,P-j] F_{Q+j+1}
            exch = 1 if F.parity else -1  # -Psi(z)F(w) = exch * F(w) Psi(z)
            jmax = d + F.delta - Q - 1
            if self.cutoff is not None and jmax > self.cutoff:
                jmax = self.cutoff
                self.truncated = True
            for j in range(0, max(jmax, -1) + 1):
                fv = F.apply_state(Q + j + 1, st)
                for st2, c2 in fv.terms.items():
                    emit(psi_b.apply_state(P - j, st2), c2)
            jmax2 = d - Q - 1
            if self.cutoff is not None and jmax2 > self.cutoff:
                jmax2 = self.cutoff
                self.truncated = True
            for j in range(0, max(jmax2, -1) + 1):
                pv = psi_b.apply_state(Q + j + 1, st)
                for st2, c2 in pv.terms.items():
                    emit(F.apply_state(P - j, st2), exch * c2)
            return FockVector._build(out)
        if self.variant == "telescoped":
            S = P + Q + 1
            lo = S - (d + F.delta)
            for m in range(lo, min(P, Q) + 1):
                fv = F.apply_state(S - m, st)
                for st2, c2 in fv.terms.items():
                    emit(psi_b.apply_state(m, st2), c2)
            K = self.cutoff if self.cutoff is not None else d + 4
            for m in range(max(P, Q) + 1, max(P, Q) + 2 + K):
                fv = F.apply_state(S - m, st)
                for st2, c2 in fv.terms.items():
                    emit(psi_b.apply_state(m, st2), -c2)
            return FockVector._build(out)
        raise ValueError(f"unknown variant {self.variant!r}")

    def _compute(self, k, st):
        if self.variant == "ordered":
            return self._compute_ordered(k, st)
        d = state_degree(st)
        sigma = 1 if self.F.parity else -1  # G has parity |F| + 1
        out: dict = {}
        for b in range(1, self.s + 1):
            # creation part of Psi*_b: modes n <= 0, G_{-n,k-1} v has degree d + n - k
            for n in range(k - d - self.F.delta, 1):
                g = self._G(b, -n, k - 1, st)
                for st2, c2 in g.terms.items():
                    r = _apply_mode_state(ModeOp(PSI_STAR, b, n), st2)
                    if r is not None:
                        add_into(out, r[1], c2 if r[0] > 0 else -c2)
            # annihilation part: psi*[b,n], n > 0, hits a psi[b,-n] creator of the state
            for (c, rk, dd) in st:
                if c != b or rk != 1:
                    continue
                r = _apply_mode_state(ModeOp(PSI_STAR, b, dd), st)
                if r is None:
                    continue
                g = self._G(b, -dd, k - 1, r[1])
                c0 = sigma * r[0]
                for st2, c2 in g.terms.items():
                    add_into(out, st2, c0 * c2)
        return FockVector._build(out)


    def _compute_ordered(self, k, st):
        # |w| < |z|: J_b(w) F(z) - (-1)^{|F|} M_b(w) Psi_b(z), M_b = (Psi*_b F)(w),
        # integrated against z/(z-w) = sum_j w^j z^-j around w = 0
        F = self.F
        d = state_degree(st)
        exch = -1 if F.parity else 1
        out: dict = {}
        for b in range(1, self.s + 1):
            J, M = self._J[b], self._M[b]
            for j in range(0, d + F.delta - k + 1):
                for st2, c2 in F.apply_state(k + j, st).terms.items():
                    for st3, c3 in J.apply_state(-1 - j, st2).terms.items():
                        add_into(out, st3, c2 * c3)
            for j in range(0, d - k + 1):
                for st2, c2 in self._psi[b].apply_state(k + j, st).terms.items():
                    for st3, c3 in M.apply_state(-1 - j, st2).terms.items():
                        add_into(out, st3, -exch * c2 * c3)
        return FockVector._build(out)


def dunkl_pullback(F: Field, s: int, beta, variant: str = "telescoped", cutoff=None) -> Field:
    """D F = z d/dz F + beta * Delta F."""
    return SumField([(1, EulerField(F)), (beta, DifferencePartField(F, s, variant, cutoff))])


def A_script_apply(F: Field, a: int, v: FockVector) -> FockVector:
    """Antisymmetrization pullback of F(z) (x) e_a applied to v.

    sum_{m<=0} psi*[a,m] F_{-m} v + sigma sum_{m>0} F_{-m} psi*[a,m] v,
    sigma = -1 for odd F and +1 for even F.
    """
    if F.delta != 0:
        raise ValueError(f"pullback needs a field of total degree 0, got {F.delta}")
    sigma = -1 if F.parity else 1
    out = FockVector()
    for st, c in v.terms.items():
        d = state_degree(st)
        acc: dict = {}
        for m in range(-d, 1):
            for st2, c2 in F.apply_state(-m, st).terms.items():
                r = _apply_mode_state(ModeOp(PSI_STAR, a, m), st2)
                if r is not None:
                    add_into(acc, r[1], c2 if r[0] > 0 else -c2)
        for (col, rk, dd) in st:
            if col != a or rk != 1:
                continue
            r = _apply_mode_state(ModeOp(PSI_STAR, a, dd), st)
            if r is None:
                continue
            c0 = sigma * r[0]
            for st2, c2 in F.apply_state(-dd, r[1]).terms.items():
                add_into(acc, st2, c0 * c2)
        out = out + FockVector._build(acc).scale(c)
    return out


def residue(f: Field, v: FockVector) -> FockVector:
    """Contour integral dz/(2 pi i) of a density: the z^{-1} coefficient."""
    return f.apply(-1, v)

"""Multicomponent charged free-fermion Fock space with exact signs.

Modes are ``psi[c,n]`` and ``psi*[c,n]`` with {psi[a,n], psi*[b,m]} = delta_ab delta_{n,-m}.
The vacuum is killed by psi[c,n>=0] and psi*[c,m>0]; the remaining modes
(psi[c,n<0], psi*[c,m<=0]) are creators and mutually anticommute, so a basis
state is a set of creators applied to |0> in a fixed canonical order.

A creator is encoded as ``(color, rank, d)`` with rank 0 for psi*, 1 for psi
and ``d = -index`` (its degree). Sorting these keys ascending gives the
canonical word: colors ascending, psi* before psi, indices descending.
"""
from __future__ import annotations

import bisect
import random
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .scalars import format_scalar, parse_scalar

PSI = "psi"
PSI_STAR = "psi*"

Key = Tuple[int, int, int]
State = Tuple[Key, ...]
VACUUM: State = ()


@dataclass(frozen=True)
class ModeOp:
    species: str  # PSI or PSI_STAR
    color: int
    index: int

    def is_creator(self) -> bool:
        if self.species == PSI:
            return self.index < 0
        return self.index <= 0

    def degree(self) -> int:
        return -self.index

    def key(self) -> Key:
        """Creator key of this mode (if creator) or of its partner (if annihilator)."""
        if self.is_creator():
            return (self.color, 0 if self.species == PSI_STAR else 1, -self.index)
        # partner of psi[c,n>=0] is psi*[c,-n]; of psi*[c,m>0] is psi[c,-m]
        if self.species == PSI:
            return (self.color, 0, self.index)
        return (self.color, 1, self.index)

    def __str__(self):
        return f"{self.species}[{self.color},{self.index}]"


def psi(c: int, n: int) -> ModeOp:
    return ModeOp(PSI, c, n)


def psi_star(c: int, n: int) -> ModeOp:
    return ModeOp(PSI_STAR, c, n)


def key_to_mode(k: Key) -> ModeOp:
    c, r, d = k
    return ModeOp(PSI_STAR if r == 0 else PSI, c, -d)


def state_charge(st: State) -> Dict[int, int]:
    ch: Dict[int, int] = {}
    for c, r, _ in st:
        ch[c] = ch.get(c, 0) + (1 if r == 0 else -1)
    return ch


def state_total_charge(st: State) -> int:
    return sum(1 if r == 0 else -1 for _, r, _ in st)


def state_degree(st: State) -> int:
    return sum(d for _, _, d in st)


def _apply_mode_state(m: ModeOp, st: State):
    """Returns (sign, new_state) or None."""
    k = m.key()
    pos = bisect.bisect_left(st, k)
    present = pos < len(st) and st[pos] == k
    if m.is_creator():
        if present:
            return None
        return (-1 if pos % 2 else 1), st[:pos] + (k,) + st[pos:]
    if not present:
        return None
    return (-1 if pos % 2 else 1), st[:pos] + st[pos + 1:]


class FockVector:
    """Finite linear combination of basis states with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[State, object]] = None):
        self.terms: Dict[State, object] = {}
        if terms:
            for st, c in terms.items():
                if c:
                    self.terms[tuple(st)] = c

    @classmethod
    def _build(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def vacuum(cls, coeff=1) -> "FockVector":
        return cls._build({VACUUM: coeff})

    @classmethod
    def basis(cls, st: State, coeff=1) -> "FockVector":
        return cls._build({tuple(st): coeff} if coeff else {})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "FockVector") -> "FockVector":
        t = dict(self.terms)
        for st, c in other.terms.items():
            v = t.get(st, 0) + c
            if v:
                t[st] = v
            else:
                t.pop(st, None)
        return FockVector._build(t)

    def __neg__(self):
        return FockVector._build({st: -c for st, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FockVector":
        if not c:
            return FockVector()
        t = {}
        for st, v in self.terms.items():
            w = v * c
            if w:
                t[st] = w
        return FockVector._build(t)

    __rmul__ = scale

    def map_coeffs(self, f) -> "FockVector":
        t = {}
        for st, v in self.terms.items():
            w = f(v)
            if w:
                t[st] = w
        return FockVector._build(t)

    def degree_max(self) -> int:
        return max((state_degree(st) for st in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({(state_degree(st), state_total_charge(st)) for st in self.terms}) <= 1

    def __repr__(self):
        return f"FockVector({format_fock(self)!r})"

    __str__ = lambda self: format_fock(self)


def add_into(t: dict, st, c):
    v = t.get(st, 0) + c
    if v:
        t[st] = v
    else:
        t.pop(st, None)


def apply_mode(m: ModeOp, v: FockVector) -> FockVector:
    t: dict = {}
    for st, c in v.terms.items():
        r = _apply_mode_state(m, st)
        if r is not None:
            sg, st2 = r
            add_into(t, st2, c if sg > 0 else -c)
    return FockVector._build(t)


def apply_word(word: Sequence[ModeOp], v: FockVector) -> FockVector:
    """Apply a product of modes, rightmost first."""
    for m in reversed(word):
        v = apply_mode(m, v)
        if not v:
            break
    return v


def normal_order_word(word: Sequence[ModeOp]) -> Tuple[int, List[ModeOp]]:
    """Move creators left of annihilators (stable), returning the permutation sign.

    Contraction terms are discarded; since creators anticommute exactly among
    themselves (and so do annihilators) the result is well defined.
    """
    creators = []
    annihilators = []
    sign = 1
    for m in word:
        if m.is_creator():
            if len(annihilators) % 2:
                sign = -sign
            creators.append(m)
        else:
            annihilators.append(m)
    return sign, creators + annihilators


def apply_normal_ordered(word: Sequence[ModeOp], v: FockVector) -> FockVector:
    sign, w = normal_order_word(word)
    out = apply_word(w, v)
    return out if sign > 0 else -out


def E_mode_apply(a: int, b: int, n: int, v: FockVector) -> FockVector:
    """E_{ab,n} = sum_{k+l=n} :psi*[a,l] psi[b,k]:."""
    t: dict = {}
    for st, c in v.terms.items():
        ks = set()
        for (col, r, d) in st:
            # psi[b,k], k>=0, annihilates psi*[b,-k]
            if col == b and r == 0:
                ks.add(d)
            # psi*[a,l], l>0, annihilates psi[a,-l]: k = n - l
            if col == a and r == 1:
                ks.add(n - d)
        # both creators: k<0 and l=n-k<=0
        for k in range(n, 0):
            ks.add(k)
        for k in ks:
            l = n - k
            ms = psi_star(a, l)
            mp = psi(b, k)
            if mp.is_creator() and not ms.is_creator():
                word, sg = (mp, ms), -1
            else:
                word, sg = (ms, mp), 1
            st_v = st
            ok = True
            for m in reversed(word):
                r = _apply_mode_state(m, st_v)
                if r is None:
                    ok = False
                    break
                sg *= r[0]
                st_v = r[1]
            if ok:
                add_into(t, st_v, c if sg > 0 else -c)
    return FockVector._build(t)


def a_mode_apply(c: int, n: int, v: FockVector) -> FockVector:
    return E_mode_apply(c, c, n, v)


def charge_apply(v: FockVector, s: int) -> FockVector:
    """a_0 = sum_c a_{c,0} acting diagonally."""
    t = {}
    for st, c in v.terms.items():
        q = state_total_charge(st)
        if q:
            t[st] = c * q
    return FockVector._build(t)


def grade(v: FockVector, s: int) -> Dict[Tuple[int, Tuple[int, ...]], FockVector]:
    out: Dict[Tuple[int, Tuple[int, ...]], dict] = {}
    for st, c in v.terms.items():
        ch = state_charge(st)
        key = (state_degree(st), tuple(ch.get(col, 0) for col in range(1, s + 1)))
        out.setdefault(key, {})[st] = c
    return {k: FockVector._build(t) for k, t in out.items()}


def tau_N(v: FockVector, N: int) -> FockVector:
    return FockVector._build({st: c for st, c in v.terms.items() if state_total_charge(st) == N})


def vacuum_pair(v: FockVector):
    return v.terms.get(VACUUM, 0)


# ------------------------------------------------------------------ Q maps

def _shift_mode(m: ModeOp, c: int, direction: int) -> ModeOp:
    if m.color != c:
        return m
    if m.species == PSI:
        return ModeOp(PSI, c, m.index - direction)
    return ModeOp(PSI_STAR, c, m.index + direction)


def Q_color_apply(c: int, direction: int, v: FockVector) -> FockVector:
    """Q_c (direction +1) or Q_c^{-1} (direction -1)."""
    seed = psi(c, -1) if direction > 0 else psi_star(c, 0)
    base = apply_mode(seed, FockVector.vacuum())
    out = FockVector()
    for st, coef in v.terms.items():
        word = [_shift_mode(key_to_mode(k), c, direction) for k in st]
        out = out + apply_word(word, base).scale(coef)
    return out


def Q_apply(c, direction: int, v: FockVector, s: Optional[int] = None) -> FockVector:
    """Q_c^{+-1}, or for c == 'ALL' the total shift Q = Q_1 Q_2 ... Q_s.

    The total map applies Q_s first and Q_1 last (its inverse the reverse),
    which reproduces Q|0> = psi[s,-1]...psi[1,-1]|0>.
    """
    if c != "ALL":
        return Q_color_apply(c, direction, v)
    if s is None:
        raise ValueError("Q_apply(ALL) needs the color count s")
    order = range(s, 0, -1) if direction > 0 else range(1, s + 1)
    for col in order:
        v = Q_color_apply(col, direction, v)
    return v


def Q_power(m: int, v: FockVector, s: int) -> FockVector:
    d = 1 if m >= 0 else -1
    for _ in range(abs(m)):
        v = Q_apply("ALL", d, v, s)
    return v


def charged_vacuum(N: int, s: int) -> FockVector:
    """|N> = Q^{-N}|0>."""
    return Q_power(-N, FockVector.vacuum(), s)


# ----------------------------------------------------------- enumeration

def _partitions_distinct(total: int, minpart: int, allowed_max=None):
    """Sets of distinct integers >= minpart summing to total (as sorted tuples)."""
    def rec(rem, lo):
        if rem == 0:
            yield ()
        for x in range(lo, rem + 1):
            if x == 0:
                for rest in rec(rem, 1):
                    yield (0,) + rest
                continue
            for rest in rec(rem - x, x + 1):
                yield (x,) + rest
    yield from rec(total, minpart)


def basis_states(s: int, degree: int, charge: Optional[int] = None,
                 charges: Optional[Sequence[int]] = None) -> List[State]:
    """All basis states of given degree and total charge (or charge vector)."""
    per_color = []
    for col in range(1, s + 1):
        opts = []
        for dp in range(degree + 1):
            stars = list(_partitions_distinct(dp, 0))
            for dq in range(degree - dp + 1):
                holes = list(_partitions_distinct(dq, 1))
                for a in stars:
                    for b in holes:
                        keys = tuple(sorted([(col, 0, d) for d in a] + [(col, 1, d) for d in b]))
                        opts.append((dp + dq, len(a) - len(b), keys))
        per_color.append(opts)
    out = []

    def rec(ci, deg_left, acc, chs):
        if ci == s:
            if deg_left != 0:
                return
            if charge is not None and sum(chs) != charge:
                return
            if charges is not None and tuple(chs) != tuple(charges):
                return
            out.append(tuple(acc))
            return
        for dg, ch, keys in per_color[ci]:
            if dg <= deg_left:
                rec(ci + 1, deg_left - dg, acc + list(keys), chs + [ch])

    rec(0, degree, [], [])
    out.sort()
    return out


def random_state(s: int, max_degree: int, rng: random.Random, max_modes: int = 4) -> State:
    keys = set()
    for _ in range(rng.randint(0, max_modes)):
        c = rng.randint(1, s)
        r = rng.randint(0, 1)
        d = rng.randint(0 if r == 0 else 1, max(1, max_degree))
        keys.add((c, r, d))
    st = tuple(sorted(keys))
    while state_degree(st) > max_degree and st:
        st = st[:-1]
    return st


def random_vector(s: int, max_degree: int, rng: random.Random, nterms: int = 3) -> FockVector:
    from fractions import Fraction
    t: dict = {}
    for _ in range(nterms):
        add_into(t, random_state(s, max_degree, rng), Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
    return FockVector._build(t)


def random_mode(s: int, max_index: int, rng: random.Random) -> ModeOp:
    return ModeOp(rng.choice([PSI, PSI_STAR]), rng.randint(1, s), rng.randint(-max_index, max_index))


# ----------------------------------------------------------- text format

def format_state(st: State) -> str:
    if not st:
        return "|0>"
    return " ".join(str(key_to_mode(k)) for k in st) + " |0>"


def format_fock(v: FockVector) -> str:
    if not v.terms:
        return "0"
    parts = []
    for st in sorted(v.terms, key=lambda x: (state_degree(x), x)):
        parts.append(f"({format_scalar(v.terms[st])}) {format_state(st)}")
    return " + ".join(parts)


_MODE = re.compile(r"\s*(psi\*|psi)\s*\[\s*(\d+)\s*,\s*(-?\d+)\s*\]")
_COEF = re.compile(r"\s*\(([^()]*)\)")


def parse_word(text: str) -> List[ModeOp]:
    text = text.strip()
    pos = 0
    word = []
    while pos < len(text):
        m = _MODE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot parse mode at position {pos}: {text[pos:]!r}")
        word.append(ModeOp(PSI_STAR if m.group(1) == "psi*" else PSI, int(m.group(2)), int(m.group(3))))
        pos = m.end()
    return word


def parse_state(text: str) -> FockVector:
    """Parse ``psi*[c,n] psi[c,m] ... |0>`` (applied right to left).

    Sums of such terms with parenthesised coefficients, as printed by
    :func:`format_fock`, are accepted too.
    """
    text = text.strip()
    if text == "0":
        return FockVector()
    out = FockVector()
    pos = 0
    while pos < len(text):
        coef = 1
        m = _COEF.match(text, pos)
        if m:
            coef = parse_scalar(m.group(1))
            if coef.is_const():
                coef = coef.coeff(0)
            pos = m.end()
        end = text.find("|0>", pos)
        if end < 0:
            raise ValueError(f"missing '|0>' after position {pos}")
        word = parse_word(text[pos:end])
        out = out + apply_word(word, FockVector.vacuum()).scale(coef)
        pos = end + 3
        rest = text[pos:].lstrip()
        if not rest:
            break
        if not rest.startswith("+"):
            raise ValueError(f"expected '+' at position {len(text) - len(rest)}")
        pos = len(text) - len(rest) + 1
    return out


# ----------------------------------------------------------- algebra checks

def anticommutator_expected(m1: ModeOp, m2: ModeOp) -> int:
    """{psi[a,n], psi*[b,m]} = delta_ab delta_{n,-m}; like species anticommute."""
    if m1.species == m2.species or m1.color != m2.color:
        return 0
    return 1 if m1.index + m2.index == 0 else 0


def anticommutation_check(trials: int, s_max: int, max_degree: int, seed: int = 0,
                          max_index: int = 4):
    """{m1, m2} v = delta v on random mode pairs and random vectors."""
    from .report import CheckReport
    rng = random.Random(seed)
    rep = CheckReport("anticommutation", True, notes={"trials": trials, "seed": seed})
    for _ in range(trials):
        s = rng.randint(1, s_max)
        v = random_vector(s, max_degree, rng)
        m1, m2 = random_mode(s, max_index, rng), random_mode(s, max_index, rng)
        if rng.random() < 0.3:
            # force a contracting pair now and then
            m2 = ModeOp(PSI_STAR if m1.species == PSI else PSI, m1.color, -m1.index)
        rep.cases += 1
        lhs = apply_mode(m1, apply_mode(m2, v)) + apply_mode(m2, apply_mode(m1, v))
        if lhs != v.scale(anticommutator_expected(m1, m2)):
            rep.fail(m1=str(m1), m2=str(m2), v=format_fock(v))
    return rep


def affine_check(s: int, degree_bound: int, charges: Sequence[int], modes: Sequence[int]):
    """[E_ab,n, E_cd,m] = d_bc E_ad,n+m - d_ad E_cb,n+m + n d_{n,-m} d_ad d_bc,
    and [a_b,n, a_c,m] = n d_bc d_{n,-m}, on basis states."""
    from .report import CheckReport
    rep = CheckReport("affine", True, notes={"s": s, "degree_bound": degree_bound})
    cols = range(1, s + 1)
    states = [st for q in charges for d in range(degree_bound + 1)
              for st in basis_states(s, d, charge=q)]
    for st in states:
        v = FockVector.basis(st)
        cache = {}

        def E(a, b, n, w):
            return E_mode_apply(a, b, n, w)

        for a in cols:
            for b in cols:
                for n in modes:
                    Ev = E(a, b, n, v)
                    for c in cols:
                        for d in cols:
                            for m in modes:
                                rep.cases += 1
                                key = (c, d, m)
                                if key not in cache:
                                    cache[key] = E(c, d, m, v)
                                lhs = E(a, b, n, cache[key]) - E(c, d, m, Ev)
                                rhs = FockVector()
                                if b == c:
                                    rhs = rhs + E(a, d, n + m, v)
                                if a == d:
                                    rhs = rhs - E(c, b, n + m, v)
                                if n == -m and a == d and b == c:
                                    rhs = rhs + v.scale(n)
                                if lhs != rhs:
                                    rep.fail(abcd=(a, b, c, d), n=n, m=m, state=format_state(st))
    # Heisenberg subalgebra of diagonal currents
    for st in states:
        v = FockVector.basis(st)
        for b in cols:
            for c in cols:
                for n in modes:
                    for m in modes:
                        rep.cases += 1
                        lhs = (a_mode_apply(b, n, a_mode_apply(c, m, v))
                               - a_mode_apply(c, m, a_mode_apply(b, n, v)))
                        k = n if (b == c and n == -m) else 0
                        if lhs != v.scale(k):
                            rep.fail(heis=(b, c), n=n, m=m, state=format_state(st))
    return rep

"""Exact coefficients: rationals and Laurent polynomials in the coupling beta.

Rationals are plain :class:`fractions.Fraction`. :class:`ParamScalar` is an
immutable sparse Laurent polynomial ``sum c_k b^k`` with rational ``c_k``.
It mixes freely with ``int`` and ``Fraction`` so that every routine in the
package can run either symbolically in beta or at a sampled rational beta.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

Scalar = Union[int, Fraction, "ParamScalar"]


class ParamScalar:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[int, Fraction] | Iterable[Tuple[int, Fraction]] = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        clean = {}
        for k, c in items:
            if c:
                clean[int(k)] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "ParamScalar":
        return cls._raw({0: Fraction(c)} if c else {})

    @classmethod
    def beta(cls, power: int = 1) -> "ParamScalar":
        return cls._raw({power: Fraction(1)})

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def coeff(self, k: int) -> Fraction:
        return self._terms.get(k, Fraction(0))

    def is_const(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def degree_range(self) -> Tuple[int, int]:
        if not self._terms:
            return (0, 0)
        return (min(self._terms), max(self._terms))

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, ParamScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return self._terms == {0: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return ParamScalar._raw({k: -c for k, c in self._terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            t = dict(self._terms)
            c = t.get(0, 0) + other
            if c:
                t[0] = Fraction(c)
            else:
                t.pop(0, None)
            return ParamScalar._raw(t)
        if not isinstance(other, ParamScalar):
            return NotImplemented
        t = dict(self._terms)
        for k, c in other._terms.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return ParamScalar._raw(t)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, ParamScalar)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ParamScalar._raw({})
            return ParamScalar._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, ParamScalar):
            return NotImplemented
        t: Dict[int, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                t[k] = t.get(k, 0) + c1 * c2
        return ParamScalar._raw({k: c for k, c in t.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, ParamScalar):
            if len(other._terms) != 1:
                raise ZeroDivisionError("division only by nonzero monomials c*b^k")
            (k, c), = other._terms.items()
            return ParamScalar._raw({e - k: v / c for e, v in self._terms.items()})
        return NotImplemented

    def __rtruediv__(self, other):
        return ParamScalar.const(other) / self

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ZeroDivisionError("negative powers only of monomials")
            (k, c), = self._terms.items()
            return ParamScalar._raw({k * n: c ** n})
        out = ParamScalar.const(1)
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, v) -> Fraction:
        return beta_eval(self, v)

    def __repr__(self):
        return f"ParamScalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


BETA = ParamScalar.beta()
ONE = ParamScalar.const(1)
ZERO = ParamScalar.const(0)


def as_param(x) -> ParamScalar:
    if isinstance(x, ParamScalar):
        return x
    return ParamScalar.const(Fraction(x))


def is_zero(x) -> bool:
    return not x


def scalar_arith(op: str, a, b=None):
    """Dispatch form of the ring operations (add, mul, neg, eq)."""
    a = as_param(a)
    if op == "neg":
        return -a
    b = as_param(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "eq":
        return a == b
    raise ValueError(f"unknown scalar op {op!r}")


def beta_eval(a, v) -> Fraction:
    """Substitute beta := v exactly."""
    if not isinstance(a, ParamScalar):
        return Fraction(a)
    v = Fraction(v)
    total = Fraction(0)
    for k, c in a._terms.items():
        if k < 0 and v == 0:
            raise ZeroDivisionError("cannot substitute beta=0 into a negative power")
        total += c * v ** k
    return total


def inverse_beta(beta, power: int = 1):
    """beta**(-power) for either a symbolic or a sampled coupling."""
    if isinstance(beta, ParamScalar):
        return beta ** (-power)
    return Fraction(1) / Fraction(beta) ** power


def format_scalar(a) -> str:
    if not isinstance(a, ParamScalar):
        return str(Fraction(a))
    if not a._terms:
        return "0"
    parts = []
    for k in sorted(a._terms, reverse=True):
        c = a._terms[k]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "b" if k == 1 else f"b^{k}"
            body = var if mag == 1 else f"{mag}*{var}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*(\*)?\s*)?(b(?:\^\s*(-?\d+))?)?\s*"
)


def parse_scalar(text: str) -> ParamScalar:
    """Inverse of :func:`format_scalar`; accepts e.g. ``3/2*b^2 - 1``."""
    s = text.strip()
    if not s:
        raise ValueError("empty scalar literal")
    pos = 0
    terms: Dict[int, Fraction] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse scalar at position {pos}: {s[pos:]!r}")
        sign, num, star, var, exp = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator at position {pos} in {s!r}")
        if num is None and var is None:
            raise ValueError(f"dangling sign at position {pos} in {s!r}")
        if star and var is None:
            raise ValueError(f"dangling '*' at position {pos} in {s!r}")
        c = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            c = -c
        k = 0
        if var is not None:
            k = int(exp) if exp is not None else 1
        terms[k] = terms.get(k, 0) + c
        pos = m.end()
        first = False
    return ParamScalar(terms)


def scalar_to_json(a) -> str:
    return format_scalar(as_param(a))


def random_scalar(rng, span: int = 3, nterms: int = 3) -> ParamScalar:
    return ParamScalar({rng.randint(-span, span): Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                        for _ in range(nterms)})


def scalar_ring_check(trials: int, seed: int = 0):
    """Ring axioms and the evaluation homomorphism on random Laurent polynomials."""
    import random
    from .report import CheckReport
    rng = random.Random(seed)
    rep = CheckReport("scalars", True, notes={"trials": trials, "seed": seed})
    for _ in range(trials):
        a, b, c = (random_scalar(rng) for _ in range(3))
        v = Fraction(rng.choice([-3, -1, 2, 5]), rng.randint(1, 4))
        rep.cases += 1
        checks = {
            "assoc+": (a + b) + c == a + (b + c),
            "assoc*": (a * b) * c == a * (b * c),
            "distrib": a * (b + c) == a * b + a * c,
            "comm": a * b == b * a,
            "inverse": (a + (-a)) == ZERO,
            "eval*": beta_eval(a * b, v) == beta_eval(a, v) * beta_eval(b, v),
            "eval+": beta_eval(a + b, v) == beta_eval(a, v) + beta_eval(b, v),
            "roundtrip": parse_scalar(format_scalar(a)) == a,
        }
        for name, ok in checks.items():
            if not ok:
                rep.fail(law=name, a=format_scalar(a), b=format_scalar(b), c=format_scalar(c))
    return rep

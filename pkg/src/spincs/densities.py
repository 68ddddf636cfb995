"""Density definitions loaded from S-expression data files.

Two evaluation forms are supported for each density ``T_ab^{k,l}(z)``:
``no`` (normal-ordered fermion products) and ``rec`` (affine generators and
kernel integrals, referring to lower densities in their ``rec`` form). The
zero mode of a density is its ``z^{-1}`` coefficient.
"""
from __future__ import annotations

import re
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Tuple

from .fields import (
    EField,
    EulerField,
    Field,
    Kernel,
    KernelProductField,
    KernelRegime,
    NOGroup,
    NOLeaf,
    NOProductField,
    NOZ,
    SumField,
    ZShiftField,
)
from .fock import PSI, PSI_STAR, FockVector

DEFAULT_FILE = "densities_v1.sexp"


# ------------------------------------------------------------ reader

_TOKEN = re.compile(r"\s*(?:(;[^\n]*)|(\()|(\))|([^\s()]+))")


def tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot tokenize at position {pos}")
        if m.group(2):
            out.append(("(", m.start(2)))
        elif m.group(3):
            out.append((")", m.start(3)))
        elif m.group(4):
            out.append((m.group(4), m.start(4)))
        pos = m.end()
    return out


def read_all(text: str) -> list:
    toks = tokenize(text)
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(toks):
            raise ValueError("unexpected end of input")
        tok, where = toks[pos]
        pos += 1
        if tok == "(":
            lst = []
            while True:
                if pos >= len(toks):
                    raise ValueError(f"unclosed '(' at position {where}")
                if toks[pos][0] == ")":
                    pos += 1
                    return lst
                lst.append(read())
        if tok == ")":
            raise ValueError(f"unexpected ')' at position {where}")
        return tok

    forms = []
    while pos < len(toks):
        forms.append(read())
    return forms


def dump(expr) -> str:
    if isinstance(expr, list):
        return "(" + " ".join(dump(e) for e in expr) + ")"
    return str(expr)


# ------------------------------------------------------------ library

class DensityLibrary:
    """Parsed density definitions keyed by (name, kind, form)."""

    def __init__(self, forms: list):
        self.defs: Dict[Tuple[str, str, str], object] = {}
        for f in forms:
            if not (isinstance(f, list) and len(f) == 5 and f[0] == "density"):
                raise ValueError(f"malformed density entry: {dump(f)[:60]}")
            _, name, kind, form, expr = f
            if kind not in ("diag", "offdiag") or form not in ("no", "rec"):
                raise ValueError(f"bad kind/form in {name}: {kind} {form}")
            self.defs[(name, kind, form)] = expr

    @classmethod
    def load(cls, path: str = None) -> "DensityLibrary":
        if path is None:
            text = resources.files("spincs.data").joinpath(DEFAULT_FILE).read_text()
        else:
            with open(path) as fh:
                text = fh.read()
        return cls(read_all(text))

    def names(self, form: str) -> List[str]:
        return sorted({n for (n, _, f) in self.defs if f == form})

    def has(self, name: str, a: int, b: int, form: str) -> bool:
        return (name, "diag" if a == b else "offdiag", form) in self.defs

    def expr(self, name: str, a: int, b: int, form: str):
        key = (name, "diag" if a == b else "offdiag", form)
        if key not in self.defs:
            raise KeyError(f"no {form} form for {name} ({key[1]})")
        return self.defs[key]


# ------------------------------------------------------------ builder

class DensityBuilder:
    """Turns density expressions into :class:`Field` objects for given s."""

    def __init__(self, lib: DensityLibrary, s: int):
        self.lib = lib
        self.s = s
        self._fields: Dict[Tuple[str, int, int, str], Field] = {}

    def density(self, name: str, a: int, b: int, form: str) -> Field:
        key = (name, a, b, form)
        if key not in self._fields:
            expr = self.lib.expr(name, a, b, form)
            self._fields[key] = self.build(expr, {"a": a, "b": b}, form)
        return self._fields[key]

    def zero_mode(self, name: str, a: int, b: int, form: str, v: FockVector) -> FockVector:
        return self.density(name, a, b, form).apply(-1, v)

    # ---- coefficients
    def coef(self, x, env):
        if isinstance(x, list):
            op, *args = x
            vals = [self.coef(y, env) for y in args]
            if op == "+":
                return sum(vals, Fraction(0))
            if op == "*":
                out = Fraction(1)
                for y in vals:
                    out *= y
                return out
            if op == "-":
                return -vals[0] if len(vals) == 1 else vals[0] - sum(vals[1:], Fraction(0))
            raise ValueError(f"unknown coefficient operator {op!r}")
        if x == "s":
            return Fraction(self.s)
        return Fraction(x)

    def color(self, x, env) -> int:
        if x in env:
            return env[x]
        return int(x)

    # ---- fields
    def build(self, expr, env, form) -> Field:
        if not isinstance(expr, list):
            raise ValueError(f"expected a field expression, got {expr!r}")
        head = expr[0]
        if head == "sum":
            return SumField([(1, self.build(e, env, form)) for e in expr[1:]])
        if head == "scale":
            return SumField([(self.coef(expr[1], env), self.build(expr[2], env, form))])
        if head == "sumc":
            var = expr[1]
            return SumField([(1, self.build(expr[2], {**env, var: c}, form))
                             for c in range(1, self.s + 1)])
        if head == "no":
            return NOProductField(self._no_group(expr[1:], env, 0, 0))
        if head == "E":
            return EField(self.color(expr[1], env), self.color(expr[2], env))
        if head == "T":
            name = expr[1]
            a, b = self.color(expr[2], env), self.color(expr[3], env)
            return self.density(name, a, b, form)
        if head == "zpow":
            return ZShiftField(self.build(expr[2], env, form), int(expr[1]))
        if head == "zd":
            return EulerField(self.build(expr[1], env, form))
        if head == "int":
            regime = {"small": KernelRegime.SMALL, "around": KernelRegime.AROUND,
                      "large": KernelRegime.LARGE}[expr[1]]
            ker = self._kernel(expr[2], env)
            A = None if expr[3] == "one" else self.build(expr[3], env, form)
            B = self.build(expr[4], env, form)
            return KernelProductField(ker, A, B, regime)
        raise ValueError(f"unknown field head {head!r}")

    def _kernel(self, k, env) -> Kernel:
        if not (isinstance(k, list) and k[0] == "ker" and len(k) == 6):
            raise ValueError(f"malformed kernel {dump(k)}")
        coef = self.coef(k[1], env)
        alpha, gamma, p = int(k[2]), int(k[3]), int(k[4])
        if k[5] == "wz":
            return Kernel(coef, alpha, gamma, p)
        if k[5] == "zw":
            return Kernel.zw(coef, alpha, gamma, p)
        raise ValueError(f"kernel orientation must be wz or zw, got {k[5]!r}")

    def _no_item(self, item, env):
        head = item[0]
        if head == "psi":
            return NOLeaf(PSI, self.color(item[1], env))
        if head == "psis":
            return NOLeaf(PSI_STAR, self.color(item[1], env))
        if head == "z":
            return NOZ(int(item[1]))
        if head == "d":
            return self._no_group(item[2:], env, int(item[1]), 0)
        if head == "plus":
            return self._no_group(item[1:], env, 0, 1)
        if head == "minus":
            return self._no_group(item[1:], env, 0, -1)
        if head == "grp":
            return self._no_group(item[1:], env, 0, 0)
        raise ValueError(f"unknown normal-ordered item {head!r}")

    def _no_group(self, items, env, deriv, split) -> NOGroup:
        return NOGroup([self._no_item(i, env) for i in items], deriv, split)


def load_builder(s: int, path: str = None) -> DensityBuilder:
    return DensityBuilder(DensityLibrary.load(path), s)

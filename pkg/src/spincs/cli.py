"""Command line interface: ``spincs suite run`` and ``spincs compute <op>``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bose, fermi, finite, fock, harness
from .scalars import BETA, format_scalar, parse_scalar


def _beta(text):
    if text in (None, "b", "beta", "symbolic"):
        return BETA
    return Fraction(text)


def _state_colors(v):
    return max((c for st in v.terms for (c, _, _) in st), default=1)


def _matrix_json(M):
    return [[format_scalar(x) for x in row] for row in M]


def cmd_suite(args):
    cfg = harness.load_config(args.config) if args.config else harness.SuiteConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    if args.suites:
        cfg.suites = [x.strip() for x in args.suites.split(",") if x.strip()]
    cfg.validate()
    log = (lambda msg: print(msg, file=sys.stderr)) if not args.quiet else None
    report = harness.run_suite(cfg, log)
    text = harness.report_json(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 1 if report["failed"] else 0


def cmd_compute(args):
    op = args.op
    beta = _beta(args.beta)
    if op == "pi_N":
        v = fock.parse_state(args.state)
        s = args.s or _state_colors(v)
        out = fermi.pi_N(v, args.N, s)
        text, payload = finite.format_spinpoly(out), out
    elif op == "T":
        v = fock.parse_state(args.state)
        s = args.s or max(_state_colors(v), args.a, args.b)
        form = args.form.upper()
        out = fermi.T_apply(args.a, args.b, args.n, form, v, s, beta)
        text, payload = fock.format_fock(out), out
    elif op == "pi_bar_N":
        v = bose.parse_polysym(args.poly)
        out = bose.pi_bar_N(v, args.N, args.s or 1)
        text, payload = finite.format_spinpoly(out), out
    elif op == "T_bose":
        v = bose.parse_polysym(args.poly)
        s = args.s or max(args.a, args.b)
        out = bose.T_bose_apply(args.a, args.b, args.n, v, s, beta)
        text, payload = bose.format_polysym(out), out
    elif op == "dunkl":
        p = finite.parse_spinpoly(args.poly, args.N, args.s or 1)
        out = finite.dunkl_apply(args.i, p, beta)
        text, payload = finite.format_spinpoly(out), out
    elif op == "qdet":
        mats, basis = finite.qdet_coeffs(args.N, args.s or 1, args.order, args.sign,
                                         args.degree, beta)
        payload = {"basis": [finite.format_spinpoly(b) for b in basis],
                   "coefficients": [_matrix_json(M) for M in mats]}
        print(json.dumps(payload, indent=2))
        return 0
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(op)
    if args.json:
        print(json.dumps({"op": op, "result": text}))
    else:
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spincs", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    suite = sub.add_parser("suite", help="run verification suites")
    ssub = suite.add_subparsers(dest="suite_cmd", required=True)
    run = ssub.add_parser("run", help="run the suites selected by a config file")
    run.add_argument("--config", help="key = value config file")
    run.add_argument("--output", "-o", help="write the JSON report here")
    run.add_argument("--seed", type=int)
    run.add_argument("--suites", help="comma separated suite names (overrides config)")
    run.add_argument("--quiet", action="store_true")
    run.set_defaults(func=cmd_suite)
    lst = ssub.add_parser("list", help="list available suites")
    lst.set_defaults(func=lambda a: print("\n".join(
        f"{n:<24} {c.identity}" for n, c in harness.REGISTRY.items())) or 0)

    comp = sub.add_parser("compute", help="evaluate one operation")
    comp.add_argument("op", choices=["pi_N", "T", "pi_bar_N", "T_bose", "dunkl", "qdet"])
    comp.add_argument("--state", default="|0>", help="Fock state, e.g. 'psi*[1,-1] psi*[1,0] |0>'")
    comp.add_argument("--poly", default="1", help="polysymmetric or spin polynomial literal")
    comp.add_argument("--N", type=int, default=1)
    comp.add_argument("--s", type=int, default=0, help="number of colors (default: inferred)")
    comp.add_argument("--a", type=int, default=1)
    comp.add_argument("--b", type=int, default=1)
    comp.add_argument("--n", type=int, default=0)
    comp.add_argument("--i", type=int, default=1, help="slot of the Dunkl operator")
    comp.add_argument("--form", default="COMPOSITIONAL",
                      choices=["COMPOSITIONAL", "NORMAL_ORDERED", "RECURRENT",
                               "compositional", "normal_ordered", "recurrent"])
    comp.add_argument("--beta", default=None, help="rational value; default symbolic b")
    comp.add_argument("--order", type=int, default=3)
    comp.add_argument("--sign", type=int, default=-1, choices=[-1, 1])
    comp.add_argument("--degree", type=int, default=1)
    comp.add_argument("--json", action="store_true")
    comp.set_defaults(func=cmd_compute)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

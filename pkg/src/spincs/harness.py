"""Suite orchestration: configuration, check registry and JSON reports.

A report lists one entry per check with a status:
PROVEN-ON-COMPONENT (exact identity verified on every tested component),
EVIDENCE (checks of the conjectured Yangian property of the fermionic
operators, never promoted to proof) or FAILED (with counterexamples).
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from . import bose, fermi, finite, fock
from .report import CheckReport
from .scalars import BETA, ParamScalar, format_scalar, parse_scalar

PROVEN = "PROVEN-ON-COMPONENT"
EVIDENCE = "EVIDENCE"
FAILED = "FAILED"


@dataclass
class SuiteConfig:
    s: int = 2
    N_max: int = 3
    degree_bound: int = 3
    beta_mode: str = "sampled"          # symbolic | sampled
    beta_samples: List[Fraction] = field(
        default_factory=lambda: [Fraction(3, 2), Fraction(-2, 5), Fraction(7)])
    cutoff: int = 0                     # 0: degree_bound + 4
    suites: List[str] = field(default_factory=lambda: list(DEFAULT_SUITES))
    seed: int = 0
    density_file: Optional[str] = None
    timing: bool = False

    def validate(self):
        for name in ("s", "N_max", "degree_bound"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.beta_mode not in ("symbolic", "sampled"):
            raise ValueError(f"beta_mode must be symbolic or sampled, got {self.beta_mode!r}")
        if self.beta_mode == "sampled":
            if not self.beta_samples:
                raise ValueError("beta_samples is empty")
            if any(b == 0 for b in self.beta_samples):
                raise ValueError("sampled beta values must be nonzero")
        unknown = [x for x in self.suites if x not in REGISTRY]
        if unknown:
            raise ValueError(f"unknown suites: {', '.join(unknown)}")
        return self


_INT_KEYS = {"s", "N_max", "degree_bound", "cutoff", "seed"}


def parse_config(text: str) -> SuiteConfig:
    """``key = value`` lines; ``#`` starts a comment; lists are comma separated."""
    cfg = SuiteConfig()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (x.strip() for x in line.split("=", 1))
        try:
            if key in _INT_KEYS:
                setattr(cfg, key, int(value))
            elif key == "beta_mode":
                cfg.beta_mode = value
            elif key == "beta_samples":
                cfg.beta_samples = [Fraction(x.strip()) for x in value.split(",") if x.strip()]
            elif key == "suites":
                cfg.suites = [x.strip() for x in value.split(",") if x.strip()]
            elif key == "density_file":
                cfg.density_file = value or None
            elif key == "timing":
                cfg.timing = value.lower() in ("1", "true", "yes")
            else:
                raise ValueError(f"unknown key {key!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return cfg.validate()


def load_config(path: str) -> SuiteConfig:
    with open(path) as fh:
        return parse_config(fh.read())


# ------------------------------------------------------------ registry

@dataclass
class Check:
    name: str
    identity: str
    run: Callable[[SuiteConfig, object], CheckReport]
    evidence: bool = False
    beta_dependent: bool = True
    beta_degree: int = 2


REGISTRY: Dict[str, Check] = {}


def register(name, identity, evidence=False, beta_dependent=True, beta_degree=2):
    def deco(fn):
        REGISTRY[name] = Check(name, identity, fn, evidence, beta_dependent, beta_degree)
        return fn
    return deco


def _lib(cfg):
    from .densities import DensityLibrary
    return DensityLibrary.load(cfg.density_file)


def _Ns(cfg, lo=1):
    return list(range(lo, cfg.N_max + 1))


@register("scalars", "ring axioms of Q[beta, 1/beta] and evaluation homomorphism",
          beta_dependent=False)
def _scalars(cfg, beta):
    from .scalars import scalar_ring_check
    return scalar_ring_check(200, cfg.seed)


@register("anticommutation", "{psi[a,n], psi*[b,m]} = delta_ab delta_{n,-m}", beta_dependent=False)
def _anticomm(cfg, beta):
    return fock.anticommutation_check(500, min(cfg.s + 1, 3), cfg.degree_bound + 3, cfg.seed)


@register("affine", "level-one affine gl_s and Heisenberg commutators", beta_dependent=False)
def _affine(cfg, beta):
    return fock.affine_check(cfg.s, min(cfg.degree_bound, 3), [-1, 0, 1], [-2, -1, 0, 1, 2])


@register("daha", "K_ij D_i = D_j K_ij, [D_i, D_j] = beta (D_j - D_i) K_ij", beta_degree=2)
def _daha(cfg, beta):
    rep = CheckReport("daha", True)
    for N in range(2, cfg.N_max + 1):
        r = finite.daha_check(N, cfg.s, cfg.degree_bound, trials=3, seed=cfg.seed, beta=beta)
        _merge(rep, r, N=N)
    return rep


@register("yangian_finite", "mode-form Yangian relation for t_ab,n on Lambda_-", beta_degree=4)
def _yang_fin(cfg, beta):
    rep = CheckReport("yangian_finite", True)
    for N in range(2, min(cfg.N_max, 3) + 1):
        for sign in (1, -1):
            r = finite.yangian_relation_check(N, cfg.s, min(cfg.degree_bound, 2), sign, 1, beta)
            _merge(rep, r, N=N, sign=sign)
    return rep


@register("qdet", "quantum determinant coefficients commute", beta_degree=6)
def _qdet(cfg, beta):
    rep = CheckReport("qdet", True, notes={"N": 2})
    for deg in range(cfg.degree_bound + 1):
        mats, basis = finite.qdet_coeffs(2, cfg.s, 3, -1, deg, beta)
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                rep.cases += 1
                if not finite.mat_is_zero(finite.commutator(mats[i], mats[j])):
                    rep.fail(i=i, j=j, degree=deg)
    return rep


@register("bose_commutativity", "Phi_b(z1) Phi_c(z2) = Phi_c(z2) Phi_b(z1)", beta_dependent=False)
def _bc(cfg, beta):
    return bose.commutativity_check(cfg.s, cfg.degree_bound)


@register("vertex_embedding", "(pi_bar_{N-1} x 1) Phi(z) = iota_N pi_bar_N", beta_dependent=False)
def _l31(cfg, beta):
    return bose.vertex_embedding_check(cfg.s, _Ns(cfg), cfg.degree_bound)


@register("vertex_symmetrization", "E_N (pi_bar_{N-1} x 1) F = pi_bar_N S(F)", beta_dependent=False)
def _l32(cfg, beta):
    return bose.vertex_symmetrization_check(cfg.s, _Ns(cfg), cfg.degree_bound)


@register("bose_dunkl", "(pi_bar_{N-1} x 1) D F = D_1 (pi_bar_{N-1} x 1) F", beta_degree=1)
def _p31(cfg, beta):
    return bose.bose_dunkl_check(cfg.s, _Ns(cfg), cfg.degree_bound, beta)


@register("bose_yangian", "pi_bar_N T_ab,n = t_ab,n pi_bar_N (+ branch)", beta_degree=2)
def _p32(cfg, beta):
    return bose.bose_yangian_check(cfg.s, [0, 1, 2], _Ns(cfg), cfg.degree_bound, beta)


@register("shift_projection", "pi_N(Q v) = omega_N pi_{N+s}(v)", beta_dependent=False)
def _l41(cfg, beta):
    return fermi.shift_projection_check(cfg.s, range(0, min(cfg.N_max, 2) + 1), cfg.degree_bound + 1)


@register("slot_expansion", "pi_{N-1,1}(Psi(z) v) = iota_N pi_N(v)", beta_dependent=False)
def _l43(cfg, beta):
    return fermi.slot_expansion_check(cfg.s, _Ns(cfg), cfg.degree_bound)


@register("antisym_pullback", "A_N pi_{N-1,1}(F v) = pi_N(A(F) v), F = E_ab D^n Psi", beta_degree=2)
def _l44(cfg, beta):
    return fermi.antisym_pullback_check(cfg.s, [0, 1, 2], _Ns(cfg), cfg.degree_bound, beta)


@register("dunkl_pullback", "pi_{N-1,1}(D F v) = D_1 pi_{N-1,1}(F v)", beta_degree=3)
def _p43(cfg, beta):
    return fermi.dunkl_pullback_check(cfg.s, ["", "D", "DD"], _Ns(cfg), cfg.degree_bound, beta)


@register("fermi_yangian", "pi_N T_ab,n = t_ab,n pi_N (- branch)", beta_degree=2)
def _p44(cfg, beta):
    return fermi.fermi_yangian_check(cfg.s, [0, 1, 2], _Ns(cfg), cfg.degree_bound, beta)


@register("three_way", "normal-ordered = recurrent = compositional densities",
          beta_dependent=False)
def _three(cfg, beta):
    return fermi.three_way_check(cfg.s, range(0, min(cfg.N_max, 2) + 1), cfg.degree_bound,
                                 _lib(cfg))


@register("anchor", "s = 1: <N| T^{2,0}_11 |N> = (2N^3 - 3N^2 + N)/6", beta_dependent=False)
def _anchor(cfg, beta):
    return anchor_check(range(0, 6))


@register("stabilization", "compositional T unchanged when the cutoff doubles", beta_degree=2)
def _stab(cfg, beta):
    K0 = cfg.cutoff or cfg.degree_bound + 4
    return fermi.stabilization_check(cfg.s, [1, 2], range(0, min(cfg.N_max, 2) + 1),
                                     cfg.degree_bound, beta, K0)


@register("euler_adQ", "Q A Q^-1 - A closed form and ad_Q^{n+1}(A) = 0 for Euler powers",
          beta_dependent=False)
def _euler(cfg, beta):
    return fermi.euler_closed_form_check(cfg.s, [1, 2, 3], range(0, cfg.N_max + 1),
                                         cfg.degree_bound)


@register("finite_reduction", "finite-variable reduction of [Q, sum of difference parts]",
          beta_dependent=False)
def _f26(cfg, beta):
    return difference_reduction_suite(cfg.s, cfg.seed)


@register("fock_yangian_evidence", "Yangian relations for T_ab,n on Fock components",
          evidence=True, beta_degree=4)
def _p45y(cfg, beta):
    return fermi.yangian_relation_check_fock(cfg.s, range(0, cfg.N_max + 1), cfg.degree_bound,
                                             1, beta)


@register("adq_nilpotency_evidence", "ad_Q^{n+1}(T_ab,n) = 0 on Fock components", evidence=True, beta_degree=2)
def _p45q(cfg, beta):
    pairs = [(a, b) for a in range(1, cfg.s + 1) for b in range(1, cfg.s + 1)]
    return fermi.adQ_nilpotency_check(cfg.s, pairs, [0, 1, 2], range(0, cfg.N_max + 1),
                                      cfg.degree_bound, beta, extra=0)


DEFAULT_SUITES = [name for name in REGISTRY]


def _merge(rep: CheckReport, sub: CheckReport, **params):
    rep.cases += sub.cases
    if not sub.passed:
        rep.passed = False
        for f in sub.failures[:5]:
            rep.failures.append({**params, **f})
    if sub.notes:
        rep.notes.setdefault("parts", []).append({**params, **sub.notes})


def anchor_check(N_values: Sequence[int]) -> CheckReport:
    """Diagonal vacuum matrix elements of T^{2,0}_11 for s = 1 (and T^{0,2}_11 for reference)."""
    rep = CheckReport("anchor", True)
    expected = [Fraction(2 * N ** 3 - 3 * N ** 2 + N, 6) for N in N_values]
    _, t20, _ = fermi.a0_polynomial_fit(1, 1, 2, 1, N_values, piece=(2, 0), degree=3)
    _, t02, _ = fermi.a0_polynomial_fit(1, 1, 2, 1, N_values, piece=(0, 2), degree=3)
    got = [y for _, y in t20]
    rep.cases = len(got)
    rep.notes = {"expected": expected, "T20": got, "T02": [y for _, y in t02]}
    for N, e, g in zip(N_values, expected, got):
        if e != g:
            rep.fail(N=N, expected=e, got=g)
    return rep


def difference_reduction_suite(s: int, seed: int) -> CheckReport:
    rep = CheckReport("finite_reduction", True)
    rng = random.Random(seed)
    links: Dict[str, int] = {}
    for N in (1, 2):
        tried = 0
        while tried < 3:
            f = finite.project_pm(finite.random_spinpoly(N + s, s, 4, rng), -1)
            if not fermi._omega_lenient(f, N):
                continue
            tried += 1
            rep.cases += 1
            res = fermi.difference_reduction_check(f, N)
            for k, ok in res.items():
                links[k] = links.get(k, 0) + (0 if ok else 1)
                if not ok and k != "omega(S4)=N(s+1)*omega(f)":
                    rep.fail(N=N, link=k)
    rep.notes["failures_per_link"] = links
    return rep


# ------------------------------------------------------------ running

def _betas(cfg: SuiteConfig, check: Check):
    if not check.beta_dependent:
        return [None]
    if cfg.beta_mode == "symbolic":
        return [BETA]
    return list(cfg.beta_samples)


def run_check(check: Check, cfg: SuiteConfig) -> dict:
    entry = {"check": check.name, "identity": check.identity, "params": {
        "s": cfg.s, "N_max": cfg.N_max, "degree_bound": cfg.degree_bound}}
    betas = _betas(cfg, check)
    if check.beta_dependent:
        entry["params"]["beta"] = [format_scalar(b) for b in betas]
        # the residual is a Laurent polynomial in beta spanning beta_degree + 1 powers
        entry["beta_degree_bound"] = check.beta_degree
        entry["proof_by_sampling"] = (cfg.beta_mode == "symbolic"
                                      or len(set(betas)) > check.beta_degree)
    start = time.perf_counter()
    total = CheckReport(check.name, True)
    for beta in betas:
        try:
            rep = check.run(cfg, beta)
        except Exception as exc:  # reported, never swallowed silently
            rep = CheckReport(check.name, False, failures=[{"error": repr(exc)}])
        _merge(total, rep, **({"beta": format_scalar(beta)} if beta is not None else {}))
    if check.evidence:
        status = EVIDENCE if total.passed else FAILED
    else:
        status = PROVEN if total.passed else FAILED
    entry.update(status=status, cases=total.cases, failures=total.failures[:20],
                 notes=total.notes)
    if cfg.timing:
        entry["seconds"] = round(time.perf_counter() - start, 3)
    return entry


def run_suite(cfg: SuiteConfig, log: Optional[Callable[[str], None]] = None) -> dict:
    cfg.validate()
    checks = []
    for name in cfg.suites:
        entry = run_check(REGISTRY[name], cfg)
        checks.append(entry)
        if log:
            log(f"{entry['status']:<20} {name}")
    cfg_json = asdict(cfg)
    return {"schema": "spincs-report/1", "seed": cfg.seed, "config": cfg_json, "checks": checks,
            "failed": sum(1 for c in checks if c["status"] == FAILED)}


def to_jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, ParamScalar):
        return format_scalar(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, range)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, (int, str, float, bool)) or x is None:
        return x
    return str(x)


def report_json(report: dict) -> str:
    return json.dumps(to_jsonable(report), indent=2, sort_keys=True)

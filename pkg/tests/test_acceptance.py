"""Acceptance criteria, one test each.

Every test prints a single line ``[PASS]`` or ``[FAIL]`` with the criterion
number, the sizes and the tolerance. All comparisons are exact (tolerance 0,
rational arithmetic); a sampled beta is combined with a symbolic run at the
smallest size where the criterion asks for one.
"""
from fractions import Fraction

from spincs import bose, fermi, finite, fock, harness
from spincs.scalars import BETA

BETA_SAMPLE = Fraction(3, 2)


def verdict(cid, label, ok, detail):
    print(f"\n[{'PASS' if ok else 'FAIL'}] C{cid:02d} {label}: {detail}; tolerance 0 (exact)")
    return ok


def merged(*reports):
    ok = all(r.passed for r in reports)
    cases = sum(r.cases for r in reports)
    failures = [f for r in reports for f in r.failures][:5]
    return ok, cases, failures


def test_c01_fermion_anticommutation():
    rep = fock.anticommutation_check(500, s_max=3, max_degree=6, seed=0)
    assert verdict(1, "fermion anticommutation", rep.passed,
                   f"{rep.cases} random mode pairs x random vectors, s<=3, degree<=6"), rep.failures


def test_c02_affine_and_heisenberg():
    rep = fock.affine_check(2, 4, [-1, 0, 1], [-2, -1, 0, 1, 2])
    assert verdict(2, "affine gl_2 level one and Heisenberg", rep.passed,
                   f"{rep.cases} commutator evaluations, s=2, degree<=4, charges -1..1, "
                   f"modes -2..2"), rep.failures


def test_c03_dunkl_daha_symbolic():
    reps = [finite.daha_check(N, 2, 3, trials=30, seed=N, beta=BETA) for N in (2, 3)]
    ok, cases, failures = merged(*reps)
    assert verdict(3, "degenerate affine Hecke relations", ok,
                   f"{cases} cases, N=2,3, s=2, degree<=3, symbolic beta"), failures


def test_c04_finite_yangian_relation():
    reps = []
    for sign in (1, -1):
        reps.append(finite.yangian_relation_check(2, 2, 3, sign, 1, BETA))
        reps.append(finite.yangian_relation_check(3, 2, 3, sign, 1, BETA_SAMPLE))
        reps.append(finite.yangian_relation_check(3, 2, 3, sign, 1, Fraction(-2, 5)))
    ok, cases, failures = merged(*reps)
    assert verdict(4, "Yangian relation for t_ab,n on N particles", ok,
                   f"{cases} cases, N=2 symbolic, N=3 at beta=3/2 and -2/5, s=2, degree<=3, "
                   f"orders<=2, both symmetry types"), failures


def test_c05_qdet_coefficients_commute():
    cases, bad = 0, []
    for deg in range(4):
        mats, _ = finite.qdet_coeffs(2, 2, 3, -1, deg, BETA)
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                cases += 1
                if not finite.mat_is_zero(finite.commutator(mats[i], mats[j])):
                    bad.append((deg, i, j))
    assert verdict(5, "quantum determinant coefficients commute", not bad,
                   f"{cases} pairs, s=2, N=2, series order<=3, degree 0..3, symbolic beta"), bad


def test_c06_bosonic_identities():
    reps = []
    for s in (1, 2):
        Ns = [1, 2, 3]
        reps += [bose.vertex_embedding_check(s, Ns, 3), bose.vertex_symmetrization_check(s, Ns, 3),
                 bose.bose_dunkl_check(s, Ns, 3, BETA_SAMPLE),
                 bose.bose_yangian_check(s, [0, 1, 2], Ns, 3, BETA_SAMPLE)]
    reps += [bose.bose_dunkl_check(1, [1, 2], 2, BETA), bose.bose_yangian_check(1, [0, 1, 2], [1, 2], 2, BETA)]
    ok, cases, failures = merged(*reps)
    branches = [r.notes["passing_branch"] for r in reps if "passing_branch" in r.notes]
    assert verdict(6, "bosonic vertex-operator identities and Yangian action", ok,
                   f"{cases} cases, N<=3, s<=2, degree<=3 at beta=3/2, symbolic at s=1, N<=2, "
                   f"degree<=2; branch {branches[0]}"), failures


def test_c07_Q_and_projection():
    reps = [fermi.shift_projection_check(s, [0, 1, 2], 4) for s in (1, 2)]
    ok, cases, failures = merged(*reps)
    assert verdict(7, "pi_N(Q v) = omega_N pi_{N+s}(v)", ok,
                   f"{cases} basis states, s<=2, N<=2, degree<=4"), failures


def test_c08_pullback_of_antisymmetrization():
    reps = [fermi.antisym_pullback_check(s, [0, 1, 2], [1, 2, 3], 3, BETA_SAMPLE) for s in (1, 2)]
    reps.append(fermi.antisym_pullback_check(1, [0, 1, 2], [1, 2], 2, BETA))
    ok, cases, failures = merged(*reps)
    assert verdict(8, "A_N pi_{N-1,1}(F v) = pi_N(A(F) v), F = E_ab D^n Psi", ok,
                   f"{cases} cases, n<=2, N<=3, s<=2, degree<=3 at beta=3/2, symbolic at s=1, "
                   f"N<=2, degree<=2"), failures


def test_c09_dunkl_pullback():
    reps = [fermi.dunkl_pullback_check(s, ["", "D", "DD"], [1, 2, 3], 3, BETA_SAMPLE) for s in (1, 2)]
    reps.append(fermi.dunkl_pullback_check(1, ["", "D", "DD"], [1, 2], 2, BETA))
    ok, cases, failures = merged(*reps)
    assert verdict(9, "pi_{N-1,1}(D F v) = D_1 pi_{N-1,1}(F v)", ok,
                   f"{cases} cases, words of length<=2, N<=3, s<=2, degree<=3 at beta=3/2, "
                   f"symbolic at s=1, N<=2, degree<=2"), failures


def test_c10_T_intertwines_pi_N():
    reps = [fermi.fermi_yangian_check(s, [0, 1, 2], [1, 2, 3], 3, BETA_SAMPLE) for s in (1, 2)]
    reps.append(fermi.fermi_yangian_check(1, [0, 1, 2], [1, 2], 2, BETA))
    ok, cases, failures = merged(*reps)
    branch = sorted({b for r in reps for b in r.notes["passing_branch"]})
    other = {k: sum(r.notes["branches"][k] for r in reps) for k in ("+", "-")}
    assert verdict(10, "pi_N T_ab,n = t_ab,n pi_N", ok,
                   f"{cases} cases, n<=2, N<=3, s<=2, degree<=3; passing branch {branch}, "
                   f"mismatches per branch {other}"), failures


def test_c11_three_way_agreement():
    rep = fermi.three_way_check(2, [0, 1, 2], 3)
    tally = {k: (v["NO~REC"], v["NO~COMP"], v["REC~COMP(hole-free)"])
             for k, v in rep.notes["mismatch"].items()}
    assert verdict(11, "normal-ordered = recurrent = compositional densities", rep.passed,
                   f"{rep.cases} cases, s=2, charge 0..2, degree<=3; "
                   f"mismatches (NO~REC, NO~COMP, REC~COMP hole-free) {tally}"), rep.failures[:3]


def test_c12_vacuum_anchor():
    rep = harness.anchor_check(range(6))
    got = [str(x) for x in rep.notes["T20"]]
    ref = [str(x) for x in rep.notes["expected"]]
    t02 = [str(x) for x in rep.notes["T02"]]
    assert verdict(12, "s=1 vacuum value of T^{2,0}_11 = (2N^3-3N^2+N)/6", rep.passed,
                   f"N=0..5 expected {ref}, T^(2,0) gives {got}, T^(0,2) gives {t02}"), rep.failures


def test_c13_fock_yangian_evidence():
    charges = [0, 1, 2, 3]
    yang = fermi.yangian_relation_check_fock(2, charges, 3, 1, BETA_SAMPLE)
    pairs = [(a, b) for a in (1, 2) for b in (1, 2)]
    adq = fermi.adQ_nilpotency_check(2, pairs, [0, 1, 2], charges, 3, BETA_SAMPLE, extra=0)
    ok = yang.passed and adq.passed
    status = harness.EVIDENCE if ok else harness.FAILED
    assert verdict(13, f"Yangian on Fock components and ad_Q nilpotency ({status})", ok,
                   f"s=2, charge 0..3, degree<=3, orders<=2, beta=3/2; Yangian {yang.cases} cases, "
                   f"failing components {yang.notes['failing_components']}; "
                   f"ad_Q^(n+1) nonzero counts {adq.notes['nonzero']} of {adq.notes['states']} states"
                   ), (yang.failures[:2], adq.failures[:2])


def test_c14_cutoff_stabilization():
    reps = [fermi.stabilization_check(2, [0, 1, 2], [0, 1, 2], 3, BETA_SAMPLE)]
    ok, cases, failures = merged(*reps)
    assert verdict(14, "compositional T invariant under cutoff doubling", ok,
                   f"{cases} cases, n<=2, s=2, charge 0..2, degree<=3, K=7 vs 14"), failures

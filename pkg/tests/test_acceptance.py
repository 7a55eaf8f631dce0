"""Acceptance criteria 1-9, one marked group per criterion.

The terminal summary prints one PASS/FAIL line per criterion.
"""

import time

import pytest

from corpus import CORPUS_SEED, all_witnesses, defining_holds, soundness_instance
from geninv.cli import main
from geninv.equations import EquationTag, InverseKind, check_equation, check_membership
from geninv.errors import HypothesisSamplingExhausted
from geninv.ids import TheoremId
from geninv.io import dumps
from geninv.matrix import Matrix
from geninv.sampler import derive_seed, sample_instance
from geninv.suite import EX_A, EX_W, EX_WMP_PRINTED, SuiteConfig, fixture_reports, run_suite
from geninv.systems import PolyStatus, solve_quadratic
from geninv.theorems import Verdict, verify_theorem
from geninv.weighted import WeightPolicy, WeightedProblem, m_weighted_core, n_weighted_dual_core, weighted_mp
from geninv.core import group_inverse


def q(*rows):
    return Matrix([list(r) for r in rows])


def collect(tid, target, cap_factor=4):
    """Verify seeded instances of ``tid`` until ``target`` hit the hypotheses.

    Sizes cycle through 2..5.  Returns (hit reports, tallies).
    """
    tid = TheoremId(tid)
    hits, tally = [], {}
    for i in range(target * cap_factor):
        n = 2 + i % 4
        try:
            inputs = sample_instance(tid, n, derive_seed(CORPUS_SEED, tid.value, n, i))
        except HypothesisSamplingExhausted:
            tally["Exhausted"] = tally.get("Exhausted", 0) + 1
            continue
        rep = verify_theorem(tid, inputs)
        tally[rep.verdict.value] = tally.get(rep.verdict.value, 0) + 1
        if rep.verdict is not Verdict.HYPOTHESIS_NOT_MET:
            hits.append(rep)
            if len(hits) >= target:
                break
    return hits, tally


def mismatches(reports):
    return [(r.instance_digest[:12], [c.name for c in r.failing()]) for r in reports
            if r.verdict is Verdict.FAIL]


# ---------------------------------------------------------------------------
# 1


@pytest.mark.criterion(1)
def test_c1_definition_examples(record_property):
    start = time.perf_counter()
    A, M, X = q([1, 1], [0, 0]), q([1, 1], [0, 1]), q([1, 0], [0, 0])
    assert check_membership(A, X, ["3M", "6", "7"], M=M).holds
    N, Y = q(["1/2", "1/2"], ["3/10", "7/10"]), q(["1/2", "1/2"], ["1/2", "1/2"])
    assert check_membership(A, Y, ["4N", "8", "9"], N=N).holds
    allow = WeightPolicy.ALLOW_NON_HERMITIAN
    assert m_weighted_core(WeightedProblem(A, M=M, policy=allow)).witness == X
    assert n_weighted_dual_core(WeightedProblem(A, N=N, policy=allow)).witness == Y
    elapsed = time.perf_counter() - start
    record_property("seconds", round(elapsed, 3))
    assert elapsed < 1.0


@pytest.mark.criterion(1)
def test_c1_three_by_three_example():
    start = time.perf_counter()
    problem = WeightedProblem(EX_A, M=EX_W, N=EX_W)
    assert group_inverse(EX_A) == EX_A
    assert m_weighted_core(problem, cross_check=True).witness == Matrix.diag(1, 1, 0)
    assert n_weighted_dual_core(problem, cross_check=True).witness == q(
        ["1/2", 0, "1/2"], [0, 1, 0], ["1/2", 0, "1/2"])
    assert time.perf_counter() - start < 1.0


# ---------------------------------------------------------------------------
# 2


@pytest.mark.criterion(2)
def test_c2_printed_weighted_mp_fails_equation_2():
    c = check_equation(EquationTag.P2, EX_A, EX_WMP_PRINTED)
    assert not c.holds
    assert c.residual == q([0, 0, "-1/2"], [0, 0, 0], [0, 0, "1/2"])


@pytest.mark.criterion(2)
def test_c2_recomputed_weighted_mp_is_exact():
    X = weighted_mp(WeightedProblem(EX_A, M=EX_W, N=EX_W), cross_check=True).witness
    assert check_membership(EX_A, X, ["1", "2", "3M", "4N"], M=EX_W, N=EX_W).holds
    assert X != EX_WMP_PRINTED


@pytest.mark.criterion(2)
def test_c2_suite_report_notes_the_discrepancy():
    fx = {f["name"]: f for f in fixture_reports()}
    entry = fx["3x3 example: weighted Moore-Penrose"]
    assert entry["verdict"] == Verdict.INTERPRETATION_NOTE.value
    assert "2" in entry["detail"]
    report = run_suite(SuiteConfig(theorems=["L3_8"], sizes=(2, 2), samples_per_size=1))
    assert entry in report["fixtures"]
    assert all(f["verdict"] != "Fail" for f in report["fixtures"])


# ---------------------------------------------------------------------------
# 3


@pytest.mark.criterion(3)
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_c3_definition_soundness(n, record_property):
    failures, exists = [], {}
    ranks = set()
    for i in range(200):
        A, M, N, W = soundness_instance(n, i)
        from geninv.matrix import rank
        ranks.add(rank(A))
        for kind, X in all_witnesses(A, M, N, W).items():
            if X is None:
                continue
            exists[kind.value] = exists.get(kind.value, 0) + 1
            bad = defining_holds(kind, A, X, M, N, W)
            if bad:
                failures.append((i, kind.value, bad))
    record_property("exists", exists)
    assert ranks == set(range(n + 1))
    assert failures == []


# ---------------------------------------------------------------------------
# 4


@pytest.mark.criterion(4)
@pytest.mark.parametrize("n", [2, 3])
def test_c4_uniqueness_by_affine_parametrization(n, record_property):
    failures, tally = [], {}
    for i in range(200):
        A, M, N, W = soundness_instance(n, i)
        w = all_witnesses(A, M, N, W)
        for kind, lin, nonlin, kw in ((InverseKind.M_CORE, ["3M", "6"], ["7"], {"M": M}),
                                      (InverseKind.N_DUAL_CORE, ["4N", "8"], ["9"], {"N": N})):
            sol = solve_quadratic(A, lin, nonlin, **kw)
            key = "%s:%s" % (kind.value, sol.status.value)
            tally[key] = tally.get(key, 0) + 1
            X = w[kind]
            if X is None:
                ok = sol.status is PolyStatus.EMPTY
            else:
                ok = sol.status is PolyStatus.UNIQUE and sol.witnesses[0] == X
            if not ok:
                failures.append((i, kind.value, sol.status.value))
    record_property("solver", tally)
    assert failures == []


# ---------------------------------------------------------------------------
# 5


@pytest.mark.criterion(5)
@pytest.mark.parametrize("tid", ["T3_7", "T3_9", "T3_13", "T3_17", "T3_18", "T3_19"])
def test_c5_characterizations(tid, record_property):
    hits, tally = collect(tid, 500)
    record_property("verdicts", tally)
    assert len(hits) >= 500
    assert mismatches(hits) == []


# ---------------------------------------------------------------------------
# 6


@pytest.mark.criterion(6)
@pytest.mark.parametrize("tid", ["T3_14", "T3_15", "T3_16cor"])
def test_c6_identity_families(tid, record_property):
    hits, tally = collect(tid, 200)
    record_property("verdicts", tally)
    assert len(hits) >= 200
    assert mismatches(hits) == []
    if tid != "T3_16cor":
        names = {c.name for c in hits[0].clauses}
        pattern = "(d) (A^%d)^{core,M} = X^%d" if tid == "T3_14" else "(d) (A^%d)^{N,dual} = Y^%d"
        assert {pattern % (p, p) for p in range(1, 5)} <= names


# ---------------------------------------------------------------------------
# 7


@pytest.mark.criterion(7)
@pytest.mark.parametrize("tid", ["ROL4_4", "ROL4_5"])
def test_c7_constructive_reverse_order_laws(tid, record_property):
    hits, tally = collect(tid, 200, cap_factor=1)
    record_property("verdicts", tally)
    assert len(hits) == 200
    assert mismatches(hits) == []


@pytest.mark.criterion(7)
@pytest.mark.parametrize("tid", ["ROL4_1", "ROL4_2", "ROL4_6", "ROL4_7"])
def test_c7_reverse_order_laws_with_statistics(tid, record_property):
    hits, tally = collect(tid, 200, cap_factor=1)
    record_property("verdicts", tally)
    print("%s hit rate %d/200 %s" % (tid, len(hits), tally))
    assert hits
    assert mismatches(hits) == []


@pytest.mark.criterion(7)
def test_c7_rol4_3_necessary_conditions(record_property):
    hits, tally = collect("ROL4_3", 200, cap_factor=1)
    record_property("verdicts", tally)
    assert hits
    assert mismatches(hits) == []


# ---------------------------------------------------------------------------
# 8


@pytest.mark.criterion(8)
@pytest.mark.parametrize("tid", ["L3_8", "P3_2", "P3_5", "P3_11", "P3_12"])
def test_c8_duality_and_implications(tid, record_property):
    hits, tally = collect(tid, 200)
    record_property("verdicts", tally)
    assert len(hits) >= 200
    assert mismatches(hits) == []
    assert all(r.verdict is Verdict.PASS for r in hits)


# ---------------------------------------------------------------------------
# 9


@pytest.mark.criterion(9)
def test_c9_reports_identical_across_worker_counts():
    base = dict(theorems=["T3_7", "T3_18", "ROL4_4", "P3_11"], sizes=(2, 4), samples_per_size=6, seed=11)
    one = dumps(run_suite(SuiteConfig(jobs=1, **base)))
    two = dumps(run_suite(SuiteConfig(jobs=2, **base)))
    assert one == two


@pytest.mark.criterion(9)
def test_c9_cli_reports_identical(tmp_path, monkeypatch):
    monkeypatch.delenv("GENINV_SEED", raising=False)
    paths = []
    for jobs in (1, 3):
        p = tmp_path / ("r%d.json" % jobs)
        main(["suite", "--theorems", "T3_9,ROL4_5,L3_8", "--sizes", "2..3", "--samples", "5",
              "--seed", "5", "--jobs", str(jobs), "--report", str(p)])
        paths.append(p)
    assert paths[0].read_bytes() == paths[1].read_bytes()

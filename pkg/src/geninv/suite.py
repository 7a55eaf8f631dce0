"""Theorem suites over fixed fixtures and seeded random corpora.

Reports are plain JSON-ready dicts.  Nothing in them depends on scheduling:
instances are keyed by (theorem, size, sample) seeds and merged sorted by
theorem, then instance digest, so any worker count gives the same bytes.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .equations import check_membership
from .errors import HypothesisSamplingExhausted, InvalidSpec
from .ids import TheoremId, parse_theorem
from .matrix import Matrix, rank
from .sampler import derive_seed, sample_instance
from .theorems import Verdict, verify_theorem
from .weighted import WeightPolicy, WeightedProblem, m_weighted_core, n_weighted_dual_core, weighted_mp
from .core import group_inverse

SCHEMA_VERSION = 1
SEED_ENV = "GENINV_SEED"


@dataclass
class SuiteConfig:
    theorems: List[TheoremId]
    sizes: Tuple[int, int] = (2, 4)
    samples_per_size: int = 10
    seed: int = 0
    mode: str = "exact"
    tolerance: Optional[float] = None
    weight_policy: WeightPolicy = WeightPolicy.REQUIRE_HERMITIAN
    report_path: Optional[str] = None
    jobs: int = 1
    fixtures: bool = True

    def validate(self):
        if not self.theorems:
            raise InvalidSpec("no theorems selected")
        self.theorems = [parse_theorem(t) for t in self.theorems]
        lo, hi = self.sizes
        if not 1 <= lo <= hi:
            raise InvalidSpec("sizes must satisfy 1 <= lo <= hi")
        if self.samples_per_size < 1:
            raise InvalidSpec("samplesPerSize must be at least 1")
        if self.mode not in ("exact", "float"):
            raise InvalidSpec("mode must be exact or float")
        if self.mode == "exact" and self.tolerance is not None:
            raise InvalidSpec("exact mode takes no tolerance")
        if self.jobs < 1:
            raise InvalidSpec("jobs must be at least 1")
        return self

    def with_env(self, environ=None):
        environ = os.environ if environ is None else environ
        if environ.get(SEED_ENV):
            try:
                self.seed = int(environ[SEED_ENV], 0)
            except ValueError as exc:
                raise InvalidSpec("%s is not an integer" % SEED_ENV) from exc
        return self

    @classmethod
    def from_dict(cls, d):
        try:
            sizes = d.get("sizes", [2, 4])
            if isinstance(sizes, str):
                lo, _, hi = sizes.partition("..")
                sizes = (int(lo), int(hi or lo))
            return cls(
                theorems=list(d.get("theorems", [])),
                sizes=(int(sizes[0]), int(sizes[1])),
                samples_per_size=int(d.get("samplesPerSize", 10)),
                seed=int(d.get("seed", 0)),
                mode=str(d.get("mode", "exact")).lower(),
                tolerance=d.get("tolerance"),
                weight_policy=WeightPolicy(d.get("weightPolicy", "RequireHermitian")),
                report_path=d.get("reportPath"),
                jobs=int(d.get("jobs", 1)),
                fixtures=bool(d.get("fixtures", True)),
            )
        except (TypeError, ValueError, IndexError) as exc:
            raise InvalidSpec("bad suite config: %s" % exc) from exc

    def echo(self):
        """Config fields that determine the report (no paths, no worker count)."""
        return {
            "theorems": [t.value for t in self.theorems],
            "sizes": list(self.sizes),
            "samplesPerSize": self.samples_per_size,
            "seed": self.seed,
            "mode": self.mode,
            "tolerance": self.tolerance,
            "weightPolicy": self.weight_policy.value,
        }


# ---------------------------------------------------------------------------
# fixtures


def _q(*rows):
    return Matrix([list(r) for r in rows])


EX_A = _q([1, 0, 1], [0, 1, 0], [0, 0, 0])
EX_W = Matrix.diag(1, 2, 1)
EX_WMP_PRINTED = _q(["0.5", 0, 1], [0, 1, 0], ["0.5", 0, 0])


def _fixture(name, verdict, detail, **extra):
    d = {"name": name, "verdict": verdict.value, "detail": detail}
    d.update(extra)
    return d


def fixture_reports():
    out = []
    allow = WeightPolicy.ALLOW_NON_HERMITIAN
    # definition examples with non-Hermitian weights: raw equations only
    A1, M1, X1 = _q([1, 1], [0, 0]), _q([1, 1], [0, 1]), _q([1, 0], [0, 0])
    ok = check_membership(A1, X1, ["3M", "6", "7"], M=M1).holds
    got = m_weighted_core(WeightedProblem(A1, M=M1, policy=allow)).witness
    out.append(_fixture("M-weighted core example", Verdict.PASS if ok and got == X1 else Verdict.FAIL,
                        "printed X satisfies 3^M, 6, 7; weight is not Hermitian so theorem claims are not applied"))
    N1, Y1 = _q(["0.5", "0.5"], ["0.3", "0.7"]), _q(["0.5", "0.5"], ["0.5", "0.5"])
    ok = check_membership(A1, Y1, ["4N", "8", "9"], N=N1).holds
    got = n_weighted_dual_core(WeightedProblem(A1, N=N1, policy=allow)).witness
    out.append(_fixture("N-weighted dual core example", Verdict.PASS if ok and got == Y1 else Verdict.FAIL,
                        "printed X satisfies 4^N, 8, 9; weight is not Hermitian so theorem claims are not applied"))
    # 3x3 example
    problem = WeightedProblem(EX_A, M=EX_W, N=EX_W)
    checks = [
        ("group inverse", group_inverse(EX_A), EX_A),
        ("M-weighted core", m_weighted_core(problem, cross_check=True).witness, Matrix.diag(1, 1, 0)),
        ("N-weighted dual core", n_weighted_dual_core(problem, cross_check=True).witness,
         _q(["1/2", 0, "1/2"], [0, 1, 0], ["1/2", 0, "1/2"])),
    ]
    for what, got, want in checks:
        out.append(_fixture("3x3 example: %s" % what, Verdict.PASS if got == want else Verdict.FAIL,
                            "matches the printed value" if got == want else "differs from the printed value",
                            value=None if got is None else got.to_pairs()))
    printed = check_membership(EX_A, EX_WMP_PRINTED, ["1", "2", "3M", "4N"], M=EX_W, N=EX_W)
    true_x = weighted_mp(problem, cross_check=True).witness
    true_ok = check_membership(EX_A, true_x, ["1", "2", "3M", "4N"], M=EX_W, N=EX_W).holds
    bad = [c.tag.value for c in printed.failing()]
    note = Verdict.INTERPRETATION_NOTE if (not printed.holds and true_ok) else Verdict.FAIL
    out.append(_fixture(
        "3x3 example: weighted Moore-Penrose", note,
        "printed matrix violates equation(s) %s; recomputed value satisfies 1, 2, 3^M, 4^N" % ", ".join(bad),
        printed=EX_WMP_PRINTED.to_pairs(), value=true_x.to_pairs()))
    return out


# ---------------------------------------------------------------------------
# random corpus


def _task_seed(base, tid, n, i):
    return derive_seed(base, tid.value, n, i)


def run_instance(task):
    """Worker: (theorem, n, i, base seed, mode, tolerance) -> result dict."""
    tid_s, n, i, base, mode, tol = task
    tid = TheoremId(tid_s)
    seed = _task_seed(base, tid, n, i)
    rec = {"theorem": tid_s, "n": n, "sample": i, "seed": seed}
    try:
        inputs = sample_instance(tid, n, seed)
    except HypothesisSamplingExhausted as exc:
        rec.update(verdict="Exhausted", digest="", detail=str(exc))
        return rec
    rep = verify_theorem(tid, inputs, mode=mode, tolerance=tol)
    rec.update(verdict=rep.verdict.value, digest=rep.instance_digest, rank=rank(inputs["A"]),
               notes=rep.notes)
    if rep.verdict in (Verdict.FAIL, Verdict.INTERPRETATION_NOTE):
        rec["inputs"] = {k: v.to_pairs() for k, v in sorted(inputs.items())}
        rec["clauses"] = [c.to_dict() for c in rep.clauses
                          if not c.holds and c.role in ("equivalent", "conclusion", "as-printed")]
    return rec


def _summarize(tid, recs):
    recs = sorted(recs, key=lambda r: (r["digest"], r["n"], r["sample"]))
    count = lambda v: sum(1 for r in recs if r["verdict"] == v)
    ranks = {}
    for r in recs:
        if "rank" in r:
            key = "n=%d,r=%d" % (r["n"], r["rank"])
            ranks[key] = ranks.get(key, 0) + 1
    notes = sorted({x for r in recs for x in r.get("notes", [])})
    hits = [r for r in recs if r["verdict"] in ("Pass", "Fail", "InterpretationNote")]
    return {
        "theorem": tid.value,
        "instances": len(recs),
        "hypothesisHit": len(hits),
        "exhausted": count("Exhausted"),
        "passes": count("Pass"),
        "interpretationNotes": count("InterpretationNote"),
        "failCount": count("Fail"),
        "fails": [{k: r[k] for k in ("seed", "n", "sample", "digest", "inputs", "clauses")}
                  for r in recs if r["verdict"] == "Fail"],
        "noteInstances": [{k: r[k] for k in ("seed", "n", "sample", "digest", "clauses")}
                          for r in recs if r["verdict"] == "InterpretationNote"][:5],
        "notes": notes,
        "rankCoverage": dict(sorted(ranks.items())),
        "instanceVerdicts": [[r["digest"], r["verdict"]] for r in recs],
    }


def run_suite(config: SuiteConfig) -> dict:
    config.validate()
    lo, hi = config.sizes
    tasks = [(t.value, n, i, config.seed, config.mode, config.tolerance)
             for t in config.theorems for n in range(lo, hi + 1) for i in range(config.samples_per_size)]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(run_instance, tasks, chunksize=4))
    else:
        results = [run_instance(t) for t in tasks]
    by_thm = {t: [] for t in config.theorems}
    for r in results:
        by_thm[TheoremId(r["theorem"])].append(r)
    theorems = [_summarize(t, by_thm[t]) for t in sorted(by_thm, key=lambda t: t.value)]
    fixtures = fixture_reports() if config.fixtures else []
    fails = sum(t["failCount"] for t in theorems) + sum(1 for f in fixtures if f["verdict"] == "Fail")
    return {
        "schemaVersion": SCHEMA_VERSION,
        "config": config.echo(),
        "fixtures": fixtures,
        "theorems": theorems,
        "totals": {
            "instances": sum(t["instances"] for t in theorems),
            "hypothesisHit": sum(t["hypothesisHit"] for t in theorems),
            "fails": fails,
        },
    }


def exit_code(report) -> int:
    return 0 if report["totals"]["fails"] == 0 else 1

"""Reproducible verification suites.

Randomised suites derive the seed of instance ``i`` from the master seed
as ``master XOR splitmix64(i)`` (64-bit), so any failure can be replayed
from its recorded instance seed alone.  Instances may be spread over
worker processes; results are merged by instance index, so the report
does not depend on ``jobs``.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from ..digraph import Digraph, converse, is_strong, to_edge_list, validate_path
from ..engine import (
    PRNG_ID,
    GenerationFailure,
    find_violation,
    generate_frame_instance,
    is_k_quasi_transitive,
    iter_digraph_rows,
    make_rng,
    mirror_frame_instance,
)
from ..errors import UsageError
from ..structure import (
    BIPARTITE,
    FN,
    SEMICOMPLETE,
    classify_all,
    classify_induced,
    semicomplete_backpath,
    semicomplete_trigger,
)

MASK64 = (1 << 64) - 1


def splitmix64(i: int) -> int:
    """The SplitMix64 output function applied to ``i * golden gamma``."""
    z = ((i + 1) * 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def instance_seed(master: int, i: int) -> int:
    return (master ^ splitmix64(i)) & MASK64


@dataclass
class FailureRecord:
    index: int
    seed: int | None
    check: str
    witness: str = ""
    digraph: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"index": self.index, "seed": self.seed, "check": self.check, "witness": self.witness, "digraph": self.digraph}


@dataclass
class SuiteReport:
    """Outcome of one suite run.  ``seconds`` is the only non-deterministic field."""

    suite: str
    params: dict[str, Any]
    master_seed: int | None
    attempted: int = 0
    valid: int = 0
    passed: int = 0
    failures: list[FailureRecord] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)
    seconds: float = 0.0
    prng: str = PRNG_ID

    @property
    def ok(self) -> bool:
        return not self.failures and self.passed == self.valid and not self.counts.get("shortfall")

    def summary(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "params": self.params,
            "master_seed": self.master_seed,
            "prng": self.prng,
            "attempted": self.attempted,
            "valid": self.valid,
            "passed": self.passed,
            "failed": len(self.failures),
            "counts": dict(sorted(self.counts.items())),
            "status": "PASS" if self.ok else "FAIL",
        }

    def text(self, timing: bool = True) -> str:
        lines = [
            f"suite: {self.suite}",
            "params: " + " ".join(f"{k}={v}" for k, v in self.params.items()),
            f"master seed: {self.master_seed}",
            f"prng: {self.prng}",
            f"attempted: {self.attempted}",
            f"valid: {self.valid}",
            f"passed: {self.passed}",
        ]
        lines += [f"count {k}: {v}" for k, v in sorted(self.counts.items())]
        for f in self.failures:
            lines.append(f"FAILURE index={f.index} seed={f.seed} check={f.check} witness={f.witness}")
        lines.append(f"status: {'PASS' if self.ok else 'FAIL'}")
        if timing:
            lines.append(f"seconds: {self.seconds:.2f}")
        return "\n".join(lines) + "\n"

    def json_lines(self, timing: bool = True) -> str:
        head = self.summary()
        if timing:
            head["seconds"] = round(self.seconds, 3)
        records = [json.dumps(head, sort_keys=True)]
        records += [json.dumps({"failure": f.to_dict()}, sort_keys=True) for f in self.failures]
        return "\n".join(records) + "\n"


def _run_indexed(work: Callable[[Any], dict], items: Sequence[Any], jobs: int) -> list[dict]:
    if jobs <= 1 or len(items) <= 1:
        return [work(item) for item in items]
    chunk = max(1, len(items) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(work, items, chunksize=chunk))


def _merge(report: SuiteReport, results: Iterable[dict]) -> None:
    counts: Counter[str] = Counter()
    for res in results:
        report.attempted += 1
        counts.update(res.get("counts", {}))
        if not res["valid"]:
            continue
        report.valid += 1
        if res["failures"]:
            report.failures.extend(FailureRecord(**f) for f in res["failures"])
        else:
            report.passed += 1
    report.counts = dict(counts)


# -- theorem3 suite --------------------------------------------------------------------

RANDOM_DENSITIES = (0.1, 0.15, 0.2, 0.3)
CLONE_DENSITIES = (0.0, 0.1, 0.3)


@dataclass(frozen=True)
class InstanceRecipe:
    """Everything needed to rebuild one theorem3-suite instance."""

    k: int
    n: int
    outside: str
    density: float
    mirror: bool
    gen_seed: int

    def build(self) -> Digraph:
        g = generate_frame_instance(self.k, self.n - self.k - 3, self.density, self.gen_seed, self.outside)
        return mirror_frame_instance(g, self.k) if self.mirror else g


def theorem3_recipe(k: int, n_range: tuple[int, int], seed: int) -> InstanceRecipe:
    """Corpus recipe for one instance seed: half clone-mode, half random-mode, half mirrored."""
    rng = make_rng(seed)
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    if rng.random() < 0.5:
        outside, density = "clone", CLONE_DENSITIES[int(rng.integers(len(CLONE_DENSITIES)))]
    else:
        outside, density = "random", RANDOM_DENSITIES[int(rng.integers(len(RANDOM_DENSITIES)))]
    mirror = bool(rng.random() < 0.5)
    gen_seed = int(rng.integers(0, 1 << 63))
    return InstanceRecipe(k, n, outside, density, mirror, gen_seed)


def check_theorem3_instance(d: Digraph, k: int) -> tuple[list[tuple[str, str]], Counter]:
    """All structural checks on one valid instance: ``(failed checks, tallies)``."""
    failures: list[tuple[str, str]] = []
    counts: Counter[str] = Counter()
    c = classify_all(d, k, witnesses=True)
    for report in c.reports:
        for check in report.failures():
            failures.append((check.name, check.witness or ""))
    counts[f"frame={c.frame_class.kind}"] += 1
    if c.outside_class is not None:
        counts[f"outside={c.outside_class.kind}"] += 1
    if c.partition is not None:
        for cell, size in c.partition.sizes().items():
            if size:
                counts[f"{c.frame_class.kind}:cell {cell} nonempty"] += 1
    trigger = semicomplete_trigger(d, c.frame)
    if trigger is not None:
        counts["lemma4 triggers"] += 1
        x = c.frame.x
        missing = next(
            (f"{x(s)}->{x(t)}" for s in range(2, c.frame.top + 1) for t in range(s - 1) if not d.has_arc(x(s), x(t))),
            None,
        )
        if missing is not None:
            failures.append(("lemma4:all-backward-arcs", missing))
    return failures, counts


def _theorem3_work(item: tuple[int, int, tuple[int, int], int]) -> dict:
    index, k, n_range, seed = item
    recipe = theorem3_recipe(k, n_range, seed)
    try:
        d = recipe.build()
    except GenerationFailure as exc:
        return {"valid": False, "failures": [], "counts": {f"generation failed: {exc.requirement}": 1}}
    failed, counts = check_theorem3_instance(d, k)
    counts[f"mode={recipe.outside}{'+mirror' if recipe.mirror else ''}"] += 1
    records = [
        {"index": index, "seed": seed, "check": name, "witness": witness, "digraph": to_edge_list(d)}
        for name, witness in failed
    ]
    return {"valid": True, "failures": records, "counts": dict(counts)}


# give up once this many candidates per requested instance have been tried
THEOREM3_MAX_ATTEMPTS_PER_INSTANCE = 10


def run_theorem3_suite(
    k: int, instances: int, n_range: tuple[int, int], seed: int, jobs: int = 1
) -> SuiteReport:
    """Check ``instances`` valid corpus instances.

    Candidate ``i`` is built from ``instance_seed(seed, i)``; candidates
    failing generation are counted and skipped, and drawing stops at the
    ``instances``-th valid one.  If too many candidates fail the report
    records ``instances - valid`` shortfall and is not ``ok``.
    """
    if k not in (5, 7):
        raise UsageError(f"the theorem3 suite runs for k in {{5, 7}}, got {k}")
    lo, hi = n_range
    if lo < k + 3 or hi < lo:
        raise UsageError(f"need k+3 <= n_min <= n_max, got {n_range}")
    if instances < 0:
        raise UsageError("instances must be non-negative")
    start = time.perf_counter()
    report = SuiteReport("theorem3", {"k": k, "instances": instances, "n_min": lo, "n_max": hi}, seed)
    limit = instances * THEOREM3_MAX_ATTEMPTS_PER_INSTANCE
    results: list[dict] = []
    valid = 0
    nxt = 0
    while valid < instances and nxt < limit:
        # batch size depends only on how many are still missing, so the
        # merged result does not depend on jobs
        batch = min(limit - nxt, (instances - valid) + (instances - valid) // 8 + 4)
        items = [(i, k, (lo, hi), instance_seed(seed, i)) for i in range(nxt, nxt + batch)]
        nxt += batch
        for res in _run_indexed(_theorem3_work, items, jobs):
            if valid == instances:
                break
            results.append(res)
            valid += res["valid"]
    _merge(report, results)
    if valid < instances:
        report.counts["shortfall"] = instances - valid
    report.seconds = time.perf_counter() - start
    return report


# -- theorem2 scan ---------------------------------------------------------------------

THEOREM2_CLASSES = (SEMICOMPLETE, BIPARTITE, FN)
THEOREM2_CHUNKS = 64


def _theorem2_work(item: tuple[int, int, int]) -> dict:
    n, lo, hi = item
    counts: Counter[str] = Counter()
    failures = []
    scanned = 0
    for mask, rows in enumerate(iter_digraph_rows(n, lo, hi), start=lo):
        scanned += 1
        d = Digraph.from_rows(rows)
        if not is_strong(d) or find_violation(d, 3) is not None:
            continue
        counts["strong 3-qt"] += 1
        verdict = classify_induced(d, range(n))
        counts[f"verdict={verdict.kind}"] += 1
        if verdict.kind not in THEOREM2_CLASSES:
            failures.append({"index": mask, "seed": None, "check": "theorem2:class", "witness": str(verdict),
                             "digraph": to_edge_list(d)})
    counts["digraphs scanned"] = scanned
    return {"counts": dict(counts), "failures": failures}


def run_theorem2_scan(n: int, jobs: int = 1) -> SuiteReport:
    """Classify every strong 3-quasi-transitive digraph on ``n`` labelled vertices.

    A failure's ``index`` is the arc bitmask of the offending digraph (see
    :func:`~kqt.engine.enumerate_all_digraphs`).
    """
    if not isinstance(n, int) or not 3 <= n <= 5:
        raise UsageError(f"the theorem2 scan covers 3 <= n <= 5, got {n!r}")
    start = time.perf_counter()
    report = SuiteReport("theorem2", {"n": n}, None)
    total = 1 << (n * (n - 1))
    step = max(1, total // THEOREM2_CHUNKS)
    items = [(n, lo, min(lo + step, total)) for lo in range(0, total, step)]
    counts: Counter[str] = Counter()
    for res in _run_indexed(_theorem2_work, items, jobs):
        counts.update(res["counts"])
        report.failures.extend(FailureRecord(**f) for f in res["failures"])
    report.attempted = counts.pop("digraphs scanned", 0)
    report.valid = counts["strong 3-qt"]
    report.passed = report.valid - len(report.failures)
    report.counts = dict(counts)
    report.seconds = time.perf_counter() - start
    return report


# -- converse suite --------------------------------------------------------------------

CONVERSE_N_RANGE = (2, 10)
CONVERSE_DENSITIES = (0.2, 0.35, 0.5)


def random_digraph(seed: int, n_range: tuple[int, int] = CONVERSE_N_RANGE) -> Digraph:
    """Random digraph: order uniform in ``n_range``, each ordered pair present with a drawn density."""
    rng = make_rng(seed)
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    density = CONVERSE_DENSITIES[int(rng.integers(len(CONVERSE_DENSITIES)))]
    arcs = [(a, b) for a in range(n) for b in range(n) if a != b and rng.random() < density]
    return Digraph(n, arcs)


def _converse_check(index: int, seed: int | None, d: Digraph, k: int) -> dict:
    forward = is_k_quasi_transitive(d, k)
    backward = is_k_quasi_transitive(converse(d), k)
    counts = {"k-qt": int(forward)}
    if forward == backward:
        return {"valid": True, "failures": [], "counts": counts}
    record = {"index": index, "seed": seed, "check": "remark1:converse", "witness": f"D={forward},converse={backward}",
              "digraph": to_edge_list(d)}
    return {"valid": True, "failures": [record], "counts": counts}


def _converse_work(item: tuple[int, int, int]) -> dict:
    index, k, seed = item
    return _converse_check(index, seed, random_digraph(seed), k)


def run_converse_suite(k: int, trials: int, seed: int, jobs: int = 1, exhaustive_n: int | None = None) -> SuiteReport:
    """k-quasi-transitivity is invariant under reversing every arc.

    With ``exhaustive_n`` set, every digraph on at most that many vertices
    is checked instead of ``trials`` random ones.
    """
    if not isinstance(k, int) or k < 2:
        raise UsageError(f"k must be an integer >= 2, got {k!r}")
    start = time.perf_counter()
    if exhaustive_n is not None:
        if not 1 <= exhaustive_n <= 4:
            raise UsageError("exhaustive converse checks cover n <= 4")
        report = SuiteReport("converse", {"k": k, "exhaustive_n": exhaustive_n}, None)
        results = []
        index = 0
        for n in range(1, exhaustive_n + 1):
            for rows in iter_digraph_rows(n):
                results.append(_converse_check(index, None, Digraph.from_rows(rows), k))
                index += 1
    else:
        if trials < 0:
            raise UsageError("trials must be non-negative")
        report = SuiteReport("converse", {"k": k, "trials": trials}, seed)
        items = [(i, k, instance_seed(seed, i)) for i in range(trials)]
        results = _run_indexed(_converse_work, items, jobs)
    _merge(report, results)
    report.seconds = time.perf_counter() - start
    return report


# -- lemma6 suite ----------------------------------------------------------------------


def semicomplete_path_instance(n: int, seed: int) -> Digraph:
    """Path ``0 -> ... -> n`` plus every backward skip arc, other pairs oriented at random.

    Every non-consecutive pair ``a < b`` gets ``b -> a``; with probability
    1/2 the consecutive pair ``(a, a+1)`` also gets ``a+1 -> a``.  No arc
    jumps forward by two or more, so ``d(0, n) = n``.
    """
    rng = make_rng(seed)
    arcs = [(a, a + 1) for a in range(n)]
    arcs += [(b, a) for a in range(n + 1) for b in range(a + 2, n + 1)]
    arcs += [(a + 1, a) for a in range(n) if rng.random() < 0.5]
    return Digraph(n + 1, arcs)


def _lemma6_work(item: tuple[int, tuple[int, int], int]) -> dict:
    index, n_range, seed = item
    rng = make_rng(seed)
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    d = semicomplete_path_instance(n, int(rng.integers(0, 1 << 63)))
    path_q = tuple(range(n + 1))
    failures = []
    triples = 0
    for j in range(1, n + 1):
        for i in range(j):
            for p in range(2, n):
                triples += 1
                try:
                    path = semicomplete_backpath(d, path_q, j, i, p)
                except Exception as exc:  # structural violations and usage errors alike
                    failures.append((f"j={j},i={i},p={p}", str(exc)))
                    continue
                if not (validate_path(d, path) and len(path) == p + 1 and path[0] == j and path[-1] == i):
                    failures.append((f"j={j},i={i},p={p}", " ".join(map(str, path))))
    records = [
        {"index": index, "seed": seed, "check": f"lemma6:{where}", "witness": what, "digraph": to_edge_list(d)}
        for where, what in failures
    ]
    return {"valid": True, "failures": records, "counts": {"triples": triples, f"n={n}": 1}}


def run_lemma6_suite(n_range: tuple[int, int], seed: int, trials: int, jobs: int = 1) -> SuiteReport:
    """Semicomplete back-paths for every ``(j, i, p)`` on random semicomplete shortest-path instances."""
    lo, hi = n_range
    if lo < 4 or hi < lo:
        raise UsageError(f"need 4 <= n_min <= n_max, got {n_range}")
    if trials < 0:
        raise UsageError("trials must be non-negative")
    start = time.perf_counter()
    report = SuiteReport("lemma6", {"n_min": lo, "n_max": hi, "trials": trials}, seed)
    items = [(i, (lo, hi), instance_seed(seed, i)) for i in range(trials)]
    _merge(report, _run_indexed(_lemma6_work, items, jobs))
    report.seconds = time.perf_counter() - start
    return report


# -- oracle equivalence ----------------------------------------------------------------


def _oracle_check(index: int, seed: int | None, d: Digraph, k: int) -> dict:
    from .oracles import oracle_is_kqt

    fast = is_k_quasi_transitive(d, k)
    slow = oracle_is_kqt(d, k)
    counts = {"k-qt": int(fast)}
    if fast == slow:
        return {"valid": True, "failures": [], "counts": counts}
    record = {"index": index, "seed": seed, "check": "oracle:k-qt", "witness": f"engine={fast},oracle={slow}",
              "digraph": to_edge_list(d)}
    return {"valid": True, "failures": [record], "counts": counts}


def _oracle_work(item: tuple[int, int, int]) -> dict:
    index, k, seed = item
    return _oracle_check(index, seed, random_digraph(seed), k)


def run_oracle_suite(k: int, trials: int, seed: int, jobs: int = 1, exhaustive_n: int | None = None) -> SuiteReport:
    """Fast k-qt decision against the recursive oracle, exhaustively or on random digraphs."""
    if not isinstance(k, int) or k < 2:
        raise UsageError(f"k must be an integer >= 2, got {k!r}")
    start = time.perf_counter()
    if exhaustive_n is not None:
        report = SuiteReport("oracle", {"k": k, "exhaustive_n": exhaustive_n}, None)
        results = [
            _oracle_check(i, None, Digraph.from_rows(rows), k) for i, rows in enumerate(iter_digraph_rows(exhaustive_n))
        ]
    else:
        report = SuiteReport("oracle", {"k": k, "trials": trials}, seed)
        items = [(i, k, instance_seed(seed, i)) for i in range(trials)]
        results = _run_indexed(_oracle_work, items, jobs)
    _merge(report, results)
    report.seconds = time.perf_counter() - start
    return report

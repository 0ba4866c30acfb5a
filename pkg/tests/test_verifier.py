import itertools
import json

import pytest

import naive
from kqt import Digraph, UsageError, enumerate_all_digraphs, from_edge_list, is_k_quasi_transitive
from kqt.structure import OTHER, classify_induced, fn_arcs
from kqt.verifier import (
    instance_seed,
    oracle_classify,
    oracle_is_kqt,
    random_digraph,
    run_converse_suite,
    run_lemma6_suite,
    run_oracle_suite,
    run_theorem2_scan,
    run_theorem3_suite,
    splitmix64,
    theorem3_recipe,
)


class TestOracles:
    @pytest.mark.parametrize("k", [2, 3])
    def test_kqt_agrees_with_naive(self, k):
        for d in enumerate_all_digraphs(3):
            assert oracle_is_kqt(d, k) == naive.is_kqt(3, set(d.arcs()), k)

    def test_classify_limit(self):
        with pytest.raises(UsageError):
            oracle_classify(Digraph(13), range(13))

    def test_classify_fn(self):
        d = Digraph(5, fn_arcs(4))
        assert oracle_classify(d, range(5)).kind == "Fn"


class TestSeeds:
    def test_splitmix64_reference_vectors(self):
        # the first outputs of SplitMix64 started from state 0
        assert [splitmix64(i) for i in range(3)] == [
            0xE220A8397B1DCDAF,
            0x6E789E6AA1B965F4,
            0x06C45D188009454F,
        ]

    def test_instance_seed(self):
        assert instance_seed(0, 0) == 0xE220A8397B1DCDAF
        assert instance_seed(1, 0) == 0xE220A8397B1DCDAE

    def test_recipe_is_a_function_of_the_seed(self):
        assert theorem3_recipe(5, (8, 14), 77) == theorem3_recipe(5, (8, 14), 77)

    def test_random_digraph_range(self):
        sizes = {random_digraph(s).n for s in range(200)}
        assert min(sizes) >= 2 and max(sizes) <= 10


class TestSuites:
    def test_corpus_suite_small(self):
        report = run_theorem3_suite(5, 20, (8, 12), 3)
        assert report.ok and report.valid == report.passed == 20
        assert report.attempted == 20 + report.counts.get("generation failed: strong", 0)
        assert report.prng == "numpy.random.PCG64"

    def test_corpus_suite_shortfall(self, monkeypatch):
        from kqt.verifier import suites

        def never_valid(item):
            return {"valid": False, "failures": [], "counts": {"generation failed: strong": 1}}

        monkeypatch.setattr(suites, "_theorem3_work", never_valid)
        report = run_theorem3_suite(5, 3, (8, 12), 0)
        assert report.attempted == 30 and report.valid == 0
        assert report.counts["shortfall"] == 3 and not report.ok

    def test_corpus_suite_preconditions(self):
        with pytest.raises(UsageError):
            run_theorem3_suite(9, 1, (12, 14), 0)
        with pytest.raises(UsageError):
            run_theorem3_suite(5, 1, (7, 10), 0)

    def test_converse(self):
        assert run_converse_suite(5, 200, 0).ok
        exhaustive = run_converse_suite(3, 0, 0, exhaustive_n=3)
        assert exhaustive.ok and exhaustive.attempted == 1 + 4 + 64

    def test_backpath_suite(self):
        report = run_lemma6_suite((4, 6), 0, 20)
        assert report.ok and report.valid == 20

    def test_oracle(self):
        assert run_oracle_suite(3, 100, 0).ok
        assert run_oracle_suite(2, 0, 0, exhaustive_n=3).ok

    def test_exhaustive_scan_n3(self):
        report = run_theorem2_scan(3)
        assert report.ok and report.attempted == 64 and report.valid == 18

    def test_exhaustive_scan_range(self):
        with pytest.raises(UsageError):
            run_theorem2_scan(6)

    @pytest.mark.parametrize(
        "run",
        [
            lambda jobs: run_theorem3_suite(5, 12, (8, 11), 5, jobs),
            lambda jobs: run_converse_suite(5, 60, 5, jobs),
            lambda jobs: run_lemma6_suite((4, 6), 5, 12, jobs),
        ],
    )
    def test_deterministic_and_job_independent(self, run):
        a, b, c = run(1), run(1), run(2)
        assert a.text(timing=False) == b.text(timing=False) == c.text(timing=False)
        assert a.json_lines(timing=False) == c.json_lines(timing=False)

    def test_text_and_json(self):
        report = run_converse_suite(5, 10, 1)
        lines = report.text().splitlines()
        assert lines[0] == "suite: converse" and lines[-1].startswith("seconds: ")
        assert "status: PASS" in lines
        head = json.loads(report.json_lines().splitlines()[0])
        assert head["status"] == "PASS" and head["attempted"] == 10


def _spans_f3(d):
    """Does ``d`` contain F_3 on all four vertices, and which arcs are extra?"""
    for perm in itertools.permutations(range(4)):
        core = {(perm[a], perm[b]) for a, b in fn_arcs(3)}
        if core <= set(d.arcs()):
            return sorted((perm.index(a), perm.index(b)) for a, b in set(d.arcs()) - core)
    return None


class TestSmallOrderExceptions:
    """The scan finds strong 3-qt digraphs outside the three classes."""

    def test_n4_exceptions(self):
        report = run_theorem2_scan(4)
        assert len(report.failures) == 84 and not report.ok
        kinds = {}
        for failure in report.failures:
            d = from_edge_list(failure.digraph)
            assert classify_induced(d, range(4)).kind == OTHER
            extra = _spans_f3(d)
            assert extra is not None
            key = tuple(extra)
            kinds[key] = kinds.get(key, 0) + 1
        assert kinds == {((0, 2),): 24, ((2, 1),): 24, ((0, 2), (2, 1)): 24, ((1, 0),): 12}

    def test_n4_count_independently(self):
        # naive strongness, naive k-qt and the brute-force classifier
        count = 0
        for d in enumerate_all_digraphs(4):
            arcs = set(d.arcs())
            dist = naive.distances(4, arcs)
            if any(x == naive.INF for row in dist for x in row):
                continue
            if not naive.is_kqt(4, arcs, 3):
                continue
            if oracle_classify(d, range(4)).kind == OTHER:
                count += 1
        assert count == 84

    def test_example_exception(self):
        # F_3 plus x0 -> x2: strong, 3-qt, neither semicomplete, bipartite nor F_3
        d = Digraph(4, fn_arcs(3) + [(0, 2)])
        assert is_k_quasi_transitive(d, 3)
        assert classify_induced(d, range(4)).kind == OTHER

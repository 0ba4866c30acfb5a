import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import naive
from conftest import close_frame
from kqt import (
    Digraph,
    StructuralViolation,
    UsageError,
    distance,
    generate_frame_instance,
    is_k_quasi_transitive,
    is_strong,
    validate_path,
)
from kqt.structure import (
    SEMICOMPLETE,
    check_lemma10,
    check_lemma11,
    check_outside_claims,
    check_rotation,
    classify_all,
    classify_induced,
    cycle_adjacency_check,
    cycle_rotation_step,
    find_frame,
    frame_from_path,
    partition_outside,
    propagate_adjacency_check,
    rotation_orbit,
    semicomplete_backpath,
)
from kqt.verifier import InstanceRecipe, semicomplete_path_instance


def backward_completion(n):
    """Path x0..xn plus every backward arc x_j -> x_i with j >= i+2."""
    arcs = naive.path_arcs(n + 1) | {(j, i) for j in range(n + 1) for i in range(j - 1)}
    return Digraph(n + 1, arcs), arcs


def threshold_instance():
    """k=7 frame completed backwards, plus x10 with {x6..x9} -> x10 -> {x0..x4}."""
    d, arcs = backward_completion(9)
    return Digraph(11, arcs | {(10, i) for i in range(5)} | {(i, 10) for i in range(6, 10)})


class TestBackpath:
    def test_base_case(self):
        d, arcs = backward_completion(4)
        assert semicomplete_backpath(d, range(5), 4, 0, 2) == (4, 2, 0)
        assert naive.simple_paths(5, arcs, 2, start=4, end=0) == [(4, 2, 0)]

    def test_full_span(self):
        d, _ = backward_completion(5)
        assert semicomplete_backpath(d, range(6), 5, 0, 3) == (5, 2, 3, 0)

    def test_adjacent_pair(self):
        d, _ = backward_completion(5)
        assert semicomplete_backpath(d, range(6), 3, 2, 4) == (3, 4, 0, 1, 2)

    def test_top_endpoint_without_consecutive_back_arc(self):
        # x6 -> x5 absent: the longest back-path from x6 must avoid it
        d = next(g for g in map(lambda s: semicomplete_path_instance(6, s), range(50)) if not g.has_arc(6, 5))
        path = semicomplete_backpath(d, range(7), 6, 3, 5)
        assert validate_path(d, path) and len(path) == 6 and path[0] == 6 and path[-1] == 3

    @pytest.mark.parametrize(
        "args",
        [(5, 0, 1), (5, 0, 5), (0, 3, 2), (6, 0, 2)],
    )
    def test_preconditions(self, args):
        d, _ = backward_completion(5)
        with pytest.raises(UsageError):
            semicomplete_backpath(d, range(6), *args)

    def test_needs_semicomplete(self, path8):
        with pytest.raises(UsageError, match="not semicomplete"):
            semicomplete_backpath(path8, range(8), 7, 0, 3)

    def test_needs_shortest(self):
        d, _ = backward_completion(5)
        with pytest.raises(UsageError, match="shortest"):
            semicomplete_backpath(d.with_arcs([(0, 5)]), range(6), 5, 0, 3)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(4, 7), st.integers(0, 2**32))
    def test_every_triple(self, n, seed):
        d = semicomplete_path_instance(n, seed)
        arcs = set(d.arcs())
        for j in range(1, n + 1):
            for i in range(j):
                for p in range(2, n):
                    path = semicomplete_backpath(d, range(n + 1), j, i, p)
                    assert len(path) == p + 1 == len(set(path))
                    assert path[0] == j and path[-1] == i
                    assert all(e in arcs for e in zip(path, path[1:]))


class TestAdjacencyCone:
    def test_out_cone(self):
        d = generate_frame_instance(5, 3, 0.2, 0)
        frame = find_frame(d, 5)
        assert classify_induced(d, frame.path).kind == SEMICOMPLETE
        assert d.has_arc(9, 5)
        assert all(d.adj(9, j) for j in range(5))
        assert propagate_adjacency_check(d, frame).passed

    def test_in_cone(self):
        d = generate_frame_instance(5, 3, 0.2, 0)
        assert d.has_arc(3, 10)
        assert all(d.adj(10, j) for j in range(4, 8))

    def test_vacuous(self, frame5):
        d = close_frame(frame5.with_arcs([(3, 1)]), 5)
        report = propagate_adjacency_check(d, find_frame(d, 5))
        assert report.passed and report.notes["paths_built"] == 0

    def test_needs_semicomplete_frame(self, frame5):
        with pytest.raises(UsageError):
            propagate_adjacency_check(frame5, find_frame(frame5, 5))


class TestCycles:
    def test_frame_cycle(self):
        d = generate_frame_instance(5, 3, 0.2, 42)
        assert cycle_adjacency_check(d, tuple(range(8)), 5).passed

    def test_isolated_vertex(self, frame5):
        d = Digraph(9, frame5.arcs())
        report = cycle_adjacency_check(d, tuple(range(8)), 5)
        assert not report.passed and report.checks[0].witness == "8"

    def test_vacuous(self, frame5):
        assert cycle_adjacency_check(frame5, tuple(range(8)), 5).passed

    def test_short_cycle(self, frame5):
        with pytest.raises(UsageError):
            cycle_adjacency_check(frame5, (0, 1, 2, 3), 5)

    def test_rotation_out(self, frame5):
        d = Digraph(9, frame5.arcs() + [(8, 0), (8, 2), (8, 4), (8, 6)])
        assert cycle_rotation_step(d, tuple(range(8)), 5, 8, 0, "out") == 4

    def test_rotation_in(self, frame5):
        d = Digraph(9, frame5.arcs() + [(1, 8), (3, 8), (5, 8), (7, 8)])
        assert cycle_rotation_step(d, tuple(range(8)), 5, 8, 1, "in") == 5

    def test_rotation_missing_arc(self, frame5):
        d = Digraph(9, frame5.arcs() + [(8, 0)])
        with pytest.raises(StructuralViolation) as info:
            cycle_rotation_step(d, tuple(range(8)), 5, 8, 0, "out")
        assert info.value.arc == (8, 4)

    def test_rotation_preconditions(self, frame5):
        d = Digraph(9, frame5.arcs() + [(8, 0), (1, 8)])
        with pytest.raises(UsageError):
            cycle_rotation_step(d, tuple(range(8)), 5, 8, 0, "out")
        with pytest.raises(UsageError):
            cycle_rotation_step(d, tuple(range(8)), 5, 8, 0, "sideways")

    def test_orbits(self):
        assert sorted(rotation_orbit(8, 5)) == [0, 4]
        assert rotation_orbit(10, 7) == [0, 6, 2, 8, 4]


class TestPartition:
    def test_i1(self, frame5):
        d = Digraph(9, frame5.arcs() + [(8, 0), (8, 2), (8, 4), (8, 6)])
        assert is_k_quasi_transitive(d, 5)
        part = partition_outside(d, frame_from_path(d, 5, range(8)))
        assert part.I == {8} and part.I1 == {8} and not part.I2
        assert not part.W and not part.B and not part.I_tilde

    def test_w2(self, frame5):
        d = Digraph(9, frame5.arcs() + [(1, 8), (3, 8), (5, 8), (7, 8)])
        assert is_k_quasi_transitive(d, 5)
        part = partition_outside(d, frame_from_path(d, 5, range(8)))
        assert part.W == {8} and part.W2 == {8} and not part.W1

    def test_empty(self, frame5):
        part = partition_outside(frame5, find_frame(frame5, 5))
        assert all(size == 0 for size in part.sizes().values())

    def test_isolated_vertex(self, frame5):
        d = Digraph(9, frame5.arcs())
        with pytest.raises(StructuralViolation, match="not adjacent to V"):
            partition_outside(d, frame_from_path(d, 5, range(8)))

    def test_i_tilde(self):
        d = InstanceRecipe(5, 12, "clone", 0.3, False, 247994306247133631).build()
        part = partition_outside(d, find_frame(d, 5))
        assert part.I == {11} and part.I1 == {11} and part.I_tilde == {11}
        assert part.B == {8, 9, 10} and part.B2 == {8, 9, 10}


class TestBipartiteFrameDomination:
    def test_i1_dominates_even_class(self, frame5):
        d = Digraph(9, frame5.arcs() + [(8, 0), (8, 2), (8, 4), (8, 6)])
        frame = frame_from_path(d, 5, range(8))
        assert check_lemma10(d, frame, partition_outside(d, frame)).passed

    def test_gap_at_x5_is_closed(self, frame5):
        # {x7} -> w -> {x1, x3} without x5 is not 5-qt; closing adds x5 -> w
        d = Digraph(9, frame5.arcs() + [(8, 1), (8, 3), (7, 8)])
        assert not is_k_quasi_transitive(d, 5)
        closed = close_frame(d, 5)
        assert closed.has_arc(5, 8) and is_strong(closed)
        frame = find_frame(closed, 5)
        part = partition_outside(closed, frame)
        report = check_lemma10(closed, frame, part)
        assert part.B2 == {8} and report.passed and report.notes["thresholds"] == []

    def test_broken_domination(self, frame5):
        d = Digraph(9, frame5.arcs() + [(8, 0), (8, 2)])
        frame = frame_from_path(d, 5, range(8))
        report = check_lemma10(d, frame, partition_outside(d, frame))
        # 8 dominates only part of E(P), so it also falls outside I1 and I2
        assert {c.name for c in report.failures()} == {"lemma10.1:I", "lemma10:cells-cover"}

    def test_requires_bipartite_frame(self):
        d = threshold_instance()
        frame = find_frame(d, 7)
        with pytest.raises(UsageError):
            check_lemma10(d, frame, partition_outside(d, frame))


class TestSemicompleteThresholds:
    def test_thresholds(self):
        d = threshold_instance()
        assert is_strong(d) and is_k_quasi_transitive(d, 7) and distance(d, 0, 9) == 9
        frame = find_frame(d, 7)
        part = partition_outside(d, frame)
        assert part.B == {10} and part.B1 == {10} and part.B2 == {10}
        report = check_lemma11(d, frame, part)
        assert report.passed
        assert report.notes["thresholds"] == [{"vertex": 10, "t": 4, "s": 6}]

    def test_full_adjacency_branch(self):
        d = generate_frame_instance(5, 3, 0.2, 0)
        frame = find_frame(d, 5)
        part = partition_outside(d, frame)
        full = [w for w in part.B if d.adj_row(w) & frame.mask == frame.mask]
        assert full
        report = check_lemma11(d, frame, part)
        assert report.passed and all(r["vertex"] not in full for r in report.notes["thresholds"])

    def test_vacuous(self, frame5):
        d = close_frame(frame5.with_arcs([(3, 1)]), 5)
        frame = find_frame(d, 5)
        report = check_lemma11(d, frame, partition_outside(d, frame))
        assert report.passed and report.notes["thresholds"] == []

    def test_pattern_broken(self):
        d = threshold_instance().without_arcs([(10, 0)])
        frame = frame_from_path(d, 7, range(10))
        report = check_lemma11(d, frame, partition_outside(d, frame))
        assert [c.name for c in report.failures()] == ["lemma11:B"]


class TestClaims:
    def test_i1_against_b2(self):
        d = InstanceRecipe(5, 12, "clone", 0.3, False, 247994306247133631).build()
        frame = find_frame(d, 5)
        report = check_outside_claims(d, frame, partition_outside(d, frame))
        assert report.passed
        assert all(d.adj(11, b) for b in (8, 9, 10))

    def test_vacuous(self, frame5):
        frame = find_frame(frame5, 5)
        report = check_outside_claims(frame5, frame, partition_outside(frame5, frame))
        assert report.passed and len(report.checks) == 11

    def test_w_to_i_arc_is_caught(self, frame5):
        d = Digraph(10, frame5.arcs() + [(8, 0), (7, 9), (9, 8)])
        frame = frame_from_path(d, 5, range(8))
        report = check_outside_claims(d, frame, partition_outside(d, frame))
        assert "claim4:(W,I)" in {c.name for c in report.failures()}


class TestRotationReport:
    def test_i_and_w(self, frame5):
        d = Digraph(10, frame5.arcs() + [(8, 0), (8, 2), (8, 4), (8, 6), (1, 9), (3, 9), (5, 9), (7, 9)])
        frame = frame_from_path(d, 5, range(8))
        report = check_rotation(d, frame, partition_outside(d, frame))
        assert report.passed and report.notes["steps"] == 8


class TestClassifyAll:
    def test_threshold_instance(self):
        c = classify_all(threshold_instance(), 7, witnesses=True)
        assert c.passed
        assert c.frame_class.kind == SEMICOMPLETE and c.outside_class.kind == SEMICOMPLETE
        assert c.partition.sizes()["B"] == 1

"""Solver, verifier, spectra, and the no-pruning permutation oracle."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgemagic import (
    Graph,
    KSpectrum,
    Labeling,
    Witness,
    brute_force_is_k_em,
    classify,
    classify_detailed,
    counting_filter,
    enumerate_labelings,
    graph_from_edges,
    is_k_em,
    label_residues,
    relabel,
    verify_labeling,
    witness_from_json,
    witness_to_json,
)
from edgemagic.generators import generate_mops, named_family

from conftest import graph_strategy, random_graph

MOP4 = graph_from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
K2 = graph_from_edges(2, [(0, 1)])


def oracle_residue_solution_count(g, k):
    """Count magic residue assignments by raw permutation, no search machinery."""
    counts = label_residues(k, g.q, g.p).counts
    residues = [r for r in range(g.p) for _ in range(counts[r])]
    valid = 0
    for perm in set(itertools.permutations(residues)):
        sums = [0] * g.p
        for (u, v), r in zip(g.edges, perm):
            sums[u] += r
            sums[v] += r
        if len({s % g.p for s in sums}) == 1:
            valid += 1
    return valid


class TestLabelResidues:
    def test_interval_wrapping(self):
        assert label_residues(2, 5, 4).counts == (1, 1, 2, 1)

    def test_full_period(self):
        assert label_residues(0, 4, 4).counts == (1, 1, 1, 1)

    def test_partial(self):
        assert label_residues(1, 2, 3).counts == (0, 1, 1)

    @given(st.integers(0, 50), st.integers(0, 30), st.integers(1, 12))
    def test_counts_balanced(self, k, q, p):
        counts = label_residues(k, q, p).counts
        assert sum(counts) == q
        assert all(c in (q // p, q // p + 1) for c in counts)

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            label_residues(-1, 3, 2)


class TestCountingFilter:
    def test_order4_mop(self):
        assert [k for k in range(4) if counting_filter(MOP4, k)] == [0, 2]

    def test_order5_mop(self):
        mop5 = generate_mops(5)[0]
        assert [k for k in range(5) if counting_filter(mop5, k)] == [2]

    def test_edgeless_always_passes(self):
        g = Graph(3)
        assert all(counting_filter(g, k) for k in range(6))

    def test_soundness_on_small_graphs(self, rng):
        # filter False must imply no witness; checked against the raw oracle
        for _ in range(80):
            g = random_graph(rng, p_min=2, p_max=5)
            if g.q > 6:
                continue
            for k in range(g.p):
                if not counting_filter(g, k):
                    assert brute_force_is_k_em(g, k, q_cap=7) is None


class TestIsKEm:
    def test_k2_single_edge(self):
        w = is_k_em(K2, 7)
        assert w is not None
        assert w.labeling.assignment == {(0, 1): 7}
        assert w.c == 1

    def test_order4_mop_at_two(self):
        w = is_k_em(MOP4, 2)
        assert w is not None
        assert 0 <= w.c <= 3
        assert verify_labeling(MOP4, w.labeling).valid

    def test_order4_mop_at_zero_despite_filter(self):
        # the counting filter passes k=0 but exhaustive search finds nothing
        assert counting_filter(MOP4, 0)
        assert is_k_em(MOP4, 0) is None

    def test_triangle_never_magic(self):
        c3 = named_family("cycle", 3)
        assert all(is_k_em(c3, k) is None for k in range(3))

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            is_k_em(K2, -1)

    def test_edgeless_magic_for_every_k(self):
        g = Graph(3)
        for k in (0, 1, 5):
            w = is_k_em(g, k)
            assert w is not None and w.c == 0 and w.labeling.assignment == {}

    def test_isolated_vertex_forces_c_zero(self):
        g = graph_from_edges(3, [(0, 1)])  # K2 plus an isolated vertex
        assert sorted(classify(g).members) == [0]
        w = is_k_em(g, 0)
        assert w is not None and w.c == 0

    def test_deterministic_witness(self):
        assert is_k_em(MOP4, 2) == is_k_em(MOP4, 2)


class TestClassify:
    def test_order4_mop(self):
        assert classify(MOP4) == KSpectrum(4, frozenset({2}))

    def test_k2(self):
        assert sorted(classify(K2).members) == [0, 1]

    def test_known_negatives(self):
        assert classify(named_family("cycle", 4)).members == frozenset()
        assert classify(named_family("path", 3)).members == frozenset()

    def test_isomorphism_invariance(self, rng):
        for _ in range(40):
            g = random_graph(rng, p_min=2, p_max=5)
            perm = list(range(g.p))
            rng.shuffle(perm)
            assert classify(g).members == classify(relabel(g, perm)).members

    def test_detailed_reasons(self):
        members, witnesses, ruled_out = classify_detailed(MOP4)
        assert members == {2} and set(witnesses) == {2}
        assert ruled_out == {0: "search-exhausted", 1: "counting-filter", 3: "counting-filter"}

    def test_detailed_k_subset_reduces_mod_p(self):
        members, _, ruled_out = classify_detailed(MOP4, ks=[4, 6])
        assert members == {2}  # 6 = 2 (mod 4)
        assert ruled_out == {0: "search-exhausted"}


class TestShiftInvariance:
    @given(graph_strategy(max_p=5, min_p=2), st.integers(0, 12))
    @settings(max_examples=60, deadline=None)
    def test_k_plus_p_equivalent(self, g, k):
        w1 = is_k_em(g, k)
        w2 = is_k_em(g, k + g.p)
        assert (w1 is None) == (w2 is None)
        if w1 is not None:
            shifted = {e: label + g.p for e, label in w1.labeling.assignment.items()}
            assert w2.labeling.assignment == shifted
            assert w2.c == w1.c


class TestVerifyLabeling:
    def test_valid_single_edge(self):
        result = verify_labeling(K2, Labeling(5, {(0, 1): 5}))
        assert result.valid and result.c == 1 and result.violations == []

    def test_unequal_sums(self):
        p3 = named_family("path", 3)
        result = verify_labeling(p3, Labeling(0, {(0, 1): 0, (1, 2): 1}))
        assert not result.valid
        assert any("vertex 1" in v or "vertex 2" in v for v in result.violations)

    def test_not_a_bijection(self):
        result = verify_labeling(K2, Labeling(3, {(0, 1): 5}))
        assert not result.valid
        assert any("bijection" in v for v in result.violations)

    def test_missing_edge(self):
        p3 = named_family("path", 3)
        result = verify_labeling(p3, Labeling(0, {(0, 1): 0}))
        assert not result.valid
        assert any("unlabeled" in v for v in result.violations)

    def test_unknown_edge_raises(self):
        with pytest.raises(ValueError, match="absent"):
            verify_labeling(K2, Labeling(0, {(0, 1): 0, (1, 2): 1}))

    def test_solver_round_trip(self):
        w = is_k_em(MOP4, 2)
        result = verify_labeling(MOP4, w.labeling)
        assert result.valid and result.c == w.c

    def test_empty_labeling_on_edgeless_graph(self):
        result = verify_labeling(Graph(2), Labeling(4, {}))
        assert result.valid and result.c == 0


class TestEnumerate:
    def test_k2_exactly_one(self):
        witnesses = enumerate_labelings(K2, 0, limit=10)
        assert len(witnesses) == 1
        assert verify_labeling(K2, witnesses[0].labeling).valid

    def test_triangle_empty(self):
        assert enumerate_labelings(named_family("cycle", 3), 1, limit=10) == []

    def test_order4_mop_count_matches_oracle(self):
        witnesses = enumerate_labelings(MOP4, 2)
        assert len(witnesses) == oracle_residue_solution_count(MOP4, 2)
        assert len(witnesses) == 8  # frozen from the oracle run
        assert sorted({w.c for w in witnesses}) == [1, 3]
        for w in witnesses:
            assert verify_labeling(MOP4, w.labeling).valid

    def test_deterministic_order(self):
        first = enumerate_labelings(MOP4, 2)
        second = enumerate_labelings(MOP4, 2)
        assert first == second

    def test_limit_is_prefix(self):
        full = enumerate_labelings(MOP4, 2)
        assert enumerate_labelings(MOP4, 2, limit=3) == full[:3]

    def test_edgeless_graph_single_empty_witness(self):
        witnesses = enumerate_labelings(Graph(3), 5)
        assert len(witnesses) == 1
        assert witnesses[0].c == 0 and witnesses[0].labeling.assignment == {}

    def test_counts_match_oracle_on_random_graphs(self, rng):
        checked = 0
        while checked < 25:
            g = random_graph(rng, p_min=2, p_max=4)
            if g.q == 0 or g.q > 6:
                continue
            checked += 1
            k = rng.randint(0, g.p)
            assert len(enumerate_labelings(g, k)) == oracle_residue_solution_count(g, k)


class TestBruteForce:
    def test_agrees_with_solver_exhaustively_order_up_to_4(self):
        for p in range(1, 5):
            pairs = list(itertools.combinations(range(p), 2))
            for r in range(len(pairs) + 1):
                for subset in itertools.combinations(pairs, r):
                    g = Graph(p, subset)
                    for k in range(p):
                        fast = is_k_em(g, k)
                        slow = brute_force_is_k_em(g, k)
                        assert (fast is None) == (slow is None), (g, k)

    def test_triangle_k0(self):
        assert brute_force_is_k_em(named_family("cycle", 3), 0) is None

    def test_k2_k3(self):
        w = brute_force_is_k_em(K2, 3)
        assert w is not None and verify_labeling(K2, w.labeling).valid

    def test_cap(self):
        big = named_family("complete", 5)  # q = 10
        with pytest.raises(ValueError, match="capped"):
            brute_force_is_k_em(big, 0)
        # raising the cap works and still agrees with the solver (K5 is 0-EM)
        w = brute_force_is_k_em(big, 0, q_cap=10)
        assert w is not None and verify_labeling(big, w.labeling).valid
        assert is_k_em(big, 0) is not None


class TestWitnessJson:
    def test_exact_bytes(self):
        w = is_k_em(MOP4, 2)
        assert witness_to_json(w, 4) == (
            '{"k":2,"p":4,"c":1,"labels":[[0,1,4],[0,2,2],[0,3,3],[1,2,5],[2,3,6]]}'
        )

    def test_round_trip(self):
        w = is_k_em(MOP4, 2)
        restored, p = witness_from_json(witness_to_json(w, 4))
        assert p == 4 and restored == w

    def test_labeling_normalizes_edge_keys(self):
        assert Labeling(0, {(1, 0): 0}).assignment == {(0, 1): 0}
        with pytest.raises(ValueError, match="twice"):
            Labeling(0, {(1, 0): 0, (0, 1): 1})


class TestSoundnessProperties:
    def test_every_witness_verifies(self, rng):
        for _ in range(60):
            g = random_graph(rng, p_min=2, p_max=5)
            for k in range(g.p):
                w = is_k_em(g, k)
                if w is not None:
                    result = verify_labeling(g, w.labeling)
                    assert result.valid and result.c == w.c

    def test_labels_ascend_with_edge_order_within_residue_class(self, rng):
        # reconstruction rule: inside one residue class, interval labels are
        # handed to edges in increasing (u, v) order
        found = 0
        while found < 20:
            g = random_graph(rng, p_min=2, p_max=5)
            k = rng.randint(0, 6)
            w = is_k_em(g, k)
            if w is None or g.q == 0:
                continue
            found += 1
            by_residue = {}
            for edge in sorted(w.labeling.assignment):
                label = w.labeling.assignment[edge]
                by_residue.setdefault(label % g.p, []).append(label)
            for labels in by_residue.values():
                assert labels == sorted(labels)

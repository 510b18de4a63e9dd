"""Cycle diagrams, colorings, and the chain <-> labeled-binary-tree
bijection."""

from itertools import permutations
from math import factorial

import pytest

from wplat import (
    CycleDiagram,
    LBT,
    apply_chain,
    chain_to_lbt,
    count_descents,
    diagram_to_decreasing_chain,
    enumerate_colorings,
    enumerate_cycle_diagrams,
    enumerate_lbt,
    i_of_sigma,
    lbt_check,
    lbt_leaves,
    lbt_to_chain,
    mobius_closed_form,
    stirling1,
    t_def,
    t_via_diagrams,
    wt_k,
)


def decreasing_chain_set(poset):
    return {tuple(c) for c in
            poset.decreasing_chains(poset.bottom_idx, poset.top_idx)}


class TestCycleDiagrams:
    def test_counts_by_components(self):
        for n in range(1, 7):
            for r in range(1, n + 1):
                count = sum(1 for _ in enumerate_cycle_diagrams(n, r))
                assert count == abs(stirling1(n, r))

    def test_paper_weights(self):
        # path 1 -> 2 -> 3 -> 4 and star 2 -> {3,4} with 1 -> 2
        path = CycleDiagram(4, frozenset({(1, 2), (2, 3), (3, 4)}))
        star = CycleDiagram(4, frozenset({(1, 2), (2, 3), (2, 4)}))
        assert wt_k(path, 3) == 10
        assert wt_k(star, 3) == 14
        assert wt_k(path, 1) == 1 and wt_k(star, 1) == 1

    def test_t_via_diagrams_matches_def(self):
        for k in (1, 2, 3):
            for n in range(1, 7):
                for r in range(1, n + 1):
                    assert t_via_diagrams(n, k, r) == t_def(n, k, r)


class TestPairsAndColorings:
    def test_paper_example_pairs(self):
        got = sorted(i_of_sigma([1, 4, 5, 3, 6, 2]))
        assert got == [(1, 2), (1, 3), (1, 4), (3, 6), (4, 5)]

    def test_pair_rule(self):
        # for every j >= 2 the partner is the rightmost smaller entry left of it
        sigma = [1, 3, 2, 5, 4]
        pairs = i_of_sigma(sigma)
        assert (2, 5) in pairs  # partner of 5 is sigma_3 = 2? no: rightmost smaller left of 5 is 2
        assert len(pairs) == len(sigma) - 1

    def test_colorings_count(self):
        # pairs containing 1 admit k-1 colors, others k
        total = 0
        for tail in permutations(range(2, 4)):
            sigma = (1,) + tail
            total += len(list(enumerate_colorings(i_of_sigma(sigma), 2)))
        assert total == abs(mobius_closed_form(3, 2))

    @pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (3, 3), (4, 3)])
    def test_colored_diagrams_biject_with_decreasing_chains(self, n, k,
                                                           poset_cache):
        P = poset_cache(n, k)
        want = decreasing_chain_set(P)
        got = set()
        for tail in permutations(range(2, n + 1)):
            sigma = (1,) + tail
            pairs = i_of_sigma(sigma)
            for col in enumerate_colorings(pairs, k):
                got.add(tuple(diagram_to_decreasing_chain(pairs, col, n, k)))
        assert got == want
        assert len(got) == abs(mobius_closed_form(n, k))

    def test_k1_diagrams_biject(self, poset_cache):
        for n in (3, 4, 5):
            P = poset_cache(n, 1)
            want = decreasing_chain_set(P)
            got = set()
            for tail in permutations(range(2, n + 1)):
                sigma = (1,) + tail
                pairs = i_of_sigma(sigma)
                got.add(tuple(diagram_to_decreasing_chain(pairs, None, n, 1)))
            assert got == want
            assert len(got) == factorial(n - 1)


class TestLBT:
    @pytest.mark.parametrize("n,k,count", [
        (2, 1, 1), (3, 1, 2), (4, 1, 6), (5, 1, 24),
        (2, 2, 1), (3, 2, 3), (4, 2, 15),
        (2, 3, 2), (3, 3, 10), (4, 3, 80),
    ])
    def test_counts_match_mobius(self, n, k, count):
        trees = enumerate_lbt(n, k)
        assert len(trees) == count == abs(mobius_closed_form(n, k))

    def test_trees_pass_checker(self):
        for n, k in [(3, 2), (4, 2), (3, 3)]:
            for t in enumerate_lbt(n, k):
                assert lbt_check(t, n, k) == []

    def test_checker_rejects_wrong_leaf_set(self):
        bad = LBT(None, None, LBT(1, 1), LBT(3, 1))
        assert any("S1" in p for p in lbt_check(bad, 2, 1))

    def test_checker_rejects_sibling_order(self):
        bad = LBT(None, None, LBT(2, 1), LBT(1, 1))
        assert any("S2" in p for p in lbt_check(bad, 2, 1))

    def test_checker_rejects_rising_readoff(self):
        # structurally plausible but reads off a non-decreasing chain
        bad = LBT(None, None,
                  LBT(1, 1, LBT(1, 1), LBT(2, 1)),
                  LBT(3, 1))
        assert lbt_check(bad, 3, 1)

    def test_root_left_child_rule(self):
        # the k >= 2 tree whose root's left child is 1_k cannot extend past
        # the final step into the top
        bad = LBT(None, None,
                  LBT(1, 2, LBT(1, 1), LBT(3, 1)),
                  LBT(2, 2))
        assert any("1_k" in p for p in lbt_check(bad, 3, 2))

    @pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (4, 1), (5, 1),
                                     (2, 2), (3, 2), (4, 2),
                                     (2, 3), (3, 3), (4, 3)])
    def test_bijection_with_decreasing_chains(self, n, k, poset_cache):
        P = poset_cache(n, k)
        want = decreasing_chain_set(P)
        got = set()
        for t in enumerate_lbt(n, k):
            ch = lbt_to_chain(t, k)
            got.add(ch)
            assert chain_to_lbt(ch, n, k) == t
        assert got == want

    def test_chain_round_trip(self, poset_cache):
        for n, k in [(4, 2), (3, 3)]:
            P = poset_cache(n, k)
            for ch in decreasing_chain_set(P):
                t = chain_to_lbt(ch, n, k)
                assert lbt_to_chain(t, k) == ch

    def test_descent_bound(self):
        for n, k in [(4, 2), (4, 3)]:
            for t in enumerate_lbt(n, k):
                assert count_descents(t) <= n - 2

    def test_leaves_biject(self):
        for t in enumerate_lbt(4, 2):
            assert sorted(lbt_leaves(t)) == [1, 2, 3, 4]


class TestApplyChain:
    def test_rejects_non_chain(self):
        from wplat import CoverLabel

        with pytest.raises(ValueError):
            # merging 2,3 twice at the same layer is not a cover sequence
            apply_chain(3, 1, [CoverLabel(2, 3, 1), CoverLabel(2, 3, 1)])

    def test_chain_to_lbt_requires_decreasing(self):
        from wplat import CoverLabel

        rising = (CoverLabel(1, 2, 2), CoverLabel(1, 3, 2), CoverLabel(1, 3, 2))
        with pytest.raises(ValueError):
            chain_to_lbt(rising, 3, 2)

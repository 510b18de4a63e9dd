"""Weighted partitions: validation, printing/parsing, enumeration, and the
rooted-tree and edge-set encodings."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st_

from wplat import (
    InvalidPartition,
    OneLineParseError,
    T_def,
    WeightedPartition,
    atom,
    atom_decomposition,
    atoms,
    bottom,
    edge_set,
    edge_set_inverse,
    enumerate_all,
    enumerate_by_blocks,
    enumerate_tree_shapes,
    from_rooted_tree,
    one_line_parse,
    one_line_print,
    to_rooted_tree,
    tree_class_size,
    tree_shape,
    validate,
)


def wp(n, k, layers):
    return validate(n, k, layers)


class TestValidation:
    def test_valid_paper_example(self):
        pi = wp(6, 3, [
            [(1, 3, 5), (2, 4), (6,)],
            [(3, 5), (2, 4)],
            [(2, 4)],
        ])
        assert pi.rank == 3
        assert str(pi) == "1(35)^2/(24)^3/6"

    def test_singleton_forbidden_above_layer_one(self):
        with pytest.raises(InvalidPartition) as exc:
            wp(4, 2, [[(1, 3), (2,), (4,)], [(2,)]])
        assert any(kind == "singleton" for kind, _ in exc.value.violations)

    def test_coverage_error(self):
        with pytest.raises(InvalidPartition) as exc:
            wp(4, 1, [[(1, 2), (3,)]])
        assert any(kind == "coverage" for kind, _ in exc.value.violations)

    def test_overlap_error(self):
        with pytest.raises(InvalidPartition) as exc:
            wp(4, 1, [[(1, 2), (2, 3), (4,)]])
        assert any(kind == "overlap" for kind, _ in exc.value.violations)

    def test_nesting_error(self):
        # a layer-2 block must sit inside a single layer-1 block
        with pytest.raises(InvalidPartition) as exc:
            wp(4, 2, [[(1, 2), (3, 4)], [(2, 3)]])
        assert any(kind == "nesting" for kind, _ in exc.value.violations)

    def test_rank_is_n_minus_first_layer_blocks(self):
        pi = wp(5, 2, [[(1, 2, 3), (4, 5)], [(1, 2), (4, 5)]])
        assert pi.rank == 5 - 2


class TestOneLineNotation:
    def test_paper_example_round_trip(self):
        text = "1(35)^2/(24)^3/6"
        pi = one_line_parse(text, 6, 3)
        assert one_line_print(pi) == text

    def test_alias_exponent_on_element(self):
        # an exponent on a bare element extends every enclosing block
        pi = one_line_parse("1^2(23)^3/(46)^35", 6, 3)
        canonical = one_line_print(pi)
        assert one_line_parse(canonical, 6, 3) == pi

    def test_singleton_layer2_rejected(self):
        with pytest.raises((InvalidPartition, OneLineParseError)):
            one_line_parse("13/(2)^24", 4, 2)

    def test_parse_error_position(self):
        with pytest.raises(OneLineParseError):
            one_line_parse("1(", 2, 1)

    def test_round_trip_everything_small(self):
        for n, k in [(1, 1), (3, 1), (3, 2), (4, 2), (4, 3)]:
            for pi in enumerate_all(n, k):
                assert one_line_parse(one_line_print(pi), n, k) == pi


class TestEnumeration:
    @pytest.mark.parametrize("n,k", [(1, 1), (2, 1), (3, 1), (4, 1),
                                     (2, 2), (3, 2), (4, 2),
                                     (2, 3), (3, 3), (4, 3)])
    def test_counts_match_T(self, n, k):
        everything = enumerate_all(n, k)
        assert len(everything) == sum(T_def(n, k, r) for r in range(n + 1))
        by_rank = {}
        for pi in everything:
            by_rank[len(pi.layers[0])] = by_rank.get(len(pi.layers[0]), 0) + 1
        for r in range(1, n + 1):
            assert by_rank.get(r, 0) == T_def(n, k, r)

    def test_by_blocks_consistent(self):
        for r in range(1, 4):
            subset = enumerate_by_blocks(3, 2, r)
            assert len(subset) == T_def(3, 2, r)
            assert all(len(pi.layers[0]) == r for pi in subset)

    def test_paper_case_3_2(self):
        counts = [len(enumerate_by_blocks(3, 2, r)) for r in (1, 2, 3)]
        assert counts == [5, 6, 1]
        assert sum(counts) == 12

    def test_deterministic_order(self):
        a = [str(pi) for pi in enumerate_all(4, 2)]
        b = [str(pi) for pi in enumerate_all(4, 2)]
        assert a == b


class TestJsonRoundTrip:
    def test_json_round_trip(self):
        for pi in enumerate_all(3, 2):
            data = json.loads(pi.canonical_json())
            assert WeightedPartition.from_json_dict(data) == pi


class TestTreesAndEdges:
    def test_rooted_tree_round_trip(self):
        for n, k in [(3, 1), (3, 2), (4, 2), (4, 3)]:
            for pi in enumerate_all(n, k):
                assert from_rooted_tree(to_rooted_tree(pi)) == pi

    def test_edge_set_round_trip(self):
        for n, k in [(3, 1), (3, 2), (4, 2), (4, 3)]:
            for pi in enumerate_all(n, k):
                assert edge_set_inverse(edge_set(pi), n, k) == pi

    def test_shape_class_sizes_3_2(self):
        shapes = enumerate_tree_shapes(3, 2)
        sizes = sorted(tree_class_size(s) for s in shapes)
        assert sizes == [1, 1, 1, 3, 3, 3]

    def test_paper_example_class_size(self):
        pi = one_line_parse("1(35)^2/(24)^3/6", 6, 3)
        assert tree_class_size(tree_shape(to_rooted_tree(pi))) == 180

    def test_class_sizes_partition_the_poset(self):
        for n, k in [(3, 2), (4, 2)]:
            shapes = enumerate_tree_shapes(n, k)
            assert sum(tree_class_size(s) for s in shapes) == \
                len(enumerate_all(n, k))


class TestAtoms:
    def test_atom_count(self):
        for n, k in [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)]:
            assert len(atoms(n, k)) == k * n * (n - 1) // 2

    def test_atoms_have_rank_one(self):
        for a in atoms(4, 2):
            assert a.rank == 1

    def test_decomposition_reconstitutes(self):
        # every element is the reachability-join of its atoms: merging all
        # the atom edges reproduces the element
        for n, k in [(3, 2), (4, 2)]:
            for pi in enumerate_all(n, k):
                edges = set()
                for a in atom_decomposition(pi):
                    edges |= set(edge_set(a))
                assert edge_set_inverse(edges, n, k) == pi

    def test_bottom_has_no_atoms(self):
        assert atom_decomposition(bottom(4, 2)) == set()


@given(st_.data())
@settings(max_examples=40, deadline=None)
def test_property_print_parse_identity(data):
    n = data.draw(st_.integers(2, 4))
    k = data.draw(st_.integers(1, 3))
    everything = enumerate_all(n, k)
    pi = data.draw(st_.sampled_from(everything))
    assert one_line_parse(one_line_print(pi), n, k) == pi
    assert from_rooted_tree(to_rooted_tree(pi)) == pi

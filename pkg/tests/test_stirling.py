"""Stirling numbers and the layered transform numbers T / t."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st_

from conftest import oracle_stirling1, oracle_stirling2, oracle_set_partitions
from wplat import (
    T_def,
    T_rec_lambda,
    T_rec_split,
    bell,
    elem_sym_spec,
    f_lambda,
    g_lambda,
    partitions,
    stirling1,
    stirling2,
    t_def,
    t_rec_elem_sym,
    t_rec_split,
)


class TestStirlingOracles:
    def test_stirling1_against_falling_factorial(self):
        for n in range(9):
            for r in range(n + 2):
                assert stirling1(n, r) == oracle_stirling1(n, r)

    def test_stirling2_against_partition_enumeration(self):
        for n in range(8):
            for r in range(n + 2):
                assert stirling2(n, r) == oracle_stirling2(n, r)

    def test_bell_against_enumeration(self):
        for n in range(8):
            expected = sum(1 for _ in oracle_set_partitions(range(n)))
            assert bell(n) == expected

    @given(n=st_.integers(1, 25), r=st_.integers(0, 25))
    @settings(max_examples=60, deadline=None)
    def test_stirling_recurrences(self, n, r):
        assert stirling2(n, r) == r * stirling2(n - 1, r) + stirling2(n - 1, r - 1)
        assert stirling1(n, r) == stirling1(n - 1, r - 1) - (n - 1) * stirling1(n - 1, r)


class TestPartitionsOfIntegers:
    def test_counts(self):
        # number of integer partitions of n
        expected = [1, 1, 2, 3, 5, 7, 11, 15, 22]
        for n, want in enumerate(expected):
            assert len(list(partitions(n))) == want

    def test_each_sums_and_sorted(self):
        for n in range(9):
            for lam in partitions(n):
                assert sum(lam) == n
                assert list(lam) == sorted(lam, reverse=True)

    def test_f_g_small(self):
        # f_lambda counts set partitions of type lambda
        for n in range(1, 7):
            total = 0
            for lam in partitions(n):
                total += f_lambda(lam)
            assert total == bell(n)

    def test_f_lambda_by_type(self):
        # f_lambda counts the set partitions whose block sizes are lambda
        for n in range(1, 7):
            for lam in partitions(n):
                want = sum(
                    1 for p in oracle_set_partitions(range(n))
                    if sorted((len(b) for b in p), reverse=True) == list(lam))
                assert f_lambda(lam) == want

    def test_g_lambda_weight(self):
        from math import factorial

        for n in range(1, 7):
            for lam in partitions(n):
                assert g_lambda(lam) == factorial(len(lam) - 1) * f_lambda(lam)


class TestElemSymSpec:
    def test_small_values(self):
        # e_j evaluated at 1, 2, ..., m equals |s(m+1, m+1-j)|
        for m in range(7):
            for j in range(m + 1):
                assert elem_sym_spec(m, j) == abs(stirling1(m + 1, m + 1 - j))


class TestTransformNumbers:
    def test_k1_reduces_to_classical(self):
        for n in range(8):
            for r in range(n + 1):
                assert T_def(n, 1, r) == stirling2(n, r)
                assert t_def(n, 1, r) == stirling1(n, r)

    def test_paper_rows(self):
        # fourth-row coefficients for k = 2 and k = 3
        assert [T_def(4, 2, r) for r in (1, 2, 3, 4)] == [15, 32, 12, 1]
        assert [T_def(4, 3, r) for r in (1, 2, 3, 4)] == [60, 75, 18, 1]
        assert [t_def(4, 2, r) for r in (1, 2, 3, 4)] == [-35, 40, -12, 1]
        assert [t_def(4, 3, r) for r in (1, 2, 3, 4)] == [-105, 87, -18, 1]
        assert t_def(3, 3, 1) == 15

    def test_route_agreement_small(self):
        for n in range(6):
            for k in (1, 2, 3):
                for r in range(n + 1):
                    base = T_def(n, k, r)
                    assert T_rec_lambda(n, k, r) == base
                    assert T_rec_split(n, k, r) == base
                    tb = t_def(n, k, r)
                    assert t_rec_split(n, k, r) == tb
                    assert t_rec_elem_sym(n, k, r) == tb

    def test_inverse_relation(self):
        # t(.,k,.) is the matrix inverse of T(.,k,.)
        for k in (1, 2, 3):
            for n in range(7):
                for m in range(7):
                    conv = sum(t_def(n, k, j) * T_def(j, k, m)
                               for j in range(min(n, 7) + 1))
                    assert conv == (1 if n == m else 0)

    def test_sign_pattern(self):
        for k in (1, 2, 3):
            for n in range(1, 7):
                for r in range(1, n + 1):
                    v = t_def(n, k, r)
                    assert v != 0
                    assert (v > 0) == ((n - r) % 2 == 0)

"""Stirling numbers, Bell numbers, and the k-fold Stirling transform
numbers T(n, k, r) / t(n, k, r) by several independent routes.

All functions are pure and exact; out-of-range queries (r > n, negative
arguments) return 0 so the values can be used freely in matrix-style sums.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Sequence

__all__ = [
    "stirling1",
    "stirling2",
    "bell",
    "partitions",
    "partitions_with_length",
    "f_lambda",
    "g_lambda",
    "elem_sym_spec",
    "T_def",
    "t_def",
    "T_rec_lambda",
    "T_rec_split",
    "t_rec_split",
    "t_rec_first_column",
    "t_rec_elem_sym",
]


@lru_cache(maxsize=None)
def stirling1(n: int, r: int) -> int:
    """Signed Stirling number of the first kind s(n, r)."""
    if n < 0 or r < 0 or r > n:
        return 0
    if n == 0:
        return 1  # s(0,0)
    if r == 0:
        return 0
    return stirling1(n - 1, r - 1) - (n - 1) * stirling1(n - 1, r)


def stirling2(n: int, r: int) -> int:
    """Stirling number of the second kind via the alternating-sum formula
    S(n, r) = (1/r!) sum_i (-1)^i C(r, i) (r - i)^n."""
    if n < 0 or r < 0 or r > n:
        return 0
    total = sum((-1) ** i * comb(r, i) * (r - i) ** n for i in range(r + 1))
    q, rem = divmod(total, factorial(r))
    assert rem == 0
    return q


def bell(n: int) -> int:
    """Bell number, computed by both B_n = sum_r S(n, r) and the binomial
    recurrence B_{n+1} = sum_j C(n, j) B_j; the two must agree."""
    if n < 0:
        raise ValueError("bell requires n >= 0")
    via_sum = [sum(stirling2(m, r) for r in range(m + 1)) for m in range(n + 1)]
    via_rec = [1]
    for m in range(n):
        via_rec.append(sum(comb(m, j) * via_rec[j] for j in range(m + 1)))
    if via_sum != via_rec:
        raise AssertionError(f"Bell formulas disagree: {via_sum} vs {via_rec}")
    return via_sum[n]


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Integer partitions of n as weakly decreasing tuples, in
    reverse-lexicographic order.  partitions(0) yields the empty tuple."""
    if n < 0:
        return
    if n == 0:
        yield ()
        return

    def rec(remaining: int, largest: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield prefix
            return
        for part in range(min(largest, remaining), 0, -1):
            yield from rec(remaining - part, part, prefix + (part,))

    yield from rec(n, n, ())


def partitions_with_length(n: int, length: int) -> Iterator[tuple[int, ...]]:
    for lam in partitions(n):
        if len(lam) == length:
            yield lam


def _multiplicities(lam: Sequence[int]) -> dict[int, int]:
    m: dict[int, int] = {}
    for part in lam:
        m[part] = m.get(part, 0) + 1
    return m


def f_lambda(lam: Sequence[int]) -> int:
    """f_lambda = n! / prod_j (j!)^{m_j} m_j! — the number of ways to split
    [n] into an unordered family of blocks with part sizes lambda."""
    n = sum(lam)
    denom = 1
    for j, mj in _multiplicities(lam).items():
        denom *= factorial(j) ** mj * factorial(mj)
    q, rem = divmod(factorial(n), denom)
    assert rem == 0
    return q


def g_lambda(lam: Sequence[int]) -> int:
    """g_lambda = (l(lambda) - 1)! * f_lambda."""
    return factorial(len(lam) - 1) * f_lambda(lam)


def elem_sym_spec(m: int, j: int) -> int:
    """Elementary symmetric polynomial e_j evaluated at (1, 2, ..., m)."""
    if j < 0 or j > m:
        return 0
    # e[i] after processing value v holds e_i(1..v)
    e = [0] * (j + 1)
    e[0] = 1
    for v in range(1, m + 1):
        for i in range(min(j, v), 0, -1):
            e[i] += v * e[i - 1]
    return e[j]


def _index_tuples(n: int, k: int, r: int) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing tuples n = i_0 >= i_1 >= ... >= i_{k-1} >= i_k = r,
    yielded as the full (i_0, ..., i_k)."""

    def rec(pos: int, prev: int, prefix: tuple[int, ...]):
        if pos == k:
            yield prefix + (r,)
            return
        for i in range(prev, r - 1, -1):
            yield from rec(pos + 1, i, prefix + (i,))

    yield from rec(1, n, (n,))


def T_def(n: int, k: int, r: int) -> int:
    """T(n, k, r) by direct summation of prod_j S(i_{j-1}, i_j) over the
    weakly decreasing index tuples."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0 or r < 0 or r > n:
        return 0
    total = 0
    for tup in _index_tuples(n, k, r):
        prod = 1
        for a, b in zip(tup, tup[1:]):
            prod *= stirling2(a, b)
            if prod == 0:
                break
        total += prod
    return total


def t_def(n: int, k: int, r: int) -> int:
    """t(n, k, r): as T_def but with signed Stirling numbers of the first kind."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0 or r < 0 or r > n:
        return 0
    total = 0
    for tup in _index_tuples(n, k, r):
        prod = 1
        for a, b in zip(tup, tup[1:]):
            prod *= stirling1(a, b)
            if prod == 0:
                break
        total += prod
    return total


@lru_cache(maxsize=None)
def T_rec_lambda(n: int, k: int, r: int) -> int:
    """T(n, k, r) via the partition recurrence
    T(n,k,r) = sum_{lambda |- n, l(lambda)=r} f_lambda
               prod_i sum_{r'=1}^{lambda_i} T(lambda_i, k-1, r').

    Initial conditions T(0,k,0) = T(1,k,1) = 1; base layer k=1 is S(n, r).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0 or r < 0 or r > n:
        return 0
    if n == 0:
        return 1
    if k == 1:
        return stirling2(n, r)
    total = 0
    for lam in partitions_with_length(n, r):
        prod = f_lambda(lam)
        for part in lam:
            prod *= sum(T_rec_lambda(part, k - 1, rp) for rp in range(1, part + 1))
        total += prod
    return total


@lru_cache(maxsize=None)
def _T_first_column(n: int, k: int) -> int:
    """T(n, k, 1) = sum_r T(n, k-1, r), base T(n, 1, 1) = S(n, 1) = 1."""
    if n < 1:
        return 0
    if n == 1 or k == 1:
        return 1
    return sum(T_rec_split(n, k - 1, r) for r in range(1, n + 1))


@lru_cache(maxsize=None)
def T_rec_split(n: int, k: int, r: int) -> int:
    """T(n, k, r) via the split recurrence
    T(n,k,r) = sum_p C(n-1,p) T(p+1,k,1) T(n-p-1,k,r-1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0 or r < 0 or r > n:
        return 0
    if n == 0:
        return 1
    if r == 0:
        return 0
    if r == 1:
        return _T_first_column(n, k)
    return sum(
        comb(n - 1, p) * _T_first_column(p + 1, k) * T_rec_split(n - p - 1, k, r - 1)
        for p in range(n - r + 1)
    )


@lru_cache(maxsize=None)
def t_rec_first_column(n: int, k: int) -> int:
    """t(n, k, 1) = sum_{lambda |- n} (-1)^{l(lambda)+1} g_lambda
    prod_i t(lambda_i, k-1, 1); base k=1 gives (-1)^{n-1} (n-1)!.

    The internal base layer k=0 is the identity transform column delta_{n,1}.
    """
    if n < 1:
        return 0
    if k == 0:
        return 1 if n == 1 else 0
    if k == 1:
        return (-1) ** (n - 1) * factorial(n - 1)
    total = 0
    for lam in partitions(n):
        prod = (-1) ** (len(lam) + 1) * g_lambda(lam)
        for part in lam:
            prod *= t_rec_first_column(part, k - 1)
            if prod == 0:
                break
        total += prod
    return total


@lru_cache(maxsize=None)
def t_rec_split(n: int, k: int, r: int) -> int:
    """t(n, k, r) via the split recurrence, first column from
    t_rec_first_column."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0 or r < 0 or r > n:
        return 0
    if n == 0:
        return 1
    if r == 0:
        return 0
    if r == 1:
        return t_rec_first_column(n, k)
    return sum(
        comb(n - 1, p) * t_rec_first_column(p + 1, k) * t_rec_split(n - p - 1, k, r - 1)
        for p in range(n - r + 1)
    )


def t_rec_elem_sym(n: int, k: int, r: int) -> int:
    """t(n, k, r) via elementary symmetric functions:
    t(n,k,r) = sum_{a>=r} (-1)^{a-r} e_{a-r}(1..a-1)
               sum_{lambda |- n, l(lambda)=a} f_lambda prod_j t(lambda_j, k-1, 1).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0 or r < 0 or r > n:
        return 0
    if n == 0:
        return 1
    total = 0
    for a in range(r, n + 1):
        coeff = (-1) ** (a - r) * elem_sym_spec(a - 1, a - r)
        if coeff == 0:
            continue
        inner = 0
        for lam in partitions_with_length(n, a):
            prod = f_lambda(lam)
            for part in lam:
                prod *= t_rec_first_column(part, k - 1)
                if prod == 0:
                    break
            inner += prod
        total += coeff * inner
    return total

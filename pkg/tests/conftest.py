"""Shared oracles: small, independent reimplementations used to validate
the library's routes.  They favor obviousness over speed."""

from fractions import Fraction
from itertools import combinations

import pytest


def oracle_stirling1(n: int, r: int) -> int:
    """Signed first-kind numbers as coefficients of the falling factorial
    x(x-1)...(x-n+1), multiplied out term by term."""
    if n == 0:
        return 1 if r == 0 else 0
    coeffs = [0, 1]  # x
    for j in range(1, n):
        # multiply by (x - j)
        nxt = [0] * (len(coeffs) + 1)
        for d, c in enumerate(coeffs):
            nxt[d + 1] += c
            nxt[d] -= j * c
        coeffs = nxt
    return coeffs[r] if 0 <= r < len(coeffs) else 0


def oracle_set_partitions(universe):
    """All set partitions of a list, by direct recursion on the first
    element."""
    universe = list(universe)
    if not universe:
        yield []
        return
    first, rest = universe[0], universe[1:]
    for size in range(len(rest) + 1):
        for mates in combinations(rest, size):
            block = (first,) + mates
            remaining = [e for e in rest if e not in mates]
            for sub in oracle_set_partitions(remaining):
                yield [block] + sub


def oracle_stirling2(n: int, r: int) -> int:
    return sum(1 for p in oracle_set_partitions(range(1, n + 1))
               if len(p) == r)


def oracle_taylor_exp(coeffs: list[Fraction]) -> list[Fraction]:
    """exp of a univariate EGF-coefficient list (constant term 0) by direct
    Taylor summation of f^m / m!."""
    order = len(coeffs) - 1
    # convert EGF coefficients a_n (of x^n/n!) to ordinary coefficients
    fact = [1] * (order + 1)
    for i in range(1, order + 1):
        fact[i] = fact[i - 1] * i
    f = [Fraction(c, fact[i]) for i, c in enumerate(coeffs)]
    assert f[0] == 0
    result = [Fraction(0)] * (order + 1)
    result[0] = Fraction(1)
    power = [Fraction(0)] * (order + 1)
    power[0] = Fraction(1)  # f^0
    for m in range(1, order + 1):
        nxt = [Fraction(0)] * (order + 1)
        for i, a in enumerate(power):
            if a == 0:
                continue
            for j, b in enumerate(f):
                if i + j <= order:
                    nxt[i + j] += a * b
        power = nxt
        for d in range(order + 1):
            result[d] += power[d] / fact[m]
    return [result[i] * fact[i] for i in range(order + 1)]


def oracle_taylor_log1p(coeffs: list[Fraction]) -> list[Fraction]:
    """log(1 + f) of a univariate EGF-coefficient list (constant term 0)."""
    order = len(coeffs) - 1
    fact = [1] * (order + 1)
    for i in range(1, order + 1):
        fact[i] = fact[i - 1] * i
    f = [Fraction(c, fact[i]) for i, c in enumerate(coeffs)]
    assert f[0] == 0
    result = [Fraction(0)] * (order + 1)
    power = [Fraction(0)] * (order + 1)
    power[0] = Fraction(1)
    for m in range(1, order + 1):
        nxt = [Fraction(0)] * (order + 1)
        for i, a in enumerate(power):
            if a == 0:
                continue
            for j, b in enumerate(f):
                if i + j <= order:
                    nxt[i + j] += a * b
        power = nxt
        sign = Fraction((-1) ** (m + 1), m)
        for d in range(order + 1):
            result[d] += sign * power[d]
    return [result[i] * fact[i] for i in range(order + 1)]


@pytest.fixture(scope="session")
def poset_cache():
    """Posets are expensive; share them across tests."""
    from wplat import build_poset

    cache = {}

    def get(n, k):
        if (n, k) not in cache:
            cache[n, k] = build_poset(n, k)
        return cache[n, k]

    return get

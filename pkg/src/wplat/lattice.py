"""The graded lattice of weighted partitions: labeled covers, explicit
poset construction, EL-labeling verification, Möbius function, Whitney
numbers, characteristic polynomial, join/meet.

For k >= 2 (and n >= 2) the poset adjoins a top element above the
single-block weighted partitions; for k = 1 the single-block partition is
already the unique top, so nothing is adjoined (this reproduces the
classical partition lattice).  The order is the reflexive-transitive
closure of the admissible covers.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import total_ordering
from math import factorial
from typing import Iterator, Sequence

from .wpartition import (
    WeightedPartition,
    atom_decomposition,
    bottom,
    enumerate_all,
    one_line_print,
    validate,
)
from .stirling import T_def

__all__ = [
    "CoverLabel",
    "GuardExceeded",
    "TOP",
    "DEFAULT_GUARD",
    "admissible_covers",
    "Poset",
    "build_poset",
    "mobius_closed_form",
    "paper_join",
    "paper_meet",
    "whitney",
    "char_poly_summation",
    "char_poly_product",
    "char_poly_roots",
    "structural_checks",
    "hasse_dot",
]

DEFAULT_GUARD = 200_000


class GuardExceeded(RuntimeError):
    """The requested poset would exceed the element-count guard."""


@total_ordering
@dataclass(frozen=True)
class CoverLabel:
    """Edge label (alpha, beta)_layer; deeper layers compare smaller."""

    alpha: int
    beta: int
    layer: int

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return (-self.layer, self.alpha, self.beta)

    def __lt__(self, other: "CoverLabel") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return f"({self.alpha},{self.beta})_{self.layer}"


class _Top:
    """Sentinel for the adjoined top element."""

    def __repr__(self) -> str:
        return "TOP"

    def __str__(self) -> str:
        return "1^"


TOP = _Top()


def _apply_cover(pi: WeightedPartition, alpha: int, beta: int, layer: int) -> WeightedPartition:
    """Merge the alpha- and beta-blocks at every layer <= ``layer``."""
    new_layers = []
    for l in range(1, pi.k + 1):
        blocks = list(pi.layers[l - 1])
        if l <= layer:
            a_blk = pi.block_of(alpha, l)
            b_blk = pi.block_of(beta, l)
            blocks = [c for c in blocks if c != a_blk and c != b_blk]
            blocks.append(tuple(sorted(a_blk + b_blk)))
        new_layers.append(blocks)
    return validate(pi.n, pi.k, new_layers)


def admissible_covers(pi: WeightedPartition) -> list[tuple[CoverLabel, WeightedPartition]]:
    """All covers of pi inside P_n^(k), sorted by label.

    A label (alpha, beta)_l is admissible when alpha and beta lie in
    distinct first-layer blocks, beta is the minimum of its first-layer
    block, and alpha is the minimum of its layer-l block (a singleton
    counts as its own block).  Rank n-1 elements have no covers inside P.
    """
    layer1 = pi.layers[0]
    out = []
    for B in layer1:
        beta = B[0]
        for A in layer1:
            if A is B:
                continue
            for l in range(1, pi.k + 1):
                covered = set()
                alphas = []
                for c in pi.layers[l - 1]:
                    if c[0] in A:
                        alphas.append(c[0])
                        covered.update(c)
                alphas.extend(e for e in A if e not in covered)
                for alpha in alphas:
                    if alpha < beta:
                        label = CoverLabel(alpha, beta, l)
                        out.append((label, _apply_cover(pi, alpha, beta, l)))
    out.sort(key=lambda pair: pair[0].sort_key)
    return out


class Poset:
    """The explicit lattice for given (n, k): indexed elements, labeled
    covers, rank function, order queries, chains, Möbius values."""

    def __init__(self, n: int, k: int, elements: list, covers: list,
                 bottom_idx: int, top_idx: int):
        self.n = n
        self.k = k
        self.elements = elements  # WeightedPartition values, possibly TOP last
        self.covers = covers      # (lower index, upper index, CoverLabel)
        self.bottom_idx = bottom_idx
        self.top_idx = top_idx
        self.index = {el.canonical_json(): i for i, el in enumerate(elements)
                      if isinstance(el, WeightedPartition)}
        self.rank = [n if el is TOP else el.rank for el in elements]
        self.up: list[list[tuple[int, CoverLabel]]] = [[] for _ in elements]
        self.down: list[list[tuple[int, CoverLabel]]] = [[] for _ in elements]
        for lo, hi, lab in covers:
            self.up[lo].append((hi, lab))
            self.down[hi].append((lo, lab))
        for adj in self.up:
            adj.sort(key=lambda t: (t[1].sort_key, t[0]))
        # strict-ancestor bitmasks, filled in rank order
        order = sorted(range(len(elements)), key=lambda i: self.rank[i])
        self._anc = [0] * len(elements)
        for y in order:
            m = 0
            for z, _ in self.down[y]:
                m |= self._anc[z] | (1 << z)
            self._anc[y] = m
        self._rank_order = order
        self._mu0: list[int] | None = None
        self._mu_memo: dict[tuple[int, int], int] = {}

    # -- basic queries ------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, pi: WeightedPartition) -> int:
        return self.index[pi.canonical_json()]

    def element_name(self, i: int) -> str:
        el = self.elements[i]
        return str(el) if el is TOP else one_line_print(el)

    def leq(self, x: int, y: int) -> bool:
        return x == y or bool(self._anc[y] >> x & 1)

    def interval(self, x: int, y: int) -> list[int]:
        """Members of [x, y], ordered by rank then index."""
        if not self.leq(x, y):
            raise ValueError("interval requires x <= y")
        members = [z for z in range(len(self.elements))
                   if self.leq(x, z) and self.leq(z, y)]
        members.sort(key=lambda z: (self.rank[z], z))
        return members

    # -- chains -------------------------------------------------------------

    def maximal_chains(self, x: int, y: int) -> Iterator[tuple[CoverLabel, ...]]:
        """Label sequences of every saturated chain from x to y."""
        if not self.leq(x, y):
            return

        def rec(cur: int, prefix: list[CoverLabel]) -> Iterator[tuple[CoverLabel, ...]]:
            if cur == y:
                yield tuple(prefix)
                return
            for nxt, lab in self.up[cur]:
                if self.leq(nxt, y):
                    prefix.append(lab)
                    yield from rec(nxt, prefix)
                    prefix.pop()

        yield from rec(x, [])

    @staticmethod
    def is_rising(labels: Sequence[CoverLabel]) -> bool:
        return all(a.sort_key <= b.sort_key for a, b in zip(labels, labels[1:]))

    @staticmethod
    def is_decreasing(labels: Sequence[CoverLabel]) -> bool:
        return all(a.sort_key > b.sort_key for a, b in zip(labels, labels[1:]))

    def decreasing_chains(self, x: int, y: int) -> Iterator[tuple[CoverLabel, ...]]:
        """Maximal chains with strictly decreasing labels (pruned search)."""
        if not self.leq(x, y):
            return

        def rec(cur: int, prefix: list[CoverLabel]) -> Iterator[tuple[CoverLabel, ...]]:
            if cur == y:
                yield tuple(prefix)
                return
            for nxt, lab in self.up[cur]:
                if (not prefix or lab.sort_key < prefix[-1].sort_key) and self.leq(nxt, y):
                    prefix.append(lab)
                    yield from rec(nxt, prefix)
                    prefix.pop()

        yield from rec(x, [])

    # -- EL verification ----------------------------------------------------

    def verify_el(self) -> dict:
        """Check, for every interval, that exactly one maximal chain is
        weakly rising and that it is strictly lexicographically first."""
        witnesses = []
        size = len(self.elements)
        for x in range(size):
            for y in range(size):
                if not self.leq(x, y):
                    continue
                chains = sorted(self.maximal_chains(x, y),
                                key=lambda ch: [lab.sort_key for lab in ch])
                rising = [ch for ch in chains if self.is_rising(ch)]
                if len(rising) != 1:
                    witnesses.append({
                        "interval": [self.element_name(x), self.element_name(y)],
                        "issue": f"{len(rising)} rising chains",
                        "rising": [[str(l) for l in ch] for ch in rising],
                    })
                    continue
                if chains[0] != rising[0] or (
                        len(chains) > 1 and chains[1] == chains[0]):
                    witnesses.append({
                        "interval": [self.element_name(x), self.element_name(y)],
                        "issue": "rising chain is not strictly lex-first",
                        "rising": [str(l) for l in rising[0]],
                        "lex_first": [str(l) for l in chains[0]],
                    })
        return {"check": "el", "status": "pass" if not witnesses else "fail",
                "witnesses": witnesses}

    # -- Möbius -------------------------------------------------------------

    def mobius_from_bottom(self) -> list[int]:
        """mu(0^, z) for every element z."""
        if self._mu0 is None:
            mu = [0] * len(self.elements)
            mu[self.bottom_idx] = 1
            for y in self._rank_order:
                if y == self.bottom_idx:
                    continue
                total = 0
                m = self._anc[y]
                while m:
                    z = (m & -m).bit_length() - 1
                    total += mu[z]
                    m &= m - 1
                mu[y] = -total
            self._mu0 = mu
        return self._mu0

    def mobius_recursive(self, x: int, y: int) -> int:
        """mu(x, y) by the defining recursion."""
        if not self.leq(x, y):
            raise ValueError("mobius requires x <= y")
        key = (x, y)
        if key in self._mu_memo:
            return self._mu_memo[key]
        if x == self.bottom_idx:
            val = self.mobius_from_bottom()[y]
        else:
            members = self.interval(x, y)
            mu = {x: 1}
            for z in members[1:]:
                mu[z] = -sum(mu[w] for w in members if w in mu and w != z
                             and self.leq(w, z))
            val = mu[y]
        self._mu_memo[key] = val
        return val

    def mobius_via_chains(self) -> int:
        """(-1)^{rank of top} times the number of maximal decreasing
        0^-to-top chains."""
        count = sum(1 for _ in self.decreasing_chains(self.bottom_idx, self.top_idx))
        return (-1) ** self.rank[self.top_idx] * count


def build_poset(n: int, k: int, guard: int | None = None) -> Poset:
    """Construct the lattice for (n, k) explicitly.

    The element-count guard (default 200000, or WPLAT_GUARD) aborts with
    :class:`GuardExceeded` before any enumeration.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    if guard is None:
        guard = int(os.environ.get("WPLAT_GUARD", DEFAULT_GUARD))
    estimate = sum(T_def(n, k, r) for r in range(n + 1)) + 1
    if estimate > guard:
        raise GuardExceeded(
            f"poset for (n={n}, k={k}) has about {estimate} elements, "
            f"over the guard of {guard}; raise the guard to proceed")

    elements: list = list(enumerate_all(n, k))
    index = {el.canonical_json(): i for i, el in enumerate(elements)}
    covers = []
    for i, el in enumerate(elements):
        for lab, res in admissible_covers(el):
            covers.append((i, index[res.canonical_json()], lab))

    add_top = k >= 2 and n >= 2
    if add_top:
        top_idx = len(elements)
        elements.append(TOP)
        for i, el in enumerate(elements[:-1]):
            if isinstance(el, WeightedPartition) and el.rank == n - 1:
                covers.append((i, top_idx, CoverLabel(1, n, k)))
    else:
        tops = [i for i, el in enumerate(elements) if el.rank == max(e.rank for e in elements)]
        assert len(tops) == 1
        top_idx = tops[0]

    bottom_idx = index[bottom(n, k).canonical_json()]
    poset = Poset(n, k, elements, covers, bottom_idx, top_idx)

    # sanity: grading and reachability
    for lo, hi, _ in covers:
        assert poset.rank[hi] == poset.rank[lo] + 1, "cover must raise rank by 1"
    for y in range(len(elements)):
        assert y == bottom_idx or poset.leq(bottom_idx, y), \
            "every element must be reachable from the bottom"
    return poset


def mobius_closed_form(n: int, k: int) -> int:
    """mu of the full lattice: (-1)^n prod_{j=0}^{n-2} (k(j+1)-1) for
    k >= 2; the classical (-1)^{n-1} (n-1)! for k = 1; 1 for n = 1."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    if n == 1:
        return 1
    if k == 1:
        return (-1) ** (n - 1) * factorial(n - 1)
    prod = 1
    for j in range(n - 1):
        prod *= k * (j + 1) - 1
    return (-1) ** n * prod


# ---------------------------------------------------------------------------
# join / meet, Whitney numbers, characteristic polynomial

def _components(blocks: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Connected components of the union graph of the given blocks."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for b in blocks:
        for e in b:
            parent.setdefault(e, e)
        for e in b[1:]:
            parent[find(b[0])] = find(e)
    comps: dict[int, list[int]] = {}
    for e in parent:
        comps.setdefault(find(e), []).append(e)
    return [tuple(sorted(c)) for c in comps.values()]


def paper_join(x: WeightedPartition, y: WeightedPartition) -> WeightedPartition:
    """Layerwise join: blocks are the crossing-component unions."""
    if (x.n, x.k) != (y.n, y.k):
        raise ValueError("join requires matching (n, k)")
    layers = []
    for l in range(1, x.k + 1):
        blocks = list(x.blocks_at(l, with_singletons=(l == 1)))
        blocks += list(y.blocks_at(l, with_singletons=(l == 1)))
        comps = _components(blocks)
        if l >= 2:
            comps = [c for c in comps if len(c) >= 2]
        layers.append(comps)
    return validate(x.n, x.k, layers)


def paper_meet(x: WeightedPartition, y: WeightedPartition) -> WeightedPartition:
    """Layerwise meet: blocks are the pairwise intersections."""
    if (x.n, x.k) != (y.n, y.k):
        raise ValueError("meet requires matching (n, k)")
    layers = []
    for l in range(1, x.k + 1):
        xs = x.blocks_at(l, with_singletons=True)
        ys = y.blocks_at(l, with_singletons=True)
        blocks = []
        for a in xs:
            for b in ys:
                c = sorted(set(a) & set(b))
                if c and (l == 1 or len(c) >= 2):
                    blocks.append(tuple(c))
        layers.append(blocks)
    return validate(x.n, x.k, layers)


def whitney(n: int, k: int, r: int, poset: Poset | None = None) -> int:
    """Whitney number of the first kind: sum of mu(0^, pi) over the
    weighted partitions with r first-layer blocks."""
    if poset is None:
        poset = build_poset(n, k)
    mu = poset.mobius_from_bottom()
    return sum(mu[i] for i, el in enumerate(poset.elements)
               if isinstance(el, WeightedPartition) and len(el.layers[0]) == r)


def char_poly_summation(n: int, k: int, poset: Poset | None = None) -> list[int]:
    """Coefficients [c_0, ..., c_n] of sum_r w_r x^r via Möbius summation."""
    if poset is None:
        poset = build_poset(n, k)
    coeffs = [0] * (n + 1)
    mu = poset.mobius_from_bottom()
    for i, el in enumerate(poset.elements):
        if isinstance(el, WeightedPartition):
            coeffs[len(el.layers[0])] += mu[i]
    return coeffs


def char_poly_roots(n: int, k: int) -> list[int]:
    return [k * j for j in range(n)]


def char_poly_product(n: int, k: int) -> list[int]:
    """Coefficients of prod_{j=0}^{n-1} (x - k j), ascending."""
    coeffs = [1]
    for root in char_poly_roots(n, k):
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= root * c
        coeffs = nxt
    return coeffs


# ---------------------------------------------------------------------------
# structural checks and rendering

def structural_checks(poset: Poset) -> list[dict]:
    """Semimodularity, atomisticity, and the join/meet existence audit.

    The audit compares least upper bounds / greatest lower bounds under the
    cover-closure order with paper_join / paper_meet; discrepancies are
    reported as findings (status "warn"), not failures.
    """
    wps = [(i, el) for i, el in enumerate(poset.elements)
           if isinstance(el, WeightedPartition)]

    semi_witnesses = []
    for i, x in wps:
        for j, y in wps:
            if j < i:
                continue
            jn = paper_join(x, y)
            mt = paper_meet(x, y)
            if x.rank + y.rank < jn.rank + mt.rank:
                semi_witnesses.append({
                    "x": one_line_print(x), "y": one_line_print(y),
                    "join": one_line_print(jn), "meet": one_line_print(mt)})
    semi = {"check": "semimodular", "status": "pass" if not semi_witnesses else "fail",
            "witnesses": semi_witnesses}

    atom_witnesses = []
    bot = bottom(poset.n, poset.k)
    for _, x in wps:
        acc = bot
        for a in sorted(atom_decomposition(x), key=WeightedPartition.canonical_json):
            acc = paper_join(acc, a)
        if acc != x:
            atom_witnesses.append({"x": one_line_print(x),
                                   "join_of_atoms": one_line_print(acc)})
    atomic = {"check": "atomistic", "status": "pass" if not atom_witnesses else "fail",
              "witnesses": atom_witnesses}

    findings = []
    size = len(poset.elements)
    for i, x in wps:
        for j, y in wps:
            if j < i:
                continue
            ub = [z for z in range(size) if poset.leq(i, z) and poset.leq(j, z)]
            min_ub = [z for z in ub
                      if not any(w != z and poset.leq(w, z) for w in ub)]
            jn = paper_join(x, y)
            jn_idx = poset.index_of(jn)
            if len(min_ub) != 1:
                findings.append({"x": one_line_print(x), "y": one_line_print(y),
                                 "issue": "no least upper bound",
                                 "minimal_upper_bounds":
                                     [poset.element_name(z) for z in min_ub]})
            elif min_ub[0] != jn_idx:
                findings.append({"x": one_line_print(x), "y": one_line_print(y),
                                 "issue": "least upper bound differs from layerwise join",
                                 "lub": poset.element_name(min_ub[0]),
                                 "paper_join": one_line_print(jn)})
            lb = [z for z in range(size) if poset.leq(z, i) and poset.leq(z, j)]
            max_lb = [z for z in lb
                      if not any(w != z and poset.leq(z, w) for w in lb)]
            mt = paper_meet(x, y)
            mt_idx = poset.index_of(mt)
            if len(max_lb) != 1:
                findings.append({"x": one_line_print(x), "y": one_line_print(y),
                                 "issue": "no greatest lower bound",
                                 "maximal_lower_bounds":
                                     [poset.element_name(z) for z in max_lb]})
            elif max_lb[0] != mt_idx:
                findings.append({"x": one_line_print(x), "y": one_line_print(y),
                                 "issue": "greatest lower bound differs from layerwise meet",
                                 "glb": poset.element_name(max_lb[0]),
                                 "paper_meet": one_line_print(mt)})
    audit = {"check": "bound_audit", "status": "pass" if not findings else "warn",
             "witnesses": findings}
    return [semi, atomic, audit]


def hasse_dot(poset: Poset) -> str:
    """Hasse diagram in DOT form: one node per element, covers as labeled
    edges, equal ranks clustered."""
    lines = ["digraph hasse {", "  rankdir=BT;", '  node [shape=box];']
    for i in range(len(poset.elements)):
        lines.append(f'  e{i} [label="{poset.element_name(i)}"];')
    by_rank: dict[int, list[int]] = {}
    for i, r in enumerate(poset.rank):
        by_rank.setdefault(r, []).append(i)
    for r in sorted(by_rank):
        ids = "; ".join(f"e{i}" for i in by_rank[r])
        lines.append(f"  {{ rank=same; {ids}; }}")
    for lo, hi, lab in sorted(poset.covers):
        lines.append(f'  e{lo} -> e{hi} [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

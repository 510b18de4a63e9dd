"""Pictorial chain objects: cycle diagrams with monotone edge labelings
(computing t(n,k,r) as a signed weight sum), permutation diagrams with
colorings, and the labeled binary trees that biject with maximal
decreasing chains of the lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Mapping, Sequence

from .lattice import CoverLabel, admissible_covers
from .wpartition import WeightedPartition, bottom

__all__ = [
    "CycleDiagram",
    "enumerate_cycle_diagrams",
    "wt_k",
    "t_via_diagrams",
    "i_of_sigma",
    "enumerate_colorings",
    "diagram_to_decreasing_chain",
    "apply_chain",
    "LBT",
    "lbt_leaves",
    "lbt_check",
    "count_descents",
    "enumerate_lbt",
    "lbt_to_chain",
    "chain_to_lbt",
]


# ---------------------------------------------------------------------------
# cycle diagrams

@dataclass(frozen=True)
class CycleDiagram:
    """An increasing forest on points 1..n: directed edges (i -> j) with
    i < j, every point has at most one incoming edge."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        targets = [j for _, j in self.edges]
        assert len(targets) == len(set(targets)), "at most one incoming edge per point"
        assert all(1 <= i < j <= self.n for i, j in self.edges)
        # increasing edges force the minimum of each component to be a root

    @property
    def roots(self) -> list[int]:
        targets = {j for _, j in self.edges}
        return [p for p in range(1, self.n + 1) if p not in targets]

    @property
    def blocks(self) -> int:
        return len(self.roots)

    def children(self, p: int) -> list[int]:
        return sorted(j for i, j in self.edges if i == p)

    def component_of(self, p: int) -> set[int]:
        comp = {p}
        changed = True
        while changed:
            changed = False
            for i, j in self.edges:
                if (i in comp) != (j in comp):
                    comp |= {i, j}
                    changed = True
        return comp

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": sorted([i, j] for i, j in self.edges)}


def enumerate_cycle_diagrams(n: int, r: int) -> Iterator[CycleDiagram]:
    """All diagrams with n points and r components; |C(n, r)| = |s(n, r)|."""
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    # every point j >= 2 picks an incoming edge from a smaller point, or none
    for parents in product(*(range(j) for j in range(2, n + 1))):
        # parents[j-2] in 0..j-1 for point j; 0 means root
        edges = frozenset((p, j) for j, p in zip(range(2, n + 1), parents) if p)
        if n - len(edges) == r:
            yield CycleDiagram(n, edges)


def wt_k(diagram: CycleDiagram, k: int) -> int:
    """Number of edge labelings with labels in [1, k] weakly increasing
    along every directed path (dynamic programming leaf-up)."""
    if k < 1:
        raise ValueError("k must be >= 1")

    def g(v: int, c: int) -> int:
        # labelings of the subtree below v given the incoming edge label c
        prod_ = 1
        for w in diagram.children(v):
            prod_ *= sum(g(w, c2) for c2 in range(c, k + 1))
        return prod_

    total = 1
    for root in diagram.roots:
        for w in diagram.children(root):
            total *= sum(g(w, c) for c in range(1, k + 1))
    return total


def t_via_diagrams(n: int, k: int, r: int) -> int:
    """t(n, k, r) = (-1)^{n+r} sum over diagrams of wt_k."""
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    return (-1) ** (n + r) * sum(wt_k(c, k) for c in enumerate_cycle_diagrams(n, r))


# ---------------------------------------------------------------------------
# permutation diagrams with colorings

def i_of_sigma(sigma: Sequence[int]) -> frozenset[tuple[int, int]]:
    """The pair set I(sigma) of a permutation with sigma_1 = 1: for each
    position j >= 2 take (sigma_i, sigma_j) with i the largest index < j
    such that sigma_i < sigma_j."""
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("input must be a permutation of [n]")
    if sigma[0] != 1:
        raise ValueError("the permutation must start with 1")
    pairs = set()
    for j in range(1, n):
        i = max(i for i in range(j) if sigma[i] < sigma[j])
        pairs.add((sigma[i], sigma[j]))
    return frozenset(pairs)


def enumerate_colorings(pairs: frozenset[tuple[int, int]], k: int
                        ) -> Iterator[dict[tuple[int, int], int]]:
    """All colorings: pairs containing the point 1 take colors in [1, k-1],
    every other pair in [1, k]."""
    ordered = sorted(pairs)
    ranges = [range(1, k) if 1 in p else range(1, k + 1) for p in ordered]
    for combo in product(*ranges):
        yield dict(zip(ordered, combo))


def diagram_to_decreasing_chain(pairs: frozenset[tuple[int, int]],
                                coloring: Mapping[tuple[int, int], int] | None,
                                n: int, k: int) -> tuple[CoverLabel, ...]:
    """The maximal decreasing chain of the colored diagram: the colored
    pairs sorted strictly decreasing, then (for k >= 2) the final (1,n)_k
    step into the top."""
    if coloring is None:
        coloring = {p: 1 for p in pairs}
    labels = [CoverLabel(a, b, coloring[(a, b)]) for a, b in pairs]
    labels.sort(key=lambda lab: lab.sort_key, reverse=True)
    if k >= 2:
        labels.append(CoverLabel(1, n, k))
    keys = [lab.sort_key for lab in labels]
    assert all(a > b for a, b in zip(keys, keys[1:])), "labels must strictly decrease"
    return tuple(labels)


def apply_chain(n: int, k: int, labels: Sequence[CoverLabel]
                ) -> list[WeightedPartition]:
    """Apply cover labels starting from the bottom element; raises
    ValueError on a non-admissible step.  Returns the visited elements
    (bottom first).  The final (1,n)_k step into the adjoined top, if
    present, must be the last label."""
    pi = bottom(n, k)
    seq = [pi]
    for pos, lab in enumerate(labels):
        if pi.rank == n - 1:
            if k >= 2 and pos == len(labels) - 1 and lab == CoverLabel(1, n, k):
                return seq
            raise ValueError(f"label {lab} past the top of P")
        for cand, res in admissible_covers(pi):
            if cand == lab:
                pi = res
                seq.append(pi)
                break
        else:
            raise ValueError(f"label {lab} is not admissible at step {pos}")
    return seq


# ---------------------------------------------------------------------------
# labeled binary trees

@dataclass(frozen=True)
class LBT:
    """A node of a complete binary tree.  ``value``/``sub`` form the label
    (integer and subscript); the root carries None for both.  Leaves have
    no children."""

    value: int | None
    sub: int | None
    left: "LBT | None" = None
    right: "LBT | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None and self.right is None

    def to_nested(self):
        """Nested-array serialization: [value, sub] for leaves,
        [[value, sub], left, right] for internal nodes."""
        if self.is_leaf:
            return [self.value, self.sub]
        label = None if self.value is None else [self.value, self.sub]
        return [label, self.left.to_nested(), self.right.to_nested()]


def _label_lt(v1: int, s1: int, v2: int, s2: int) -> bool:
    """The linear order on subscripted labels: deeper subscript smaller."""
    return s1 > s2 or (s1 == s2 and v1 < v2)


def lbt_leaves(tree: LBT) -> list[int]:
    if tree.is_leaf:
        return [tree.value]
    return lbt_leaves(tree.left) + lbt_leaves(tree.right)


def _all_ints(tree: LBT) -> list[int]:
    """Integer parts of all labels in the tree (root excluded if unlabeled)."""
    out = [] if tree.value is None else [tree.value]
    if not tree.is_leaf:
        out += _all_ints(tree.left) + _all_ints(tree.right)
    return out


def _right_ints(tree: LBT, is_right: bool) -> list[int]:
    """Integer labels of right-child nodes within the tree (the tree's own
    root included when it is itself a right child)."""
    out = [tree.value] if is_right and tree.value is not None else []
    if not tree.is_leaf:
        out += _right_ints(tree.left, False) + _right_ints(tree.right, True)
    return out


def count_descents(tree: LBT) -> int:
    """Non-root internal nodes whose label is smaller (in the label order)
    than their left child's."""
    if tree.is_leaf:
        return 0
    total = count_descents(tree.left) + count_descents(tree.right)
    if tree.value is not None:
        lc = tree.left
        if _label_lt(tree.value, tree.sub, lc.value, lc.sub):
            total += 1
    return total


def lbt_check(tree: LBT, n: int, k: int) -> list[str]:
    """Violated conditions of the tree definition, empty when valid.

    Structural conditions: leaf integers biject with [n], siblings share a
    subscript with the left integer smaller, subscripts weakly increase
    toward the root, and every labeled internal node draws its integer from
    its subtree (for a right child, from the integers not already used as a
    right-child label strictly inside).  The two extra conditions (descent
    bound, root's left child not 1_k) encode the final step into the
    adjoined top and apply only for k >= 2.  Finally the greedy read-off
    must be a strictly decreasing admissible chain that reconstructs the
    tree; this pins down exactly the trees in bijection with the maximal
    decreasing chains.
    """
    problems: list[str] = []
    if tree.value is not None or tree.sub is not None:
        problems.append("root must be unlabeled")
    leaves = lbt_leaves(tree)
    if sorted(leaves) != list(range(1, n + 1)):
        problems.append("S1: leaf integers must be a bijection with [n]")

    def walk(node: LBT):
        if node is not tree:
            if node.value is None or not 1 <= node.value <= n:
                problems.append("label integer out of range")
            if node.sub is None or not 1 <= node.sub <= k:
                problems.append("label subscript out of range")
        if node.is_leaf:
            return
        lc, rc = node.left, node.right
        if not (lc.value < rc.value and lc.sub == rc.sub):
            problems.append(f"S2: siblings {lc.value}_{lc.sub},{rc.value}_{rc.sub}")
        if node is not tree:
            if node.sub < lc.sub or node.sub < rc.sub:
                problems.append("S3: subscripts must weakly increase to the root")
        # S5 applies to every labeled internal node, by its child position
        for child, is_right in ((lc, False), (rc, True)):
            if child.is_leaf:
                continue
            allowed = set(_all_ints(child.left)) | set(_all_ints(child.right))
            if is_right:
                allowed -= set(_right_ints(child.left, False))
                allowed -= set(_right_ints(child.right, True))
            if child.value not in allowed:
                side = "right" if is_right else "left"
                problems.append(f"S5: {side} child {child.value}_{child.sub} label not allowed")
        walk(lc)
        walk(rc)

    walk(tree)
    if k >= 2:
        if count_descents(tree) > n - 2:
            problems.append("more than n-2 descents")
        lc = tree.left
        if lc is not None and (lc.value, lc.sub) == (1, k):
            problems.append("left child of the root is labeled 1_k")
    if not problems:
        try:
            chain = lbt_to_chain(tree, k)
            if chain_to_lbt(chain, n, k) != tree:
                problems.append("read-off chain does not reconstruct the tree")
        except ValueError as exc:
            problems.append(f"read-off chain invalid: {exc}")
    return problems


def _gen_subtrees(shape, ints: tuple[int, ...], is_right: bool, k: int
                  ) -> Iterator[LBT]:
    """Labeled subtrees of the given shape over the given leaf integers,
    with the subtree root labeled according to its child position."""
    if shape == ():
        for s in range(1, k + 1):
            yield LBT(ints[0], s)
        return
    ls, rs = shape

    def leaves_of(sh) -> int:
        return 1 if sh == () else leaves_of(sh[0]) + leaves_of(sh[1])

    nl = leaves_of(ls)
    rest = list(ints)
    for left_ints in combinations(rest, nl):
        right_ints = tuple(v for v in rest if v not in left_ints)
        for lc in _gen_subtrees(ls, left_ints, False, k):
            for rc in _gen_subtrees(rs, right_ints, True, k):
                if not (lc.value < rc.value and lc.sub == rc.sub):
                    continue
                allowed = set(_all_ints(lc)) | set(_all_ints(rc))
                if is_right:
                    allowed -= set(_right_ints(lc, False))
                    allowed -= set(_right_ints(rc, True))
                for s in range(lc.sub, k + 1):
                    for v in sorted(allowed):
                        yield LBT(v, s, lc, rc)


def _shapes(n: int) -> list:
    if n == 1:
        return [()]
    out = []
    for nl in range(1, n):
        for ls in _shapes(nl):
            for rs in _shapes(n - nl):
                out.append((ls, rs))
    return out


def enumerate_lbt(n: int, k: int) -> list[LBT]:
    """All labeled binary trees for (n, k); |result| = |mu| of the lattice."""
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    out = []
    for shape in _shapes(n):
        ls, rs = shape
        nl = _count_leaves(ls)
        for left_ints in combinations(range(1, n + 1), nl):
            right_ints = tuple(v for v in range(1, n + 1) if v not in left_ints)
            for lc in _gen_subtrees(ls, left_ints, False, k):
                for rc in _gen_subtrees(rs, right_ints, True, k):
                    if not (lc.value < rc.value and lc.sub == rc.sub):
                        continue
                    tree = LBT(None, None, lc, rc)
                    if k >= 2:
                        if (lc.value, lc.sub) == (1, k):
                            continue
                        if count_descents(tree) > n - 2:
                            continue
                    if not lbt_check(tree, n, k):
                        out.append(tree)
    return out


def _count_leaves(shape) -> int:
    return 1 if shape == () else _count_leaves(shape[0]) + _count_leaves(shape[1])


# ---------------------------------------------------------------------------
# the chain <-> tree bijection

def lbt_to_chain(tree: LBT, k: int) -> tuple[CoverLabel, ...]:
    """Read off the maximal decreasing chain: repeatedly take, among the
    internal nodes with two leaf children, the one with the largest label
    pair, emit that label, and shrink the node to a leaf carrying its own
    label; finally (k >= 2) append the (1,n)_k step into the top."""
    n = len(lbt_leaves(tree))
    labels: list[CoverLabel] = []

    def deletable(node: LBT, path: tuple) -> list[tuple[tuple, CoverLabel]]:
        if node.is_leaf:
            return []
        found = []
        if node.left.is_leaf and node.right.is_leaf:
            found.append((path, CoverLabel(node.left.value, node.right.value,
                                           node.left.sub)))
        found += deletable(node.left, path + (0,))
        found += deletable(node.right, path + (1,))
        return found

    def shrink(node: LBT, path: tuple) -> LBT:
        if not path:
            return LBT(node.value, node.sub)
        if path[0] == 0:
            return LBT(node.value, node.sub, shrink(node.left, path[1:]), node.right)
        return LBT(node.value, node.sub, node.left, shrink(node.right, path[1:]))

    current = tree
    for _ in range(n - 1):
        cands = deletable(current, ())
        path, lab = max(cands, key=lambda t: t[1].sort_key)
        labels.append(lab)
        current = shrink(current, path)
    if k >= 2:
        labels.append(CoverLabel(1, n, k))
    keys = [lab.sort_key for lab in labels]
    if not all(a > b for a, b in zip(keys, keys[1:])):
        raise ValueError("tree does not yield a strictly decreasing chain")
    return tuple(labels)


def chain_to_lbt(labels: Sequence[CoverLabel], n: int, k: int) -> LBT:
    """Inverse construction.  ``labels`` must be a maximal decreasing
    0^-to-top chain (checked against the cover relation)."""
    keys = [lab.sort_key for lab in labels]
    if not all(a > b for a, b in zip(keys, keys[1:])):
        raise ValueError("chain labels must strictly decrease")
    elements = apply_chain(n, k, labels)  # validates admissibility/maximality
    merge_labels = list(labels)
    if k >= 2:
        if merge_labels[-1] != CoverLabel(1, n, k):
            raise ValueError("a maximal chain must end with the (1,n)_k step")
        merge_labels.pop()
    if len(merge_labels) != n - 1 or len(elements) != n:
        raise ValueError("chain is not maximal")

    # working trees keyed by their current first-layer block
    pending: dict[frozenset[int], tuple] = {
        frozenset([e]): ("leaf", e) for e in range(1, n + 1)}

    def close(work, value: int, sub: int) -> LBT:
        if work[0] == "leaf":
            assert work[1] == value
            return LBT(value, sub)
        return LBT(value, sub, work[1], work[2])

    for lab in merge_labels:
        a_key = next(key for key in pending if lab.alpha in key)
        b_key = next(key for key in pending if lab.beta in key)
        lc = close(pending.pop(a_key), lab.alpha, lab.layer)
        rc = close(pending.pop(b_key), lab.beta, lab.layer)
        pending[a_key | b_key] = ("node", lc, rc)
    (_, lc, rc), = [pending[key] for key in pending]
    return LBT(None, None, lc, rc)

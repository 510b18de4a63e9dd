"""Weighted (k-layer) set partitions of [n].

A weighted partition is an ordinary set partition of [n] = {1, ..., n}
(layer 1) together with k-1 further layers, each a family of pairwise
disjoint subsets of size >= 2 nested inside the previous layer.  The value
is stored as the refinement multichain (layer 1, ..., layer k) with
singletons omitted from layers >= 2; canonical form sorts every block's
elements ascending and every layer's blocks by minimum element.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from math import factorial
from typing import Iterable, Iterator, Sequence

__all__ = [
    "InvalidPartition",
    "OneLineParseError",
    "WeightedPartition",
    "validate",
    "bottom",
    "edge_set",
    "edge_set_inverse",
    "one_line_print",
    "one_line_parse",
    "enumerate_all",
    "enumerate_by_blocks",
    "to_rooted_tree",
    "from_rooted_tree",
    "tree_shape",
    "tree_class_size",
    "enumerate_tree_shapes",
    "atoms",
    "atom",
    "atom_decomposition",
]

Block = tuple[int, ...]
Layer = tuple[Block, ...]


class InvalidPartition(ValueError):
    """Layered block data violating the weighted-partition invariants.

    ``violations`` is a list of (kind, message) pairs; kinds are
    "coverage", "overlap", "nesting", "singleton" and "malformed".
    """

    def __init__(self, violations: list[tuple[str, str]]):
        self.violations = violations
        super().__init__("; ".join(f"{kind}: {msg}" for kind, msg in violations))


class OneLineParseError(ValueError):
    def __init__(self, text: str, pos: int, expected: str):
        self.pos = pos
        self.expected = expected
        super().__init__(f"parse error at position {pos} in {text!r}: expected {expected}")


@dataclass(frozen=True)
class WeightedPartition:
    n: int
    k: int
    layers: tuple[Layer, ...]

    @property
    def rank(self) -> int:
        """n minus the number of first-layer blocks."""
        return self.n - len(self.layers[0])

    def blocks_at(self, layer: int, with_singletons: bool = False) -> Layer:
        """Blocks of the given layer (1-based); optionally completed with
        the singletons of elements not covered at that layer."""
        blocks = self.layers[layer - 1]
        if not with_singletons:
            return blocks
        covered = {e for b in blocks for e in b}
        extra = tuple((e,) for e in range(1, self.n + 1) if e not in covered)
        return tuple(sorted(blocks + extra, key=lambda b: b[0]))

    def block_of(self, element: int, layer: int) -> Block:
        """The (possibly singleton) block of ``element`` at ``layer``."""
        for b in self.layers[layer - 1]:
            if element in b:
                return b
        return (element,)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "layers": [[list(b) for b in layer] for layer in self.layers],
        }

    def canonical_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "WeightedPartition":
        return validate(data["n"], data["k"], data["layers"])

    def __str__(self) -> str:
        return one_line_print(self)


def validate(n: int, k: int, layers: Iterable[Iterable[Iterable[int]]]) -> WeightedPartition:
    """Check and canonicalize layered block data.

    Raises :class:`InvalidPartition` listing every violated invariant.
    """
    if n < 0 or k < 1:
        raise InvalidPartition([("malformed", f"need n >= 0 and k >= 1, got n={n}, k={k}")])
    raw = [list(layer) for layer in layers]
    if len(raw) != k:
        raise InvalidPartition([("malformed", f"expected {k} layers, got {len(raw)}")])

    violations: list[tuple[str, str]] = []
    canon: list[Layer] = []
    for idx, layer in enumerate(raw, start=1):
        blocks = []
        for b in layer:
            blk = sorted(b)
            if not blk:
                violations.append(("malformed", f"empty block in layer {idx}"))
                continue
            if any(not isinstance(e, int) or not 1 <= e <= n for e in blk):
                violations.append(("malformed", f"element out of [1,{n}] in layer {idx}: {blk}"))
                continue
            if len(set(blk)) != len(blk):
                violations.append(("overlap", f"repeated element within block {blk} of layer {idx}"))
                continue
            blocks.append(tuple(blk))
        blocks.sort(key=lambda b: b[0])
        canon.append(tuple(blocks))

        seen: dict[int, Block] = {}
        for b in blocks:
            for e in b:
                if e in seen:
                    violations.append(
                        ("overlap", f"element {e} in two blocks of layer {idx}: {seen[e]} and {b}"))
                seen[e] = b
        if idx == 1:
            missing = [e for e in range(1, n + 1) if e not in seen]
            if missing:
                violations.append(("coverage", f"layer 1 misses elements {missing}"))
        else:
            for b in blocks:
                if len(b) == 1:
                    violations.append(("singleton", f"singleton block {b} in layer {idx}"))
            prev = canon[idx - 2]
            for b in blocks:
                if not any(set(b) <= set(p) for p in prev):
                    violations.append(
                        ("nesting", f"block {b} of layer {idx} not inside one block of layer {idx-1}"))
    if violations:
        raise InvalidPartition(violations)
    return WeightedPartition(n, k, tuple(canon))


def bottom(n: int, k: int) -> WeightedPartition:
    """The all-singletons partition (the bottom element)."""
    layer1 = tuple((e,) for e in range(1, n + 1))
    return WeightedPartition(n, k, (layer1,) + ((),) * (k - 1))


# ---------------------------------------------------------------------------
# edge sets (circular presentation)

def edge_set(pi: WeightedPartition) -> frozenset[tuple[int, int, int]]:
    """Triples (i, j, l): the pair i < j shares a block at layer l and at no
    deeper layer."""
    deepest: dict[tuple[int, int], int] = {}
    for l in range(1, pi.k + 1):
        for b in pi.layers[l - 1]:
            for a_idx in range(len(b)):
                for b_idx in range(a_idx + 1, len(b)):
                    deepest[(b[a_idx], b[b_idx])] = l
    return frozenset((i, j, l) for (i, j), l in deepest.items())


def edge_set_inverse(edges: Iterable[tuple[int, int, int]], n: int, k: int) -> WeightedPartition:
    """Rebuild the weighted partition whose deepest-common-layer edge set is
    ``edges``: layer l blocks are the size >= 2 connected components of the
    edges with label >= l (layer 1 keeps singletons)."""
    edges = list(edges)
    layers = []
    for l in range(1, k + 1):
        parent = {e: e for e in range(1, n + 1)}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j, lab in edges:
            if lab >= l:
                parent[find(i)] = find(j)
        comps: dict[int, list[int]] = {}
        for e in range(1, n + 1):
            comps.setdefault(find(e), []).append(e)
        blocks = [tuple(sorted(c)) for c in comps.values()
                  if len(c) >= 2 or l == 1]
        layers.append(blocks)
    return validate(n, k, layers)


# ---------------------------------------------------------------------------
# one-line notation

def _persistence(pi: WeightedPartition) -> dict[Block, int]:
    """Map each distinct recorded set (including layer-1 blocks) to the
    deepest layer through which that exact set is a block."""
    out: dict[Block, int] = {}
    for l in range(1, pi.k + 1):
        for b in pi.layers[l - 1]:
            out[b] = l
    # a set must persist through contiguous layers; sanity-check
    for b, last in out.items():
        first = next(l for l in range(1, pi.k + 1) if b in pi.layers[l - 1])
        assert all(b in pi.layers[l - 1] for l in range(first, last + 1))
    return out


def one_line_print(pi: WeightedPartition) -> str:
    persist = _persistence(pi)
    sets_by_size = sorted((s for s in persist), key=len)

    def parent_of(s: Block) -> Block | None:
        cand = [t for t in persist if len(t) > len(s) and set(s) < set(t)]
        if not cand:
            return None
        return min(cand, key=len)

    children: dict[Block | None, list[Block]] = {}
    for s in sets_by_size:
        children.setdefault(parent_of(s), []).append(s)

    sep = "," if pi.n >= 10 else ""

    def render(s: Block) -> str:
        kids = sorted(children.get(s, []), key=lambda b: b[0])
        in_kid = {e for c in kids for e in c}
        items: list[tuple[int, str, bool]] = []  # (sort key, text, is_group)
        for c in kids:
            items.append((c[0], f"({render(c)})^{persist[c]}", True))
        for e in s:
            if e not in in_kid:
                items.append((e, str(e), False))
        items.sort()
        parts: list[str] = []
        for i, (_, text, _is_group) in enumerate(items):
            if i and sep:
                parts.append(sep)
            elif i and items[i - 1][2] and text[0].isdigit():
                parts.append(" ")  # keep exponent digits apart from elements
            parts.append(text)
        return "".join(parts)

    pieces = []
    for b in pi.layers[0]:
        inner = render(b)
        pieces.append(f"({inner})^{persist[b]}" if persist[b] >= 2 else inner)
    return "/".join(pieces)


@dataclass
class _Group:
    items: list  # of _Group | _Elem
    exponent: int
    pos: int

    def elements(self) -> set[int]:
        out: set[int] = set()
        for it in self.items:
            out |= it.elements() if isinstance(it, _Group) else {it.value}
        return out


@dataclass
class _Elem:
    value: int
    exponent: int | None  # alias form e^L
    pos: int


def _tokenize(text: str, n: int) -> list[tuple[str, object, int]]:
    toks: list[tuple[str, object, int]] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace() or ch == ",":
            i += 1
            continue
        if ch in "(/)":
            toks.append((ch, ch, i))
            i += 1
            continue
        if ch == "^":
            # for n <= 9 the exponent is a single digit (the next digit would
            # be an element, as in "(46)^35" meaning "(46)^3 5")
            j = i + 1
            limit = i + 2 if n <= 9 else len(text)
            while j < min(limit, len(text)) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise OneLineParseError(text, i + 1, "exponent digit after '^'")
            toks.append(("^", int(text[i + 1:j]), i))
            i = j
            continue
        if ch.isdigit():
            if n >= 10:
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                toks.append(("num", int(text[i:j]), i))
                i = j
            else:
                toks.append(("num", int(ch), i))
                i += 1
            continue
        raise OneLineParseError(text, i, "element, '(', ')', '^', '/' or ','")
    return toks


def one_line_parse(text: str, n: int, k: int) -> WeightedPartition:
    """Parse one-line notation.

    Canonical form uses parenthesized groups "(items)^L"; the element-
    exponent shorthand "e^L" is accepted as an alias: the annotated element
    joins the union of its persistent sibling items at every layer 2..L.
    """
    toks = _tokenize(text, n)
    pos = 0

    def peek() -> tuple[str, object, int] | None:
        return toks[pos] if pos < len(toks) else None

    def parse_items(depth: int) -> list:
        nonlocal pos
        items: list = []
        while True:
            t = peek()
            if t is None or t[0] in ("/", ")"):
                break
            if t[0] == "num":
                pos += 1
                expo = None
                nxt = peek()
                if nxt is not None and nxt[0] == "^":
                    expo = int(nxt[1])  # type: ignore[arg-type]
                    pos += 1
                items.append(_Elem(int(t[1]), expo, t[2]))  # type: ignore[arg-type]
            elif t[0] == "(":
                start = t[2]
                pos += 1
                inner = parse_items(depth + 1)
                t2 = peek()
                if t2 is None or t2[0] != ")":
                    raise OneLineParseError(text, t2[2] if t2 else len(text), "')'")
                pos += 1
                t3 = peek()
                if t3 is None or t3[0] != "^":
                    raise OneLineParseError(text, t3[2] if t3 else len(text), "'^'")
                pos += 1
                if not inner:
                    raise OneLineParseError(text, start + 1, "items inside '(...)'")
                items.append(_Group(inner, int(t3[1]), start))  # type: ignore[arg-type]
            else:
                raise OneLineParseError(text, t[2], "element or '('")
        return items

    blocks: list[list] = []
    while True:
        items = parse_items(0)
        if not items:
            t = peek()
            raise OneLineParseError(text, t[2] if t else len(text), "block items")
        blocks.append(items)
        t = peek()
        if t is None:
            break
        if t[0] == "/":
            pos += 1
            continue
        raise OneLineParseError(text, t[2], "'/' or end of input")

    layers: list[list[tuple[int, ...]]] = [[] for _ in range(k)]

    def emit(items: list, parent_end: int) -> set[int]:
        """Record the blocks contributed by ``items`` (the inside of a group
        persisting through layer ``parent_end``); returns the element set."""
        all_elems: set[int] = set()
        max_l = parent_end
        for it in items:
            if isinstance(it, _Group):
                if it.exponent <= parent_end:
                    raise OneLineParseError(
                        text, it.pos, f"group exponent > {parent_end} (strictly increasing inward)")
                max_l = max(max_l, it.exponent)
                all_elems |= it.elements()
            else:
                if it.exponent is not None and it.exponent <= parent_end:
                    raise OneLineParseError(
                        text, it.pos, f"element exponent > {parent_end}")
                if it.exponent is not None:
                    max_l = max(max_l, it.exponent)
                all_elems.add(it.value)
        for l in range(parent_end + 1, min(max_l, k) + 1):
            group_units = [it for it in items
                           if isinstance(it, _Group) and it.exponent >= l]
            elem_units = [it for it in items
                          if isinstance(it, _Elem) and it.exponent is not None and it.exponent >= l]
            if elem_units:
                merged: set[int] = set()
                for g in group_units:
                    merged |= g.elements()
                merged |= {e.value for e in elem_units}
                if len(merged) < 2:
                    raise OneLineParseError(
                        text, elem_units[0].pos,
                        "element exponent would create a singleton block")
                layers[l - 1].append(tuple(sorted(merged)))
            else:
                for g in group_units:
                    layers[l - 1].append(tuple(sorted(g.elements())))
        for it in items:
            if isinstance(it, _Group):
                emit(it.items, it.exponent)
        return all_elems

    for items in blocks:
        if len(items) == 1 and isinstance(items[0], _Group):
            g = items[0]
            block_elems = g.elements()
            layers[0].append(tuple(sorted(block_elems)))
            for l in range(2, min(g.exponent, k) + 1):
                layers[l - 1].append(tuple(sorted(block_elems)))
            emit(g.items, g.exponent)
        else:
            block_elems = emit(items, 1)
            layers[0].append(tuple(sorted(block_elems)))
    return validate(n, k, layers)


# ---------------------------------------------------------------------------
# enumeration

def _set_partitions(universe: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    if not universe:
        yield []
        return
    first, rest = universe[0], list(universe[1:])
    for mask in range(1 << len(rest)):
        block = (first,) + tuple(rest[i] for i in range(len(rest)) if mask >> i & 1)
        remaining = [rest[i] for i in range(len(rest)) if not mask >> i & 1]
        for others in _set_partitions(remaining):
            yield [block] + others


def _disjoint_families(universe: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """Families of pairwise disjoint subsets of size >= 2 (possibly empty
    family; subsets need not cover the universe)."""
    if len(universe) < 2:
        yield []
        return
    first, rest = universe[0], list(universe[1:])
    # first not used in any subset
    yield from _disjoint_families(rest)
    # first in a subset with a non-empty selection from the rest
    for mask in range(1, 1 << len(rest)):
        block = (first,) + tuple(rest[i] for i in range(len(rest)) if mask >> i & 1)
        remaining = [rest[i] for i in range(len(rest)) if not mask >> i & 1]
        for others in _disjoint_families(remaining):
            yield [block] + others


def _deep_entries(block: Sequence[int], d: int, k: int) -> Iterator[list[tuple[int, Block]]]:
    """All ways to nest layers d..k inside ``block``; yields lists of
    (layer, block) contributions."""
    if d > k:
        yield []
        return
    for family in _disjoint_families(list(block)):
        for combo in product(*(_deep_entries(c, d + 1, k) for c in family)):
            entries = [(d, c) for c in family]
            for sub in combo:
                entries.extend(sub)
            yield entries


def enumerate_all(n: int, k: int) -> list[WeightedPartition]:
    """Every weighted partition of [n] with k layers, in the canonical
    deterministic order (lexicographic on the canonical JSON form)."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    out = []
    universe = list(range(1, n + 1))
    for p1 in _set_partitions(universe):
        for combo in product(*(_deep_entries(b, 2, k) for b in p1)):
            layers: list[list[Block]] = [sorted(p1)] + [[] for _ in range(k - 1)]
            for entries in combo:
                for l, c in entries:
                    layers[l - 1].append(c)
            for layer in layers[1:]:
                layer.sort()
            out.append(WeightedPartition(
                n, k, tuple(tuple(layer) for layer in layers)))
    out.sort(key=WeightedPartition.canonical_json)
    return out


def enumerate_by_blocks(n: int, k: int, r: int) -> list[WeightedPartition]:
    """The weighted partitions with exactly r first-layer blocks."""
    return [pi for pi in enumerate_all(n, k) if len(pi.layers[0]) == r]


# ---------------------------------------------------------------------------
# k-level rooted trees
#
# A labeled tree is represented as nested frozensets: a leaf is an int, an
# internal node the frozenset of its children.  Distinct leaf labels make
# sibling subtrees distinct, so frozensets lose nothing, and exchanging
# sibling subtrees leaves the value unchanged — exactly the equivalence the
# bijection wants.

Tree = frozenset


def to_rooted_tree(pi: WeightedPartition):
    """The k-level rooted tree: depth-d nodes are the layer-d blocks
    (singletons included), leaves at depth k+1 carry the elements."""

    def subtree(block: Block, depth: int):
        if depth == pi.k:
            return frozenset(block)  # children are the leaf elements
        kids = []
        rest = set(block)
        for c in pi.layers[depth]:  # layer depth+1 blocks
            if set(c) <= set(block):
                kids.append(subtree(c, depth + 1))
                rest -= set(c)
        for e in sorted(rest):
            kids.append(subtree((e,), depth + 1))
        return frozenset(kids)

    return frozenset(subtree(b, 1) for b in pi.layers[0])


def _leaf_depths(tree, depth: int = 0) -> Iterator[tuple[int, int]]:
    for child in tree:
        if isinstance(child, int):
            yield child, depth + 1
        else:
            yield from _leaf_depths(child, depth + 1)


def from_rooted_tree(tree) -> WeightedPartition:
    """Inverse of :func:`to_rooted_tree`; rejects trees whose leaves are not
    all at the same depth k+1."""
    info = list(_leaf_depths(tree))
    if not info:
        raise InvalidPartition([("malformed", "tree has no leaves")])
    depths = {d for _, d in info}
    if len(depths) != 1:
        raise InvalidPartition([("malformed", f"unequal leaf depths {sorted(depths)}")])
    k = depths.pop() - 1
    labels = sorted(e for e, _ in info)
    n = len(labels)
    layers: list[list[Block]] = [[] for _ in range(k)]

    def walk(node, depth: int) -> tuple[int, ...]:
        if isinstance(node, int):
            return (node,)
        leaves: list[int] = []
        for child in node:
            leaves.extend(walk(child, depth + 1))
        block = tuple(sorted(leaves))
        if 1 <= depth <= k and (depth == 1 or len(block) >= 2):
            layers[depth - 1].append(block)
        return block

    walk(tree, 0)
    return validate(n, k, layers)


def tree_shape(tree):
    """Unlabeled shape: leaves become (), nodes sorted tuples of child
    shapes."""
    if isinstance(tree, int):
        return ()
    return tuple(sorted(tree_shape(c) for c in tree))


def tree_class_size(shape) -> int:
    """Number of leaf labelings of a shape up to sibling-subtree exchange:
    n! * prod over nodes of 1 / prod_j m_j!, where the m_j are the
    multiplicities of repeated child shapes."""

    def leaves(s) -> int:
        if s == ():
            return 1
        return sum(leaves(c) for c in s)

    def denom(s) -> int:
        if s == ():
            return 1
        mult: dict = {}
        d = 1
        for c in s:
            mult[c] = mult.get(c, 0) + 1
            d *= denom(c)
        for m in mult.values():
            d *= factorial(m)
        return d

    n = leaves(shape)
    q, rem = divmod(factorial(n), denom(shape))
    assert rem == 0, "class size must be an integer"
    return q


def enumerate_tree_shapes(n: int, k: int) -> dict:
    """Map shape -> number of weighted partitions realizing it."""
    counts: dict = {}
    for pi in enumerate_all(n, k):
        s = tree_shape(to_rooted_tree(pi))
        counts[s] = counts.get(s, 0) + 1
    return counts


# ---------------------------------------------------------------------------
# atoms

def atom(n: int, k: int, i: int, j: int, layer: int) -> WeightedPartition:
    """The rank-1 element whose only non-singleton block is {i, j}
    persisting through ``layer``."""
    if not (1 <= i < j <= n and 1 <= layer <= k):
        raise ValueError("need 1 <= i < j <= n and 1 <= layer <= k")
    layer1 = tuple(sorted([(i, j)] + [(e,) for e in range(1, n + 1) if e not in (i, j)]))
    rest = tuple(((i, j),) if l <= layer else () for l in range(2, k + 1))
    return WeightedPartition(n, k, (layer1,) + rest)


def atoms(n: int, k: int) -> list[WeightedPartition]:
    """All k·n·(n-1)/2 rank-1 elements."""
    if n < 2:
        return []
    return [atom(n, k, i, j, l)
            for i in range(1, n) for j in range(i + 1, n + 1)
            for l in range(1, k + 1)]


def atom_decomposition(pi: WeightedPartition) -> set[WeightedPartition]:
    """The atoms below pi: one per edge (i, j, l) of its edge set."""
    return {atom(pi.n, pi.k, i, j, l) for i, j, l in edge_set(pi)}

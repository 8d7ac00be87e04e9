"""Planar rooted trees with levelled vertex labels.

Trees carry integer labels ``1..n`` on internal vertices and distinct
names on leaves.  Four rewrite rules (stump collapse, stump removal, unary
removal, same-label contraction) define a canonical form; the order
compares, for every leaf pair, the label at the lowest common vertex, with
strictness whenever the planar order of the pair differs.  Grafting at a
leaf followed by canonicalisation is the operad composition, and reading
off planar precedence with meet labels maps a tree to a weighted
tournament.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from . import graphs
from .graphs import WeightedTournament
from .limits import DEFAULT_CAPS, Caps


class TreeError(ValueError):
    """Malformed tree or incompatible operands."""


@dataclass(frozen=True)
class Leaf:
    name: str


@dataclass(frozen=True)
class Node:
    label: int
    children: tuple["PTree", ...]

    def __post_init__(self) -> None:
        if self.label < 1:
            raise TreeError("labels start at 1")


PTree = Union[Leaf, Node]

STUMP = Node(1, ())


def leaf(name: str) -> Leaf:
    return Leaf(name)


def node(label: int, children: Iterable[PTree]) -> Node:
    return Node(label, tuple(children))


def corolla(label: int, names: Iterable[str]) -> PTree:
    return canonicalize(Node(label, tuple(Leaf(n) for n in names)))


def leaves(tree: PTree) -> tuple[str, ...]:
    """Leaf names in planar (left to right) order."""
    if isinstance(tree, Leaf):
        return (tree.name,)
    out: list[str] = []
    for child in tree.children:
        out.extend(leaves(child))
    return tuple(out)


def max_label(tree: PTree) -> int:
    if isinstance(tree, Leaf):
        return 1
    inner = max((max_label(c) for c in tree.children), default=1)
    return max(tree.label, inner)


def validate(tree: PTree) -> None:
    names = leaves(tree)
    if len(set(names)) != len(names):
        raise TreeError("leaf names must be distinct")


def canonicalize(tree: PTree) -> PTree:
    """Normal form: no stumps (except the lone stump), no unary vertices,
    no equal-label parent/child edges.  Idempotent."""
    validate(tree)
    result = _rewrite(tree)
    return STUMP if result is None else result


def _rewrite(tree: PTree) -> PTree | None:
    # Returns None for subtrees that vanish (stumps below the root).
    if isinstance(tree, Leaf):
        return tree
    kids: list[PTree] = []
    for child in tree.children:
        reduced = _rewrite(child)
        if reduced is None:
            continue
        kids.append(reduced)
    if not kids:
        return None
    if len(kids) == 1:
        return kids[0]
    flat: list[PTree] = []
    for child in kids:
        if isinstance(child, Node) and child.label == tree.label:
            flat.extend(child.children)
        else:
            flat.append(child)
    return Node(tree.label, tuple(flat))


def is_canonical(tree: PTree) -> bool:
    return canonicalize(tree) == tree


def _join_labels(tree: PTree) -> dict[tuple[str, str], int]:
    """Label of the lowest common vertex, per unordered leaf pair."""
    if isinstance(tree, Leaf):
        return {}
    table: dict[tuple[str, str], int] = {}
    blocks = [leaves(c) for c in tree.children]
    for child in tree.children:
        table.update(_join_labels(child))
    for i, j in itertools.combinations(range(len(blocks)), 2):
        for a in blocks[i]:
            for b in blocks[j]:
                key = (a, b) if a <= b else (b, a)
                table[key] = tree.label
    return table


def _precedence(tree: PTree) -> dict[str, int]:
    return {name: i for i, name in enumerate(leaves(tree))}


def tree_leq(t1: PTree, t2: PTree) -> bool:
    """Compare by meet labels, strictly where the planar order disagrees."""
    l1, l2 = leaves(t1), leaves(t2)
    if set(l1) != set(l2):
        raise TreeError("trees must share their leaf set")
    if not l1:
        raise TreeError("cannot compare trees without leaves")
    joins1, joins2 = _join_labels(t1), _join_labels(t2)
    pos1, pos2 = _precedence(t1), _precedence(t2)
    for key, w1 in joins1.items():
        w2 = joins2[key]
        a, b = key
        same_side = (pos1[a] < pos1[b]) == (pos2[a] < pos2[b])
        if same_side:
            if w1 > w2:
                return False
        elif w1 >= w2:
            return False
    return True


def tree_compose(t: PTree, a: str, s: PTree) -> PTree:
    """Graft ``s`` onto the leaf ``a`` of ``t`` and canonicalise."""
    if a not in leaves(t):
        raise TreeError(f"leaf {a!r} not present")
    clash = set(leaves(t)) - {a}
    if clash & set(leaves(s)):
        raise TreeError("leaf sets must be disjoint apart from the slot")
    return canonicalize(_graft(t, a, s))


def _graft(t: PTree, a: str, s: PTree) -> PTree:
    if isinstance(t, Leaf):
        return s if t.name == a else t
    return Node(t.label, tuple(_graft(c, a, s) for c in t.children))


def tree_relabel(t: PTree, mapping: Mapping[str, str]) -> PTree:
    if isinstance(t, Leaf):
        return Leaf(mapping[t.name])
    return Node(t.label, tuple(tree_relabel(c, mapping) for c in t.children))


def mu(t: PTree, max_weight: int | None = None) -> WeightedTournament:
    """Tournament directed by planar precedence and weighted by meet labels."""
    names = leaves(t)
    if not names:
        raise TreeError("tree has no leaves")
    n = max_label(t) if max_weight is None else max_weight
    joins = _join_labels(t)
    pos = _precedence(t)
    arcs = []
    for a, b in itertools.combinations(sorted(names), 2):
        w = joins[(a, b)]
        if pos[a] < pos[b]:
            arcs.append((a, b, w))
        else:
            arcs.append((b, a, w))
    return graphs.make_graph(names, arcs, n, graphs.ACYCLIC)


def is_decomposable_graph(g: WeightedTournament) -> bool:
    """Recursive cut form: some position in the underlying order where all
    crossing edges share the cut edge's weight, both halves decomposable."""
    if not graphs.is_acyclic(g):
        raise TreeError("decomposability is defined for acyclic tournaments")
    order = graphs.underlying_order(g)

    def split(lo: int, hi: int) -> bool:
        if hi - lo <= 1:
            return True
        for cut in range(lo, hi - 1):
            w = g.weight(order[cut], order[cut + 1])
            if all(
                g.weight(order[p], order[q]) == w
                for p in range(lo, cut + 1)
                for q in range(cut + 1, hi)
            ):
                if split(lo, cut + 1) and split(cut + 1, hi):
                    return True
        return False

    return split(0, len(order))


def decomposable_paths_oracle(g: WeightedTournament) -> bool:
    """Path form of decomposability, kept as an independent cross-check."""
    if not graphs.is_acyclic(g):
        raise TreeError("decomposability is defined for acyclic tournaments")
    order = graphs.underlying_order(g)
    indices = range(len(order))
    for length in range(2, len(order) + 1):
        for path in itertools.combinations(indices, length):
            ok = False
            for i in range(length - 1):
                if all(
                    g.weight(order[path[p]], order[path[q]])
                    == g.weight(order[path[i]], order[path[i + 1]])
                    for p in range(i + 1)
                    for q in range(i + 1, length)
                ):
                    ok = True
                    break
            if not ok:
                return False
    return True


def _ordered_partitions(items: tuple[str, ...]) -> Iterator[tuple[tuple[str, ...], ...]]:
    """Ordered set partitions into at least two nonempty blocks."""
    n = len(items)
    if n < 2:
        return
    # Distribute items over k ordered blocks; blocks collect in item order
    # per assignment, and every surjective assignment appears exactly once.
    for k in range(2, n + 1):
        for assign in itertools.product(range(k), repeat=n):
            if set(assign) != set(range(k)):
                continue
            blocks: list[list[str]] = [[] for _ in range(k)]
            for item, slot in zip(items, assign):
                blocks[slot].append(item)
            yield tuple(tuple(b) for b in blocks)


def enumerate_trees(
    vertices: Iterable[str], n: int, caps: Caps = DEFAULT_CAPS
) -> list[PTree]:
    """All canonical trees with the given leaf set and labels up to ``n``."""
    names = tuple(sorted(vertices))
    if not names:
        raise TreeError("need at least one leaf")
    caps.check_vertices(len(names))
    caps.check_weight(n)
    counter = [0]

    def gen(block: tuple[str, ...], forbidden: int) -> list[PTree]:
        if len(block) == 1:
            return [Leaf(block[0])]
        out: list[PTree] = []
        for label in range(1, n + 1):
            if label == forbidden:
                continue
            for parts in _ordered_partitions(block):
                for combo in itertools.product(
                    *(gen(part, label) for part in parts)
                ):
                    counter[0] += 1
                    caps.check_candidates(counter[0])
                    out.append(Node(label, combo))
        return out

    return gen(names, 0)


def tree_to_json(t: PTree) -> dict:
    if isinstance(t, Leaf):
        return {"leaf": t.name}
    return {"label": t.label, "children": [tree_to_json(c) for c in t.children]}


def tree_from_json(data: Mapping) -> PTree:
    try:
        if "leaf" in data:
            return Leaf(data["leaf"])
        return Node(
            int(data["label"]),
            tuple(tree_from_json(c) for c in data["children"]),
        )
    except (KeyError, TypeError) as exc:
        raise TreeError(f"malformed tree JSON: {exc}") from exc

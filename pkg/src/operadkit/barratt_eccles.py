"""Sequences of linear orders with pair-switch weights.

A simplex here is a nonempty sequence of linear orders on a finite set; the
weight of a pair is one plus the number of consecutive steps that swap the
pair's relative order.  Bounding all weights by ``n`` carves out a finite
filtration stage whose nondegenerate part this module enumerates, along
with the strict morphism onto weighted tournaments and its section.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import graphs
from .graphs import WeightedTournament
from .limits import DEFAULT_CAPS, Caps
from .topology import FiniteSSet, build_sset

Order = tuple[str, ...]


class SimplexError(ValueError):
    """Malformed order sequence or incompatible operands."""


@dataclass(frozen=True)
class BESimplex:
    """A nonempty sequence of linear orders on one vertex set."""

    orders: tuple[Order, ...]

    def __post_init__(self) -> None:
        if not self.orders:
            raise SimplexError("need at least one order")
        base = tuple(sorted(self.orders[0]))
        if len(set(base)) != len(base) or not base:
            raise SimplexError("orders must be permutations of a nonempty set")
        for line in self.orders:
            if tuple(sorted(line)) != base:
                raise SimplexError("all orders must permute the same set")

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(sorted(self.orders[0]))

    @property
    def dim(self) -> int:
        return len(self.orders) - 1


def simplex(orders: Iterable[Iterable[str]]) -> BESimplex:
    return BESimplex(tuple(tuple(line) for line in orders))


def _before(order: Order, a: str, b: str) -> bool:
    return order.index(a) < order.index(b)


def be_weight(x: BESimplex, a: str, b: str) -> int:
    """One plus the number of consecutive steps that switch a and b."""
    if a == b:
        raise SimplexError("weight needs two distinct vertices")
    switches = sum(
        _before(x.orders[i], a, b) != _before(x.orders[i + 1], a, b)
        for i in range(len(x.orders) - 1)
    )
    return 1 + switches


def max_pair_weight(x: BESimplex) -> int:
    verts = x.vertices
    if len(verts) < 2:
        return 1
    return max(be_weight(x, a, b) for a, b in itertools.combinations(verts, 2))


def in_gamma_n(x: BESimplex, n: int) -> bool:
    """True iff all pairwise weights are at most n."""
    return max_pair_weight(x) <= n


def be_face(x: BESimplex, i: int) -> BESimplex:
    if not 0 <= i <= x.dim:
        raise SimplexError(f"face index {i} out of range")
    if x.dim == 0:
        raise SimplexError("a vertex has no faces")
    return BESimplex(x.orders[:i] + x.orders[i + 1 :])


def be_degeneracy(x: BESimplex, j: int) -> BESimplex:
    if not 0 <= j <= x.dim:
        raise SimplexError(f"degeneracy index {j} out of range")
    return BESimplex(x.orders[: j + 1] + x.orders[j:])


def is_nondegenerate(x: BESimplex) -> bool:
    return all(
        x.orders[i] != x.orders[i + 1] for i in range(len(x.orders) - 1)
    )


def nondegenerate_core(x: BESimplex) -> BESimplex:
    """Collapse runs of equal consecutive orders."""
    kept = [x.orders[0]]
    for line in x.orders[1:]:
        if line != kept[-1]:
            kept.append(line)
    return BESimplex(tuple(kept))


def _compose_order(left: Order, a: str, right: Order) -> Order:
    idx = left.index(a)
    return left[:idx] + right + left[idx + 1 :]


def be_compose(x: BESimplex, a: str, y: BESimplex) -> BESimplex:
    """Substitute y's orders into the slot ``a`` of x, row by row."""
    if x.dim != y.dim:
        raise SimplexError("operands must have equal dimension")
    if a not in x.vertices:
        raise SimplexError(f"vertex {a!r} not present")
    if set(x.vertices) & set(y.vertices) - {a} != set():
        raise SimplexError("vertex sets must be disjoint apart from the slot")
    rows = tuple(
        _compose_order(lx, a, ly) for lx, ly in zip(x.orders, y.orders)
    )
    return BESimplex(rows)


def be_relabel(x: BESimplex, mapping: Mapping[str, str]) -> BESimplex:
    if set(mapping) != set(x.vertices) or len(set(mapping.values())) != len(
        x.vertices
    ):
        raise SimplexError("mapping must be a bijection on the vertex set")
    return BESimplex(
        tuple(tuple(mapping[v] for v in line) for line in x.orders)
    )


def be_gamma(x: BESimplex, max_weight: int | None = None) -> WeightedTournament:
    """Tournament directed by the first order and weighted by pair switches."""
    n = max_pair_weight(x) if max_weight is None else max_weight
    arcs = []
    for a, b in itertools.combinations(x.vertices, 2):
        w = be_weight(x, a, b)
        if _before(x.orders[0], a, b):
            arcs.append((a, b, w))
        else:
            arcs.append((b, a, w))
    return graphs.make_graph(x.vertices, arcs, n, graphs.ACYCLIC)


def order_of_graph(g: WeightedTournament) -> Order:
    return graphs.underlying_order(g)


def be_sigma(x: BESimplex, g: WeightedTournament) -> BESimplex:
    """Prepend the underlying order of ``g``; a section of the drop-first map."""
    if tuple(sorted(g.vertices)) != x.vertices:
        raise SimplexError("vertex sets differ")
    if not graphs.leq(be_gamma(x, g.max_weight), g):
        raise SimplexError("simplex does not lie over the graph")
    return BESimplex((order_of_graph(g),) + x.orders)


def enumerate_gamma_n(
    vertices: Iterable[str],
    n: int,
    g: WeightedTournament | None = None,
    caps: Caps = DEFAULT_CAPS,
) -> FiniteSSet:
    """All nondegenerate simplices with weights bounded by ``n``.

    When ``g`` is given, keep only simplices whose tournament lies at or
    below it.  Each nondegenerate step switches at least one pair and each
    pair may switch at most n-1 times, so the depth-first walk terminates.
    """
    verts = tuple(sorted(vertices))
    caps.check_vertices(len(verts))
    caps.check_weight(n)
    if g is not None and (
        tuple(sorted(g.vertices)) != verts or g.max_weight != n
    ):
        raise SimplexError("filter graph must live on the same vertices and bound")
    all_orders = [tuple(p) for p in itertools.permutations(verts)]
    pairs = list(itertools.combinations(verts, 2))

    def admissible(x: BESimplex) -> bool:
        for a, b in pairs:
            w = be_weight(x, a, b)
            if w > n:
                return False
            if g is not None:
                tail, _head, bound = g.arc(a, b)
                starts_along = _before(x.orders[0], a, b) == (tail == a)
                if w > (bound if starts_along else bound - 1):
                    return False
        return True

    levels: list[list[BESimplex]] = []
    frontier = [
        BESimplex((o,)) for o in all_orders if admissible(BESimplex((o,)))
    ]
    total = 0
    while frontier:
        total += len(frontier)
        caps.check_cells(total)
        levels.append(frontier)
        nxt = []
        for x in frontier:
            for o in all_orders:
                if o == x.orders[-1]:
                    continue
                y = BESimplex(x.orders + (o,))
                if admissible(y):
                    nxt.append(y)
        frontier = nxt

    def face(_k: int, s: BESimplex, i: int) -> BESimplex:
        return be_face(s, i)

    return build_sset(
        levels, face, lambda _k, s: not is_nondegenerate(s), caps=caps
    )


def simplex_to_json(x: BESimplex) -> dict:
    return {"orders": [list(line) for line in x.orders]}


def simplex_from_json(data: Mapping) -> BESimplex:
    try:
        return simplex(data["orders"])
    except (KeyError, TypeError) as exc:
        raise SimplexError(f"malformed simplex JSON: {exc}") from exc

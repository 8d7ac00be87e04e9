"""Weighted tournaments: complete directed graphs with weighted edges.

A weighted tournament on a finite vertex set carries exactly one directed
edge per unordered pair, each labelled with a weight in ``1..max_weight``.
The ``acyclic`` variant requires the directions to admit a linear order;
the ``extended`` variant only forbids directed cycles of constant weight.
Tournaments on a fixed vertex set form a poset: a graph shrinks by lowering
weights, and an edge may flip direction only together with a strict drop.
Substituting a tournament for a vertex of another gives the operad
composition; the constructions around cycle reduction and one-point fiber
extensions live here as well.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .limits import DEFAULT_CAPS, Caps

Arc = tuple[str, str, int]

ACYCLIC = "acyclic"
EXTENDED = "extended"


class GraphError(ValueError):
    """Malformed tournament or incompatible operands."""


def _pair_key(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class WeightedTournament:
    """Immutable weighted tournament.

    ``arcs`` holds one ``(tail, head, weight)`` triple per unordered vertex
    pair, sorted by the pair ``(min, max)``.  Use :func:`make_graph` to build
    one from loose data; the constructor validates shape and the variant
    condition.
    """

    vertices: tuple[str, ...]
    arcs: tuple[Arc, ...]
    max_weight: int
    variant: str

    def __post_init__(self) -> None:
        if not self.vertices:
            raise GraphError("vertex set must be nonempty")
        if tuple(sorted(self.vertices)) != self.vertices:
            raise GraphError("vertices must be sorted")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex labels")
        if self.max_weight < 1:
            raise GraphError("max_weight must be at least 1")
        if self.variant not in (ACYCLIC, EXTENDED):
            raise GraphError(f"unknown variant {self.variant!r}")
        vset = set(self.vertices)
        seen: set[tuple[str, str]] = set()
        for tail, head, weight in self.arcs:
            if tail not in vset or head not in vset or tail == head:
                raise GraphError(f"bad arc ({tail},{head})")
            if not 1 <= weight <= self.max_weight:
                raise GraphError(f"weight {weight} outside 1..{self.max_weight}")
            seen.add(_pair_key(tail, head))
        expected = {
            _pair_key(u, v) for u, v in itertools.combinations(self.vertices, 2)
        }
        if seen != expected or len(self.arcs) != len(expected):
            raise GraphError("arcs must cover each unordered pair exactly once")
        if tuple(sorted(self.arcs, key=lambda a: _pair_key(a[0], a[1]))) != self.arcs:
            raise GraphError("arcs must be sorted by vertex pair")
        if self.variant == ACYCLIC:
            if not _directions_acyclic(self.vertices, self.arcs):
                raise GraphError("directions contain a cycle")
        else:
            if _has_uniform_cycle(self.vertices, self.arcs):
                raise GraphError("graph contains a uniform-weight cycle")

    @cached_property
    def _by_pair(self) -> dict[tuple[str, str], Arc]:
        return {_pair_key(t, h): (t, h, w) for t, h, w in self.arcs}

    def arc(self, u: str, v: str) -> Arc:
        """The (tail, head, weight) triple on the unordered pair {u, v}."""
        return self._by_pair[_pair_key(u, v)]

    def weight(self, u: str, v: str) -> int:
        return self.arc(u, v)[2]

    def points_from(self, u: str, v: str) -> bool:
        """True iff the edge between u and v is directed u -> v."""
        return self.arc(u, v)[0] == u

    def __str__(self) -> str:
        body = ", ".join(f"{t}->{h}({w})" for t, h, w in self.arcs)
        return f"<{self.variant} n={self.max_weight}: {body}>"


def make_graph(
    vertices: Iterable[str],
    arcs: Iterable[Arc | tuple[str, str]],
    max_weight: int,
    variant: str = ACYCLIC,
) -> WeightedTournament:
    """Build a tournament from loose arc data (weight defaults to 1)."""
    verts = tuple(sorted(vertices))
    triples = []
    for arc in arcs:
        if len(arc) == 2:
            tail, head = arc  # type: ignore[misc]
            triples.append((tail, head, 1))
        else:
            triples.append(tuple(arc))  # type: ignore[arg-type]
    triples.sort(key=lambda a: _pair_key(a[0], a[1]))
    return WeightedTournament(verts, tuple(triples), max_weight, variant)


def unit_graph(vertex: str, max_weight: int, variant: str = ACYCLIC) -> WeightedTournament:
    """The one-vertex tournament, the operadic unit."""
    return WeightedTournament((vertex,), (), max_weight, variant)


def _directions_acyclic(vertices: Sequence[str], arcs: Iterable[Arc]) -> bool:
    # A tournament is acyclic iff its out-degrees are pairwise distinct,
    # in which case sorting by out-degree gives the linear order.
    outdeg = {v: 0 for v in vertices}
    for tail, _head, _w in arcs:
        outdeg[tail] += 1
    return len(set(outdeg.values())) == len(vertices)


def _digraph_has_cycle(vertices: Sequence[str], edges: Iterable[tuple[str, str]]) -> bool:
    succ: dict[str, list[str]] = {v: [] for v in vertices}
    indeg = {v: 0 for v in vertices}
    for tail, head in edges:
        succ[tail].append(head)
        indeg[head] += 1
    queue = [v for v in vertices if indeg[v] == 0]
    removed = 0
    while queue:
        v = queue.pop()
        removed += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return removed != len(vertices)


def _has_uniform_cycle(vertices: Sequence[str], arcs: Iterable[Arc]) -> bool:
    by_weight: dict[int, list[tuple[str, str]]] = {}
    for tail, head, weight in arcs:
        by_weight.setdefault(weight, []).append((tail, head))
    return any(
        _digraph_has_cycle(vertices, edges) for edges in by_weight.values()
    )


def is_acyclic(g: WeightedTournament) -> bool:
    """True iff the edge directions admit a topological linear order."""
    return _directions_acyclic(g.vertices, g.arcs)


def has_uniform_cycle(g: WeightedTournament) -> bool:
    """True iff some directed cycle carries a single constant weight."""
    return _has_uniform_cycle(g.vertices, g.arcs)


def underlying_order(g: WeightedTournament) -> tuple[str, ...]:
    """The linear order defined by an acyclic tournament's directions."""
    if not is_acyclic(g):
        raise GraphError("underlying order requires an acyclic tournament")
    outdeg = {v: 0 for v in g.vertices}
    for tail, _head, _w in g.arcs:
        outdeg[tail] += 1
    return tuple(sorted(g.vertices, key=lambda v: -outdeg[v]))


def _check_same_shape(g: WeightedTournament, h: WeightedTournament) -> None:
    if g.vertices != h.vertices:
        raise GraphError("vertex sets differ")
    if g.max_weight != h.max_weight:
        raise GraphError("weight bounds differ; relabel explicitly first")


def leq(g: WeightedTournament, h: WeightedTournament) -> bool:
    """Poset order: lower weights, with reversals only under a strict drop."""
    _check_same_shape(g, h)
    for tail, head, weight in g.arcs:
        tail_h, _head_h, weight_h = h.arc(tail, head)
        if tail == tail_h:
            if weight > weight_h:
                return False
        elif weight >= weight_h:
            return False
    return True


def compose(
    g: WeightedTournament, a: str, h: WeightedTournament
) -> WeightedTournament:
    """Substitute the tournament ``h`` for the vertex ``a`` of ``g``."""
    if a not in g.vertices:
        raise GraphError(f"vertex {a!r} not in graph")
    if g.max_weight != h.max_weight:
        raise GraphError("weight bounds differ")
    rest = [v for v in g.vertices if v != a]
    if set(rest) & set(h.vertices):
        raise GraphError("vertex sets must be disjoint apart from the slot")
    arcs: list[Arc] = []
    for tail, head, weight in g.arcs:
        if a not in (tail, head):
            arcs.append((tail, head, weight))
        elif tail == a:
            arcs.extend((b, head, weight) for b in h.vertices)
        else:
            arcs.extend((tail, b, weight) for b in h.vertices)
    arcs.extend(h.arcs)
    variant = ACYCLIC if g.variant == ACYCLIC and h.variant == ACYCLIC else EXTENDED
    return make_graph(rest + list(h.vertices), arcs, g.max_weight, variant)


def restrict(g: WeightedTournament, subset: Iterable[str]) -> WeightedTournament:
    """The induced sub-tournament on a nonempty vertex subset."""
    keep = set(subset)
    if not keep:
        raise GraphError("cannot restrict to the empty set")
    if not keep <= set(g.vertices):
        raise GraphError("subset contains unknown vertices")
    arcs = [a for a in g.arcs if a[0] in keep and a[1] in keep]
    return make_graph(keep, arcs, g.max_weight, g.variant)


def relabel(g: WeightedTournament, mapping: Mapping[str, str]) -> WeightedTournament:
    """Rename vertices along a bijection (the symmetric-group action)."""
    if set(mapping) != set(g.vertices) or len(set(mapping.values())) != len(
        g.vertices
    ):
        raise GraphError("mapping must be a bijection on the vertex set")
    arcs = [(mapping[t], mapping[h], w) for t, h, w in g.arcs]
    return make_graph(mapping.values(), arcs, g.max_weight, g.variant)


def with_max_weight(g: WeightedTournament, max_weight: int) -> WeightedTournament:
    """Reinterpret the graph inside a larger (or equal) weight range."""
    if max_weight < max((w for *_t, w in g.arcs), default=1):
        raise GraphError("new weight bound is below an existing weight")
    return WeightedTournament(g.vertices, g.arcs, max_weight, g.variant)


def enumerate_graphs(
    vertices: Iterable[str],
    max_weight: int,
    variant: str = ACYCLIC,
    caps: Caps = DEFAULT_CAPS,
) -> list[WeightedTournament]:
    """All tournaments on the given vertices, in a fixed lexicographic order.

    Enumeration walks the per-pair options (direction, weight) in
    lexicographic order and filters by the variant condition, so the output
    order is stable across runs.
    """
    verts = tuple(sorted(vertices))
    if not verts:
        raise GraphError("vertex set must be nonempty")
    caps.check_vertices(len(verts))
    caps.check_weight(max_weight)
    pairs = list(itertools.combinations(verts, 2))
    candidates = (2 * max_weight) ** len(pairs)
    caps.check_candidates(candidates)
    options = []
    for u, v in pairs:
        opts = [(u, v, w) for w in range(1, max_weight + 1)]
        opts += [(v, u, w) for w in range(1, max_weight + 1)]
        options.append(opts)
    result = []
    for combo in itertools.product(*options):
        if variant == ACYCLIC:
            if not _directions_acyclic(verts, combo):
                continue
        else:
            if _has_uniform_cycle(verts, combo):
                continue
        result.append(WeightedTournament(verts, tuple(combo), max_weight, variant))
    return result


def down_set(
    g: WeightedTournament, pool: Iterable[WeightedTournament]
) -> list[WeightedTournament]:
    """The elements of ``pool`` lying at or below ``g``."""
    return [h for h in pool if leq(h, g)]


def is_proper(g: WeightedTournament) -> bool:
    """Path-minimum criterion via consecutive triples.

    An acyclic tournament is proper when for every pair of composable edges
    a -> b -> c the direct edge a -> c carries the minimum of the two
    weights.  Chains of any length then follow by induction.
    """
    if not is_acyclic(g):
        raise GraphError("properness is defined for acyclic tournaments")
    order = underlying_order(g)
    for i, j, k in itertools.combinations(range(len(order)), 3):
        a, b, c = order[i], order[j], order[k]
        if g.weight(a, c) != min(g.weight(a, b), g.weight(b, c)):
            return False
    return True


def simple_cycles(g: WeightedTournament) -> list[tuple[str, ...]]:
    """All simple directed cycles, as vertex tuples starting at their least vertex."""
    found = []
    verts = g.vertices
    for size in range(3, len(verts) + 1):
        for subset in itertools.combinations(verts, size):
            first = subset[0]
            for perm in itertools.permutations(subset[1:]):
                seq = (first,) + perm
                if all(
                    g.points_from(seq[i], seq[(i + 1) % size])
                    for i in range(size)
                ):
                    found.append(seq)
    return found


def cycle_measure(g: WeightedTournament, cycle: Sequence[str]) -> tuple[int, ...]:
    """Weight multiplicities along a cycle, heaviest weight first."""
    counts = [0] * g.max_weight
    size = len(cycle)
    for i in range(size):
        counts[g.weight(cycle[i], cycle[(i + 1) % size]) - 1] += 1
    return tuple(reversed(counts))


def minimal_cycle(g: WeightedTournament) -> tuple[str, ...]:
    """The measure-minimal simple cycle, ties broken by the vertex sequence."""
    cycles = simple_cycles(g)
    if not cycles:
        raise GraphError("graph is acyclic; no cycle to select")
    return min(cycles, key=lambda c: (cycle_measure(g, c), c))


def _flip_arcs(
    g: WeightedTournament, edges: Iterable[tuple[str, str]]
) -> WeightedTournament:
    flips = {_pair_key(t, h): (t, h) for t, h in edges}
    arcs = []
    for tail, head, weight in g.arcs:
        key = _pair_key(tail, head)
        if key in flips:
            arcs.append((head, tail, weight - 1))
        else:
            arcs.append((tail, head, weight))
    return make_graph(g.vertices, arcs, g.max_weight, EXTENDED)


def cycle_reduction_table(
    g: WeightedTournament,
) -> list[tuple[tuple[int, ...], WeightedTournament]]:
    """Reduction family indexed by the flipped edge positions of the minimal cycle.

    Position ``i`` refers to the cycle edge into the i-th vertex (1-based, so
    edge i runs from cycle[i-1] to cycle[i % k]); only edges of weight > 1
    are eligible.  Each returned graph reverses the chosen edges and lowers
    their weight by one.
    """
    if is_acyclic(g):
        raise GraphError("nothing to reduce: graph is acyclic")
    cycle = minimal_cycle(g)
    size = len(cycle)
    eligible = [
        i
        for i in range(1, size + 1)
        if g.weight(cycle[i - 1], cycle[i % size]) > 1
    ]
    if not eligible:
        raise AssertionError(
            "minimal cycle carries no reducible edge; uniform cycle slipped through"
        )
    table = []
    for r in range(1, len(eligible) + 1):
        for chosen in itertools.combinations(eligible, r):
            edges = [(cycle[i - 1], cycle[i % size]) for i in chosen]
            reduced = _flip_arcs(g, edges)
            table.append((chosen, reduced))
    return table


def reduce_cycle_family(g: WeightedTournament) -> list[WeightedTournament]:
    """The reduced graphs obtained by flipping eligible minimal-cycle edges."""
    return [graph for _subset, graph in cycle_reduction_table(g)]


@dataclass
class FiberFamily:
    """One-point extensions of an acyclic tournament used in fiber analysis.

    ``g[i]`` inserts the new vertex at position ``i`` of the underlying
    order with all new edges at the top weight; ``h_minus[(i, k)]`` lowers
    the edge from the new vertex to the (i+1)-st old vertex to ``k``, and
    ``h_plus[(i, k)]`` lowers the edge from the (i+1)-st old vertex to the
    new vertex to ``k`` inside ``g[i+1]``.
    """

    base: WeightedTournament
    vertex: str
    g: tuple[WeightedTournament, ...]
    h_minus: dict[tuple[int, int], WeightedTournament]
    h_plus: dict[tuple[int, int], WeightedTournament]


def fiber_extensions(
    g: WeightedTournament, a: str, max_weight: int | None = None
) -> FiberFamily:
    """Build the named extension family over the acyclic tournament ``g``."""
    if a in g.vertices:
        raise GraphError(f"vertex {a!r} already present")
    n = g.max_weight if max_weight is None else max_weight
    if n != g.max_weight:
        raise GraphError("weight bound must match the base graph")
    order = underlying_order(g)
    p = len(order)

    def insert(position: int, tweaks: Mapping[str, int]) -> WeightedTournament:
        arcs = list(g.arcs)
        for j, b in enumerate(order):
            weight = tweaks.get(b, n)
            if j < position:
                arcs.append((b, a, weight))
            else:
                arcs.append((a, b, weight))
        return make_graph(g.vertices + (a,), arcs, n, ACYCLIC)

    g_family = tuple(insert(i, {}) for i in range(p + 1))
    h_minus = {}
    h_plus = {}
    for i in range(p):
        for k in range(1, n + 1):
            h_minus[(i, k)] = insert(i, {order[i]: k})
            h_plus[(i, k)] = insert(i + 1, {order[i]: k})
    return FiberFamily(g, a, g_family, h_minus, h_plus)


def graph_to_json(g: WeightedTournament) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [
            {"from": t, "to": h, "w": w}
            for t, h, w in sorted(g.arcs, key=lambda a: (a[0], a[1]))
        ],
        "maxWeight": g.max_weight,
        "variant": g.variant,
    }


def graph_from_json(data: Mapping) -> WeightedTournament:
    try:
        arcs = [(e["from"], e["to"], int(e["w"])) for e in data["edges"]]
        return make_graph(
            data["vertices"], arcs, int(data["maxWeight"]), data.get("variant", ACYCLIC)
        )
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc


def graph_to_dot(g: WeightedTournament) -> str:
    lines = ["digraph tournament {"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for t, h, w in sorted(g.arcs, key=lambda a: (a[0], a[1])):
        lines.append(f'  "{t}" -> "{h}" [label="{w}"];')
    lines.append("}")
    return "\n".join(lines)

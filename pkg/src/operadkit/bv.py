"""Tournament-labelled rooted trees: the tree resolution of the graph poset.

An element is a rooted non-planar tree whose leaves are the vertex labels
and whose internal vertices each carry a weighted tournament on their
input edges.  Inputs are addressed by fingerprints: a leaf by its name, an
internal subtree by the braced sorted list of its leaves.  One element
sits below another when contracting some inner edges of the bigger tree
(composing the labels along them) lands above the smaller element's labels
pointwise.  Collapsing a whole tree to its total composite and re-wrapping
a tournament as a one-vertex tree are the two comparison maps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from . import graphs
from .graphs import WeightedTournament
from .limits import DEFAULT_CAPS, Caps


class WTreeError(ValueError):
    """Malformed labelled tree or incompatible operands."""


@dataclass(frozen=True)
class WLeaf:
    name: str


@dataclass(frozen=True)
class WNode:
    children: tuple["WTree", ...]
    label: WeightedTournament

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise WTreeError("internal vertices need at least two inputs")
        keys = [fingerprint(c) for c in self.children]
        if keys != sorted(keys):
            raise WTreeError("children must be sorted by fingerprint")
        if tuple(sorted(self.label.vertices)) != tuple(sorted(keys)):
            raise WTreeError("label must live on the children's fingerprints")


WTree = Union[WLeaf, WNode]


def fingerprint(tree: WTree) -> str:
    if isinstance(tree, WLeaf):
        return tree.name
    return "{" + ",".join(sorted(tree_leaves(tree))) + "}"


def tree_leaves(tree: WTree) -> tuple[str, ...]:
    if isinstance(tree, WLeaf):
        return (tree.name,)
    out: list[str] = []
    for child in tree.children:
        out.extend(tree_leaves(child))
    return tuple(sorted(out))


def wnode(children: Iterable[WTree], label: WeightedTournament) -> WNode:
    kids = tuple(sorted(children, key=fingerprint))
    return WNode(kids, label)


@dataclass(frozen=True)
class WElement:
    """A labelled tree over the tournament poset with a fixed weight bound."""

    tree: WTree
    max_weight: int

    def __post_init__(self) -> None:
        names = tree_leaves(self.tree)
        if len(set(names)) != len(names):
            raise WTreeError("leaf names must be distinct")
        for node in iter_nodes(self.tree):
            if node.label.max_weight != self.max_weight:
                raise WTreeError("all labels must share the weight bound")
            if node.label.variant != graphs.ACYCLIC:
                raise WTreeError("labels must be acyclic tournaments")

    @property
    def leaves(self) -> tuple[str, ...]:
        return tree_leaves(self.tree)


def iter_nodes(tree: WTree) -> Iterator[WNode]:
    if isinstance(tree, WNode):
        yield tree
        for child in tree.children:
            yield from iter_nodes(child)


def internal_vertex_count(tree: WTree) -> int:
    return sum(1 for _ in iter_nodes(tree))


def w_iota(g: WeightedTournament) -> WElement:
    """Wrap a tournament as the one-vertex tree (a corolla)."""
    if len(g.vertices) == 1:
        return WElement(WLeaf(g.vertices[0]), g.max_weight)
    kids = tuple(WLeaf(v) for v in g.vertices)
    return WElement(wnode(kids, g), g.max_weight)


def _pi_tree(tree: WTree, max_weight: int) -> WeightedTournament:
    if isinstance(tree, WLeaf):
        return graphs.unit_graph(tree.name, max_weight)
    result = tree.label
    for child in tree.children:
        result = graphs.compose(
            result, fingerprint(child), _pi_tree(child, max_weight)
        )
    return result


def w_pi(x: WElement) -> WeightedTournament:
    """Compose all labels along the tree into a single tournament."""
    return _pi_tree(x.tree, x.max_weight)


def _graft(tree: WTree, a: str, sub: WTree) -> WTree:
    if isinstance(tree, WLeaf):
        return sub if tree.name == a else tree
    hit = any(a in tree_leaves(c) for c in tree.children)
    new_children = tuple(_graft(c, a, sub) for c in tree.children)
    if not hit:
        return WNode(tuple(sorted(new_children, key=fingerprint)), tree.label)
    relabeled = tree.label
    for old_child, new_child in zip(tree.children, new_children):
        old_key, new_key = fingerprint(old_child), fingerprint(new_child)
        if old_key != new_key:
            mapping = {
                v: (new_key if v == old_key else v)
                for v in relabeled.vertices
            }
            relabeled = graphs.relabel(relabeled, mapping)
    return wnode(new_children, relabeled)


def w_compose(x: WElement, a: str, y: WElement) -> WElement:
    """Graft ``y`` onto the leaf ``a`` of ``x``."""
    if a not in x.leaves:
        raise WTreeError(f"leaf {a!r} not present")
    if x.max_weight != y.max_weight:
        raise WTreeError("weight bounds differ")
    if (set(x.leaves) - {a}) & set(y.leaves):
        raise WTreeError("leaf sets must be disjoint apart from the slot")
    return WElement(_graft(x.tree, a, y.tree), x.max_weight)


def _inner_edges(tree: WTree) -> list[tuple[WNode, int]]:
    """Inner edges as (parent node, child slot) with an internal child."""
    out = []
    for node in iter_nodes(tree):
        for i, child in enumerate(node.children):
            if isinstance(child, WNode):
                out.append((node, i))
    return out


def _contract_at(tree: WTree, parent: WNode, slot: int) -> WTree:
    """Contract one inner edge, composing the labels."""
    if isinstance(tree, WLeaf):
        return tree
    if tree is parent:
        child = tree.children[slot]
        assert isinstance(child, WNode)
        merged_label = graphs.compose(tree.label, fingerprint(child), child.label)
        kids = tuple(
            c for i, c in enumerate(tree.children) if i != slot
        ) + child.children
        return wnode(kids, merged_label)
    return wnode(
        tuple(_contract_at(c, parent, slot) for c in tree.children),
        tree.label,
    )


def contractions(tree: WTree) -> Iterator[WTree]:
    """All trees obtained by contracting any subset of inner edges.

    Contraction order does not matter, so subsets are processed greedily one
    edge at a time.
    """
    seen = {_tree_key(tree)}
    frontier = [tree]
    yield tree
    while frontier:
        current = frontier.pop()
        for parent, slot in _inner_edges(current):
            smaller = _contract_at(current, parent, slot)
            key = _tree_key(smaller)
            if key not in seen:
                seen.add(key)
                frontier.append(smaller)
                yield smaller


def _tree_key(tree: WTree):
    if isinstance(tree, WLeaf):
        return tree.name
    return (
        tuple(_tree_key(c) for c in tree.children),
        tree.label.arcs,
    )


def _shapes_match(a: WTree, b: WTree) -> bool:
    if isinstance(a, WLeaf) or isinstance(b, WLeaf):
        return isinstance(a, WLeaf) and isinstance(b, WLeaf) and a.name == b.name
    if len(a.children) != len(b.children):
        return False
    return all(
        _shapes_match(ca, cb) for ca, cb in zip(a.children, b.children)
    )


def _labels_leq(small: WTree, big: WTree) -> bool:
    if isinstance(small, WLeaf):
        return True
    assert isinstance(big, WNode)
    if not graphs.leq(small.label, big.label):
        return False
    return all(
        _labels_leq(cs, cb) for cs, cb in zip(small.children, big.children)
    )


def w_leq(x: WElement, y: WElement) -> bool:
    """True when some contraction of ``y`` matches ``x``'s tree with labels above."""
    if x.max_weight != y.max_weight:
        raise WTreeError("weight bounds differ")
    if set(x.leaves) != set(y.leaves):
        raise WTreeError("leaf sets differ")
    for contracted in contractions(y.tree):
        if _shapes_match(x.tree, contracted) and _labels_leq(x.tree, contracted):
            return True
    return False


def enumerate_welements(
    vertices: Iterable[str],
    max_weight: int,
    max_internal: int = 2,
    caps: Caps = DEFAULT_CAPS,
) -> list[WElement]:
    """All elements on the leaf set with at most ``max_internal`` internal vertices."""
    names = tuple(sorted(vertices))
    caps.check_vertices(len(names))
    caps.check_weight(max_weight)
    shapes = _tree_shapes(names, max_internal)
    out = []
    for shape in shapes:
        for tree in _fill_labels(shape, max_weight, caps):
            out.append(WElement(tree, max_weight))
    caps.check_candidates(len(out))
    return out


def _tree_shapes(names: tuple[str, ...], budget: int) -> list:
    """Unlabelled shapes: a leaf name, or a sorted tuple of sub-shapes."""
    if len(names) == 1:
        return [names[0]]
    if budget < 1:
        return []
    out = []
    for parts in _unordered_partitions(names):
        if len(parts) < 2:
            continue
        remaining = budget - 1
        child_lists = []
        feasible = True
        for part in parts:
            subs = _tree_shapes(part, remaining)
            if not subs:
                feasible = False
                break
            child_lists.append(subs)
        if not feasible:
            continue
        for combo in itertools.product(*child_lists):
            used = sum(_shape_internal(c) for c in combo)
            if used <= budget - 1:
                out.append(tuple(sorted(combo, key=_shape_fingerprint)))
    seen = set()
    unique = []
    for shape in out:
        if shape not in seen:
            seen.add(shape)
            unique.append(shape)
    return unique


def _shape_internal(shape) -> int:
    if isinstance(shape, str):
        return 0
    return 1 + sum(_shape_internal(c) for c in shape)


def _shape_fingerprint(shape) -> str:
    if isinstance(shape, str):
        return shape
    return "{" + ",".join(sorted(_shape_all_leaves(shape))) + "}"


def _shape_all_leaves(shape) -> list[str]:
    if isinstance(shape, str):
        return [shape]
    out = []
    for c in shape:
        out.extend(_shape_all_leaves(c))
    return out


def _unordered_partitions(
    names: tuple[str, ...]
) -> Iterator[tuple[tuple[str, ...], ...]]:
    """Partitions of a set into unordered nonempty blocks (at least two)."""
    if len(names) < 2:
        return
    first, rest = names[0], names[1:]
    for assignment in itertools.product(range(len(names)), repeat=len(rest)):
        blocks: dict[int, list[str]] = {0: [first]}
        for name, slot in zip(rest, assignment):
            blocks.setdefault(slot, []).append(name)
        used = sorted(blocks)
        # Canonical: block ids must appear in first-use order to avoid dupes.
        if used != list(range(len(used))):
            continue
        seen_order = []
        for name in names:
            for slot, members in blocks.items():
                if name in members and slot not in seen_order:
                    seen_order.append(slot)
        if seen_order != used:
            continue
        if len(used) >= 2:
            yield tuple(tuple(blocks[slot]) for slot in used)


def _fill_labels(shape, max_weight: int, caps: Caps) -> Iterator[WTree]:
    if isinstance(shape, str):
        yield WLeaf(shape)
        return
    child_iters = [list(_fill_labels(c, max_weight, caps)) for c in shape]
    keys = [_shape_fingerprint(c) for c in shape]
    label_pool = graphs.enumerate_graphs(keys, max_weight, caps=caps)
    for combo in itertools.product(*child_iters):
        for label in label_pool:
            yield wnode(combo, label)


# ---------------------------------------------------------------------------
# Strata of configured trees


@dataclass(frozen=True)
class StratumNode:
    """A rooted tree with a point configuration at each internal vertex.

    Children are leaf names or nested nodes; the configuration is keyed by
    the children's fingerprints and must be injective, one point per input.
    """

    children: tuple[Union[str, "StratumNode"], ...]
    config: "PointConfiguration"

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise WTreeError("stratum vertices need at least two inputs")
        keys = sorted(stratum_fingerprint(c) for c in self.children)
        if list(self.config.names) != keys:
            raise WTreeError(
                "configuration must be keyed by the children's fingerprints"
            )


def stratum_fingerprint(child: Union[str, StratumNode]) -> str:
    if isinstance(child, str):
        return child
    return "{" + ",".join(sorted(stratum_leaves(child))) + "}"


def stratum_leaves(child: Union[str, StratumNode]) -> tuple[str, ...]:
    if isinstance(child, str):
        return (child,)
    out: list[str] = []
    for kid in child.children:
        out.extend(stratum_leaves(kid))
    return tuple(sorted(out))


def stratum_node(
    children: Iterable[Union[str, StratumNode]], config: "PointConfiguration"
) -> StratumNode:
    return StratumNode(tuple(children), config)


def fm_psi_stratum(shape: Union[str, StratumNode], max_weight: int) -> WElement:
    """Apply the point-to-tournament map at every vertex of a configured tree."""
    return WElement(_stratum_tree(shape, max_weight), max_weight)


def _stratum_tree(shape: Union[str, StratumNode], max_weight: int) -> WTree:
    from . import configurations

    if isinstance(shape, str):
        return WLeaf(shape)
    if shape.config.dim != max_weight:
        raise WTreeError("configuration dimension must match the weight bound")
    label = configurations.psi(shape.config)
    kids = tuple(_stratum_tree(c, max_weight) for c in shape.children)
    return wnode(kids, label)


def stratum_graft(
    outer: Union[str, StratumNode], a: str, inner: Union[str, StratumNode]
) -> Union[str, StratumNode]:
    """Replace the leaf ``a`` of ``outer`` by the configured tree ``inner``."""
    from . import configurations

    if isinstance(outer, str):
        if outer != a:
            raise WTreeError(f"leaf {a!r} not present")
        return inner
    if a not in stratum_leaves(outer):
        raise WTreeError(f"leaf {a!r} not present")
    new_children = []
    renames: dict[str, str] = {}
    for child in outer.children:
        if a in stratum_leaves(child):
            replaced = (
                inner if child == a else stratum_graft(child, a, inner)
            )
            renames[stratum_fingerprint(child)] = stratum_fingerprint(replaced)
            new_children.append(replaced)
        else:
            new_children.append(child)
    config = outer.config
    if any(old != new for old, new in renames.items()):
        mapping = {
            name: renames.get(name, name) for name in config.names
        }
        config = configurations.rename_points(config, mapping)
    return StratumNode(tuple(new_children), config)


def welement_to_json(x: WElement) -> dict:
    return {"maxWeight": x.max_weight, "tree": _wtree_to_json(x.tree)}


def _wtree_to_json(tree: WTree) -> dict:
    if isinstance(tree, WLeaf):
        return {"leaf": tree.name}
    return {
        "label": graphs.graph_to_json(tree.label),
        "children": [_wtree_to_json(c) for c in tree.children],
    }


def welement_from_json(data: Mapping) -> WElement:
    try:
        return WElement(_wtree_from_json(data["tree"]), int(data["maxWeight"]))
    except (KeyError, TypeError) as exc:
        raise WTreeError(f"malformed element JSON: {exc}") from exc


def _wtree_from_json(data: Mapping) -> WTree:
    if "leaf" in data:
        return WLeaf(data["leaf"])
    return wnode(
        tuple(_wtree_from_json(c) for c in data["children"]),
        graphs.graph_from_json(data["label"]),
    )

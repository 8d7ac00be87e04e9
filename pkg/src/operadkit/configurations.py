"""Exact-rational point and cube configurations and their tournament images.

Points map to an acyclic tournament by comparing coordinates in order: the
weight of a pair is the first axis where the two points differ, directed
toward the larger coordinate.  Closed axis-aligned boxes map to an
extended tournament through the first axis along which they are separated
(faces may touch).  Everything runs on ``fractions.Fraction``; no floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import graphs, monoidal_trees
from .graphs import WeightedTournament
from .limits import DEFAULT_CAPS, Caps
from .monoidal_trees import Leaf, PTree

Vector = tuple[Fraction, ...]


class ConfigError(ValueError):
    """Malformed configuration or incompatible operands."""


def _vec(values: Iterable, dim: int) -> Vector:
    out = []
    for v in values:
        if isinstance(v, Fraction):
            out.append(v)
        elif isinstance(v, int):
            out.append(Fraction(v))
        elif isinstance(v, str):
            out.append(Fraction(v))
        else:
            raise ConfigError(f"not an exact rational: {v!r}")
    if len(out) != dim:
        raise ConfigError(f"expected {dim} coordinates, got {len(out)}")
    return tuple(out)


@dataclass(frozen=True)
class PointConfiguration:
    """Injective assignment of rational coordinate vectors to labels."""

    dim: int
    points: tuple[tuple[str, Vector], ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ConfigError("dimension must be at least 1")
        if not self.points:
            raise ConfigError("need at least one point")
        names = [name for name, _ in self.points]
        if names != sorted(names) or len(set(names)) != len(names):
            raise ConfigError("points must be keyed by distinct sorted labels")
        vectors = [vec for _, vec in self.points]
        if any(len(vec) != self.dim for vec in vectors):
            raise ConfigError("coordinate dimension mismatch")
        if len(set(vectors)) != len(vectors):
            raise ConfigError("point map must be injective")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.points)

    def point(self, name: str) -> Vector:
        for key, vec in self.points:
            if key == name:
                return vec
        raise ConfigError(f"no point named {name!r}")


def point_config(dim: int, points: Mapping[str, Iterable]) -> PointConfiguration:
    items = tuple(
        (name, _vec(coords, dim)) for name, coords in sorted(points.items())
    )
    return PointConfiguration(dim, items)


@dataclass(frozen=True)
class CubeConfiguration:
    """Closed boxes with pairwise disjoint interiors, keyed by labels."""

    dim: int
    cubes: tuple[tuple[str, Vector, Vector], ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ConfigError("dimension must be at least 1")
        if not self.cubes:
            raise ConfigError("need at least one cube")
        names = [name for name, _, _ in self.cubes]
        if names != sorted(names) or len(set(names)) != len(names):
            raise ConfigError("cubes must be keyed by distinct sorted labels")
        for name, lo, hi in self.cubes:
            if len(lo) != self.dim or len(hi) != self.dim:
                raise ConfigError("corner dimension mismatch")
            if any(a >= b for a, b in zip(lo, hi)):
                raise ConfigError(f"cube {name!r} needs positive side lengths")
        for (na, loa, hia), (nb, lob, hib) in itertools.combinations(
            self.cubes, 2
        ):
            separated = any(
                hia[i] <= lob[i] or hib[i] <= loa[i] for i in range(self.dim)
            )
            if not separated:
                raise ConfigError(f"cubes {na!r} and {nb!r} overlap")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _, _ in self.cubes)

    def cube(self, name: str) -> tuple[Vector, Vector]:
        for key, lo, hi in self.cubes:
            if key == name:
                return lo, hi
        raise ConfigError(f"no cube named {name!r}")


def cube_config(
    dim: int, cubes: Mapping[str, tuple[Iterable, Iterable]]
) -> CubeConfiguration:
    items = tuple(
        (name, _vec(lo, dim), _vec(hi, dim))
        for name, (lo, hi) in sorted(cubes.items())
    )
    return CubeConfiguration(dim, items)


def unit_cube(dim: int, name: str) -> CubeConfiguration:
    zero = [Fraction(0)] * dim
    one = [Fraction(1)] * dim
    return cube_config(dim, {name: (zero, one)})


# ---------------------------------------------------------------------------
# Maps into tournaments


def psi(x: PointConfiguration) -> WeightedTournament:
    """Edge a -> b with weight i when axis i is the first with x(a)_i < x(b)_i."""
    arcs = []
    for (na, va), (nb, vb) in itertools.combinations(x.points, 2):
        for i in range(x.dim):
            if va[i] != vb[i]:
                if va[i] < vb[i]:
                    arcs.append((na, nb, i + 1))
                else:
                    arcs.append((nb, na, i + 1))
                break
        else:  # pragma: no cover - injectivity forbids equality
            raise ConfigError("points coincide")
    return graphs.make_graph(x.names, arcs, x.dim, graphs.ACYCLIC)


def phi(c: CubeConfiguration) -> WeightedTournament:
    """Edge toward the upper cube along the first separating axis."""
    arcs = []
    for (na, loa, hia), (nb, lob, hib) in itertools.combinations(c.cubes, 2):
        for i in range(c.dim):
            if hia[i] <= lob[i]:
                arcs.append((na, nb, i + 1))
                break
            if hib[i] <= loa[i]:
                arcs.append((nb, na, i + 1))
                break
        else:  # pragma: no cover - constructor guarantees separation
            raise ConfigError("cubes overlap")
    return graphs.make_graph(c.names, arcs, c.dim, graphs.EXTENDED)


def centers(c: CubeConfiguration) -> PointConfiguration:
    pts = {
        name: tuple((a + b) / 2 for a, b in zip(lo, hi))
        for name, lo, hi in c.cubes
    }
    return point_config(c.dim, pts)


def compose_cubes(
    c: CubeConfiguration, a: str, d: CubeConfiguration
) -> CubeConfiguration:
    """Map every cube of ``d`` affinely into the slot cube ``a`` of ``c``."""
    if c.dim != d.dim:
        raise ConfigError("dimension mismatch")
    if a not in c.names:
        raise ConfigError(f"no cube named {a!r}")
    rest = set(c.names) - {a}
    if rest & set(d.names):
        raise ConfigError("cube labels must be disjoint apart from the slot")
    slot_lo, slot_hi = c.cube(a)
    scale = tuple(h - l for l, h in zip(slot_lo, slot_hi))
    combined: dict[str, tuple[Vector, Vector]] = {
        name: (lo, hi) for name, lo, hi in c.cubes if name != a
    }
    for name, lo, hi in d.cubes:
        new_lo = tuple(sl + s * v for sl, s, v in zip(slot_lo, scale, lo))
        new_hi = tuple(sl + s * v for sl, s, v in zip(slot_lo, scale, hi))
        combined[name] = (new_lo, new_hi)
    return cube_config(c.dim, combined)


def rename_points(
    x: PointConfiguration, mapping: Mapping[str, str]
) -> PointConfiguration:
    if set(mapping) != set(x.names) or len(set(mapping.values())) != len(
        x.names
    ):
        raise ConfigError("mapping must be a bijection on the labels")
    return point_config(
        x.dim, {mapping[name]: vec for name, vec in x.points}
    )


def rename_cubes(
    c: CubeConfiguration, mapping: Mapping[str, str]
) -> CubeConfiguration:
    if set(mapping) != set(c.names) or len(set(mapping.values())) != len(
        c.names
    ):
        raise ConfigError("mapping must be a bijection on the labels")
    return cube_config(
        c.dim, {mapping[name]: (lo, hi) for name, lo, hi in c.cubes}
    )


# ---------------------------------------------------------------------------
# Proper graphs: witnesses and the realisability oracle


def proper_witness(g: WeightedTournament) -> PointConfiguration:
    """Walk the underlying order, stepping one unit along each edge's weight axis."""
    if not graphs.is_proper(g):
        raise ConfigError("graph is not proper; no witness exists")
    order = graphs.underlying_order(g)
    n = g.max_weight
    coords: dict[str, list[Fraction]] = {order[0]: [Fraction(0)] * n}
    for prev, cur in zip(order, order[1:]):
        axis = g.weight(prev, cur) - 1
        vec = list(coords[prev])
        vec[axis] += 1
        coords[cur] = vec
    return point_config(n, coords)


def psi_fiber_nonempty(
    g: WeightedTournament,
    max_weight: int | None = None,
    caps: Caps = DEFAULT_CAPS,
) -> bool:
    """Exhaustive coordinate-pattern search for a configuration mapping onto ``g``.

    The tournament image only depends on the per-axis order/equality pattern
    of the coordinates, so integer levels ``0..|A|-1`` per axis explore every
    possible image.  Search space: |A| ** (|A| * n).
    """
    if not graphs.is_acyclic(g):
        raise ConfigError("realisability oracle expects an acyclic tournament")
    n = g.max_weight if max_weight is None else max_weight
    if n < g.max_weight:
        raise ConfigError("ambient dimension below the graph's weight bound")
    names = g.vertices
    k = len(names)
    caps.check_patterns(k ** (k * n))
    level_maps = list(itertools.product(range(k), repeat=k))
    for combo in itertools.product(level_maps, repeat=n):
        vectors = {
            name: tuple(Fraction(combo[axis][j]) for axis in range(n))
            for j, name in enumerate(names)
        }
        if len(set(vectors.values())) != k:
            continue
        candidate = point_config(n, vectors)
        if psi(candidate).arcs == g.arcs:
            return True
    return False


def blend_toward(
    y: PointConfiguration, x: PointConfiguration, axis: int, t: Fraction
) -> PointConfiguration:
    """Move axis ``axis`` of ``y`` a fraction ``t`` of the way to ``x``."""
    if y.dim != x.dim or y.names != x.names:
        raise ConfigError("configurations must share labels and dimension")
    if not 1 <= axis <= y.dim:
        raise ConfigError("axis out of range")
    i = axis - 1
    pts = {}
    for name, vec in y.points:
        target = x.point(name)
        blended = list(vec)
        blended[i] = (1 - t) * vec[i] + t * target[i]
        pts[name] = tuple(blended)
    return point_config(y.dim, pts)


# ---------------------------------------------------------------------------
# Decompositions along trees


def _group_split(
    c: CubeConfiguration, axis: int, blocks: Sequence[Sequence[str]]
) -> bool:
    """Can hyperplanes orthogonal to ``axis`` separate consecutive blocks?"""
    i = axis - 1
    for left, right in zip(blocks, blocks[1:]):
        top = max(c.cube(name)[1][i] for name in left)
        bottom = min(c.cube(name)[0][i] for name in right)
        if top > bottom:
            return False
    return True


def in_G_of_tree(c: CubeConfiguration, t: PTree) -> bool:
    """Recursive decomposition check along the planar tree's labels."""
    tree_leaves = monoidal_trees.leaves(t)
    if set(tree_leaves) != set(c.names):
        raise ConfigError("tree leaves must match the cube labels")
    if isinstance(t, Leaf):
        return True
    blocks = [monoidal_trees.leaves(child) for child in t.children]
    if not _group_split(c, t.label, blocks):
        return False
    for child, block in zip(t.children, blocks):
        sub = cube_config(
            c.dim, {name: c.cube(name) for name in block}
        )
        if not in_G_of_tree(sub, child):
            return False
    return True


def in_F_of_tree(
    c: CubeConfiguration, t: PTree, caps: Caps = DEFAULT_CAPS
) -> bool:
    """True when some canonical tree at or below ``t`` decomposes ``c``."""
    tree_leaves = monoidal_trees.leaves(t)
    if set(tree_leaves) != set(c.names):
        raise ConfigError("tree leaves must match the cube labels")
    # Trees below t can only use labels up to t's largest label.
    n = monoidal_trees.max_label(t)
    for candidate in monoidal_trees.enumerate_trees(tree_leaves, n, caps=caps):
        if monoidal_trees.tree_leq(candidate, t) and in_G_of_tree(c, candidate):
            return True
    return False


def phi_M(c: CubeConfiguration, caps: Caps = DEFAULT_CAPS) -> PTree:
    """The unique smallest tree whose decomposition family contains ``c``."""
    candidates = monoidal_trees.enumerate_trees(c.names, c.dim, caps=caps)
    hits = [t for t in candidates if in_G_of_tree(c, t)]
    if not hits:
        raise ConfigError("configuration is not decomposable")
    minima = [
        t
        for t in hits
        if all(monoidal_trees.tree_leq(t, other) for other in hits)
    ]
    if not minima:
        raise ConfigError(
            "no unique smallest tree: decomposition minima are incomparable"
        )
    return minima[0]


def tree_witness(t: PTree, dim: int) -> CubeConfiguration:
    """A configuration decomposing along ``t``: scale children into slots."""
    if monoidal_trees.max_label(t) > dim:
        raise ConfigError("tree labels exceed the ambient dimension")
    if isinstance(t, Leaf):
        return unit_cube(dim, t.name)
    parts = [tree_witness(child, dim) for child in t.children]
    k = len(parts)
    axis = t.label - 1
    combined: dict[str, tuple[Vector, Vector]] = {}
    for j, part in enumerate(parts):
        shift = Fraction(j, k)
        for name, lo, hi in part.cubes:
            new_lo = list(lo)
            new_hi = list(hi)
            new_lo[axis] = shift + lo[axis] / k
            new_hi[axis] = shift + hi[axis] / k
            combined[name] = (tuple(new_lo), tuple(new_hi))
    return cube_config(dim, combined)


# ---------------------------------------------------------------------------
# JSON


def _frac_str(value: Fraction) -> str:
    return str(value)


def points_to_json(x: PointConfiguration) -> dict:
    return {
        "dim": x.dim,
        "points": {name: [_frac_str(v) for v in vec] for name, vec in x.points},
    }


def points_from_json(data: Mapping) -> PointConfiguration:
    try:
        return point_config(int(data["dim"]), data["points"])
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed point JSON: {exc}") from exc


def cubes_to_json(c: CubeConfiguration) -> dict:
    return {
        "dim": c.dim,
        "cubes": {
            name: {
                "v": [_frac_str(x) for x in lo],
                "w": [_frac_str(x) for x in hi],
            }
            for name, lo, hi in c.cubes
        },
    }


def cubes_from_json(data: Mapping) -> CubeConfiguration:
    try:
        return cube_config(
            int(data["dim"]),
            {
                name: (payload["v"], payload["w"])
                for name, payload in data["cubes"].items()
            },
        )
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed cube JSON: {exc}") from exc

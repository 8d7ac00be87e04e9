"""Subdivided strings over a finite alphabet ("lattice paths").

A path is a nonempty word in which every alphabet letter occurs, cut into
``n+1`` blocks by ``n`` weakly increasing bar positions.  Occurrences of a
single letter form that letter's fiber; substituting words into fibers,
deleting and duplicating occurrences, and re-cutting the bars give the
multisimplicial, cosimplicial and operadic structure.  The weight of a
letter pair counts how often the word alternates between them, and the map
onto weighted tournaments reads direction off first occurrences.  Points of
the realisation carry one positive rational per letter with fiber sums
one; splitting a point of the bar-free model against a vector of block
masses inverts the bar-forgetting projection exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from . import graphs
from .graphs import WeightedTournament
from .limits import DEFAULT_CAPS, Caps


class PathError(ValueError):
    """Malformed path, point, or incompatible operands."""


@dataclass(frozen=True)
class LatticePath:
    """Letters with bar cut positions; ``bars[i]`` splits before index ``bars[i]``."""

    letters: tuple[str, ...]
    bars: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise PathError("need at least one letter")
        prev = 0
        for cut in self.bars:
            if cut < prev or cut > len(self.letters):
                raise PathError("bars must be weakly increasing within range")
            prev = cut

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.letters)))

    @property
    def degree(self) -> int:
        return len(self.bars)

    def blocks(self) -> list[tuple[str, ...]]:
        cuts = (0,) + self.bars + (len(self.letters),)
        return [
            self.letters[cuts[i] : cuts[i + 1]] for i in range(len(cuts) - 1)
        ]

    def block_of(self, position: int) -> int:
        return sum(1 for cut in self.bars if cut <= position)

    def fiber(self, a: str) -> list[int]:
        return [i for i, x in enumerate(self.letters) if x == a]

    def __str__(self) -> str:
        return "|".join("".join(block) for block in self.blocks())


def path(letters: Iterable[str], bars: Iterable[int] = ()) -> LatticePath:
    return LatticePath(tuple(letters), tuple(bars))


def parse_path(text: str) -> LatticePath:
    """Parse the string form, e.g. ``"ab|a|bb"`` (single-character letters)."""
    letters: list[str] = []
    bars: list[int] = []
    for ch in text:
        if ch == "|":
            bars.append(len(letters))
        else:
            letters.append(ch)
    return LatticePath(tuple(letters), tuple(bars))


def lp_restrict(x: LatticePath, subset: Iterable[str]) -> LatticePath:
    """Delete letters outside the subset; bars count surviving letters."""
    keep = set(subset)
    if not keep:
        raise PathError("cannot restrict to the empty set")
    if not keep <= set(x.letters):
        raise PathError("subset contains letters not in the path")
    survivors = [i for i, a in enumerate(x.letters) if a in keep]
    letters = tuple(x.letters[i] for i in survivors)
    bars = tuple(sum(1 for i in survivors if i < cut) for cut in x.bars)
    return LatticePath(letters, bars)


def lp_weight(x: LatticePath, a: str, b: str) -> int:
    """Number of alternations between ``a`` and ``b`` in the word."""
    if a == b:
        raise PathError("weight needs two distinct letters")
    merged: list[str] = []
    for ch in x.letters:
        if ch in (a, b) and (not merged or merged[-1] != ch):
            merged.append(ch)
    return len(merged) - 1


def lp_max_weight(x: LatticePath) -> int:
    alphabet = x.alphabet
    if len(alphabet) < 2:
        return 1
    return max(
        lp_weight(x, a, b) for a, b in itertools.combinations(alphabet, 2)
    )


def lp_gamma(x: LatticePath, max_weight: int | None = None) -> WeightedTournament:
    """Tournament directed by first occurrence and weighted by alternations."""
    alphabet = x.alphabet
    n = max(1, lp_max_weight(x)) if max_weight is None else max_weight
    first = {}
    for i, ch in enumerate(x.letters):
        first.setdefault(ch, i)
    arcs = []
    for a, b in itertools.combinations(alphabet, 2):
        w = lp_weight(x, a, b)
        if first[a] < first[b]:
            arcs.append((a, b, w))
        else:
            arcs.append((b, a, w))
    return graphs.make_graph(alphabet, arcs, n, graphs.ACYCLIC)


# ---------------------------------------------------------------------------
# Simplicial structure (per letter) and cosimplicial structure (bars)


def _monotone_into(rho: Sequence[int], m: int) -> None:
    if len(rho) == 0:
        raise PathError("operator must have nonempty domain")
    prev = 0
    for v in rho:
        if v < prev or v > m:
            raise PathError("operator must be monotone into the fiber range")
        prev = v


def lp_face(x: LatticePath, a: str, rho: Sequence[int]) -> LatticePath:
    """Reindex the ``a``-fiber along a monotone map (faces delete, degeneracies copy).

    ``rho`` maps the new fiber ``0..k`` into the old fiber ``0..m``; the new
    j-th occurrence of ``a`` sits where occurrence ``rho[j]`` sat.
    """
    fiber = x.fiber(a)
    if not fiber:
        raise PathError(f"letter {a!r} does not occur")
    m = len(fiber) - 1
    _monotone_into(rho, m)
    copies = [0] * len(fiber)
    for v in rho:
        copies[v] += 1
    letters: list[str] = []
    old_positions: list[int] = []
    occurrence = 0
    for i, ch in enumerate(x.letters):
        if ch == a:
            letters.extend(a for _ in range(copies[occurrence]))
            old_positions.extend(i for _ in range(copies[occurrence]))
            occurrence += 1
        else:
            letters.append(ch)
            old_positions.append(i)
    bars = tuple(
        sum(1 for p in old_positions if p < cut) for cut in x.bars
    )
    return LatticePath(tuple(letters), bars)


def lp_simple_face(x: LatticePath, a: str, i: int) -> LatticePath:
    """Delete the i-th occurrence of ``a``."""
    m = len(x.fiber(a)) - 1
    if not 0 <= i <= m:
        raise PathError("face index out of range")
    if m == 0:
        raise PathError("cannot delete the last occurrence of a letter")
    return lp_face(x, a, [v for v in range(m + 1) if v != i])


def lp_simple_degeneracy(x: LatticePath, a: str, j: int) -> LatticePath:
    """Duplicate the j-th occurrence of ``a`` (copies stay in its block)."""
    m = len(x.fiber(a)) - 1
    if not 0 <= j <= m:
        raise PathError("degeneracy index out of range")
    rho = list(range(j + 1)) + list(range(j, m + 1))
    return lp_face(x, a, rho)


def lp_coface(x: LatticePath, i: int) -> LatticePath:
    """Insert an empty block before block ``i``; ``i`` may equal degree+1."""
    n = x.degree
    if not 0 <= i <= n + 1:
        raise PathError("coface index out of range")
    cuts = (0,) + x.bars + (len(x.letters),)
    new_cut = cuts[i]
    bars = x.bars[:i] + (new_cut,) + x.bars[i:]
    return LatticePath(x.letters, bars)


def lp_codegeneracy(x: LatticePath, i: int) -> LatticePath:
    """Merge blocks ``i`` and ``i+1`` by removing the bar between them."""
    n = x.degree
    if not 0 <= i <= n - 1:
        raise PathError("codegeneracy index out of range")
    bars = x.bars[:i] + x.bars[i + 1 :]
    return LatticePath(x.letters, bars)


def lp_cosimplicial(x: LatticePath, rho: Sequence[int], target: int) -> LatticePath:
    """Push the bar structure along a monotone map into ``0..target``.

    Old block ``i`` lands in new block ``rho[i]``; new blocks without
    preimage are empty.  Cofaces and codegeneracies are the special cases.
    """
    if len(rho) != x.degree + 1:
        raise PathError("operator domain must match the block count")
    prev = 0
    for v in rho:
        if v < prev or v > target:
            raise PathError("operator must be monotone into the target range")
        prev = v
    blocks = x.blocks()
    bars = []
    for j in range(1, target + 1):
        bars.append(
            sum(len(blocks[i]) for i in range(len(blocks)) if rho[i] < j)
        )
    return LatticePath(x.letters, tuple(bars))


def is_nondegenerate(x: LatticePath) -> bool:
    """No two adjacent equal letters within the same block."""
    for i in range(len(x.letters) - 1):
        if x.letters[i] == x.letters[i + 1] and x.block_of(i) == x.block_of(
            i + 1
        ):
            return False
    return True


# ---------------------------------------------------------------------------
# Substitution


def lp_substitute(x: LatticePath, a: str, y: LatticePath) -> LatticePath:
    """Replace the i-th occurrence of ``a`` in ``x`` by the i-th block of ``y``.

    The fiber of ``a`` must match the block count of ``y``; the bars of the
    result are those of ``x``, re-indexed for the changed letter counts.
    """
    fiber = x.fiber(a)
    if not fiber:
        raise PathError(f"letter {a!r} does not occur")
    clash = (set(x.letters) - {a}) & set(y.letters)
    if clash:
        raise PathError(f"alphabet clash on {sorted(clash)}")
    y_blocks = y.blocks()
    if len(fiber) != len(y_blocks):
        raise PathError(
            f"fiber of {a!r} has {len(fiber)} occurrences but the substituted "
            f"path has {len(y_blocks)} blocks"
        )
    letters: list[str] = []
    expanded: list[int] = []  # count of new letters produced per old position
    occurrence = 0
    for ch in x.letters:
        if ch == a:
            block = y_blocks[occurrence]
            letters.extend(block)
            expanded.append(len(block))
            occurrence += 1
        else:
            letters.append(ch)
            expanded.append(1)
    prefix = [0]
    for count in expanded:
        prefix.append(prefix[-1] + count)
    bars = tuple(prefix[cut] for cut in x.bars)
    return LatticePath(tuple(letters), bars)


def lp_sigma(x: LatticePath, g: WeightedTournament) -> LatticePath:
    """Prepend the least vertex of ``g``; a section of the drop-first map."""
    if x.bars:
        raise PathError("the section is defined on bar-free paths")
    if set(x.letters) != set(g.vertices):
        raise PathError("alphabet must match the graph's vertex set")
    if not graphs.leq(lp_gamma(x, g.max_weight), g):
        raise PathError("path does not lie over the graph")
    a0 = graphs.underlying_order(g)[0]
    return LatticePath((a0,) + x.letters, ())


# ---------------------------------------------------------------------------
# Realisation points


@dataclass(frozen=True)
class RealizationPoint:
    """A nondegenerate path with positive per-letter masses, fiber sums one."""

    path: LatticePath
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != len(self.path.letters):
            raise PathError("one coordinate per letter required")
        if not is_nondegenerate(self.path):
            raise PathError("point must sit on a nondegenerate path")
        if any(t <= 0 for t in self.coords):
            raise PathError("coordinates must be positive")
        sums: dict[str, Fraction] = {}
        for ch, t in zip(self.path.letters, self.coords):
            sums[ch] = sums.get(ch, Fraction(0)) + t
        if any(total != 1 for total in sums.values()):
            raise PathError("each fiber must sum to one")


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise PathError(f"not an exact rational: {value!r}")


def lp_normalize_point(
    x: LatticePath, coords: Sequence[Fraction | int | str]
) -> RealizationPoint:
    """Drop zero-mass letters and merge in-block repeats, summing masses."""
    values = [_as_fraction(t) for t in coords]
    if len(values) != len(x.letters):
        raise PathError("one coordinate per letter required")
    if any(t < 0 for t in values):
        raise PathError("coordinates must be nonnegative")
    fiber_sums: dict[str, Fraction] = {}
    for ch, t in zip(x.letters, values):
        fiber_sums[ch] = fiber_sums.get(ch, Fraction(0)) + t
    dead = [ch for ch, total in fiber_sums.items() if total == 0]
    if dead:
        raise PathError(f"letters {sorted(dead)} have zero total mass")
    letters: list[str] = []
    masses: list[Fraction] = []
    block_ids: list[int] = []
    for i, (ch, t) in enumerate(zip(x.letters, values)):
        if t == 0:
            continue
        block = x.block_of(i)
        if letters and letters[-1] == ch and block_ids[-1] == block:
            masses[-1] += t
        else:
            letters.append(ch)
            masses.append(t)
            block_ids.append(block)
    bars = tuple(
        sum(1 for b in block_ids if b < block_index)
        for block_index in range(1, x.degree + 1)
    )
    return RealizationPoint(
        LatticePath(tuple(letters), bars), tuple(masses)
    )


def lp_project_point(
    point: RealizationPoint,
) -> tuple[RealizationPoint, tuple[Fraction, ...]]:
    """Forget the bars; return the bar-free point and the block mass vector."""
    x = point.path
    sums = [Fraction(0)] * (x.degree + 1)
    for i, t in enumerate(point.coords):
        sums[x.block_of(i)] += t
    stripped = LatticePath(x.letters, ())
    return lp_normalize_point(stripped, point.coords), tuple(sums)


def lp_split_point(
    point: RealizationPoint, block_masses: Sequence[Fraction | int | str]
) -> RealizationPoint:
    """Re-cut a bar-free point so block ``i`` carries mass ``block_masses[i]``.

    Letters straddling a cut split in two, with masses on each side of the
    cut; the result normalises to the unique preimage of the projection.
    """
    if point.path.bars:
        raise PathError("split expects a bar-free point")
    masses = [_as_fraction(s) for s in block_masses]
    if any(s < 0 for s in masses):
        raise PathError("block masses must be nonnegative")
    total = sum(point.coords, Fraction(0))
    if sum(masses, Fraction(0)) != total:
        raise PathError("block masses must sum to the total letter mass")
    n = len(masses) - 1
    if n < 0:
        raise PathError("need at least one block")
    cuts = []
    running = Fraction(0)
    for s in masses[:-1]:
        running += s
        cuts.append(running)
    letters: list[str] = []
    pieces: list[Fraction] = []
    bars: list[int] = []
    cut_iter = iter(cuts + [None])
    next_cut = next(cut_iter)
    consumed = Fraction(0)
    for ch, t in zip(point.path.letters, point.coords):
        remaining = t
        start = consumed
        while next_cut is not None and start + remaining >= next_cut:
            left = next_cut - start
            letters.append(ch)
            pieces.append(left)
            bars.append(len(letters))
            remaining -= left
            start = next_cut
            next_cut = next(cut_iter)
        letters.append(ch)
        pieces.append(remaining)
        consumed += t
    while next_cut is not None:  # pragma: no cover - masses sum exactly
        bars.append(len(letters))
        next_cut = next(cut_iter)
    return lp_normalize_point(
        LatticePath(tuple(letters), tuple(bars)), pieces
    )


# ---------------------------------------------------------------------------
# Enumeration of the bar-free model under a graph


def enumerate_L_g(
    vertices: Iterable[str],
    g: WeightedTournament,
    caps: Caps = DEFAULT_CAPS,
) -> list[LatticePath]:
    """All nondegenerate bar-free paths whose tournament lies at or below ``g``.

    Each appended letter alternates against the previous one, so the total
    alternation budget from ``g`` bounds the word length and the search
    terminates.
    """
    alphabet = tuple(sorted(vertices))
    if tuple(sorted(g.vertices)) != alphabet:
        raise PathError("graph must live on the same alphabet")
    caps.check_vertices(len(alphabet))
    pairs = list(itertools.combinations(alphabet, 2))

    def admissible(word: tuple[str, ...]) -> bool:
        firsts: dict[str, int] = {}
        for i, ch in enumerate(word):
            firsts.setdefault(ch, i)
        for a, b in pairs:
            if a not in firsts or b not in firsts:
                continue
            merged = [
                ch for ch in word if ch in (a, b)
            ]
            w = 1
            for i in range(len(merged) - 1):
                if merged[i] != merged[i + 1]:
                    w += 1
            w -= 1
            tail, _head, bound = g.arc(a, b)
            first_is_tail = (firsts[a] < firsts[b]) == (tail == a)
            if w > (bound if first_is_tail else bound - 1):
                return False
        return True

    results: list[LatticePath] = []
    counter = [0]

    def extend(word: tuple[str, ...]) -> None:
        counter[0] += 1
        caps.check_candidates(counter[0])
        if set(word) == set(alphabet):
            results.append(LatticePath(word, ()))
        for ch in alphabet:
            if word and ch == word[-1]:
                continue
            new = word + (ch,)
            if admissible(new):
                extend(new)

    for ch in alphabet:
        if admissible((ch,)):
            extend((ch,))
    results.sort(key=lambda p: (len(p.letters), p.letters))
    return results


def _positive_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ways to write ``total`` as ``parts`` positive integers."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _positive_compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_paths(
    vertices: Iterable[str], max_weight: int, caps: Caps = DEFAULT_CAPS
) -> list[LatticePath]:
    """All nondegenerate bar-free paths with pairwise weights at most ``max_weight``."""
    alphabet = tuple(sorted(vertices))
    caps.check_vertices(len(alphabet))
    caps.check_weight(max_weight)
    pairs = list(itertools.combinations(alphabet, 2))

    def weights_ok(word: tuple[str, ...]) -> bool:
        for a, b in pairs:
            merged = [ch for ch in word if ch in (a, b)]
            switches = sum(
                merged[i] != merged[i + 1] for i in range(len(merged) - 1)
            )
            if switches > max_weight:
                return False
        return True

    results: list[LatticePath] = []
    counter = [0]

    def extend(word: tuple[str, ...]) -> None:
        counter[0] += 1
        caps.check_candidates(counter[0])
        if set(word) == set(alphabet):
            results.append(LatticePath(word, ()))
        for ch in alphabet:
            if ch == word[-1]:
                continue
            new = word + (ch,)
            if weights_ok(new):
                extend(new)

    for ch in alphabet:
        extend((ch,))
    results.sort(key=lambda p: (len(p.letters), p.letters))
    return results


def diagonal_cells(paths: Iterable[LatticePath]) -> list[list[LatticePath]]:
    """All cells of uniform multidegree spanned by the given bar-free paths.

    A cell of diagonal dimension p repeats every letter p+1 times; it is a
    joint degeneracy of a unique nondegenerate path, realised by choosing,
    per letter, how often each original occurrence is copied.  The input
    must therefore list the nondegenerate paths; the output levels contain
    every cell the sub-multisimplicial set holds in uniform degree.
    """
    base = list(paths)
    for x in base:
        if x.bars:
            raise PathError("diagonal cells expect bar-free paths")
        if not is_nondegenerate(x):
            raise PathError("diagonal cells expect nondegenerate base paths")
    by_dim: dict[int, set[tuple[str, ...]]] = {}
    for x in base:
        alphabet = x.alphabet
        fiber_sizes = [len(x.fiber(a)) for a in alphabet]
        lower = max(fiber_sizes)
        upper = sum(fiber_sizes) - len(alphabet) + 1
        for p1 in range(lower, upper + 1):
            per_letter = [
                list(_positive_compositions(p1, size)) for size in fiber_sizes
            ]
            for combo in itertools.product(*per_letter):
                counts = dict(zip(alphabet, combo))
                occurrence = {a: 0 for a in alphabet}
                word: list[str] = []
                for ch in x.letters:
                    word.extend(ch for _ in range(counts[ch][occurrence[ch]]))
                    occurrence[ch] += 1
                by_dim.setdefault(p1 - 1, set()).add(tuple(word))
    top = max(by_dim, default=-1)
    return [
        [LatticePath(w, ()) for w in sorted(by_dim.get(p, ()))]
        for p in range(top + 1)
    ]


def diag_face(x: LatticePath, i: int) -> LatticePath:
    """Delete the i-th occurrence of every letter simultaneously."""
    out = x
    for a in x.alphabet:
        out = lp_simple_face(out, a, i)
    return out


def diag_degeneracy(x: LatticePath, j: int) -> LatticePath:
    """Duplicate the j-th occurrence of every letter simultaneously."""
    out = x
    for a in x.alphabet:
        out = lp_simple_degeneracy(out, a, j)
    return out


def path_to_json(x: LatticePath) -> dict:
    return {"letters": list(x.letters), "bars": list(x.bars)}


def path_from_json(data: Mapping) -> LatticePath:
    try:
        return LatticePath(tuple(data["letters"]), tuple(int(b) for b in data["bars"]))
    except (KeyError, TypeError) as exc:
        raise PathError(f"malformed path JSON: {exc}") from exc

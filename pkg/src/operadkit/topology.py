"""Finite posets, simplicial sets and integer homology.

The verification machinery: order complexes of finite posets, comma
subposets of monotone maps, a small normalized-chains homology engine based
on an exact integer Smith normal form, and the diagonal simplicial set of a
multisimplicial family.  Everything is exact; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .limits import DEFAULT_CAPS, Caps


class PosetError(ValueError):
    """Relation data is not a partial order, or elements are unknown."""


@dataclass(frozen=True)
class FinitePoset:
    """A finite poset given by its element list and full order relation."""

    elements: tuple[Hashable, ...]
    relation: tuple[tuple[bool, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise PosetError("duplicate elements")
        if len(self.relation) != n or any(len(row) != n for row in self.relation):
            raise PosetError("relation matrix shape mismatch")
        masks = self._masks
        for i in range(n):
            if not self.relation[i][i]:
                raise PosetError("relation is not reflexive")
            row = masks[i]
            for j in range(n):
                if row >> j & 1:
                    if i != j and masks[j] >> i & 1:
                        raise PosetError("relation is not antisymmetric")
                    if masks[j] & ~row:
                        raise PosetError("relation is not transitive")

    @cached_property
    def _masks(self) -> tuple[int, ...]:
        # Row i as a bitmask: bit j set iff elements[i] <= elements[j].
        out = []
        for row in self.relation:
            mask = 0
            for j, flag in enumerate(row):
                if flag:
                    mask |= 1 << j
            out.append(mask)
        return tuple(out)

    @classmethod
    def from_leq(
        cls, elements: Iterable[Hashable], leq: Callable[[Hashable, Hashable], bool]
    ) -> "FinitePoset":
        elems = tuple(elements)
        matrix = tuple(
            tuple(bool(leq(a, b)) for b in elems) for a in elems
        )
        return cls(elems, matrix)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self) -> dict[Hashable, int]:
        return {x: i for i, x in enumerate(self.elements)}

    def index(self, x: Hashable) -> int:
        return self._index[x]

    def leq(self, x: Hashable, y: Hashable) -> bool:
        return self.relation[self.index(x)][self.index(y)]

    def leq_by_index(self, i: int, j: int) -> bool:
        return self.relation[i][j]

    def subposet(self, keep: Iterable[Hashable]) -> "FinitePoset":
        keep_set = set(keep)
        idx = [i for i, x in enumerate(self.elements) if x in keep_set]
        elems = tuple(self.elements[i] for i in idx)
        matrix = tuple(
            tuple(self.relation[i][j] for j in idx) for i in idx
        )
        return FinitePoset(elems, matrix)

    def covers(self) -> list[tuple[Hashable, Hashable]]:
        """All covering pairs (x, y) with x < y and nothing strictly between."""
        n = len(self.elements)
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.relation[i][j]:
                    continue
                if any(
                    self.relation[i][k] and self.relation[k][j]
                    for k in range(n)
                    if k not in (i, j)
                ):
                    continue
                out.append((self.elements[i], self.elements[j]))
        return out


def poset_from_covers(
    elements: Iterable[Hashable], covers: Iterable[tuple[Hashable, Hashable]]
) -> FinitePoset:
    """Reflexive-transitive closure of a cover list."""
    elems = tuple(elements)
    pos = {x: i for i, x in enumerate(elems)}
    n = len(elems)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for lo, hi in covers:
        rel[pos[lo]][pos[hi]] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                row_k = rel[k]
                row_i = rel[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return FinitePoset(elems, tuple(tuple(row) for row in rel))


def comma_poset(
    domain: FinitePoset,
    f: Mapping[Hashable, Hashable],
    codomain: FinitePoset,
    q: Hashable,
) -> FinitePoset:
    """The subposet of elements whose image lands at or below ``q``."""
    if q not in codomain._index:
        raise PosetError("target element not in codomain")
    try:
        image = [codomain.index(f[x]) for x in domain.elements]
    except KeyError as exc:
        raise PosetError(f"map undefined or lands outside codomain: {exc}") from exc
    cod_masks = codomain._masks
    for i, row in enumerate(domain._masks):
        for j in _iter_bits(row):
            if not cod_masks[image[i]] >> image[j] & 1:
                raise PosetError("map data is not monotone")
    qi = codomain.index(q)
    keep = [
        x
        for x, img in zip(domain.elements, image)
        if cod_masks[img] >> qi & 1
    ]
    return domain.subposet(keep)


def is_cone(poset: FinitePoset) -> bool:
    """True iff the poset has a global minimum or maximum (hence is contractible)."""
    n = len(poset.elements)
    if n == 0:
        return False
    has_max = any(
        all(poset.relation[i][j] for i in range(n)) for j in range(n)
    )
    has_min = any(
        all(poset.relation[i][j] for j in range(n)) for i in range(n)
    )
    return has_max or has_min


def poset_core(poset: FinitePoset) -> FinitePoset:
    """Iteratively strip beat points; the order complex keeps its homotopy type.

    A point is an up-beat point when the elements strictly above it have a
    unique minimum, and dually for down-beat points.  Removing such a point
    deformation-retracts the order complex, so homology computed on the core
    matches homology of the full complex at a fraction of the size.
    """
    current = poset
    changed = True
    while changed and len(current) > 1:
        changed = False
        n = len(current)
        up = list(current._masks)
        down = [0] * n
        for i in range(n):
            for j in range(n):
                if up[i] >> j & 1:
                    down[j] |= 1 << i
        for i in range(n):
            bit = 1 << i
            above = up[i] & ~bit
            if above and any(
                up[j] & above == above for j in _iter_bits(above)
            ):
                pass
            else:
                below = down[i] & ~bit
                if not below or not any(
                    down[j] & below == below for j in _iter_bits(below)
                ):
                    continue
            current = current.subposet(
                [x for k, x in enumerate(current.elements) if k != i]
            )
            changed = True
            break
    return current


def _iter_bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass
class FiniteSSet:
    """Nondegenerate simplices with normalized face data.

    ``simplices[k]`` lists the nondegenerate k-simplices (hashable keys);
    ``faces[k][s][i]`` is the index of the i-th face of simplex ``s`` inside
    dimension k-1, or ``None`` when that face is degenerate.  This is
    exactly what the normalized chain complex needs.
    """

    simplices: list[list[Hashable]] = field(default_factory=list)
    faces: list[list[list[int | None]]] = field(default_factory=list)

    def dimension(self) -> int:
        return len(self.simplices) - 1

    def size(self) -> int:
        return sum(len(level) for level in self.simplices)

    def counts(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.simplices)


def build_sset(
    simplices_by_dim: Sequence[Iterable[Hashable]],
    face: Callable[[int, Hashable, int], Hashable],
    is_degenerate: Callable[[int, Hashable], bool],
    caps: Caps = DEFAULT_CAPS,
) -> FiniteSSet:
    """Assemble a :class:`FiniteSSet` from nondegenerate simplices and a face rule.

    ``face(k, s, i)`` must return the raw i-th face of a k-simplex; the
    builder records it when nondegenerate and drops it otherwise.  Every
    nondegenerate face must itself be listed, or the input was not closed.
    """
    levels = [list(level) for level in simplices_by_dim]
    while levels and not levels[-1]:
        levels.pop()
    total = sum(len(level) for level in levels)
    caps.check_cells(total)
    index: list[dict[Hashable, int]] = [
        {s: i for i, s in enumerate(level)} for level in levels
    ]
    for k, level in enumerate(index):
        if len(level) != len(levels[k]):
            raise ValueError("duplicate simplex in dimension %d" % k)
    faces: list[list[list[int | None]]] = [[] for _ in levels]
    for k, level in enumerate(levels):
        for s in level:
            if k == 0:
                faces[k].append([])
                continue
            row: list[int | None] = []
            for i in range(k + 1):
                f = face(k, s, i)
                if is_degenerate(k - 1, f):
                    row.append(None)
                else:
                    try:
                        row.append(index[k - 1][f])
                    except KeyError as exc:
                        raise ValueError(
                            f"face {f!r} of {s!r} missing from dimension {k-1}"
                        ) from exc
            faces[k].append(row)
    return FiniteSSet(levels, faces)


def order_complex(poset: FinitePoset, caps: Caps = DEFAULT_CAPS) -> FiniteSSet:
    """The nerve: nondegenerate k-simplices are strict chains of length k+1."""
    n = len(poset.elements)
    strictly_less = [
        [j for j in range(n) if j != i and poset.relation[i][j]]
        for i in range(n)
    ]
    chains: list[list[tuple[int, ...]]] = [[(i,) for i in range(n)]]
    total = n
    while chains[-1]:
        caps.check_cells(total)
        nxt = []
        for chain in chains[-1]:
            for j in strictly_less[chain[-1]]:
                nxt.append(chain + (j,))
        total += len(nxt)
        caps.check_cells(total)
        if nxt:
            chains.append(nxt)
        else:
            break
    levels: list[list[Hashable]] = [
        [tuple(poset.elements[i] for i in chain) for chain in level]
        for level in chains
    ]

    def face(_k: int, chain: Hashable, i: int) -> Hashable:
        return chain[:i] + chain[i + 1 :]  # type: ignore[index]

    return build_sset(levels, face, lambda _k, _s: False, caps=caps)


def diagonal(
    cells_by_dim: Sequence[Iterable[Hashable]],
    face: Callable[[int, Hashable, int], Hashable],
    degeneracy: Callable[[int, Hashable, int], Hashable],
    caps: Caps = DEFAULT_CAPS,
) -> FiniteSSet:
    """Diagonal simplicial set of a multisimplicial family.

    ``cells_by_dim[p]`` lists all cells whose degree is p in every
    direction; ``face``/``degeneracy`` act simultaneously in all directions.
    A cell is degenerate exactly when it equals ``s_j(d_{j+1}(cell))`` for
    some j, which the builder checks directly.
    """

    def is_degenerate(k: int, cell: Hashable) -> bool:
        for j in range(k):
            if degeneracy(k - 1, face(k, cell, j + 1), j) == cell:
                return True
        return False

    levels = []
    for p, level in enumerate(cells_by_dim):
        levels.append([c for c in level if not is_degenerate(p, c)])
    return build_sset(levels, face, is_degenerate, caps=caps)


# ---------------------------------------------------------------------------
# Integer linear algebra


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix.

    Sparse elimination with a pivot strategy that prefers +-1 entries and
    low fill-in; arbitrary-precision integers throughout.
    """
    rows: dict[int, dict[int, int]] = {}
    col_index: dict[int, set[int]] = {}
    for i, row in enumerate(matrix):
        for j, val in enumerate(row):
            if val:
                rows.setdefault(i, {})[j] = int(val)
                col_index.setdefault(j, set()).add(i)
    return _snf_sparse(rows, col_index)


def _snf_sparse(
    rows: dict[int, dict[int, int]], col_index: dict[int, set[int]]
) -> list[int]:
    def drop(i: int, j: int) -> None:
        del rows[i][j]
        if not rows[i]:
            del rows[i]
        col_index[j].discard(i)
        if not col_index[j]:
            del col_index[j]

    def set_entry(i: int, j: int, val: int) -> None:
        if val:
            rows.setdefault(i, {})[j] = val
            col_index.setdefault(j, set()).add(i)
        elif i in rows and j in rows[i]:
            drop(i, j)

    def add_row(src: int, dst: int, factor: int) -> None:
        if not factor or src not in rows:
            return
        for j, val in list(rows[src].items()):
            set_entry(dst, j, rows.get(dst, {}).get(j, 0) + factor * val)

    def add_col(src: int, dst: int, factor: int) -> None:
        if not factor or src not in col_index:
            return
        for i in list(col_index[src]):
            set_entry(i, dst, rows.get(i, {}).get(dst, 0) + factor * rows[i][src])

    diagonal_entries: list[int] = []
    while rows:
        best = None
        best_score = None
        for i, row in rows.items():
            row_nnz = len(row)
            for j, val in row.items():
                score = (abs(val) != 1, abs(val), (row_nnz - 1) * (len(col_index[j]) - 1))
                if best_score is None or score < best_score:
                    best_score = score
                    best = (i, j)
                    if score[:2] == (False, 1) and score[2] == 0:
                        break
            if best_score is not None and best_score[:2] == (False, 1) and best_score[2] == 0:
                break
        pi, pj = best  # type: ignore[misc]
        while True:
            # Move the pivot to the smallest cross entry, then sweep with
            # floor division.  Leftover remainders are strictly smaller than
            # the pivot, so the cross minimum shrinks and the loop ends.
            cross = [(abs(rows[pi][pj]), pi, pj)]
            cross.extend(
                (abs(rows[i][pj]), i, pj) for i in col_index.get(pj, ())
            )
            cross.extend(
                (abs(rows[pi][j]), pi, j) for j in rows.get(pi, {})
            )
            _, pi, pj = min(cross)
            pivot = rows[pi][pj]
            for i in list(col_index.get(pj, ())):
                if i == pi:
                    continue
                q = rows[i][pj] // pivot
                add_row(pi, i, -q)
            for j in list(rows.get(pi, {})):
                if j == pj:
                    continue
                q = rows[pi][j] // pivot
                add_col(pj, j, -q)
            col_rest = [i for i in col_index.get(pj, ()) if i != pi]
            row_rest = [j for j in rows.get(pi, {}) if j != pj]
            if not col_rest and not row_rest:
                break
        pivot = rows[pi][pj]
        # The pivot must also divide the remaining block for true invariant
        # factors; fold a violating row in and continue eliminating.
        offender = None
        for i, row in rows.items():
            if i == pi:
                continue
            for j, val in row.items():
                if val % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, pi, 1)
            continue
        diagonal_entries.append(abs(pivot))
        drop(pi, pj)
    diagonal_entries.sort()
    return diagonal_entries


@dataclass(frozen=True)
class HomologyResult:
    """Reduced integer homology: betti numbers and torsion per degree."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def is_trivial(self) -> bool:
        return all(b == 0 for b in self.betti) and all(
            not t for t in self.torsion
        )

    def __str__(self) -> str:
        parts = []
        for k, (b, tors) in enumerate(zip(self.betti, self.torsion)):
            desc = str(b)
            if tors:
                desc += "+" + "+".join(f"Z/{t}" for t in tors)
            parts.append(f"H~{k}={desc}")
        return " ".join(parts) if parts else "H~=0 (empty)"


def boundary_matrices(sset: FiniteSSet) -> list[dict[tuple[int, int], int]]:
    """Normalized boundary maps; entry maps (row, col) to a coefficient."""
    out = []
    for k in range(1, len(sset.simplices)):
        matrix: dict[tuple[int, int], int] = {}
        for col, row_data in enumerate(sset.faces[k]):
            for i, target in enumerate(row_data):
                if target is None:
                    continue
                key = (target, col)
                matrix[key] = matrix.get(key, 0) + (1 if i % 2 == 0 else -1)
        out.append({k: v for k, v in matrix.items() if v})
    return out


def _snf_of_dict(entries: dict[tuple[int, int], int]) -> list[int]:
    rows: dict[int, dict[int, int]] = {}
    col_index: dict[int, set[int]] = {}
    for (i, j), val in entries.items():
        if val:
            rows.setdefault(i, {})[j] = val
            col_index.setdefault(j, set()).add(i)
    return _snf_sparse(rows, col_index)


def homology(sset: FiniteSSet, max_dim: int | None = None) -> HomologyResult:
    """Reduced integer homology of the normalized chain complex."""
    counts = list(sset.counts())
    if not counts:
        raise ValueError("homology of the empty simplicial set is not defined here")
    top = len(counts) - 1
    if max_dim is not None and top > max_dim:
        raise ValueError(
            f"complex has dimension {top}, above the requested bound {max_dim}"
        )
    boundaries = boundary_matrices(sset)
    invariants = [_snf_of_dict(b) for b in boundaries]
    ranks = [len(inv) for inv in invariants]
    # Augmentation row in degree 0 accounts for reduced homology.
    rank_aug = 1 if counts[0] else 0
    betti = []
    torsion = []
    for k in range(top + 1):
        rank_in = ranks[k] if k < len(ranks) else 0
        rank_out = rank_aug if k == 0 else ranks[k - 1]
        betti.append(counts[k] - rank_out - rank_in)
        tors = tuple(d for d in (invariants[k] if k < len(invariants) else [])
                     if d > 1)
        torsion.append(tors)
    return HomologyResult(tuple(betti), tuple(torsion))


def euler_characteristic(sset: FiniteSSet) -> int:
    return sum(
        (1 if k % 2 == 0 else -1) * len(level)
        for k, level in enumerate(sset.simplices)
    )


def poset_homology(
    poset: FinitePoset, caps: Caps = DEFAULT_CAPS, use_core: bool = True
) -> HomologyResult:
    """Reduced homology of the order complex, via the poset core by default.

    Posets with a global extremum must come out trivial; that is asserted on
    every such input as an internal consistency check of the engine.
    """
    reduced = poset_core(poset) if use_core else poset
    if len(reduced) == 0:
        raise ValueError("empty poset")
    result = homology(order_complex(reduced, caps=caps))
    if is_cone(poset) and not result.is_trivial():  # pragma: no cover
        raise AssertionError(
            "homology engine returned nontrivial homology for a cone"
        )
    return result


def sphere_signature(dim: int, length: int) -> HomologyResult:
    """The reduced homology a d-sphere would have, padded to ``length`` degrees."""
    betti = [0] * length
    if 0 <= dim < length:
        betti[dim] = 1
    return HomologyResult(tuple(betti), tuple(() for _ in range(length)))

"""Reduced integral homology through Smith normal form.

Arithmetic is on Python ints throughout, so intermediate entries can grow
without overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .complex import OrderComplex

__all__ = [
    "IntegerMatrix",
    "HomologyProfile",
    "DEFAULT_DENSIFY_THRESHOLD",
    "boundary_matrices",
    "smith_normal_form",
    "reduced_homology",
    "is_homology_sphere",
]

DEFAULT_DENSIFY_THRESHOLD = 512


@dataclass(frozen=True)
class IntegerMatrix:
    """Sparse integer matrix: ``entries`` maps ``(row, col)`` to a nonzero int."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntegerMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        entries = {(i, j): int(v) for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(nrows, ncols, entries)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                acc[i, j] = acc.get((i, j), 0) + a * b
        return IntegerMatrix(self.rows, other.cols, {ij: v for ij, v in acc.items() if v})

    def is_zero(self) -> bool:
        return not self.entries


def boundary_matrices(K: OrderComplex) -> list[IntegerMatrix]:
    """Boundary maps of the augmented chain complex.

    Item ``d`` is the map from ``d``-faces to ``(d-1)``-faces; item 0 is the
    augmentation onto the single empty face. Faces are indexed in sorted
    order within each dimension.
    """
    faces = K.faces
    mats = []
    if not faces:
        return mats
    mats.append(IntegerMatrix(1, len(faces[0]), {(0, j): 1 for j in range(len(faces[0]))}))
    for d in range(1, len(faces)):
        index = {f: i for i, f in enumerate(faces[d - 1])}
        entries = {}
        for j, f in enumerate(faces[d]):
            for k in range(len(f)):
                entries[index[f[:k] + f[k + 1:]], j] = -1 if k % 2 else 1
        mats.append(IntegerMatrix(len(faces[d - 1]), len(faces[d]), entries))
    return mats


def _invariant_factors(diag: list[int]) -> list[int]:
    d = sorted(diag)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return d


def _snf_dense(a: list[list[int]]) -> list[int]:
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    diag = []
    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            row = a[i]
            for j in range(t, ncols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // p
                    ri, rt = a[i], a[t]
                    for j in range(t, ncols):
                        if rt[j]:
                            ri[j] -= q * rt[j]
                    dirty |= bool(ri[t])
            if not dirty:
                for j in range(t + 1, ncols):
                    if a[t][j]:
                        q = a[t][j] // p
                        # column t is clear below the pivot
                        a[t][j] -= q * p
                        dirty |= bool(a[t][j])
            if not dirty:
                break
            # a remainder smaller than the pivot becomes the new pivot
            _, i, j = min(
                [(abs(a[i][t]), i, t) for i in range(t + 1, nrows) if a[i][t]]
                + [(abs(a[t][j]), t, j) for j in range(t + 1, ncols) if a[t][j]]
            )
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def _snf_sparse(M: IntegerMatrix) -> list[int]:
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, dict[int, int]] = {}
    for (i, j), v in M.entries.items():
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, {})[i] = v

    def put(i: int, j: int, v: int) -> None:
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, {})[i] = v
        else:
            rows[i].pop(j, None)
            cols[j].pop(i, None)

    def add_row(dst: int, src: int, k: int) -> None:
        for j, v in list(rows[src].items()):
            put(dst, j, rows.get(dst, {}).get(j, 0) + k * v)

    def add_col(dst: int, src: int, k: int) -> None:
        for i, v in list(cols[src].items()):
            put(i, dst, cols.get(dst, {}).get(i, 0) + k * v)

    diag = []
    while True:
        best = None
        for i, row in rows.items():
            for j, v in row.items():
                if best is None or abs(v) < best[0]:
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, r, c = best
        while True:
            p = rows[r][c]
            for i in [i for i in cols[c] if i != r]:
                add_row(i, r, -(cols[c][i] // p))
            rest = [(abs(v), i, c) for i, v in cols[c].items() if i != r]
            if not rest:
                for j in [j for j in rows[r] if j != c]:
                    add_col(j, c, -(rows[r][j] // p))
                rest = [(abs(v), r, j) for j, v in rows[r].items() if j != c]
            if not rest:
                break
            _, r, c = min(rest)
        diag.append(abs(rows[r][c]))
        put(r, c, 0)
        for j in list(rows.pop(r)):
            cols[j].pop(r, None)
        for i in list(cols.pop(c)):
            rows[i].pop(c, None)
        for i in [i for i, row in rows.items() if not row]:
            del rows[i]
        for j in [j for j, col in cols.items() if not col]:
            del cols[j]
    return diag


def smith_normal_form(
    M: IntegerMatrix, densify_threshold: int = DEFAULT_DENSIFY_THRESHOLD
) -> tuple[tuple[int, ...], int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` and the rank of ``M``.

    Pivoting always takes an entry of least absolute value. Matrices with
    both dimensions at most ``densify_threshold`` are reduced as dense
    lists, larger ones on the sparse form.
    """
    if M.rows <= densify_threshold and M.cols <= densify_threshold:
        diag = _snf_dense(M.to_dense())
    else:
        diag = _snf_sparse(M)
    factors = _invariant_factors([d for d in diag if d])
    return tuple(factors), len(factors)


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced Betti numbers and torsion for degrees ``-1 .. dim``.

    ``betti[k]`` and ``torsion[k]`` refer to degree ``k - 1``.
    """

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    @property
    def top_degree(self) -> int:
        return len(self.betti) - 2

    def betti_at(self, d: int) -> int:
        k = d + 1
        return self.betti[k] if 0 <= k < len(self.betti) else 0

    def torsion_at(self, d: int) -> tuple[int, ...]:
        k = d + 1
        return self.torsion[k] if 0 <= k < len(self.torsion) else ()

    def euler(self) -> int:
        return sum((-1) ** (k - 1) * b for k, b in enumerate(self.betti))

    def to_dict(self) -> dict:
        return {
            "degrees": list(range(-1, self.top_degree + 1)),
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HomologyProfile":
        return cls(tuple(d["betti"]), tuple(tuple(t) for t in d["torsion"]))

    def describe(self) -> str:
        parts = []
        for k, (b, t) in enumerate(zip(self.betti, self.torsion)):
            if b or t:
                group = " + ".join(["Z" if b == 1 else f"Z^{b}"] * bool(b) + [f"Z/{x}" for x in t])
                parts.append(f"H~{k - 1} = {group}")
        return ", ".join(parts) or "acyclic"


def reduced_homology(
    K: OrderComplex, densify_threshold: int = DEFAULT_DENSIFY_THRESHOLD
) -> HomologyProfile:
    """Homology of the augmented chain complex of ``K``."""
    mats = boundary_matrices(K)
    dims = [1] + list(K.f_vector)  # ranks of C_{-1}, C_0, ...
    snf = [smith_normal_form(M, densify_threshold) for M in mats]
    # ranks[k]: rank of the boundary out of chain group k (degree k - 1)
    ranks = [0] + [r for _, r in snf] + [0]
    betti = tuple(dims[k] - ranks[k] - ranks[k + 1] for k in range(len(dims)))
    torsion = tuple(
        tuple(f for f in snf[k][0] if f > 1) if k < len(snf) else () for k in range(len(dims))
    )
    return HomologyProfile(betti, torsion)


def is_homology_sphere(H: HomologyProfile, d: int) -> bool:
    """True iff reduced homology is ``Z`` in degree ``d`` and zero elsewhere."""
    if d < -1 or d > H.top_degree:
        return False
    for k, (b, t) in enumerate(zip(H.betti, H.torsion)):
        if t or b != (1 if k - 1 == d else 0):
            return False
    return True

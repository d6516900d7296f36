"""Order complexes of the proper part of a subrack poset."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .poset import SubrackPoset

__all__ = ["OrderComplex", "order_complex", "euler_characteristic"]


@dataclass(frozen=True)
class OrderComplex:
    """A simplicial complex stored by its facets.

    ``vertices[i]`` is the poset index of vertex ``i`` (or just ``i`` for a
    complex built from bare facets); facets are ascending tuples of vertex
    positions. The empty face is always present, so a complex without
    vertices is the (-1)-sphere rather than the void complex.
    """

    vertices: tuple[int, ...]
    facets: tuple[tuple[int, ...], ...]

    @classmethod
    def from_facets(cls, facets: Iterable[Sequence[int]]) -> "OrderComplex":
        facets = [tuple(sorted(f)) for f in facets if len(f)]
        verts = sorted({v for f in facets for v in f})
        pos = {v: i for i, v in enumerate(verts)}
        return cls(tuple(verts), _maximal(tuple(pos[v] for v in f) for f in facets))

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    @cached_property
    def faces(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """Nonempty faces grouped by dimension, each group sorted."""
        by_dim: list[set[tuple[int, ...]]] = [set() for _ in range(self.dimension + 1)]
        for f in self.facets:
            for k in range(1, len(f) + 1):
                by_dim[k - 1].update(combinations(f, k))
        return tuple(tuple(sorted(s)) for s in by_dim)

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.faces)

    def relabel(self, perm: Sequence[int]) -> "OrderComplex":
        """The same complex with vertex position ``i`` renamed ``perm[i]``."""
        verts = [0] * len(self.vertices)
        for i, v in enumerate(self.vertices):
            verts[perm[i]] = v
        facets = tuple(sorted(tuple(sorted(perm[v] for v in f)) for f in self.facets))
        return OrderComplex(tuple(verts), facets)

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "facets": [list(f) for f in self.facets],
            "dimension": self.dimension,
            "f_vector": list(self.f_vector),
        }


def _maximal(facets: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    fs = sorted(set(facets), key=lambda f: (-len(f), f))
    keep: list[tuple[int, ...]] = []
    for f in fs:
        sf = set(f)
        if not any(sf <= set(g) for g in keep):
            keep.append(f)
    return tuple(sorted(keep))


def order_complex(P: SubrackPoset) -> OrderComplex:
    """Chains of the poset minus its top and bottom.

    Facets are the maximal chains, i.e. saturated chains running up the
    Hasse diagram from a minimal to a maximal element of the proper part.
    """
    proper = P.proper_part()
    pos = {j: i for i, j in enumerate(proper)}
    inside = set(proper)
    up = {j: [k for k in P.hasse[j] if k in inside] for j in proper}
    has_lower = {k for j in proper for k in up[j]}
    facets = []
    stack = [[j] for j in reversed(proper) if j not in has_lower]
    while stack:
        chain = stack.pop()
        nxt = up[chain[-1]]
        if not nxt:
            facets.append(tuple(sorted(pos[j] for j in chain)))
        for k in reversed(nxt):
            stack.append(chain + [k])
    return OrderComplex(tuple(proper), tuple(sorted(facets)))


def euler_characteristic(K: OrderComplex) -> tuple[int, int]:
    """``(reduced, unreduced)`` Euler characteristic from the f-vector."""
    chi = sum((-1) ** i * f for i, f in enumerate(K.f_vector))
    return chi - 1, chi

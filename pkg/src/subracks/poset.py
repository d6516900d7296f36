"""Subrack posets: enumeration, Hasse diagram, maximal elements and the
orbit-union closure operator.

Subracks of a finite rack form a Moore family: the whole carrier is
closed, and an intersection of ``|>``-closed sets is ``|>``-closed. So they
are exactly the fixed points of :func:`~subracks.racks.subrack_closure`,
and Ganter's Next-Closure enumerates them in lectic order with
polynomial delay.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator, Sequence

from .groups import members_of
from .racks import OrbitDecomposition, Rack, is_subrack, subrack_closure

__all__ = [
    "CapExceeded",
    "NotApplicable",
    "ImageNotBoolean",
    "SubrackPoset",
    "PhiImage",
    "DEFAULT_HARD_CAP",
    "next_closure",
    "hasse_diagram",
    "enumerate_subracks",
    "enumerate_subracks_bruteforce",
    "maximal_subracks_via_lemma",
    "maximal_subracks_bruteforce",
    "closure_phi",
    "phi_image",
]

DEFAULT_HARD_CAP = 24


class CapExceeded(RuntimeError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"class of size {size} exceeds the enumeration cap {cap}")


class NotApplicable(ValueError):
    """A theorem was asked about an input outside its hypotheses."""


class ImageNotBoolean(AssertionError):
    """The orbit-union closure image is not a Boolean lattice."""


def next_closure(n: int, closure: Callable[[int], int]) -> Iterator[int]:
    """All closed sets of ``closure`` on ``0..n-1``, in lectic order.

    Lower indices are the more significant positions, so the sequence
    starts at ``closure(0)`` and ends at the full set.
    """
    full = (1 << n) - 1
    A = closure(0)
    yield A
    while A != full:
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if A & bit:
                A ^= bit
                continue
            B = closure(A | bit)
            if B & (bit - 1) == A:
                A = B
                yield A
                break
        else:  # pragma: no cover - the full set is always reached first
            raise AssertionError("next_closure ran off the end")


def hasse_diagram(elements: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Upper covers of each element of a set family ordered by inclusion.

    For each ``y``, the lower covers are the maximal proper subsets of ``y``
    in the family: scanning candidates by decreasing size, a candidate is
    maximal iff it sits under no cover already accepted.
    """
    order = sorted(range(len(elements)), key=lambda i: (-elements[i].bit_count(), i))
    upper: list[list[int]] = [[] for _ in elements]
    for j, y in enumerate(elements):
        covers: list[int] = []
        for i in order:
            x = elements[i]
            if x == y or x & ~y:
                continue
            if not any(x & ~elements[k] == 0 for k in covers):
                covers.append(i)
        for i in covers:
            upper[i].append(j)
    return tuple(tuple(sorted(u)) for u in upper)


@dataclass(frozen=True)
class SubrackPoset:
    rack: Rack
    elements: tuple[int, ...]
    hasse: tuple[tuple[int, ...], ...]

    @property
    def top(self) -> int:
        return self.elements.index(self.rack.all_bits)

    @property
    def bottom(self) -> int:
        return self.elements.index(0)

    def __len__(self) -> int:
        return len(self.elements)

    def lower_covers(self, j: int) -> tuple[int, ...]:
        return tuple(i for i, up in enumerate(self.hasse) if j in up)

    def proper_part(self) -> tuple[int, ...]:
        """Indices of the elements other than the empty set and the carrier."""
        return tuple(i for i, x in enumerate(self.elements) if x not in (0, self.rack.all_bits))

    def to_dict(self) -> dict:
        """Elements as sorted id arrays (group ids when the rack has them),
        Hasse edges as ``[lower, upper]`` index pairs."""
        emap = self.rack.element_map
        elements = [
            [emap[i] if emap else i for i in members_of(x)] for x in self.elements
        ]
        return {
            "elements": elements,
            "hasse": [[i, j] for i, ups in enumerate(self.hasse) for j in ups],
            "top": self.top,
            "bottom": self.bottom,
        }


def _check_cap(R: Rack, cap: int) -> None:
    if R.size > cap:
        raise CapExceeded(R.size, cap)


def enumerate_subracks(R: Rack, cap: int = DEFAULT_HARD_CAP) -> SubrackPoset:
    """Every subrack of ``R`` (including the empty set and ``R``) via Next-Closure."""
    _check_cap(R, cap)
    elements = tuple(next_closure(R.size, lambda S: subrack_closure(R, S)))
    return SubrackPoset(R, elements, hasse_diagram(elements))


def enumerate_subracks_bruteforce(R: Rack) -> list[int]:
    """Every ``|>``-closed subset, found by testing all ``2^n`` subsets."""
    return [S for S in range(1 << R.size) if is_subrack(R, S)]


def maximal_subracks_via_lemma(
    R: Rack, orbits: OrbitDecomposition, p: int | str | None
) -> list[int]:
    """The complements of the single orbits, in orbit order.

    Valid for conjugacy classes of p-groups; ``p`` is the value returned by
    :func:`~subracks.groups.is_p_group` for the ambient group.
    """
    if p is None:
        raise NotApplicable("ambient group is not a p-group")
    if orbits.m < 2:
        return []
    return [R.all_bits & ~o for o in orbits.orbits]


def maximal_subracks_bruteforce(P: SubrackPoset, nonempty: bool = False) -> list[int]:
    """Elements covered by the top of the Hasse diagram.

    The empty set is a cover of the top only when the carrier is a single
    point; ``nonempty=True`` drops it.
    """
    covers = [P.elements[i] for i in P.lower_covers(P.top)]
    return [x for x in covers if x] if nonempty else covers


def closure_phi(S: int, orbits: OrbitDecomposition, R: Rack | None = None) -> int:
    """Union of all orbits meeting ``S``."""
    if R is not None:
        assert is_subrack(R, S), f"{S:#b} is not a subrack"
    out = 0
    for o in orbits.orbits:
        if o & S:
            out |= o
    return out


@dataclass(frozen=True)
class PhiImage:
    """Image of the orbit-union closure, with each element's orbit-index set."""

    orbit_subsets: tuple[int, ...]
    iso_witness: dict[int, frozenset[int]]

    @property
    def m(self) -> int:
        return max((len(J) for J in self.iso_witness.values()), default=0)


def phi_image(P: SubrackPoset, orbits: OrbitDecomposition) -> PhiImage:
    """Apply the orbit-union closure to every poset element and certify that
    the image is the Boolean lattice on the orbit indices.

    Raises :class:`ImageNotBoolean` if some orbit union is not a subrack,
    the image misses a subset of orbit indices, or the labeling fails to
    be an order isomorphism.
    """
    R = P.rack
    image = sorted({closure_phi(S, orbits) for S in P.elements}, key=lambda x: (x.bit_count(), x))
    witness: dict[int, frozenset[int]] = {}
    for S in image:
        J = frozenset(i for i, o in enumerate(orbits.orbits) if o & S)
        if orbits.union(J) != S:
            raise ImageNotBoolean(f"{S:#b} is not a union of orbits")
        if not is_subrack(R, S):
            raise ImageNotBoolean(f"orbit union {S:#b} is not closed")
        witness[S] = J
    m = orbits.m
    if len(witness) != 1 << m or len(set(witness.values())) != len(witness):
        raise ImageNotBoolean(f"image has {len(witness)} elements, expected {1 << m}")
    for S, T in combinations(image, 2):
        if ((S & ~T) == 0) != (witness[S] <= witness[T]) or ((T & ~S) == 0) != (witness[T] <= witness[S]):
            raise ImageNotBoolean(f"labeling of {S:#b}, {T:#b} does not preserve inclusion")
    return PhiImage(tuple(image), witness)

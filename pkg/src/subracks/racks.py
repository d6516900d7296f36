"""Finite racks and quandles, conjugation racks of classes, and H-orbits.

A rack carrier is ``0..size-1`` and ``op[a][b]`` is ``a |> b``. Subsets of
the carrier are bitsets (Python ints).

For a finite rack, a subset closed under ``|>`` is automatically a subrack:
each left translation restricted to the subset is injective, and an
injection of a finite set into itself is a bijection, so axiom (A2) holds
inside the subset. Closure under the operation is therefore all that
:func:`subrack_closure` has to compute.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groups import ConjClass, FiniteGroup, Subgroup, bits_of, members_of, subgroup_generated

__all__ = [
    "ClassNotClosed",
    "Rack",
    "AxiomCheck",
    "RackReport",
    "OrbitDecomposition",
    "conjugation_rack",
    "trivial_rack",
    "dihedral_quandle",
    "verify_rack",
    "subrack_closure",
    "is_subrack",
    "orbit_decomposition",
    "is_connected_class",
]


class ClassNotClosed(ValueError):
    """The subset handed to :func:`conjugation_rack` is not conjugation-closed."""


@dataclass(frozen=True)
class Rack:
    op: tuple[tuple[int, ...], ...]
    element_map: tuple[int, ...] | None = None
    quandle: bool = False

    @property
    def size(self) -> int:
        return len(self.op)

    @property
    def carrier(self) -> range:
        return range(self.size)

    @property
    def all_bits(self) -> int:
        return (1 << self.size) - 1

    def __call__(self, a: int, b: int) -> int:
        return self.op[a][b]


def trivial_rack(n: int) -> Rack:
    """``a |> b = b``."""
    return Rack(tuple(tuple(range(n)) for _ in range(n)), quandle=True)


def dihedral_quandle(n: int) -> Rack:
    """``a |> b = 2a - b (mod n)``."""
    return Rack(tuple(tuple((2 * a - b) % n for b in range(n)) for a in range(n)), quandle=True)


def conjugation_rack(G: FiniteGroup, C: ConjClass | Sequence[int]) -> Rack:
    """Rack on the members of ``C`` with ``a |> b = a b a^-1``.

    Rack ids follow the ascending order of the group ids in ``C``.
    """
    members = tuple(sorted(C.members if isinstance(C, ConjClass) else C))
    pos = {g: i for i, g in enumerate(members)}
    op = []
    for a in members:
        row = []
        for b in members:
            c = G.conj(a, b)
            if c not in pos:
                raise ClassNotClosed(f"{G.label(a)} |> {G.label(b)} = {G.label(c)} leaves the set")
            row.append(pos[c])
        op.append(tuple(row))
    for g in G.generators or G.elements:
        if any(G.conj(g, x) not in pos for x in members):
            raise ClassNotClosed(f"not closed under conjugation by {G.label(g)}")
    return Rack(tuple(op), element_map=members, quandle=True)


@dataclass(frozen=True)
class AxiomCheck:
    passed: bool
    witness: tuple[int, ...] | None = None


@dataclass(frozen=True)
class RackReport:
    A1: AxiomCheck
    A2: AxiomCheck
    A3: AxiomCheck

    @property
    def is_rack(self) -> bool:
        return self.A1.passed and self.A2.passed

    @property
    def is_quandle(self) -> bool:
        return self.is_rack and self.A3.passed


def verify_rack(op: Rack | Sequence[Sequence[int]]) -> RackReport:
    """Check (A1) self-distributivity, (A2) bijective left translations and
    (A3) idempotence. Each failure carries its first witness in
    lexicographic order: a triple, a row index, an element.
    """
    table = op.op if isinstance(op, Rack) else tuple(tuple(r) for r in op)
    n = len(table)
    if any(len(r) != n or any(not 0 <= x < n for x in r) for r in table):
        raise ValueError("op table must be square over 0..n-1")

    a1 = AxiomCheck(True)
    for a in range(n):
        ta = table[a]
        for b in range(n):
            tab = table[ta[b]]
            tb = table[b]
            for c in range(n):
                if ta[tb[c]] != tab[ta[c]]:
                    a1 = AxiomCheck(False, (a, b, c))
                    break
            if not a1.passed:
                break
        if not a1.passed:
            break

    a2 = AxiomCheck(True)
    for a in range(n):
        if len(set(table[a])) != n:
            a2 = AxiomCheck(False, (a,))
            break

    a3 = AxiomCheck(True)
    for a in range(n):
        if table[a][a] != a:
            a3 = AxiomCheck(False, (a,))
            break
    return RackReport(a1, a2, a3)


def subrack_closure(R: Rack, S: int) -> int:
    """Smallest ``|>``-closed subset of the carrier containing bitset ``S``."""
    elems = list(members_of(S))
    closed = S
    i = 0
    # invariant: every pair among elems[:i] has its products in `closed`
    while i < len(elems):
        x = elems[i]
        rx = R.op[x]
        for j in range(i + 1):
            y = elems[j]
            for z in (rx[y], R.op[y][x]):
                if not closed >> z & 1:
                    closed |= 1 << z
                    elems.append(z)
        i += 1
    return closed


def is_subrack(R: Rack, S: int) -> bool:
    for a in members_of(S):
        row = R.op[a]
        for b in members_of(S):
            if not S >> row[b] & 1:
                return False
    return True


@dataclass(frozen=True)
class OrbitDecomposition:
    """Disjoint orbit bitsets over the rack carrier, ordered by smallest member."""

    orbits: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.orbits)

    def orbit_index(self, x: int) -> int:
        for i, o in enumerate(self.orbits):
            if o >> x & 1:
                return i
        raise KeyError(x)

    def union(self, indices) -> int:
        out = 0
        for i in indices:
            out |= self.orbits[i]
        return out


def _orbits_under(size: int, moves) -> tuple[int, ...]:
    seen = 0
    orbits = []
    for x in range(size):
        if seen >> x & 1:
            continue
        orbit = 1 << x
        stack = [x]
        while stack:
            y = stack.pop()
            for z in moves(y):
                if not orbit >> z & 1:
                    orbit |= 1 << z
                    stack.append(z)
        seen |= orbit
        orbits.append(orbit)
    return tuple(orbits)


def orbit_decomposition(
    G: FiniteGroup,
    C: ConjClass,
    H: Subgroup | None = None,
    *,
    method: str = "generators",
) -> OrbitDecomposition:
    """Orbits of ``H = <C>`` acting on ``C`` by conjugation.

    With ``method="generators"`` the orbits are closed under conjugation by
    members of ``C`` only, which gives the same partition because ``C``
    generates ``H``. ``method="subgroup"`` conjugates by every element of
    ``H`` and is kept as a cross-check.
    """
    R = conjugation_rack(G, C)
    if method == "generators":
        return OrbitDecomposition(_orbits_under(R.size, lambda y: (row[y] for row in R.op)))
    if method == "subgroup":
        if H is None:
            H = subgroup_generated(G, C.members)
        pos = {g: i for i, g in enumerate(R.element_map)}
        hs = H.members
        return OrbitDecomposition(
            _orbits_under(R.size, lambda y: (pos[G.conj(h, R.element_map[y])] for h in hs))
        )
    raise ValueError(f"unknown method {method!r}")


def is_connected_class(G: FiniteGroup, C: ConjClass) -> bool:
    """True iff ``<C>`` acts transitively on ``C`` by conjugation."""
    return orbit_decomposition(G, C).m == 1


def class_bits_to_group(R: Rack, S: int) -> tuple[int, ...]:
    """Group ids of the rack elements in bitset ``S``."""
    assert R.element_map is not None
    return tuple(R.element_map[i] for i in members_of(S))


def group_ids_to_bits(R: Rack, ids) -> int:
    assert R.element_map is not None
    pos = {g: i for i, g in enumerate(R.element_map)}
    return bits_of(pos[g] for g in ids)

"""Built-in groups, each given by explicit permutation generators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .groups import FiniteGroup, group_from_permutations

__all__ = ["CatalogEntry", "CATALOG", "get", "names"]

Perm = tuple[int, ...]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    order: int
    degree: int
    generators: tuple[Perm, ...]
    names: tuple[str, ...]
    description: str
    # Per class in canonical order: (m, sphere degree). Golden data, always
    # re-derived by the brute-force oracle in the test suite.
    expected: tuple[tuple[int, int], ...] | None = None
    derivation: str = ""

    def build(self) -> FiniteGroup:
        G = group_from_permutations(self.degree, self.generators, self.names, name=self.name)
        if G.order != self.order:
            raise AssertionError(f"{self.name}: built order {G.order}, expected {self.order}")
        return G


def _cyclic(n: int) -> tuple[int, tuple[Perm, ...]]:
    return n, (tuple((x + 1) % n for x in range(n)),)


def _affine_cyclic(n: int, unit: int) -> tuple[int, tuple[Perm, ...]]:
    """``Z/n`` semidirect ``<unit>``: maps ``x -> x + 1`` and ``x -> unit*x``."""
    return n, (tuple((x + 1) % n for x in range(n)), tuple(unit * x % n for x in range(n)))


def _generalized_quaternion(order: int) -> tuple[int, tuple[Perm, ...]]:
    """Left regular action of ``<a, b | a^n, b^2 = a^(n/2), b a b^-1 = a^-1>``.

    Point ``i + n*e`` stands for ``a^i b^e``.
    """
    n = order // 2

    def mul(x, y):
        (i, e), (j, f) = x, y
        if e == 0:
            return (i + j) % n, f
        if f == 0:
            return (i - j) % n, 1
        return (i - j + n // 2) % n, 0

    pts = [(i, e) for e in (0, 1) for i in range(n)]
    idx = {x: k for k, x in enumerate(pts)}
    a = tuple(idx[mul((1, 0), x)] for x in pts)
    b = tuple(idx[mul((0, 1), x)] for x in pts)
    return order, (a, b)


def _matrix_action(p: int, mats) -> tuple[int, tuple[Perm, ...]]:
    """Linear action of 3x3 matrices over ``F_p`` on the ``p^3`` column vectors."""
    vecs = list(product(range(p), repeat=3))
    idx = {v: k for k, v in enumerate(vecs)}
    gens = []
    for M in mats:
        gens.append(tuple(
            idx[tuple(sum(M[r][c] * v[c] for c in range(3)) % p for r in range(3))] for v in vecs
        ))
    return len(vecs), tuple(gens)


def _affine_f2_cube() -> tuple[int, tuple[Perm, ...]]:
    """``F_2^3`` semidirect ``C4``, the C4 acting by a unipotent Jordan block."""
    vecs = list(product(range(2), repeat=3))
    idx = {v: k for k, v in enumerate(vecs)}
    J = ((1, 1, 0), (0, 1, 1), (0, 0, 1))
    shift = tuple(idx[(v[0], v[1], (v[2] + 1) % 2)] for v in vecs)
    jordan = tuple(idx[tuple(sum(J[r][c] * v[c] for c in range(3)) % 2 for r in range(3))] for v in vecs)
    return 8, (shift, jordan)


def _direct(*parts: tuple[int, tuple[Perm, ...]]) -> tuple[int, tuple[Perm, ...]]:
    """Direct product acting on the disjoint union of the points."""
    total = sum(d for d, _ in parts)
    gens = []
    offset = 0
    for d, gs in parts:
        for g in gs:
            img = list(range(total))
            for x in range(d):
                img[offset + x] = offset + g[x]
            gens.append(tuple(img))
        offset += d
    return total, tuple(gens)


def _entry(name, order, built, names, description, expected=None, derivation=""):
    degree, gens = built
    return CatalogEntry(name, order, degree, gens, tuple(names), description, expected, derivation)


_BRUTE = "brute force: H-orbits by conjugating with every element of <C>"

CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        _entry("C1", 1, (1, ((0,),)), "g", "trivial group"),
        _entry("C2", 2, _cyclic(2), "g", "cyclic group of order 2"),
        _entry("C3", 3, _cyclic(3), "g", "cyclic group of order 3"),
        _entry("C4", 4, _cyclic(4), "g", "cyclic group of order 4"),
        _entry("C8", 8, _cyclic(8), "g", "cyclic group of order 8"),
        _entry("C9", 9, _cyclic(9), "g", "cyclic group of order 9"),
        _entry("C27", 27, _cyclic(27), "g", "cyclic group of order 27"),
        _entry("C2^3", 8, _direct(_cyclic(2), _cyclic(2), _cyclic(2)), "abc",
               "elementary abelian group of order 8"),
        _entry("C4xC4", 16, _direct(_cyclic(4), _cyclic(4)), "ab", "abelian group C4 x C4"),
        _entry("D4", 8, _affine_cyclic(4, 3), "st", "dihedral group of order 8",
               expected=((1, -1), (2, 0), (2, 0), (1, -1), (2, 0)),
               derivation=_BRUTE),
        _entry("D8", 16, _affine_cyclic(8, 7), "st", "dihedral group of order 16",
               expected=((1, -1), (2, 0), (2, 0), (2, 0), (2, 0), (2, 0), (1, -1)),
               derivation=_BRUTE),
        _entry("D16", 32, _affine_cyclic(16, 15), "st", "dihedral group of order 32"),
        _entry("Q8", 8, _generalized_quaternion(8), "ab", "quaternion group",
               expected=((1, -1), (2, 0), (2, 0), (1, -1), (2, 0)),
               derivation=_BRUTE),
        _entry("Q16", 16, _generalized_quaternion(16), "ab", "generalized quaternion group of order 16"),
        _entry("Q32", 32, _generalized_quaternion(32), "ab", "generalized quaternion group of order 32"),
        _entry("SD16", 16, _affine_cyclic(8, 3), "st", "semidihedral group of order 16"),
        _entry("M16", 16, _affine_cyclic(8, 5), "st", "modular group of order 16"),
        _entry("C2xD4", 16, _direct(_cyclic(2), _affine_cyclic(4, 3)), "zst", "C2 x dihedral group of order 8"),
        _entry("C2xQ8", 16, _direct(_cyclic(2), _generalized_quaternion(8)), "zab", "C2 x quaternion group"),
        _entry("C2^3:C4", 32, _affine_f2_cube(), "ua",
               "F2^3 extended by a unipotent automorphism of order 4"),
        _entry("Heis27", 27, _matrix_action(3, [
            ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
            ((1, 0, 0), (0, 1, 1), (0, 0, 1)),
        ]), "xy", "Heisenberg group: upper unitriangular 3x3 matrices over F3",
               expected=((1, -1), (3, 1), (3, 1), (3, 1), (3, 1), (3, 1), (3, 1), (3, 1), (3, 1),
                         (1, -1), (1, -1)),
               derivation=_BRUTE),
        _entry("M27", 27, _affine_cyclic(9, 4), "st", "nonabelian group of order 27 and exponent 9"),
        _entry("S3", 6, _affine_cyclic(3, 2), "st", "symmetric group on 3 letters (not a p-group)"),
        _entry("D6", 12, _affine_cyclic(6, 5), "st", "dihedral group of order 12 (not nilpotent)"),
        _entry("C6", 6, _cyclic(6), "g", "cyclic group of order 6 (nilpotent, not a p-group)"),
        _entry("C3xD4", 24, _direct(_cyclic(3), _affine_cyclic(4, 3)), "cst",
               "C3 x dihedral group of order 8 (nilpotent, not a p-group)"),
    ]
}


def names() -> list[str]:
    return list(CATALOG)


@lru_cache(maxsize=None)
def get(name: str) -> FiniteGroup:
    try:
        entry = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog group {name!r}; known: {', '.join(CATALOG)}") from None
    return entry.build()

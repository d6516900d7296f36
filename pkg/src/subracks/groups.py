"""Finite groups given by Cayley tables or permutation generators.

Elements are dense integer ids ``0..n-1``. Sets of elements are bitsets
stored as Python ints (bit ``i`` set means element ``i`` is a member).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "NotAGroup",
    "ClosureBound",
    "FiniteGroup",
    "ConjClass",
    "Subgroup",
    "TRIVIAL",
    "group_from_cayley",
    "group_from_permutations",
    "perm_from_cycles",
    "conjugacy_classes",
    "subgroup_generated",
    "is_p_group",
    "is_central",
    "center",
    "is_normal",
    "is_cyclic",
    "is_nilpotent",
    "element_order",
    "bits_of",
    "members_of",
]

EXHAUSTIVE_ASSOC_LIMIT = 256
RANDOM_ASSOC_TRIPLES = 10_000
DEFAULT_CLOSURE_CAP = 10**6

# Returned by is_p_group for the trivial group, which is a p-group for every p.
TRIVIAL = "trivial"


class NotAGroup(ValueError):
    """Raised when a Cayley table fails one of the group axioms."""

    REASONS = ("not-latin-square", "no-identity", "not-associative", "missing-inverse")

    def __init__(self, reason: str, detail: str = ""):
        assert reason in self.REASONS, reason
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


class ClosureBound(RuntimeError):
    """Permutation closure grew past the configured element cap."""


def bits_of(ids: Iterable[int]) -> int:
    b = 0
    for i in ids:
        b |= 1 << i
    return b


def members_of(bits: int) -> tuple[int, ...]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A validated finite group.

    ``mul[a, b]`` is the id of the product ``a*b``; ``inv[a]`` the inverse.
    ``generators`` is recorded for permutation-built groups, and ``perms``
    holds the permutation of each element when one exists.
    """

    mul: np.ndarray
    inv: np.ndarray
    identity: int
    labels: tuple[str, ...]
    generators: tuple[int, ...] = ()
    perms: np.ndarray | None = None
    assoc_check: str = "exhaustive"
    name: str = ""

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def all_bits(self) -> int:
        return (1 << self.order) - 1

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return int(self.mul[self.mul[g, x], self.inv[g]])

    def product(self, *ids: int) -> int:
        out = self.identity
        for i in ids:
            out = int(self.mul[out, i])
        return out

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inv[g]), -k
        out = self.identity
        for _ in range(k):
            out = int(self.mul[out, g])
        return out

    def label(self, g: int) -> str:
        return self.labels[g]

    def find_label(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None


@dataclass(frozen=True)
class ConjClass:
    members: tuple[int, ...]

    @property
    def representative(self) -> int:
        return self.members[0]

    @property
    def bits(self) -> int:
        return bits_of(self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Subgroup:
    bits: int

    @property
    def members(self) -> tuple[int, ...]:
        return members_of(self.bits)

    @property
    def order(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, g: int) -> bool:
        return bool(self.bits >> g & 1)


def _check_associative(mul: np.ndarray, seed: int) -> str:
    n = mul.shape[0]
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        # (a*b)*c against a*(b*c) for every triple, one slab of a at a time
        for a in range(n):
            left = mul[mul[a], :]  # left[b, c] = (a*b)*c
            right = mul[a][mul]  # right[b, c] = a*(b*c)
            if not np.array_equal(left, right):
                b, c = map(int, np.argwhere(left != right)[0])
                raise NotAGroup("not-associative", f"witness ({a}, {b}, {c})")
        return "exhaustive"
    rng = random.Random(seed)
    for _ in range(RANDOM_ASSOC_TRIPLES):
        a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        if mul[mul[a, b], c] != mul[a, mul[b, c]]:
            raise NotAGroup("not-associative", f"witness ({a}, {b}, {c})")
    return "randomized"


def group_from_cayley(
    table: Sequence[Sequence[int]] | np.ndarray,
    labels: Sequence[str] | None = None,
    *,
    seed: int = 0,
    name: str = "",
) -> FiniteGroup:
    """Validate a Cayley table and build the group it describes.

    The identity and inverses are read off the table. Ids are kept exactly
    as given (no relabeling).
    """
    mul = np.asarray(table, dtype=np.int64)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise NotAGroup("not-latin-square", "table must be a non-empty square matrix")
    n = mul.shape[0]
    if mul.min() < 0 or mul.max() >= n:
        raise NotAGroup("not-latin-square", f"entries must lie in 0..{n - 1}")
    target = np.arange(n)
    for r in range(n):
        if not np.array_equal(np.sort(mul[r]), target):
            raise NotAGroup("not-latin-square", f"row {r} is not a permutation")
        if not np.array_equal(np.sort(mul[:, r]), target):
            raise NotAGroup("not-latin-square", f"column {r} is not a permutation")

    identity = None
    for e in range(n):
        if np.array_equal(mul[e], target) and np.array_equal(mul[:, e], target):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no-identity")

    # Latin property gives a unique right inverse; it must also be a left one.
    inv = np.argmax(mul == identity, axis=1)
    for g in range(n):
        if mul[inv[g], g] != identity:
            raise NotAGroup("missing-inverse", f"element {g}")

    mode = _check_associative(mul, seed)
    if labels is None:
        labels = [str(i) for i in range(n)]
    elif len(labels) != n:
        raise ValueError(f"{len(labels)} labels for {n} elements")
    return FiniteGroup(
        mul=mul,
        inv=inv.astype(np.int64),
        identity=int(identity),
        labels=tuple(str(x) for x in labels),
        assoc_check=mode,
        name=name,
    )


def perm_from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> tuple[int, ...]:
    """Image tuple of the permutation of ``range(degree)`` given in cycle form."""
    img = list(range(degree))
    seen = set()
    for cyc in cycles:
        for i, a in enumerate(cyc):
            if not 0 <= a < degree or a in seen:
                raise ValueError(f"bad cycle {list(cyc)} for degree {degree}")
            seen.add(a)
            img[a] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


def _word_label(word: list[str]) -> str:
    if not word:
        return "e"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        k = j - i
        parts.append(word[i] if k == 1 else f"{word[i]}^{k}")
        i = j
    return "".join(parts)


def group_from_permutations(
    degree: int,
    generators: Sequence[Sequence[int]],
    names: Sequence[str] | None = None,
    *,
    cap: int = DEFAULT_CLOSURE_CAP,
    name: str = "",
) -> FiniteGroup:
    """Close permutation generators (image tuples) under composition.

    Products compose right to left: ``(p*q)(x) = p(q(x))``. Elements are
    numbered in breadth-first order from the identity, and each is labeled
    by the first word in the generators that reaches it.
    """
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValueError(f"generator {g} is not a permutation of degree {degree}")
        gens.append(g)
    if names is None:
        names = ["g"] if len(gens) == 1 else [f"g{i}" for i in range(len(gens))]
    if len(names) != len(gens):
        raise ValueError("one name per generator is required")

    ident = tuple(range(degree))
    index = {ident: 0}
    perms = [ident]
    words: list[list[str]] = [[]]
    queue = deque([0])
    while queue:
        k = queue.popleft()
        p = perms[k]
        for gname, g in zip(names, gens):
            q = tuple(g[x] for x in p)  # g * p
            if q not in index:
                if len(perms) >= cap:
                    raise ClosureBound(f"closure exceeds {cap} elements")
                index[q] = len(perms)
                perms.append(q)
                words.append([gname] + words[k])
                queue.append(index[q])

    arr = np.array(perms, dtype=np.int64).reshape(len(perms), degree)
    n = len(perms)
    mul = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        # row a: a*b has images arr[a][arr[b]]
        prods = arr[a][arr]
        mul[a] = [index[tuple(row)] for row in prods.tolist()]
    inv = np.argmax(mul == 0, axis=1).astype(np.int64)
    gen_ids = tuple(index[g] for g in gens)
    return FiniteGroup(
        mul=mul,
        inv=inv,
        identity=0,
        labels=tuple(_word_label(w) for w in words),
        generators=gen_ids,
        perms=arr,
        assoc_check="permutation",
        name=name,
    )


def _conjugates(G: FiniteGroup, x: int) -> np.ndarray:
    return G.mul[G.mul[:, x], G.inv]


def conjugacy_classes(G: FiniteGroup) -> list[ConjClass]:
    """Partition of ``G`` into conjugacy classes, ordered by representative."""
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for x in range(G.order):
        if seen[x]:
            continue
        orbit = np.unique(_conjugates(G, x))
        seen[orbit] = True
        classes.append(ConjClass(tuple(int(i) for i in orbit)))
    return classes


def class_of(G: FiniteGroup, x: int) -> ConjClass:
    return ConjClass(tuple(int(i) for i in np.unique(_conjugates(G, x))))


def subgroup_generated(G: FiniteGroup, S: Iterable[int] | int) -> Subgroup:
    """Smallest subgroup containing ``S`` (an iterable of ids or a bitset).

    In a finite group closure under products already contains inverses.
    """
    gens = members_of(S) if isinstance(S, int) else tuple(S)
    bits = 1 << G.identity
    frontier = [G.identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                y = int(G.mul[h, g])
                if not bits >> y & 1:
                    bits |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return Subgroup(bits)


def _prime_power(n: int) -> int | None:
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        return n
    while n % p == 0:
        n //= p
    return p if n == 1 else None


def is_p_group(G: FiniteGroup) -> int | str | None:
    """The prime ``p`` with ``|G| = p^k``; :data:`TRIVIAL` for ``|G| = 1``; else None."""
    if G.order == 1:
        return TRIVIAL
    return _prime_power(G.order)


def element_order(G: FiniteGroup, g: int) -> int:
    k, x = 1, g
    while x != G.identity:
        x = int(G.mul[x, g])
        k += 1
    return k


def is_central(G: FiniteGroup, g: int) -> bool:
    return bool(np.array_equal(G.mul[g, :], G.mul[:, g]))


def center(G: FiniteGroup) -> Subgroup:
    return Subgroup(bits_of(g for g in G.elements if is_central(G, g)))


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    members = np.array(H.members, dtype=np.int64)
    mask = np.zeros(G.order, dtype=bool)
    mask[members] = True
    # conjugate every member of H by every g at once
    conj = G.mul[G.mul[:, members], G.inv[:, None]]
    return bool(mask[conj].all())


def is_cyclic(G: FiniteGroup) -> bool:
    return any(element_order(G, g) == G.order for g in G.elements)


def is_nilpotent(G: FiniteGroup) -> bool:
    """A finite group is nilpotent iff each Sylow subgroup is normal.

    Equivalently, for every prime p the p-elements number exactly the
    p-part of the order.
    """
    n, p, primes = G.order, 2, []
    m = n
    while p * p <= m:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        primes.append(m)
    orders = [element_order(G, g) for g in G.elements]
    for p in primes:
        part = 1
        while n % (part * p) == 0:
            part *= p
        count = sum(1 for o in orders if _prime_power(o) == p or o == 1)
        if count != part:
            return False
    return True

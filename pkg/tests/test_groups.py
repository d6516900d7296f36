import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import classes as oracle_classes, closure as oracle_closure, compose, inverse
from subracks import catalog
from subracks.groups import (
    TRIVIAL,
    ClosureBound,
    NotAGroup,
    Subgroup,
    center,
    conjugacy_classes,
    group_from_cayley,
    group_from_permutations,
    is_central,
    is_cyclic,
    is_nilpotent,
    is_normal,
    is_p_group,
    perm_from_cycles,
    subgroup_generated,
)

from conftest import P_GROUPS, class_containing, gen

# Latin squares of order 5 with identity 0; found by exhaustive search.
LOOP_ONE_SIDED = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 3, 4, 0, 1], [3, 4, 1, 2, 0], [4, 2, 0, 1, 3]]
LOOP_NONASSOC = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]


def test_trivial_table():
    G = group_from_cayley([[0]])
    assert G.order == 1 and G.identity == 0
    assert is_p_group(G) == TRIVIAL


def test_z2_table():
    G = group_from_cayley([[0, 1], [1, 0]], labels=["e", "a"])
    assert G.order == 2 and G.labels == ("e", "a") and list(G.inv) == [0, 1]


def test_identity_taken_from_table_without_relabeling():
    # Z/3 with the identity stored at id 2
    table = [[(a + b + 1) % 3 for b in range(3)] for a in range(3)]
    G = group_from_cayley(table)
    assert G.identity == 2


def test_latin_square_without_identity():
    table = [[(i - j + 1) % 6 for j in range(6)] for i in range(6)]
    # oracle: Latin, and no row/column pair acts as the identity
    assert all(sorted(r) == list(range(6)) for r in table)
    assert all(sorted(c) == list(range(6)) for c in zip(*table))
    assert not any(table[e] == list(range(6)) and [r[e] for r in table] == list(range(6)) for e in range(6))
    with pytest.raises(NotAGroup) as exc:
        group_from_cayley(table)
    assert exc.value.reason == "no-identity"


@pytest.mark.parametrize(
    "table, reason",
    [
        ([[0, 1], [0, 1]], "not-latin-square"),
        ([[0, 1, 2], [1, 2, 0]], "not-latin-square"),
        ([[0, 5], [1, 0]], "not-latin-square"),
        (LOOP_ONE_SIDED, "missing-inverse"),
        (LOOP_NONASSOC, "not-associative"),
    ],
)
def test_validator_rejections(table, reason):
    with pytest.raises(NotAGroup) as exc:
        group_from_cayley(table)
    assert exc.value.reason == reason


def test_large_table_uses_randomized_associativity():
    n = 300
    table = np.add.outer(np.arange(n), np.arange(n)) % n
    G = group_from_cayley(table, seed=3)
    assert G.assoc_check == "randomized"
    assert group_from_cayley(table[:10, :10] % 10).assoc_check == "exhaustive"


def test_cyclic_from_four_cycle():
    G = group_from_permutations(4, [perm_from_cycles(4, [[0, 1, 2, 3]])])
    assert G.order == 4 and is_cyclic(G)


def test_dihedral_order_8_from_permutations():
    gens = [perm_from_cycles(4, [[0, 1, 2, 3]]), perm_from_cycles(4, [[1, 3]])]
    G = group_from_permutations(4, gens)
    assert G.order == len(oracle_closure(gens, 4)) == 8


def test_empty_generating_set():
    G = group_from_permutations(3, [])
    assert G.order == 1 and G.labels == ("e",)


def test_closure_cap():
    gens = [perm_from_cycles(6, [[0, 1, 2, 3, 4, 5]]), perm_from_cycles(6, [[0, 1]])]
    with pytest.raises(ClosureBound):
        group_from_permutations(6, gens, cap=100)


def test_bad_generator():
    with pytest.raises(ValueError):
        group_from_permutations(3, [(0, 0, 1)])


@pytest.mark.parametrize("name", catalog.names())
def test_permutation_table_matches_composition(name):
    G = catalog.get(name)
    perms = [tuple(map(int, p)) for p in G.perms]
    index = {p: i for i, p in enumerate(perms)}
    for a in range(0, G.order, max(1, G.order // 7)):
        for b in range(G.order):
            assert G.mul[a, b] == index[compose(perms[a], perms[b])]
        assert G.inv[a] == index[inverse(perms[a])]
    # the permutation-built table passes the Cayley validator too
    H = group_from_cayley(G.mul)
    assert H.identity == G.identity


def test_conjugacy_classes_trivial():
    assert [C.members for C in conjugacy_classes(group_from_cayley([[0]]))] == [(0,)]


@pytest.mark.parametrize("name", ["D4", "Q8", "Heis27", "D8", "S3"])
def test_class_sizes_against_oracle(name):
    G = catalog.get(name)
    entry = catalog.CATALOG[name]
    expected = sorted(len(c) for c in oracle_classes(oracle_closure(entry.generators, entry.degree)))
    assert sorted(len(C) for C in conjugacy_classes(G)) == expected


def test_d4_and_q8_class_sizes(D4, Q8):
    assert sorted(len(C) for C in conjugacy_classes(D4)) == [1, 1, 2, 2, 2]
    assert sorted(len(C) for C in conjugacy_classes(Q8)) == [1, 1, 2, 2, 2]


@pytest.mark.parametrize("name", catalog.names())
def test_classes_partition_and_are_invariant(name):
    G = catalog.get(name)
    classes = conjugacy_classes(G)
    seen = [x for C in classes for x in C.members]
    assert sorted(seen) == list(G.elements)
    assert class_containing(G, G.identity).members == (G.identity,)
    for C in classes:
        assert C.representative == min(C.members)
        for g in G.generators:
            assert sorted(G.conj(g, x) for x in C.members) == list(C.members)


def test_subgroup_generated(D4):
    assert subgroup_generated(D4, []).members == (D4.identity,)
    s = gen(D4, "s")
    C = class_containing(D4, s)
    assert C.members == tuple(sorted({s, D4.power(s, 3)}))
    H = subgroup_generated(D4, C.members)
    entry = catalog.CATALOG["D4"]
    oracle = oracle_closure([tuple(map(int, D4.perms[x])) for x in C.members], entry.degree)
    assert H.order == len(oracle) == 4
    assert H.bits == subgroup_generated(D4, [s]).bits
    assert subgroup_generated(D4, D4.elements).order == 8


def test_is_p_group_orders():
    assert is_p_group(catalog.get("C8")) == 2
    assert is_p_group(catalog.get("Heis27")) == 3
    assert is_p_group(catalog.get("S3")) is None
    assert is_p_group(catalog.get("C1")) == TRIVIAL


def test_centrality(D4):
    s, t = gen(D4, "s"), gen(D4, "t")
    s2 = D4.power(s, 2)
    commutes = lambda g: all(D4.mul[g, x] == D4.mul[x, g] for x in D4.elements)  # noqa: E731
    assert is_central(D4, D4.identity)
    assert is_central(D4, s2) and commutes(s2)
    for k in range(4):
        r = D4.product(D4.power(s, k), t)
        assert not is_central(D4, r) and not commutes(r)
    assert center(D4).members == tuple(sorted({D4.identity, s2}))


def test_normality(D4):
    t = gen(D4, "t")
    assert is_normal(D4, Subgroup(1 << D4.identity))
    assert is_normal(D4, Subgroup(D4.all_bits))
    T = subgroup_generated(D4, [t])
    s = gen(D4, "s")
    assert D4.conj(s, t) not in T
    assert not is_normal(D4, T)


@pytest.mark.parametrize("name", catalog.names())
def test_center_is_normal_and_matches_singletons(name):
    G = catalog.get(name)
    Z = center(G)
    assert is_normal(G, Z)
    for C in conjugacy_classes(G):
        assert is_central(G, C.representative) == (len(C) == 1)


@pytest.mark.parametrize("name", P_GROUPS)
def test_noncentral_classes_generate_proper_subgroups(name):
    G = catalog.get(name)
    for C in conjugacy_classes(G):
        if len(C) > 1:
            assert subgroup_generated(G, C.members).order < G.order


def test_nilpotency():
    assert is_nilpotent(catalog.get("C6"))
    assert is_nilpotent(catalog.get("C3xD4"))
    assert is_nilpotent(catalog.get("Q16"))
    assert not is_nilpotent(catalog.get("S3"))
    assert not is_nilpotent(catalog.get("D6"))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.data())
def test_random_cyclic_tables_validate(n, data):
    shift = data.draw(st.integers(0, n - 1))
    # Z/n with identity moved to id `shift`
    table = [[(a + b - shift) % n for b in range(n)] for a in range(n)]
    G = group_from_cayley(table)
    assert G.identity == shift
    for g in G.elements:
        assert G.mul[g, G.inv[g]] == shift == G.mul[G.inv[g], g]

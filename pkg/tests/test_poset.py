import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import all_subracks, class_profile
from subracks import catalog
from subracks.groups import conjugacy_classes, is_p_group, members_of
from subracks.poset import (
    CapExceeded,
    NotApplicable,
    closure_phi,
    enumerate_subracks,
    enumerate_subracks_bruteforce,
    hasse_diagram,
    maximal_subracks_bruteforce,
    maximal_subracks_via_lemma,
    next_closure,
    phi_image,
)
from subracks.racks import Rack, conjugation_rack, dihedral_quandle, orbit_decomposition, trivial_rack

from conftest import P_GROUPS, class_containing, gen

SMALL_CLASSES = [
    (name, i)
    for name in catalog.names()
    for i, C in enumerate(conjugacy_classes(catalog.get(name)))
    if len(C) <= 16
]


def setup(name, i):
    G = catalog.get(name)
    C = conjugacy_classes(G)[i]
    R = conjugation_rack(G, C)
    return G, C, R, enumerate_subracks(R), orbit_decomposition(G, C)


def as_groups(R, family):
    return {frozenset(R.element_map[i] for i in members_of(x)) for x in family}


def test_singleton_class_poset(D4):
    R = conjugation_rack(D4, conjugacy_classes(D4)[0])
    P = enumerate_subracks(R)
    assert P.elements == (0, 1) and P.bottom == 0 and P.top == 1
    assert P.proper_part() == ()


def test_d4_rotation_class(D4):
    s = gen(D4, "s")
    C = class_containing(D4, s)
    R = conjugation_rack(D4, C)
    P = enumerate_subracks(R)
    oracle = all_subracks({tuple(map(int, D4.perms[g])) for g in C.members})
    assert len(P) == len(oracle) == 4


def test_d16_reflection_class(D8, d8_reflections):
    s, t, C = d8_reflections
    R = conjugation_rack(D8, C)
    P = enumerate_subracks(R)
    sk_t = lambda k: D8.product(D8.power(s, k), t)  # noqa: E731
    refl = [sk_t(k) for k in (0, 2, 4, 6)]
    expected = (
        {frozenset(), frozenset(refl)}
        | {frozenset({r}) for r in refl}
        | {frozenset({sk_t(0), sk_t(4)}), frozenset({sk_t(2), sk_t(6)})}
    )
    assert len(P) == 8
    assert as_groups(R, P.elements) == expected


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_subracks(trivial_rack(5), cap=4)


def test_next_closure_is_lectic():
    R = dihedral_quandle(9)
    seq = list(next_closure(R.size, lambda S: __import__("subracks").subrack_closure(R, S)))
    assert seq[0] == 0 and seq[-1] == R.all_bits
    for A, B in zip(seq, seq[1:]):
        d = A ^ B
        low = d & -d
        assert low & B


@pytest.mark.parametrize("name,i", SMALL_CLASSES)
def test_next_closure_matches_bruteforce(name, i):
    _, _, R, P, _ = setup(name, i)
    assert sorted(P.elements) == enumerate_subracks_bruteforce(R)
    assert len(set(P.elements)) == len(P.elements)


def _random_affine_quandle(n, t, seed):
    """``a |> b = t*b + (1-t)*a mod n`` with ``t`` a unit (Alexander quandle)."""
    return Rack(tuple(tuple((t * b + (1 - t) * a) % n for b in range(n)) for a in range(n)), quandle=True)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 11), st.data())
def test_next_closure_on_alexander_quandles(n, data):
    units = [t for t in range(1, n) if __import__("math").gcd(t, n) == 1]
    t = data.draw(st.sampled_from(units))
    R = _random_affine_quandle(n, t, 0)
    P = enumerate_subracks(R)
    assert sorted(P.elements) == enumerate_subracks_bruteforce(R)


@pytest.mark.parametrize("name,i", SMALL_CLASSES)
def test_moore_family_and_hasse(name, i):
    _, _, R, P, _ = setup(name, i)
    fam = set(P.elements)
    assert 0 in fam and R.all_bits in fam
    for X, Y in combinations(P.elements, 2):
        assert X & Y in fam
    # covers by definition: strict containment with nothing strictly between
    for a, X in enumerate(P.elements):
        oracle = sorted(
            b
            for b, Y in enumerate(P.elements)
            if X != Y and X & ~Y == 0
            and not any(Z not in (X, Y) and X & ~Z == 0 and Z & ~Y == 0 for Z in P.elements)
        )
        assert list(P.hasse[a]) == oracle


def test_hasse_skips_size_strata():
    # {0} < {0,1,2} with no two-element set in between
    elements = (0, 0b001, 0b111)
    assert hasse_diagram(elements) == ((1,), (2,), ())


def test_lemma_maximal_examples(D4, D8, d8_reflections):
    s = gen(D4, "s")
    C = class_containing(D4, s)
    R = conjugation_rack(D4, C)
    orb = orbit_decomposition(D4, C)
    lemma = maximal_subracks_via_lemma(R, orb, is_p_group(D4))
    assert as_groups(R, lemma) == {frozenset({D4.power(s, 3)}), frozenset({s})}
    assert lemma == [R.all_bits & ~o for o in orb.orbits]

    s, t, C = d8_reflections
    R = conjugation_rack(D8, C)
    orb = orbit_decomposition(D8, C)
    sk_t = lambda k: D8.product(D8.power(s, k), t)  # noqa: E731
    lemma = maximal_subracks_via_lemma(R, orb, 2)
    expected = {frozenset({sk_t(2), sk_t(6)}), frozenset({sk_t(0), sk_t(4)})}
    assert as_groups(R, lemma) == expected
    assert as_groups(R, maximal_subracks_bruteforce(enumerate_subracks(R))) == expected

    z = conjugacy_classes(D4)[0]
    assert maximal_subracks_via_lemma(conjugation_rack(D4, z), orbit_decomposition(D4, z), 2) == []


def test_lemma_not_applicable(S3):
    C = class_containing(S3, gen(S3, "t"))
    R = conjugation_rack(S3, C)
    orb = orbit_decomposition(S3, C)
    assert orb.m == 1
    with pytest.raises(NotApplicable):
        maximal_subracks_via_lemma(R, orb, is_p_group(S3))


def test_bruteforce_maximal_examples(D4, Heis27):
    s = gen(D4, "s")
    C = class_containing(D4, s)
    R = conjugation_rack(D4, C)
    assert as_groups(R, maximal_subracks_bruteforce(enumerate_subracks(R))) == {
        frozenset({s}), frozenset({D4.power(s, 3)})
    }
    single = enumerate_subracks(conjugation_rack(D4, conjugacy_classes(D4)[0]))
    assert maximal_subracks_bruteforce(single) == [0]
    assert maximal_subracks_bruteforce(single, nonempty=True) == []

    for C in conjugacy_classes(Heis27):
        if len(C) == 1:
            continue
        R = conjugation_rack(Heis27, C)
        orb = orbit_decomposition(Heis27, C)
        assert orb.m == 3 and all(o.bit_count() == 1 for o in orb.orbits)
        maxi = maximal_subracks_bruteforce(enumerate_subracks(R))
        assert sorted(maxi) == sorted(orb.orbits[i] | orb.orbits[j] for i, j in combinations(range(3), 2))


@pytest.mark.parametrize("name", [n for n in P_GROUPS if n != "C1"])
def test_lemma_agrees_with_oracle(name):
    entry = catalog.CATALOG[name]
    G = catalog.get(name)
    _, prof = class_profile(entry.generators, entry.degree)
    by_class = {frozenset(d["class"]): d for d in prof}
    perm = lambda g: tuple(map(int, G.perms[g]))  # noqa: E731
    for C in conjugacy_classes(G):
        R = conjugation_rack(G, C)
        orb = orbit_decomposition(G, C)
        d = by_class[frozenset(perm(g) for g in C.members)]
        assert orb.m == d["m"]
        if orb.m < 2:
            continue
        lemma = maximal_subracks_via_lemma(R, orb, is_p_group(G))
        brute = maximal_subracks_bruteforce(enumerate_subracks(R))
        assert sorted(lemma) == sorted(brute)
        assert {frozenset(perm(R.element_map[k]) for k in members_of(x)) for x in lemma} == d["maximal"]


def test_closure_phi_examples(D8, d8_reflections):
    s, t, C = d8_reflections
    R = conjugation_rack(D8, C)
    orb = orbit_decomposition(D8, C)
    pos = {g: i for i, g in enumerate(R.element_map)}
    assert closure_phi(0, orb, R) == 0
    got = closure_phi(1 << pos[t], orb, R)
    assert got == 1 << pos[t] | 1 << pos[D8.product(D8.power(s, 4), t)]
    assert closure_phi(R.all_bits, orb, R) == R.all_bits
    with pytest.raises(AssertionError):
        closure_phi(1 << pos[t] | 1 << pos[D8.product(D8.power(s, 2), t)], orb, R)


@pytest.mark.parametrize("name,i", SMALL_CLASSES)
def test_phi_laws_on_poset(name, i):
    G, C, R, P, orb = setup(name, i)
    phi = {S: closure_phi(S, orb, R) for S in P.elements}
    for S, f in phi.items():
        assert S & ~f == 0
        assert phi[f] == f
    for S in P.elements:
        for T in P.elements:
            if S & ~T == 0:
                assert phi[S] & ~phi[T] == 0
    if is_p_group(G) is not None and len(C) > 1:
        assert [S for S, f in phi.items() if f == R.all_bits] == [R.all_bits]


@pytest.mark.parametrize("name,i", SMALL_CLASSES)
def test_phi_image_is_boolean(name, i):
    _, _, R, P, orb = setup(name, i)
    img = phi_image(P, orb)
    assert len(img.orbit_subsets) == 2 ** orb.m
    assert set(img.iso_witness.values()) == {
        frozenset(J) for k in range(orb.m + 1) for J in combinations(range(orb.m), k)
    }


def test_phi_image_sizes(D4, Heis27):
    s = gen(D4, "s")
    _, _, R, P, orb = setup("D4", conjugacy_classes(D4).index(class_containing(D4, s)))
    assert len(phi_image(P, orb).orbit_subsets) == 4
    _, _, R, P, orb = setup("Heis27", 1)
    assert len(phi_image(P, orb).orbit_subsets) == 8 == len(P)
    _, _, R, P, orb = setup("D4", 0)
    assert phi_image(P, orb).orbit_subsets == (0, 1)


def test_s3_guard(S3):
    C = class_containing(S3, gen(S3, "t"))
    R = conjugation_rack(S3, C)
    orb = orbit_decomposition(S3, C)
    P = enumerate_subracks(R)
    # the orbit-union map sends every nonempty subrack to the whole class
    assert {closure_phi(S, orb) for S in P.elements} == {0, R.all_bits}
    with pytest.raises(NotApplicable):
        maximal_subracks_via_lemma(R, orb, None)


def test_poset_export(D4):
    s = gen(D4, "s")
    _, C, R, P, _ = setup("D4", conjugacy_classes(D4).index(class_containing(D4, s)))
    d = P.to_dict()
    assert d["elements"][P.bottom] == [] and d["elements"][P.top] == list(C.members)
    assert sorted(map(tuple, d["hasse"])) == sorted((i, j) for i, up in enumerate(P.hasse) for j in up)


def test_random_subsets_closure_matches_oracle():
    rng = random.Random(5)
    G = catalog.get("D16")
    C = max(conjugacy_classes(G), key=len)
    R = conjugation_rack(G, C)
    fam = set(enumerate_subracks(R).elements)
    from subracks.racks import subrack_closure

    for _ in range(200):
        S = rng.getrandbits(R.size)
        cS = subrack_closure(R, S)
        assert cS in fam
        # least closed superset
        assert all(cS & ~X == 0 for X in fam if S & ~X == 0)

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canext import bits
from canext.corpus import (
    boolean,
    chain,
    corpus,
    homomorphisms,
    m3,
    n5,
    product,
    random_hom,
    random_lattice,
    standard_corpus,
)
from canext.errors import (
    IndexOutOfRange,
    NotAHomomorphism,
    NotALattice,
    NotAPoset,
    NotBounded,
    UnknownCorpusName,
)
from canext.lattice import (
    build_lattice,
    compose,
    filters,
    identity_hom,
    ideals,
    is_distributive,
    principal_filter,
    principal_ideal,
    validate_hom,
)
from canext.oracle import brute_force_filters, brute_force_ideals


def names(L, m):
    return set(L.subset_names(m))


def test_chain_from_covers_meet_is_min_join_is_max():
    L = build_lattice(["0", "a", "1"], covers=[("0", "a"), ("a", "1")])
    for x in range(3):
        for y in range(3):
            assert L.meet[x][y] == min(x, y)
            assert L.join[x][y] == max(x, y)
    assert (L.bot, L.top) == (0, 2)


def test_m3_from_covers():
    covers = [("0", x) for x in "bcd"] + [(x, "1") for x in "bcd"]
    L = build_lattice(["0", "b", "c", "d", "1"], covers=covers)
    b, c, d = (L.index(x) for x in "bcd")
    assert L.meet[b][c] == L.bot and L.join[c][d] == L.top
    assert L == m3()


def test_missing_top_is_not_bounded():
    with pytest.raises(NotBounded):
        build_lattice(["0", "a", "b"], covers=[("0", "a"), ("0", "b")])


def test_cycle_is_not_a_poset():
    with pytest.raises(NotAPoset):
        build_lattice(["0", "a", "1"], covers=[("0", "a"), ("a", "0"), ("a", "1")])


def test_bowtie_is_not_a_lattice():
    # 0 < a, b < c, d < 1 with both a, b below both c, d: a ∨ b has no least bound
    covers = [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")]
    with pytest.raises(NotALattice):
        build_lattice(["0", "a", "b", "c", "d", "1"], covers=covers)


def test_leq_input_must_be_reflexive_and_transitive():
    with pytest.raises(NotAPoset):
        build_lattice(["0", "1"], leq=[[False, True], [False, True]])
    with pytest.raises(NotAPoset):
        build_lattice(["0", "a", "1"], leq=[[1, 1, 0], [0, 1, 1], [0, 0, 1]])


def test_duplicate_covers_are_tolerated():
    L = build_lattice(["0", "a", "1"], covers=[("0", "a"), ("0", "a"), ("a", "1")])
    assert L == chain(3)


def test_principal_filter_and_ideal(chain3, M3):
    a = chain3.index("a")
    assert names(chain3, principal_filter(chain3, a)) == {"a", "1"}
    assert names(M3, principal_filter(M3, M3.index("b"))) == {"b", "1"}
    for L in (chain3, M3, n5()):
        assert principal_filter(L, L.bot) == L.full
        assert principal_ideal(L, L.top) == L.full
    with pytest.raises(IndexOutOfRange):
        principal_filter(chain3, 7)


def test_is_distributive():
    assert is_distributive(chain(3))
    assert not is_distributive(m3())
    assert not is_distributive(n5())
    assert is_distributive(boolean(3))


def test_validate_hom_examples(chain3, M3):
    u = validate_hom(chain3, M3, {"0": "0", "a": "b", "1": "1"})
    assert u.describe() == {"0": "0", "a": "b", "1": "1"}
    validate_hom(chain3, M3, {"0": "0", "a": "1", "1": "1"})
    validate_hom(M3, M3, list(range(5)))
    with pytest.raises(NotAHomomorphism) as info:
        validate_hom(chain3, M3, {"0": "b", "a": "b", "1": "1"})
    assert info.value.witness[0] == "bot"


def test_join_violation_carries_a_witness():
    B2 = boolean(2)
    # sends both atoms to 1 while keeping 11 -> 1 but 00 -> 0: meet of atoms breaks
    with pytest.raises(NotAHomomorphism) as info:
        validate_hom(B2, chain(2), {"00": "0", "01": "1", "10": "1", "11": "1"})
    assert info.value.witness == ("meet", "01", "10")


def test_corpus_dispatch():
    assert corpus("chain", 3) == chain(3)
    assert corpus("boolean", 3).n == 8
    assert corpus("M3") == m3()
    assert corpus("random", 4, 6) == random_lattice(4, 6)
    assert corpus("product", chain(2), chain(3)).n == 6
    with pytest.raises(UnknownCorpusName):
        corpus("pentagon")


def test_standard_corpus_contents():
    lattices = standard_corpus()
    assert len(lattices) == 8 + 4 + 2 + 20
    assert all(L.n <= 8 for L in lattices)
    assert any(not is_distributive(L) for L in lattices if L.name.startswith("random"))
    assert [L.n for L in lattices] == [L.n for L in standard_corpus()]


def test_random_lattice_is_deterministic_and_sized():
    for seed in range(10):
        for n in range(1, 9):
            L = random_lattice(seed, n)
            assert L.n == n
            assert L == random_lattice(seed, n)


def _laws(L):
    r = range(L.n)
    m, j = L.meet, L.join
    for a in r:
        assert m[a][a] == a == j[a][a]
        for b in r:
            assert m[a][b] == m[b][a] and j[a][b] == j[b][a]
            assert m[a][j[a][b]] == a == j[a][m[a][b]]
            assert L.le(a, b) == (m[a][b] == a) == (j[a][b] == b)
            for c in r:
                assert m[a][m[b][c]] == m[m[a][b]][c]
                assert j[a][j[b][c]] == j[j[a][b]][c]


def test_lattice_laws_on_corpus():
    for L in standard_corpus() + [product(chain(3), chain(4)), product(m3(), chain(2))]:
        assert L.n <= 12
        _laws(L)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 12))
def test_lattice_laws_random(seed, n):
    _laws(random_lattice(seed, n))


def test_filters_are_principal():
    for L in standard_corpus():
        assert sorted(filters(L)) == sorted(brute_force_filters(L))
        assert sorted(ideals(L)) == sorted(brute_force_ideals(L))


def test_homomorphism_enumeration():
    assert len(list(homomorphisms(chain(3), m3()))) == 5
    assert len(list(homomorphisms(boolean(2), boolean(3)))) == 8
    assert list(homomorphisms(chain(1), chain(2))) == []
    assert len(list(homomorphisms(chain(2), chain(1)))) == 1
    assert list(homomorphisms(m3(), chain(2))) == []
    for u in homomorphisms(n5(), boolean(2)):
        validate_hom(u.src, u.dst, u.map)


def test_compose_and_identity():
    rng = random.Random(3)
    L, K, M = chain(3), boolean(2), chain(2)
    u = random_hom(L, K, rng)
    v = random_hom(K, M, rng)
    vu = compose(v, u)
    assert vu.map == tuple(v.map[u.map[a]] for a in range(L.n))
    assert compose(identity_hom(K), u) == u == compose(u, identity_hom(L))


def test_subsets_and_closure_helpers():
    assert sorted(bits.subsets(0b101)) == [0, 1, 4, 5]
    assert bits.intersection_closure([0b011, 0b110], 0b111) == {0b111, 0b011, 0b110, 0b010}
    assert bits.preimage((2, 0, 2), 0b100) == 0b101

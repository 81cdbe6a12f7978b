from __future__ import annotations

import random

import pytest

from canext import bits
from canext.ah import (
    LGraphMorphism,
    build_Dbar,
    canonical_extension_ah,
    check_iso_XY,
    compose_lgraph,
    dbar_on_hom,
    enumerate_sph,
    evaluation_bar,
    gbar_on_morphism,
    lift_hom,
    mph_mask,
    psi,
    psi_map,
    restrict_to_mph,
)
from canext.corpus import boolean, chain, homomorphisms, m3, n5, random_hom, standard_corpus
from canext.errors import HomInvalid, ImageNotMaximal, InputError, NotAnMpe
from canext.graph import rho_op
from canext.lattice import LatticeHom, compose, identity_hom, validate_hom
from canext.mpe import MpeMap, check_complete_hom, compose_complete, is_mpe
from canext.oracle import iso_fixing_L
from canext.partial import all_partial_homs, is_special
from canext.ploscica import build_D, canonical_extension_ploscica


def test_sph_counts():
    assert [f.label(chain(3)) for f in enumerate_sph(chain(3))] == ["a|0", "1|0", "1|a"]
    assert len(enumerate_sph(m3())) == 13
    for L in standard_corpus(max_size=6):
        expected = [f for f in all_partial_homs(L) if is_special(L, f)]
        assert sorted(enumerate_sph(L), key=lambda f: f.key()) == expected


def test_dbar_puts_mphs_first():
    Y = build_Dbar(chain(3))
    assert Y.names == ("a|0", "1|a", "1|0")
    assert mph_mask(Y) == 0b011
    X = build_D(chain(3))
    assert Y.labels[: X.m] == X.labels


def test_ah_extension_of_three_chain():
    L = chain(3)
    C = canonical_extension_ah(L)
    assert C.size == 3
    Y = build_Dbar(L)
    g1, g2, g3 = (Y.vertex(x) for x in ("a|0", "1|0", "1|a"))
    ea = evaluation_bar(L, L.index("a"), Y)
    # 1|0 keeps a on neither side, so only 1|a sends a to 0
    assert ea == MpeMap(1 << g1, 1 << g3)
    assert not is_mpe(Y, MpeMap(1 << g1, (1 << g2) | (1 << g3)))


def test_psi_on_three_chain():
    L = chain(3)
    X, Y = build_D(L), build_Dbar(L)
    f1, f2 = 1 << X.vertex("a|0"), 1 << X.vertex("1|a")
    eta = psi(L, MpeMap(f1, f2))
    assert eta.ones == 1 << Y.vertex("a|0")
    assert eta.zeros == rho_op(Y, eta.ones)
    assert restrict_to_mph(L, eta) == MpeMap(f1, f2)


def test_psi_rejects_non_mpe():
    L = chain(3)
    with pytest.raises(NotAnMpe):
        psi(L, MpeMap(0, 0))
    with pytest.raises(NotAnMpe):
        restrict_to_mph(L, MpeMap(0, 0))


def test_psi_is_an_iso_fixing_L_on_corpus():
    for L in standard_corpus(max_size=7):
        assert check_iso_XY(L).ok
        h = psi_map(L)
        CX, CY = canonical_extension_ploscica(L), canonical_extension_ah(L)
        assert iso_fixing_L(CX, CY) == h


def test_dbar_on_hom_is_precomposition():
    u = validate_hom(chain(3), m3(), {"0": "0", "a": "b", "1": "1"})
    alpha = dbar_on_hom(u)
    YK, YL = alpha.src, alpha.dst
    assert alpha.report.ok
    for i, f in enumerate(YK.labels):
        assert YL.labels[alpha(i)] == f.compose(u)
    c_d = YK.vertex("c|d")
    assert YL.names[alpha(c_d)] == "1|0"


def test_dbar_rejects_invalid_hom():
    L, K = chain(3), m3()
    bad = LatticeHom(L, K, (K.index("b"), K.index("b"), K.top))
    with pytest.raises(HomInvalid):
        dbar_on_hom(bad)
    with pytest.raises(HomInvalid):
        lift_hom(LatticeHom(L, K, (0, 1)))


def test_dbar_is_contravariant():
    rng = random.Random(11)
    L, K, M = chain(3), boolean(2), chain(2)
    for _ in range(5):
        u, v = random_hom(L, K, rng), random_hom(K, M, rng)
        assert dbar_on_hom(compose(v, u)).map == compose_lgraph(dbar_on_hom(u), dbar_on_hom(v)).map


def test_compose_lgraph_needs_matching_ends():
    a = dbar_on_hom(identity_hom(chain(3)))
    b = dbar_on_hom(identity_hom(m3()))
    with pytest.raises(InputError):
        compose_lgraph(a, b)


def test_gbar_rejects_non_maximal_images():
    # collapsing every vertex of Dbar(M3) onto "1|0" pulls the bottom back to a non-MPE
    Y = build_Dbar(m3())
    alpha = LGraphMorphism(Y, Y, (Y.vertex("1|0"),) * Y.m)
    with pytest.raises(ImageNotMaximal):
        gbar_on_morphism(alpha)


def test_lift_extends_u_and_is_complete():
    for L, K in [(chain(3), m3()), (boolean(2), boolean(3)), (n5(), boolean(2)), (chain(4), n5())]:
        for u in homomorphisms(L, K):
            h = lift_hom(u)
            assert h.report.ok
            CL, CK = h.src, h.dst
            for a in range(L.n):
                assert h(CL.embedding[a]) == CK.embedding[u.map[a]]
            assert check_complete_hom(h).ok


def test_lift_respects_identity_and_composition():
    for L in (chain(3), m3(), boolean(2)):
        h = lift_hom(identity_hom(L))
        assert h.map == tuple(range(h.src.size))
    rng = random.Random(4)
    L, K, M = chain(3), boolean(2), boolean(3)
    for _ in range(5):
        u, v = random_hom(L, K, rng), random_hom(K, M, rng)
        assert lift_hom(compose(v, u)).map == compose_complete(lift_hom(v), lift_hom(u)).map


def test_lift_images_are_mpes():
    u = validate_hom(boolean(2), boolean(3), {"00": "000", "01": "011", "10": "100", "11": "111"})
    h = lift_hom(u)
    YL, YK = build_Dbar(u.src), build_Dbar(u.dst)
    for i in range(h.src.size):
        assert is_mpe(YL, h.src.elements[i])
        assert is_mpe(YK, h.dst.elements[h(i)])
    assert bits.count(mph_mask(YL)) == 2 and bits.count(mph_mask(YK)) == 3

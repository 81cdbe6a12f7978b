from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canext import bits
from canext.ah import canonical_extension_ah
from canext.corpus import boolean, chain, m3, n5
from canext.errors import ElementNotInCompletion, InconsistentSeed, NonReflexiveGraph, NoSubbasis
from canext.graph import graph_from_edges
from canext.lattice import identity_hom
from canext.mpe import (
    CompleteHom,
    MpeMap,
    check_compactness,
    check_complete_hom,
    check_density,
    compose_complete,
    enumerate_mpe,
    extend_partial,
    filter_elements,
    ideal_elements,
    is_maximal_partial,
    is_mpe,
    mpe_join,
    mpe_meet,
    order_glb,
    order_lub,
)
from canext.ploscica import build_D, canonical_extension_ploscica, evaluation


def loop():
    return graph_from_edges(1, [(0, 0)])


def test_single_loop_has_two_mpes():
    C = enumerate_mpe(loop())
    assert C.elements == (MpeMap(0, 1), MpeMap(1, 0))
    assert C.le(0, 1) and not C.le(1, 0)
    assert (C.bottom, C.top) == (0, 1)


def test_isolated_loops_give_the_four_element_boolean_lattice():
    C = enumerate_mpe(graph_from_edges(2, [(0, 0), (1, 1)]))
    assert C.size == 4
    assert {(p.ones, p.zeros) for p in C.elements} == {(0, 3), (1, 2), (2, 1), (3, 0)}
    mid = [i for i in range(4) if i not in (C.bottom, C.top)]
    assert C.meet[mid[0]][mid[1]] == C.bottom and C.join[mid[0]][mid[1]] == C.top


def test_D_of_three_chain_has_three_mpes():
    X = build_D(chain(3))
    C = enumerate_mpe(X)
    f1, f2 = 1 << X.vertex("a|0"), 1 << X.vertex("1|a")
    assert set(C.elements) == {MpeMap(0, f1 | f2), MpeMap(f1, f2), MpeMap(f1 | f2, 0)}
    assert all(is_mpe(X, p) for p in C.elements)
    assert all(is_maximal_partial(X, p.ones, p.zeros) for p in C.elements)


def test_meet_and_join_of_families():
    C = enumerate_mpe(graph_from_edges(2, [(0, 0), (1, 1)]))
    assert mpe_meet(C, [MpeMap(1, 2), MpeMap(2, 1)]) == MpeMap(0, 3)
    assert mpe_join(C, [MpeMap(1, 2), MpeMap(2, 1)]) == MpeMap(3, 0)
    assert mpe_meet(C) == MpeMap(3, 0)
    assert mpe_join(C) == MpeMap(0, 3)
    assert mpe_meet(C, [MpeMap(1, 2)]) == MpeMap(1, 2)
    with pytest.raises(ElementNotInCompletion):
        mpe_meet(C, [MpeMap(1, 0)])
    with pytest.raises(ElementNotInCompletion):
        mpe_join(C, [9])


def test_extend_partial_follows_the_closure_rule():
    # the empty seed closes on the 1-side to the constant-0 map
    assert extend_partial(loop(), 0, 0) == MpeMap(0, 1)
    X = build_D(chain(3))
    f1, f2 = 1 << X.vertex("a|0"), 1 << X.vertex("1|a")
    assert extend_partial(X, f1, 0) == MpeMap(f1, f2)
    assert extend_partial(X, 0, f2) == MpeMap(0, f1 | f2)


def test_extend_partial_rejects_bad_seeds():
    X = build_D(chain(3))
    f1, f2 = 1 << X.vertex("a|0"), 1 << X.vertex("1|a")
    with pytest.raises(InconsistentSeed):
        extend_partial(X, f1, f1)
    with pytest.raises(InconsistentSeed):
        extend_partial(X, f2, f1)  # edge f2 -> f1 runs from 1 to 0
    with pytest.raises(NonReflexiveGraph):
        extend_partial(graph_from_edges(2, [(0, 0)]), 0, 0)


def test_non_reflexive_graph_is_rejected():
    with pytest.raises(NonReflexiveGraph):
        enumerate_mpe(graph_from_edges(2, [(0, 0), (0, 1)]))


def test_filter_and_ideal_elements_on_finite_lattices():
    for L in (chain(3), m3(), n5(), boolean(2)):
        for C in (canonical_extension_ploscica(L), canonical_extension_ah(L)):
            every = frozenset(range(C.size))
            assert filter_elements(C) == every == ideal_elements(C)


def test_filter_elements_need_a_subbasis():
    C = enumerate_mpe(loop())
    with pytest.raises(NoSubbasis):
        filter_elements(C)
    with pytest.raises(NoSubbasis):
        ideal_elements(C)


def test_evaluation_is_an_mpe():
    L = m3()
    X = build_D(L)
    for a in range(L.n):
        phi = evaluation(L, a, X)
        assert is_mpe(X, phi)
        assert phi.ones == X.W[a] and phi.zeros == X.V[a]


def test_density_and_compactness_on_m3():
    C = canonical_extension_ploscica(m3())
    assert check_density(C).ok
    rep = check_compactness(C)
    assert rep.ok and rep.checked == 32 * 32


def test_compactness_instances_on_m3():
    L = m3()
    C = canonical_extension_ploscica(L)
    emb = C.embedding
    b, c, zero = (L.index(x) for x in "bc0")
    # meet{e(b), e(c)} <= e(0) since b and c meet in 0
    assert C.meet[emb[b]][emb[c]] == emb[zero]
    # the empty meet is the top, below a join only when that join is 1
    assert C.meet_of([]) == C.top
    assert not C.le(C.meet_of([]), C.join_of([emb[b], emb[zero]]))
    assert C.le(C.meet_of([]), C.join_of([emb[b], emb[c]]))


def test_compactness_samples_above_the_exhaustive_limit():
    C = canonical_extension_ploscica(boolean(3))
    rep = check_compactness(C, samples=300, seed=5)
    assert rep.ok and rep.checked == 300


def test_order_glb_and_lub_over_all_subsets():
    C = canonical_extension_ploscica(n5())
    for S in range(1 << C.size):
        members = list(bits.members(S))
        assert order_glb(C.leq, members) == C.meet_of(members)
        assert order_lub(C.leq, members) == C.join_of(members)


def test_order_glb_absent_in_a_non_lattice():
    # two incomparable elements with no common lower bound
    leq = [[True, False], [False, True]]
    assert order_glb(leq, [0, 1]) is None
    assert order_lub(leq, [0, 1]) is None


def test_complete_hom_identity_and_composition():
    C = canonical_extension_ploscica(m3())
    ident = CompleteHom(C, C, tuple(range(C.size)))
    assert check_complete_hom(ident).ok
    assert compose_complete(ident, ident) == ident
    const = CompleteHom(C, C, (C.top,) * C.size)
    rep = check_complete_hom(const)
    assert not rep.ok
    assert {f["kind"] for f in rep.failures} == {"join"}


def test_identity_hom_evaluation_roundtrip():
    L = boolean(2)
    C = canonical_extension_ploscica(L)
    u = identity_hom(L)
    assert tuple(C.embedding[u.map[a]] for a in range(L.n)) == C.embedding


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.data())
def test_random_graph_mpes_are_fixpoints_and_maximal(m, data):
    edges = [(x, x) for x in range(m)]
    for x in range(m):
        for y in range(m):
            if x != y and data.draw(st.booleans()):
                edges.append((x, y))
    G = graph_from_edges(m, edges)
    C = enumerate_mpe(G)
    for p in C.elements:
        assert is_mpe(G, p) and is_maximal_partial(G, p.ones, p.zeros)
    for i in range(C.size):
        for j in range(C.size):
            k = C.meet[i][j]
            assert C.le(k, i) and C.le(k, j)
            assert C.le(i, C.join[i][j])

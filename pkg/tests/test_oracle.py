from __future__ import annotations

import random

import pytest

from canext import bits
from canext.ah import canonical_extension_ah
from canext.checks import all_reflexive_graphs, random_reflexive_graph
from canext.corpus import boolean, chain, m3, n5, standard_corpus
from canext.errors import EmbeddingMismatch, TooLarge
from canext.graph import graph_from_edges
from canext.mpe import enumerate_mpe
from canext.oracle import (
    brute_force_mpe,
    gh_extension,
    iso_fixing_L,
    polarity_context,
    stable_sets,
    stable_sets_bruteforce,
)
from canext.ploscica import build_D, canonical_extension_ploscica


def test_polarity_context_of_three_chain():
    L = chain(3)
    P = polarity_context(L)
    assert P.R == tuple(tuple(L.le(a, b) for b in range(3)) for a in range(3))
    assert P.closure(0) == 0b001  # every ideal meets ↑0
    assert P.closure(0b010) == 0b011


def test_stable_sets_match_brute_force():
    for L in standard_corpus(max_size=8):
        P = polarity_context(L)
        assert stable_sets(P) == stable_sets_bruteforce(P)


def test_gh_extension_on_small_lattices():
    L = chain(3)
    C = gh_extension(L)
    assert C.elements == (0b001, 0b011, 0b111)
    assert C.embedding == (0, 1, 2)
    M = m3()
    CM = gh_extension(M)
    assert CM.size == 5
    assert CM.elements[CM.embedding[M.bot]] == 1 << M.bot


def test_brute_force_mpe_on_tiny_graphs():
    loop = graph_from_edges(1, [(0, 0)])
    assert [(p.ones, p.zeros) for p in brute_force_mpe(loop)] == [(0, 1), (1, 0)]
    X = build_D(chain(3))
    assert brute_force_mpe(X) == list(enumerate_mpe(X).elements)


def test_brute_force_refuses_large_graphs():
    G = graph_from_edges(17, [(x, x) for x in range(17)])
    with pytest.raises(TooLarge):
        brute_force_mpe(G)


def test_brute_force_agrees_on_all_three_vertex_graphs():
    graphs = list(all_reflexive_graphs(3))
    assert len(graphs) == 2 ** 6
    for G in graphs:
        assert brute_force_mpe(G) == list(enumerate_mpe(G).elements)


def test_brute_force_agrees_on_random_graphs():
    for seed in range(40):
        G = random_reflexive_graph(random.Random(seed), 6)
        assert brute_force_mpe(G) == list(enumerate_mpe(G).elements)


def test_three_constructions_are_isomorphic():
    for L in (chain(3), m3(), n5(), boolean(3)):
        CX = canonical_extension_ploscica(L)
        for other in (canonical_extension_ah(L), gh_extension(L)):
            h = iso_fixing_L(CX, other)
            assert h is not None and sorted(h) == list(range(L.n))


def test_iso_absent_between_different_sizes():
    C3 = canonical_extension_ploscica(chain(3))
    CB = canonical_extension_ploscica(boolean(2))
    assert iso_fixing_L(C3, CB) is None


def test_iso_rejects_different_embedded_lattices():
    CB = canonical_extension_ploscica(boolean(2))
    C4 = canonical_extension_ploscica(chain(4))
    with pytest.raises(EmbeddingMismatch):
        iso_fixing_L(CB, C4)


def test_iso_fails_when_embeddings_disagree():
    C = canonical_extension_ploscica(boolean(2))
    emb = list(C.embedding)
    swapped = [emb[0], emb[1], emb[1], emb[3]]
    assert iso_fixing_L(C, C, emb, swapped) is None


def test_iso_backtracks_without_forcing():
    # the four-element boolean completion with only the bounds pinned: two isos exist
    C = canonical_extension_ploscica(boolean(2))
    h = iso_fixing_L(C, C, [C.bottom, C.top], [C.bottom, C.top])
    assert h is not None
    for i in range(C.size):
        for j in range(C.size):
            assert C.leq[i][j] == C.leq[h[i]][h[j]]
    assert bits.count(bits.mask(h)) == C.size

"""The MPH dual of a lattice and its completion by maximal E-preserving maps.

Vertices are the maximal partial homomorphisms ``L -> 2``.  On a finite
lattice these are the pairs ``(↑a, ↓b)`` that are maximal among disjoint
filter-ideal pairs.  The topology is discrete in the finite case, so it is
not stored.  The subbasis families ``V_a``/``W_a`` are kept on the graph.
"""

from __future__ import annotations

from functools import lru_cache

from . import bits
from .corpus import chain, m3
from .graph import Graph, labeled_graph
from .lattice import Lattice, LatticeHom, validate_hom
from .mpe import Completion, MpeMap, attach_embedding, enumerate_mpe, is_mpe
from .partial import PartialHom, all_partial_homs, is_partial_hom
from .report import Report


def is_maximal_pair(L: Lattice, a: int, b: int) -> bool:
    """``(↑a, ↓b)`` with ``a ≰ b`` cannot be enlarged on either side."""
    if L.le(a, b):
        return False
    for c in bits.members(L.down[a]):
        if c != a and not L.le(c, b):
            return False
    for c in bits.members(L.up[b]):
        if c != b and not L.le(a, c):
            return False
    return True


def enumerate_mph(L: Lattice) -> list[PartialHom]:
    out = [
        PartialHom(L.up[a], L.down[b])
        for a in range(L.n)
        for b in range(L.n)
        if is_maximal_pair(L, a, b)
    ]
    return sorted(out, key=PartialHom.key)


@lru_cache(maxsize=256)
def build_D(L: Lattice) -> Graph:
    mphs = enumerate_mph(L)
    return labeled_graph(L, mphs, mph_prefix=len(mphs))


def evaluation(L: Lattice, a: int, G: Graph | None = None) -> MpeMap:
    """``e_a``: 1 on ``W_a``, 0 on ``V_a``."""
    L.check(a)
    G = G if G is not None else build_D(L)
    phi = MpeMap(G.W[a], G.V[a])
    if not is_mpe(G, phi):
        raise AssertionError(f"evaluation at {L.names[a]} is not a maximal E-preserving map")
    return phi


@lru_cache(maxsize=256)
def canonical_extension_ploscica(L: Lattice) -> Completion:
    G = build_D(L)
    C = enumerate_mpe(G)
    emb = [C.index_of(evaluation(L, a, G)) for a in range(L.n)]
    return attach_embedding(C, L, emb)


def fig3_maps() -> tuple[LatticeHom, PartialHom]:
    """The three-element chain into M3 with ``a -> b``, and ``f = (↑c, ↓d)`` on M3."""
    L, K = chain(3), m3()
    u = validate_hom(L, K, {"0": "0", "a": "b", "1": "1"})
    c, d = K.index("c"), K.index("d")
    return u, PartialHom(K.up[c], K.down[d])


def reproduce_fig3(u: LatticeHom | None = None, f: PartialHom | None = None) -> Report:
    """Compose an MPH of the codomain with ``u`` and test the result for maximality.

    The report fails when ``f∘u`` is not a partial homomorphism, or when ``u``
    is surjective yet ``f∘u`` is not maximal.  Every proper extension is
    listed in ``data["extensions"]``; ``data["maximal"]`` is the verdict.
    """
    if u is None or f is None:
        u, f = fig3_maps()
    L, K = u.src, u.dst
    rep = Report("fig3")
    g = f.compose(u)
    rep.tick()
    rep.data["f"] = f.label(K)
    rep.data["composite"] = {
        "ones": L.subset_names(g.ones),
        "zeros": L.subset_names(g.zeros),
    }
    rep.data["domain"] = L.subset_names(g.domain)
    if not is_partial_hom(L, g):
        rep.fail("not-partial-hom", composite=rep.data["composite"])
        return rep
    extensions = [
        h for h in all_partial_homs(L) if h != g and h.extends(g)
    ]
    rep.data["extensions"] = [
        {"ones": L.subset_names(h.ones), "zeros": L.subset_names(h.zeros), "total": h.domain == L.full}
        for h in extensions
    ]
    rep.data["maximal"] = not extensions
    if extensions and u.is_surjective():
        rep.fail("surjective-but-not-maximal", composite=rep.data["composite"])
    rep.notes.append(
        f"f∘u has domain {{{','.join(rep.data['domain'])}}} and {len(extensions)} proper extension(s)"
    )
    return rep

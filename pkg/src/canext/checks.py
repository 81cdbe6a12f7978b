"""Property batteries run over a corpus of lattices.

Each battery returns a list of :class:`Report`, one per property, with every
failure carrying the sets that witness it.  ``CANEXT_CORPUS_DIR`` replaces
the built-in corpus with the ``*.json`` lattice files of a directory.
"""

from __future__ import annotations

import os
import random
from itertools import product as cartesian
from pathlib import Path
from typing import Callable, Iterable

from . import bits
from .ah import (
    build_Dbar,
    canonical_extension_ah,
    check_iso_XY,
    compose_lgraph,
    dbar_on_hom,
    lift_hom,
    psi_map,
)
from .corpus import homomorphisms, standard_corpus
from .errors import WitnessInconsistency
from .io import read_lattice
from .graph import (
    Graph,
    ell,
    ell_stable_sets,
    graph_from_succ,
    is_e_preserving,
    is_ell_stable,
    is_r_stable,
    r,
    r_stable_sets,
    witness_E_from_quasiorders,
)
from .lattice import Lattice, compose, identity_hom, is_distributive
from .mpe import (
    Completion,
    MpeMap,
    check_compactness,
    check_density,
    compose_complete,
    e_join,
    e_meet,
    enumerate_mpe,
    filter_elements,
    ideal_elements,
    is_maximal_partial,
    is_mpe,
    order_glb,
    order_lub,
    p_join,
    p_meet,
)
from .oracle import (
    brute_force_mpe,
    brute_force_mph,
    gh_extension,
    iso_fixing_L,
    polarity_context,
    stable_sets,
    stable_sets_bruteforce,
)
from .partial import PartialHom, is_special
from .ploscica import build_D, canonical_extension_ploscica, enumerate_mph, fig3_maps, reproduce_fig3
from .report import Report

SUITES = ("lemmas", "oracle", "functor")


def load_corpus(max_size: int = 8, seed: int = 0) -> list[Lattice]:
    """The standard corpus up to ``max_size``, or the files of ``CANEXT_CORPUS_DIR``."""
    folder = os.environ.get("CANEXT_CORPUS_DIR")
    if folder:
        found = [read_lattice(p) for p in sorted(Path(folder).glob("*.json"))]
        return [L for L in found if L.n <= max_size]
    return standard_corpus(max_size=max_size, seed=seed)


class _Book:
    """Reports keyed by property name, created on first use, in insertion order."""

    def __init__(self) -> None:
        self.reports: dict[str, Report] = {}

    def __getitem__(self, name: str) -> Report:
        if name not in self.reports:
            self.reports[name] = Report(name)
        return self.reports[name]

    def done(self) -> list[Report]:
        return list(self.reports.values())


def _families(size: int, limit: int, rng: random.Random, samples: int = 200) -> Iterable[list[int]]:
    if size <= limit:
        for fam in bits.subsets(bits.full(size)):
            yield list(bits.members(fam))
    else:
        yield []
        for i in range(size):
            for j in range(i, size):
                yield [i, j]
        for _ in range(samples):
            yield list(bits.members(rng.getrandbits(size)))


# -- lemmas ----------------------------------------------------------------


def _fixpoint(G: Graph, C: Completion, rep: Report, where: str) -> None:
    zeros_seen = set()
    for phi in C.elements:
        rep.tick()
        if not is_mpe(G, phi) or not is_maximal_partial(G, phi.ones, phi.zeros):
            rep.fail("not-fixpoint-or-not-maximal", graph=where, ones=G.subset_names(phi.ones))
        if phi.zeros in zeros_seen:
            rep.fail("zeros-repeated", graph=where, zeros=G.subset_names(phi.zeros))
        zeros_seen.add(phi.zeros)


def _extension(G: Graph, C: Completion, rep: Report, where: str, limit: int, rng: random.Random) -> None:
    for fam in _families(C.size, limit, rng):
        rep.tick()
        maps = [C.elements[i] for i in fam]
        em, ej = e_meet(G, maps), e_join(G, maps)
        pm, pj = p_meet(G, maps), p_join(G, maps)
        ok = (
            is_mpe(G, em)
            and is_mpe(G, ej)
            and em.ones == pm[0]
            and bits.is_subset(pm[1], em.zeros)
            and ej.zeros == pj[1]
            and bits.is_subset(pj[0], ej.ones)
            and C.index_of(em) == order_glb(C.leq, fam)
            and C.index_of(ej) == order_lub(C.leq, fam)
        )
        if not ok:
            rep.fail("extension", graph=where, family=fam)


def _order_recovery(G: Graph, edge: Report, order: Report, inE: Report, where: str, sph: bool) -> None:
    for f in range(G.m):
        inE.tick()
        if not bits.is_subset(G.up1[f], G.succ[f]) or not bits.is_subset(G.down2[f], G.succ[f]):
            inE.fail("quasiorder-outside-E", graph=where, f=G.names[f])
        for g in range(G.m):
            edge.tick()
            try:
                h = witness_E_from_quasiorders(G, f, g)
            except WitnessInconsistency as exc:
                edge.fail("witness", graph=where, f=G.names[f], g=G.names[g], detail=str(exc))
                h = None
            if sph and G.has_edge(f, g):
                want = PartialHom(G.labels[f].ones, G.labels[g].zeros)
                if h is None or G.labels[h] != want:
                    edge.fail("constructed-witness", graph=where, f=G.names[f], g=G.names[g])
            order.tick()
            le2 = G.up2[f] >> g & 1 == 1
            no_h2 = G.pred[g] & ~G.pred[f] == 0
            le1 = G.up1[f] >> g & 1 == 1
            no_h1 = G.succ[g] & ~G.succ[f] == 0
            if le2 != no_h2 or le1 != no_h1:
                order.fail("order-recovery", graph=where, f=G.names[f], g=G.names[g])


def _cover(G: Graph, C: Completion, rep: Report, where: str) -> None:
    for phi in C.elements:
        for f in range(G.m):
            rep.tick()
            if not phi.zeros >> f & 1 and G.up2[f] & phi.ones == 0:
                rep.fail("no-upper-one", graph=where, f=G.names[f], ones=G.subset_names(phi.ones))
            if not phi.ones >> f & 1 and G.up1[f] & phi.zeros == 0:
                rep.fail("no-upper-zero", graph=where, f=G.names[f], zeros=G.subset_names(phi.zeros))


def _increasing(G: Graph, C: Completion, rep: Report, where: str) -> None:
    for phi in C.elements:
        rep.tick()
        for f in bits.members(phi.ones):
            if not bits.is_subset(G.up1[f], phi.ones):
                rep.fail("ones-not-increasing", graph=where, f=G.names[f])
        for f in bits.members(phi.zeros):
            if not bits.is_subset(G.up2[f], phi.zeros):
                rep.fail("zeros-not-increasing", graph=where, f=G.names[f])


def _subbasis(G: Graph, C: Completion, L: Lattice, rep: Report, where: str) -> None:
    for phi in C.elements:
        for a in range(L.n):
            rep.tick()
            if phi.zeros & G.W[a] == 0 and not bits.is_subset(phi.zeros, G.V[a]):
                rep.fail("zeros-outside-V", graph=where, a=L.names[a])
            if phi.ones & G.V[a] == 0 and not bits.is_subset(phi.ones, G.W[a]):
                rep.fail("ones-outside-W", graph=where, a=L.names[a])


def preserves_quasiorders(G: Graph, phi: MpeMap) -> bool:
    """On its domain, ``<=1`` goes to ``<=`` and ``<=2`` to ``>=`` in the two-element order."""
    for f in bits.members(phi.ones):
        if G.up1[f] & phi.zeros:
            return False
    for f in bits.members(phi.zeros):
        if G.up2[f] & phi.ones:
            return False
    return True


def stable_pairs(G: Graph) -> list[MpeMap]:
    """Pairs with ``ones = ℓ(zeros)`` and ``zeros = r(ones)``; the ones side is ℓ-stable."""
    out = []
    for A in ell_stable_sets(G):
        B = r(G, A)
        if ell(G, B) == A:
            out.append(MpeMap(A, B))
    return sorted(out, key=MpeMap.key)


def maximal_partial_morphisms(G: Graph) -> list[MpeMap]:
    """Maximal partial L-graph morphisms into the two-element L-graph.

    Conditions on stable sets reduce to the stable-pair equations for
    ``{1}`` and ``{0}``, so candidates are the stable pairs that preserve
    both quasi-orders, kept when no other candidate properly extends them.
    """
    cands = [p for p in stable_pairs(G) if p.ones & p.zeros == 0 and preserves_quasiorders(G, p)]
    return [
        p for p in cands
        if not any(
            q != p and bits.is_subset(p.ones, q.ones) and bits.is_subset(p.zeros, q.zeros)
            for q in cands
        )
    ]


def _mpe_stable(Y: Graph, C: Completion, rep: Report, where: str) -> None:
    rep.tick()
    one = set(C.elements)
    two = set(stable_pairs(Y))
    three = set(maximal_partial_morphisms(Y))
    if Y.m <= 12:
        scan = {
            MpeMap(A, r(Y, A)) for A in range(1 << Y.m) if ell(Y, r(Y, A)) == A
        }
        if scan != two:
            rep.fail("stable-pair-scan", graph=where)
    if not (one == two == three):
        rep.fail("equivalence", graph=where, sizes=[len(one), len(two), len(three)])


def is_increasing(up: tuple[int, ...], A: int) -> bool:
    return all(bits.is_subset(up[f], A) for f in bits.members(A))


def _stability(Y: Graph, rep: Report, where: str, rng: random.Random) -> None:
    """ℓ-images of ≤2-increasing sets are ℓ-stable, r-images of ≤1-increasing
    sets are r-stable, and every stable set is such an image.

    Images of arbitrary sets need not be stable; those are counted in
    ``data["unrestricted"]`` but are not failures.
    """
    if Y.m <= 10:
        sample = range(1 << Y.m)
    else:
        sample = [1 << g for g in range(Y.m)] + [rng.getrandbits(Y.m) for _ in range(300)]
    loose = rep.data.setdefault("unrestricted", 0)
    for B in sample:
        rep.tick()
        A, A2 = ell(Y, B), r(Y, B)
        if is_increasing(Y.up2, B) and not is_ell_stable(Y, A):
            rep.fail("ell-image-not-stable", graph=where, B=Y.subset_names(B))
        if is_increasing(Y.up1, B) and not is_r_stable(Y, A2):
            rep.fail("r-image-not-stable", graph=where, B=Y.subset_names(B))
        loose += (not is_ell_stable(Y, A)) + (not is_r_stable(Y, A2))
        if is_ell_stable(Y, B) and not is_increasing(Y.up2, r(Y, B)):
            rep.fail("stable-without-increasing-preimage", graph=where, A=Y.subset_names(B))
    rep.data["unrestricted"] = loose
    if Y.m <= 10:
        rep.tick()
        if ell_stable_sets(Y) != sorted(
            (A for A in range(1 << Y.m) if is_ell_stable(Y, A)), key=bits.set_key
        ) or r_stable_sets(Y) != sorted(
            (A for A in range(1 << Y.m) if is_r_stable(Y, A)), key=bits.set_key
        ):
            rep.fail("stable-enumeration", graph=where)


def lemma_battery(lattices: Iterable[Lattice], exhaustive_limit: int = 6, seed: int = 0) -> list[Report]:
    book = _Book()
    rng = random.Random(seed)
    for L in lattices:
        X, Y = build_D(L), build_Dbar(L)
        CX, CY = canonical_extension_ploscica(L), canonical_extension_ah(L)
        tag = L.name or str(L.n)
        wx, wy = f"D({tag})", f"Dbar({tag})"
        for G, C, w in ((X, CX, wx), (Y, CY, wy)):
            _fixpoint(G, C, book["mpe-fixpoint"], w)
            _extension(G, C, book["meet-join-extension"], w, exhaustive_limit, rng)
            _increasing(G, C, book["increasing-preimages"], w)
            _subbasis(G, C, L, book["subbasis-inclusion"], w)
        _order_recovery(X, book["edge-witness-mph"], book["order-recovery-mph"], book["quasiorders-in-E"], wx, False)
        _order_recovery(Y, book["edge-witness-sph"], book["order-recovery-sph"], book["quasiorders-in-E"], wy, True)
        _cover(X, CX, book["cover-by-order"], wx)
        _mpe_stable(Y, CY, book["mpe-stable-pairs"], wy)
        _stability(Y, book["stability"], wy, rng)
        rep = book["filter-ideal-elements"]
        rep.tick()
        for C in (CX, CY):
            if filter_elements(C) != frozenset(range(C.size)) or ideal_elements(C) != frozenset(range(C.size)):
                rep.fail("not-all-filter-ideal", graph=tag, kind=C.kind)
    return book.done()


# -- oracles ---------------------------------------------------------------


def all_reflexive_graphs(m: int) -> Iterable[Graph]:
    pairs = [(x, y) for x in range(m) for y in range(m) if x != y]
    for choice in range(1 << len(pairs)):
        succ = [1 << x for x in range(m)]
        for k, (x, y) in enumerate(pairs):
            if choice >> k & 1:
                succ[x] |= 1 << y
        yield graph_from_succ(succ)


def random_reflexive_graph(rng: random.Random, max_m: int = 7) -> Graph:
    m = rng.randint(1, max_m)
    p = rng.uniform(0.1, 0.9)
    succ = [1 << x for x in range(m)]
    for x in range(m):
        for y in range(m):
            if x != y and rng.random() < p:
                succ[x] |= 1 << y
    return graph_from_succ(succ)


def mpe_oracle_report(exhaustive_m: int = 4, randoms: int = 200, max_m: int = 7, seed: int = 0) -> Report:
    """Fixpoint enumeration against the definitional scan on many small graphs."""
    rep = Report("mpe-vs-bruteforce")
    rng = random.Random(seed)
    graphs: list[Graph] = []
    for m in range(1, exhaustive_m + 1):
        graphs.extend(all_reflexive_graphs(m))
    graphs.extend(random_reflexive_graph(rng, max_m) for _ in range(randoms))
    for G in graphs:
        rep.tick()
        got = set(enumerate_mpe(G).elements)
        want = set(brute_force_mpe(G))
        if got != want:
            rep.fail("mismatch", succ=list(G.succ), missing=len(want - got), extra=len(got - want))
    rep.data["graphs"] = len(graphs)
    return rep


def self_extension_report(lattices: Iterable[Lattice]) -> Report:
    """All three completions have |L| elements and are pairwise isomorphic over L."""
    rep = Report("self-extension")
    for L in lattices:
        rep.tick()
        tag = L.name or str(L.n)
        CP, CA, CG = canonical_extension_ploscica(L), canonical_extension_ah(L), gh_extension(L)
        sizes = [CP.size, CA.size, CG.size]
        if sizes != [L.n] * 3:
            rep.fail("size", lattice=tag, sizes=sizes)
            continue
        for (n1, C1), (n2, C2) in (
            (("ploscica", CP), ("ah", CA)),
            (("ploscica", CP), ("polarity", CG)),
            (("ah", CA), ("polarity", CG)),
        ):
            if iso_fixing_L(C1, C2) is None:
                rep.fail("no-iso", lattice=tag, pair=[n1, n2])
        if iso_fixing_L(CP, CA) != psi_map(L):
            rep.fail("iso-is-not-psi", lattice=tag)
    return rep


def completion_reports(lattices: Iterable[Lattice], seed: int = 0, samples: int = 1000) -> list[Report]:
    density, compact = Report("density"), Report("compactness")
    for L in lattices:
        for C in (canonical_extension_ploscica(L), canonical_extension_ah(L), gh_extension(L)):
            density.merge(check_density(C))
            compact.merge(check_compactness(C, samples=samples, seed=seed))
    return [density, compact]


def psi_report(lattices: Iterable[Lattice]) -> Report:
    rep = Report("psi-iso")
    for L in lattices:
        rep.merge(check_iso_XY(L))
    return rep


def mph_oracle_report(lattices: Iterable[Lattice]) -> Report:
    rep = Report("mph-vs-bruteforce")
    for L in lattices:
        rep.tick()
        mph = enumerate_mph(L)
        if mph != brute_force_mph(L):
            rep.fail("mismatch", lattice=L.name)
        sph = set(PartialHom(L.up[a], L.down[b]) for a in range(L.n) for b in range(L.n) if not L.le(a, b))
        if not set(mph) <= sph or not all(is_special(L, f) for f in sph):
            rep.fail("mph-not-special", lattice=L.name)
    return rep


def polarity_oracle_report(lattices: Iterable[Lattice], scan_limit: int = 5) -> Report:
    rep = Report("polarity-stable-sets")
    for L in lattices:
        rep.tick()
        P = polarity_context(L)
        if L.n <= scan_limit and stable_sets(P) != stable_sets_bruteforce(P):
            rep.fail("mismatch", lattice=L.name)
    return rep


def distributive_report(lattices: Iterable[Lattice]) -> Report:
    """Distributive lattices: MPHs are total and E on D(L) is a partial order."""
    rep = Report("distributive")
    for L in lattices:
        if not is_distributive(L):
            continue
        X = build_D(L)
        rep.tick()
        if any(f.domain != L.full for f in X.labels):
            rep.fail("partial-mph", lattice=L.name)
        for f in range(X.m):
            for g in range(X.m):
                if f != g and X.has_edge(f, g) and X.has_edge(g, f):
                    rep.fail("E-not-antisymmetric", lattice=L.name, f=X.names[f], g=X.names[g])
                pointwise = all(
                    X.labels[f].value(a) <= X.labels[g].value(a) for a in range(L.n)
                ) if X.labels[f].domain == L.full == X.labels[g].domain else None
                if pointwise is not None and pointwise != X.has_edge(f, g):
                    rep.fail("E-not-pointwise", lattice=L.name, f=X.names[f], g=X.names[g])
    return rep


def oracle_battery(lattices: list[Lattice], seed: int = 0) -> list[Report]:
    return [
        mpe_oracle_report(seed=seed),
        mph_oracle_report(lattices),
        polarity_oracle_report(lattices),
        self_extension_report(lattices),
        psi_report(lattices),
        *completion_reports(lattices, seed=seed),
        distributive_report(lattices),
    ]


# -- functors --------------------------------------------------------------


def sample_homs(lattices: list[Lattice], count: int, seed: int = 0):
    """Seeded homomorphisms between corpus lattices, skipping empty hom-sets."""
    rng = random.Random(seed)
    pool = [(L, K) for L, K in cartesian(lattices, lattices) if L.n > 1 or K.n == 1]
    out = []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        L, K = rng.choice(pool)
        homs = list(homomorphisms(L, K))
        if homs:
            out.append(rng.choice(homs))
    return out


def sample_composable(lattices: list[Lattice], count: int, seed: int = 0):
    rng = random.Random(seed + 1)
    out = []
    tries = 0
    while len(out) < count and tries < 100 * count:
        tries += 1
        L, K, M = (rng.choice(lattices) for _ in range(3))
        us, vs = list(homomorphisms(L, K)), list(homomorphisms(K, M))
        if us and vs:
            out.append((rng.choice(us), rng.choice(vs)))
    return out


def fig3_report() -> Report:
    rep = reproduce_fig3()
    u, _ = fig3_maps()
    alpha = dbar_on_hom(u)
    rep.tick()
    if rep.data.get("maximal", True) or len(rep.data.get("extensions", [])) != 2:
        rep.fail("composite-not-properly-extendable", data=rep.data.get("extensions"))
    if rep.data.get("domain") != ["0", "1"]:
        rep.fail("domain", domain=rep.data.get("domain"))
    L = u.src
    for f, image in zip(alpha.src.labels, alpha.map):
        rep.tick()
        if not is_special(L, alpha.dst.labels[image]) or alpha.dst.labels[image] != f.compose(u):
            rep.fail("sph-image", f=f.label(u.dst))
    if not (alpha.report and alpha.report.ok):
        rep.fail("dbar-not-lgraph-morphism")
    return rep


def functor_battery(lattices: list[Lattice], homs: int = 25, triples: int = 10, seed: int = 0) -> list[Report]:
    lift, epres, ident, comp = Report("lift"), Report("lgraph-epres"), Report("identity"), Report("composition")
    for u in sample_homs(lattices, homs, seed):
        h = lift_hom(u)
        lift.merge(h.report)
        alpha = dbar_on_hom(u)
        epres.tick()
        if not is_e_preserving(alpha.src, alpha.dst, alpha.map):
            epres.fail("not-E-preserving", src=u.src.name, dst=u.dst.name, map=list(u.map))
    lift.data["homs"] = homs
    for L in lattices:
        ident.tick()
        i = identity_hom(L)
        if lift_hom(i).map != tuple(range(canonical_extension_ah(L).size)):
            ident.fail("lift", lattice=L.name)
        if dbar_on_hom(i).map != tuple(range(build_Dbar(L).m)):
            ident.fail("dbar", lattice=L.name)
    for u, v in sample_composable(lattices, triples, seed):
        comp.tick()
        vu = compose(v, u)
        if lift_hom(vu).map != compose_complete(lift_hom(v), lift_hom(u)).map:
            comp.fail("lift", maps=[list(u.map), list(v.map)], names=[u.src.name, u.dst.name, v.dst.name])
        if dbar_on_hom(vu).map != compose_lgraph(dbar_on_hom(u), dbar_on_hom(v)).map:
            comp.fail("dbar", maps=[list(u.map), list(v.map)], names=[u.src.name, u.dst.name, v.dst.name])
    return [lift, epres, ident, comp, fig3_report()]


BATTERIES: dict[str, Callable[..., list[Report]]] = {
    "lemmas": lambda lattices, seed: lemma_battery(lattices, seed=seed),
    "oracle": lambda lattices, seed: oracle_battery(lattices, seed=seed),
    "functor": lambda lattices, seed: functor_battery(lattices, seed=seed),
}


def run_suite(suite: str, max_size: int = 6, seed: int = 0) -> list[Report]:
    names = SUITES if suite == "all" else (suite,)
    lattices = load_corpus(max_size=max_size, seed=seed)
    out: list[Report] = []
    for name in names:
        out.extend(BATTERIES[name](lattices, seed))
    return out

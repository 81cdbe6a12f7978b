"""The enlarged dual built from all special partial homomorphisms.

Vertices of ``Dbar(L)`` are the disjoint pairs ``(↑a, ↓b)``.  The maximal
pairs are indexed first, in the same order as in ``D(L)``, so a map over
``D(L)`` reads directly as a partial map over ``Dbar(L)`` and restriction
back is a mask.

Morphisms go contravariantly: a lattice homomorphism ``u: L -> K`` gives
``Dbar(u): Dbar(K) -> Dbar(L)``, ``f -> f∘u``, and completing again gives
``L^δ -> K^δ`` by ``φ -> φ∘Dbar(u)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import bits
from .errors import HomInvalid, ImageNotMaximal, InputError, NotAnMpe
from .graph import Graph, check_lgraph_morphism, labeled_graph, rho_op
from .lattice import Lattice, LatticeHom, hom_violation
from .mpe import (
    Completion,
    CompleteHom,
    MpeMap,
    attach_embedding,
    check_complete_hom,
    enumerate_mpe,
    is_mpe,
)
from .partial import PartialHom, is_special
from .ploscica import build_D, canonical_extension_ploscica, enumerate_mph
from .report import Report


@dataclass(frozen=True)
class LGraphMorphism:
    src: Graph
    dst: Graph
    map: tuple[int, ...]
    report: Report | None = field(default=None, compare=False, repr=False)

    def __call__(self, f: int) -> int:
        return self.map[f]


def enumerate_sph(L: Lattice) -> list[PartialHom]:
    out = [
        PartialHom(L.up[a], L.down[b])
        for a in range(L.n)
        for b in range(L.n)
        if not L.le(a, b)
    ]
    return sorted(out, key=PartialHom.key)


@lru_cache(maxsize=256)
def build_Dbar(L: Lattice) -> Graph:
    mphs = enumerate_mph(L)
    marked = set(mphs)
    rest = [f for f in enumerate_sph(L) if f not in marked]
    return labeled_graph(L, mphs + rest, mph_prefix=len(mphs))


def mph_mask(Y: Graph) -> int:
    return bits.full(Y.mph_prefix)


def evaluation_bar(L: Lattice, a: int, Y: Graph | None = None) -> MpeMap:
    L.check(a)
    Y = Y if Y is not None else build_Dbar(L)
    phi = MpeMap(Y.W[a], Y.V[a])
    if not is_mpe(Y, phi):
        raise AssertionError(f"evaluation at {L.names[a]} is not a maximal E-preserving map")
    return phi


@lru_cache(maxsize=256)
def canonical_extension_ah(L: Lattice) -> Completion:
    Y = build_Dbar(L)
    C = enumerate_mpe(Y)
    emb = [C.index_of(evaluation_bar(L, a, Y)) for a in range(L.n)]
    return attach_embedding(C, L, emb)


def psi(L: Lattice, phi: MpeMap) -> MpeMap:
    """Carry an MPE over ``D(L)`` to one over ``Dbar(L)``.

    ones: vertices with no edge into ``zeros(φ)``.
    zeros: vertices ``f`` such that every ``h`` with no edge into
    ``zeros(φ)`` also has no edge to ``f``.  Both clauses are evaluated as
    written; ``zeros = rho(ones)`` is then asserted.
    """
    X, Y = build_D(L), build_Dbar(L)
    if not is_mpe(X, phi):
        raise NotAnMpe(f"({X.subset_names(phi.ones)}, {X.subset_names(phi.zeros)}) is not an MPE")
    ones = bits.mask(f for f in range(Y.m) if Y.succ[f] & phi.zeros == 0)
    zeros = 0
    for f in range(Y.m):
        if all(
            not Y.has_edge(h, f)
            for h in range(Y.m)
            if Y.succ[h] & phi.zeros == 0
        ):
            zeros |= 1 << f
    out = MpeMap(ones, zeros)
    if zeros != rho_op(Y, ones):
        raise AssertionError("Psi zeros differ from rho(ones)")
    if not is_mpe(Y, out):
        raise AssertionError("Psi image is not an MPE")
    if not (bits.is_subset(phi.ones, ones) and bits.is_subset(phi.zeros, zeros)):
        raise AssertionError("Psi image does not extend its argument")
    return out


def restrict_to_mph(L: Lattice, eta: MpeMap) -> MpeMap:
    X, Y = build_D(L), build_Dbar(L)
    if not is_mpe(Y, eta):
        raise NotAnMpe(f"({Y.subset_names(eta.ones)}, {Y.subset_names(eta.zeros)}) is not an MPE")
    P = mph_mask(Y)
    out = MpeMap(eta.ones & P, eta.zeros & P)
    if not is_mpe(X, out):
        raise AssertionError("restriction is not an MPE over the MPH graph")
    return out


def psi_map(L: Lattice) -> tuple[int, ...]:
    """Psi as an index map between the two completions."""
    CX, CY = canonical_extension_ploscica(L), canonical_extension_ah(L)
    return tuple(CY.index_of(psi(L, phi)) for phi in CX.elements)


def check_iso_XY(L: Lattice) -> Report:
    """Psi is an order isomorphism, inverse to restriction, fixing the copy of L."""
    rep = Report(f"psi-iso[{L.name or L.n}]")
    CX, CY = canonical_extension_ploscica(L), canonical_extension_ah(L)
    h = psi_map(L)
    rep.tick()
    if sorted(h) != list(range(CY.size)) or CX.size != CY.size:
        rep.fail("not-bijective", image=list(h), sizes=[CX.size, CY.size])
        return rep
    for i in range(CX.size):
        for j in range(CX.size):
            rep.tick()
            if CX.leq[i][j] != CY.leq[h[i]][h[j]]:
                rep.fail("order", x=i, y=j)
    for i, eta in enumerate(CY.elements):
        rep.tick()
        back = CX.index_of(restrict_to_mph(L, eta))
        if h[back] != i:
            rep.fail("round-trip", element=i)
    for a in range(L.n):
        rep.tick()
        if h[CX.embedding[a]] != CY.embedding[a]:
            rep.fail("fixes-L", element=L.names[a])
        if psi(L, CX.elements[CX.embedding[a]]) != evaluation_bar(L, a):
            rep.fail("psi-evaluation", element=L.names[a])
    return rep


def _check_hom(u: LatticeHom) -> None:
    if len(u.map) != u.src.n or any(not 0 <= b < u.dst.n for b in u.map):
        raise HomInvalid("map is not a total function between the lattices")
    bad = hom_violation(u.src, u.dst, u.map)
    if bad is not None:
        raise HomInvalid(f"{bad[0]} not preserved at {bad[1:]}", bad)


@lru_cache(maxsize=1024)
def dbar_on_hom(u: LatticeHom) -> LGraphMorphism:
    """``Dbar(u): Dbar(K) -> Dbar(L)``, ``f -> f∘u``, certified as an L-graph morphism."""
    _check_hom(u)
    L, K = u.src, u.dst
    YK, YL = build_Dbar(K), build_Dbar(L)
    where = {f: i for i, f in enumerate(YL.labels)}
    table = []
    for f in YK.labels:
        g = f.compose(u)
        if not is_special(L, g):
            raise AssertionError(f"{f.label(K)}∘u is not a special partial homomorphism")
        table.append(where[g])
    alpha = tuple(table)
    return LGraphMorphism(YK, YL, alpha, check_lgraph_morphism(YK, YL, alpha))


def compose_lgraph(outer: LGraphMorphism, inner: LGraphMorphism) -> LGraphMorphism:
    """``outer ∘ inner``: apply ``inner`` first."""
    if inner.dst != outer.src:
        raise InputError("graph morphisms are not composable")
    return LGraphMorphism(inner.src, outer.dst, tuple(outer.map[f] for f in inner.map))


def gbar_on_morphism(
    alpha: LGraphMorphism,
    C_dst: Completion | None = None,
    C_src: Completion | None = None,
    exhaustive_limit: int = 6,
    seed: int = 0,
) -> CompleteHom:
    """``φ -> φ∘α`` from the completion over ``alpha.dst`` to the one over ``alpha.src``.

    Images are not re-extended: a non-maximal image raises
    :class:`ImageNotMaximal`.
    """
    X, Y = alpha.src, alpha.dst
    C_dst = C_dst if C_dst is not None else enumerate_mpe(Y)
    C_src = C_src if C_src is not None else enumerate_mpe(X)
    table = []
    for phi in C_dst.elements:
        image = MpeMap(bits.preimage(alpha.map, phi.ones), bits.preimage(alpha.map, phi.zeros))
        if not is_mpe(X, image):
            raise ImageNotMaximal(
                f"({Y.subset_names(phi.ones)}, {Y.subset_names(phi.zeros)})∘α is not maximal"
            )
        table.append(C_src.index_of(image))
    hom = CompleteHom(C_dst, C_src, tuple(table))
    return CompleteHom(C_dst, C_src, hom.map, check_complete_hom(hom, exhaustive_limit, seed=seed))


@lru_cache(maxsize=1024)
def lift_hom(u: LatticeHom, exhaustive_limit: int = 6, seed: int = 0) -> CompleteHom:
    """The complete homomorphism ``L^δ -> K^δ`` extending ``u``.

    The report covers meet/join preservation and ``ē_a -> ē_{u(a)}``.
    """
    _check_hom(u)
    alpha = dbar_on_hom(u)
    CL, CK = canonical_extension_ah(u.src), canonical_extension_ah(u.dst)
    h = gbar_on_morphism(alpha, CL, CK, exhaustive_limit, seed)
    rep = Report("lift")
    if alpha.report is not None:
        rep.merge(alpha.report)
    rep.merge(h.report)
    for a in range(u.src.n):
        rep.tick()
        if h.map[CL.embedding[a]] != CK.embedding[u.map[a]]:
            rep.fail("restriction", element=u.src.names[a])
    return CompleteHom(h.src, h.dst, h.map, rep)

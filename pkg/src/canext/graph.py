"""Finite reflexive digraphs (X, E) and the operators living on them.

Two families of set operators are provided.  ``rho_op``/``lambda_op`` are
defined from ``E`` alone and characterise maximal E-preserving maps.
``ell``/``r`` need the quasi-orders ``<=1``/``<=2`` that exist only on
graphs labelled by partial homomorphisms.

Vertex subsets are bitmasks; a graph stores both out- and in-neighbourhoods
so every operator is a union over a subset followed by a complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import bits
from .errors import NoQuasiOrders, WitnessInconsistency
from .lattice import Lattice
from .partial import PartialHom
from .report import Report


@dataclass(frozen=True)
class Graph:
    m: int
    succ: tuple[int, ...]
    pred: tuple[int, ...]
    names: tuple[str, ...]
    labels: tuple[PartialHom, ...] | None = None
    up1: tuple[int, ...] | None = field(default=None, repr=False)
    up2: tuple[int, ...] | None = field(default=None, repr=False)
    down1: tuple[int, ...] | None = field(default=None, repr=False)
    down2: tuple[int, ...] | None = field(default=None, repr=False)
    lattice: Lattice | None = field(default=None, repr=False)
    V: tuple[int, ...] | None = field(default=None, repr=False)
    W: tuple[int, ...] | None = field(default=None, repr=False)
    mph_prefix: int | None = None

    @property
    def full(self) -> int:
        return bits.full(self.m)

    @property
    def labeled(self) -> bool:
        return self.up1 is not None

    def has_edge(self, x: int, y: int) -> bool:
        return self.succ[x] >> y & 1 == 1

    def is_reflexive(self) -> bool:
        return all(self.succ[x] >> x & 1 for x in range(self.m))

    def edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.m) for y in bits.members(self.succ[x])]

    def leq1(self, f: int, g: int) -> bool:
        self._need_orders()
        return self.up1[f] >> g & 1 == 1

    def leq2(self, f: int, g: int) -> bool:
        self._need_orders()
        return self.up2[f] >> g & 1 == 1

    def vertex(self, name: str) -> int:
        return self.names.index(name)

    def subset_names(self, m: int) -> list[str]:
        return [self.names[i] for i in bits.members(m)]

    def _need_orders(self) -> None:
        if self.up1 is None:
            raise NoQuasiOrders("graph carries no <=1/<=2 quasi-orders")


def graph_from_edges(m: int, edges: Iterable[tuple[int, int]], names: Sequence[str] | None = None) -> Graph:
    """Unlabelled graph on ``0..m-1``.  Loops are not added implicitly."""
    succ = [0] * m
    pred = [0] * m
    for x, y in edges:
        succ[x] |= 1 << y
        pred[y] |= 1 << x
    return Graph(
        m=m,
        succ=tuple(succ),
        pred=tuple(pred),
        names=tuple(names) if names is not None else tuple(f"v{i}" for i in range(m)),
    )


def graph_from_succ(succ: Sequence[int]) -> Graph:
    m = len(succ)
    pred = [bits.mask(x for x in range(m) if succ[x] >> y & 1) for y in range(m)]
    return Graph(m=m, succ=tuple(succ), pred=tuple(pred), names=tuple(f"v{i}" for i in range(m)))


def labeled_graph(L: Lattice, labels: Sequence[PartialHom], mph_prefix: int | None = None) -> Graph:
    """Graph on partial homomorphisms with ``(f, g) in E`` iff ``ones(f) ∩ zeros(g) = ∅``.

    Also records the quasi-orders (inclusion of 1- resp. 0-preimages) and the
    families ``V_a = {f : f(a) = 0}``, ``W_a = {f : f(a) = 1}``.
    """
    m = len(labels)
    succ = [bits.mask(g for g in range(m) if labels[f].ones & labels[g].zeros == 0) for f in range(m)]
    pred = [bits.mask(f for f in range(m) if succ[f] >> g & 1) for g in range(m)]
    up1 = [bits.mask(g for g in range(m) if bits.is_subset(labels[f].ones, labels[g].ones)) for f in range(m)]
    up2 = [bits.mask(g for g in range(m) if bits.is_subset(labels[f].zeros, labels[g].zeros)) for f in range(m)]
    down1 = [bits.mask(f for f in range(m) if up1[f] >> g & 1) for g in range(m)]
    down2 = [bits.mask(f for f in range(m) if up2[f] >> g & 1) for g in range(m)]
    W = tuple(bits.mask(f for f in range(m) if labels[f].ones >> a & 1) for a in range(L.n))
    V = tuple(bits.mask(f for f in range(m) if labels[f].zeros >> a & 1) for a in range(L.n))
    return Graph(
        m=m,
        succ=tuple(succ),
        pred=tuple(pred),
        names=tuple(f.label(L) for f in labels),
        labels=tuple(labels),
        up1=tuple(up1),
        up2=tuple(up2),
        down1=tuple(down1),
        down2=tuple(down2),
        lattice=L,
        V=V,
        W=W,
        mph_prefix=mph_prefix,
    )


def rho_op(G: Graph, A: int) -> int:
    """``{x : no y in A with (y, x) in E}``."""
    reach = 0
    for y in bits.members(A):
        reach |= G.succ[y]
    return G.full & ~reach


def lambda_op(G: Graph, B: int) -> int:
    """``{x : no y in B with (x, y) in E}``."""
    reach = 0
    for y in bits.members(B):
        reach |= G.pred[y]
    return G.full & ~reach


def ell(G: Graph, A: int) -> int:
    """``{f : f is not <=1 any g in A}``."""
    G._need_orders()
    below = 0
    for g in bits.members(A):
        below |= G.down1[g]
    return G.full & ~below


def r(G: Graph, A: int) -> int:
    """``{f : f is not <=2 any g in A}``."""
    G._need_orders()
    below = 0
    for g in bits.members(A):
        below |= G.down2[g]
    return G.full & ~below


def is_ell_stable(G: Graph, A: int) -> bool:
    return ell(G, r(G, A)) == A


def is_r_stable(G: Graph, A: int) -> bool:
    return r(G, ell(G, A)) == A


def ell_stable_sets(G: Graph) -> list[int]:
    """All ℓ-stable subsets, sorted canonically.

    Every ℓ-stable set is an ℓ-image and every ℓ-image is an intersection of
    the sets ``ell({g})``, so closing that family under intersection yields a
    superset of candidates which is then filtered by the stability test.
    """
    gens = [ell(G, 1 << g) for g in range(G.m)]
    family = bits.intersection_closure(gens, G.full)
    return sorted((A for A in family if is_ell_stable(G, A)), key=bits.set_key)


def r_stable_sets(G: Graph) -> list[int]:
    gens = [r(G, 1 << g) for g in range(G.m)]
    family = bits.intersection_closure(gens, G.full)
    return sorted((A for A in family if is_r_stable(G, A)), key=bits.set_key)


def witness_E_from_quasiorders(G: Graph, f: int, g: int) -> int | None:
    """Some ``h`` with ``f <=1 h`` and ``g <=2 h``, or None when there is none.

    Prefers the vertex labelled ``(ones(f), zeros(g))`` when it exists.
    Raises :class:`WitnessInconsistency` when witness existence disagrees
    with ``E``, which signals a graph that is not lattice-derived.
    """
    G._need_orders()
    candidates = G.up1[f] & G.up2[g]
    if bool(candidates) != G.has_edge(f, g):
        raise WitnessInconsistency(
            f"(f, g) = ({G.names[f]}, {G.names[g]}): edge={G.has_edge(f, g)} "
            f"but witness {'found' if candidates else 'missing'}"
        )
    if not candidates:
        return None
    if G.labels is not None:
        want = PartialHom(G.labels[f].ones, G.labels[g].zeros)
        for h in bits.members(candidates):
            if G.labels[h] == want:
                return h
    return next(bits.members(candidates))


def inverse_image(alpha: Sequence[int], A: int) -> int:
    return bits.preimage(alpha, A)


def is_e_preserving(G: Graph, H: Graph, alpha: Sequence[int]) -> bool:
    return all(H.has_edge(alpha[x], alpha[y]) for x, y in G.edges())


def check_lgraph_morphism(G: Graph, H: Graph, alpha: Sequence[int]) -> Report:
    """Check the three L-graph morphism conditions for a total map ``G -> H``.

    (i) ``<=1`` and ``<=2`` are preserved; (ii) ``α⁻¹(r(A)) = r(α⁻¹(A))`` for
    every ℓ-stable ``A ⊆ H``; (iii) ``α⁻¹(ℓ(A)) = ℓ(α⁻¹(A))`` for every
    r-stable ``A``.  Stable sets are enumerated exhaustively.
    """
    G._need_orders()
    H._need_orders()
    rep = Report("lgraph-morphism")
    for f in range(G.m):
        for g in bits.members(G.up1[f]):
            rep.tick()
            if not H.leq1(alpha[f], alpha[g]):
                rep.fail("i:<=1", f=G.names[f], g=G.names[g])
        for g in bits.members(G.up2[f]):
            rep.tick()
            if not H.leq2(alpha[f], alpha[g]):
                rep.fail("i:<=2", f=G.names[f], g=G.names[g])
    for A in ell_stable_sets(H):
        rep.tick()
        lhs = inverse_image(alpha, r(H, A))
        rhs = r(G, inverse_image(alpha, A))
        if lhs != rhs:
            rep.fail("ii", stable_set=H.subset_names(A), lhs=G.subset_names(lhs), rhs=G.subset_names(rhs))
    for A in r_stable_sets(H):
        rep.tick()
        lhs = inverse_image(alpha, ell(H, A))
        rhs = ell(G, inverse_image(alpha, A))
        if lhs != rhs:
            rep.fail("iii", stable_set=H.subset_names(A), lhs=G.subset_names(lhs), rhs=G.subset_names(rhs))
    return rep

"""Maximal partial E-preserving maps into the two-element order, and the
complete lattice they form.

On a reflexive graph a pair ``(ones, zeros)`` is a maximal E-preserving
partial map exactly when ``zeros = rho(ones)`` and ``ones = lambda(zeros)``.
So the maps are the fixpoints of the closure ``A -> lambda(rho(A))`` on
vertex subsets, which is how :func:`enumerate_mpe` finds them.  The
equivalence is not assumed elsewhere: the brute-force oracle checks it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Sequence

from . import bits
from .errors import ElementNotInCompletion, InconsistentSeed, NonReflexiveGraph, NoSubbasis
from .graph import Graph, lambda_op, rho_op
from .lattice import Lattice, filters, ideals
from .report import Report


@dataclass(frozen=True)
class MpeMap:
    ones: int
    zeros: int

    @property
    def domain(self) -> int:
        return self.ones | self.zeros

    def key(self) -> tuple:
        return bits.set_key(self.ones), bits.set_key(self.zeros)

    def value(self, x: int) -> int | None:
        if self.ones >> x & 1:
            return 1
        if self.zeros >> x & 1:
            return 0
        return None


@dataclass(frozen=True)
class Completion:
    """A finite complete lattice with explicit order and meet/join tables.

    ``elements`` are :class:`MpeMap` for graph-based completions and
    bitmasks of filter indices for the polarity construction.
    """

    elements: tuple[Any, ...]
    leq: tuple[tuple[bool, ...], ...] = field(repr=False)
    meet: tuple[tuple[int, ...], ...] = field(repr=False)
    join: tuple[tuple[int, ...], ...] = field(repr=False)
    bottom: int
    top: int
    kind: str = "mpe"
    host: Graph | None = field(default=None, repr=False)
    lattice: Lattice | None = field(default=None, repr=False)
    embedding: tuple[int, ...] | None = None
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        self._index.update({e: i for i, e in enumerate(self.elements)})

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    def index_of(self, element: Any) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise ElementNotInCompletion(f"{element!r} is not an element of this completion") from None

    def le(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def meet_of(self, items: Iterable[int]) -> int:
        out = self.top
        for i in items:
            out = self.meet[out][i]
        return out

    def join_of(self, items: Iterable[int]) -> int:
        out = self.bottom
        for i in items:
            out = self.join[out][i]
        return out

    def with_embedding(self, L: Lattice, embedding: Sequence[int]) -> "Completion":
        return replace(self, lattice=L, embedding=tuple(embedding), _index={})


def order_glb(leq: Sequence[Sequence[bool]], members: Iterable[int]) -> int | None:
    """Greatest lower bound computed from the order relation alone."""
    members = list(members)
    n = len(leq)
    lower = [k for k in range(n) if all(leq[k][i] for i in members)]
    best = [k for k in lower if all(leq[x][k] for x in lower)]
    return best[0] if len(best) == 1 else None


def order_lub(leq: Sequence[Sequence[bool]], members: Iterable[int]) -> int | None:
    members = list(members)
    n = len(leq)
    upper = [k for k in range(n) if all(leq[i][k] for i in members)]
    best = [k for k in upper if all(leq[k][x] for x in upper)]
    return best[0] if len(best) == 1 else None


def build_completion(
    elements: Sequence[Any],
    leq: Sequence[Sequence[bool]],
    meet: Sequence[Sequence[int]],
    join: Sequence[Sequence[int]],
    kind: str,
    host: Graph | None = None,
) -> Completion:
    """Assemble a completion after checking the tables against the order."""
    n = len(elements)
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                raise AssertionError(f"order not antisymmetric at {i},{j}")
            if meet[i][j] != order_glb(leq, (i, j)):
                raise AssertionError(f"meet table disagrees with glb at {i},{j}")
            if join[i][j] != order_lub(leq, (i, j)):
                raise AssertionError(f"join table disagrees with lub at {i},{j}")
    bottom = order_glb(leq, range(n))
    top = order_lub(leq, range(n))
    if bottom is None or top is None:
        raise AssertionError("completion lacks bounds")
    return Completion(
        elements=tuple(elements),
        leq=tuple(tuple(row) for row in leq),
        meet=tuple(tuple(row) for row in meet),
        join=tuple(tuple(row) for row in join),
        bottom=bottom,
        top=top,
        kind=kind,
        host=host,
    )


def embedding_violation(C: Completion, L: Lattice, emb: Sequence[int]) -> tuple | None:
    """First way ``emb`` fails to be a bounded lattice embedding, or None."""
    if len(set(emb)) != L.n:
        return ("injective",)
    if emb[L.bot] != C.bottom or emb[L.top] != C.top:
        return ("bounds",)
    for a in range(L.n):
        for b in range(L.n):
            if C.meet[emb[a]][emb[b]] != emb[L.meet[a][b]]:
                return ("meet", L.names[a], L.names[b])
            if C.join[emb[a]][emb[b]] != emb[L.join[a][b]]:
                return ("join", L.names[a], L.names[b])
            if C.leq[emb[a]][emb[b]] != L.le(a, b):
                return ("order", L.names[a], L.names[b])
    return None


def attach_embedding(C: Completion, L: Lattice, emb: Sequence[int], bijective: bool = True) -> Completion:
    """Record ``emb`` on ``C`` after checking it is an embedding (and onto, for finite L)."""
    bad = embedding_violation(C, L, emb)
    if bad is not None:
        raise AssertionError(f"{C.kind} evaluation is not a lattice embedding: {bad}")
    if bijective and C.size != L.n:
        raise AssertionError(f"{C.kind} completion has {C.size} elements, lattice has {L.n}")
    return C.with_embedding(L, emb)


def closure(G: Graph, A: int) -> int:
    return lambda_op(G, rho_op(G, A))


def is_mpe(G: Graph, phi: MpeMap) -> bool:
    """Fixpoint characterisation: disjoint, ``zeros = rho(ones)``, ``ones = lambda(zeros)``."""
    return (
        phi.ones & phi.zeros == 0
        and rho_op(G, phi.ones) == phi.zeros
        and lambda_op(G, phi.zeros) == phi.ones
    )


def is_e_preserving_partial(G: Graph, ones: int, zeros: int) -> bool:
    reach = 0
    for x in bits.members(ones):
        reach |= G.succ[x]
    return ones & zeros == 0 and reach & zeros == 0


def is_maximal_partial(G: Graph, ones: int, zeros: int) -> bool:
    """Definitional maximality: E-preserving and no single vertex can be added."""
    if not is_e_preserving_partial(G, ones, zeros):
        return False
    for x in bits.members(G.full & ~(ones | zeros)):
        if G.succ[x] & zeros == 0:
            return False
        if G.pred[x] & ones == 0:
            return False
    return True


def e_meet(G: Graph, family: Iterable[MpeMap]) -> MpeMap:
    """Extended meet: ones are the common ones, zeros everything no common one reaches."""
    ones = G.full
    for phi in family:
        ones &= phi.ones
    return MpeMap(ones, rho_op(G, ones))


def e_join(G: Graph, family: Iterable[MpeMap]) -> MpeMap:
    zeros = G.full
    for phi in family:
        zeros &= phi.zeros
    return MpeMap(lambda_op(G, zeros), zeros)


def p_meet(G: Graph, family: Sequence[MpeMap]) -> tuple[int, int]:
    """Pointwise meet as a partial map ``(ones, zeros)``."""
    ones, zeros = G.full, 0
    for phi in family:
        ones &= phi.ones
        zeros |= phi.zeros
    return ones, zeros


def p_join(G: Graph, family: Sequence[MpeMap]) -> tuple[int, int]:
    ones, zeros = 0, G.full
    for phi in family:
        ones |= phi.ones
        zeros &= phi.zeros
    return ones, zeros


def enumerate_mpe(G: Graph) -> Completion:
    """All maximal E-preserving partial maps ``G -> 2``, as a complete lattice.

    Seeds are the closures of the empty set and of each singleton; the
    family is then closed under the extended meet and join.  Elements are
    sorted by ``(ones, zeros)`` member lists.
    """
    if not G.is_reflexive():
        bad = next(x for x in range(G.m) if not G.succ[x] >> x & 1)
        raise NonReflexiveGraph(f"vertex {G.names[bad]} has no loop")
    seeds = [closure(G, 0)] + [closure(G, 1 << x) for x in range(G.m)]
    family: list[int] = []
    seen: set[int] = set()
    queue = list(dict.fromkeys(seeds))
    while queue:
        a = queue.pop()
        if a in seen:
            continue
        seen.add(a)
        for b in family:
            for c in (closure(G, a | b), a & b):
                if c not in seen:
                    queue.append(c)
        family.append(a)

    maps = sorted((MpeMap(A, rho_op(G, A)) for A in family), key=MpeMap.key)
    pos = {phi.ones: i for i, phi in enumerate(maps)}
    n = len(maps)
    leq = [[bits.is_subset(p.ones, q.ones) for q in maps] for p in maps]
    meet = [[pos[e_meet(G, (p, q)).ones] for q in maps] for p in maps]
    join = [[pos[e_join(G, (p, q)).ones] for q in maps] for p in maps]
    assert len(pos) == n
    return build_completion(maps, leq, meet, join, kind="mpe", host=G)


def _resolve(C: Completion, S: Iterable[Any]) -> list[MpeMap]:
    out = []
    for s in S:
        if isinstance(s, int) and not isinstance(s, bool):
            if not 0 <= s < C.size:
                raise ElementNotInCompletion(f"index {s} outside completion of size {C.size}")
            out.append(C.elements[s])
        else:
            C.index_of(s)
            out.append(s)
    return out


def mpe_meet(C: Completion, S: Iterable[Any] = ()) -> MpeMap:
    """Meet of a family of elements (indices or MpeMaps); the empty meet is the top."""
    result = e_meet(C.host, _resolve(C, S))
    C.index_of(result)
    return result


def mpe_join(C: Completion, S: Iterable[Any] = ()) -> MpeMap:
    result = e_join(C.host, _resolve(C, S))
    C.index_of(result)
    return result


def extend_partial(G: Graph, ones: int, zeros: int) -> MpeMap:
    """Least maximal extension of an E-preserving seed.

    Closes the 1-side: ``ones -> lambda(rho(ones))``, zeros ``rho(ones)``.
    The seed zeros survive because no seed one reaches them.
    """
    if ones & zeros:
        raise InconsistentSeed("seed assigns both 0 and 1 to some vertex")
    if not is_e_preserving_partial(G, ones, zeros):
        x = next(x for x in bits.members(ones) if G.succ[x] & zeros)
        y = next(bits.members(G.succ[x] & zeros))
        raise InconsistentSeed(f"edge ({G.names[x]}, {G.names[y]}) runs from 1 to 0")
    if not G.is_reflexive():
        raise NonReflexiveGraph("extension needs a reflexive graph")
    return MpeMap(closure(G, ones), rho_op(G, ones))


def _need_subbasis(C: Completion) -> Graph:
    G = C.host
    if G is None or G.W is None or G.V is None:
        raise NoSubbasis("completion host records no V_a/W_a families")
    return G


def _meet_closure(C: Completion, seeds: Iterable[int]) -> set[int]:
    out = {C.top}
    frontier = [C.top]
    seeds = list(dict.fromkeys(seeds))
    while frontier:
        new = []
        for x in frontier:
            for s in seeds:
                y = C.meet[x][s]
                if y not in out:
                    out.add(y)
                    new.append(y)
        frontier = new
    return out


def _join_closure(C: Completion, seeds: Iterable[int]) -> set[int]:
    out = {C.bottom}
    frontier = [C.bottom]
    seeds = list(dict.fromkeys(seeds))
    while frontier:
        new = []
        for x in frontier:
            for s in seeds:
                y = C.join[x][s]
                if y not in out:
                    out.add(y)
                    new.append(y)
        frontier = new
    return out


def filter_elements(C: Completion) -> frozenset[int]:
    """Elements whose 1-set is an intersection of ``W_b`` sets."""
    G = _need_subbasis(C)
    out = set()
    for i, phi in enumerate(C.elements):
        hull = G.full
        for Wb in G.W:
            if bits.is_subset(phi.ones, Wb):
                hull &= Wb
        if hull == phi.ones:
            out.add(i)
    if C.embedding is not None:
        meets = _meet_closure(C, C.embedding)
        if meets != out:
            raise AssertionError(f"filter elements {sorted(out)} != meets of embedded {sorted(meets)}")
    return frozenset(out)


def ideal_elements(C: Completion) -> frozenset[int]:
    """Elements whose 0-set is an intersection of ``V_a`` sets."""
    G = _need_subbasis(C)
    out = set()
    for i, phi in enumerate(C.elements):
        hull = G.full
        for Va in G.V:
            if bits.is_subset(phi.zeros, Va):
                hull &= Va
        if hull == phi.zeros:
            out.add(i)
    if C.embedding is not None:
        joins = _join_closure(C, C.embedding)
        if joins != out:
            raise AssertionError(f"ideal elements {sorted(out)} != joins of embedded {sorted(joins)}")
    return frozenset(out)


def _embedding(C: Completion, embedding: Sequence[int] | None) -> tuple[Lattice, tuple[int, ...]]:
    emb = tuple(embedding) if embedding is not None else C.embedding
    if emb is None or C.lattice is None:
        raise ValueError("completion has no embedding")
    return C.lattice, emb


def check_density(C: Completion, embedding: Sequence[int] | None = None) -> Report:
    """Every element is the join of the filter meets below it and the meet of
    the ideal joins above it; also a join of meets and a meet of joins of
    embedded elements."""
    L, emb = _embedding(C, embedding)
    rep = Report(f"density[{C.kind}]")
    filter_meets = [C.meet_of(emb[b] for b in bits.members(F)) for F in filters(L)]
    ideal_joins = [C.join_of(emb[b] for b in bits.members(I)) for I in ideals(L)]
    meets = _meet_closure(C, emb)
    joins = _join_closure(C, emb)
    for phi in range(C.size):
        rep.tick()
        below = [x for x in filter_meets if C.leq[x][phi]]
        above = [x for x in ideal_joins if C.leq[phi][x]]
        if C.join_of(below) != phi:
            rep.fail("join-of-filter-meets", element=phi, got=C.join_of(below))
        if C.meet_of(above) != phi:
            rep.fail("meet-of-ideal-joins", element=phi, got=C.meet_of(above))
        if C.join_of(x for x in meets if C.leq[x][phi]) != phi:
            rep.fail("join-of-meets", element=phi)
        if C.meet_of(x for x in joins if C.leq[phi][x]) != phi:
            rep.fail("meet-of-joins", element=phi)
    return rep


def _subset_pairs(n: int, exhaustive_limit: int, samples: int, seed: int):
    if n <= exhaustive_limit:
        everything = bits.full(n)
        for A in bits.subsets(everything):
            for B in bits.subsets(everything):
                yield A, B
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            yield rng.getrandbits(n), rng.getrandbits(n)


def check_compactness(
    C: Completion,
    embedding: Sequence[int] | None = None,
    exhaustive_limit: int = 5,
    samples: int = 1000,
    seed: int = 0,
) -> Report:
    """For subset pairs A, B of L with ``meet e(A) <= join e(B)``, confirm the
    finite witnesses A, B and the chain of reductions behind them.

    The chain checked per pair: ``e(meet A) = meet e(A)`` and
    ``e(join B) = join e(B)``; ``meet e(A) <= join e(B)`` iff
    ``meet A <= join B`` in L; and, on hosts with a subbasis,
    ``⋂ W_a ⊆ X \\ ⋂ V_b`` followed by ``W_{meet A} ⊆ W_{join B}``.
    """
    L, emb = _embedding(C, embedding)
    rep = Report(f"compactness[{C.kind}]")
    G = C.host if C.host is not None and C.host.W is not None else None
    for A, B in _subset_pairs(L.n, exhaustive_limit, samples, seed):
        rep.tick()
        a_names, b_names = L.subset_names(A), L.subset_names(B)
        lhs = C.meet_of(emb[a] for a in bits.members(A))
        rhs = C.join_of(emb[b] for b in bits.members(B))
        a1 = L.meet_all(bits.members(A))
        b1 = L.join_all(bits.members(B))
        if lhs != emb[a1] or rhs != emb[b1]:
            rep.fail("finite-meet-join-not-preserved", A=a_names, B=b_names)
            continue
        holds = C.leq[lhs][rhs]
        if holds != L.le(a1, b1):
            rep.fail("order-mismatch", A=a_names, B=b_names)
            continue
        if not holds:
            continue
        # finite witness: A' = A, B' = B
        if not C.leq[C.meet_of(emb[a] for a in bits.members(A))][C.join_of(emb[b] for b in bits.members(B))]:
            rep.fail("witness", A=a_names, B=b_names)
        if G is not None:
            Wa = G.full
            for a in bits.members(A):
                Wa &= G.W[a]
            Vb = G.full
            for b in bits.members(B):
                Vb &= G.V[b]
            if Wa & Vb:
                rep.fail("subbasis-cover", A=a_names, B=b_names)
            elif not bits.is_subset(G.W[a1], G.W[b1]):
                rep.fail("W-inclusion", A=a_names, B=b_names)
    return rep


@dataclass(frozen=True)
class CompleteHom:
    src: Completion
    dst: Completion
    map: tuple[int, ...]
    report: Report | None = field(default=None, compare=False, repr=False)

    def __call__(self, i: int) -> int:
        return self.map[i]


def compose_complete(outer: CompleteHom, inner: CompleteHom) -> CompleteHom:
    return CompleteHom(inner.src, outer.dst, tuple(outer.map[i] for i in inner.map))


def check_complete_hom(h: CompleteHom, exhaustive_limit: int = 6, samples: int = 500, seed: int = 0) -> Report:
    """Meets and joins of families are preserved.

    All subsets are checked when the source has at most ``exhaustive_limit``
    elements; otherwise the empty family, all pairs and seeded random
    families.
    """
    S, T = h.src, h.dst
    rep = Report("complete-hom")
    n = S.size
    if n <= exhaustive_limit:
        families = list(bits.subsets(bits.full(n)))
    else:
        rng = random.Random(seed)
        families = [0] + [(1 << i) | (1 << j) for i in range(n) for j in range(i, n)]
        families += [rng.getrandbits(n) for _ in range(samples)]
    for fam in families:
        rep.tick()
        idx = list(bits.members(fam))
        if h.map[S.meet_of(idx)] != T.meet_of(h.map[i] for i in idx):
            rep.fail("meet", family=idx)
        if h.map[S.join_of(idx)] != T.join_of(h.map[i] for i in idx):
            rep.fail("join", family=idx)
    return rep

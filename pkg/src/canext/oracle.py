"""Ground truth built independently of the graph duals.

* the completion by Galois-stable sets of the filter/ideal polarity;
* definitional enumeration of maximal E-preserving maps and of maximal
  partial homomorphisms;
* search for an order isomorphism between completions fixing the lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import bits
from .errors import EmbeddingMismatch, TooLarge
from .graph import Graph
from .lattice import Lattice
from .mpe import Completion, MpeMap, attach_embedding, build_completion, is_maximal_partial
from .partial import PartialHom, all_partial_homs, is_filter, is_ideal


@dataclass(frozen=True)
class PolarityContext:
    """Filters and ideals of ``L`` with ``R(F, I)`` iff ``F ∩ I`` is nonempty.

    Index ``i`` of ``filters`` is ``↑i`` and index ``j`` of ``ideals`` is ``↓j``.
    """

    lattice: Lattice
    filters: tuple[int, ...]
    ideals: tuple[int, ...]
    R: tuple[tuple[bool, ...], ...]

    def ideals_of(self, S: int) -> int:
        """``S'``: ideals meeting every filter in ``S``."""
        return bits.mask(
            j for j in range(len(self.ideals)) if all(self.R[i][j] for i in bits.members(S))
        )

    def filters_of(self, T: int) -> int:
        """``T'``: filters meeting every ideal in ``T``."""
        return bits.mask(
            i for i in range(len(self.filters)) if all(self.R[i][j] for j in bits.members(T))
        )

    def closure(self, S: int) -> int:
        return self.filters_of(self.ideals_of(S))


def brute_force_filters(L: Lattice) -> list[int]:
    return [m for m in range(1, 1 << L.n) if is_filter(L, m)]


def brute_force_ideals(L: Lattice) -> list[int]:
    return [m for m in range(1, 1 << L.n) if is_ideal(L, m)]


def polarity_context(L: Lattice) -> PolarityContext:
    fs = tuple(L.up[a] for a in range(L.n))
    ids = tuple(L.down[b] for b in range(L.n))
    if sorted(fs) != sorted(brute_force_filters(L)) or sorted(ids) != sorted(brute_force_ideals(L)):
        raise AssertionError("filters or ideals are not all principal")
    R = tuple(tuple(F & I != 0 for I in ids) for F in fs)
    for a in range(L.n):
        for b in range(L.n):
            if R[a][b] != L.le(a, b):
                raise AssertionError(f"polarity disagrees with order at {L.names[a]}, {L.names[b]}")
    return PolarityContext(L, fs, ids, R)


def stable_sets(P: PolarityContext) -> list[int]:
    """Galois-stable filter sets as intersections of single-ideal extents."""
    extents = [P.filters_of(1 << j) for j in range(len(P.ideals))]
    family = bits.intersection_closure(extents, bits.full(len(P.filters)))
    out = sorted(family, key=lambda S: (bits.count(S), bits.set_key(S)))
    for S in out:
        if P.closure(S) != S:
            raise AssertionError(f"extent intersection {bits.set_key(S)} is not stable")
    return out


def stable_sets_bruteforce(P: PolarityContext) -> list[int]:
    n = len(P.filters)
    return sorted(
        (S for S in range(1 << n) if P.closure(S) == S),
        key=lambda S: (bits.count(S), bits.set_key(S)),
    )


@lru_cache(maxsize=256)
def gh_extension(L: Lattice) -> Completion:
    """Stable filter sets ordered by inclusion, with ``a -> {↑c : a ∈ ↑c}``."""
    P = polarity_context(L)
    sets = stable_sets(P)
    pos = {S: i for i, S in enumerate(sets)}
    leq = [[bits.is_subset(S, T) for T in sets] for S in sets]
    meet = [[pos[S & T] for T in sets] for S in sets]
    join = [[pos[P.closure(S | T)] for T in sets] for S in sets]
    C = build_completion(sets, leq, meet, join, kind="polarity")
    emb = []
    for a in range(L.n):
        S = bits.mask(i for i, F in enumerate(P.filters) if F >> a & 1)
        if P.closure(S) != S:
            raise AssertionError(f"image of {L.names[a]} is not stable")
        emb.append(pos[S])
    return attach_embedding(C, L, emb)


def brute_force_mpe(G: Graph, limit: int = 16) -> list[MpeMap]:
    """Maximal E-preserving partial maps by scanning all 3^m assignments.

    Branches that already send an edge from 1 to 0 are cut.  Leaves are
    kept when no single unassigned vertex can be added.
    """
    if G.m > limit:
        raise TooLarge(f"{G.m} vertices exceeds the brute-force limit of {limit}")
    out: list[MpeMap] = []

    def walk(x: int, ones: int, zeros: int) -> None:
        if x == G.m:
            if is_maximal_partial(G, ones, zeros):
                out.append(MpeMap(ones, zeros))
            return
        walk(x + 1, ones, zeros)
        if G.pred[x] & ones == 0:
            walk(x + 1, ones, zeros | 1 << x)
        if G.succ[x] & zeros == 0:
            walk(x + 1, ones | 1 << x, zeros)

    walk(0, 0, 0)
    return sorted(out, key=MpeMap.key)


def brute_force_mph(L: Lattice) -> list[PartialHom]:
    """Partial homomorphisms with no proper extension among partial homomorphisms."""
    homs = all_partial_homs(L)
    return [f for f in homs if not any(g != f and g.extends(f) for g in homs)]


def iso_fixing_L(
    C1: Completion,
    C2: Completion,
    emb1: Sequence[int] | None = None,
    emb2: Sequence[int] | None = None,
) -> tuple[int, ...] | None:
    """An order isomorphism ``h: C1 -> C2`` with ``h ∘ emb1 = emb2``, or None.

    ``h`` is forced on the embedded elements and spread through the meet and
    join tables; any elements still open are found by backtracking.
    """
    if C1.size != C2.size:
        return None
    emb1 = tuple(emb1) if emb1 is not None else C1.embedding
    emb2 = tuple(emb2) if emb2 is not None else C2.embedding
    if emb1 is None or emb2 is None:
        raise EmbeddingMismatch("both completions need an embedding")
    if len(emb1) != len(emb2) or (
        C1.lattice is not None and C2.lattice is not None and C1.lattice != C2.lattice
    ):
        raise EmbeddingMismatch("completions embed different lattices")
    n = C1.size
    h = [-1] * n
    for a, b in zip(emb1, emb2):
        if h[a] not in (-1, b):
            return None
        h[a] = b
    changed = True
    while changed:
        changed = False
        known = [i for i in range(n) if h[i] >= 0]
        for i in known:
            for j in known:
                for t1, t2 in ((C1.meet, C2.meet), (C1.join, C2.join)):
                    k, v = t1[i][j], t2[h[i]][h[j]]
                    if h[k] < 0:
                        h[k] = v
                        changed = True
                    elif h[k] != v:
                        return None

    def consistent(i: int) -> bool:
        for j in range(n):
            if h[j] >= 0 and j != i:
                if h[j] == h[i]:
                    return False
                if C1.leq[i][j] != C2.leq[h[i]][h[j]] or C1.leq[j][i] != C2.leq[h[j]][h[i]]:
                    return False
        return True

    if any(h[i] >= 0 and not consistent(i) for i in range(n)):
        return None
    open_ = [i for i in range(n) if h[i] < 0]

    def walk(k: int) -> bool:
        if k == len(open_):
            return True
        i = open_[k]
        used = set(h)
        for v in range(n):
            if v in used:
                continue
            h[i] = v
            if consistent(i) and walk(k + 1):
                return True
        h[i] = -1
        return False

    if not walk(0):
        return None
    return tuple(h)

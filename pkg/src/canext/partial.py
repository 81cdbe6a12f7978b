"""Partial maps from a lattice into the two-element lattice."""

from __future__ import annotations

from dataclasses import dataclass

from . import bits
from .lattice import Lattice, LatticeHom


@dataclass(frozen=True, order=False)
class PartialHom:
    """A partial map ``L -> 2`` stored as its 1-preimage and 0-preimage bitmasks."""

    ones: int
    zeros: int

    @property
    def domain(self) -> int:
        return self.ones | self.zeros

    def value(self, a: int) -> int | None:
        if self.ones >> a & 1:
            return 1
        if self.zeros >> a & 1:
            return 0
        return None

    def key(self) -> tuple:
        return bits.set_key(self.ones), bits.set_key(self.zeros)

    def extends(self, other: "PartialHom") -> bool:
        return bits.is_subset(other.ones, self.ones) and bits.is_subset(other.zeros, self.zeros)

    def compose(self, u: LatticeHom) -> "PartialHom":
        """``self ∘ u``, defined where ``u`` lands in the domain of ``self``."""
        return PartialHom(u.preimage(self.ones), u.preimage(self.zeros))

    def label(self, L: Lattice) -> str:
        """``a|b`` when the pair is (principal filter of a, principal ideal of b)."""
        a = _generator(L.up, self.ones)
        b = _generator(L.down, self.zeros)
        if a is not None and b is not None:
            return f"{L.names[a]}|{L.names[b]}"
        ones = ",".join(L.subset_names(self.ones))
        zeros = ",".join(L.subset_names(self.zeros))
        return f"{{{ones}}}|{{{zeros}}}"


def _generator(principal: tuple[int, ...], m: int) -> int | None:
    for a, p in enumerate(principal):
        if p == m:
            return a
    return None


def is_filter(L: Lattice, m: int) -> bool:
    if m == 0:
        return False
    for a in bits.members(m):
        if not bits.is_subset(L.up[a], m):
            return False
        for b in bits.members(m):
            if not m >> L.meet[a][b] & 1:
                return False
    return True


def is_ideal(L: Lattice, m: int) -> bool:
    if m == 0:
        return False
    for a in bits.members(m):
        if not bits.is_subset(L.down[a], m):
            return False
        for b in bits.members(m):
            if not m >> L.join[a][b] & 1:
                return False
    return True


def is_partial_hom(L: Lattice, f: PartialHom) -> bool:
    """Domain is a 0,1-sublattice and ``f`` preserves meets and joins on it."""
    if f.ones & f.zeros:
        return False
    dom = f.domain
    if not (dom >> L.bot & 1 and dom >> L.top & 1):
        return False
    if f.value(L.bot) != 0 or f.value(L.top) != 1:
        return False
    for a in bits.members(dom):
        fa = f.value(a)
        for b in bits.members(dom):
            m, j = L.meet[a][b], L.join[a][b]
            if not (dom >> m & 1 and dom >> j & 1):
                return False
            fb = f.value(b)
            if f.value(m) != min(fa, fb) or f.value(j) != max(fa, fb):
                return False
    return True


def is_special(L: Lattice, f: PartialHom) -> bool:
    """Disjoint filter-ideal pair."""
    return f.ones & f.zeros == 0 and is_filter(L, f.ones) and is_ideal(L, f.zeros)


def all_partial_homs(L: Lattice) -> list[PartialHom]:
    """Every partial homomorphism ``L -> 2``, by scanning all 3^n assignments.

    Assignments where some 1 lies below some 0 are pruned as they are built.
    """
    out: list[PartialHom] = []
    order = list(range(L.n))

    def walk(k: int, ones: int, zeros: int) -> None:
        if k == len(order):
            f = PartialHom(ones, zeros)
            if is_partial_hom(L, f):
                out.append(f)
            return
        a = order[k]
        walk(k + 1, ones, zeros)
        if L.down[a] & ones == 0:
            walk(k + 1, ones, zeros | 1 << a)
        if L.up[a] & zeros == 0:
            walk(k + 1, ones | 1 << a, zeros)

    walk(0, 0, 0)
    return sorted(out, key=PartialHom.key)

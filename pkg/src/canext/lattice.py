"""Finite bounded lattices and their homomorphisms.

Elements are dense indices ``0..n-1`` with a parallel name table.  The order
is kept both as a boolean matrix and as per-element up/down bitmasks, since
nearly every downstream computation is subset algebra over principal
filters and ideals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import bits
from .errors import (
    IndexOutOfRange,
    InputError,
    NotAHomomorphism,
    NotALattice,
    NotAPoset,
    NotBounded,
)


@dataclass(frozen=True)
class Lattice:
    names: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bot: int
    top: int
    up: tuple[int, ...] = field(repr=False)
    down: tuple[int, ...] = field(repr=False)
    name: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full(self) -> int:
        return bits.full(self.n)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        label = self.name or "Lattice"
        return f"<{label} n={self.n}>"

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.n:
            raise IndexOutOfRange(f"element index {a!r} outside 0..{self.n - 1}")
        return a

    def index(self, name: str | int) -> int:
        key = str(name)
        try:
            return self.names.index(key)
        except ValueError:
            raise IndexOutOfRange(f"no element named {key!r}") from None

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def principal_filter(self, a: int) -> int:
        """Bitmask of ``{x : a <= x}``."""
        return self.up[self.check(a)]

    def principal_ideal(self, a: int) -> int:
        """Bitmask of ``{x : x <= a}``."""
        return self.down[self.check(a)]

    def meet_all(self, items: Iterable[int]) -> int:
        out = self.top
        for x in items:
            out = self.meet[out][x]
        return out

    def join_all(self, items: Iterable[int]) -> int:
        out = self.bot
        for x in items:
            out = self.join[out][x]
        return out

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(a, b)`` with ``a`` covered by ``b``."""
        out = []
        for a in range(self.n):
            strict = self.up[a] & ~(1 << a)
            for b in bits.members(strict):
                between = strict & self.down[b] & ~(1 << b)
                if between == 0:
                    out.append((a, b))
        return out

    def subset_names(self, m: int) -> list[str]:
        return [self.names[i] for i in bits.members(m)]


def _close(up: list[int], n: int) -> list[int]:
    up = list(up)
    for k in range(n):
        bk = 1 << k
        for i in range(n):
            if up[i] & bk:
                up[i] |= up[k]
    return up


def build_lattice(
    names: Sequence[str | int],
    covers: Iterable[tuple] | None = None,
    leq: Sequence[Sequence[bool]] | None = None,
    name: str = "",
) -> Lattice:
    """Validate an order given by cover pairs or by a full relation.

    Exactly one of ``covers``/``leq`` must be given.  Cover pairs are closed
    reflexively and transitively first; duplicates are harmless.
    """
    labels = tuple(str(x) for x in names)
    n = len(labels)
    if n == 0:
        raise NotBounded("empty element set has no bounds")
    if len(set(labels)) != n:
        raise InputError("duplicate element names")
    if (covers is None) == (leq is None):
        raise InputError("give exactly one of covers or leq")
    pos = {x: i for i, x in enumerate(labels)}

    if covers is not None:
        up = [1 << i for i in range(n)]
        for pair in covers:
            if len(pair) != 2:
                raise InputError(f"cover {pair!r} is not a pair")
            try:
                a, b = pos[str(pair[0])], pos[str(pair[1])]
            except KeyError as exc:
                raise InputError(f"cover {pair!r} mentions unknown element {exc}") from None
            up[a] |= 1 << b
        up = _close(up, n)
    else:
        if len(leq) != n or any(len(row) != n for row in leq):
            raise InputError(f"leq must be a {n}x{n} matrix")
        up = [bits.mask(j for j in range(n) if leq[i][j]) for i in range(n)]
        for i in range(n):
            if not up[i] >> i & 1:
                raise NotAPoset(f"not reflexive at {labels[i]}")
        for i in range(n):
            for j in bits.members(up[i]):
                if not bits.is_subset(up[j], up[i]):
                    k = next(bits.members(up[j] & ~up[i]))
                    raise NotAPoset(
                        f"not transitive: {labels[i]}<={labels[j]}<={labels[k]}"
                    )

    for i in range(n):
        for j in bits.members(up[i] & ~(1 << i)):
            if up[j] >> i & 1:
                raise NotAPoset(f"not antisymmetric: {labels[i]} and {labels[j]}")

    down = [bits.mask(i for i in range(n) if up[i] >> j & 1) for j in range(n)]
    everything = bits.full(n)
    bots = [i for i in range(n) if up[i] == everything]
    tops = [i for i in range(n) if down[i] == everything]
    if not bots:
        raise NotBounded("no least element")
    if not tops:
        raise NotBounded("no greatest element")

    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            lower = down[a] & down[b]
            glb = [g for g in bits.members(lower) if down[g] == lower]
            if not glb:
                raise NotALattice(f"{labels[a]} and {labels[b]} have no meet")
            upper = up[a] & up[b]
            lub = [g for g in bits.members(upper) if up[g] == upper]
            if not lub:
                raise NotALattice(f"{labels[a]} and {labels[b]} have no join")
            meet[a][b] = meet[b][a] = glb[0]
            join[a][b] = join[b][a] = lub[0]

    matrix = tuple(tuple(bool(up[i] >> j & 1) for j in range(n)) for i in range(n))
    return Lattice(
        names=labels,
        leq=matrix,
        meet=tuple(map(tuple, meet)),
        join=tuple(map(tuple, join)),
        bot=bots[0],
        top=tops[0],
        up=tuple(up),
        down=tuple(down),
        name=name,
    )


def principal_filter(L: Lattice, a: int) -> int:
    return L.principal_filter(a)


def principal_ideal(L: Lattice, a: int) -> int:
    return L.principal_ideal(a)


def is_distributive(L: Lattice) -> bool:
    m, j = L.meet, L.join
    r = range(L.n)
    return all(m[a][j[b][c]] == j[m[a][b]][m[a][c]] for a in r for b in r for c in r)


def filters(L: Lattice) -> list[int]:
    """All filters of ``L``; finite, so these are exactly the principal ones."""
    return [L.up[a] for a in range(L.n)]


def ideals(L: Lattice) -> list[int]:
    return [L.down[a] for a in range(L.n)]


@dataclass(frozen=True)
class LatticeHom:
    src: Lattice
    dst: Lattice
    map: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.map[a]

    def preimage(self, m: int) -> int:
        return bits.preimage(self.map, m)

    def image(self, m: int) -> int:
        return bits.mask(self.map[a] for a in bits.members(m))

    def is_surjective(self) -> bool:
        return set(self.map) == set(range(self.dst.n))

    def describe(self) -> dict[str, str]:
        return {self.src.names[a]: self.dst.names[b] for a, b in enumerate(self.map)}


def hom_violation(src: Lattice, dst: Lattice, mapping: Sequence[int]) -> tuple | None:
    """First law a map breaks, as ``(law, x, y)`` in element names, or None."""
    name = src.names
    if mapping[src.bot] != dst.bot:
        return ("bot", name[src.bot], dst.names[mapping[src.bot]])
    if mapping[src.top] != dst.top:
        return ("top", name[src.top], dst.names[mapping[src.top]])
    for a in range(src.n):
        for b in range(a + 1, src.n):
            if mapping[src.meet[a][b]] != dst.meet[mapping[a]][mapping[b]]:
                return ("meet", name[a], name[b])
            if mapping[src.join[a][b]] != dst.join[mapping[a]][mapping[b]]:
                return ("join", name[a], name[b])
    return None


def validate_hom(
    src: Lattice, dst: Lattice, mapping: Sequence[int] | Mapping[str, str]
) -> LatticeHom:
    """Check bound, meet and join preservation exhaustively.

    ``mapping`` is either a sequence of ``dst`` indices or a dict of element
    names.  Raises :class:`NotAHomomorphism` carrying a witness triple.
    """
    if isinstance(mapping, Mapping):
        try:
            table = [dst.index(mapping[x]) for x in src.names]
        except KeyError as exc:
            raise InputError(f"map is not total: missing {exc}") from None
    else:
        table = list(mapping)
        if len(table) != src.n:
            raise InputError(f"map has {len(table)} entries, source has {src.n}")
        for b in table:
            dst.check(b)
    witness = hom_violation(src, dst, table)
    if witness is not None:
        raise NotAHomomorphism(f"{witness[0]} not preserved at {witness[1:]}", witness)
    return LatticeHom(src, dst, tuple(table))


def identity_hom(L: Lattice) -> LatticeHom:
    return LatticeHom(L, L, tuple(range(L.n)))


def compose(outer: LatticeHom, inner: LatticeHom) -> LatticeHom:
    """``outer ∘ inner``: apply ``inner`` first."""
    if inner.dst != outer.src:
        raise InputError("homomorphisms are not composable")
    return LatticeHom(inner.src, outer.dst, tuple(outer.map[b] for b in inner.map))

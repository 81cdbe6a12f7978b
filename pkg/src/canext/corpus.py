"""Deterministic lattice generators and homomorphism enumeration for test suites."""

from __future__ import annotations

import random
from itertools import product as cartesian
from typing import Iterator

from . import bits
from .errors import InputError, UnknownCorpusName
from .lattice import Lattice, LatticeHom, build_lattice, hom_violation

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def chain(n: int) -> Lattice:
    if n < 1:
        raise InputError("chain length must be positive")
    if n == 1:
        return build_lattice(["0"], covers=[], name="chain(1)")
    names = ["0", *_LETTERS[: n - 2], "1"]
    return build_lattice(names, covers=list(zip(names, names[1:])), name=f"chain({n})")


def boolean(k: int) -> Lattice:
    if k < 0:
        raise InputError("boolean rank must be non-negative")
    names = [format(i, f"0{k}b") if k else "0" for i in range(1 << k)]
    covers = [
        (names[i], names[i | 1 << j]) for i in range(1 << k) for j in range(k) if not i >> j & 1
    ]
    return build_lattice(names, covers=covers, name=f"boolean({k})")


def m3() -> Lattice:
    names = ["0", "b", "c", "d", "1"]
    covers = [("0", x) for x in "bcd"] + [(x, "1") for x in "bcd"]
    return build_lattice(names, covers=covers, name="M3")


def n5() -> Lattice:
    names = ["0", "a", "b", "c", "1"]
    covers = [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")]
    return build_lattice(names, covers=covers, name="N5")


def product(left: Lattice, right: Lattice) -> Lattice:
    pairs = list(cartesian(range(left.n), range(right.n)))
    names = [f"({left.names[a]},{right.names[b]})" for a, b in pairs]
    leq = [[left.le(a, c) and right.le(b, d) for c, d in pairs] for a, b in pairs]
    return build_lattice(names, leq=leq, name=f"{left.name}x{right.name}")


def random_lattice(seed: int, n: int) -> Lattice:
    """A lattice with exactly ``n`` elements, as a Moore family of random sets.

    Families of subsets closed under intersection (with the full set) are
    lattices under inclusion; the ground set and generators are drawn from
    ``random.Random(seed)`` so the result depends only on ``(seed, n)``.
    """
    if n < 1:
        raise InputError("random lattice size must be positive")
    if n == 1:
        return build_lattice(["0"], covers=[], name=f"random({seed},1)")
    rng = random.Random(seed)
    for _ in range(10_000):
        ground = rng.randint(max(1, n.bit_length() - 1), n - 1)
        top = bits.full(ground)
        gens = [rng.getrandbits(ground) for _ in range(rng.randint(1, n))]
        family = bits.intersection_closure(gens, top)
        if len(family) == n:
            break
    else:  # pragma: no cover - generator always succeeds for n <= 64 in practice
        raise InputError(f"could not draw a random lattice of size {n}")
    sets = sorted(family, key=lambda m: (bits.count(m), bits.set_key(m)))
    names = [f"x{i}" for i in range(n)]
    names[0], names[-1] = "0", "1"
    leq = [[bits.is_subset(a, b) for b in sets] for a in sets]
    return build_lattice(names, leq=leq, name=f"random({seed},{n})")


_GENERATORS = {
    "chain": chain,
    "boolean": boolean,
    "M3": m3,
    "N5": n5,
    "product": product,
    "random": random_lattice,
}


def corpus(name: str, *args, **kwargs) -> Lattice:
    """Look up a generator by name: chain(n), boolean(k), M3, N5, product(L, K), random(seed, n)."""
    try:
        gen = _GENERATORS[name]
    except KeyError:
        raise UnknownCorpusName(f"unknown corpus lattice {name!r}") from None
    return gen(*args, **kwargs)


def standard_corpus(max_size: int = 8, randoms: int = 20, seed: int = 0) -> list[Lattice]:
    """Chains, Boolean algebras, M3, N5 and seeded random lattices up to ``max_size``."""
    out = [chain(n) for n in range(1, max_size + 1)]
    out += [boolean(k) for k in range(4) if 1 << k <= max_size]
    if max_size >= 5:
        out += [m3(), n5()]
    sizes = list(range(min(4, max_size), max_size + 1))
    for i in range(randoms):
        out.append(random_lattice(seed * 1000 + i, sizes[i % len(sizes)]))
    return out


def homomorphisms(src: Lattice, dst: Lattice) -> Iterator[LatticeHom]:
    """Every 0,1-homomorphism ``src -> dst``, by pruned backtracking in index order."""
    n = src.n
    table = [-1] * n
    table[src.bot] = dst.bot
    table[src.top] = dst.top
    if src.bot == src.top and dst.bot != dst.top:
        return
    order = [a for a in range(n) if a not in (src.bot, src.top)]

    def consistent(a: int) -> bool:
        fa = table[a]
        for b in range(n):
            fb = table[b]
            if fb < 0:
                continue
            m, j = src.meet[a][b], src.join[a][b]
            if table[m] >= 0 and table[m] != dst.meet[fa][fb]:
                return False
            if table[j] >= 0 and table[j] != dst.join[fa][fb]:
                return False
        return True

    def walk(k: int) -> Iterator[LatticeHom]:
        if k == len(order):
            if hom_violation(src, dst, table) is None:
                yield LatticeHom(src, dst, tuple(table))
            return
        a = order[k]
        for b in range(dst.n):
            table[a] = b
            if consistent(a):
                yield from walk(k + 1)
        table[a] = -1

    if consistent(src.bot) and consistent(src.top):
        yield from walk(0)


def random_hom(src: Lattice, dst: Lattice, rng: random.Random) -> LatticeHom | None:
    homs = list(homomorphisms(src, dst))
    return rng.choice(homs) if homs else None

"""Subsets of ``range(n)`` stored as Python ints.

Bit ``i`` set means element ``i`` is a member.  All set algebra downstream
(filters, ideals, vertex subsets, preimages) goes through these helpers.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def full(n: int) -> int:
    return (1 << n) - 1


def mask(items: Iterable[int]) -> int:
    out = 0
    for i in items:
        out |= 1 << i
    return out


def members(m: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    i = 0
    while m:
        if m & 1:
            yield i
        m >>= 1
        i += 1


def to_tuple(m: int) -> tuple[int, ...]:
    return tuple(members(m))


def count(m: int) -> int:
    return bin(m).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def contains(m: int, i: int) -> bool:
    return (m >> i) & 1 == 1


def subsets(m: int) -> Iterator[int]:
    """All submasks of ``m``, including 0 and ``m`` itself."""
    sub = m
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & m


def set_key(m: int) -> tuple[int, ...]:
    """Sort key for canonical (lexicographic on member lists) ordering."""
    return to_tuple(m)


def preimage(mapping: tuple[int, ...] | list[int], target: int) -> int:
    """Indices ``i`` with ``mapping[i]`` in ``target``."""
    out = 0
    for i, j in enumerate(mapping):
        if (target >> j) & 1:
            out |= 1 << i
    return out


def intersection_closure(generators: Iterable[int], top: int) -> set[int]:
    """Close ``generators`` (plus ``top``, the empty intersection) under pairwise meet."""
    family = {top}
    frontier = [top]
    gens = list(dict.fromkeys(generators))
    for g in gens:
        if g not in family:
            family.add(g)
            frontier.append(g)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = a & g
                if c not in family:
                    family.add(c)
                    new.append(c)
        frontier = new
    return family

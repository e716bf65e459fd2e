"""Symmetric group combinatorics behind cocharacter decomposition.

Partitions, hook-length dimensions, Murnaghan-Nakayama character values and
class-function inner products.  Character values are memoized per
(partition, remaining cycles) pair and whole tables are built once per
process behind a lock.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .errors import SizeMismatch

Partition = tuple[int, ...]


def partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order."""
    if n == 0:
        return [()]
    out: list[Partition] = []

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(n, n, ())
    return out


def height(lam: Partition) -> int:
    return len(lam)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > i) for i in range(lam[0]))


@lru_cache(maxsize=None)
def hook_dimension(lam: Partition) -> int:
    """Number of standard Young tableaux of shape lam (hook length formula)."""
    n = sum(lam)
    conj = conjugate(lam)
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= row - j + conj[j] - i - 1
    return factorial(n) // hooks


def class_size(cycle_type: Partition) -> int:
    """Size of the S_n conjugacy class with the given cycle type."""
    n = sum(cycle_type)
    denom = 1
    mult: dict[int, int] = {}
    for k in cycle_type:
        mult[k] = mult.get(k, 0) + 1
    for k, m in mult.items():
        denom *= k**m * factorial(m)
    return factorial(n) // denom


def _strip_removals(lam: Partition, size: int):
    """Border strips of ``size`` removable from lam, via beta numbers.

    Yields (new_partition, sign).
    """
    k = len(lam)
    beta = [lam[i] + (k - 1 - i) for i in range(k)]
    beta_set = set(beta)
    for idx, b in enumerate(beta):
        nb = b - size
        if nb < 0 or nb in beta_set:
            continue
        new_beta = sorted((x for x in beta if x != b), reverse=True)
        crossings = sum(1 for x in new_beta if nb < x < b)
        merged = []
        inserted = False
        for x in new_beta:
            if not inserted and nb > x:
                merged.append(nb)
                inserted = True
            merged.append(x)
        if not inserted:
            merged.append(nb)
        m = len(merged)
        new_lam = tuple(merged[i] - (m - 1 - i) for i in range(m))
        new_lam = tuple(p for p in new_lam if p > 0)
        yield new_lam, (-1) ** crossings


@lru_cache(maxsize=None)
def _mn(lam: Partition, cycles: Partition) -> int:
    if not cycles:
        return 1 if not lam else 0
    first, rest = cycles[0], cycles[1:]
    total = 0
    for new_lam, sign in _strip_removals(lam, first):
        total += sign * _mn(new_lam, rest)
    return total


def character_value(lam: Partition, cycle_type: Partition) -> int:
    """Irreducible S_n character chi_lam evaluated on a cycle type."""
    if sum(lam) != sum(cycle_type):
        raise SizeMismatch(f"|{lam}| != |{cycle_type}|")
    cycles = tuple(sorted(cycle_type, reverse=True))
    return _mn(tuple(lam), cycles)


class CharacterTable:
    """Full character table of S_n: one row per partition, one column per class."""

    def __init__(self, n: int):
        self.n = n
        self.classes: list[Partition] = partitions(n)
        self.class_sizes: list[int] = [class_size(c) for c in self.classes]
        self.rows: dict[Partition, list[int]] = {
            lam: [character_value(lam, c) for c in self.classes]
            for lam in self.classes
        }

    def row(self, lam: Partition) -> list[int]:
        return self.rows[lam]


_tables: dict[int, CharacterTable] = {}
_tables_lock = threading.Lock()


def character_table(n: int) -> CharacterTable:
    with _tables_lock:
        table = _tables.get(n)
        if table is None:
            table = _tables[n] = CharacterTable(n)
    return table


def decompose(class_function: Sequence, n: int) -> dict[Partition, Fraction]:
    """Multiplicities <f, chi_lam> of a class function on S_n.

    ``class_function`` lists one value per conjugacy class, in the
    ``partitions(n)`` class order.
    """
    table = character_table(n)
    if len(class_function) != len(table.classes):
        raise SizeMismatch("one value per conjugacy class required")
    nfact = factorial(n)
    out: dict[Partition, Fraction] = {}
    for lam in table.classes:
        row = table.rows[lam]
        acc = sum(
            (Fraction(size) * Fraction(val) * chi
             for size, val, chi in zip(table.class_sizes, class_function, row)),
            Fraction(0),
        )
        out[lam] = acc / nfact
    return out


def regular_character(n: int) -> list[int]:
    """The character of the regular representation (n! at the identity)."""
    return [factorial(n) if all(p == 1 for p in c) else 0 for c in partitions(n)]

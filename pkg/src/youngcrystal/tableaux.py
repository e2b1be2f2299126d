"""Plethystic column tableaux, their weights, and the map to box partitions.

A tableau of B_r(n) is a strictly increasing column of ``n`` integers in
``[0, r]``.  Entries are stored smallest-first, ``(a_n, ..., a_1)``, which is
also the top-to-bottom order of the printed column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np


class TableauError(ValueError):
    pass


class RepeatedEntry(TableauError):
    pass


class NotIncreasing(TableauError):
    pass


class NegativeEntry(TableauError):
    pass


class NotInRange(TableauError):
    pass


class Underflow(TableauError):
    pass


@dataclass(frozen=True, order=True)
class Tableau:
    entries: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def largest(self) -> int:
        """a_1, or -1 for the empty column."""
        return self.entries[-1] if self.entries else -1

    def shift(self, vec: Sequence[int]) -> Tableau:
        return Tableau(tuple(a + d for a, d in zip(self.entries, vec)))

    def to_json(self) -> dict:
        return {"n": self.n, "entries": list(self.entries)}

    def __str__(self) -> str:
        return "⟨" + ",".join(map(str, self.entries)) + "⟩"


def make_tableau(n: int, entries: Iterable[int]) -> Tableau:
    entries = tuple(int(a) for a in entries)
    if len(entries) != n:
        raise TableauError(f"expected {n} entries, got {len(entries)}")
    for a in entries:
        if a < 0:
            raise NegativeEntry(f"negative entry {a} in {entries}")
    for x, y in zip(entries, entries[1:]):
        if x == y:
            raise RepeatedEntry(f"entry {x} repeated in {entries}")
        if x > y:
            raise NotIncreasing(f"{entries} is not increasing")
    return Tableau(entries)


def wt2(t: Tableau, r: int) -> int:
    """Twice the weight: n*r - 2*(sum of entries)."""
    if t.entries and t.largest > r:
        raise NotInRange(f"{t} has an entry above r={r}")
    return t.n * r - 2 * sum(t.entries)


def wt(t: Tableau, r: int) -> Fraction:
    return Fraction(wt2(t, r), 2)


@dataclass(frozen=True)
class BoxPartition:
    parts: tuple[int, ...]
    n: int
    m: int

    def __post_init__(self):
        p = self.parts
        if any(x <= 0 for x in p) or any(x < y for x, y in zip(p, p[1:])):
            raise ValueError(f"{p} is not a partition")
        if (p and p[0] > self.n) or len(p) > self.m:
            raise ValueError(f"{p} does not fit in a {self.n}x{self.m} box")

    @property
    def rank(self) -> int:
        return sum(self.parts)

    def to_json(self) -> dict:
        return {"parts": list(self.parts), "box": [self.n, self.m]}

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "∅"


def psi(t: Tableau, m: int | None = None) -> BoxPartition:
    """Send ⟨a_n..a_1⟩ to (n^{a_n} ... i^{a_i - a_{i+1} - 1} ... 1^{a_1 - a_2 - 1}).

    ``m`` defaults to the smallest box height holding the image, a_1 + 1 - n.
    """
    n, e = t.n, t.entries
    if m is None:
        m = max(t.largest + 1 - n, 0)
    parts: list[int] = [n] * (e[0] if n else 0)
    for idx in range(1, n):
        # e[idx] is a_i with i = n - idx; part size i
        parts += [n - idx] * (e[idx] - e[idx - 1] - 1)
    return BoxPartition(tuple(parts), n, m)


def psi_inv(lam: BoxPartition) -> Tableau:
    n = lam.n
    mult = [0] * (n + 1)
    for p in lam.parts:
        mult[p] += 1
    entries = []
    a = -1
    for i in range(n, 0, -1):
        a = mult[n] if i == n else a + 1 + mult[i]
        entries.append(a)
    return Tableau(tuple(entries))


def enumerate_tableaux(n: int, r: int) -> list[Tableau]:
    """All tableaux of B_r(n) in lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [Tableau(c) for c in combinations(range(r + 1), n)]


def tableau_array(n: int, r: int, dtype=np.int32) -> np.ndarray:
    """B_r(n) as an (N, n) array, rows in lexicographic order.

    Built level by level so that no Python tuple per row is ever created.
    """
    top = r + 1
    if n == 0:
        return np.zeros((1, 0), dtype=dtype)
    if top < n:
        return np.zeros((0, n), dtype=dtype)
    rows = np.arange(0, top - n + 1, dtype=dtype)[:, None]
    for level in range(1, n):
        last = rows[:, -1].astype(np.int64)
        hi = top - (n - level)  # largest value allowed at this level
        counts = hi - last
        reps = np.repeat(np.arange(len(rows)), counts)
        starts = np.cumsum(counts) - counts
        offs = np.arange(reps.size, dtype=np.int64) - np.repeat(starts, counts)
        nxt = (np.repeat(last, counts) + 1 + offs).astype(dtype)
        rows = np.concatenate([rows[reps], nxt[:, None]], axis=1)
    return rows


def binom_table(top: int, n: int) -> np.ndarray:
    tab = np.zeros((top + 1, n + 1), dtype=np.int64)
    for x in range(top + 1):
        for i in range(n + 1):
            tab[x, i] = comb(x, i)
    return tab


def colex_rank(arr: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Colexicographic rank sum_i C(e_i, i+1) of each row (entries ascending)."""
    out = np.zeros(arr.shape[0], dtype=np.int64)
    for i in range(arr.shape[1]):
        out += table[arr[:, i], i + 1]
    return out


def t_down(t: Tableau) -> Tableau:
    """Drop a_n and a_1 and renormalise the middle entries by a_n + 1."""
    if t.n < 2:
        raise Underflow(f"{t} has fewer than two entries")
    base = t.entries[0] + 1
    return Tableau(tuple(a - base for a in t.entries[1:-1]))


def covers(lam: BoxPartition, mu: BoxPartition) -> bool:
    """True iff ``lam`` is ``mu`` with exactly one box added."""
    a, b = lam.parts, mu.parts
    if sum(a) != sum(b) + 1 or len(a) < len(b):
        return False
    diff = 0
    for i in range(len(a)):
        x, y = a[i], (b[i] if i < len(b) else 0)
        if x < y:
            return False
        diff += x - y
    return diff == 1


def partitions_in_box(n: int, m: int) -> list[tuple[int, ...]]:
    """All partitions with parts <= n and at most m parts (via psi_inv's inverse)."""
    return [psi(Tableau(c), m).parts for c in combinations(range(n + m), n)]

"""Brute-force ground truth for the Young lattice L(n, m).

Nothing here touches the q-binomial code or the crystal operators: rank
profiles come from a dynamic programme over partitions in a box, and the
partitions themselves from a direct recursive enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass

from .qchar import INT64_MAX, CoefficientOverflow, CenteredPoly, peel, q_binom
from .report import Report


@dataclass(frozen=True)
class RankProfile:
    n: int
    m: int
    counts: tuple[int, ...]

    def total(self) -> int:
        return sum(self.counts)

    def is_palindromic(self) -> bool:
        return self.counts == self.counts[::-1]

    def is_unimodal(self) -> bool:
        c = self.counts
        peak = c.index(max(c))
        return all(x <= y for x, y in zip(c[:peak], c[1:peak + 1])) and all(
            x >= y for x, y in zip(c[peak:], c[peak + 1:])
        )

    def centred(self) -> CenteredPoly:
        """The profile as a polynomial in q^(1/2) centred at rank nm/2."""
        nm = self.n * self.m
        return CenteredPoly({2 * s - nm: c for s, c in enumerate(self.counts) if c})


def rank_profile(n: int, m: int) -> RankProfile:
    """counts[s] = number of partitions of s with parts <= n and at most m parts."""
    if n < 0 or m < 0:
        raise ValueError("box sides must be nonnegative")
    top = n * m
    # dp[j][s]: partitions of s into exactly j parts, parts drawn from 1..p so far
    dp = [[0] * (top + 1) for _ in range(m + 1)]
    dp[0][0] = 1
    for p in range(1, n + 1):
        for j in range(1, m + 1):
            row, prev = dp[j], dp[j - 1]
            for s in range(p, top + 1):
                v = row[s] + prev[s - p]
                if v > INT64_MAX:
                    raise CoefficientOverflow(f"rank count {v} overflows 64 bits")
                row[s] = v
    counts = [sum(dp[j][s] for j in range(m + 1)) for s in range(top + 1)]
    return RankProfile(n, m, tuple(counts))


def middle_rank_count(n: int, m: int) -> int:
    return rank_profile(n, m).counts[(n * m) // 2]


def box_partitions(n: int, m: int) -> list[tuple[int, ...]]:
    """Every partition fitting in an n-wide, m-tall box."""
    out: list[tuple[int, ...]] = []

    def grow(prefix: list[int], cap: int) -> None:
        out.append(tuple(prefix))
        if len(prefix) == m:
            return
        for p in range(1, cap + 1):
            prefix.append(p)
            grow(prefix, p)
            prefix.pop()

    grow([], n)
    return out


def cross_check_character(n: int, r: int) -> Report:
    """Rank profile of L(n, r+1-n) against the q-binomial and the crystal's character."""
    from .plethysm import character

    rep = Report(f"character oracle n={n} r={r}")
    m = r + 1 - n
    prof = rank_profile(n, m)
    poly = prof.centred()
    qb = q_binom(r + 1, n)
    if poly != qb:
        rep.fail("rank profile differs from the q-binomial")
    oracle_parts = peel(poly)
    crystal_parts = character(n, r)
    if oracle_parts != crystal_parts:
        rep.fail(f"oracle {oracle_parts} != crystal {crystal_parts}")
    rep.details.update(oracle=str(oracle_parts), crystal=str(crystal_parts))
    return rep

"""Highest weights, plethystic coefficients, constituent counts and SCDs of L(n, m)."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .chains import SeedSpec
from .crystal import CrystalGraph, build
from .oracle import box_partitions, middle_rank_count
from .qchar import QIntCombo, peel, q_binom
from .report import Report
from .tableaux import Tableau, enumerate_tableaux, psi


def _hw2(t: Tableau) -> bool:
    b, a = t.entries
    return b == 0 and a % 2 == 1


def _hw3(t: Tableau) -> bool:
    c, b, a = t.entries
    return b == c + 1 and a >= 4 * c + 2 and a != 4 * c + 3


def _hw4(t: Tableau) -> bool:
    d, c, b, a = t.entries
    return c == d + 1 and (b - c) % 2 == 1 and a >= b + 2 * d + 1 and a != b + 2 * d + 2


HW_PREDICATES = {2: _hw2, 3: _hw3, 4: _hw4}


def hw_closed_form(n: int, r: int) -> set[Tableau]:
    """Tableaux of B_r(n) satisfying the closed-form highest-weight description."""
    try:
        pred = HW_PREDICATES[n]
    except KeyError:
        raise ValueError(f"no closed-form highest-weight set for n={n}") from None
    return {t for t in enumerate_tableaux(n, r) if pred(t)}


def hw_computed(n: int, r: int, seed: SeedSpec | None = None) -> set[Tableau]:
    return set(build(n, r, seed).hw_tableaux())


def coefficients(n: int, r: int, seed: SeedSpec | None = None, graph: CrystalGraph | None = None) -> dict[int, int]:
    """Multiplicity of Sym^k in Lambda^n Sym^r, keyed by k = 2 wt of each highest weight."""
    g = graph or build(n, r, seed)
    return dict(sorted(Counter(int(w) for w in g.wt2[g.is_hw]).items()))


def coefficient(n: int, r: int, k: int, seed: SeedSpec | None = None) -> int:
    return coefficients(n, r, seed).get(k, 0)


def character(n: int, r: int, seed: SeedSpec | None = None, graph: CrystalGraph | None = None) -> QIntCombo:
    """The character read off the crystal: one [2 wt + 1] per highest-weight node."""
    return QIntCombo.of({k + 1: c for k, c in coefficients(n, r, seed, graph).items()})


def constituents(n: int, r: int, seed: SeedSpec | None = None) -> int:
    return int(build(n, r, seed).is_hw.sum())


def constituents_closed(n: int, r: int) -> int | None:
    """The printed closed forms (n = 2, 3, 4); None where none is printed."""
    if n == 2:
        return (r + 1) // 2
    if n == 3:
        return (r + 1) ** 2 // 8
    if n == 4:
        return (2 * r**3 - 3 * r**2 + 6 * r + 27) // 72
    return None


def constituents_n3_intermediate(r: int) -> Fraction:
    """Exact rational expression for the n = 3 count, before any floor simplification."""
    c = ceil(Fraction(r - 2 * (r % 2 == 0), 4))
    return Fraction(r * (r + 1), 6) - Fraction(c * (r + 2 - 2 * c), 3)


def constituents_by_plus(n: int, r: int) -> Fraction:
    """(1/n) (qbinom(r+1, n)_{+n} - qbinom(r+1, n)) at q = 1."""
    parts = peel(q_binom(r + 1, n))
    shifted = QIntCombo.of({k + n: c for k, c in parts.parts})
    return Fraction(shifted.dimension() - parts.dimension(), n)


# The n = 3 closed form is a known misprint (see the README); it is reported
# as a warning rather than a failure.
_FLAGGED_CLOSED = {3}


def constituent_report(n: int, r: int, seed: SeedSpec | None = None) -> Report:
    rep = Report(f"constituents n={n} r={r}")
    count = constituents(n, r, seed)
    oracle = middle_rank_count(n, r + 1 - n)
    rep.details.update(crystal=count, oracle=oracle, by_plus=str(constituents_by_plus(n, r)))
    if count != oracle:
        rep.fail(f"crystal count {count} != middle-rank count {oracle}")
    if constituents_by_plus(n, r) != count:
        rep.fail("plus-operator count disagrees")
    if n == 3:
        mid = constituents_n3_intermediate(r)
        rep.details["intermediate"] = str(mid)
        if mid != count:
            rep.fail(f"exact n = 3 expression {mid} != {count}")
    closed = constituents_closed(n, r)
    if closed is not None:
        rep.details["closed_form"] = closed
        if closed != count:
            msg = f"printed closed form gives {closed}, actual {count}"
            if n in _FLAGGED_CLOSED:
                rep.warn(msg)
            else:
                rep.fail(msg)
    return rep


# -- printed side-conditions for the coefficients ----------------------------------

def _printed_index(t: Tableau) -> int:
    # linear forms printed next to each coefficient count, entries largest-first
    weights = {2: (1, 2), 3: (3, 2, 1), 4: (4, 3, 2, 1)}[t.n]
    return sum(w * x for w, x in zip(weights, reversed(t.entries)))


def side_condition_report(n: int, r_max: int) -> Report:
    """Compare the printed linear index of each coefficient with k = 2 wt."""
    rep = Report(f"coefficient side-condition n={n}")
    bad = []
    for r in range(n, r_max + 1):
        g = build(n, r)
        actual = coefficients(n, r, graph=g)
        printed = Counter(_printed_index(t) for t in g.hw_tableaux())
        if n == 2:
            # the printed n = 2 count, read as the indicator of odd k <= r
            formula = {k: 1 for k in range(1, r + 1, 2)}
            if formula != actual:
                bad.append({"r": r, "kind": "n=2 closed count", "printed": formula, "actual": actual})
        if dict(sorted(printed.items())) != actual:
            bad.append({"r": r, "printed": dict(sorted(printed.items())), "actual": actual})
    if bad:
        rep.warn(f"printed coefficient index disagrees with k = 2 wt for {len(bad)} cases (first r={bad[0]['r']})")
        rep.details["first"] = {key: str(v) for key, v in bad[0].items()}
    return rep


# -- symmetric chain decompositions ----------------------------------------------

@dataclass(frozen=True)
class ChainFamily:
    n: int
    m: int
    chains: tuple[tuple[tuple[int, ...], ...], ...]

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "m": self.m, "chains": [[list(p) for p in c] for c in self.chains]}
        ) + "\n"


def scd(n: int, m: int, seed: SeedSpec | None = None) -> ChainFamily:
    """Image under psi of the crystal components of B_{n+m-1}(n), highest weight first."""
    if m == 0:
        return ChainFamily(n, 0, (((),),))
    g = build(n, n + m - 1, seed)
    chains = []
    for comp in g.components():
        chains.append(tuple(psi(g.tableau(i), m).parts for i in comp))
    return ChainFamily(n, m, tuple(chains))


def _covers(big: tuple[int, ...], small: tuple[int, ...]) -> bool:
    if sum(big) != sum(small) + 1 or len(big) < len(small):
        return False
    pad = small + (0,) * (len(big) - len(small))
    return all(x >= y for x, y in zip(big, pad))


def verify_scd(fam: ChainFamily, max_witnesses: int = 20) -> Report:
    """Partition of L(n, m), saturation, and rank symmetry about nm/2."""
    rep = Report(f"scd n={fam.n} m={fam.m}")
    nm = fam.n * fam.m
    seen = Counter(p for c in fam.chains for p in c)
    universe = set(box_partitions(fam.n, fam.m))
    for p, k in seen.items():
        if k > 1:
            rep.counterexample({"partition": list(p), "problem": f"appears {k} times"})
        if p not in universe:
            rep.counterexample({"partition": list(p), "problem": "not in the box"})
    for p in sorted(universe - set(seen))[:max_witnesses]:
        rep.counterexample({"partition": list(p), "problem": "missing"})
    for idx, c in enumerate(fam.chains):
        if not c:
            rep.counterexample({"chain": idx, "problem": "empty"})
            continue
        for lo, hi in zip(c, c[1:]):
            if not _covers(hi, lo):
                rep.counterexample({"chain": idx, "problem": "not saturated", "at": [list(lo), list(hi)]})
                break
        if sum(c[0]) + sum(c[-1]) != nm:
            rep.counterexample({"chain": idx, "problem": "not rank-symmetric",
                                "ranks": [sum(c[0]), sum(c[-1])]})
    del rep.counterexamples[max_witnesses:]
    rep.details.update(chains=len(fam.chains), elements=sum(seen.values()))
    return rep


def coefficient_csv(rows) -> str:
    """CSV of (n, r, k, coefficient) for an iterable of (n, r, {k: count})."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "r", "k", "coefficient"])
    for n, r, table in rows:
        for k, c in table.items():
            w.writerow([n, r, k, c])
    return buf.getvalue()


# -- printed claims, all in one place ------------------------------------------

def printed_claims(n: int, r_max: int) -> Report:
    """Every printed closed form for this n against the computed crystal.

    Hard checks fail the report; the two known misprints (the n = 3 constituent
    floor and the coefficient side-conditions) surface as one warning each.
    """
    import numpy as np

    from . import chains
    from .crystal import gauge_closed, operator
    from .tableaux import tableau_array

    rep = Report(f"printed claims n={n} r_max={r_max}")
    if n not in HW_PREDICATES:
        rep.fail(f"nothing printed for n={n}")
        return rep

    hw_bad = [r for r in range(n, r_max + 1) if hw_closed_form(n, r) != hw_computed(n, r)]
    if hw_bad:
        rep.fail(f"highest-weight closed form differs at r={hw_bad[:5]}")

    flagged = []
    for r in range(n, r_max + 1):
        sub = constituent_report(n, r)
        rep.failures += [f"r={r}: {f}" for f in sub.failures]
        if sub.warnings:
            flagged.append(r)
    if flagged:
        rep.warn(f"constituent floor formula disagrees at r={flagged[:8]}")

    side = side_condition_report(n, r_max)
    rep.warnings += side.warnings
    rep.details["side_condition"] = side.details

    op = operator(n)
    seed = chains.builtin_seed(n)
    small = min(r_max, 15)
    for t in enumerate_tableaux(n, small):
        if chains.f_bot(seed, t) != chains.f_bot_closed(t):
            rep.counterexample({"claim": "F_bot closed form", "tableau": list(t.entries)})
        if chains.phi_bot_local(seed, t) != chains.phi_bot_local_closed(t):
            rep.counterexample({"claim": "phi_bot closed form", "tableau": list(t.entries)})
    arr = tableau_array(n, small, dtype=np.int64)
    gauges = op.gauge_batch(arr)
    for row, a in zip(arr.tolist(), gauges.tolist()):
        if gauge_closed(Tableau(tuple(row))) != a:
            rep.counterexample({"claim": "gauge closed form", "tableau": row})
    del rep.counterexamples[20:]
    rep.details.update(hw_checked=r_max - n + 1, closed_forms_on=f"B_{small}({n})")
    return rep

"""Seeds, lattice paths along (1,...,1) and the bottom operator.

A seed assigns each residue class of tableaux an offset vector ``v`` (a
permutation of ``0..n-1``).  The path through an initial tableau ``t0`` is

    t_k = t0 + floor((v + k) / n)        (entrywise)

so step ``k -> k+1`` increments the unique entry ``l`` with
``v_l == -(k+1) mod n``.  Everything below is derived from that formula; the
per-n case analyses at the bottom of the module are kept only as oracles.

Batch functions take an ``(N, n)`` integer array of tableaux (smallest entry
first) and work column-wise with numpy.  Entry ``e_k`` of the seed language is
``a_k``; ``e1`` is the largest entry, i.e. column ``n - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .report import Report
from .tableaux import Tableau, tableau_array


class SeedError(ValueError):
    pass


class NoBuiltinSeed(SeedError):
    pass


class NotInitial(SeedError):
    pass


class SeedNotPartition(SeedError):
    """A tableau lies in zero or several classes (or paths) of a seed."""

    def __init__(self, message: str, witness: Tableau | None = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Atom:
    """``e_left [- e_right] == value (mod modulus)``, possibly negated.

    ``modulus`` of None means plain integer equality.
    """

    left: int
    right: int | None
    value: int
    modulus: int | None = None
    negate: bool = False

    def term_values(self, arr: np.ndarray) -> np.ndarray:
        n = arr.shape[1]
        x = arr[:, n - self.left].astype(np.int64)
        if self.right is not None:
            x = x - arr[:, n - self.right]
        return x

    def holds(self, arr: np.ndarray) -> np.ndarray:
        x = self.term_values(arr)
        if self.modulus is None:
            res = x == self.value
        else:
            res = (x % self.modulus) == (self.value % self.modulus)
        return ~res if self.negate else res

    def render(self) -> str:
        term = f"e{self.left}" if self.right is None else f"e{self.left} - e{self.right}"
        if self.modulus is None:
            return f"{term} == {self.value}"
        op = "!≡" if self.negate else "≡"
        return f"{term} {op} {self.value} mod {self.modulus}"


Predicate = tuple[Atom, ...]


def holds(pred: Predicate, arr: np.ndarray) -> np.ndarray:
    mask = np.ones(arr.shape[0], dtype=bool)
    for atom in pred:
        mask &= atom.holds(arr)
    return mask


def render_predicate(pred: Predicate) -> str:
    return " && ".join(a.render() for a in pred)


@dataclass(frozen=True)
class SeedClass:
    name: str
    predicate: Predicate
    offset: tuple[int, ...]  # same order as the stored entries: (v_n, ..., v_1)


@dataclass(frozen=True)
class SeedSpec:
    n: int
    initial: Predicate
    classes: tuple[SeedClass, ...]
    _offsets: np.ndarray = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self.classes:
            raise SeedError("a seed needs at least one class")
        want = list(range(self.n))
        for c in self.classes:
            if sorted(c.offset) != want:
                raise SeedError(f"offset {c.offset} of class {c.name} is not a permutation of 0..{self.n - 1}")
        for atom in self.initial + tuple(a for c in self.classes for a in c.predicate):
            for idx in (atom.left, atom.right):
                if idx is not None and not 1 <= idx <= self.n:
                    raise SeedError(f"entry index e{idx} out of range for n={self.n}")
            if atom.modulus is not None and atom.modulus < 1:
                raise SeedError(f"modulus {atom.modulus} < 1")
        object.__setattr__(self, "_offsets", np.array([c.offset for c in self.classes], dtype=np.int64))

    def class_names(self) -> list[str]:
        return [c.name for c in self.classes]


# -- builtin seeds --------------------------------------------------------------

def _diff(i: int, j: int, value: int, modulus: int, negate: bool = False) -> Atom:
    return Atom(i, j, value, modulus, negate)


def _seed2() -> SeedSpec:
    initial = (Atom(2, None, 0), Atom(1, None, 1, 2))
    v = (0, 1)
    return SeedSpec(2, initial, (
        SeedClass("i", (_diff(1, 2, 0, 2),), v),
        SeedClass("ii", (_diff(1, 2, 1, 2),), v),
    ))


def _seed3() -> SeedSpec:
    initial = (Atom(3, None, 0), Atom(2, None, 1, 2), _diff(1, 2, 2, 3, negate=True))
    first, second = (0, 1, 2), (0, 2, 1)
    table = [
        ("i", 1, 1, first), ("ii", 1, 2, first), ("iii", 0, 1, first),
        ("iv", 1, 0, second), ("v", 0, 2, second), ("vi", 0, 0, second),
    ]
    return SeedSpec(3, initial, tuple(
        SeedClass(name, (_diff(2, 3, bc, 2), _diff(1, 2, ab, 3)), v) for name, bc, ab, v in table
    ))


def _seed4() -> SeedSpec:
    initial = (Atom(4, None, 0), Atom(3, None, 1, 2), Atom(1, None, 1, 2))
    first, second = (0, 1, 2, 3), (0, 3, 2, 1)
    table = [
        ("i", 1, 1, 1, first), ("ii", 1, 1, 0, first), ("iii", 1, 0, 1, first), ("iv", 0, 1, 1, first),
        ("v", 1, 0, 0, second), ("vi", 0, 1, 0, second), ("vii", 0, 0, 1, second), ("viii", 0, 0, 0, second),
    ]
    return SeedSpec(4, initial, tuple(
        SeedClass(name, (_diff(3, 4, cd, 2), _diff(2, 3, bc, 2), _diff(1, 2, ab, 2)), v)
        for name, cd, bc, ab, v in table
    ))


_BUILTIN = {2: _seed2, 3: _seed3, 4: _seed4}


def builtin_seed(n: int) -> SeedSpec:
    try:
        return _BUILTIN[n]()
    except KeyError:
        raise NoBuiltinSeed(f"no builtin seed for n={n}") from None


# -- batch path machinery ---------------------------------------------------------

def class_index(seed: SeedSpec, arr: np.ndarray) -> np.ndarray:
    """Index of the unique matching class; -1 if none match, -2 if several do."""
    idx = np.full(arr.shape[0], -1, dtype=np.int64)
    for i, c in enumerate(seed.classes):
        hit = holds(c.predicate, arr)
        idx = np.where(hit, np.where(idx == -1, i, -2), idx)
    return idx


def _strict(arr: np.ndarray) -> np.ndarray:
    ok = np.ones(arr.shape[0], dtype=bool)
    if arr.shape[1]:
        ok &= arr[:, 0] >= 0
    for i in range(1, arr.shape[1]):
        ok &= arr[:, i] > arr[:, i - 1]
    return ok


@dataclass
class Located:
    """Where each row sits on its path."""

    cls: np.ndarray      # class index, negative on failure
    offset: np.ndarray   # (N, n) offset vector of the path
    step: np.ndarray     # k with t = t0 + floor((v + k)/n)
    initial: np.ndarray  # (N, n) reconstructed initial tableau
    matches: np.ndarray  # number of consistent reconstructions (1 when well defined)

    @property
    def ok(self) -> np.ndarray:
        return (self.cls >= 0) & (self.matches == 1)


def locate(seed: SeedSpec, arr: np.ndarray) -> Located:
    """Reconstruct (t0, k) for every row.

    For each phase j in 0..n-1 strip floor((v + j)/n) and slide back along
    (1,...,1) until the smallest entry is 0; the phase is accepted when the
    result is a valid initial tableau whose own class carries the same offset.
    """
    n = seed.n
    arr = np.asarray(arr, dtype=np.int64)
    cls = class_index(seed, arr)
    offset = seed._offsets[np.maximum(cls, 0)]
    step = np.zeros(arr.shape[0], dtype=np.int64)
    t0 = np.zeros_like(arr)
    matches = np.zeros(arr.shape[0], dtype=np.int64)
    for j in range(n):
        s = arr - (offset + j) // n
        base = s[:, 0].copy()
        cand = s - base[:, None]
        good = (cls >= 0) & (base >= 0) & _strict(cand) & holds(seed.initial, cand)
        ccls = class_index(seed, cand)
        good &= ccls >= 0
        good &= np.all(seed._offsets[np.maximum(ccls, 0)] == offset, axis=1)
        first = good & (matches == 0)
        step = np.where(first, n * base + j, step)
        t0 = np.where(first[:, None], cand, t0)
        matches += good
    return Located(cls, offset, step, t0, matches)


def _unit_by_offset(offset: np.ndarray, residue: np.ndarray, n: int) -> np.ndarray:
    """One-hot rows selecting the entry l with v_l == residue (mod n)."""
    return (offset == (residue % n)[:, None]).astype(np.int64)


def f_bot_batch(seed: SeedSpec, arr: np.ndarray, loc: Located | None = None) -> tuple[np.ndarray, np.ndarray]:
    loc = loc or locate(seed, arr)
    out = np.asarray(arr, dtype=np.int64) + _unit_by_offset(loc.offset, -(loc.step + 1), seed.n)
    return out, loc.ok


def e_bot_batch(seed: SeedSpec, arr: np.ndarray, loc: Located | None = None) -> tuple[np.ndarray, np.ndarray]:
    loc = loc or locate(seed, arr)
    out = np.asarray(arr, dtype=np.int64) - _unit_by_offset(loc.offset, -loc.step, seed.n)
    return out, loc.ok & (loc.step > 0)


def phi_bot_local_batch(seed: SeedSpec, arr: np.ndarray, loc: Located | None = None) -> np.ndarray:
    """Bottom steps taken before the largest entry first increases (0 <= . < n)."""
    loc = loc or locate(seed, arr)
    n = seed.n
    return (-loc.offset[:, n - 1] - loc.step - 1) % n


# -- scalar interface ------------------------------------------------------------

def _row(t: Tableau) -> np.ndarray:
    return np.array([t.entries], dtype=np.int64).reshape(1, t.n)


def _check_n(seed: SeedSpec, t: Tableau) -> None:
    if t.n != seed.n:
        raise SeedError(f"seed is for n={seed.n}, tableau {t} has n={t.n}")


def _located_one(seed: SeedSpec, t: Tableau) -> Located:
    _check_n(seed, t)
    loc = locate(seed, _row(t))
    if loc.cls[0] == -1:
        raise SeedNotPartition(f"{t} lies in no class", t)
    if loc.cls[0] == -2:
        raise SeedNotPartition(f"{t} lies in several classes", t)
    if loc.matches[0] != 1:
        raise SeedNotPartition(f"{t} lies on {loc.matches[0]} paths", t)
    return loc


def classify(seed: SeedSpec, t: Tableau) -> str:
    _check_n(seed, t)
    idx = class_index(seed, _row(t))[0]
    if idx == -1:
        raise SeedNotPartition(f"{t} lies in no class", t)
    if idx == -2:
        raise SeedNotPartition(f"{t} lies in several classes", t)
    return seed.classes[idx].name


def f_bot(seed: SeedSpec, t: Tableau) -> Tableau:
    loc = _located_one(seed, t)
    out, _ = f_bot_batch(seed, _row(t), loc)
    return Tableau(tuple(int(x) for x in out[0]))


def e_bot(seed: SeedSpec, t: Tableau) -> Tableau | None:
    loc = _located_one(seed, t)
    out, ok = e_bot_batch(seed, _row(t), loc)
    return Tableau(tuple(int(x) for x in out[0])) if ok[0] else None


def phi_bot_local(seed: SeedSpec, t: Tableau) -> int:
    return int(phi_bot_local_batch(seed, _row(t), _located_one(seed, t))[0])


def phi_bot(seed: SeedSpec, t: Tableau, r: int) -> int:
    """Bottom steps available inside B_r(n): n(r - a_1) + phi_bot_local."""
    if t.largest > r:
        raise ValueError(f"{t} is not in B_{r}")
    return seed.n * (r - t.largest) + phi_bot_local(seed, t)


def is_initial(seed: SeedSpec, t: Tableau) -> bool:
    _check_n(seed, t)
    loc = locate(seed, _row(t))
    return bool(loc.ok[0] and loc.step[0] == 0)


@dataclass(frozen=True)
class PathPoint:
    tableau: Tableau
    k: int
    initial: Tableau


def path(seed: SeedSpec, t0: Tableau, r_cap: int) -> list[PathPoint]:
    """Points of P(t0, v) with largest entry <= r_cap, straight from the path formula."""
    if not is_initial(seed, t0):
        raise NotInitial(f"{t0} is not an initial tableau of the seed")
    n = seed.n
    v = seed.classes[class_index(seed, _row(t0))[0]].offset
    out = []
    k = 0
    while True:
        entries = tuple(a + (vi + k) // n for a, vi in zip(t0.entries, v))
        if entries[-1] > r_cap:
            return out
        out.append(PathPoint(Tableau(entries), k, t0))
        k += 1


def verify_problem1(seed: SeedSpec, n: int, r_max: int, max_witnesses: int = 20) -> Report:
    """Check every tableau of B_{r_max}(n) lies in exactly one class and on exactly one path.

    Also checks that stepping along a path stays on the same path, so the
    reconstructed paths agree with the path formula.
    """
    rep = Report(f"problem1 n={n} r_max={r_max}")
    if seed.n != n:
        rep.fail(f"seed is for n={seed.n}")
        return rep
    arr = tableau_array(n, r_max).astype(np.int64)
    loc = locate(seed, arr)
    for mask, why in (
        (loc.cls == -1, "in no class"),
        (loc.cls == -2, "in several classes"),
        ((loc.cls >= 0) & (loc.matches == 0), "on no path"),
        ((loc.cls >= 0) & (loc.matches > 1), "on several paths"),
    ):
        for row in arr[mask][:max_witnesses]:
            rep.counterexample({"tableau": row.tolist(), "problem": why})
    ok = loc.ok
    nxt, _ = f_bot_batch(seed, arr, loc)
    inside = ok & (nxt[:, -1] <= r_max)
    nloc = locate(seed, nxt[inside])
    same = nloc.ok & np.all(nloc.initial == loc.initial[inside], axis=1) & (nloc.step == loc.step[inside] + 1)
    for row in arr[inside][~same][:max_witnesses]:
        rep.counterexample({"tableau": row.tolist(), "problem": "successor leaves the path"})
    rep.details.update(tableaux=int(arr.shape[0]), initial=int(np.sum(ok & (loc.step == 0))))
    return rep


# -- closed forms (oracles) -----------------------------------------------------

def f_bot_closed(t: Tableau) -> Tableau:
    """Explicit bottom operator for n = 2, 3, 4 as printed case by case."""
    e = list(t.entries)
    if t.n == 2:
        b, a = e
        e = [b + 1, a] if (a - b) % 2 == 0 else [b, a + 1]
    elif t.n == 3:
        c, b, a = e
        if (b - c) % 2 == 0 and (a - b) % 3 != 2:
            e = [c + 1, b, a]
        elif (b - c) % 2 == 1 and (a - b) % 3 != 1:
            e = [c, b + 1, a]
        else:
            e = [c, b, a + 1]
    elif t.n == 4:
        d, c, b, a = (x % 2 for x in e)
        if a == c == d:
            e[0] += 1
        elif b == c != d:
            e[1] += 1
        elif a == b != c:
            e[2] += 1
        elif a != b == d:
            e[3] += 1
        else:
            raise SeedNotPartition(f"no case of the n=4 formula applies to {t}", t)
    else:
        raise NoBuiltinSeed(f"no closed form for n={t.n}")
    return Tableau(tuple(e))


def _in_first_four(t: Tableau) -> bool:
    d, c, b, a = t.entries
    flips = ((c - d) % 2) + ((b - c) % 2) + ((a - b) % 2)
    return flips >= 2


def phi_bot_local_closed(t: Tableau) -> int:
    if t.n == 2:
        b, a = t.entries
        return int((a - b) % 2 == 0)
    if t.n == 3:
        c, b, a = t.entries
        return (2 - int((b - c) % 2 == 1) - ((a - b) % 3)) % 3
    if t.n == 4:
        d, c, b, a = t.entries
        return (
            int((a - b) % 2 == 1) + 2 * int((b - c) % 2 == 1) - int((c - d) % 2 == 1)
            - 1 - int(_in_first_four(t))
        ) % 4
    raise NoBuiltinSeed(f"no closed form for n={t.n}")


def initial_tableaux(seed: SeedSpec, r: int) -> list[Tableau]:
    arr = tableau_array(seed.n, r).astype(np.int64)
    loc = locate(seed, arr)
    return [Tableau(tuple(row)) for row in arr[loc.ok & (loc.step == 0)].tolist()]


def shift_rows(arr: np.ndarray, vec: Sequence[int]) -> np.ndarray:
    return np.asarray(arr, dtype=np.int64) + np.asarray(vec, dtype=np.int64)[None, :]

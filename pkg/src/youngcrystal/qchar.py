"""Centred q-integers, q-binomials and their decompositions into q-integers.

Characters of sl2 representations live in Z[q^(1/2), q^(-1/2)].  Exponents are
kept in half-steps: the key ``h`` stands for ``q^(h/2)``, so every polynomial
here has integer keys and no rational arithmetic is needed.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import lru_cache

INT64_MAX = 2**63 - 1


class NotUnimodal(ValueError):
    """Raised when a polynomial is not a nonnegative sum of q-integers."""


class CoefficientOverflow(OverflowError):
    """A coefficient left the signed 64-bit range."""


def _checked(c: int) -> int:
    if c > INT64_MAX or c < -INT64_MAX - 1:
        raise CoefficientOverflow(f"coefficient {c} does not fit in 64 bits")
    return c


class CenteredPoly:
    """Symmetric Laurent polynomial in q^(1/2) with nonnegative coefficients."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean = {}
        for h, c in (coeffs or {}).items():
            c = _checked(int(c))
            if c < 0:
                raise ValueError(f"negative coefficient {c} at h={h}")
            if c:
                clean[int(h)] = c
        parities = {h % 2 for h in clean}
        if len(parities) > 1:
            raise ValueError("exponents mix integer and half-integer powers")
        for h, c in clean.items():
            if clean.get(-h) != c:
                raise ValueError(f"not symmetric: coeff({h}) != coeff({-h})")
        self._coeffs = dict(sorted(clean.items()))
        self._hash = None

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def coeff(self, h: int) -> int:
        return self._coeffs.get(h, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def at_one(self) -> int:
        """Specialise at q = 1 (the dimension)."""
        return sum(self._coeffs.values())

    def span(self) -> int:
        """Largest half-step exponent present, or -1 for the zero polynomial."""
        return max(self._coeffs) if self._coeffs else -1

    def __add__(self, other: CenteredPoly) -> CenteredPoly:
        out = dict(self._coeffs)
        for h, c in other._coeffs.items():
            out[h] = _checked(out.get(h, 0) + c)
        return CenteredPoly(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CenteredPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"CenteredPoly({self._coeffs!r})"


ZERO = CenteredPoly()


@dataclass(frozen=True)
class QIntCombo:
    """A nonnegative combination sum_i d_i [i] of q-integers.

    ``parts`` maps each length ``i >= 1`` to its multiplicity ``d_i >= 1``.
    """

    parts: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, parts: Mapping[int, int] | Iterable[int]) -> QIntCombo:
        """Build from a length->multiplicity map or from a list of lengths."""
        acc: dict[int, int] = {}
        if isinstance(parts, Mapping):
            items = parts.items()
        else:
            items = ((k, 1) for k in parts)
        for length, mult in items:
            if length < 1:
                raise ValueError(f"q-integer length must be >= 1, got {length}")
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult}")
            if mult:
                acc[length] = acc.get(length, 0) + mult
        return cls(tuple(sorted(acc.items(), reverse=True)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.parts)

    def size(self) -> int:
        """Total multiplicity: the number of irreducible constituents."""
        return sum(m for _, m in self.parts)

    def dimension(self) -> int:
        return sum(k * m for k, m in self.parts)

    def lengths(self) -> list[int]:
        """Lengths with repetition, longest first."""
        return [k for k, m in self.parts for _ in range(m)]

    def expand(self) -> CenteredPoly:
        out: dict[int, int] = {}
        for k, m in self.parts:
            for h in range(-(k - 1), k, 2):
                out[h] = _checked(out.get(h, 0) + m)
        return CenteredPoly(out)

    def __add__(self, other: QIntCombo) -> QIntCombo:
        acc = self.as_dict()
        for k, m in other.parts:
            acc[k] = acc.get(k, 0) + m
        return QIntCombo.of(acc)

    def __str__(self) -> str:
        if not self.parts:
            return "0"
        return " + ".join(f"[{k}]" if m == 1 else f"{m}[{k}]" for k, m in self.parts)


def q_int(k: int) -> CenteredPoly:
    """The centred q-integer [k]; [0] is the zero polynomial."""
    if k < 0:
        raise ValueError(f"q-integer of negative length {k}")
    return CenteredPoly({h: 1 for h in range(-(k - 1), k, 2)})


@lru_cache(maxsize=None)
def _gauss_row(top: int, bottom: int) -> tuple[int, ...]:
    # coefficient list of the ordinary Gaussian binomial, via q-Pascal:
    # G(a, b) = G(a-1, b-1) + q^b G(a-1, b)
    if bottom == 0 or bottom == top:
        return (1,)
    left = _gauss_row(top - 1, bottom - 1)
    right = _gauss_row(top - 1, bottom)
    out = [0] * (bottom * (top - bottom) + 1)
    for i, c in enumerate(left):
        out[i] += c
    for i, c in enumerate(right):
        out[i + bottom] = _checked(out[i + bottom] + c)
    return tuple(out)


def q_binom(top: int, bottom: int) -> CenteredPoly:
    """Centred Gaussian binomial [top over bottom].

    Returns 1 when ``bottom == 0`` and zero when ``top < bottom``.
    """
    if top < 0 or bottom < 0:
        raise ValueError("q_binom needs nonnegative arguments")
    if bottom == 0:
        return CenteredPoly({0: 1})
    if top < bottom:
        return ZERO
    bottom = min(bottom, top - bottom)
    # fill the table bottom-up so the cache never recurses deeply
    for a in range(bottom, top + 1):
        for b in range(0, bottom + 1):
            if b <= a:
                _gauss_row(a, b)
    row = _gauss_row(top, bottom)
    shift = len(row) - 1
    return CenteredPoly({2 * e - shift: c for e, c in enumerate(row) if c})


def peel(p: CenteredPoly) -> QIntCombo:
    """Decompose ``p`` as a nonnegative sum of q-integers.

    Strips the widest q-integer spanning the current support until nothing is
    left.  Raises NotUnimodal if some step would go negative.
    """
    rest = p.coeffs
    parts: dict[int, int] = {}
    while rest:
        top = max(rest)
        mult = rest[top]
        k = top + 1
        for h in range(-top, top + 1, 2):
            c = rest.get(h, 0) - mult
            if c < 0:
                raise NotUnimodal(f"coefficient at q^({h}/2) goes negative while removing [{k}]")
            if c:
                rest[h] = c
            else:
                rest.pop(h, None)
        parts[k] = parts.get(k, 0) + mult
    return QIntCombo.of(parts)


def plus(f: QIntCombo, j: int) -> QIntCombo:
    """Shift every q-integer length of ``f`` by ``j``."""
    if j < 0:
        raise ValueError("plus operator takes a nonnegative shift")
    return QIntCombo.of({k + j: m for k, m in f.parts})


@dataclass(frozen=True)
class RecursionCheck:
    n: int
    r: int
    lhs: CenteredPoly
    rhs: CenteredPoly

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    @property
    def lhs_parts(self) -> QIntCombo:
        return peel(self.lhs)

    @property
    def rhs_parts(self) -> QIntCombo:
        return peel(self.rhs)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "equal": self.equal,
            "lhs": str(self.lhs_parts),
            "rhs": str(self.rhs_parts),
        }


def _require(r: int, n: int) -> None:
    if r < n:
        raise ValueError(f"recursion for n={n} needs r >= {n}, got {r}")


def check_recursion_n2(r: int) -> RecursionCheck:
    """[r+1 over 2] = [r over 2]_{+2} + [1] when r is odd."""
    _require(r, 2)
    rhs = plus(peel(q_binom(r, 2)), 2).expand()
    if r % 2:
        rhs = rhs + q_int(1)
    return RecursionCheck(2, r, q_binom(r + 1, 2), rhs)


def check_recursion_n3(r: int) -> RecursionCheck:
    """[r+1 over 3] = [r over 3]_{+3} + sum [r-4k-1] over 4k < r-1-2*[r odd]."""
    _require(r, 3)
    rhs = plus(peel(q_binom(r, 3)), 3).expand()
    bound = r - 1 - 2 * (r % 2)
    k = 0
    while 4 * k < bound:
        rhs = rhs + q_int(r - 4 * k - 1)
        k += 1
    return RecursionCheck(3, r, q_binom(r + 1, 3), rhs)


def check_recursion_n4(r: int) -> RecursionCheck:
    """Four-column recursion with two q-binomial tails; tails with top < 2 vanish."""
    _require(r, 4)
    even, odd = (r % 2 == 0), (r % 2 == 1)
    rhs = plus(peel(q_binom(r, 4)), 4).expand()
    k = 0
    while (top := r - 6 * k - 1 - 3 * even) >= 0:
        rhs = rhs + q_binom(top, 2)
        k += 1
    k = 0
    while (top := r - 6 * k - 4 - 3 * odd) >= 0:
        rhs = rhs + plus(peel(q_binom(top, 2)), 6).expand()
        k += 1
    return RecursionCheck(4, r, q_binom(r + 1, 4), rhs)


RECURSIONS = {2: check_recursion_n2, 3: check_recursion_n3, 4: check_recursion_n4}


def recursion_csv(checks: Iterable[RecursionCheck]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "r", "equal", "decomposition"])
    for c in checks:
        w.writerow([c.n, c.r, int(c.equal), str(c.lhs_parts)])
    return buf.getvalue()

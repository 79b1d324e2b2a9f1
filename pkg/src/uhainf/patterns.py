"""Pattern bases for highest-weight modules over the deformed algebras.

A pattern is a triangular integer array: row p (counted from the bottom,
p >= 1) holds p entries M(i, p) indexed by i in [-floor(p/2), ceil(p/2)-1].
Far enough up, every row coincides with a fixed nonincreasing boundary
sequence (the signature); the smallest such level is the stabilization
level N.  Adjacent rows interlace: each entry lies between its two upper
neighbors.  These arrays label an orthogonal-style basis of the module,
and the finite truncation V_N (all patterns stabilizing at or below N) is
finite dimensional, which is what makes exhaustive verification possible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .qnum import QValue, format_rational, parse_rational

__all__ = [
    "Signature",
    "ModuleParams",
    "CPattern",
    "WeightVector",
    "theta",
    "sign_s",
    "row_range",
    "validate",
    "l_value",
    "shift",
    "shifted_if_valid",
    "highest_weight_pattern",
    "enumerate_basis",
    "weight_of",
]


def theta(i: int) -> int:
    """1 for i >= 0, else 0."""
    return 1 if i >= 0 else 0


def sign_s(j: int, l: int, nu: int) -> int:
    """Sign factor: (-1)^nu when j = l, +1 when j < l, -1 when j > l."""
    if j == l:
        return -1 if nu else 1
    return 1 if j < l else -1


def row_range(p: int) -> range:
    """Index range of row p: i in [-floor(p/2), ceil(p/2)-1]."""
    if p < 1:
        return range(0, 0)
    return range(-(p // 2), (p + 1) // 2)


@dataclass(frozen=True)
class Signature:
    """Nonincreasing boundary sequence with constant tails outside [m, n].

    values[j] is M_{m+j}; M_i = M_m for i < m and M_i = M_n for i > n.
    """

    m: int
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.m > self.n:
            raise ValueError("window requires m <= n")
        if len(self.values) != self.n - self.m + 1:
            raise ValueError(
                f"expected {self.n - self.m + 1} values for window "
                f"[{self.m}, {self.n}], got {len(self.values)}"
            )
        if any(a < b for a, b in zip(self.values, self.values[1:])):
            raise ValueError("signature values must be nonincreasing")

    def value(self, i: int) -> int:
        if i < self.m:
            return self.values[0]
        if i > self.n:
            return self.values[-1]
        return self.values[i - self.m]

    def row(self, p: int) -> tuple[int, ...]:
        """Row p of the stabilized region: entries M_i over the row's range."""
        return tuple(self.value(i) for i in row_range(p))

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "values": list(self.values)}

    @classmethod
    def from_json(cls, data: dict) -> "Signature":
        return cls(int(data["m"]), int(data["n"]), tuple(data["values"]))


@dataclass(frozen=True)
class ModuleParams:
    """Module labels: signature, the two scalar labels, and the q setting."""

    signature: Signature
    xi0: Fraction
    xi1: Fraction
    qv: QValue
    mode: str = "a_infinity"  # "a_infinity" | "A_infinity"

    def __post_init__(self):
        object.__setattr__(self, "xi0", Fraction(self.xi0))
        object.__setattr__(self, "xi1", Fraction(self.xi1))
        if self.mode not in ("a_infinity", "A_infinity"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "A_infinity":
            sig = self.signature
            if self.xi0 != sig.value(sig.m) or self.xi1 != sig.value(sig.n):
                raise ValueError(
                    "A_infinity mode requires xi0 = M_m and xi1 = M_n"
                )


class CPattern:
    """Immutable pattern with explicit rows 1..N-1 and signature rows above.

    Rows are stored bottom-up (rows[0] is row 1).  Construction normalizes
    to the minimal stabilization level: trailing stored rows equal to the
    corresponding signature row are dropped (always keeping row 1, so
    N >= 2).  Equality and hashing are structural.
    """

    __slots__ = ("sig", "rows", "_hash")

    def __init__(self, sig: Signature, rows: Sequence[Sequence[int]]):
        rows = [tuple(int(v) for v in r) for r in rows]
        if not rows:
            rows = [sig.row(1)]
        for p, r in enumerate(rows, start=1):
            if len(r) != p:
                raise ValueError(f"row {p} must have {p} entries, got {len(r)}")
        while len(rows) > 1 and rows[-1] == sig.row(len(rows)):
            rows.pop()
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "_hash", hash((sig, self.rows)))

    def __setattr__(self, name, value):
        raise AttributeError("CPattern is immutable")

    @property
    def N(self) -> int:
        """Stabilization level: rows at and above N equal the signature."""
        return len(self.rows) + 1

    def row(self, p: int) -> tuple[int, ...]:
        if p <= len(self.rows):
            return self.rows[p - 1]
        return self.sig.row(p)

    def entry(self, i: int, p: int) -> int:
        if p <= len(self.rows):
            r = self.rows[p - 1]
        else:
            return self.sig.value(i)
        pos = i + p // 2
        if not 0 <= pos < p:
            raise IndexError(f"index {i} outside row {p}")
        return r[pos]

    def l_value(self, i: int, p: int) -> int:
        return self.entry(i, p) - i

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CPattern)
            and self._hash == other._hash
            and self.sig == other.sig
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"CPattern(N={self.N}, rows={list(self.rows)})"

    def sort_key(self, level: int) -> tuple:
        """Deterministic ordering key: rows top-down from the given level."""
        return tuple(self.row(p) for p in range(level - 1, 0, -1))

    def to_json(self) -> dict:
        return {
            "signature": self.sig.to_json(),
            "N": self.N,
            "rows": [list(r) for r in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CPattern":
        return cls(Signature.from_json(data["signature"]), data["rows"])


def validate(p: CPattern) -> bool:
    """Full interlacing check against all stored rows and the row above them."""
    for row_p in range(1, p.N):
        for i in row_range(row_p):
            v = p.entry(i, row_p)
            if row_p % 2:  # odd row: upper neighbors i-1 and i
                hi, lo = i - 1, i
            else:  # even row: upper neighbors i and i+1
                hi, lo = i, i + 1
            if not p.entry(hi, row_p + 1) >= v >= p.entry(lo, row_p + 1):
                return False
    return True


def l_value(p: CPattern, i: int, row: int) -> int:
    return p.l_value(i, row)


def shift(p: CPattern, moves: Sequence[tuple[int, int, int]]) -> CPattern:
    """Apply entry replacements M(i, row) -> M(i, row) + delta, no validation.

    Rows at or above the stabilization level are materialized as needed.
    """
    if not moves:
        return p
    top = max(len(p.rows), max(row for _, row, _ in moves))
    rows = [list(p.row(q)) for q in range(1, top + 1)]
    for i, row, delta in moves:
        pos = i + row // 2
        if not 0 <= pos < row:
            raise IndexError(f"index {i} outside row {row}")
        rows[row - 1][pos] += delta
    return CPattern(p.sig, rows)


def _entry_ok(p: CPattern, i: int, row_p: int) -> bool:
    if row_p % 2:
        hi, lo = i - 1, i
    else:
        hi, lo = i, i + 1
    v = p.entry(i, row_p)
    return p.entry(hi, row_p + 1) >= v >= p.entry(lo, row_p + 1)


def shifted_if_valid(
    p: CPattern, moves: Sequence[tuple[int, int, int]]
) -> Optional[CPattern]:
    """Shift and validate locally; returns None if the result interlaces badly.

    Assumes p itself is valid, so only constraints touching a moved entry
    need rechecking: the moved entry against the row above it, and the
    entries one row below whose upper neighbors include the moved slot.
    """
    cand = shift(p, moves)
    checks: set[tuple[int, int]] = set()
    for i, row, _ in moves:
        checks.add((i, row))
        below = row - 1
        if below >= 1:
            # entries of the row below having (i, row) as a neighbor
            if below % 2:
                lower = (i + 1, i)
            else:
                lower = (i, i - 1)
            rng = row_range(below)
            for i2 in lower:
                if i2 in rng:
                    checks.add((i2, below))
    for i, row in sorted(checks):
        if not _entry_ok(cand, i, row):
            return None
    return cand


def highest_weight_pattern(sig: Signature) -> CPattern:
    """The pattern with every row equal to the signature."""
    return CPattern(sig, [sig.row(1)])


def enumerate_basis(sig: Signature, N: int) -> list[CPattern]:
    """All valid patterns with stabilization level <= N, in deterministic order.

    Rows are filled top-down: given row p+1, each entry of row p ranges over
    the integer interval between its upper neighbors, independently of its
    row-mates.  The order is lexicographic in (row N-1, row N-2, ..., row 1)
    with entries compared left to right.
    """
    if N < 2:
        raise ValueError("N must exceed 1")
    out: list[CPattern] = []

    def fill(p: int, upper_rows: list[tuple[int, ...]]):
        # upper_rows holds rows N-1 down to p+1; row p+1 is upper_rows[-1]
        above = upper_rows[-1] if upper_rows else sig.row(N)
        row_above_level = p + 1
        ranges = []
        for i in row_range(p):
            if p % 2:
                hi, lo = i - 1, i
            else:
                hi, lo = i, i + 1
            off = row_above_level // 2
            hi_v = above[hi + off]
            lo_v = above[lo + off]
            ranges.append(range(lo_v, hi_v + 1))
        for combo in itertools.product(*ranges):
            if p == 1:
                rows_bottom_up = [combo] + [
                    upper_rows[len(upper_rows) - 1 - q] for q in range(len(upper_rows))
                ]
                out.append(CPattern(sig, rows_bottom_up))
            else:
                fill(p - 1, upper_rows + [combo])

    fill(N - 1, [])
    return out


@dataclass(frozen=True)
class WeightVector:
    """Eigenvalues of the diagonal generators over an index window."""

    window: tuple[int, int]
    eigenvalues: dict = field(hash=False)

    def to_json(self) -> dict:
        return {
            "window": list(self.window),
            "eigenvalues": {str(i): format_rational(v) for i, v in self.eigenvalues.items()},
        }


def _row_sum(p: CPattern, row: int) -> int:
    return sum(p.row(row)) if row >= 1 else 0


def weight_eigenvalue(p: CPattern, i: int, params: ModuleParams) -> Fraction:
    """Diagonal action at index i: difference of two adjacent row sums plus
    the label corrections."""
    hi_row = 2 * abs(i) + theta(i)
    val = Fraction(_row_sum(p, hi_row) - _row_sum(p, hi_row - 1))
    return val + (params.xi1 - params.xi0) * theta(-i) - params.xi1


def weight_of(p: CPattern, params: ModuleParams, window: tuple[int, int]) -> WeightVector:
    lo, hi = window
    return WeightVector(
        window=(lo, hi),
        eigenvalues={i: weight_eigenvalue(p, i, params) for i in range(lo, hi + 1)},
    )

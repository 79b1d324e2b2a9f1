"""Exact scalar arithmetic: rationals, q-brackets, and canonical radical sums.

All quantities in this package bottom out in :class:`fractions.Fraction`
(arbitrary precision, always in lowest terms with positive denominator) and
in :class:`RadicalSum`, a finite sum ``sum_i c_i * sqrt(k_i)`` with rational
coefficients ``c_i`` and distinct squarefree integer kernels ``k_i``.  Since
square roots of distinct squarefree integers are linearly independent over
the rationals, a RadicalSum is zero exactly when it has no terms, which makes
every verification verdict in this package decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, getcontext
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Mapping, Optional, Union

Rational = Fraction
RationalLike = Union[Fraction, int]

__all__ = [
    "Rational",
    "QValue",
    "RadicalSum",
    "InvalidQValueError",
    "NegativeRadicandError",
    "qbracket",
    "radical_of",
    "radsum_add",
    "radsum_mul",
    "radsum_is_zero",
    "parse_rational",
    "format_rational",
]


class InvalidQValueError(ValueError):
    """Raised when a quantum deformation parameter is 0, 1 or -1."""


class NegativeRadicandError(ValueError):
    """Raised when a square root of a negative rational is requested."""


@dataclass(frozen=True)
class QValue:
    """Deformation parameter: either a fixed rational q, or the classical limit.

    A rational q with ``|q| not in {0, 1}`` is never a root of unity, so
    q-brackets of nonzero integers never vanish.  In classical mode the
    bracket of x is x itself.
    """

    mode: str  # "quantum" | "classical"
    q: Optional[Fraction] = None

    def __post_init__(self):
        if self.mode == "quantum":
            if self.q is None:
                raise InvalidQValueError("quantum mode requires a rational q")
            object.__setattr__(self, "q", Fraction(self.q))
            if self.q in (0, 1, -1):
                raise InvalidQValueError(f"q must not be 0, 1 or -1 (got {self.q})")
        elif self.mode == "classical":
            if self.q is not None:
                raise InvalidQValueError("classical mode takes no q")
        else:
            raise InvalidQValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def quantum(cls, q: RationalLike) -> "QValue":
        return cls("quantum", Fraction(q))

    @classmethod
    def classical(cls) -> "QValue":
        return cls("classical")

    @property
    def is_classical(self) -> bool:
        return self.mode == "classical"


def qbracket(x: int, qv: QValue) -> Fraction:
    """The q-bracket of an integer: (q^x - q^-x) / (q - q^-1), or x classically."""
    if qv.is_classical:
        return Fraction(x)
    q = qv.q
    if x == 0:
        return Fraction(0)
    # (q^x - q^-x)/(q - q^-1) = (q^(2x) - 1) / (q^(x-1) * (q^2 - 1))
    return (q ** (2 * x) - 1) / (q ** (x - 1) * (q * q - 1))


# --- squarefree decomposition -------------------------------------------------

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]

_square_cache: dict[int, tuple[int, int]] = {}


def _square_decompose(n: int) -> tuple[int, int]:
    """Write n > 0 as s^2 * k with k squarefree; returns (s, k)."""
    if n <= 0:
        raise ValueError("positive integer required")
    cached = _square_cache.get(n)
    if cached is not None:
        return cached
    s, k, rem = 1, 1, n
    for p in _SMALL_PRIMES:
        if p * p > rem:
            break
        e = 0
        while rem % p == 0:
            rem //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            k *= p
    if rem > 1:
        r = isqrt(rem)
        if r * r == rem:
            s *= r
        else:
            # The small-prime table is not enough; fall back to a full
            # factorization (sympy handles the occasional large cofactor).
            from sympy import factorint

            for p, e in factorint(rem).items():
                s *= int(p) ** (e // 2)
                if e % 2:
                    k *= int(p)
    if len(_square_cache) < 1 << 16:
        _square_cache[n] = (s, k)
    return s, k


class RadicalSum:
    """Canonical finite sum of rational multiples of square roots.

    Stored as a mapping from squarefree kernel (a positive integer; kernel 1
    is the rational part) to a nonzero rational coefficient.  Instances are
    immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]] = ()):
        items = dict(terms)
        for k, c in list(items.items()):
            if k < 1:
                raise ValueError(f"kernel must be a positive integer (got {k})")
            if c == 0:
                del items[k]
        self._terms = dict(sorted(items.items()))
        self._hash = hash(tuple(self._terms.items()))

    # -- constructors --

    @classmethod
    def zero(cls) -> "RadicalSum":
        return _ZERO

    @classmethod
    def from_rational(cls, r: RationalLike) -> "RadicalSum":
        r = Fraction(r)
        return cls({1: r}) if r else _ZERO

    @classmethod
    def single(cls, coeff: RationalLike, kernel: int) -> "RadicalSum":
        """One term coeff*sqrt(kernel); kernel need not be squarefree."""
        coeff = Fraction(coeff)
        if coeff == 0:
            return _ZERO
        s, k = _square_decompose(kernel)
        return cls({k: coeff * s})

    # -- predicates --

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(k == 1 for k in self._terms)

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    # -- arithmetic --

    def __add__(self, other: "RadicalSum") -> "RadicalSum":
        if not self._terms:
            return other
        if not other._terms:
            return self
        merged = dict(self._terms)
        for k, c in other._terms.items():
            nc = merged.get(k, Fraction(0)) + c
            if nc:
                merged[k] = nc
            else:
                merged.pop(k, None)
        return RadicalSum(merged)

    def __neg__(self) -> "RadicalSum":
        return RadicalSum({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "RadicalSum") -> "RadicalSum":
        return self + (-other)

    def __mul__(self, other: "RadicalSum") -> "RadicalSum":
        if not self._terms or not other._terms:
            return _ZERO
        out: dict[int, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                # sqrt(k1)*sqrt(k2) = g*sqrt(k1*k2/g^2) with g = gcd(k1, k2);
                # the cofactors are coprime and squarefree, so no factoring.
                g = gcd(k1, k2)
                k = (k1 // g) * (k2 // g)
                c = c1 * c2 * g
                nc = out.get(k, Fraction(0)) + c
                if nc:
                    out[k] = nc
                else:
                    out.pop(k, None)
        return RadicalSum(out)

    def scale(self, r: RationalLike) -> "RadicalSum":
        r = Fraction(r)
        if r == 0:
            return _ZERO
        return RadicalSum({k: c * r for k, c in self._terms.items()})

    def inverse(self) -> "RadicalSum":
        """Multiplicative inverse; only supported for single-term sums."""
        if len(self._terms) != 1:
            raise ZeroDivisionError("inverse of a non-monomial RadicalSum")
        ((k, c),) = self._terms.items()
        return RadicalSum({k: Fraction(1, 1) / (c * k)})

    # -- comparisons and rendering --

    def __eq__(self, other) -> bool:
        return isinstance(other, RadicalSum) and self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "RadicalSum(0)"
        parts = []
        for k, c in self._terms.items():
            parts.append(str(c) if k == 1 else f"{c}*sqrt({k})")
        return "RadicalSum(" + " + ".join(parts) + ")"

    def to_decimal(self, digits: int = 50) -> str:
        ctx_prec = digits + 10
        getcontext().prec = ctx_prec
        total = Decimal(0)
        for k, c in self._terms.items():
            val = Decimal(c.numerator) / Decimal(c.denominator)
            if k != 1:
                val *= Decimal(k).sqrt()
            total += val
        return str(+total.quantize(Decimal(1).scaleb(-digits)) if False else +total)

    def to_json(self, decimal_digits: Optional[int] = None) -> list | dict:
        arr = [
            {"coeff": format_rational(c), "kernel": k} for k, c in self._terms.items()
        ]
        if decimal_digits is None:
            return arr
        return {"terms": arr, "decimal": self.to_decimal(decimal_digits)}

    @classmethod
    def from_json(cls, data) -> "RadicalSum":
        arr = data["terms"] if isinstance(data, dict) else data
        return cls({int(t["kernel"]): parse_rational(t["coeff"]) for t in arr})


_ZERO = RadicalSum()


def radical_of(r: RationalLike) -> RadicalSum:
    """Canonical form of sqrt(r) for a nonnegative rational r.

    With r = a/b in lowest terms and a*b = k*s^2 (k squarefree), the result
    is (s/b)*sqrt(k).
    """
    r = Fraction(r)
    if r < 0:
        raise NegativeRadicandError(f"negative radicand {r}")
    if r == 0:
        return _ZERO
    a, b = r.numerator, r.denominator
    s, k = _square_decompose(a * b)
    return RadicalSum({k: Fraction(s, b)})


def radsum_add(a: RadicalSum, b: RadicalSum) -> RadicalSum:
    return a + b


def radsum_mul(a: RadicalSum, b: RadicalSum) -> RadicalSum:
    return a * b


def radsum_is_zero(a: RadicalSum) -> bool:
    return a.is_zero()


# --- rational serialization ---------------------------------------------------

def format_rational(r: RationalLike) -> str:
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)

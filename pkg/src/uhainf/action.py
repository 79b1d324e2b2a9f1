"""Generator actions on patterns and on finite linear combinations.

The lowering/raising generators move one entry in an odd row and one in the
even row directly above it by +-1; the coefficient is a square root of an
absolute value of a product/quotient of q-brackets of L-differences, where
L(i, p) = M(i, p) - i.  Candidate targets that break the interlacing
conditions are dropped (their coefficients are the ill-defined ones), which
is realized here by validating the shifted array before any arithmetic.
The index-(-1) pair acts on the single bottom entry with a two-bracket
coefficient and no sign factor.  Diagonal generators multiply the pattern
by an exact rational eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .qnum import QValue, RadicalSum, qbracket, radical_of
from .patterns import (
    CPattern,
    ModuleParams,
    row_range,
    shifted_if_valid,
    sign_s,
    weight_eigenvalue,
)

__all__ = [
    "GeneratorLabel",
    "PatternVector",
    "ZeroDenominatorError",
    "apply_generator",
    "apply_to_vector",
    "apply_word",
    "clear_caches",
]


class ZeroDenominatorError(ArithmeticError):
    """A coefficient denominator vanished on a valid target: a bug signal."""


@dataclass(frozen=True)
class GeneratorLabel:
    """One of the generators: E/F carry an integer index, H too; C has none."""

    kind: str  # "E" | "F" | "H" | "C"
    index: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("E", "F", "H", "C"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == "C":
            if self.index is not None:
                raise ValueError("C carries no index")
        elif self.index is None:
            raise ValueError(f"{self.kind} requires an index")

    def __str__(self) -> str:
        return self.kind if self.kind == "C" else f"{self.kind}_{self.index}"


class PatternVector:
    """Finite linear combination of patterns with RadicalSum coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        t = {}
        if terms:
            for p, c in terms.items():
                if c:
                    t[p] = c
        self.terms = t

    @classmethod
    def zero(cls) -> "PatternVector":
        return cls()

    @classmethod
    def unit(cls, p: CPattern) -> "PatternVector":
        return cls({p: RadicalSum.from_rational(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def add_term(self, p: CPattern, c: RadicalSum) -> None:
        if not c:
            return
        cur = self.terms.get(p)
        new = cur + c if cur is not None else c
        if new:
            self.terms[p] = new
        else:
            del self.terms[p]

    def __add__(self, other: "PatternVector") -> "PatternVector":
        out = PatternVector(dict(self.terms))
        for p, c in other.terms.items():
            out.add_term(p, c)
        return out

    def __sub__(self, other: "PatternVector") -> "PatternVector":
        out = PatternVector(dict(self.terms))
        for p, c in other.terms.items():
            out.add_term(p, -c)
        return out

    def __neg__(self) -> "PatternVector":
        return PatternVector({p: -c for p, c in self.terms.items()})

    def scale(self, c: RadicalSum) -> "PatternVector":
        if not c:
            return PatternVector()
        return PatternVector({p: v * c for p, v in self.terms.items()})

    def scale_rational(self, r) -> "PatternVector":
        return self.scale(RadicalSum.from_rational(Fraction(r)))

    def __eq__(self, other) -> bool:
        return isinstance(other, PatternVector) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "PatternVector(0)"
        return "PatternVector(" + ", ".join(
            f"{c!r}*{p!r}" for p, c in self.terms.items()
        ) + ")"

    def to_json(self, basis_level: int = 2, decimal_digits: Optional[int] = None) -> list:
        if not self.terms:
            return []
        level = max(basis_level, max(p.N for p in self.terms))
        items = sorted(self.terms.items(), key=lambda pc: pc[0].sort_key(level))
        return [
            {"pattern": p.to_json(), "coeff": c.to_json(decimal_digits)}
            for p, c in items
        ]


_bracket_cache: dict = {}


def _br(x: int, qv: QValue) -> Fraction:
    key = (qv, x)
    v = _bracket_cache.get(key)
    if v is None:
        v = qbracket(x, qv)
        _bracket_cache[key] = v
    return v


# Offsets for the four ladder cases, keyed by (kind, is_negative_side):
# (o1, d1, o2, d2, delta).  o1/o2 shift the numerator bracket arguments of
# the two square-root factors, d1/d2 the second denominator bracket, delta
# is the entry shift applied at both target slots.
_CASES = {
    ("E", False): (-1, -1, 0, -1, +1),
    ("F", False): (0, +1, +1, +1, -1),
    ("E", True): (+1, +1, 0, +1, -1),
    ("F", True): (0, -1, -1, -1, +1),
}


def _ladder_action(
    kind: str, index: int, p: CPattern, params: ModuleParams
) -> PatternVector:
    qv = params.qv
    out = PatternVector()

    if index == -1:
        # bottom-entry action: single candidate, no sign factor
        delta = -1 if kind == "E" else +1
        target = shifted_if_valid(p, [(0, 1, delta)])
        if target is None:
            return out
        l01 = p.l_value(0, 1)
        if kind == "E":
            prod = _br(p.l_value(-1, 2) - l01, qv) * _br(l01 - p.l_value(0, 2), qv)
        else:
            prod = _br(p.l_value(-1, 2) - l01 - 1, qv) * _br(
                l01 - p.l_value(0, 2) + 1, qv
            )
        out.add_term(target, radical_of(abs(prod)))
        return out

    if index >= 0:
        k = index
        below, row_a, row_b, above = 2 * k, 2 * k + 1, 2 * k + 2, 2 * k + 3
        nu = 0
        case = _CASES[(kind, False)]
    else:
        k = -index  # k >= 2 here
        below, row_a, row_b, above = 2 * k - 3, 2 * k - 2, 2 * k - 1, 2 * k
        nu = 1
        case = _CASES[(kind, True)]
    o1, d1, o2, d2, delta = case

    la = {i: p.l_value(i, row_a) for i in row_range(row_a)}
    lb = {i: p.l_value(i, row_b) for i in row_range(row_b)}
    lbelow = [p.l_value(i, below) for i in row_range(below)]
    labove = [p.l_value(i, above) for i in row_range(above)]

    for j in row_range(row_a):
        for l in row_range(row_b):
            target = shifted_if_valid(p, [(j, row_a, delta), (l, row_b, delta)])
            if target is None:
                continue
            lj, ll = la[j], lb[l]
            num = Fraction(1)
            for i, v in lb.items():
                if i != l:
                    num *= _br(v - lj + o1, qv)
            for v in lbelow:
                num *= _br(v - lj + o1, qv)
            for v in labove:
                num *= _br(v - ll + o2, qv)
            for i, v in la.items():
                if i != j:
                    num *= _br(v - ll + o2, qv)
            if not num:
                continue
            den = Fraction(1)
            for i, v in la.items():
                if i != j:
                    den *= _br(v - lj, qv) * _br(v - lj + d1, qv)
            for i, v in lb.items():
                if i != l:
                    den *= _br(v - ll, qv) * _br(v - ll + d2, qv)
            if not den:
                raise ZeroDenominatorError(
                    f"{kind}_{index}: zero denominator on valid target "
                    f"(j={j}, l={l}) of {p!r}"
                )
            coeff = radical_of(abs(num / den)).scale(-sign_s(j, l, nu))
            out.add_term(target, coeff)
    return out


def deletion_diagnostics(
    kind: str, index: int, p: CPattern, params: ModuleParams
) -> list[tuple[int, int, bool, bool, bool]]:
    """Per-candidate view of the deletion convention for a ladder generator.

    Returns (j, l, target_valid, numerator_zero, denominator_zero) for every
    candidate target, evaluating the coefficient products unconditionally.
    Used by the verification suite to confirm that skipped targets are
    exactly the ill-defined ones: valid targets never divide by zero, and
    invalid targets always have a vanishing numerator or denominator.
    """
    if index == -1:
        raise ValueError("the index -1 action has a single explicit candidate")
    qv = params.qv
    if index >= 0:
        k = index
        below, row_a, row_b, above = 2 * k, 2 * k + 1, 2 * k + 2, 2 * k + 3
        case = _CASES[(kind, False)]
    else:
        k = -index
        below, row_a, row_b, above = 2 * k - 3, 2 * k - 2, 2 * k - 1, 2 * k
        case = _CASES[(kind, True)]
    o1, d1, o2, d2, delta = case
    la = {i: p.l_value(i, row_a) for i in row_range(row_a)}
    lb = {i: p.l_value(i, row_b) for i in row_range(row_b)}
    lbelow = [p.l_value(i, below) for i in row_range(below)]
    labove = [p.l_value(i, above) for i in row_range(above)]
    out = []
    for j in row_range(row_a):
        for l in row_range(row_b):
            valid = (
                shifted_if_valid(p, [(j, row_a, delta), (l, row_b, delta)])
                is not None
            )
            lj, ll = la[j], lb[l]
            num = Fraction(1)
            for i, v in lb.items():
                if i != l:
                    num *= _br(v - lj + o1, qv)
            for v in lbelow:
                num *= _br(v - lj + o1, qv)
            for v in labove:
                num *= _br(v - ll + o2, qv)
            for i, v in la.items():
                if i != j:
                    num *= _br(v - ll + o2, qv)
            den = Fraction(1)
            for i, v in la.items():
                if i != j:
                    den *= _br(v - lj, qv) * _br(v - lj + d1, qv)
            for i, v in lb.items():
                if i != l:
                    den *= _br(v - ll, qv) * _br(v - ll + d2, qv)
            out.append((j, l, valid, num == 0, den == 0))
    return out


_action_cache: dict = {}


def apply_generator(
    g: GeneratorLabel, p: CPattern, params: ModuleParams
) -> PatternVector:
    """Action of a single generator on a basis pattern (memoized)."""
    key = (g, p, params)
    cached = _action_cache.get(key)
    if cached is not None:
        return cached
    if g.kind == "H":
        coeff = weight_eigenvalue(p, g.index, params)
        result = PatternVector({p: RadicalSum.from_rational(coeff)})
    elif g.kind == "C":
        result = PatternVector(
            {p: RadicalSum.from_rational(params.xi0 - params.xi1)}
        )
    else:
        result = _ladder_action(g.kind, g.index, p, params)
    if len(_action_cache) < 1 << 20:
        _action_cache[key] = result
    return result


def apply_to_vector(
    g: GeneratorLabel, v: PatternVector, params: ModuleParams
) -> PatternVector:
    """Linear extension of apply_generator."""
    out = PatternVector()
    for p, c in v.terms.items():
        image = apply_generator(g, p, params)
        for p2, c2 in image.terms.items():
            out.add_term(p2, c2 * c)
    return out


def apply_word(
    word, p: CPattern, params: ModuleParams
) -> PatternVector:
    """Apply a product of generators, rightmost factor first."""
    v = PatternVector.unit(p)
    for g in reversed(list(word)):
        if v.is_zero():
            break
        v = apply_to_vector(g, v, params)
    return v


def clear_caches() -> None:
    _action_cache.clear()
    _bracket_cache.clear()

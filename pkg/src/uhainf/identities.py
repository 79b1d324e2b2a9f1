"""Exact evaluators and a seeded fuzzer for the q-bracket identity corpus.

Each identity is a rational-function identity in q and a handful of integer
(or nonzero rational) slots.  Evaluation is exact: the result is a Fraction
that must be zero at every generic assignment.  Assignments where some
denominator bracket vanishes are poles; they raise PoleError and the fuzzer
rejects and resamples them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .qnum import QValue, qbracket
from .relations import CheckReport

__all__ = [
    "IDENTITY_TAGS",
    "IdentityId",
    "Assignment",
    "PoleError",
    "evaluate_identity",
    "random_generic_assignment",
    "fuzz_identity",
    "a21_assignment_from_i23a",
    "a26_assignment_from_i24a",
    "a26_assignment_from_i24c",
]

IDENTITY_TAGS = (
    "I23a", "I23b", "I24a", "I24b", "I24c", "I24d",
    "I25", "I26", "I27", "A21", "A26", "A46L", "A46R",
)

# identities whose size parameter is meaningful, with allowed minimum
_SIZED = {
    "I23a": 1, "I23b": 1, "I24a": 2, "I24b": 1, "I24c": 2, "I24d": 1,
    "A21": 2, "A26": 2,
}


class PoleError(ArithmeticError):
    """An assignment hit a vanishing denominator; it is not generic."""


@dataclass(frozen=True)
class IdentityId:
    tag: str
    size: Optional[int] = None

    def __post_init__(self):
        if self.tag not in IDENTITY_TAGS:
            raise ValueError(f"unknown identity tag {self.tag!r}")
        if self.tag in _SIZED:
            if self.size is None or self.size < _SIZED[self.tag]:
                raise ValueError(
                    f"{self.tag} requires size >= {_SIZED[self.tag]}"
                )
        elif self.size is not None:
            raise ValueError(f"{self.tag} takes no size parameter")


@dataclass
class Assignment:
    """Concrete values for an identity's slots.

    scalars: named integers (a, b, c, d, e).  arrays: named integer rows
    (the L-rows of the sum identities) or nonzero rationals (the
    multiplicative variables of the product-form identities).
    excluded: identity-specific removed labels.
    """

    qv: QValue
    scalars: dict = field(default_factory=dict)
    arrays: dict = field(default_factory=dict)
    excluded: dict = field(default_factory=dict)


def _div(num: Fraction, den: Fraction, what: str) -> Fraction:
    if den == 0:
        raise PoleError(f"vanishing denominator: {what}")
    return num / den


# --- L-row helpers -------------------------------------------------------
# Sum identities use four consecutive rows of L-values.  Rows are stored as
# dicts {index: value} over the same index ranges patterns use:
# row p covers [-floor(p/2), ceil(p/2)-1].


def _row_indices(p: int) -> range:
    return range(-(p // 2), (p + 1) // 2)


def _as_row(p: int, values) -> dict:
    idx = list(_row_indices(p))
    if len(values) != len(idx):
        raise ValueError(f"row {p} needs {len(idx)} values, got {len(values)}")
    return dict(zip(idx, values))


def _eval_i23a(a: Assignment, k: int) -> Fraction:
    br = lambda x: qbracket(x, a.qv)
    rD = _as_row(2 * k - 2, a.arrays["row_below"])
    rA = _as_row(2 * k - 1, a.arrays["row_a"])
    rB = _as_row(2 * k, a.arrays["row_b"])
    rC = _as_row(2 * k + 1, a.arrays["row_above"])
    lhs = Fraction(0)
    for s in (0, 1):
        for j, lj in rA.items():
            den1 = Fraction(1)
            for i, v in rA.items():
                if i != j:
                    den1 *= br(v - lj + s) * br(v - lj + s - 1)
            num1b = Fraction(1)
            for v in rD.values():
                num1b *= br(v - lj + s - 1)
            for l, ll in rB.items():
                num1 = num1b
                for i, v in rB.items():
                    if i != l:
                        num1 *= br(v - lj + s - 1)
                num2 = Fraction(1)
                for v in rC.values():
                    num2 *= br(v - ll + s)
                for i, v in rA.items():
                    if i != j:
                        num2 *= br(v - ll + s)
                den2 = Fraction(1)
                for i, v in rB.items():
                    if i != l:
                        den2 *= br(v - ll + s) * br(v - ll + s - 1)
                term = _div(num1, den1, f"I23a den1 (s={s}, j={j})")
                term *= _div(num2, den2, f"I23a den2 (s={s}, l={l})")
                lhs += (-1) ** s * term
    rhs = br(
        sum(rA.values()) - sum(rD.values()) - sum(rC.values()) + sum(rB.values()) - 1
    )
    return lhs - rhs


def _eval_i23b(a: Assignment, k: int) -> Fraction:
    br = lambda x: qbracket(x, a.qv)
    rD = _as_row(2 * k - 1, a.arrays["row_below"])
    rA = _as_row(2 * k, a.arrays["row_a"])
    rB = _as_row(2 * k + 1, a.arrays["row_b"])
    rC = _as_row(2 * k + 2, a.arrays["row_above"])
    lhs = Fraction(0)
    for s in (0, 1):
        for j, lj in rA.items():
            den1 = Fraction(1)
            for i, v in rA.items():
                if i != j:
                    den1 *= br(v - lj - s) * br(v - lj - s + 1)
            num1b = Fraction(1)
            for v in rD.values():
                num1b *= br(v - lj - s + 1)
            for l, ll in rB.items():
                num1 = num1b
                for i, v in rB.items():
                    if i != l:
                        num1 *= br(v - lj - s + 1)
                num2 = Fraction(1)
                for v in rC.values():
                    num2 *= br(v - ll - s)
                for i, v in rA.items():
                    if i != j:
                        num2 *= br(v - ll - s)
                den2 = Fraction(1)
                for i, v in rB.items():
                    if i != l:
                        den2 *= br(v - ll - s) * br(v - ll - s + 1)
                term = _div(num1, den1, f"I23b den1 (s={s}, j={j})")
                term *= _div(num2, den2, f"I23b den2 (s={s}, l={l})")
                lhs += (-1) ** s * term
    rhs = br(
        sum(rC.values()) - sum(rB.values()) - sum(rA.values()) + sum(rD.values()) - 1
    )
    return lhs - rhs


def _eval_i24a(a: Assignment, k: int) -> Fraction:
    # sum over the middle even row; two labels removed from the odd row below
    br = lambda x: qbracket(x, a.qv)
    rA = _as_row(2 * k - 1, a.arrays["row_a"])
    rB = _as_row(2 * k, a.arrays["row_b"])
    rC = _as_row(2 * k + 1, a.arrays["row_above"])
    j, m = a.excluded["labels"]
    total = Fraction(0)
    for s in (0, 1):
        for l, ll in rB.items():
            num = Fraction(1)
            for v in rC.values():
                num *= br(v - ll + s)
            for i, v in rA.items():
                if i not in (j, m):
                    num *= br(v - ll + s)
            den = Fraction(1)
            for i, v in rB.items():
                if i != l:
                    den *= br(v - ll + s) * br(v - ll + s - 1)
            total += (-1) ** s * _div(num, den, f"I24a den (s={s}, l={l})")
    return total


def _eval_i24b(a: Assignment, k: int) -> Fraction:
    br = lambda x: qbracket(x, a.qv)
    rA = _as_row(2 * k, a.arrays["row_a"])
    rB = _as_row(2 * k + 1, a.arrays["row_b"])
    rC = _as_row(2 * k + 2, a.arrays["row_above"])
    j, m = a.excluded["labels"]
    total = Fraction(0)
    for s in (0, 1):
        for l, ll in rB.items():
            num = Fraction(1)
            for v in rC.values():
                num *= br(v - ll - s)
            for i, v in rA.items():
                if i not in (j, m):
                    num *= br(v - ll - s)
            den = Fraction(1)
            for i, v in rB.items():
                if i != l:
                    den *= br(v - ll - s) * br(v - ll - s + 1)
            total += (-1) ** s * _div(num, den, f"I24b den (s={s}, l={l})")
    return total


def _eval_i24c(a: Assignment, k: int) -> Fraction:
    br = lambda x: qbracket(x, a.qv)
    rD = _as_row(2 * k - 2, a.arrays["row_below"])
    rA = _as_row(2 * k - 1, a.arrays["row_a"])
    rB = _as_row(2 * k, a.arrays["row_b"])
    l, qx = a.excluded["labels"]
    total = Fraction(0)
    for s in (0, 1):
        for j, lj in rA.items():
            num = Fraction(1)
            for v in rD.values():
                num *= br(v - lj - s)
            for r, v in rB.items():
                if r not in (l, qx):
                    num *= br(v - lj - s)
            den = Fraction(1)
            for r, v in rA.items():
                if r != j:
                    den *= br(v - lj - s) * br(v - lj - s + 1)
            total += (-1) ** s * _div(num, den, f"I24c den (s={s}, j={j})")
    return total


def _eval_i24d(a: Assignment, k: int) -> Fraction:
    br = lambda x: qbracket(x, a.qv)
    rD = _as_row(2 * k - 1, a.arrays["row_below"])
    rA = _as_row(2 * k, a.arrays["row_a"])
    rB = _as_row(2 * k + 1, a.arrays["row_b"])
    l, qx = a.excluded["labels"]
    total = Fraction(0)
    for s in (0, 1):
        for j, lj in rA.items():
            num = Fraction(1)
            for i, v in rB.items():
                if i not in (l, qx):
                    num *= br(v - lj + s)
            for v in rD.values():
                num *= br(v - lj + s)
            den = Fraction(1)
            for i, v in rA.items():
                if i != j:
                    den *= br(v - lj + s) * br(v - lj + s - 1)
            total += (-1) ** s * _div(num, den, f"I24d den (s={s}, j={j})")
    return total


def _eval_i25(a: Assignment) -> Fraction:
    br = lambda x: qbracket(x, a.qv)
    sa, sb, sc, sd, se = (a.scalars[x] for x in "abcde")
    p1 = (
        br(sa - sb - 1) * br(sc - sb - 1)
        - br(2) * br(sa - sb) * br(sc - sb - 1)
        + br(sa - sb) * br(sc - sb)
    )
    q1 = _div(br(sa - sd) * br(sc - se - 1),
              br(sd - se - 1) * br(sc - sa - 1), "I25 [d-e-1][c-a-1]")
    q1 += _div(br(sc - sd - 1) * br(sa - se),
               br(sd - se + 1) * br(sc - sa - 1), "I25 [d-e+1][c-a-1]")
    q2 = _div(br(sa - se - 1) * br(sc - sd),
              br(sd - se - 1) * br(sc - sa + 1), "I25 [d-e-1][c-a+1]")
    q2 += _div(br(sa - sd - 1) * br(sc - se),
               br(sd - se + 1) * br(sc - sa + 1), "I25 [d-e+1][c-a+1]")
    p2 = (
        br(sa - sb - 1) * br(sc - sb - 1)
        - br(2) * br(sa - sb - 1) * br(sc - sb)
        + br(sa - sb) * br(sc - sb)
    )
    return p1 * q1 + q2 * p2


def _eval_i26(a: Assignment) -> Fraction:
    br = lambda x: qbracket(x, a.qv)
    sa, sb = a.scalars["a"], a.scalars["b"]
    t1 = _div(
        br(sa - 1) * br(sb - 1) - br(2) * br(sa) * br(sb - 1) + br(sa) * br(sb),
        br(sa - sb + 1), "I26 [a-b+1]",
    )
    t2 = _div(
        br(sa - 1) * br(sb - 1) - br(2) * br(sa - 1) * br(sb) + br(sa) * br(sb),
        br(sa - sb - 1), "I26 [a-b-1]",
    )
    return t1 + t2


def _eval_i27(a: Assignment) -> Fraction:
    br = lambda x: qbracket(x, a.qv)
    sa = a.scalars["a"]
    return br(sa - 1) - br(2) * br(sa) + br(sa + 1)


def _eval_a46(a: Assignment, side: str) -> Fraction:
    br = lambda x: qbracket(x, a.qv)
    sa, sb, sc, sd = (a.scalars[x] for x in "abcd")
    if side == "L":
        t1 = _div(br(sa - sb) * br(sc - sd - 1), br(sc - sb - 1), "A46L [c-b-1]")
        t2 = _div(br(sa - sc + 1) * br(sb - sd), br(sb - sc + 1), "A46L [b-c+1]")
        return t1 + t2 - br(sa - sd)
    t1 = _div(br(sa - sb + 1) * br(sc - sd), br(sc - sb + 1), "A46R [c-b+1]")
    t2 = _div(br(sa - sc) * br(sb - sd - 1), br(sb - sc - 1), "A46R [b-c-1]")
    return -t1 - t2 + br(sa - sd)


def _eval_a21(a: Assignment, n: int) -> Fraction:
    if a.qv.is_classical:
        raise PoleError("A21 is a multiplicative identity; it needs a rational q")
    q = a.qv.q
    A = [Fraction(v) for v in a.arrays["A"]]
    B = [Fraction(v) for v in a.arrays["B"]]
    C = [Fraction(v) for v in a.arrays["C"]]
    D = [Fraction(v) for v in a.arrays["D"]]
    if [len(A), len(B), len(C), len(D)] != [n - 1, n, n + 1, n - 2]:
        raise ValueError("A21 arrays must have lengths n-1, n, n+1, n-2")
    if any(v == 0 for v in A + B + C + D):
        raise PoleError("A21 variables must be nonzero")
    qi = 1 / q
    q2, qi2 = q * q, qi * qi
    total = Fraction(0)
    for sign, w, fb, fd, gc, ga, da, db in (
        (1, q, qi2, qi2, Fraction(1), Fraction(1), qi2, qi2),
        (-1, qi, Fraction(1), Fraction(1), q2, q2, q2, q2),
    ):
        # first pass: factors (A_j - fb*B_i), (A_j - fd*D_i),
        # (B_l - gc*C_i), (B_l - ga*A_i); denominator twists da, db
        for j, aj in enumerate(A):
            den_a = aj
            for i, ai in enumerate(A):
                if i != j:
                    den_a *= (aj - ai) * (aj - da * ai)
            if den_a == 0:
                raise PoleError(f"A21 denominator at A_{j + 1}")
            num_ad = Fraction(1)
            for dv in D:
                num_ad *= aj - fd * dv
            for l, bl in enumerate(B):
                num = num_ad
                for i, bv in enumerate(B):
                    if i != l:
                        num *= aj - fb * bv
                for cv in C:
                    num *= bl - gc * cv
                for i, ai in enumerate(A):
                    if i != j:
                        num *= bl - ga * ai
                den = den_a * bl
                for i, bv in enumerate(B):
                    if i != l:
                        den *= (bl - bv) * (bl - db * bv)
                if den == 0:
                    raise PoleError(f"A21 denominator at B_{l + 1}")
                total += sign * w * num / den
    prod = Fraction(1)
    for dv in D:
        prod *= dv
    for cv in C:
        prod *= cv
    for av in A:
        prod /= av
    for bv in B:
        prod /= bv
    total -= (q - qi) * (1 - q2 * prod)
    return total


def _eval_a26(a: Assignment, n: int) -> Fraction:
    br = lambda x: qbracket(x, a.qv)
    aa = list(a.arrays["a"])
    bb = list(a.arrays["b"])
    cc = list(a.arrays["c"])
    if [len(aa), len(bb), len(cc)] != [n, n - 1, n - 1]:
        raise ValueError("A26 arrays must have lengths n, n-1, n-1")
    total = Fraction(0)
    for s in (0, 1):
        for i, ai in enumerate(aa):
            num = Fraction(1)
            for bv in bb:
                num *= br(ai - bv - s)
            for cv in cc:
                num *= br(ai - cv - s)
            den = Fraction(1)
            for t, av in enumerate(aa):
                if t != i:
                    den *= br(ai - av - s) * br(ai - av - s + 1)
            total += (-1) ** s * _div(num, den, f"A26 den (s={s}, i={i})")
    return total


def evaluate_identity(ident: IdentityId, a: Assignment) -> Fraction:
    """Exact value of LHS - RHS; zero at every generic assignment."""
    tag = ident.tag
    if tag == "I23a":
        return _eval_i23a(a, ident.size)
    if tag == "I23b":
        return _eval_i23b(a, ident.size)
    if tag == "I24a":
        return _eval_i24a(a, ident.size)
    if tag == "I24b":
        return _eval_i24b(a, ident.size)
    if tag == "I24c":
        return _eval_i24c(a, ident.size)
    if tag == "I24d":
        return _eval_i24d(a, ident.size)
    if tag == "I25":
        return _eval_i25(a)
    if tag == "I26":
        return _eval_i26(a)
    if tag == "I27":
        return _eval_i27(a)
    if tag == "A21":
        return _eval_a21(a, ident.size)
    if tag == "A26":
        return _eval_a26(a, ident.size)
    if tag == "A46L":
        return _eval_a46(a, "L")
    if tag == "A46R":
        return _eval_a46(a, "R")
    raise ValueError(tag)


# --- sampling ------------------------------------------------------------

_Q_POOL = (Fraction(3, 2), Fraction(2), Fraction(5, 3), Fraction(7, 4))
_RANGE = (-12, 12)


def _sample_row(rng: random.Random, length: int, decreasing: bool) -> list[int]:
    lo, hi = _RANGE
    if not decreasing:
        return [rng.randint(lo, hi) for _ in range(length)]
    # strictly decreasing rows mimic genuine L-rows (gap >= 1)
    vals = []
    cur = rng.randint(hi - 2, hi + 4)
    for _ in range(length):
        vals.append(cur)
        cur -= rng.randint(1, 3)
    return vals


def _sample_raw(ident: IdentityId, rng: random.Random) -> Assignment:
    qv = QValue.quantum(rng.choice(_Q_POOL))
    tag, k = ident.tag, ident.size
    if tag in ("I25", "I26", "I27", "A46L", "A46R"):
        names = {"I25": "abcde", "I26": "ab", "I27": "a",
                 "A46L": "abcd", "A46R": "abcd"}[tag]
        return Assignment(qv, scalars={x: rng.randint(*_RANGE) for x in names})
    dec = rng.random() < 0.5
    if tag in ("I23a", "I24a", "I24c"):
        rows = {
            "row_below": _sample_row(rng, 2 * k - 2, dec),
            "row_a": _sample_row(rng, 2 * k - 1, dec),
            "row_b": _sample_row(rng, 2 * k, dec),
            "row_above": _sample_row(rng, 2 * k + 1, dec),
        }
        if tag == "I23a":
            return Assignment(qv, arrays=rows)
        if tag == "I24a":
            labels = rng.sample(list(_row_indices(2 * k - 1)), 2)
            return Assignment(
                qv,
                arrays={x: rows[x] for x in ("row_a", "row_b", "row_above")},
                excluded={"labels": tuple(labels)},
            )
        labels = rng.sample(list(_row_indices(2 * k)), 2)
        return Assignment(
            qv,
            arrays={x: rows[x] for x in ("row_below", "row_a", "row_b")},
            excluded={"labels": tuple(labels)},
        )
    if tag in ("I23b", "I24b", "I24d"):
        rows = {
            "row_below": _sample_row(rng, 2 * k - 1, dec),
            "row_a": _sample_row(rng, 2 * k, dec),
            "row_b": _sample_row(rng, 2 * k + 1, dec),
            "row_above": _sample_row(rng, 2 * k + 2, dec),
        }
        if tag == "I23b":
            return Assignment(qv, arrays=rows)
        if tag == "I24b":
            labels = rng.sample(list(_row_indices(2 * k)), 2)
            return Assignment(
                qv,
                arrays={x: rows[x] for x in ("row_a", "row_b", "row_above")},
                excluded={"labels": tuple(labels)},
            )
        labels = rng.sample(list(_row_indices(2 * k + 1)), 2)
        return Assignment(
            qv,
            arrays={x: rows[x] for x in ("row_below", "row_a", "row_b")},
            excluded={"labels": tuple(labels)},
        )
    if tag == "A21":
        n = k
        q = qv.q

        def var() -> Fraction:
            # powers of q keep the variables in the identity's natural image
            return q ** (2 * rng.randint(*_RANGE))

        return Assignment(qv, arrays={
            "A": [var() for _ in range(n - 1)],
            "B": [var() for _ in range(n)],
            "C": [var() for _ in range(n + 1)],
            "D": [var() for _ in range(n - 2)],
        })
    if tag == "A26":
        n = k
        return Assignment(qv, arrays={
            "a": _sample_row(rng, n, dec),
            "b": _sample_row(rng, n - 1, dec),
            "c": _sample_row(rng, n - 1, dec),
        })
    raise ValueError(tag)


def random_generic_assignment(
    ident: IdentityId, seed: int, max_retries: int = 200
) -> Assignment:
    """Deterministic generic assignment: resample until no pole is hit."""
    rng = random.Random(seed)
    for _ in range(max_retries):
        a = _sample_raw(ident, rng)
        try:
            evaluate_identity(ident, a)
        except PoleError:
            continue
        return a
    raise PoleError(f"no generic assignment for {ident} within {max_retries} tries")


def fuzz_identity(ident: IdentityId, trials: int, seed: int) -> CheckReport:
    """Evaluate the identity at many seeded generic points; all must vanish."""
    rng = random.Random(seed)
    report = CheckReport(
        "identity",
        {"tag": ident.tag, "size": ident.size, "trials": trials,
         "seed": seed, "rejections": 0},
    )
    done = 0
    while done < trials:
        a = _sample_raw(ident, rng)
        try:
            value = evaluate_identity(ident, a)
        except PoleError:
            report.params["rejections"] += 1
            if report.params["rejections"] > 200 * trials:
                report.record(None, None, note="rejection budget exhausted")
                return report
            continue
        done += 1
        report.checked += 1
        if value != 0:
            report.record(None, {
                "value": str(value),
                "scalars": a.scalars,
                "arrays": {n: [str(v) for v in vs] for n, vs in a.arrays.items()},
                "excluded": {n: list(v) for n, v in a.excluded.items()},
                "q": str(a.qv.q),
            })
    return report


# --- cross-encoding substitutions ----------------------------------------

def a21_assignment_from_i23a(a: Assignment, k: int) -> Assignment:
    """Push an additive assignment into the multiplicative encoding:
    each variable becomes q^(2L) over the matching row, with n = 2k."""
    q = a.qv.q
    pw = lambda vals: [q ** (2 * v) for v in vals]
    return Assignment(a.qv, arrays={
        "A": pw(a.arrays["row_a"]),
        "B": pw(a.arrays["row_b"]),
        "C": pw(a.arrays["row_above"]),
        "D": pw(a.arrays["row_below"]),
    })


def a26_assignment_from_i24a(a: Assignment, k: int) -> Assignment:
    """Relabel the removed-label identity into the generic n-row form:
    a over the even row, b over the inner part of the row above, c over the
    surviving labels of the row below plus the two outer values above."""
    rB = _as_row(2 * k, a.arrays["row_b"])
    rC = _as_row(2 * k + 1, a.arrays["row_above"])
    rA = _as_row(2 * k - 1, a.arrays["row_a"])
    j, m = a.excluded["labels"]
    avals = [rB[i] for i in _row_indices(2 * k)]
    bvals = [rC[i] for i in list(_row_indices(2 * k + 1))[:-2]]
    keep = [v for i, v in sorted(rA.items()) if i not in (j, m)]
    cvals = keep + [rC[k - 1], rC[k]]
    return Assignment(a.qv, arrays={"a": avals, "b": bvals, "c": cvals})


def a26_assignment_from_i24c(a: Assignment, k: int) -> Assignment:
    """Relabel the other removed-label identity: a over the odd row plus one,
    b over the row below, c over the surviving labels of the row above."""
    rA = _as_row(2 * k - 1, a.arrays["row_a"])
    rD = _as_row(2 * k - 2, a.arrays["row_below"])
    rB = _as_row(2 * k, a.arrays["row_b"])
    l, qx = a.excluded["labels"]
    avals = [v + 1 for i, v in sorted(rA.items())]
    bvals = [v for i, v in sorted(rD.items())]
    cvals = [v for i, v in sorted(rB.items()) if i not in (l, qx)]
    return Assignment(a.qv, arrays={"a": avals, "b": bvals, "c": cvals})

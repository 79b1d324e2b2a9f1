import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from uhainf import (
    CPattern,
    ModuleParams,
    QValue,
    Signature,
    enumerate_basis,
    highest_weight_pattern,
    weight_of,
)
from uhainf.patterns import (
    row_range,
    shift,
    shifted_if_valid,
    sign_s,
    theta,
    validate,
    weight_eigenvalue,
)


# ---------------------------------------------------------------------------
# Independent oracle.  Written in position space: row p is a tuple of p
# integers read left to right, and the interlacing condition between row p
# (below) and row p+1 (above) is the uniform two-sided sandwich
# above[t] >= below[t] >= above[t+1].  This is derived separately from the
# indexed form used in the library (entry (i, p) against its parity-dependent
# upper neighbors) and serves as a cross-check of that translation.
# ---------------------------------------------------------------------------


def oracle_rows_interlace(below: tuple, above: tuple) -> bool:
    assert len(above) == len(below) + 1
    return all(above[t] >= below[t] >= above[t + 1] for t in range(len(below)))


def oracle_valid(sig: Signature, rows_bottom_up: list) -> bool:
    n_rows = len(rows_bottom_up)
    full = list(rows_bottom_up) + [list(sig.row(n_rows + 1))]
    return all(
        oracle_rows_interlace(tuple(full[p]), tuple(full[p + 1]))
        for p in range(n_rows)
    )


def oracle_enumerate(sig: Signature, N: int) -> set:
    """Brute-force enumeration: try every integer array bounded by the row
    above, independently of the library's recursive filler."""
    out = set()
    top = list(sig.row(N))
    # candidate entries for each row are bounded by the extremes of the row
    # above, so a full product scan over those ranges is exhaustive
    def rec(p: int, above: list, acc: list):
        if p == 0:
            out.add(tuple(tuple(r) for r in reversed(acc)))
            return
        lo, hi = min(above), max(above)
        for combo in itertools.product(range(lo, hi + 1), repeat=p):
            if oracle_rows_interlace(combo, tuple(above)):
                rec(p - 1, list(combo), acc + [list(combo)])

    rec(N - 1, top, [])
    return out


class TestBasics:
    def test_theta(self):
        assert [theta(i) for i in (-2, -1, 0, 1, 2)] == [0, 0, 1, 1, 1]

    def test_sign_s(self):
        assert sign_s(0, 0, 0) == 1
        assert sign_s(0, 0, 1) == -1
        assert sign_s(-1, 0, 0) == 1
        assert sign_s(1, 0, 1) == -1

    def test_row_range(self):
        assert list(row_range(1)) == [0]
        assert list(row_range(2)) == [-1, 0]
        assert list(row_range(3)) == [-1, 0, 1]
        assert list(row_range(4)) == [-2, -1, 0, 1]
        assert list(row_range(5)) == [-2, -1, 0, 1, 2]


class TestSignature:
    def test_constant_tails(self):
        s = Signature(-1, 1, (2, 1, 0))
        assert s.value(-5) == 2 and s.value(-1) == 2
        assert s.value(0) == 1
        assert s.value(1) == 0 and s.value(7) == 0

    def test_rows(self):
        s = Signature(-1, 1, (2, 1, 0))
        assert s.row(1) == (1,)
        assert s.row(2) == (2, 1)
        assert s.row(3) == (2, 1, 0)
        assert s.row(4) == (2, 2, 1, 0)

    def test_rejects_increasing(self):
        with pytest.raises(ValueError):
            Signature(0, 1, (0, 1))

    def test_rejects_bad_window(self):
        with pytest.raises(ValueError):
            Signature(2, 1, ())
        with pytest.raises(ValueError):
            Signature(0, 1, (1, 0, 0))

    def test_json_roundtrip(self):
        s = Signature(-2, 2, (3, 2, 2, 1, 0))
        assert Signature.from_json(s.to_json()) == s


class TestModuleParams:
    def test_capital_mode_constraint(self):
        s = Signature(0, 1, (1, 0))
        ModuleParams(s, 1, 0, QValue.quantum(2), "A_infinity")
        with pytest.raises(ValueError):
            ModuleParams(s, 2, 0, QValue.quantum(2), "A_infinity")
        # lowercase mode has free labels
        ModuleParams(s, 7, -3, QValue.quantum(2), "a_infinity")

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            ModuleParams(Signature(0, 0, (0,)), 0, 0, QValue.classical(), "other")


class TestCPattern:
    def test_highest_weight_rows(self, sig_small):
        hw = highest_weight_pattern(sig_small)
        assert hw.N == 2
        assert hw.row(1) == (1,)
        assert hw.row(2) == (1, 1)  # both upper values are M_0 = 1
        assert hw.row(3) == (1, 1, 0)

    def test_entry_indexing(self, sig_mid):
        p = CPattern(sig_mid, [(1,), (2, 0), (2, 1, 0)])
        assert p.entry(0, 1) == 1
        assert p.entry(-1, 2) == 2 and p.entry(0, 2) == 0
        assert p.entry(1, 3) == 0
        with pytest.raises(IndexError):
            p.entry(1, 2)

    def test_minimal_level_normalization(self, sig_mid):
        # explicitly storing signature rows must renormalize to the same N
        p1 = CPattern(sig_mid, [(2,), (2, 1), (2, 1, 0)])
        p2 = CPattern(sig_mid, [(2,)])
        assert p1 == p2 and p1.N == 2 and hash(p1) == hash(p2)

    def test_l_value(self, sig_mid):
        p = highest_weight_pattern(sig_mid)
        # L is strictly decreasing along every row of a valid pattern
        for row in range(1, 6):
            ls = [p.l_value(i, row) for i in row_range(row)]
            assert all(a > b for a, b in zip(ls, ls[1:]))

    def test_json_roundtrip(self, sig_mid):
        p = CPattern(sig_mid, [(1,), (2, 0)])
        assert CPattern.from_json(p.to_json()) == p
        assert p.to_json()["N"] == 3

    def test_immutability(self, sig_mid):
        p = highest_weight_pattern(sig_mid)
        with pytest.raises(AttributeError):
            p.rows = ()


class TestValidate:
    def test_examples(self, sig_small):
        # row 2 above row 1 is (1, 1): only M(0,1) = 1 interlaces
        assert validate(CPattern(sig_small, [(1,)]))
        assert not validate(CPattern(sig_small, [(2,)]))
        assert not validate(CPattern(sig_small, [(0,)]))

    def test_matches_oracle_exhaustive(self, sig_mid):
        top = sig_mid.row(4)
        lo, hi = min(top), max(top)
        count = 0
        for r3 in itertools.product(range(lo, hi + 1), repeat=3):
            for r2 in itertools.product(range(lo, hi + 1), repeat=2):
                for r1 in itertools.product(range(lo, hi + 1), repeat=1):
                    rows = [list(r1), list(r2), list(r3)]
                    p = CPattern(sig_mid, rows)
                    want = oracle_valid(sig_mid, rows)
                    assert validate(p) == want, rows
                    count += 1
        assert count == (hi - lo + 1) ** 6


class TestEnumerate:
    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_matches_oracle(self, sig_mid, N):
        got = enumerate_basis(sig_mid, N)
        want = oracle_enumerate(sig_mid, N)
        as_rows = {tuple(p.row(q) for q in range(1, N)) for p in got}
        assert len(got) == len(set(got)), "duplicates"
        assert as_rows == want

    def test_small_signature(self, sig_small):
        # V_2 of this signature is a single pattern: row 1 pinned to 1
        basis = enumerate_basis(sig_small, 2)
        assert [p.row(1) for p in basis] == [(1,)]

    def test_all_valid_and_within_level(self, sig_mid):
        for N in (2, 3, 4, 5):
            for p in enumerate_basis(sig_mid, N):
                assert validate(p)
                assert p.N <= N

    def test_nested(self, sig_mid):
        b3 = set(enumerate_basis(sig_mid, 3))
        b4 = set(enumerate_basis(sig_mid, 4))
        assert b3 <= b4

    def test_deterministic_order(self, sig_mid):
        a = enumerate_basis(sig_mid, 4)
        b = enumerate_basis(sig_mid, 4)
        assert a == b
        # lexicographic top-down: sort keys strictly increase
        keys = [p.sort_key(4) for p in a]
        assert keys == sorted(keys)

    def test_acceptance_scale_dimension(self, sig_mid):
        assert len(enumerate_basis(sig_mid, 5)) == 75


class TestShift:
    def test_shift_roundtrip(self, sig_mid):
        p = highest_weight_pattern(sig_mid)
        q = shift(p, [(0, 1, -1)])
        assert q.entry(0, 1) == p.entry(0, 1) - 1
        assert shift(q, [(0, 1, +1)]) == p

    def test_shift_materializes_upper_rows(self, sig_mid):
        p = highest_weight_pattern(sig_mid)
        q = shift(p, [(1, 4, -1)])
        assert q.N == 5
        assert q.entry(1, 4) == sig_mid.row(4)[3] - 1

    def test_shifted_if_valid_agrees_with_full_validate(self, sig_mid):
        rng = random.Random(5)
        basis = enumerate_basis(sig_mid, 4)
        for _ in range(400):
            p = rng.choice(basis)
            row = rng.randint(1, 5)
            i = rng.choice(list(row_range(row)))
            delta = rng.choice((-1, 1))
            moves = [(i, row, delta)]
            got = shifted_if_valid(p, moves)
            full = shift(p, moves)
            assert (got is not None) == validate(full)
            if got is not None:
                assert got == full

    def test_shifted_if_valid_two_moves(self, sig_mid):
        rng = random.Random(6)
        basis = enumerate_basis(sig_mid, 4)
        for _ in range(400):
            p = rng.choice(basis)
            row = rng.randint(1, 4)
            i = rng.choice(list(row_range(row)))
            j = rng.choice(list(row_range(row + 1)))
            delta = rng.choice((-1, 1))
            moves = [(i, row, delta), (j, row + 1, delta)]
            got = shifted_if_valid(p, moves)
            full = shift(p, moves)
            assert (got is not None) == validate(full)


class TestWeights:
    def test_hw_closed_form(self, params_mid):
        hw = highest_weight_pattern(params_mid.signature)
        # eigenvalue is M_i - xi0 for i <= 0 and M_i - xi1 for i >= 1
        assert weight_eigenvalue(hw, -1, params_mid) == 0
        assert weight_eigenvalue(hw, 0, params_mid) == -1
        assert weight_eigenvalue(hw, 1, params_mid) == 0
        assert weight_eigenvalue(hw, -4, params_mid) == 0
        assert weight_eigenvalue(hw, 4, params_mid) == 0

    def test_weight_of_window(self, params_mid):
        hw = highest_weight_pattern(params_mid.signature)
        wv = weight_of(hw, params_mid, (-2, 2))
        assert wv.window == (-2, 2)
        assert wv.eigenvalues == {-2: 0, -1: 0, 0: -1, 1: 0, 2: 0}
        doc = wv.to_json()
        assert doc["eigenvalues"]["0"] == "-1"

    def test_rational_labels(self, sig_mid):
        params = ModuleParams(sig_mid, Fraction(1, 3), Fraction(-1, 2),
                              QValue.quantum(2), "a_infinity")
        hw = highest_weight_pattern(sig_mid)
        assert weight_eigenvalue(hw, 0, params) == Fraction(1) - Fraction(1, 3)
        assert weight_eigenvalue(hw, 1, params) == Fraction(0) - Fraction(-1, 2)


@st.composite
def signatures(draw):
    m = draw(st.integers(-2, 1))
    width = draw(st.integers(0, 3))
    n = m + width
    start = draw(st.integers(-3, 4))
    steps = draw(st.lists(st.integers(0, 2), min_size=width, max_size=width))
    values = [start]
    for d in steps:
        values.append(values[-1] - d)
    return Signature(m, n, tuple(values))


@settings(max_examples=40, deadline=None)
@given(signatures(), st.integers(2, 4))
def test_property_enumeration_matches_oracle(sig, N):
    got = {tuple(p.row(q) for q in range(1, N)) for p in enumerate_basis(sig, N)}
    assert got == oracle_enumerate(sig, N)


@settings(max_examples=40, deadline=None)
@given(signatures())
def test_property_hw_is_valid_and_minimal(sig):
    hw = highest_weight_pattern(sig)
    assert validate(hw)
    assert hw.N == 2
    for p in range(1, 6):
        assert hw.row(p) == sig.row(p)

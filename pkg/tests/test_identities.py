from fractions import Fraction

import pytest

from uhainf import (
    Assignment,
    IdentityId,
    PoleError,
    QValue,
    evaluate_identity,
    fuzz_identity,
    random_generic_assignment,
)
from uhainf.identities import (
    IDENTITY_TAGS,
    _SIZED,
    a21_assignment_from_i23a,
    a26_assignment_from_i24a,
    a26_assignment_from_i24c,
)

Q2 = QValue.quantum(2)
Q32 = QValue.quantum(Fraction(3, 2))


class TestIdentityId:
    def test_sized_validation(self):
        IdentityId("I23a", 1)
        IdentityId("A21", 2)
        with pytest.raises(ValueError):
            IdentityId("I23a")
        with pytest.raises(ValueError):
            IdentityId("A21", 1)
        with pytest.raises(ValueError):
            IdentityId("I27", 3)
        with pytest.raises(ValueError):
            IdentityId("nope")


class TestFrozenEvaluations:
    def test_i27(self):
        for a in range(-6, 7):
            assert evaluate_identity(
                IdentityId("I27"), Assignment(Q2, scalars={"a": a})
            ) == 0

    def test_i26(self):
        assert evaluate_identity(
            IdentityId("I26"), Assignment(Q2, scalars={"a": 3, "b": 1})
        ) == 0

    def test_i26_pole(self):
        # b = a + 1 makes [a - b + 1] vanish
        with pytest.raises(PoleError):
            evaluate_identity(
                IdentityId("I26"), Assignment(Q2, scalars={"a": 3, "b": 4})
            )

    def test_i25(self):
        a = Assignment(Q32, scalars={"a": 5, "b": 2, "c": 1, "d": 8, "e": -3})
        assert evaluate_identity(IdentityId("I25"), a) == 0

    def test_a46_both_sides(self):
        a = Assignment(Q32, scalars={"a": 4, "b": 1, "c": 7, "d": -2})
        assert evaluate_identity(IdentityId("A46L"), a) == 0
        assert evaluate_identity(IdentityId("A46R"), a) == 0

    def test_i23a_size1(self):
        # rows of lengths 0, 1, 2, 3
        a = Assignment(Q2, arrays={
            "row_below": [], "row_a": [4], "row_b": [7, 1],
            "row_above": [9, 5, -2],
        })
        assert evaluate_identity(IdentityId("I23a", 1), a) == 0

    def test_i23b_size1(self):
        a = Assignment(Q2, arrays={
            "row_below": [3], "row_a": [6, 1], "row_b": [8, 4, -1],
            "row_above": [11, 7, 2, -5],
        })
        assert evaluate_identity(IdentityId("I23b", 1), a) == 0

    def test_i24a_size2(self):
        a = Assignment(Q32, arrays={
            "row_a": [9, 4, -1], "row_b": [11, 6, 2, -4],
            "row_above": [13, 8, 3, 0, -6],
        }, excluded={"labels": (-1, 1)})
        assert evaluate_identity(IdentityId("I24a", 2), a) == 0

    def test_a26_n2(self):
        a = Assignment(Q2, arrays={"a": [5, 1], "b": [3], "c": [-2]})
        assert evaluate_identity(IdentityId("A26", 2), a) == 0

    def test_a21_n2(self):
        q = Fraction(3, 2)
        a = Assignment(QValue.quantum(q), arrays={
            "A": [q ** 2], "B": [q ** 4, q ** -2], "C": [q ** 6, 1, q ** -4],
            "D": [],
        })
        assert evaluate_identity(IdentityId("A21", 2), a) == 0

    def test_a21_rejects_classical(self):
        with pytest.raises(PoleError):
            evaluate_identity(
                IdentityId("A21", 2),
                Assignment(QValue.classical(), arrays={
                    "A": [1], "B": [1, 2], "C": [1, 2, 3], "D": [],
                }),
            )

    def test_array_length_validation(self):
        with pytest.raises(ValueError):
            evaluate_identity(
                IdentityId("A26", 2),
                Assignment(Q2, arrays={"a": [5], "b": [3], "c": [-2]}),
            )


class TestSampling:
    def test_deterministic(self):
        for tag in IDENTITY_TAGS:
            ident = IdentityId(tag, _SIZED.get(tag, None) and max(_SIZED[tag], 2))
            a1 = random_generic_assignment(ident, seed=7)
            a2 = random_generic_assignment(ident, seed=7)
            assert (a1.qv, a1.scalars, a1.arrays, a1.excluded) == (
                a2.qv, a2.scalars, a2.arrays, a2.excluded
            )

    def test_generic_points_evaluate_to_zero(self):
        for tag in IDENTITY_TAGS:
            ident = IdentityId(tag, _SIZED.get(tag, None) and max(_SIZED[tag], 2))
            for seed in range(5):
                a = random_generic_assignment(ident, seed=seed)
                assert evaluate_identity(ident, a) == 0, (tag, seed)


class TestFuzz:
    @pytest.mark.parametrize("tag", IDENTITY_TAGS)
    def test_all_tags(self, tag):
        size = None
        if tag in _SIZED:
            size = max(_SIZED[tag], 2)
        rep = fuzz_identity(IdentityId(tag, size), trials=10, seed=123)
        assert rep.passed, rep.to_json()
        assert rep.checked == 10
        assert rep.params["tag"] == tag

    def test_minimum_sizes(self):
        for tag, kmin in _SIZED.items():
            rep = fuzz_identity(IdentityId(tag, kmin), trials=5, seed=11)
            assert rep.passed, rep.to_json()

    def test_larger_sizes(self):
        for tag, size in (("I23a", 3), ("A26", 4), ("A21", 4), ("I24c", 3)):
            rep = fuzz_identity(IdentityId(tag, size), trials=3, seed=5)
            assert rep.passed, rep.to_json()

    def test_reports_deterministic(self):
        r1 = fuzz_identity(IdentityId("I25"), trials=20, seed=99)
        r2 = fuzz_identity(IdentityId("I25"), trials=20, seed=99)
        assert r1.to_json() == r2.to_json()

    def test_detects_false_identity(self, monkeypatch):
        import uhainf.identities as idm
        orig = idm._eval_i27
        monkeypatch.setattr(idm, "_eval_i27", lambda a: orig(a) + 1)
        rep = fuzz_identity(IdentityId("I27"), trials=3, seed=1)
        assert not rep.passed


class TestCrossEncodings:
    """The removed-label and multiplicative identities are re-encodings of
    the row-sum ones: pushing a sampled assignment through the substitution
    must land on a vanishing point of the target identity."""

    @pytest.mark.parametrize("k", [2, 3])
    def test_i23a_to_a21(self, k):
        src = IdentityId("I23a", k)
        tgt = IdentityId("A21", 2 * k)
        for seed in range(6):
            a = random_generic_assignment(src, seed=seed)
            b = a21_assignment_from_i23a(a, k)
            assert evaluate_identity(tgt, b) == 0, seed

    @pytest.mark.parametrize("k", [2, 3])
    def test_i24a_to_a26(self, k):
        src = IdentityId("I24a", k)
        tgt = IdentityId("A26", 2 * k)
        for seed in range(6):
            a = random_generic_assignment(src, seed=seed)
            b = a26_assignment_from_i24a(a, k)
            assert evaluate_identity(tgt, b) == 0, seed

    @pytest.mark.parametrize("k", [2, 3])
    def test_i24c_to_a26(self, k):
        src = IdentityId("I24c", k)
        tgt = IdentityId("A26", 2 * k - 1)
        for seed in range(6):
            a = random_generic_assignment(src, seed=seed)
            b = a26_assignment_from_i24c(a, k)
            assert evaluate_identity(tgt, b) == 0, seed

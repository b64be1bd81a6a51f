"""
Tests for exact scalars, grading groups, windows and the linear-algebra helpers.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.foundations import linalg
from src.foundations.errors import DimensionMismatch, EmptyWindow, InvalidGroup, SingularBlock, UnknownElement
from src.foundations.fields import FieldKind, FieldSpec
from src.foundations.groups import (
    DegreeWindow,
    GradingGroup,
    GroupKind,
    IndexWindow,
    Window,
    group_inv,
    group_op,
    left_quotient,
    right_quotient,
    validate_group,
)
from src.foundations.reports import Verdict


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


class TestFieldSpec:
    def test_parse_rationals(self):
        F = FieldSpec.parse("q")
        assert F.kind is FieldKind.RATIONALS
        assert F.label() == "q"

    def test_parse_prime_field(self):
        F = FieldSpec.parse("fp:5")
        assert F.characteristic == 5
        assert F.label() == "fp:5"

    def test_composite_characteristic_rejected(self):
        with pytest.raises(ValueError):
            FieldSpec.parse("fp:4")

    def test_unknown_spelling_rejected(self):
        with pytest.raises(ValueError, match="unknown field"):
            FieldSpec.parse("reals")

    def test_rational_literals(self, rationals):
        assert rationals.format(rationals.scalar("-2/7")) == "-2/7"
        assert rationals.format(rationals.scalar("6/3")) == "2"

    def test_prime_field_literals_reduce(self, f5):
        assert f5.format(f5.scalar("1/2")) == "3"
        assert f5.format(f5.scalar(-1)) == "4"

    def test_denominator_divisible_by_p(self, f5):
        with pytest.raises(ZeroDivisionError):
            f5.scalar("1/5")

    def test_booleans_are_not_scalars(self, rationals):
        with pytest.raises(TypeError):
            rationals.scalar(True)

    def test_negative_power(self, f5):
        assert f5.power(f5.scalar(2), -1) == f5.scalar(3)

    def test_to_int_requires_integral_value(self, rationals):
        assert rationals.to_int(rationals.scalar(4)) == 4
        with pytest.raises(ValueError):
            rationals.to_int(rationals.scalar("1/2"))

    @given(st.integers(min_value=1, max_value=4))
    def test_every_nonzero_residue_is_invertible(self, n):
        F = FieldSpec.prime(5)
        a = F.scalar(n)
        assert a * F.power(a, -1) == F.one

    @given(st.fractions(max_denominator=50))
    def test_formatted_rationals_read_back(self, value):
        F = FieldSpec.rationals()
        a = F.scalar(value)
        assert F.scalar(F.format(a)) == a


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------


class TestGroups:
    def test_integer_arithmetic(self, integers):
        assert group_op(integers, 2, -5) == -3
        assert group_inv(integers, 4) == -4
        assert left_quotient(integers, 1, 3) == 2
        assert right_quotient(integers, 1, 3) == -2

    def test_cyclic_group(self):
        C3 = GradingGroup.cyclic(3)
        assert C3.elements() == ("e", "a", "a^2")
        assert group_op(C3, "a", "a^2") == "e"
        assert group_inv(C3, "a") == "a^2"
        assert C3.identity == "e"

    def test_klein_group_from_table(self, klein_table):
        labels, rows = klein_table
        V = GradingGroup.from_table(labels, rows)
        assert V.kind is GroupKind.FINITE
        assert all(group_inv(V, g) == g for g in V.elements())

    def test_monoid_table_is_not_a_group(self):
        with pytest.raises(InvalidGroup):
            GradingGroup.from_table(["e", "a"], [["e", "a"], ["a", "a"]])

    def test_validate_group_reports_missing_inverse(self):
        table = GradingGroup(kind=GroupKind.FINITE, labels=("e", "a"), table=((0, 1), (1, 1)))
        report = validate_group(table)
        assert not report.ok
        assert report.violations[0].rule == "inverse"
        assert report.violations[0].witness == ("a",)

    def test_unknown_element(self):
        C2 = GradingGroup.cyclic(2)
        with pytest.raises(UnknownElement):
            C2.parse_element("b")

    def test_integers_validate(self, integers):
        assert validate_group(integers).ok


# ---------------------------------------------------------------------------
# Windows
# ---------------------------------------------------------------------------


class TestWindows:
    def test_parse_interval(self):
        W = Window.parse("-2..3")
        assert W.elements() == (-2, -1, 0, 1, 2, 3)
        assert W.contains(-2) and not W.contains(4)
        assert W.format() == "-2..3"

    def test_degree_window_needs_identity(self):
        with pytest.raises(ValueError):
            DegreeWindow.interval(1, 3)

    def test_intersection(self):
        W = IndexWindow.interval(0, 3).intersect(IndexWindow.interval(2, 5))
        assert (W.lo, W.hi) == (2, 3)

    def test_disjoint_intersection(self):
        with pytest.raises(EmptyWindow):
            IndexWindow.interval(0, 1).intersect(IndexWindow.interval(3, 4))

    def test_finite_group_window_is_everything(self):
        C3 = GradingGroup.cyclic(3)
        W = IndexWindow.parse("all", C3)
        assert W.elements() == C3.elements()

    def test_reversed_bounds_rejected(self):
        with pytest.raises(ValueError):
            Window.parse("3..1")


# ---------------------------------------------------------------------------
# Linear algebra
# ---------------------------------------------------------------------------


class TestLinalg:
    def test_inverse(self, rationals):
        M = linalg.matrix([[1, 2], [3, 4]], 2, 2, rationals)
        assert linalg.is_identity(linalg.compose(linalg.inverse(M), M))

    def test_singular_block(self, rationals):
        M = linalg.matrix([[1, 2], [2, 4]], 2, 2, rationals)
        with pytest.raises(SingularBlock):
            linalg.inverse(M)

    def test_zero_sized_blocks(self, rationals):
        empty = linalg.identity(0, rationals)
        assert linalg.is_invertible(empty)
        assert linalg.compose(linalg.zeros(2, 0, rationals), linalg.zeros(0, 3, rationals)).shape == (2, 3)

    def test_row_basis_is_canonical(self, rationals):
        F = rationals
        one = linalg.row_basis([[F.scalar(1), F.scalar(2)], [F.scalar(2), F.scalar(4)]], 2, F)
        other = linalg.row_basis([[F.scalar(3), F.scalar(6)]], 2, F)
        assert one == other == [[F.one, F.scalar(2)]]

    def test_solve_inconsistent(self, rationals):
        F = rationals
        M = linalg.matrix([[1, 1], [1, 1]], 2, 2, F)
        assert linalg.solve(M, [F.one, F.zero], F) is None

    def test_coordinates_outside_span(self, rationals):
        F = rationals
        with pytest.raises(DimensionMismatch):
            linalg.coordinates([[F.one, F.zero]], [F.zero, F.one], F)

    def test_negative_power(self, rationals):
        M = linalg.matrix([[2]], 1, 1, rationals)
        assert linalg.entries(linalg.power(M, -2, rationals)) == [[rationals.scalar("1/4")]]

    @settings(max_examples=50)
    @given(st.lists(st.integers(min_value=0, max_value=4), min_size=4, max_size=4))
    def test_invertible_blocks_over_f5(self, values):
        F = FieldSpec.prime(5)
        M = linalg.matrix([values[:2], values[2:]], 2, 2, F)
        if linalg.is_invertible(M):
            assert linalg.is_identity(linalg.compose(M, linalg.inverse(M)))
        else:
            with pytest.raises(SingularBlock):
                linalg.inverse(M)


class TestVerdict:
    def test_truthiness(self):
        assert Verdict.passed("x", checked=3)
        failed = Verdict.failed("x", "rule", ("a",))
        assert not failed
        assert failed.witness == ("a",)

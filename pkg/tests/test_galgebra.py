"""
Tests for associated G-algebras, morphisms, principal maps and compression.
"""

import pytest

from src.foundations import linalg
from src.foundations.errors import NotAssociated, OutOfWindow, ShapeMismatch, UnverifiedPrincipalMap
from src.foundations.fields import FieldSpec
from src.foundations.groups import DegreeWindow, GradingGroup, IndexWindow
from src.galgebra import (
    GAlgebraMorphism,
    PrincipalMap,
    associated_g_algebra,
    associated_left_g_algebra,
    canonical_principal_map,
    check_fundamental_identity,
    check_g_algebra_iso,
    compose_morphisms,
    compress,
    compression_window,
    conjugate_principal_map,
    default_family_window,
    identity_morphism,
    inverse_morphism,
    principal_dimension_obstruction,
    principal_map_from_generator,
    principal_maps_agree,
    validate_g_algebra,
    verify_principal_map,
)
from src.graded import (
    build_direct_sum,
    build_group_algebra,
    build_laurent_ring,
    build_matrix_example,
    build_polynomial_ring,
    same_structure,
    structure_differences,
)


def _builder_algebras(F: FieldSpec):
    W = DegreeWindow.interval(-2, 2)
    return {
        "plane": build_polynomial_ring(F, [1, 1], DegreeWindow.interval(0, 3)),
        "weighted": build_polynomial_ring(F, [1, 2], DegreeWindow.interval(0, 4)),
        "negative": build_polynomial_ring(F, [-1], DegreeWindow.interval(-3, 3), names=("y",)),
        "line-pair": build_direct_sum(build_polynomial_ring(F, [1], DegreeWindow.interval(0, 3), names=("x",)),
                                      build_polynomial_ring(F, [1], DegreeWindow.interval(0, 3), names=("y",))),
        "laurent": build_laurent_ring(F, 2, W),
        "matrix": build_matrix_example(F, W),
        "cyclic": build_group_algebra(F, GradingGroup.cyclic(3)),
    }


BUILDER_NAMES = ("plane", "weighted", "negative", "line-pair", "laurent", "matrix", "cyclic")
BUILDER_CASES = [(label, name) for label in ("q", "fp:5") for name in BUILDER_NAMES]


def _index_of(A):
    return IndexWindow(group=A.group, lo=A.window.lo, hi=A.window.hi)


# ---------------------------------------------------------------------------
# Associated G-algebras
# ---------------------------------------------------------------------------


class TestAssociated:
    def test_components(self, plane_bar):
        assert plane_bar.dim(0, 2) == 3
        assert plane_bar.dim(1, 4) == 4
        assert len(plane_bar.pairs()) == 15
        assert not plane_bar.present(1, 0)

    def test_absent_component(self, plane_bar):
        with pytest.raises(OutOfWindow):
            plane_bar.dim(3, 1)

    def test_labels_come_from_the_algebra(self, plane, plane_bar):
        assert plane_bar.labels[(2, 3)] == plane.labels[1]

    def test_validates(self, plane_bar, matrix_bar):
        assert validate_g_algebra(plane_bar).ok
        assert validate_g_algebra(matrix_bar).ok

    def test_left_variant(self, plane, plane_index):
        hat = associated_left_g_algebra(plane, plane_index)
        assert hat.present(3, 1) and not hat.present(1, 3)
        assert hat.dim(3, 1) == 3
        assert validate_g_algebra(hat).ok

    def test_truncation_skips(self, plane_bar):
        report = validate_g_algebra(plane_bar)
        assert report.checked > 0

    def test_group_mismatch(self, plane):
        with pytest.raises(ShapeMismatch):
            associated_g_algebra(plane, IndexWindow.whole(GradingGroup.cyclic(2)))


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------


class TestMorphisms:
    def test_identity_is_an_iso(self, plane_bar):
        assert check_g_algebra_iso(plane_bar, plane_bar, identity_morphism(plane_bar)).ok

    def test_rescaled_component_fails_multiplicativity(self, plane_bar):
        F = plane_bar.field
        blocks = {p: linalg.identity(plane_bar.dims[p], F) for p in plane_bar.pairs()}
        blocks[(0, 1)] = linalg.scalar_matrix(2, F.scalar(2), F)
        phi = GAlgebraMorphism(plane_bar, plane_bar, blocks)
        verdict = check_g_algebra_iso(plane_bar, plane_bar, phi)
        assert not verdict.ok
        assert verdict.rule == "multiplicativity"
        assert verdict.witness == ((0, 1), (1, 2))

    def test_missing_block_is_a_layout_failure(self, plane_bar):
        blocks = {p: linalg.identity(plane_bar.dims[p], plane_bar.field) for p in plane_bar.pairs() if p != (2, 2)}
        verdict = check_g_algebra_iso(plane_bar, plane_bar, GAlgebraMorphism(plane_bar, plane_bar, blocks))
        assert (verdict.rule, verdict.witness) == ("layout", ((2, 2),))

    def test_inverse_and_composition(self, plane_bar):
        ident = identity_morphism(plane_bar)
        both = compose_morphisms(inverse_morphism(ident), ident)
        assert check_g_algebra_iso(plane_bar, plane_bar, both).ok


# ---------------------------------------------------------------------------
# Principal maps
# ---------------------------------------------------------------------------


class TestPrincipalMaps:
    def test_default_family_window(self, plane_index):
        fw = default_family_window(plane_index)
        assert (fw.lo, fw.hi) == (-4, 4)

    def test_canonical_map_verifies(self, plane_bar):
        S = canonical_principal_map(plane_bar)
        verdict = verify_principal_map(plane_bar, S)
        assert verdict.ok, verdict.detail
        assert verdict.checked > 0

    def test_canonical_map_needs_the_right_identification(self, plane, plane_index):
        with pytest.raises(NotAssociated):
            canonical_principal_map(associated_left_g_algebra(plane, plane_index))

    def test_partial_blocks(self, plane_bar):
        S = canonical_principal_map(plane_bar)
        assert S.defined(1, (0, 3))
        assert not S.defined(1, (0, 4))
        with pytest.raises(OutOfWindow):
            S.block(1, (0, 4))

    def test_generator_form_agrees_with_canonical(self, plane_bar):
        generator = {
            (h, l): linalg.identity(plane_bar.dims[(h, l)], plane_bar.field)
            for h, l in plane_bar.pairs() if plane_bar.present(h + 1, l + 1)
        }
        T = principal_map_from_generator(plane_bar, generator)
        assert verify_principal_map(plane_bar, T).ok
        assert principal_maps_agree(canonical_principal_map(plane_bar), T)

    def test_conjugation_by_identity(self, plane_bar):
        S = canonical_principal_map(plane_bar)
        conjugated = conjugate_principal_map(identity_morphism(plane_bar), S)
        assert principal_maps_agree(S, conjugated)
        assert principal_maps_agree(conjugated, S)

    def test_rescaled_block_is_detected(self, plane_bar):
        F = plane_bar.field
        S = canonical_principal_map(plane_bar)
        family = {g: dict(blocks) for g, blocks in S.family.items()}
        family[1][(0, 1)] = linalg.scalar_matrix(2, F.scalar(2), F)
        T = PrincipalMap(plane_bar, S.family_window, family)
        verdict = verify_principal_map(plane_bar, T)
        assert verdict.rule == "multiplicativity"
        assert verdict.witness == (1, (0, 1), (1, 2))
        with pytest.raises(UnverifiedPrincipalMap):
            compress(plane_bar, T)

    def test_no_obstruction_on_associated_algebras(self, plane_bar, matrix_bar):
        assert principal_dimension_obstruction(plane_bar).ok
        assert principal_dimension_obstruction(matrix_bar).entries == []


# ---------------------------------------------------------------------------
# Compression and the canonical identities
# ---------------------------------------------------------------------------


class TestCompression:
    def test_compression_window(self, plane_bar, matrix_bar):
        assert compression_window(plane_bar, canonical_principal_map(plane_bar)).format() == "0..4"
        assert compression_window(matrix_bar, canonical_principal_map(matrix_bar)).format() == "-2..2"

    def test_window_outside_the_e_row(self, plane_bar):
        with pytest.raises(OutOfWindow):
            compress(plane_bar, canonical_principal_map(plane_bar), DegreeWindow.interval(0, 5))

    def test_smaller_window(self, plane, plane_bar):
        A = compress(plane_bar, canonical_principal_map(plane_bar), DegreeWindow.interval(0, 2))
        assert A.dims == {0: 1, 1: 2, 2: 3}

    @pytest.mark.parametrize("field_label,name", BUILDER_CASES)
    def test_compressing_the_canonical_map_recovers_the_algebra(self, field_label, name):
        A = _builder_algebras(FieldSpec.parse(field_label))[name]
        Abar = associated_g_algebra(A, _index_of(A))
        S = canonical_principal_map(Abar)
        assert verify_principal_map(Abar, S).ok
        recovered = compress(Abar, S)
        assert same_structure(recovered, A), structure_differences(recovered, A)

    @pytest.mark.parametrize("field_label,name", BUILDER_CASES)
    def test_fundamental_identity(self, field_label, name):
        A = _builder_algebras(FieldSpec.parse(field_label))[name]
        verdict = check_fundamental_identity(A)
        assert verdict.ok, verdict.detail
        assert verdict.checked > 0

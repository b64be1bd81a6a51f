"""
Tests for twisting systems, Zhang twists and the correspondence with
principal maps on Ā.
"""

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from src.foundations import linalg
from src.foundations.errors import OutOfWindow, UncertifiedIso, UnverifiedTwistingSystem
from src.foundations.groups import IndexWindow
from src.galgebra import (
    associated_g_algebra,
    canonical_principal_map,
    check_g_algebra_iso,
    compress,
    identity_blocks_morphism,
    inverse_morphism,
    principal_maps_agree,
    verify_principal_map,
)
from src.graded import (
    check_algebra_iso,
    diagonal_map,
    identity_map,
    same_structure,
    structure_differences,
    validate_algebra,
)
from src.twisting import (
    associated_twist_iso,
    check_inverse_twist_relation,
    delta,
    gamma,
    identity_system,
    is_normalized,
    principal_to_twisting,
    restrict_system,
    system_from_blocks,
    systems_agree,
    twist_equivalence_from_iso,
    twisting_to_principal,
    verify_twisting_system,
    zhang_twist,
)
from tests.fixtures import cached_line, cached_line_pair, cached_plane, q_power_system

TOP = 3


def _coefficient(A, g, a, h, b, out):
    """Coefficient of basis vector ``out`` in a·b (labels a ∈ A_g, b ∈ A_h)."""
    T = A.structure[(g, h)]
    return A.field.format(T[A.label_index(g, a)][A.label_index(h, b)][A.label_index(g + h, out)])


def _carrier(kind: str, field_label: str = "fp:5"):
    return cached_plane(field_label, TOP) if kind == "plane" else cached_line_pair(field_label, TOP)


def _corrupt(tau, g, d, c):
    """τ with the block of τ_g in degree d multiplied by the scalar c."""
    A = tau.carrier
    blocks = {n: dict(tau.maps[n].blocks) for n in tau.members()}
    M = blocks[g][d]
    blocks[g][d] = linalg.compose(linalg.scalar_matrix(M.shape[0], A.field.scalar(c), A.field), M)
    return system_from_blocks(A, tau.family_window, blocks, name="corrupted")


@st.composite
def corruptions(draw):
    """A σ-power system and a block that a twist-identity instance on 0..TOP must expose."""
    kind = draw(st.sampled_from(["plane", "pair"]))
    a, b = draw(st.integers(1, 4)), draw(st.integers(1, 4))
    g = draw(st.integers(0, TOP - 1))
    d = draw(st.integers(1, TOP - g))
    c = draw(st.integers(2, 4))
    return kind, a, b, g, d, c


# ---------------------------------------------------------------------------
# Twisting systems
# ---------------------------------------------------------------------------


class TestTwistingSystems:
    def test_q_system_verifies(self, plane, q_plane_system):
        verdict = verify_twisting_system(plane, q_plane_system)
        assert verdict.ok, verdict.detail
        assert verdict.checked > 0 and verdict.skipped > 0

    def test_q_system_is_normalized(self, q_plane_system):
        assert is_normalized(q_plane_system)

    def test_identity_system(self, matrix_ring):
        tau = identity_system(matrix_ring)
        assert verify_twisting_system(matrix_ring, tau).ok
        assert same_structure(zhang_twist(matrix_ring, tau), matrix_ring)

    def test_inverse_twist_relation(self, plane, q_plane_system):
        verdict = check_inverse_twist_relation(plane, q_plane_system)
        assert verdict.ok, verdict.detail

    def test_corrupted_block_has_a_witness(self, plane, q_plane_system):
        bad = _corrupt(q_plane_system, 0, 1, 3)
        verdict = verify_twisting_system(plane, bad)
        assert not verdict.ok
        assert verdict.rule == "twist identity"
        assert verdict.witness[0] in bad.members()

    def test_singular_block(self, plane, q_plane_system):
        blocks = {n: dict(q_plane_system.maps[n].blocks) for n in q_plane_system.members()}
        blocks[4][4] = linalg.zeros(5, 5, plane.field)
        verdict = verify_twisting_system(plane, system_from_blocks(plane, q_plane_system.family_window, blocks))
        assert (verdict.rule, verdict.witness) == ("invertibility", (4, 4))

    def test_restrict_system(self, plane, q_plane_system):
        small = cached_plane("q", 2)
        tau = restrict_system(q_plane_system, small, IndexWindow.interval(0, 2))
        assert tau.members() == (0, 1, 2)
        assert verify_twisting_system(small, tau).ok

    def test_block_count(self, q_plane_system):
        assert q_plane_system.block_count() == 25


# ---------------------------------------------------------------------------
# Zhang twists
# ---------------------------------------------------------------------------


class TestZhangTwist:
    def test_q_commutation(self, plane, q_plane_system):
        twisted = zhang_twist(plane, q_plane_system)
        assert twisted.name == "A^tau"
        assert _coefficient(twisted, 1, "x", 1, "y", "x*y") == "2"
        assert _coefficient(twisted, 1, "y", 1, "x", "x*y") == "1"
        assert _coefficient(twisted, 1, "y", 1, "y", "y^2") == "2"

    def test_twist_is_associative(self, plane, q_plane_system):
        assert validate_algebra(zhang_twist(plane, q_plane_system)).ok

    def test_unverified_system_is_refused(self, plane, q_plane_system):
        bad = _corrupt(q_plane_system, 0, 2, 2)
        with pytest.raises(UnverifiedTwistingSystem):
            zhang_twist(plane, bad)
        with pytest.raises(UnverifiedTwistingSystem):
            twisting_to_principal(bad)

    def test_undefined_block(self, plane):
        fw = IndexWindow.interval(0, 4)
        ident = identity_map(plane).blocks
        blocks = {n: dict(ident) for n in fw.elements()}
        del blocks[1][3]
        tau = system_from_blocks(plane, fw, blocks)
        assert verify_twisting_system(plane, tau).ok
        with pytest.raises(OutOfWindow):
            zhang_twist(plane, tau)

    def test_unnormalized_system_moves_the_unit(self):
        A = cached_line("q", 0, 3)
        fw = IndexWindow.interval(0, 3)
        doubled = diagonal_map(A, lambda g, i: 2)
        tau = system_from_blocks(A, fw, {n: doubled.blocks for n in fw.elements()}, name="double")
        assert verify_twisting_system(A, tau).ok
        assert not is_normalized(tau)

        twisted = zhang_twist(A, tau)
        assert [A.field.format(c) for c in twisted.unit] == ["1/2"]
        assert _coefficient(twisted, 1, "x", 2, "x^2", "x^3") == "2"
        assert validate_algebra(twisted).ok

        # Γ normalizes: the compression is the twist by τ_g τ_e⁻¹, carried onto A^τ by τ_e
        T = gamma(tau)
        compressed = compress(T.carrier, T)
        assert same_structure(compressed, A)
        assert check_algebra_iso(twisted, compressed, tau.maps[0]).ok

    def test_associated_twist_iso(self, plane, q_plane_system):
        twisted = zhang_twist(plane, q_plane_system)
        alpha = associated_twist_iso(q_plane_system, twisted)
        assert check_g_algebra_iso(alpha.source, alpha.target, alpha).ok


# ---------------------------------------------------------------------------
# Delta / Gamma
# ---------------------------------------------------------------------------


class TestCorrespondence:
    def test_short_names(self):
        assert delta is principal_to_twisting
        assert gamma is twisting_to_principal

    @pytest.mark.parametrize("name", ["plane", "matrix_ring", "line_pair"])
    def test_identity_systems_round_trip(self, request, name):
        A = request.getfixturevalue(name)
        tau = identity_system(A)
        T = gamma(tau)
        assert verify_principal_map(T.carrier, T).ok
        back = delta(T)
        assert systems_agree(tau, back)
        assert back.block_count() > 0
        again = gamma(back, carrier=T.carrier)
        assert principal_maps_agree(T, again) and principal_maps_agree(again, T)

    def test_gamma_of_identity_is_canonical(self, plane, plane_bar):
        T = gamma(identity_system(plane), carrier=plane_bar)
        assert principal_maps_agree(canonical_principal_map(plane_bar), T)

    def test_delta_of_canonical_is_identity(self, plane, plane_bar):
        S = canonical_principal_map(plane_bar)
        tau = delta(S)
        assert systems_agree(identity_system(plane), tau)
        assert principal_maps_agree(S, gamma(tau, carrier=plane_bar))
        assert principal_maps_agree(gamma(tau, carrier=plane_bar), S)

    @pytest.mark.slow
    @pytest.mark.parametrize("field_label", ["q", "fp:5"])
    def test_q_twists_round_trip_on_0_to_6(self, field_label):
        A = cached_plane(field_label, 6)
        tau = q_power_system(A, 1, 2)
        T = gamma(tau)
        back = delta(T)
        assert systems_agree(tau, back)
        assert systems_agree(back, delta(gamma(back, carrier=T.carrier)))
        again = gamma(back, carrier=T.carrier)
        assert principal_maps_agree(T, again) and principal_maps_agree(again, T)

    def test_transported_map_round_trip(self, zhang_pair_bundle):
        T = zhang_pair_bundle.principal_maps["T"]
        tau = delta(T)
        assert systems_agree(tau, zhang_pair_bundle.systems["tau"])
        again = gamma(tau, carrier=T.carrier)
        assert principal_maps_agree(T, again) and principal_maps_agree(again, T)


# ---------------------------------------------------------------------------
# Twists versus compressions
# ---------------------------------------------------------------------------


class TestTwistCompression:
    def test_q_plane(self, q_plane_bundle):
        A = q_plane_bundle.algebras["A"]
        tau = q_plane_bundle.systems["tau"]
        T = q_plane_bundle.principal_maps["T"]
        compressed = compress(T.carrier, T)
        assert same_structure(compressed, zhang_twist(A, tau)), structure_differences(compressed, zhang_twist(A, tau))
        assert same_structure(compressed, q_plane_bundle.algebras["A^tau"])

    def test_zhang_pair(self, zhang_pair_bundle):
        B = zhang_pair_bundle.algebras["B"]
        tau = zhang_pair_bundle.systems["tau"]
        T = zhang_pair_bundle.principal_maps["T"]
        compressed = compress(T.carrier, T)
        assert same_structure(compressed, zhang_twist(B, tau))
        assert same_structure(compressed, zhang_pair_bundle.algebras["B^tau"])

    def test_identity_system(self, plane, plane_bar):
        T = gamma(identity_system(plane), carrier=plane_bar)
        assert same_structure(compress(plane_bar, T), plane)


# ---------------------------------------------------------------------------
# Twist equivalence from an iso of associated G-algebras
# ---------------------------------------------------------------------------


class TestTwistEquivalence:
    def test_matrix_pair(self, zhang_pair_bundle):
        M = zhang_pair_bundle.algebras["M"]
        B = zhang_pair_bundle.algebras["B"]
        phi = zhang_pair_bundle.morphisms["phi"]
        result = twist_equivalence_from_iso(M, B, inverse_morphism(phi))
        assert result.verdict.ok
        assert result.verdict.checked > 0
        assert result.twisted.window.format() == "-3..3"
        assert check_algebra_iso(M, result.twisted, result.iso).ok
        assert verify_twisting_system(result.system.carrier, result.system).ok

    def test_non_multiplicative_alpha_is_refused(self, zhang_pair_bundle):
        Mbar = zhang_pair_bundle.g_algebras["M.bar"]
        Bbar = zhang_pair_bundle.g_algebras["B.bar"]
        naive = identity_blocks_morphism(Mbar, Bbar)
        assert not check_g_algebra_iso(Mbar, Bbar, naive).ok
        with pytest.raises(UncertifiedIso):
            twist_equivalence_from_iso(zhang_pair_bundle.algebras["M"], zhang_pair_bundle.algebras["B"], naive)

    def test_self_equivalence_is_trivial(self, matrix_ring, matrix_bar):
        result = twist_equivalence_from_iso(matrix_ring, matrix_ring,
                                            identity_blocks_morphism(matrix_bar, matrix_bar))
        assert result.verdict.ok
        assert same_structure(result.twisted, matrix_ring)


# ---------------------------------------------------------------------------
# Randomized σ-power systems over 𝔽₅
# ---------------------------------------------------------------------------


@pytest.mark.slow
class TestRandomSystems:
    @settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.sampled_from(["plane", "pair"]), st.integers(1, 4), st.integers(1, 4))
    def test_sigma_power_systems_pass(self, kind, a, b):
        A = _carrier(kind)
        tau = q_power_system(A, a, b)
        assert verify_twisting_system(A, tau).ok
        assert check_inverse_twist_relation(A, tau).ok
        assert validate_algebra(zhang_twist(A, tau)).ok

    @settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(corruptions())
    def test_corrupted_systems_fail_with_a_witness(self, case):
        kind, a, b, g, d, c = case
        A = _carrier(kind)
        bad = _corrupt(q_power_system(A, a, b), g, d, c)
        verdict = verify_twisting_system(A, bad)
        assert not verdict.ok
        assert verdict.rule == "twist identity"
        assert len(verdict.witness) == 3

    @settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.sampled_from(["plane", "pair"]), st.integers(1, 4), st.integers(1, 4))
    def test_twist_equals_compression(self, kind, a, b):
        A = _carrier(kind)
        tau = q_power_system(A, a, b)
        Abar = associated_g_algebra(A, IndexWindow.interval(0, TOP))
        assert same_structure(compress(Abar, gamma(tau, carrier=Abar)), zhang_twist(A, tau))


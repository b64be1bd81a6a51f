"""
Tests for the shipped fixture bundles: every bundle is rebuilt and re-certified.
"""

import pytest

from src.cli.fixture_format import load_documents
from src.endo import endo_g_algebra
from src.fixtures import bundles, certify, fixture, list_fixtures, matrix_pair_image
from src.foundations import linalg
from src.foundations.errors import CertificationFailed, UnknownFixture
from src.foundations.fields import FieldSpec
from src.foundations.reports import Verdict
from src.galgebra import (
    associated_g_algebra,
    check_g_algebra_iso,
    identity_blocks_morphism,
    morphism_from_basis_map,
    principal_dimension_obstruction,
    verify_principal_map,
)
from src.graded import check_algebra_iso, same_structure, validate_algebra
from src.twisting import zhang_twist
from tests.fixtures import cached_bundle

BUNDLES = ["not-principal", "eg2", "zhang-matrix-pair", "q-plane"]


class TestRegistry:
    def test_list_fixtures(self):
        names = [name for name, _, _ in list_fixtures()]
        assert names == BUNDLES

    def test_default_windows(self):
        windows = {name: window for name, window, _ in list_fixtures()}
        assert windows["q-plane"] == "0..4"
        assert windows["eg2"] == "-2..2"

    def test_unknown_fixture(self):
        with pytest.raises(UnknownFixture, match="q-torus"):
            fixture("q-torus")


class TestCertification:
    @pytest.mark.parametrize("name", BUNDLES)
    def test_bundle_certifies(self, name):
        report = certify(cached_bundle(name))
        assert report.ok, [(f.subject, f.check, f.detail) for f in report.failures()]
        assert report.entries

    @pytest.mark.parametrize("name", BUNDLES)
    def test_bundle_certifies_over_f7(self, name):
        assert certify(cached_bundle(name, "fp:7")).ok

    def test_failed_certification_is_raised(self, broken_q_plane):
        with pytest.raises(CertificationFailed) as exc:
            fixture("q-plane")
        assert (exc.value.bundle, exc.value.subject) == ("q-plane", "sigma")
        assert exc.value.check == "check_algebra_automorphism"

    def test_certification_can_be_deferred(self, broken_q_plane):
        bundle = fixture("q-plane", certify_bundle=False)
        report = certify(bundle)
        assert [(f.subject, f.check) for f in report.failures()] == [("sigma", "check_algebra_automorphism")]

    def test_not_principal_records_the_obstruction(self, not_principal_bundle):
        report = certify(not_principal_bundle)
        checks = {(entry.subject, entry.check) for entry in report.entries}
        assert ("H", "principal_dimension_obstruction") in checks


class TestGoldens:
    def test_q_plane_commutation(self, q_plane_bundle):
        assert q_plane_bundle.goldens["x*y"] == "2"
        assert q_plane_bundle.goldens["y*x"] == "1"
        assert q_plane_bundle.goldens["q"] == 2

    def test_q_plane_twist_is_rebuilt_from_tau(self, q_plane_bundle):
        tau = q_plane_bundle.systems["tau"]
        again = zhang_twist(tau.carrier, tau)
        assert same_structure(again, q_plane_bundle.algebras["A^tau"])

    def test_q_plane_principal_map(self, q_plane_bundle):
        T = q_plane_bundle.principal_maps["T"]
        assert T.carrier is q_plane_bundle.g_algebras["A.bar"]
        assert verify_principal_map(T.carrier, T).ok

    def test_q_plane_on_a_smaller_window(self):
        bundle = cached_bundle("q-plane", "q", "0..2")
        assert bundle.algebras["A"].dims == {0: 1, 1: 2, 2: 3}
        assert bundle.goldens["x*y"] == "2"

    def test_zhang_pair_goldens(self, zhang_pair_bundle):
        assert zhang_pair_bundle.goldens["iso"] is True
        assert zhang_pair_bundle.goldens["twist_equivalence"] is True
        assert set(zhang_pair_bundle.goldens["dims_M"].values()) == {2}

    def test_zhang_pair_iso_reaches_the_twist(self, zhang_pair_bundle):
        iso = zhang_pair_bundle.maps["iso"]
        verdict = check_algebra_iso(iso.source, iso.target, iso)
        assert verdict.ok, verdict.detail

    def test_matrix_pair_image(self):
        assert matrix_pair_image((0, 1), "(x,0)") == {"E12*x": 1}
        assert matrix_pair_image((0, 1), "(0,x)") == {"E21*x": 1}
        assert matrix_pair_image((1, 1), "(1,0)") == {"E22": 1}

    def test_eg2_over_f5(self):
        bundle = fixture("eg2", "fp:5", "-2..2")
        dims = bundle.goldens["dims"]
        assert [dims[(0, n)] for n in (-1, 0, 1)] == [1, 2, 1]
        assert bundle.goldens["iso"] is True

    @pytest.mark.parametrize("name", ["eg2", "zhang-matrix-pair"])
    def test_iso_golden_comes_from_the_check(self, monkeypatch, name):
        monkeypatch.setattr(bundles, "check_g_algebra_iso",
                            lambda *args, **kwargs: Verdict.failed("g-algebra-iso", "multiplicativity", ()))
        bundle = fixture(name, certify_bundle=False)
        assert bundle.goldens["iso"] is False

    def test_opposite_shifts_goldens(self, opposite_shifts_bundle):
        goldens = opposite_shifts_bundle.goldens
        assert goldens["obstruction_pairs"] == []
        assert goldens["dims"][(0, 0)] == 2
        assert goldens["dims"][(-2, 2)] == 1

    def test_not_principal_generator(self, not_principal_bundle):
        assert not_principal_bundle.goldens["generator"] == "SUFFICIENT"
        assert not_principal_bundle.goldens["principal_on_window"] is False

    def test_field_override(self):
        bundle = cached_bundle("q-plane", "fp:7")
        assert bundle.field.label() == "fp:7"
        assert bundle.algebras["A"].field.characteristic == 7


class TestCorpus:
    """The shipped inputs under corpus/v1 rebuild the registered bundles."""

    def test_not_principal_inputs(self, corpus_dir):
        doc = load_documents([corpus_dir / "not-principal.fix"])
        bundle = cached_bundle("not-principal", "q", "0..3")
        assert same_structure(doc.algebras["B"], bundle.algebras["B"])
        P = doc.modules["P"]
        H = endo_g_algebra(P, P.index_window)
        assert H.dims_table() == bundle.goldens["dims"]
        assert principal_dimension_obstruction(H).pairs(shift=1) == bundle.goldens["obstruction_pairs"]

    def test_eg2_inputs(self, corpus_dir):
        doc = load_documents([corpus_dir / "eg2.fix"])
        bundle = cached_bundle("eg2", "fp:5", "-2..2")
        for name in ("A", "B"):
            assert same_structure(doc.algebras[name], bundle.algebras[name])
        P = doc.modules["P"]
        H = endo_g_algebra(P, P.index_window)
        assert H.dims_table() == bundle.goldens["dims"]
        Bbar = associated_g_algebra(doc.algebras["B"], P.index_window)
        assert check_g_algebra_iso(H, Bbar, identity_blocks_morphism(H, Bbar)).ok

    def test_zhang_matrix_pair_inputs(self, corpus_dir):
        doc = load_documents([corpus_dir / "zhang-matrix-pair.fix"])
        bundle = cached_bundle("zhang-matrix-pair", "q", "-1..1")
        for name in ("B", "M"):
            assert same_structure(doc.algebras[name], bundle.algebras[name])
        phi = doc.morphisms["phi"]
        expected = morphism_from_basis_map(phi.source, phi.target, matrix_pair_image)
        for pair, block in expected.blocks.items():
            if 0 not in block.shape:
                assert linalg.equal(phi.block(pair), block), pair
        assert check_g_algebra_iso(phi.source, phi.target, phi).ok

    def test_inputs_read_over_another_field(self, corpus_dir):
        doc = load_documents([corpus_dir / "not-principal.fix"], field=FieldSpec.parse("fp:7"))
        assert doc.algebras["B"].field.characteristic == 7
        assert validate_algebra(doc.algebras["B"]).ok

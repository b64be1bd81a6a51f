"""
Pytest fixtures for the zalg test suite.

Usage in any test file::

    from tests.fixtures import rationals, q_plane, plane_bar

Or add ``conftest.py`` that imports these fixtures so pytest auto-discovers them::

    # tests/conftest.py
    from tests.fixtures import *  # noqa: F401,F403

Building algebras is pure and deterministic, so the heavier objects are
cached per session.  Hypothesis tests cannot take function-scoped fixtures;
they use the ``cached_*`` helpers below directly.
"""

from __future__ import annotations

from dataclasses import replace
from functools import lru_cache
from pathlib import Path

import pytest

from src.fixtures import FixtureBundle, bundles, fixture
from src.foundations.fields import FieldSpec
from src.foundations.groups import DegreeWindow, GradingGroup, IndexWindow
from src.galgebra import GAlgebraWindow, associated_g_algebra
from src.graded import (
    GradedAlgebra,
    build_direct_sum,
    build_laurent_ring,
    build_matrix_example,
    build_polynomial_ring,
    diagonal_map,
    scaling_automorphism,
)
from src.twisting import TwistingSystem, sigma_power_system

CORPUS = Path(__file__).resolve().parent.parent / "corpus" / "v1"


# ---------------------------------------------------------------------------
# Cached builders (shared with hypothesis tests)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cached_plane(field_label: str, top: int) -> GradedAlgebra:
    """k[x,y] with x, y in degree 1 on the degree window 0..top."""
    return build_polynomial_ring(FieldSpec.parse(field_label), [1, 1], DegreeWindow.interval(0, top), name="A")


@lru_cache(maxsize=None)
def cached_line_pair(field_label: str, top: int) -> GradedAlgebra:
    """k[x] ⊕ k[y] with x, y in degree 1 on 0..top."""
    F = FieldSpec.parse(field_label)
    W = DegreeWindow.interval(0, top)
    return build_direct_sum(build_polynomial_ring(F, [1], W, names=("x",)),
                            build_polynomial_ring(F, [1], W, names=("y",)), name="A")


@lru_cache(maxsize=None)
def cached_line(field_label: str, lo: int, hi: int) -> GradedAlgebra:
    """k[x] with x in degree 1 on lo..hi (dim 0 below degree 0)."""
    return build_polynomial_ring(FieldSpec.parse(field_label), [1], DegreeWindow.interval(lo, hi), name="B")


@lru_cache(maxsize=None)
def cached_laurent(field_label: str, lo: int, hi: int) -> GradedAlgebra:
    """k[x, x⁻¹] with x in degree 1 on lo..hi."""
    return build_laurent_ring(FieldSpec.parse(field_label), 1, DegreeWindow.interval(lo, hi), name="L")


@lru_cache(maxsize=None)
def cached_bundle(name: str, field_label: str = "q", window: str | None = None) -> FixtureBundle:
    return fixture(name, field_label, window)


def q_power_system(A: GradedAlgebra, a: int, b: int) -> TwistingSystem:
    """τ_n = σⁿ with σ(x) = a·x, σ(y) = b·y (works for k[x,y] and k[x] ⊕ k[y])."""
    return sigma_power_system(A, scaling_automorphism(A, {"x": a, "y": b}))


# ---------------------------------------------------------------------------
# Fields and groups
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session")
def rationals() -> FieldSpec:
    return FieldSpec.rationals()


@pytest.fixture(scope="session")
def f5() -> FieldSpec:
    return FieldSpec.prime(5)


@pytest.fixture(scope="session")
def integers() -> GradingGroup:
    return GradingGroup.integers()


@pytest.fixture(scope="session")
def klein_table() -> tuple[list[str], list[list[str]]]:
    """Cayley table of ℤ/2 × ℤ/2 as (labels, rows)."""
    labels = ["e", "a", "b", "c"]
    rows = [
        ["e", "a", "b", "c"],
        ["a", "e", "c", "b"],
        ["b", "c", "e", "a"],
        ["c", "b", "a", "e"],
    ]
    return labels, rows


# ---------------------------------------------------------------------------
# Graded algebras
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session")
def plane() -> GradedAlgebra:
    """
    k[x,y] over ℚ on degrees 0..4.

    dim A_d = d + 1; basis of A_2 is ``x^2, x*y, y^2``.
    """
    return cached_plane("q", 4)


@pytest.fixture(scope="session")
def plane_f5() -> GradedAlgebra:
    return cached_plane("fp:5", 4)


@pytest.fixture(scope="session")
def line_pair() -> GradedAlgebra:
    return cached_line_pair("q", 3)


@pytest.fixture(scope="session")
def matrix_ring(rationals) -> GradedAlgebra:
    """The 2×2 pattern ring on degrees −2..2."""
    return build_matrix_example(rationals, DegreeWindow.interval(-2, 2))


@pytest.fixture(scope="session")
def laurent_pair(rationals) -> GradedAlgebra:
    W = DegreeWindow.interval(-2, 2)
    return build_direct_sum(build_laurent_ring(rationals, 1, W), build_laurent_ring(rationals, 1, W), name="B")


@pytest.fixture(scope="session")
def q_plane_system(plane) -> TwistingSystem:
    """τ_n = σⁿ on k[x,y] with σ(x) = x, σ(y) = 2y."""
    return sigma_power_system(plane, scaling_automorphism(plane, {"y": 2}))


# ---------------------------------------------------------------------------
# G-algebras
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session")
def plane_index() -> IndexWindow:
    return IndexWindow.interval(0, 4)


@pytest.fixture(scope="session")
def plane_bar(plane, plane_index) -> GAlgebraWindow:
    """Ā for k[x,y] on the index window 0..4."""
    return associated_g_algebra(plane, plane_index)


@pytest.fixture(scope="session")
def matrix_bar(matrix_ring) -> GAlgebraWindow:
    return associated_g_algebra(matrix_ring, IndexWindow.interval(-2, 2))


# ---------------------------------------------------------------------------
# Fixture bundles
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session")
def not_principal_bundle() -> FixtureBundle:
    return cached_bundle("not-principal")


@pytest.fixture(scope="session")
def opposite_shifts_bundle() -> FixtureBundle:
    return cached_bundle("eg2")


@pytest.fixture(scope="session")
def zhang_pair_bundle() -> FixtureBundle:
    return cached_bundle("zhang-matrix-pair")


@pytest.fixture(scope="session")
def q_plane_bundle() -> FixtureBundle:
    return cached_bundle("q-plane")


@pytest.fixture
def broken_q_plane(monkeypatch) -> None:
    """Registers a q-plane builder whose automorphism is not multiplicative."""

    def build(field, I):
        bundle = bundles._q_plane(field, I)
        A = bundle.algebras["A"]
        return replace(bundle, maps={"sigma": diagonal_map(A, lambda g, i: 2 if g == 1 else 1)})

    monkeypatch.setitem(bundles._BUILDERS, "q-plane", (build, "0..2", "q-plane with a broken sigma"))


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS

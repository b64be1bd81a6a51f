"""
Canonical fixture bundles for the worked examples.

Bundles
-------
not-principal       B = k[x], P_{n*} = B⟨n⟩ (n even) or B⟨−n⟩ (n odd);
                    its endomorphism G-algebra has no principal map.
eg2                 A = k[x] ⊕ k[y] (x, y in degree 1), P_{n*} = k[x]⟨n⟩ ⊕ k[y]⟨−n⟩;
                    H ≅ B̄ for B = k[x] ⊕ k[y] with deg x = 1, deg y = −1.
zhang-matrix-pair   the 2×2 pattern ring M and B = k[x,x⁻¹] ⊕ k[x,x⁻¹],
                    with an explicit iso B̄ ≅ M̄ and the twist B^τ ≅ M.
q-plane             k[x,y] twisted by σ(x) = x, σ(y) = q·y.

``window`` is always the index window I.  Algebras whose twisting data is
exchanged use I as their degree window too; endomorphism bases get the
degree window their hom cells need.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Callable

from pydantic import BaseModel, ConfigDict

from src.endo import (
    BigradedModule,
    alternating_shift_rows,
    endo_g_algebra,
    generator_heuristic,
    invertible_homogeneous_elements,
    opposite_shift_rows,
)
from src.foundations.errors import CertificationFailed, UnknownFixture
from src.foundations.fields import FieldSpec
from src.foundations.groups import DegreeWindow, IndexWindow
from src.galgebra import (
    GAlgebraMorphism,
    GAlgebraWindow,
    PrincipalMap,
    associated_g_algebra,
    check_g_algebra_iso,
    identity_blocks_morphism,
    inverse_morphism,
    morphism_from_basis_map,
    principal_dimension_obstruction,
    validate_g_algebra,
    verify_principal_map,
)
from src.graded import (
    GradedAlgebra,
    GradedLinearMap,
    build_direct_sum,
    build_laurent_ring,
    build_matrix_example,
    build_polynomial_ring,
    check_algebra_automorphism,
    check_algebra_iso,
    monomial_label,
    parse_monomial,
    scaling_automorphism,
    validate_algebra,
)
from src.twisting import (
    TwistingSystem,
    associated_twist_iso,
    sigma_power_system,
    twist_equivalence_from_iso,
    twisting_to_principal,
    verify_twisting_system,
    zhang_twist,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FixtureBundle:
    """
    Every object of one worked example, keyed by name, plus goldens.

    Goldens are plain Python values (dims tables, witness pairs, verdict
    flags) that tests compare against recomputation.
    """

    name: str
    description: str
    field: FieldSpec
    index_window: IndexWindow
    algebras: dict[str, GradedAlgebra] = dataclass_field(default_factory=dict)
    g_algebras: dict[str, GAlgebraWindow] = dataclass_field(default_factory=dict)
    systems: dict[str, TwistingSystem] = dataclass_field(default_factory=dict)
    principal_maps: dict[str, PrincipalMap] = dataclass_field(default_factory=dict)
    morphisms: dict[str, GAlgebraMorphism] = dataclass_field(default_factory=dict)
    maps: dict[str, GradedLinearMap] = dataclass_field(default_factory=dict)
    modules: dict[str, BigradedModule] = dataclass_field(default_factory=dict)
    goldens: dict[str, Any] = dataclass_field(default_factory=dict)


class CertificationEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    subject: str
    check: str
    ok: bool
    detail: str = ""


class CertificationReport(BaseModel):
    """Outcome of re-verifying every object of a bundle from scratch."""

    model_config = ConfigDict(frozen=True)

    bundle: str
    entries: list[CertificationEntry] = []

    @property
    def ok(self) -> bool:
        return all(entry.ok for entry in self.entries)

    def failures(self) -> list[CertificationEntry]:
        return [entry for entry in self.entries if not entry.ok]


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _degree_window(I: IndexWindow, lo: int, hi: int) -> DegreeWindow:
    return DegreeWindow(group=I.group, lo=lo, hi=hi)


def _same_as(I: IndexWindow) -> DegreeWindow:
    return _degree_window(I, min(I.lo, 0), max(I.hi, 0))


def _reach(I: IndexWindow) -> int:
    return max(abs(I.lo), abs(I.hi))


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def _not_principal(field: FieldSpec, I: IndexWindow) -> FixtureBundle:
    w = _reach(I)
    B = build_polynomial_ring(field, [1], _degree_window(I, -2 * w, 2 * w), name="B")
    P = alternating_shift_rows(B, I)
    H = endo_g_algebra(P, I)
    obstruction = principal_dimension_obstruction(H)
    goldens: dict[str, Any] = {
        "dims": H.dims_table(),
        "obstruction_pairs": obstruction.pairs(shift=1),
        "principal_on_window": obstruction.ok,
        "generator": generator_heuristic(P).verdict,
    }
    return FixtureBundle(
        name="not-principal",
        description="endomorphism G-algebra of alternating shifts of k[x]; not principal",
        field=field,
        index_window=I,
        algebras={"B": B},
        g_algebras={"H": H},
        modules={"P": P},
        goldens=goldens,
    )


def _opposite_shifts(field: FieldSpec, I: IndexWindow) -> FixtureBundle:
    w = _reach(I)
    W = _degree_window(I, -2 * w, 2 * w)
    A = build_direct_sum(build_polynomial_ring(field, [1], W, names=("x",)),
                         build_polynomial_ring(field, [1], W, names=("y",)), name="A")
    B = build_direct_sum(build_polynomial_ring(field, [1], W, names=("x",)),
                         build_polynomial_ring(field, [-1], W, names=("y",)), name="B")
    P = opposite_shift_rows(A, I)
    H = endo_g_algebra(P, I)
    Bbar = associated_g_algebra(B, I)
    iso = identity_blocks_morphism(H, Bbar, name="phi")
    invertibles = invertible_homogeneous_elements(B)
    goldens: dict[str, Any] = {
        "dims": H.dims_table(),
        "obstruction_pairs": principal_dimension_obstruction(H).pairs(),
        "iso": check_g_algebra_iso(H, Bbar, iso).ok,
        "generator": generator_heuristic(P).verdict,
        "invertible_degrees": invertibles.degrees(),
    }
    return FixtureBundle(
        name="eg2",
        description="H of k[x]<n> + k[y]<-n> over k[x]+k[y]; H is isomorphic to B-bar",
        field=field,
        index_window=I,
        algebras={"A": A, "B": B},
        g_algebras={"H": H, "B.bar": Bbar},
        morphisms={"phi": iso},
        modules={"P": P},
        goldens=goldens,
    )


def _parity(i: int) -> int:
    return 1 if i % 2 == 0 else 2


def matrix_pair_image(pair, label: str) -> dict[str, int]:
    """
    Basis map B̄ → M̄ on component (i, j): (x^{j−i},0) ↦ E_{σ(i)σ(j)}x^{j−i}
    and (0,x^{j−i}) ↦ E_{σ'(i)σ'(j)}x^{j−i}, σ(i) = 1 for even i, 2 otherwise,
    σ' the other index.
    """
    i, j = pair
    n = parse_monomial(label).get("x", 0)
    if label.startswith("(0,"):
        a, b = 3 - _parity(i), 3 - _parity(j)
    else:
        a, b = _parity(i), _parity(j)
    mono = monomial_label(("x",), (n,))
    unit = f"E{a}{b}"
    return {unit if mono == "1" else f"{unit}*{mono}": 1}


def _zhang_matrix_pair(field: FieldSpec, I: IndexWindow) -> FixtureBundle:
    W = _same_as(I)
    M = build_matrix_example(field, W, name="M")
    B = build_direct_sum(build_laurent_ring(field, 1, W), build_laurent_ring(field, 1, W), name="B")
    Mbar = associated_g_algebra(M, I, name="M.bar")
    Bbar = associated_g_algebra(B, I, name="B.bar")
    phi = morphism_from_basis_map(Bbar, Mbar, matrix_pair_image, name="phi")
    equivalence = twist_equivalence_from_iso(M, B, inverse_morphism(phi))
    goldens: dict[str, Any] = {
        "dims_M": dict(M.dims),
        "iso": check_g_algebra_iso(Bbar, Mbar, phi).ok,
        "twist_equivalence": equivalence.verdict.ok,
    }
    return FixtureBundle(
        name="zhang-matrix-pair",
        description="2x2 pattern ring M and k[x,x^-1]+k[x,x^-1]: Zhang twists of each other",
        field=field,
        index_window=I,
        algebras={"M": M, "B": B, "B^tau": equivalence.twisted},
        g_algebras={"M.bar": Mbar, "B.bar": Bbar},
        systems={"tau": equivalence.system},
        principal_maps={"T": equivalence.principal},
        morphisms={"phi": phi},
        maps={"iso": equivalence.iso},
        goldens=goldens,
    )


def _q_plane(field: FieldSpec, I: IndexWindow, q: int = 2) -> FixtureBundle:
    W = _same_as(I)
    A = build_polynomial_ring(field, [1, 1], W, name="A")
    sigma = scaling_automorphism(A, {"y": q})
    tau = sigma_power_system(A, sigma)
    twisted = zhang_twist(A, tau, name="A^tau")
    Abar = associated_g_algebra(A, I, name="A.bar")
    gamma = twisting_to_principal(tau, carrier=Abar, name="T")
    alpha = associated_twist_iso(tau, twisted, I)
    goldens: dict[str, Any] = {"q": q}
    if W.contains(1) and W.contains(2):
        x, y = twisted.label_index(1, "x"), twisted.label_index(1, "y")
        xy = twisted.label_index(2, "x*y")
        goldens["x*y"] = field.format(twisted.structure[(1, 1)][x][y][xy])
        goldens["y*x"] = field.format(twisted.structure[(1, 1)][y][x][xy])
    return FixtureBundle(
        name="q-plane",
        description="k[x,y] twisted by sigma(y) = q*y; x*y = q y*x in the twist",
        field=field,
        index_window=I,
        algebras={"A": A, "A^tau": twisted},
        g_algebras={"A.bar": Abar, "A^tau.bar": alpha.source},
        systems={"tau": tau},
        principal_maps={"T": gamma},
        morphisms={"alpha": alpha},
        maps={"sigma": sigma},
        goldens=goldens,
    )


_BUILDERS: dict[str, tuple[Callable[..., FixtureBundle], str, str]] = {
    "not-principal": (_not_principal, "-3..3", "endomorphism G-algebra with no principal map"),
    "eg2": (_opposite_shifts, "-2..2", "principal endomorphism G-algebra H = B-bar"),
    "zhang-matrix-pair": (_zhang_matrix_pair, "-3..3", "matrix pattern ring as a Zhang twist"),
    "q-plane": (_q_plane, "0..4", "q-skew plane as a Zhang twist of k[x,y]"),
}


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


def list_fixtures() -> list[tuple[str, str, str]]:
    """(name, default window, description) for every shipped bundle."""
    return [(name, window, text) for name, (_, window, text) in _BUILDERS.items()]


def fixture(name: str, field: FieldSpec | str | None = None, window: IndexWindow | str | None = None,
            certify_bundle: bool = True) -> FixtureBundle:
    """
    Build the named bundle over ``field`` on index window ``window``.

    Raises ``UnknownFixture`` for names outside :func:`list_fixtures` and, unless
    ``certify_bundle`` is off, ``CertificationFailed`` with the first object
    that fails re-verification.
    """
    if name not in _BUILDERS:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(_BUILDERS)}")
    builder, default_window, _ = _BUILDERS[name]
    if field is None or isinstance(field, str):
        field = FieldSpec.parse(field or "q")
    if window is None or isinstance(window, str):
        window = IndexWindow.parse(window or default_window)
    bundle = builder(field, window)
    if certify_bundle:
        report = certify(bundle)
        if not report.ok:
            first = report.failures()[0]
            raise CertificationFailed(name, first.subject, first.check, first.detail)
        logger.info("fixture %s certified over %s on %s", name, field.label(), window.format())
    return bundle


def certify(bundle: FixtureBundle) -> CertificationReport:
    """Re-verify every object of ``bundle``; nothing is trusted from construction."""
    entries: list[CertificationEntry] = []

    def add(subject: str, check: str, ok: bool, detail: str = "") -> None:
        entries.append(CertificationEntry(subject=subject, check=check, ok=ok, detail=detail))

    for key, A in bundle.algebras.items():
        report = validate_algebra(A)
        add(key, "validate_algebra", report.ok, "; ".join(v.detail for v in report.violations[:3]))
    for key, R in bundle.g_algebras.items():
        report = validate_g_algebra(R)
        add(key, "validate_g_algebra", report.ok, "; ".join(v.detail for v in report.violations[:3]))
    for key, tau in bundle.systems.items():
        verdict = verify_twisting_system(tau.carrier, tau)
        add(key, "verify_twisting_system", verdict.ok, verdict.detail)
    for key, T in bundle.principal_maps.items():
        verdict = verify_principal_map(T.carrier, T)
        add(key, "verify_principal_map", verdict.ok, verdict.detail)
    for key, phi in bundle.morphisms.items():
        verdict = check_g_algebra_iso(phi.source, phi.target, phi)
        add(key, "check_g_algebra_iso", verdict.ok, verdict.detail)
    for key, sigma in bundle.maps.items():
        if sigma.source is sigma.target:
            verdict = check_algebra_automorphism(sigma.source, sigma)
            add(key, "check_algebra_automorphism", verdict.ok, verdict.detail)
        else:
            verdict = check_algebra_iso(sigma.source, sigma.target, sigma)
            add(key, "check_algebra_iso", verdict.ok, verdict.detail)
    if bundle.name == "not-principal":
        H = bundle.g_algebras["H"]
        add("H", "principal_dimension_obstruction", not principal_dimension_obstruction(H).ok,
            "expected a nonempty obstruction")
    return CertificationReport(bundle=bundle.name, entries=entries)


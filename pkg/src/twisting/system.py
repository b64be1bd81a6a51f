"""
Twisting systems and Zhang twists.

A twisting system τ on A is a family {τ_g} of degree-preserving linear
automorphisms with τ_g(y·τ_h(z)) = τ_g(y)·τ_{gh}(z).  Members are indexed by
a family window; a member's blocks may be partial (undefined at degrees
where the data defining them left a window).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product

from src.foundations import linalg
from src.foundations.errors import (
    MissingComponent,
    OutOfWindow,
    ShapeMismatch,
    UnverifiedTwistingSystem,
)
from src.foundations.groups import GroupElement, IndexWindow, group_op
from src.foundations.reports import Verdict
from src.graded.algebra import GradedAlgebra, contract, unit_vector
from src.graded.maps import GradedLinearMap, identity_map, map_power

logger = logging.getLogger(__name__)


def degree_family_window(A: GradedAlgebra) -> IndexWindow:
    """The degree window of A reused as a family window."""
    return IndexWindow(group=A.group, lo=A.window.lo, hi=A.window.hi)


@dataclass(frozen=True, eq=False)
class TwistingSystem:
    """
    τ = {τ_g : g ∈ family_window} on ``carrier``.

    Fields:
        maps  — g → degree-preserving ``GradedLinearMap`` A → A (possibly partial).
        sigma — the generating automorphism when τ_n = σⁿ.
    """

    carrier: GradedAlgebra
    family_window: IndexWindow
    maps: dict
    sigma: GradedLinearMap | None = None
    name: str = "tau"

    def __post_init__(self) -> None:
        A = self.carrier
        if self.family_window.group != A.group:
            raise ShapeMismatch("family window is over a different group")
        for g in self.family_window.elements():
            if g not in self.maps:
                raise MissingComponent(f"family window claims tau_{g} but it is missing")
        for g, tau in self.maps.items():
            if tau.degree_shift != A.identity:
                raise ShapeMismatch(f"tau_{g} does not preserve degrees")
            if tau.source.dims != A.dims or tau.target.dims != A.dims:
                raise ShapeMismatch(f"tau_{g} is not an endomap of {A.name}")

    def members(self) -> tuple[GroupElement, ...]:
        return self.family_window.elements()

    def defined(self, g: GroupElement, d: GroupElement) -> bool:
        return g in self.maps and self.maps[g].defined(d)

    def block(self, g: GroupElement, d: GroupElement):
        if g not in self.maps:
            raise OutOfWindow(f"tau_{g} is not a member of the family")
        return self.maps[g].block(d)

    def apply_coords(self, g: GroupElement, d: GroupElement, coords) -> list:
        if g not in self.maps:
            raise OutOfWindow(f"tau_{g} is not a member of the family")
        return self.maps[g].apply_coords(d, coords)

    def block_count(self) -> int:
        return sum(len(tau.blocks) for tau in self.maps.values())


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def identity_system(A: GradedAlgebra, family_window: IndexWindow | None = None) -> TwistingSystem:
    family_window = family_window or degree_family_window(A)
    ident = identity_map(A)
    return TwistingSystem(A, family_window, {g: ident for g in family_window.elements()}, name="id")


def sigma_power_system(A: GradedAlgebra, sigma: GradedLinearMap,
                       family_window: IndexWindow | None = None, name: str = "tau") -> TwistingSystem:
    """τ_n = σⁿ for a degree-preserving automorphism σ (integer grading)."""
    if not A.group.is_integers:
        raise ShapeMismatch("sigma-power systems need the integers as grading group")
    family_window = family_window or degree_family_window(A)
    maps = {n: map_power(sigma, n) for n in family_window.elements()}
    return TwistingSystem(A, family_window, maps, sigma=sigma, name=name)


def system_from_blocks(A: GradedAlgebra, family_window: IndexWindow, blocks: dict,
                       name: str = "tau") -> TwistingSystem:
    """Build τ from ``{g: {degree: matrix}}``."""
    maps = {g: GradedLinearMap(A, A, A.identity, dict(blocks.get(g, {}))) for g in family_window.elements()}
    return TwistingSystem(A, family_window, maps, name=name)


def restrict_system(tau: TwistingSystem, A: GradedAlgebra, family_window: IndexWindow | None = None) -> TwistingSystem:
    """τ on a restriction of its carrier (and optionally a smaller family window)."""
    family_window = family_window or tau.family_window
    maps = {}
    for g in family_window.elements():
        if g not in tau.maps:
            raise MissingComponent(f"tau_{g} is not a member of {tau.name}")
        blocks = {d: M for d, M in tau.maps[g].blocks.items() if A.window.contains(d)}
        maps[g] = GradedLinearMap(A, A, A.identity, blocks)
    return TwistingSystem(A, family_window, maps, name=tau.name)


def is_normalized(tau: TwistingSystem) -> bool:
    """τ_e is the identity on every block where it is defined."""
    e = tau.carrier.identity
    if e not in tau.maps:
        return False
    return all(linalg.is_identity(M) for M in tau.maps[e].blocks.values())


def systems_agree(tau: TwistingSystem, other: TwistingSystem) -> bool:
    """Every block of ``other`` is defined in ``tau`` with the same matrix."""
    for g, m in other.maps.items():
        for d, M in m.blocks.items():
            if not tau.defined(g, d) or not linalg.equal(tau.block(g, d), M):
                return False
    return True


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------


def verify_twisting_system(A: GradedAlgebra, tau: TwistingSystem) -> Verdict:
    """
    τ_g(y τ_h(z)) = τ_g(y) τ_{gh}(z) for g in the family, y ∈ A_h, z ∈ A_l.

    Triples are skipped (and counted) when h or gh is not a family member,
    when hl leaves the window or when a needed block is undefined.  After the
    identity sweep every defined block must be invertible.  Witness of an
    identity failure: ``(g, y, z)`` as basis labels.
    """
    check = "twisting-system"
    if tau.carrier is not A and tau.carrier.dims != A.dims:
        raise ShapeMismatch(f"{tau.name} is a family on a different algebra")
    G = A.group
    members = set(tau.members())
    checked = skipped = 0
    for g in tau.members():
        for h, l in product(A.degrees(), repeat=2):
            n = A.dims[h] * A.dims[l]
            if n == 0:
                continue
            gh, hl = group_op(G, g, h), group_op(G, h, l)
            if h not in members or gh not in members or not A.window.contains(hl):
                skipped += n
                continue
            if not (tau.defined(h, l) and tau.defined(g, hl) and tau.defined(g, h) and tau.defined(gh, l)):
                skipped += n
                continue
            for i, j in product(range(A.dims[h]), range(A.dims[l])):
                checked += 1
                y = unit_vector(A.dims[h], i, A.K)
                z = unit_vector(A.dims[l], j, A.K)
                lhs = tau.apply_coords(g, hl, A.multiply_coords(h, y, l, tau.apply_coords(h, l, z)))
                rhs = A.multiply_coords(h, tau.apply_coords(g, h, y), l, tau.apply_coords(gh, l, z))
                if lhs != rhs:
                    return Verdict.failed(
                        check, "twist identity", (g, A.labels[h][i], A.labels[l][j]),
                        f"tau_{g}(y tau_{h}(z)) = {A.describe(hl, lhs)}, "
                        f"tau_{g}(y) tau_{gh}(z) = {A.describe(hl, rhs)}",
                        checked, skipped,
                    )

    for g in tau.members():
        for d, M in tau.maps[g].blocks.items():
            checked += 1
            if not linalg.is_invertible(M):
                return Verdict.failed(check, "invertibility", (g, d), f"tau_{g} is singular in degree {d}",
                                      checked, skipped)

    if skipped:
        logger.debug("%s: %d twist-identity instances skipped on the window", tau.name, skipped)
    return Verdict.passed(check, checked, skipped)


def check_inverse_twist_relation(A: GradedAlgebra, tau: TwistingSystem) -> Verdict:
    """
    τ_h⁻¹(a b) = τ_h⁻¹(a) · τ_m τ_{hm}⁻¹(b) for a ∈ A_m, b ∈ A_l.

    Raises ``SingularBlock`` when a block that must be inverted is singular.
    Witness: ``(h, a, b)``.
    """
    check = "inverse-twist-relation"
    G = A.group
    members = set(tau.members())
    inverses: dict = {}

    def inv_apply(g, d, coords):
        if (g, d) not in inverses:
            inverses[(g, d)] = linalg.entries(linalg.inverse(tau.block(g, d)))
        return linalg.apply_rows(inverses[(g, d)], coords, A.K)

    checked = skipped = 0
    for h in tau.members():
        for m, l in product(A.degrees(), repeat=2):
            n = A.dims[m] * A.dims[l]
            if n == 0:
                continue
            hm, ml = group_op(G, h, m), group_op(G, m, l)
            if m not in members or hm not in members or not A.window.contains(ml):
                skipped += n
                continue
            if not (tau.defined(h, ml) and tau.defined(h, m) and tau.defined(m, l) and tau.defined(hm, l)):
                skipped += n
                continue
            for i, j in product(range(A.dims[m]), range(A.dims[l])):
                checked += 1
                a = unit_vector(A.dims[m], i, A.K)
                b = unit_vector(A.dims[l], j, A.K)
                lhs = inv_apply(h, ml, A.multiply_coords(m, a, l, b))
                rhs = A.multiply_coords(m, inv_apply(h, m, a), l,
                                        tau.apply_coords(m, l, inv_apply(hm, l, b)))
                if lhs != rhs:
                    return Verdict.failed(
                        check, "inverse twist identity", (h, A.labels[m][i], A.labels[l][j]),
                        f"{A.describe(ml, lhs)} != {A.describe(ml, rhs)}",
                        checked, skipped,
                    )
    return Verdict.passed(check, checked, skipped)


# ---------------------------------------------------------------------------
# Zhang twist
# ---------------------------------------------------------------------------


def zhang_twist(A: GradedAlgebra, tau: TwistingSystem, name: str | None = None) -> GradedAlgebra:
    """
    A^τ: the graded vector space A with x ⋆ y = x·τ_g(y) for x ∈ A_g.
    Its unit is τ_e⁻¹(1_A).

    τ must pass :func:`verify_twisting_system`; every τ_g with g in the window
    must be defined wherever a product stays in the window.
    """
    verdict = verify_twisting_system(A, tau)
    if not verdict.ok:
        raise UnverifiedTwistingSystem(f"{tau.name}: {verdict.rule} fails at {verdict.witness}: {verdict.detail}")
    G = A.group
    K = A.K
    e = A.identity
    if not tau.defined(e, e):
        raise OutOfWindow(f"tau_{e} is undefined in degree {e}")
    unit = tuple(linalg.apply(linalg.inverse(tau.block(e, e)), A.unit))
    structure = {}
    for (g, h), T in A.structure.items():
        if not tau.defined(g, h):
            raise OutOfWindow(f"tau_{g} is undefined in degree {h}")
        gh = group_op(G, g, h)
        twisted = [tuple(tau.apply_coords(g, h, unit_vector(A.dims[h], j, K))) for j in range(A.dims[h])]
        structure[(g, h)] = tuple(
            tuple(tuple(contract(T, unit_vector(A.dims[g], i, K), twisted[j], A.dims[gh], K))
                  for j in range(A.dims[h]))
            for i in range(A.dims[g])
        )
    logger.info("built Zhang twist of %s by %s", A.name, tau.name)
    return GradedAlgebra(
        field=A.field,
        group=G,
        window=A.window,
        dims=dict(A.dims),
        labels=dict(A.labels),
        structure=structure,
        unit=unit,
        name=name or f"{A.name}^{tau.name}",
    )

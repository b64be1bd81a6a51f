"""
The bijection between twisting systems on A and principal maps on Ā.

* ``principal_to_twisting`` (Δ): τ_g = 𝒮_g⁻¹𝒯_g read off the e-row.
* ``twisting_to_principal`` (Γ): on R_{h,l}, Γ(τ)_g = 𝒮_{gh}∘τ_{gh}τ_h⁻¹∘𝒮_h⁻¹.

Under the identification Ā_{h,l} = A_{h⁻¹l} both 𝒮 factors are identity
blocks, so only the middle factor carries data.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from src.foundations import linalg
from src.foundations.errors import (
    MissingComponent,
    NotAssociated,
    UncertifiedIso,
    UnverifiedPrincipalMap,
    UnverifiedTwistingSystem,
)
from src.foundations.groups import IndexWindow, group_op
from src.foundations.reports import Verdict
from src.galgebra.morphism import GAlgebraMorphism, check_g_algebra_iso
from src.galgebra.principal import (
    PrincipalMap,
    canonical_principal_map,
    compression_window,
    conjugate_principal_map,
    verify_principal_map,
)
from src.galgebra.window import GAlgebraWindow, Side, associated_g_algebra
from src.graded.algebra import GradedAlgebra, restrict
from src.graded.maps import GradedLinearMap, check_algebra_iso

from .system import (
    TwistingSystem,
    degree_family_window,
    restrict_system,
    verify_twisting_system,
    zhang_twist,
)

logger = logging.getLogger(__name__)


def _origin_algebra(R: GAlgebraWindow) -> GradedAlgebra:
    if R.origin is None or R.origin.side is not Side.RIGHT:
        raise NotAssociated(f"{R.name} does not carry the identification R_(h,l) = A_(h^-1 l)")
    return R.origin.algebra


def principal_to_twisting(T: PrincipalMap, name: str | None = None) -> TwistingSystem:
    """
    Δ(𝒯): τ_g on A_d is the block of 𝒯_g at (e, d).

    Defined where (e, d) and (g, gd) are both present on the index window.
    """
    R = T.carrier
    A = _origin_algebra(R)
    verdict = verify_principal_map(R, T)
    if not verdict.ok:
        raise UnverifiedPrincipalMap(f"{T.name}: {verdict.rule} fails at {verdict.witness}")
    e = A.identity
    maps = {}
    for g in T.members():
        blocks = {d: T.block(g, (e, d)) for d in A.degrees() if T.defined(g, (e, d))}
        maps[g] = GradedLinearMap(A, A, e, blocks)
    logger.debug("delta(%s): %d blocks", T.name, sum(len(m.blocks) for m in maps.values()))
    return TwistingSystem(A, T.family_window, maps, name=name or T.name)


def twisting_to_principal(tau: TwistingSystem, I: IndexWindow | None = None,
                          carrier: GAlgebraWindow | None = None, name: str | None = None) -> PrincipalMap:
    """
    Γ(τ) on Ā(A) over ``I`` (default: the degree window of A).

    Pass ``carrier`` to reuse an existing Ā; it must be associated to τ's
    algebra.  Blocks need τ_h and τ_{gh} at h⁻¹l; ``SingularBlock`` if τ_h
    cannot be inverted there.
    """
    A = tau.carrier
    verdict = verify_twisting_system(A, tau)
    if not verdict.ok:
        raise UnverifiedTwistingSystem(f"{tau.name}: {verdict.rule} fails at {verdict.witness}")
    if carrier is None:
        carrier = associated_g_algebra(A, I or degree_family_window(A))
    elif _origin_algebra(carrier).dims != A.dims:
        raise NotAssociated(f"{carrier.name} is not associated to {A.name}")
    G = A.group
    members = set(tau.members())
    inverses: dict = {}
    family = {}
    for g in tau.members():
        blocks = {}
        for h, l in carrier.pairs():
            gh, gl = group_op(G, g, h), group_op(G, g, l)
            if (gh, gl) not in carrier.dims or h not in members or gh not in members:
                continue
            d = carrier.origin.degree(h, l)
            if not (tau.defined(h, d) and tau.defined(gh, d)):
                continue
            if (h, d) not in inverses:
                inverses[(h, d)] = linalg.inverse(tau.block(h, d))
            blocks[(h, l)] = linalg.compose(tau.block(gh, d), inverses[(h, d)])
        family[g] = blocks
    return PrincipalMap(carrier, tau.family_window, family, name=name or tau.name)


# ---------------------------------------------------------------------------
# From an isomorphism of associated G-algebras to a twist
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TwistEquivalence:
    """
    Output of :func:`twist_equivalence_from_iso`.

    Fields:
        principal — 𝒯 = α𝒮α⁻¹ on B̄.
        system    — τ = Δ(𝒯) on B.
        twisted   — B^τ on the compressible window.
        iso       — degree-preserving map A → B^τ (α on the e-row).
        verdict   — certification of ``iso``.
    """

    principal: PrincipalMap
    system: TwistingSystem
    twisted: GradedAlgebra
    iso: GradedLinearMap
    verdict: Verdict


def twist_equivalence_from_iso(A: GradedAlgebra, B: GradedAlgebra, alpha: GAlgebraMorphism) -> TwistEquivalence:
    """
    Given a certified α: Ā(A) → B̄(B), produce τ on B and a certified A ≅ B^τ.

    ``UncertifiedIso`` if α fails :func:`check_g_algebra_iso` or the
    resulting coordinate map is not an algebra isomorphism on-window.
    """
    Abar, Bbar = alpha.source, alpha.target
    if _origin_algebra(Abar).dims != A.dims or _origin_algebra(Bbar).dims != B.dims:
        raise NotAssociated("α must go from Ā(A) to B̄(B)")
    verdict = check_g_algebra_iso(Abar, Bbar, alpha)
    if not verdict.ok:
        raise UncertifiedIso(f"{alpha.name}: {verdict.rule} fails at {verdict.witness}: {verdict.detail}")

    T = conjugate_principal_map(alpha, canonical_principal_map(Abar), name="T")
    tau = principal_to_twisting(T, name="tau")
    window = compression_window(Bbar, T)
    B_w = B if window == B.window else restrict(B, window)
    A_w = A if window == A.window else restrict(A, window)
    tau_w = tau if B_w is B else restrict_system(tau, B_w)
    twisted = zhang_twist(B_w, tau_w, name=f"{B.name}^tau")

    e = A.identity
    iso = GradedLinearMap(A_w, twisted, e, {g: alpha.block((e, g)) for g in window.elements()})
    certified = check_algebra_iso(A_w, twisted, iso, check="twist-equivalence")
    if not certified.ok:
        raise UncertifiedIso(f"A -> B^tau fails {certified.rule} at {certified.witness}: {certified.detail}")
    logger.info("twist equivalence %s ~ %s^tau certified on %s", A.name, B.name, window.format())
    return TwistEquivalence(T, tau_w, twisted, iso, certified)


def associated_twist_iso(tau: TwistingSystem, twisted: GradedAlgebra, I: IndexWindow | None = None,
                         name: str = "alpha") -> GAlgebraMorphism:
    """
    The isomorphism Ā(A^τ) → Ā(A) acting on component (f, g) by τ_f.

    ``twisted`` must be ``zhang_twist(A, τ)``; τ_f is needed at f⁻¹g for
    every present component, so the family window should contain ``I``.
    """
    A = tau.carrier
    I = I or degree_family_window(A)
    source = associated_g_algebra(twisted, I)
    target = associated_g_algebra(A, I)
    blocks = {}
    for f, g in source.pairs():
        d = source.origin.degree(f, g)
        if not tau.defined(f, d):
            raise MissingComponent(f"tau_{f} is undefined in degree {d}")
        blocks[(f, g)] = tau.block(f, d)
    return GAlgebraMorphism(source, target, blocks, name)

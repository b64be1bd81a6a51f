"""
Graded linear maps between graded algebras.

A map of (left) degree d sends A_g to B_{dg}; it is stored as one
``DomainMatrix`` block per source degree.  Blocks may be missing: a missing
block means the map is undefined on that degree (the data needed for it left
a window), and checks skip such degrees instead of guessing.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import product

from sympy.polys.matrices import DomainMatrix

from src.foundations import linalg
from src.foundations.errors import DimensionMismatch, OutOfWindow, ShapeMismatch
from src.foundations.groups import GroupElement, group_inv, group_op
from src.foundations.reports import Verdict

from .algebra import GradedAlgebra, HomogeneousElement

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GradedLinearMap:
    """
    φ: source → target of left degree ``degree_shift``.

    Fields:
        blocks — source degree g → matrix of shape dims_target[dg] × dims_source[g].
    """

    source: GradedAlgebra
    target: GradedAlgebra
    degree_shift: GroupElement
    blocks: dict
    _rows: dict = dataclass_field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.source.group != self.target.group or self.source.field != self.target.field:
            raise ShapeMismatch("source and target differ in group or field")
        for g, M in self.blocks.items():
            dg = group_op(self.source.group, self.degree_shift, g)
            if not self.source.window.contains(g) or not self.target.window.contains(dg):
                raise OutOfWindow(f"block at degree {g} leaves a window")
            expected = (self.target.dims[dg], self.source.dims[g])
            if M.shape != expected:
                raise DimensionMismatch(f"block at degree {g} has shape {M.shape}, expected {expected}")
            self._rows[g] = linalg.entries(M)

    def defined(self, g: GroupElement) -> bool:
        return g in self.blocks

    def block(self, g: GroupElement) -> DomainMatrix:
        try:
            return self.blocks[g]
        except KeyError:
            raise OutOfWindow(f"map is undefined at degree {g}") from None

    def target_degree(self, g: GroupElement) -> GroupElement:
        return group_op(self.source.group, self.degree_shift, g)

    def apply_coords(self, g: GroupElement, coords) -> list:
        if g not in self.blocks:
            raise OutOfWindow(f"map is undefined at degree {g}")
        if len(coords) != self.source.dims[g]:
            raise DimensionMismatch("coordinate vector length does not match the degree")
        return linalg.apply_rows(self._rows[g], coords, self.source.K)

    def degrees(self) -> list[GroupElement]:
        return [g for g in self.source.degrees() if g in self.blocks]


# ---------------------------------------------------------------------------
# Construction and algebra of maps
# ---------------------------------------------------------------------------


def identity_map(A: GradedAlgebra) -> GradedLinearMap:
    blocks = {g: linalg.identity(A.dims[g], A.field) for g in A.degrees()}
    return GradedLinearMap(A, A, A.identity, blocks)


def diagonal_map(A: GradedAlgebra, scale) -> GradedLinearMap:
    """Degree-preserving map scaling the i-th basis vector of A_g by ``scale(g, i)``."""
    K = A.K
    blocks = {}
    for g in A.degrees():
        n = A.dims[g]
        blocks[g] = linalg.matrix(
            [[A.field.scalar(scale(g, i)) if i == j else K.zero for j in range(n)] for i in range(n)],
            n, n, A.field,
        )
    return GradedLinearMap(A, A, A.identity, blocks)


def apply_graded_map(phi: GradedLinearMap, x: HomogeneousElement) -> HomogeneousElement:
    """φ(x), in degree d·deg x of the target."""
    if not phi.source.window.contains(x.degree):
        raise OutOfWindow(f"degree {x.degree} is outside the source window")
    dg = phi.target_degree(x.degree)
    if not phi.target.window.contains(dg):
        raise OutOfWindow(f"degree {dg} is outside the target window")
    return HomogeneousElement(dg, tuple(phi.apply_coords(x.degree, x.coords)))


def compose_maps(phi: GradedLinearMap, psi: GradedLinearMap) -> GradedLinearMap:
    """φ ∘ ψ (apply ψ first), defined where both factors are."""
    if psi.target is not phi.source and psi.target.dims != phi.source.dims:
        raise ShapeMismatch("maps are not composable")
    blocks = {}
    for g, M in psi.blocks.items():
        h = psi.target_degree(g)
        if h in phi.blocks:
            blocks[g] = linalg.compose(phi.blocks[h], M)
    shift = group_op(psi.source.group, phi.degree_shift, psi.degree_shift)
    return GradedLinearMap(psi.source, phi.target, shift, blocks)


def invert_map(phi: GradedLinearMap) -> GradedLinearMap:
    """Blockwise inverse; ``SingularBlock`` if some block is not invertible."""
    blocks = {phi.target_degree(g): linalg.inverse(M) for g, M in phi.blocks.items()}
    shift = group_inv(phi.source.group, phi.degree_shift)
    return GradedLinearMap(phi.target, phi.source, shift, blocks)


def map_power(phi: GradedLinearMap, n: int) -> GradedLinearMap:
    """φⁿ for a degree-preserving endomorphism (n may be negative)."""
    if phi.degree_shift != phi.source.identity:
        raise ShapeMismatch("only degree-preserving maps have powers")
    blocks = {g: linalg.power(M, n, phi.source.field) for g, M in phi.blocks.items()}
    return GradedLinearMap(phi.source, phi.target, phi.degree_shift, blocks)


def maps_equal(phi: GradedLinearMap, psi: GradedLinearMap) -> bool:
    """Same shift, same defined degrees, identical blocks."""
    return (
        phi.degree_shift == psi.degree_shift
        and set(phi.blocks) == set(psi.blocks)
        and all(linalg.equal(M, psi.blocks[g]) for g, M in phi.blocks.items())
    )


# ---------------------------------------------------------------------------
# Isomorphism checks
# ---------------------------------------------------------------------------


def check_algebra_iso(A: GradedAlgebra, B: GradedAlgebra, phi: GradedLinearMap,
                      check: str = "algebra-iso") -> Verdict:
    """
    Is φ: A → B a degree-preserving algebra isomorphism on-window?

    Checks, in this order: shape, multiplicativity on every basis pair whose
    product stays in A's window (degrees in window order, then basis
    indices), the unit, invertibility of every block.  The first failure is
    the witness; a multiplicativity witness is a pair of basis labels.
    """
    if phi.degree_shift != A.identity:
        return Verdict.failed(check, "shape", (phi.degree_shift,), "map does not preserve degrees")
    missing = [g for g in A.degrees() if not phi.defined(g) or not B.window.contains(g)]
    if missing:
        return Verdict.failed(check, "shape", (missing[0],), "map undefined at this degree")

    G = A.group
    checked = skipped = 0
    for g, h in product(A.degrees(), repeat=2):
        gh = group_op(G, g, h)
        if not A.window.contains(gh):
            skipped += A.dims[g] * A.dims[h]
            continue
        for i, j in product(range(A.dims[g]), range(A.dims[h])):
            checked += 1
            x, y = A.basis(g, i).coords, A.basis(h, j).coords
            lhs = phi.apply_coords(gh, A.multiply_coords(g, x, h, y))
            rhs = B.multiply_coords(g, phi.apply_coords(g, x), h, phi.apply_coords(h, y))
            if lhs != rhs:
                return Verdict.failed(
                    check, "multiplicativity", (A.labels[g][i], A.labels[h][j]),
                    f"degrees ({g},{h}): φ(xy) = {B.describe(gh, lhs)}, "
                    f"φ(x)φ(y) = {B.describe(gh, rhs)}",
                    checked, skipped,
                )

    e = A.identity
    if list(phi.apply_coords(e, A.unit)) != list(B.unit):
        return Verdict.failed(check, "unit", ("1",), "φ(1) != 1", checked, skipped)

    for g in A.degrees():
        if not linalg.is_invertible(phi.blocks[g]):
            return Verdict.failed(check, "invertibility", (g,), f"block at degree {g} is singular",
                                  checked, skipped)

    logger.debug("%s passed for %s -> %s: %d pairs, %d skipped", check, A.name, B.name, checked, skipped)
    return Verdict.passed(check, checked, skipped)


def check_algebra_automorphism(A: GradedAlgebra, phi: GradedLinearMap) -> Verdict:
    """φ multiplicative, unit-preserving and invertible as an endomap of A."""
    return check_algebra_iso(A, A, phi, check="algebra-automorphism")

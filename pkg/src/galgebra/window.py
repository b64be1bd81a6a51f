"""
G-algebras restricted to a finite index window.

A ``GAlgebraWindow`` holds the components R_{f,g} for f, g in the index window
together with the multiplication tensors R_{f,g} × R_{g,h} → R_{f,h}.  The
key shape ``(f, g, h)`` makes products R_{f,g}·R_{g',h} with g ≠ g' absent by
construction.

A component is *absent* (no key in ``dims``) when the data defining it left a
window, which is different from a zero-dimensional component.  Anything that
touches an absent component raises ``OutOfWindow``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from itertools import product
from typing import Sequence

from src.foundations.errors import DimensionMismatch, EmptyWindow, OutOfWindow, ShapeMismatch
from src.foundations.fields import FieldSpec, Scalar
from src.foundations.groups import (
    GradingGroup,
    GroupElement,
    IndexWindow,
    left_quotient,
    right_quotient,
)
from src.foundations.reports import ValidationReport, Violation
from src.graded.algebra import GradedAlgebra, contract, unit_vector

logger = logging.getLogger(__name__)

Pair = tuple  # (f, g)


class Side(str, Enum):
    RIGHT = "right"
    LEFT = "left"


@dataclass(frozen=True, eq=False)
class Origin:
    """Identification metadata: R_{f,g} = A_{f⁻¹g} (right) or A_{fg⁻¹} (left)."""

    algebra: GradedAlgebra
    side: Side

    def degree(self, f: GroupElement, g: GroupElement) -> GroupElement:
        G = self.algebra.group
        if self.side is Side.RIGHT:
            return left_quotient(G, f, g)
        return right_quotient(G, f, g)


@dataclass(frozen=True, eq=False)
class GAlgebraWindow:
    """
    Components, multiplication and local units of a G-algebra on ``index_window``.

    Fields:
        dims        — present pair (f, g) → dim R_{f,g}.
        labels      — present pair → basis labels of R_{f,g}.
        structure   — (f, g, h) with all three pairs present →
                      tensor dims[f,g] × dims[g,h] × dims[f,h].
        local_units — f → coordinates of 1_f in R_{f,f}.
        origin      — set by the associated-algebra constructors only.
    """

    field: FieldSpec
    group: GradingGroup
    index_window: IndexWindow
    dims: dict
    labels: dict
    structure: dict
    local_units: dict
    origin: Origin | None = None
    name: str = "R"
    _pair_order: tuple = dataclass_field(default=(), repr=False)

    def __post_init__(self) -> None:
        if self.index_window.group != self.group:
            raise ShapeMismatch("index window is over a different group")
        for (f, g), n in self.dims.items():
            if not (self.index_window.contains(f) and self.index_window.contains(g)):
                raise OutOfWindow(f"component ({f},{g}) is outside the index window")
            if len(self.labels.get((f, g), ())) != n:
                raise DimensionMismatch(f"component ({f},{g}): {n} basis vectors but "
                                        f"{len(self.labels.get((f, g), ()))} labels")
        for (f, g, h), T in self.structure.items():
            for pair in ((f, g), (g, h), (f, h)):
                if pair not in self.dims:
                    raise OutOfWindow(f"tensor ({f},{g},{h}) touches absent component {pair}")
            if len(T) != self.dims[(f, g)] or any(len(row) != self.dims[(g, h)] for row in T) or any(
                len(cell) != self.dims[(f, h)] for row in T for cell in row
            ):
                raise DimensionMismatch(f"tensor ({f},{g},{h}) has the wrong shape")
        for f, u in self.local_units.items():
            if (f, f) not in self.dims or len(u) != self.dims[(f, f)]:
                raise DimensionMismatch(f"local unit 1_{f} does not fit R_{{{f},{f}}}")
        order = tuple(pair for pair in product(self.indices(), repeat=2) if pair in self.dims)
        object.__setattr__(self, "_pair_order", order)

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def K(self):
        return self.field.domain

    def indices(self) -> tuple[GroupElement, ...]:
        return self.index_window.elements()

    def pairs(self) -> tuple[Pair, ...]:
        """Present components in canonical order."""
        return self._pair_order

    def present(self, f: GroupElement, g: GroupElement) -> bool:
        return (f, g) in self.dims

    def dim(self, f: GroupElement, g: GroupElement) -> int:
        try:
            return self.dims[(f, g)]
        except KeyError:
            raise OutOfWindow(f"component ({f},{g}) is absent on this window") from None

    def tensor(self, f: GroupElement, g: GroupElement, h: GroupElement):
        try:
            return self.structure[(f, g, h)]
        except KeyError:
            raise OutOfWindow(f"product R_({f},{g}) x R_({g},{h}) is not available on this window") from None

    def multiply_coords(self, f, g, u: Sequence[Scalar], h, v: Sequence[Scalar]) -> list[Scalar]:
        """Coordinates in R_{f,h} of u·v for u ∈ R_{f,g}, v ∈ R_{g,h}."""
        T = self.tensor(f, g, h)
        if len(u) != self.dims[(f, g)] or len(v) != self.dims[(g, h)]:
            raise DimensionMismatch("coordinate vector length does not match the component")
        return contract(T, u, v, self.dims[(f, h)], self.K)

    def local_unit(self, f: GroupElement) -> tuple:
        try:
            return self.local_units[f]
        except KeyError:
            raise OutOfWindow(f"no local unit 1_{f} on this window") from None

    def describe(self, pair: Pair, coords: Sequence[Scalar]) -> str:
        terms = []
        for c, label in zip(coords, self.labels[pair]):
            if c == self.K.zero:
                continue
            coeff = self.field.format(c)
            terms.append(label if coeff == "1" else f"{coeff}*{label}")
        return " + ".join(terms) if terms else "0"

    def dims_table(self) -> dict[Pair, int]:
        return {pair: self.dims[pair] for pair in self.pairs()}


# ---------------------------------------------------------------------------
# Associated G-algebras
# ---------------------------------------------------------------------------


def _associated(A: GradedAlgebra, I: IndexWindow, side: Side, name: str) -> GAlgebraWindow:
    if I.group != A.group:
        raise ShapeMismatch("index window and algebra use different groups")
    indices = I.elements()
    if not indices:
        raise EmptyWindow("empty index window")
    origin = Origin(A, side)
    dims, labels = {}, {}
    for f, g in product(indices, repeat=2):
        d = origin.degree(f, g)
        if A.window.contains(d):
            dims[(f, g)] = A.dims[d]
            labels[(f, g)] = A.labels[d]
    structure = {}
    for f, g, h in product(indices, repeat=3):
        if (f, g) in dims and (g, h) in dims and (f, h) in dims:
            structure[(f, g, h)] = A.structure[(origin.degree(f, g), origin.degree(g, h))]
    local_units = {f: A.unit for f in indices}
    absent = len(indices) ** 2 - len(dims)
    if absent:
        logger.debug("%s on %s: %d components absent (degree outside %s)",
                     name, I.format(), absent, A.window.format())
    return GAlgebraWindow(A.field, A.group, I, dims, labels, structure, local_units, origin, name)


def associated_g_algebra(A: GradedAlgebra, I: IndexWindow, name: str | None = None) -> GAlgebraWindow:
    """Ā on ``I``: Ā_{f,g} = A_{f⁻¹g}, tensors re-indexed from A, 1_f = 1."""
    return _associated(A, I, Side.RIGHT, name or f"{A.name}.bar")


def associated_left_g_algebra(A: GradedAlgebra, I: IndexWindow, name: str | None = None) -> GAlgebraWindow:
    """Â on ``I``: Â_{f,g} = A_{fg⁻¹}."""
    return _associated(A, I, Side.LEFT, name or f"{A.name}.hat")


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_g_algebra(R: GAlgebraWindow) -> ValidationReport:
    """
    Local units and associativity on every on-window composable triple.

    Products R_{f,g}·R_{g,h}·R_{h,l} need the pairs (f,h), (g,l) and (f,l)
    as well; triples missing one of them are counted as skipped.
    """
    K = R.K
    violations: list[Violation] = []
    checked = skipped = 0
    idx = R.indices()

    for f, g, h, l in product(idx, repeat=4):
        if not (R.present(f, g) and R.present(g, h) and R.present(h, l)):
            continue
        n = R.dims[(f, g)] * R.dims[(g, h)] * R.dims[(h, l)]
        if n == 0:
            continue
        if not (R.present(f, h) and R.present(g, l) and R.present(f, l)):
            skipped += n
            continue
        T_fgh, T_fhl = R.structure[(f, g, h)], R.structure[(f, h, l)]
        T_ghl, T_fgl = R.structure[(g, h, l)], R.structure[(f, g, l)]
        out = R.dims[(f, l)]
        for i, j, k in product(range(R.dims[(f, g)]), range(R.dims[(g, h)]), range(R.dims[(h, l)])):
            checked += 1
            left = contract(T_fhl, T_fgh[i][j], unit_vector(R.dims[(h, l)], k, K), out, K)
            right = contract(T_fgl, unit_vector(R.dims[(f, g)], i, K), T_ghl[j][k], out, K)
            if left != right:
                violations.append(Violation(
                    rule="associativity",
                    witness=((f, g), (g, h), (h, l)),
                    detail=f"basis ({R.labels[(f, g)][i]}, {R.labels[(g, h)][j]}, {R.labels[(h, l)][k]}): "
                           f"{R.describe((f, l), left)} != {R.describe((f, l), right)}",
                ))

    for f, g in R.pairs():
        for i in range(R.dims[(f, g)]):
            x = unit_vector(R.dims[(f, g)], i, K)
            checked += 1
            if f in R.local_units and R.multiply_coords(f, f, R.local_units[f], g, x) != x:
                violations.append(Violation(rule="left local unit", witness=((f, g),),
                                            detail=f"1_{f} · {R.labels[(f, g)][i]} != {R.labels[(f, g)][i]}"))
            if g in R.local_units and R.multiply_coords(f, g, x, g, R.local_units[g]) != x:
                violations.append(Violation(rule="right local unit", witness=((f, g),),
                                            detail=f"{R.labels[(f, g)][i]} · 1_{g} != {R.labels[(f, g)][i]}"))
    missing_units = [f for f in idx if R.present(f, f) and f not in R.local_units]
    for f in missing_units:
        violations.append(Violation(rule="local unit", witness=(f,), detail=f"no local unit 1_{f}"))

    logger.debug("validated %s: %d checks, %d skipped, %d violations",
                 R.name, checked, skipped, len(violations))
    return ValidationReport(subject=R.name, violations=violations, checked=checked, skipped=skipped)

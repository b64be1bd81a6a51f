"""
G-graded algebras presented by structure constants on a degree window.

``GradedAlgebra`` stores, for every on-window degree g, a basis of A_g
(``labels[g]``, ``dims[g]`` vectors) and, for every pair (g, h) with g, h and
gh in the window, the tensor ``structure[(g, h)][i][j][m]``: the coefficient
of the m-th basis vector of A_{gh} in e^g_i · e^h_j.

Degrees with A_g = 0 stay in the mapping with ``dims[g] == 0``.  Products that
leave the window raise ``OutOfWindow``; nothing is truncated silently.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import product
from typing import Sequence

from src.foundations.errors import DimensionMismatch, OutOfWindow, ShapeMismatch
from src.foundations.fields import FieldSpec, Scalar
from src.foundations.groups import DegreeWindow, GradingGroup, GroupElement, group_op
from src.foundations.reports import ValidationReport, Violation

logger = logging.getLogger(__name__)

Tensor = tuple  # tuple[tuple[tuple[Scalar, ...], ...], ...]  shape dims[g] × dims[h] × dims[gh]


def contract(T: Tensor, u: Sequence[Scalar], v: Sequence[Scalar], out_dim: int, K) -> list[Scalar]:
    """Bilinear evaluation Σ u_i v_j T[i][j] of a structure tensor."""
    zero = K.zero
    out = [zero] * out_dim
    for i, ui in enumerate(u):
        if ui == zero:
            continue
        row = T[i]
        for j, vj in enumerate(v):
            if vj == zero:
                continue
            c = ui * vj
            for m, t in enumerate(row[j]):
                if t != zero:
                    out[m] += c * t
    return out


def unit_vector(n: int, i: int, K) -> list[Scalar]:
    v = [K.zero] * n
    v[i] = K.one
    return v


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    """
    A G-graded k-algebra truncated to ``window``.

    Instances are immutable; builders in :mod:`src.graded.builders` and the
    fixture parser are the usual way to obtain one.
    """

    field: FieldSpec
    group: GradingGroup
    window: DegreeWindow
    dims: dict
    labels: dict
    structure: dict
    unit: tuple
    name: str = "A"
    _index: dict = dataclass_field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.window.group != self.group:
            raise ShapeMismatch("degree window is over a different group")
        for g in self.window.elements():
            if g not in self.dims:
                raise DimensionMismatch(f"no dimension recorded for degree {g}")
            if len(self.labels.get(g, ())) != self.dims[g]:
                raise DimensionMismatch(f"degree {g}: {self.dims[g]} basis vectors but "
                                        f"{len(self.labels.get(g, ()))} labels")
            self._index[g] = {label: i for i, label in enumerate(self.labels[g])}
        e = self.group.identity
        if len(self.unit) != self.dims[e]:
            raise DimensionMismatch("unit coordinates do not match dim A_e")
        for (g, h), T in self.structure.items():
            gh = group_op(self.group, g, h)
            if not (self.window.contains(g) and self.window.contains(h) and self.window.contains(gh)):
                raise OutOfWindow(f"structure tensor ({g},{h}) leaves the window")
            if len(T) != self.dims[g] or any(len(row) != self.dims[h] for row in T) or any(
                len(cell) != self.dims[gh] for row in T for cell in row
            ):
                raise DimensionMismatch(f"structure tensor ({g},{h}) has the wrong shape")

    # ------------------------------------------------------------------
    # Basic accessors
    # ------------------------------------------------------------------

    @property
    def K(self):
        return self.field.domain

    @property
    def identity(self) -> GroupElement:
        return self.group.identity

    def degrees(self) -> tuple[GroupElement, ...]:
        return self.window.elements()

    def dim(self, g: GroupElement) -> int:
        if not self.window.contains(g):
            raise OutOfWindow(f"degree {g} is outside {self.window.format()}")
        return self.dims[g]

    def label_index(self, g: GroupElement, label: str) -> int:
        self.dim(g)
        try:
            return self._index[g][label]
        except KeyError:
            raise DimensionMismatch(f"no basis vector {label!r} in degree {g}") from None

    def basis(self, g: GroupElement, i: int) -> "HomogeneousElement":
        return HomogeneousElement(g, tuple(unit_vector(self.dim(g), i, self.K)))

    def element(self, g: GroupElement, label: str) -> "HomogeneousElement":
        return self.basis(g, self.label_index(g, label))

    def one(self) -> "HomogeneousElement":
        return HomogeneousElement(self.identity, self.unit)

    def tensor(self, g: GroupElement, h: GroupElement) -> Tensor:
        gh = group_op(self.group, g, h)
        for d in (g, h, gh):
            if not self.window.contains(d):
                raise OutOfWindow(f"product of degrees {g} and {h} needs degree {d} "
                                  f"outside {self.window.format()}")
        return self.structure[(g, h)]

    def multiply_coords(self, g: GroupElement, u: Sequence[Scalar],
                        h: GroupElement, v: Sequence[Scalar]) -> list[Scalar]:
        T = self.tensor(g, h)
        if len(u) != self.dims[g] or len(v) != self.dims[h]:
            raise DimensionMismatch("coordinate vector length does not match the degree")
        return contract(T, u, v, self.dims[group_op(self.group, g, h)], self.K)

    def describe(self, g: GroupElement, coords: Sequence[Scalar]) -> str:
        """Human-readable linear combination of basis labels."""
        terms = []
        for c, label in zip(coords, self.labels[g]):
            if c == self.K.zero:
                continue
            coeff = self.field.format(c)
            terms.append(label if coeff == "1" else f"{coeff}*{label}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class HomogeneousElement:
    """x ∈ A_g given by its coordinates in the chosen basis of A_g."""

    degree: GroupElement
    coords: tuple

    def scaled(self, c: Scalar) -> "HomogeneousElement":
        return HomogeneousElement(self.degree, tuple(c * a for a in self.coords))

    def plus(self, other: "HomogeneousElement") -> "HomogeneousElement":
        if other.degree != self.degree:
            raise DimensionMismatch("cannot add elements of different degrees")
        return HomogeneousElement(self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def multiply(A: GradedAlgebra, x: HomogeneousElement, y: HomogeneousElement) -> HomogeneousElement:
    """The product x·y ∈ A_{gh}; ``OutOfWindow`` when gh leaves the window."""
    coords = A.multiply_coords(x.degree, x.coords, y.degree, y.coords)
    return HomogeneousElement(group_op(A.group, x.degree, y.degree), tuple(coords))


def validate_algebra(A: GradedAlgebra) -> ValidationReport:
    """
    Check associativity and the unit on every on-window basis triple.

    Triples whose partial or full products leave the window are counted in
    ``skipped``.  Violations are listed in canonical order (degrees in window
    order, then basis indices).
    """
    K = A.K
    G = A.group
    degrees = A.degrees()
    violations: list[Violation] = []
    checked = skipped = 0

    for g, h, l in product(degrees, repeat=3):
        n_triples = A.dims[g] * A.dims[h] * A.dims[l]
        if n_triples == 0:
            continue
        gh, hl = group_op(G, g, h), group_op(G, h, l)
        ghl = group_op(G, gh, l)
        if not all(A.window.contains(d) for d in (gh, hl, ghl)):
            skipped += n_triples
            continue
        T_gh, T_ghl_left = A.structure[(g, h)], A.structure[(gh, l)]
        T_hl, T_ghl_right = A.structure[(h, l)], A.structure[(g, hl)]
        out_dim = A.dims[ghl]
        for i, j, k in product(range(A.dims[g]), range(A.dims[h]), range(A.dims[l])):
            checked += 1
            xy = T_gh[i][j]
            left = contract(T_ghl_left, xy, unit_vector(A.dims[l], k, K), out_dim, K)
            yz = T_hl[j][k]
            right = contract(T_ghl_right, unit_vector(A.dims[g], i, K), yz, out_dim, K)
            if left != right:
                violations.append(Violation(
                    rule="associativity",
                    witness=(A.labels[g][i], A.labels[h][j], A.labels[l][k]),
                    detail=f"degrees ({g},{h},{l}): (xy)z = {A.describe(ghl, left)} "
                           f"but x(yz) = {A.describe(ghl, right)}",
                ))

    e = A.identity
    if A.dims[e] == 0 and any(A.dims[g] for g in degrees):
        violations.append(Violation(rule="unit", witness=(e,), detail="dim A_e = 0 in a nonzero algebra"))
    else:
        for g in degrees:
            for i in range(A.dims[g]):
                checked += 1
                x = unit_vector(A.dims[g], i, K)
                if A.multiply_coords(e, A.unit, g, x) != x:
                    violations.append(Violation(rule="left unit", witness=(A.labels[g][i],),
                                                detail=f"1·{A.labels[g][i]} != {A.labels[g][i]}"))
                if A.multiply_coords(g, x, e, A.unit) != x:
                    violations.append(Violation(rule="right unit", witness=(A.labels[g][i],),
                                                detail=f"{A.labels[g][i]}·1 != {A.labels[g][i]}"))

    logger.debug("validated %s: %d checks, %d skipped, %d violations",
                 A.name, checked, skipped, len(violations))
    return ValidationReport(subject=A.name, violations=violations, checked=checked, skipped=skipped)


def restrict(A: GradedAlgebra, window: DegreeWindow, name: str | None = None) -> GradedAlgebra:
    """The same algebra on a sub-window of its degree window."""
    for g in window.elements():
        if not A.window.contains(g):
            raise OutOfWindow(f"degree {g} is outside {A.window.format()}")
    G = A.group
    structure = {
        (g, h): T for (g, h), T in A.structure.items()
        if window.contains(g) and window.contains(h) and window.contains(group_op(G, g, h))
    }
    return GradedAlgebra(
        field=A.field,
        group=G,
        window=window,
        dims={g: A.dims[g] for g in window.elements()},
        labels={g: A.labels[g] for g in window.elements()},
        structure=structure,
        unit=A.unit,
        name=name or A.name,
    )


def same_structure(A: GradedAlgebra, B: GradedAlgebra) -> bool:
    """Exact equality of windows, bases and structure tensors."""
    return (
        A.field == B.field
        and A.window == B.window
        and A.dims == B.dims
        and A.labels == B.labels
        and A.unit == B.unit
        and A.structure == B.structure
    )


def structure_differences(A: GradedAlgebra, B: GradedAlgebra) -> list[tuple]:
    """Degree pairs whose structure tensors differ (for readable test failures)."""
    keys = sorted(set(A.structure) | set(B.structure),
                  key=lambda k: (A.group.sort_key(k[0]), A.group.sort_key(k[1])))
    return [k for k in keys if A.structure.get(k) != B.structure.get(k)]

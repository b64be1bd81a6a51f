"""
Endomorphism G-algebras of bigraded modules, and two small reports on the
base algebra: a sufficient generator check and the invertible homogeneous
basis elements.
"""

from __future__ import annotations

import logging
from itertools import product
from typing import Any

from pydantic import BaseModel, ConfigDict

from src.foundations import linalg
from src.foundations.errors import OutOfWindow
from src.foundations.groups import IndexWindow, group_inv
from src.galgebra.window import GAlgebraWindow
from src.graded.algebra import GradedAlgebra

from .modules import BigradedModule, cell_degrees

logger = logging.getLogger(__name__)


def _cell_basis(B: GradedAlgebra, d, target_idem: tuple, source_idem: tuple) -> list[list]:
    """Row-reduced basis of e_t·B_d·e_s inside B_d."""
    e = B.identity
    spanning = []
    for k in range(B.dims[d]):
        b = B.basis(d, k).coords
        spanning.append(B.multiply_coords(d, B.multiply_coords(e, target_idem, d, b), e, source_idem))
    return linalg.row_basis(spanning, B.dims[d], B.field)


def _vector_label(B: GradedAlgebra, d, v: list) -> str:
    K = B.K
    nonzero = [k for k, c in enumerate(v) if c != K.zero]
    if len(nonzero) == 1 and v[nonzero[0]] == K.one:
        return B.labels[d][nonzero[0]]
    return B.describe(d, v)


def endo_g_algebra(P: BigradedModule, I: IndexWindow | None = None, name: str = "H") -> GAlgebraWindow:
    """
    H with H_{f,g} = hom_B(P_{g*}, P_{f*}) for f, g in ``I``.

    Cell (i, j) of H_{f,g} is e_{f,i}·B_d·e_{g,j} with d = s_f(i)⁻¹·s_g(j);
    basis vectors are ordered by cell, then by the row-reduced cell basis and
    labelled ``[i,j]<element of B>``.  Composition is matrix multiplication
    over B.  ``OutOfWindow`` when some cell degree leaves B's window.
    """
    B = P.base
    I = I or P.index_window
    idx = I.elements()
    for g in idx:
        P.row(g)

    cells: dict = {}  # (f, g) -> list of (i, j, d, basis vectors)
    dims, labels = {}, {}
    for f, g in product(idx, repeat=2):
        degrees = cell_degrees(P, f, g)
        layout = []
        for i, j in product(range(len(degrees)), range(len(degrees[0]) if degrees else 0)):
            d = degrees[i][j]
            if not B.window.contains(d):
                raise OutOfWindow(f"cell ({i},{j}) of H_({f},{g}) has degree {d} outside "
                                  f"{B.window.format()}; widen the base window")
            basis = _cell_basis(B, d, P.rows[f][i].projector(B), P.rows[g][j].projector(B))
            layout.append((i, j, d, basis))
        cells[(f, g)] = layout
        dims[(f, g)] = sum(len(basis) for _, _, _, basis in layout)
        labels[(f, g)] = tuple(f"[{i},{j}]{_vector_label(B, d, v)}"
                               for i, j, d, basis in layout for v in basis)

    offsets = {}
    for pair, layout in cells.items():
        start, table = 0, {}
        for i, j, d, basis in layout:
            table[(i, j)] = (start, d, basis)
            start += len(basis)
        offsets[pair] = table

    K = B.K
    structure = {}
    for f, g, h in product(idx, repeat=3):
        left, right, out = offsets[(f, g)], offsets[(g, h)], offsets[(f, h)]
        n_out = dims[(f, h)]
        tensor = [[None] * dims[(g, h)] for _ in range(dims[(f, g)])]
        for (i, j), (s1, d1, basis1) in left.items():
            for (j2, k), (s2, d2, basis2) in right.items():
                for a, u in enumerate(basis1):
                    for b, v in enumerate(basis2):
                        cell = [K.zero] * n_out
                        if j == j2:
                            s3, d3, basis3 = out[(i, k)]
                            w = B.multiply_coords(d1, u, d2, v)
                            for c, coeff in enumerate(linalg.coordinates(basis3, w, B.field)):
                                cell[s3 + c] = coeff
                        tensor[s1 + a][s2 + b] = tuple(cell)
        structure[(f, g, h)] = tuple(tuple(row) for row in tensor)

    e = B.identity
    local_units = {}
    for f in idx:
        unit = [K.zero] * dims[(f, f)]
        for i, summand in enumerate(P.rows[f]):
            s, d, basis = offsets[(f, f)][(i, i)]
            for c, coeff in enumerate(linalg.coordinates(basis, list(summand.projector(B)), B.field)):
                unit[s + c] = coeff
        local_units[f] = tuple(unit)

    logger.debug("endomorphism G-algebra of %s on %s built", P.name, I.format())
    return GAlgebraWindow(B.field, B.group, I, dims, labels, structure, local_units, None, name)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


class GeneratorReport(BaseModel):
    """
    Sufficient check that the rows' shifts reach every index of the window.

    ``verdict`` is ``SUFFICIENT`` or ``INCONCLUSIVE``; the check never claims
    that P fails to be a generator.
    """

    model_config = ConfigDict(frozen=True)

    subject: str
    verdict: str
    shifts: list[Any] = []
    missing: list[Any] = []

    @property
    def ok(self) -> bool:
        return self.verdict == "SUFFICIENT"


def generator_heuristic(P: BigradedModule, I: IndexWindow | None = None) -> GeneratorReport:
    I = I or P.index_window
    G = P.base.group
    seen = {s for g in P.index_window.elements() for s in P.shifts(g)}
    missing = [g for g in I.elements() if g not in seen]
    shifts = sorted(seen, key=G.sort_key)
    return GeneratorReport(
        subject=P.name,
        verdict="INCONCLUSIVE" if missing else "SUFFICIENT",
        shifts=shifts,
        missing=missing,
    )


class InvertiblesReport(BaseModel):
    """Per degree, the basis elements with a two-sided inverse inside the window."""

    model_config = ConfigDict(frozen=True)

    subject: str
    entries: list[tuple[Any, list[str]]] = []

    def degrees(self) -> list[Any]:
        return [g for g, labels in self.entries if labels]


def invertible_homogeneous_elements(B: GradedAlgebra) -> InvertiblesReport:
    """
    For each on-window degree g, the basis elements x ∈ B_g with some
    v ∈ B_{g⁻¹} satisfying xv = 1 = vx.  In degree e the unit is always
    listed (as ``1`` when it is not itself a basis vector).
    """
    G = B.group
    e = B.identity
    entries = []
    for g in B.degrees():
        found: list[str] = []
        gi = group_inv(G, g)
        if g == e and B.unit not in [B.basis(e, i).coords for i in range(B.dims[e])]:
            found.append("1")
        if B.window.contains(gi) and B.dims[gi]:
            for i in range(B.dims[g]):
                x = B.basis(g, i).coords
                left = [B.multiply_coords(g, x, gi, B.basis(gi, k).coords) for k in range(B.dims[gi])]
                right = [B.multiply_coords(gi, B.basis(gi, k).coords, g, x) for k in range(B.dims[gi])]
                rows = [[left[k][r] for k in range(B.dims[gi])] for r in range(B.dims[e])]
                rows += [[right[k][r] for k in range(B.dims[gi])] for r in range(B.dims[e])]
                system = linalg.matrix(rows, 2 * B.dims[e], B.dims[gi], B.field)
                if linalg.solve(system, list(B.unit) * 2, B.field) is not None:
                    found.append(B.labels[g][i])
        entries.append((g, found))
    return InvertiblesReport(subject=B.name, entries=entries)

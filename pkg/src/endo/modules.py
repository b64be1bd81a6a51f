"""
Bigraded modules built from shifts of a base graded algebra.

Row P_{g*} is a finite direct sum of summands e·B⟨s⟩, where s is a shift and
e an idempotent of B_e (the unit when omitted, giving the free summand B⟨s⟩).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from pydantic import BaseModel, ConfigDict

from src.foundations.errors import DimensionMismatch, MissingComponent, OutOfWindow, ShapeMismatch
from src.foundations.groups import GroupElement, IndexWindow, group_inv, group_op
from src.graded.algebra import GradedAlgebra


@dataclass(frozen=True)
class Summand:
    """e·B⟨shift⟩; ``idempotent`` holds coordinates in B_e, ``None`` for the unit."""

    shift: GroupElement
    idempotent: tuple | None = None

    def projector(self, B: GradedAlgebra) -> tuple:
        return B.unit if self.idempotent is None else self.idempotent


@dataclass(frozen=True, eq=False)
class BigradedModule:
    """
    P with rows P_{g*} for g in ``index_window``.

    Fields:
        base — the graded algebra B.
        rows — g → tuple of ``Summand``.
    """

    base: GradedAlgebra
    index_window: IndexWindow
    rows: dict
    name: str = "P"

    def __post_init__(self) -> None:
        B = self.base
        if self.index_window.group != B.group:
            raise ShapeMismatch("index window is over a different group")
        e = B.identity
        for g in self.index_window.elements():
            if g not in self.rows:
                raise MissingComponent(f"row P_({g},*) is missing")
        for g, row in self.rows.items():
            for summand in row:
                B.group.index_of(summand.shift)
                if summand.idempotent is None:
                    continue
                u = summand.idempotent
                if len(u) != B.dims[e]:
                    raise DimensionMismatch(f"row {g}: idempotent has the wrong length")
                if tuple(B.multiply_coords(e, u, e, u)) != tuple(u):
                    raise DimensionMismatch(f"row {g}: summand projector is not idempotent")

    def row(self, g: GroupElement) -> tuple:
        try:
            return self.rows[g]
        except KeyError:
            raise OutOfWindow(f"row P_({g},*) is outside the index window") from None

    def shifts(self, g: GroupElement) -> tuple:
        return tuple(s.shift for s in self.row(g))


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def free_module(B: GradedAlgebra, I: IndexWindow, shifts: dict, name: str = "P") -> BigradedModule:
    """P_{g*} = ⊕_j B⟨shifts[g][j]⟩."""
    rows = {g: tuple(Summand(s) for s in shifts[g]) for g in I.elements()}
    return BigradedModule(B, I, rows, name)


def alternating_shift_rows(B: GradedAlgebra, I: IndexWindow, name: str = "P") -> BigradedModule:
    """P_{n*} = B⟨n⟩ for even n and B⟨−n⟩ for odd n."""
    return free_module(B, I, {n: [n if n % 2 == 0 else -n] for n in I.elements()}, name)


def opposite_shift_rows(B: GradedAlgebra, I: IndexWindow, first: str = "(1,0)", second: str = "(0,1)",
                        name: str = "P") -> BigradedModule:
    """P_{n*} = e₁B⟨n⟩ ⊕ e₂B⟨−n⟩ for the idempotents labelled ``first``, ``second`` in B_e."""
    e = B.identity
    e1 = B.element(e, first).coords
    e2 = B.element(e, second).coords
    rows = {n: (Summand(n, e1), Summand(-n, e2)) for n in I.elements()}
    return BigradedModule(B, I, rows, name)


def cell_degrees(P: BigradedModule, f: GroupElement, g: GroupElement) -> list[list[GroupElement]]:
    """Degree s_f(i)⁻¹·s_g(j) of every cell of hom(P_{g*}, P_{f*})."""
    G = P.base.group
    return [[group_op(G, group_inv(G, a), b) for b in P.shifts(g)] for a in P.shifts(f)]


def required_degree_window(shifts: Iterable[int]) -> tuple[int, int]:
    """Smallest interval containing every difference of the given integer shifts."""
    values = list(shifts)
    width = max(values) - min(values)
    return -width, width


# ---------------------------------------------------------------------------
# Hom between shifts
# ---------------------------------------------------------------------------


class HomShift(BaseModel):
    """hom_B(B⟨source⟩, B⟨target⟩) ≅ B_degree; ``dim`` is None off B's window."""

    model_config = ConfigDict(frozen=True)

    source: object
    target: object
    degree: object
    dim: int | None = None

    @property
    def known(self) -> bool:
        return self.dim is not None


def hom_shift_component(B: GradedAlgebra, a: GroupElement, b: GroupElement) -> HomShift:
    """The degree d = b⁻¹a with hom_B(B⟨a⟩, B⟨b⟩) ≅ B_d and its dimension."""
    G = B.group
    d = group_op(G, group_inv(G, b), a)
    dim = B.dims[d] if B.window.contains(d) else None
    return HomShift(source=a, target=b, degree=d, dim=dim)


def module_shifts(P: BigradedModule) -> Sequence[GroupElement]:
    return [s for g in P.index_window.elements() for s in P.shifts(g)]

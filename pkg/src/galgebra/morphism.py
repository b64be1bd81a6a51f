"""
Degree-preserving morphisms between G-algebras on the same index window.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import product
from typing import Callable, Mapping

from sympy.polys.matrices import DomainMatrix

from src.foundations import linalg
from src.foundations.errors import DimensionMismatch, OutOfWindow, ShapeMismatch
from src.foundations.reports import Verdict

from .window import GAlgebraWindow, Pair

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GAlgebraMorphism:
    """
    φ: source → target with one block per component.

    Fields:
        blocks — (f, g) → matrix of shape dims_target[f,g] × dims_source[f,g].
    """

    source: GAlgebraWindow
    target: GAlgebraWindow
    blocks: dict
    name: str = "phi"
    _rows: dict = dataclass_field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        for pair, M in self.blocks.items():
            if pair not in self.source.dims or pair not in self.target.dims:
                raise OutOfWindow(f"block {pair} sits on an absent component")
            expected = (self.target.dims[pair], self.source.dims[pair])
            if M.shape != expected:
                raise DimensionMismatch(f"block {pair} has shape {M.shape}, expected {expected}")
            self._rows[pair] = linalg.entries(M)

    def block(self, pair: Pair) -> DomainMatrix:
        try:
            return self.blocks[pair]
        except KeyError:
            raise OutOfWindow(f"morphism has no block at {pair}") from None

    def apply_coords(self, pair: Pair, coords) -> list:
        if pair not in self._rows:
            raise OutOfWindow(f"morphism has no block at {pair}")
        return linalg.apply_rows(self._rows[pair], coords, self.source.K)


def _same_frame(R: GAlgebraWindow, S: GAlgebraWindow) -> None:
    if R.group != S.group or R.index_window != S.index_window or R.field != S.field:
        raise ShapeMismatch(f"{R.name} and {S.name} differ in group, field or index window")


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def identity_morphism(R: GAlgebraWindow) -> GAlgebraMorphism:
    return GAlgebraMorphism(R, R, {p: linalg.identity(R.dims[p], R.field) for p in R.pairs()}, "id")


def identity_blocks_morphism(R: GAlgebraWindow, S: GAlgebraWindow, name: str = "phi") -> GAlgebraMorphism:
    """Identity matrices between components of equal dimension (basis i ↦ basis i)."""
    _same_frame(R, S)
    if set(R.dims) != set(S.dims) or any(R.dims[p] != S.dims[p] for p in R.dims):
        raise ShapeMismatch(f"{R.name} and {S.name} have different component dimensions")
    return GAlgebraMorphism(R, S, {p: linalg.identity(R.dims[p], R.field) for p in R.pairs()}, name)


def morphism_from_basis_map(
    R: GAlgebraWindow,
    S: GAlgebraWindow,
    image: Callable[[Pair, str], Mapping[str, object]],
    name: str = "phi",
) -> GAlgebraMorphism:
    """
    Build φ from the images of basis vectors.

    ``image(pair, label)`` returns ``{target label: coefficient}`` inside the
    component ``pair`` of ``S``.
    """
    _same_frame(R, S)
    blocks = {}
    for pair in R.pairs():
        if pair not in S.dims:
            continue
        index = {label: i for i, label in enumerate(S.labels[pair])}
        columns = []
        for label in R.labels[pair]:
            column = [R.field.zero] * S.dims[pair]
            for target, coeff in image(pair, label).items():
                if target not in index:
                    raise DimensionMismatch(f"{target!r} is not a basis vector of {S.name}{pair}")
                column[index[target]] += R.field.scalar(coeff)
            columns.append(column)
        blocks[pair] = (linalg.from_columns(columns, S.dims[pair], R.field)
                        if columns else linalg.zeros(S.dims[pair], 0, R.field))
    return GAlgebraMorphism(R, S, blocks, name)


def inverse_morphism(phi: GAlgebraMorphism) -> GAlgebraMorphism:
    """Blockwise inverse; ``SingularBlock`` when a block is singular."""
    return GAlgebraMorphism(phi.target, phi.source,
                            {p: linalg.inverse(M) for p, M in phi.blocks.items()},
                            f"{phi.name}^-1")


def compose_morphisms(phi: GAlgebraMorphism, psi: GAlgebraMorphism) -> GAlgebraMorphism:
    """φ ∘ ψ on the components where both have blocks."""
    blocks = {p: linalg.compose(phi.blocks[p], M) for p, M in psi.blocks.items() if p in phi.blocks}
    return GAlgebraMorphism(psi.source, phi.target, blocks, f"{phi.name}*{psi.name}")


# ---------------------------------------------------------------------------
# Certification
# ---------------------------------------------------------------------------


def check_g_algebra_iso(R: GAlgebraWindow, S: GAlgebraWindow, phi: GAlgebraMorphism) -> Verdict:
    """
    Is φ: R → S an isomorphism of G-algebras on-window?

    Order of checks: component layout, multiplicativity on every composable
    pair (f,g), (g,h) in canonical order, local units, blockwise
    invertibility.  A multiplicativity witness is ``((f,g), (g,h))``.
    """
    _same_frame(R, S)
    check = "g-algebra-iso"
    for pair in R.pairs():
        if pair not in S.dims:
            return Verdict.failed(check, "layout", (pair,), f"component {pair} absent in {S.name}")
        if pair not in phi.blocks:
            return Verdict.failed(check, "layout", (pair,), f"no block at {pair}")
    for pair in S.pairs():
        if pair not in R.dims:
            return Verdict.failed(check, "layout", (pair,), f"component {pair} absent in {R.name}")

    K = R.K
    checked = skipped = 0
    for f, g, h in product(R.indices(), repeat=3):
        if not (R.present(f, g) and R.present(g, h)):
            continue
        if not R.present(f, h):
            skipped += R.dims[(f, g)] * R.dims[(g, h)]
            continue
        for i, j in product(range(R.dims[(f, g)]), range(R.dims[(g, h)])):
            checked += 1
            x = [K.one if k == i else K.zero for k in range(R.dims[(f, g)])]
            y = [K.one if k == j else K.zero for k in range(R.dims[(g, h)])]
            lhs = phi.apply_coords((f, h), R.multiply_coords(f, g, x, h, y))
            rhs = S.multiply_coords(f, g, phi.apply_coords((f, g), x), h, phi.apply_coords((g, h), y))
            if lhs != rhs:
                return Verdict.failed(
                    check, "multiplicativity", ((f, g), (g, h)),
                    f"basis ({R.labels[(f, g)][i]}, {R.labels[(g, h)][j]}): "
                    f"φ(xy) = {S.describe((f, h), lhs)}, φ(x)φ(y) = {S.describe((f, h), rhs)}",
                    checked, skipped,
                )

    for f in R.indices():
        if f not in R.local_units:
            continue
        checked += 1
        image = phi.apply_coords((f, f), R.local_units[f])
        if f not in S.local_units or list(image) != list(S.local_units[f]):
            return Verdict.failed(check, "local unit", (f,), f"φ(1_{f}) != 1_{f}", checked, skipped)

    for pair in R.pairs():
        if not linalg.is_invertible(phi.blocks[pair]):
            return Verdict.failed(check, "invertibility", (pair,), f"block {pair} is singular",
                                  checked, skipped)

    logger.debug("certified %s: %s -> %s (%d products, %d skipped)",
                 phi.name, R.name, S.name, checked, skipped)
    return Verdict.passed(check, checked, skipped)

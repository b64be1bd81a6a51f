"""
Principal maps on G-algebras, the canonical map 𝒮 of Ā, and compression.

A principal map 𝒯 assigns to each g of a family window a graded automorphism
𝒯_g of left degree g, stored as blocks R_{h,l} → R_{gh,gl}.  Families are
partial on windows: a block exists only when both of its components are
present (and, for generator-built families, when every intermediate power
stays on the window).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import product
from typing import Any

from pydantic import BaseModel, ConfigDict
from sympy.polys.matrices import DomainMatrix

from src.foundations import linalg
from src.foundations.errors import (
    DimensionMismatch,
    MissingComponent,
    NotAssociated,
    OutOfWindow,
    ShapeMismatch,
    UnverifiedPrincipalMap,
)
from src.foundations.groups import DegreeWindow, GroupElement, IndexWindow, group_op
from src.foundations.reports import Verdict
from src.graded.algebra import GradedAlgebra, contract, unit_vector

from .morphism import GAlgebraMorphism
from .window import GAlgebraWindow, Pair, Side, associated_g_algebra

logger = logging.getLogger(__name__)


def default_family_window(I: IndexWindow) -> IndexWindow:
    """Every g that can move some index of ``I`` to another index of ``I``."""
    if not I.group.is_integers:
        return I
    width = I.hi - I.lo
    return IndexWindow(group=I.group, lo=-width, hi=width)


def _shift(R: GAlgebraWindow, g: GroupElement, pair: Pair) -> Pair:
    h, l = pair
    return group_op(R.group, g, h), group_op(R.group, g, l)


@dataclass(frozen=True, eq=False)
class PrincipalMap:
    """
    A family g ↦ 𝒯_g on ``carrier``.

    Fields:
        family_window — the members g; each must have an entry in ``family``.
        family        — g → {(h, l): block R_{h,l} → R_{gh,gl}}.
        generator     — 𝒯₁ blocks when the family was built from a generator.
    """

    carrier: GAlgebraWindow
    family_window: IndexWindow
    family: dict
    generator: dict | None = None
    name: str = "T"
    _rows: dict = dataclass_field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        R = self.carrier
        if self.family_window.group != R.group:
            raise ShapeMismatch("family window is over a different group")
        for g in self.family_window.elements():
            if g not in self.family:
                raise MissingComponent(f"family window claims 𝒯_{g} but no blocks were given")
        for g, blocks in self.family.items():
            for pair, M in blocks.items():
                target = _shift(R, g, pair)
                if pair not in R.dims or target not in R.dims:
                    raise OutOfWindow(f"𝒯_{g} block {pair} -> {target} touches an absent component")
                expected = (R.dims[target], R.dims[pair])
                if M.shape != expected:
                    raise DimensionMismatch(f"𝒯_{g} block {pair} has shape {M.shape}, expected {expected}")
                self._rows[(g, pair)] = linalg.entries(M)

    def members(self) -> tuple[GroupElement, ...]:
        return self.family_window.elements()

    def defined(self, g: GroupElement, pair: Pair) -> bool:
        return (g, pair) in self._rows

    def block(self, g: GroupElement, pair: Pair) -> DomainMatrix:
        try:
            return self.family[g][pair]
        except KeyError:
            raise OutOfWindow(f"𝒯_{g} is undefined on {pair}") from None

    def apply_coords(self, g: GroupElement, pair: Pair, coords) -> list:
        if (g, pair) not in self._rows:
            raise OutOfWindow(f"𝒯_{g} is undefined on {pair}")
        return linalg.apply_rows(self._rows[(g, pair)], coords, self.carrier.K)

    def block_count(self) -> int:
        return len(self._rows)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def canonical_principal_map(Rbar: GAlgebraWindow, family_window: IndexWindow | None = None,
                            name: str = "S") -> PrincipalMap:
    """
    𝒮 on Ā: identity blocks under R_{h,l} = A_{h⁻¹l} = R_{gh,gl}.
    """
    origin = Rbar.origin
    if origin is None or origin.side is not Side.RIGHT:
        raise NotAssociated(f"{Rbar.name} does not carry the identification R_(h,l) = A_(h^-1 l)")
    family_window = family_window or default_family_window(Rbar.index_window)
    family = {}
    for g in family_window.elements():
        family[g] = {
            pair: linalg.identity(Rbar.dims[pair], Rbar.field)
            for pair in Rbar.pairs()
            if _shift(Rbar, g, pair) in Rbar.dims
        }
    return PrincipalMap(Rbar, family_window, family, name=name)


def principal_map_from_generator(R: GAlgebraWindow, generator: dict, family_window: IndexWindow | None = None,
                                 name: str = "T") -> PrincipalMap:
    """
    Materialize 𝒯_n = 𝒯₁ⁿ from the blocks of 𝒯₁ (integer grading only).

    A power is defined on (h, l) only when every intermediate block is;
    negative powers invert the positive power landing on (h, l).
    """
    if not R.group.is_integers:
        raise ShapeMismatch("generator form needs the integers as grading group")
    family_window = family_window or default_family_window(R.index_window)
    positive: dict[int, dict] = {0: {pair: linalg.identity(R.dims[pair], R.field) for pair in R.pairs()}}
    top = max(abs(family_window.lo), abs(family_window.hi))
    for n in range(1, top + 1):
        layer = {}
        for (h, l), M in positive[n - 1].items():
            step = (h + n - 1, l + n - 1)
            if step in generator:
                layer[(h, l)] = linalg.compose(generator[step], M)
        positive[n] = layer
    family = {}
    for n in family_window.elements():
        if n >= 0:
            family[n] = positive[n]
        else:
            family[n] = {
                (h - n, l - n): linalg.inverse(M)
                for (h, l), M in positive[-n].items()
            }
    return PrincipalMap(R, family_window, family, generator=dict(generator), name=name)


def conjugate_principal_map(alpha: GAlgebraMorphism, T: PrincipalMap, name: str | None = None) -> PrincipalMap:
    """α𝒯α⁻¹ transported to the target of α, on the blocks where α is defined."""
    if alpha.source is not T.carrier:
        raise ShapeMismatch("α must start at the carrier of 𝒯")
    inverse_blocks = {p: linalg.inverse(M) for p, M in alpha.blocks.items()}
    family = {}
    for g in T.members():
        blocks = {}
        for pair, M in T.family[g].items():
            target = _shift(T.carrier, g, pair)
            if pair in inverse_blocks and target in alpha.blocks:
                blocks[pair] = linalg.compose(alpha.blocks[target], linalg.compose(M, inverse_blocks[pair]))
        family[g] = blocks
    return PrincipalMap(alpha.target, T.family_window, family, name=name or f"{alpha.name}{T.name}")


def principal_maps_agree(T: PrincipalMap, U: PrincipalMap) -> bool:
    """Every block of ``U`` is defined in ``T`` and equal to it."""
    for g, blocks in U.family.items():
        for pair, M in blocks.items():
            if not T.defined(g, pair) or not linalg.equal(T.family[g][pair], M):
                return False
    return True


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def verify_principal_map(R: GAlgebraWindow, T: PrincipalMap) -> Verdict:
    """
    Check the principal-map axioms on every defined block.

    In order: multiplicativity 𝒯_g(xy) = 𝒯_g(x)𝒯_g(y) (witness
    ``(g, (h,l), (l,m))``), unit transport 1_h ↦ 1_{gh}, invertibility of each
    block, and 𝒯_g∘𝒯_{g'} = 𝒯_{gg'} wherever all three blocks exist.
    Instances touching undefined blocks are counted as skipped.
    """
    check = "principal-map"
    if T.carrier is not R and (T.carrier.dims != R.dims or T.carrier.index_window != R.index_window):
        raise ShapeMismatch("principal map lives on a different G-algebra")
    K = R.K
    idx = R.indices()
    checked = skipped = 0

    for g in T.members():
        for h, l, m in product(idx, repeat=3):
            if not (R.present(h, l) and R.present(l, m) and R.present(h, m)):
                continue
            n = R.dims[(h, l)] * R.dims[(l, m)]
            if n == 0:
                continue
            if not (T.defined(g, (h, l)) and T.defined(g, (l, m)) and T.defined(g, (h, m))):
                skipped += n
                continue
            gh, gl = _shift(R, g, (h, l))
            gm = group_op(R.group, g, m)
            for i, j in product(range(R.dims[(h, l)]), range(R.dims[(l, m)])):
                checked += 1
                x = unit_vector(R.dims[(h, l)], i, K)
                y = unit_vector(R.dims[(l, m)], j, K)
                lhs = T.apply_coords(g, (h, m), R.multiply_coords(h, l, x, m, y))
                rhs = R.multiply_coords(gh, gl, T.apply_coords(g, (h, l), x), gm,
                                        T.apply_coords(g, (l, m), y))
                if lhs != rhs:
                    return Verdict.failed(
                        check, "multiplicativity", (g, (h, l), (l, m)),
                        f"basis ({R.labels[(h, l)][i]}, {R.labels[(l, m)][j]}): "
                        f"T(xy) = {R.describe((gh, gm), lhs)}, T(x)T(y) = {R.describe((gh, gm), rhs)}",
                        checked, skipped,
                    )

    for g in T.members():
        for h in idx:
            if not T.defined(g, (h, h)):
                continue
            gh = group_op(R.group, g, h)
            if h not in R.local_units or gh not in R.local_units:
                skipped += 1
                continue
            checked += 1
            if list(T.apply_coords(g, (h, h), R.local_units[h])) != list(R.local_units[gh]):
                return Verdict.failed(check, "unit transport", (g, h), f"T_{g}(1_{h}) != 1_{gh}",
                                      checked, skipped)

    for g in T.members():
        for pair in R.pairs():
            if T.defined(g, pair):
                checked += 1
                if not linalg.is_invertible(T.family[g][pair]):
                    return Verdict.failed(check, "invertibility", (g, pair), f"T_{g} block {pair} is singular",
                                          checked, skipped)

    members = set(T.members())
    for g, g2 in product(T.members(), repeat=2):
        gg2 = group_op(R.group, g, g2)
        if gg2 not in members:
            continue
        for pair in R.pairs():
            if not T.defined(g2, pair):
                continue
            mid = _shift(R, g2, pair)
            if not (T.defined(g, mid) and T.defined(gg2, pair)):
                skipped += 1
                continue
            checked += 1
            composite = linalg.compose(T.family[g][mid], T.family[g2][pair])
            if not linalg.equal(composite, T.family[gg2][pair]):
                return Verdict.failed(check, "composition", (g, g2, pair),
                                      f"T_{g} T_{g2} != T_{gg2} on {pair}", checked, skipped)

    logger.debug("principal map %s verified: %d checks, %d skipped", T.name, checked, skipped)
    return Verdict.passed(check, checked, skipped)


# ---------------------------------------------------------------------------
# Compression
# ---------------------------------------------------------------------------


def compression_window(R: GAlgebraWindow, T: PrincipalMap) -> DegreeWindow:
    """
    Degrees g whose e-row component R_{e,g} is present and whose 𝒯_g is a
    family member; for the integers the largest interval around 0.
    """
    G = R.group
    e = G.identity
    if not R.index_window.contains(e):
        raise OutOfWindow("the identity index is outside the index window")
    members = set(T.members())

    def usable(g) -> bool:
        return R.index_window.contains(g) and R.present(e, g) and g in members

    if not G.is_integers:
        missing = [g for g in G.elements() if not usable(g)]
        if missing:
            raise OutOfWindow(f"e-row component ({e},{missing[0]}) or T_{missing[0]} is unavailable")
        return DegreeWindow(group=G)
    lo = hi = 0
    while usable(lo - 1):
        lo -= 1
    while usable(hi + 1):
        hi += 1
    return DegreeWindow(group=G, lo=lo, hi=hi)


def compress(R: GAlgebraWindow, T: PrincipalMap, window: DegreeWindow | None = None,
             name: str | None = None) -> GradedAlgebra:
    """
    The compression R^𝒯: degree-g part R_{e,g}, product x∘y = x·𝒯_g(y).

    ``window`` (default: :func:`compression_window`) must lie inside the
    degrees the e-row supports.
    """
    verdict = verify_principal_map(R, T)
    if not verdict.ok:
        raise UnverifiedPrincipalMap(f"{T.name}: {verdict.rule} fails at {verdict.witness}: {verdict.detail}")
    available = compression_window(R, T)
    window = window or available
    for g in window.elements():
        if not available.contains(g):
            raise OutOfWindow(f"degree {g} is outside the compressible window {available.format()}")

    G = R.group
    K = R.K
    e = G.identity
    degrees = window.elements()
    structure = {}
    for g, h in product(degrees, repeat=2):
        gh = group_op(G, g, h)
        if not window.contains(gh):
            continue
        if not T.defined(g, (e, h)):
            raise OutOfWindow(f"T_{g} is undefined on ({e},{h}); widen the index window")
        tensor = R.tensor(e, g, gh)
        out = R.dims[(e, gh)]
        rows = []
        for i in range(R.dims[(e, g)]):
            x = unit_vector(R.dims[(e, g)], i, K)
            row = []
            for j in range(R.dims[(e, h)]):
                y = T.apply_coords(g, (e, h), unit_vector(R.dims[(e, h)], j, K))
                row.append(tuple(contract(tensor, x, y, out, K)))
            rows.append(tuple(row))
        structure[(g, h)] = tuple(rows)

    A = GradedAlgebra(
        field=R.field,
        group=G,
        window=window,
        dims={g: R.dims[(e, g)] for g in degrees},
        labels={g: R.labels[(e, g)] for g in degrees},
        structure=structure,
        unit=tuple(R.local_unit(e)),
        name=name or f"{R.name}^{T.name}",
    )
    logger.info("compressed %s by %s on %s", R.name, T.name, window.format())
    return A


def check_fundamental_identity(A: GradedAlgebra, I: IndexWindow | None = None) -> Verdict:
    """
    x ∘_A y = x ∘_Ā 𝒮_g(y) for all on-window basis pairs x ∈ A_g, y ∈ A_h.

    ``I`` defaults to the degree window of A viewed as an index window.
    """
    check = "fundamental-identity"
    I = I or IndexWindow(group=A.group, lo=A.window.lo, hi=A.window.hi)
    Rbar = associated_g_algebra(A, I)
    S = canonical_principal_map(Rbar)
    G = A.group
    e = G.identity
    K = A.K
    members = set(S.members())
    checked = skipped = 0
    for g, h in product(A.degrees(), repeat=2):
        gh = group_op(G, g, h)
        if not A.window.contains(gh):
            continue
        n = A.dims[g] * A.dims[h]
        if n == 0:
            continue
        if g not in members or not S.defined(g, (e, h)) or not Rbar.present(e, g):
            skipped += n
            continue
        for i, j in product(range(A.dims[g]), range(A.dims[h])):
            checked += 1
            x = unit_vector(A.dims[g], i, K)
            y = unit_vector(A.dims[h], j, K)
            lhs = A.multiply_coords(g, x, h, y)
            rhs = Rbar.multiply_coords(e, g, x, gh, S.apply_coords(g, (e, h), y))
            if lhs != rhs:
                return Verdict.failed(check, "fundamental identity", (A.labels[g][i], A.labels[h][j]),
                                      f"{A.describe(gh, lhs)} != {A.describe(gh, rhs)}", checked, skipped)
    return Verdict.passed(check, checked, skipped)


# ---------------------------------------------------------------------------
# Dimension obstruction
# ---------------------------------------------------------------------------


class ObstructionEntry(BaseModel):
    """dim R_{h,l} != dim R_{gh,gl} for the shift g."""

    model_config = ConfigDict(frozen=True)

    shift: Any
    source: tuple[Any, Any]
    target: tuple[Any, Any]
    source_dim: int
    target_dim: int


class ObstructionReport(BaseModel):
    """
    Pairs of components that no degree-g automorphism could match.

    A nonempty report rules out a principal map *on this window* only;
    ``scope`` says so in every rendering.
    """

    model_config = ConfigDict(frozen=True)

    subject: str
    scope: str = "on-window"
    entries: list[ObstructionEntry] = []

    @property
    def ok(self) -> bool:
        return not self.entries

    def __bool__(self) -> bool:
        return self.ok

    def pairs(self, shift: Any | None = None) -> list[tuple[tuple, tuple]]:
        return [(e.source, e.target) for e in self.entries if shift is None or e.shift == shift]


def _shift_order(R: GAlgebraWindow, family_window: IndexWindow) -> list[GroupElement]:
    e = R.group.identity
    members = [g for g in family_window.elements() if g != e]
    if R.group.is_integers:
        members.sort(key=lambda g: (abs(g), g < 0))
    return members


def principal_dimension_obstruction(R: GAlgebraWindow, family_window: IndexWindow | None = None) -> ObstructionReport:
    """
    For each g ≠ e, every (h, l) with both R_{h,l} and R_{gh,gl} present and
    of different dimensions.  Integer shifts are listed 1, -1, 2, -2, …
    """
    family_window = family_window or default_family_window(R.index_window)
    entries = []
    for g in _shift_order(R, family_window):
        for pair in R.pairs():
            target = _shift(R, g, pair)
            if target in R.dims and R.dims[target] != R.dims[pair]:
                entries.append(ObstructionEntry(shift=g, source=pair, target=target,
                                                source_dim=R.dims[pair], target_dim=R.dims[target]))
    if entries:
        logger.info("%s: %d dimension obstructions on-window", R.name, len(entries))
    return ObstructionReport(subject=R.name, entries=entries)

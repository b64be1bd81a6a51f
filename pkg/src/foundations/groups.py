"""
Grading groups and the finite windows every computation runs on.

Two kinds of group are supported:

* ``integers`` — ℤ, elements are Python ints;
* ``finite``   — a group given by a Cayley table, elements are string labels.

A *window* is a finite set of group elements: a closed interval ``[lo, hi]``
for ℤ, the whole group for a finite group.  ``DegreeWindow`` truncates the
grading of an algebra (it must contain the identity), ``IndexWindow`` truncates
the rows/columns of a G-algebra and the member set of map families.
"""

from __future__ import annotations

import logging
from enum import Enum
from itertools import product
from typing import Union

from pydantic import BaseModel, ConfigDict, model_validator

from .errors import EmptyWindow, InvalidGroup, ShapeMismatch, UnknownElement
from .reports import ValidationReport, Violation

logger = logging.getLogger(__name__)

GroupElement = Union[int, str]


class GroupKind(str, Enum):
    INTEGERS = "integers"
    FINITE = "finite"


class GradingGroup(BaseModel):
    """
    The grading group G.

    Fields:
        kind   — ``integers`` or ``finite``.
        labels — element labels (finite groups only), in table order.
        table  — Cayley table as label indices: ``labels[table[i][j]]`` is
                 ``labels[i] · labels[j]``.

    Construct finite groups through :meth:`from_table` (validated) or
    :meth:`cyclic`; the bare constructor accepts any square table so that
    :func:`validate_group` can report on broken ones.
    """

    model_config = ConfigDict(frozen=True)

    kind: GroupKind
    labels: tuple[str, ...] = ()
    table: tuple[tuple[int, ...], ...] = ()

    @model_validator(mode="after")
    def _check_shape(self) -> "GradingGroup":
        if self.kind is GroupKind.INTEGERS:
            if self.labels or self.table:
                raise ValueError("the integers take no Cayley table")
            return self
        n = len(self.labels)
        if n == 0:
            raise ValueError("a finite group needs at least one element")
        if len(set(self.labels)) != n:
            raise ValueError("duplicate element labels")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError(f"Cayley table must be {n}x{n}")
        return self

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def integers(cls) -> "GradingGroup":
        return cls(kind=GroupKind.INTEGERS)

    @classmethod
    def from_table(cls, labels: list[str], rows: list[list[str]]) -> "GradingGroup":
        """Build a finite group from a table of labels and validate the axioms."""
        index = {label: i for i, label in enumerate(labels)}
        try:
            table = tuple(tuple(index[entry] for entry in row) for row in rows)
        except KeyError as exc:
            raise InvalidGroup([f"table entry {exc.args[0]!r} is not an element"]) from None
        group = cls(kind=GroupKind.FINITE, labels=tuple(labels), table=table)
        report = validate_group(group)
        if not report.ok:
            raise InvalidGroup([v.detail for v in report.violations])
        return group

    @classmethod
    def cyclic(cls, n: int) -> "GradingGroup":
        """ℤ/n with labels ``e, a, a^2, …``."""
        if n < 1:
            raise ValueError("cyclic group order must be positive")
        labels = ["e", "a"] + [f"a^{k}" for k in range(2, n)]
        labels = labels[:n]
        rows = [[labels[(i + j) % n] for j in range(n)] for i in range(n)]
        return cls.from_table(labels, rows)

    # ------------------------------------------------------------------
    # Element helpers
    # ------------------------------------------------------------------

    @property
    def is_integers(self) -> bool:
        return self.kind is GroupKind.INTEGERS

    @property
    def identity(self) -> GroupElement:
        if self.is_integers:
            return 0
        for i in range(len(self.labels)):
            if all(self.table[i][j] == j for j in range(len(self.labels))):
                return self.labels[i]
        raise InvalidGroup(["no identity element"])

    def elements(self) -> tuple[GroupElement, ...]:
        if self.is_integers:
            raise EmptyWindow("the integers have no finite element list; use a window")
        return self.labels

    def index_of(self, g: GroupElement) -> int:
        if self.is_integers:
            if not isinstance(g, int) or isinstance(g, bool):
                raise UnknownElement(f"{g!r} is not an integer")
            return g
        try:
            return self.labels.index(g)  # type: ignore[arg-type]
        except ValueError:
            raise UnknownElement(f"{g!r} is not an element of the group") from None

    def sort_key(self, g: GroupElement) -> int:
        return self.index_of(g)

    def parse_element(self, token: str) -> GroupElement:
        """Read an element from its fixture/CLI spelling."""
        if self.is_integers:
            try:
                return int(token)
            except ValueError:
                raise UnknownElement(f"{token!r} is not an integer") from None
        self.index_of(token)
        return token

    def format_element(self, g: GroupElement) -> str:
        return str(g)


# ---------------------------------------------------------------------------
# Group arithmetic
# ---------------------------------------------------------------------------


def group_op(G: GradingGroup, f: GroupElement, g: GroupElement) -> GroupElement:
    """The product ``f·g`` (``f + g`` for ℤ)."""
    if G.is_integers:
        return G.index_of(f) + G.index_of(g)
    return G.labels[G.table[G.index_of(f)][G.index_of(g)]]


def group_inv(G: GradingGroup, f: GroupElement) -> GroupElement:
    """The inverse ``f⁻¹`` (``-f`` for ℤ)."""
    if G.is_integers:
        return -G.index_of(f)
    i = G.index_of(f)
    e = G.index_of(G.identity)
    for j in range(len(G.labels)):
        if G.table[i][j] == e:
            return G.labels[j]
    raise InvalidGroup([f"no inverse for {f}"])


def left_quotient(G: GradingGroup, f: GroupElement, g: GroupElement) -> GroupElement:
    """``f⁻¹·g`` — the degree of the component (f, g) of a right G-algebra."""
    return group_op(G, group_inv(G, f), g)


def right_quotient(G: GradingGroup, f: GroupElement, g: GroupElement) -> GroupElement:
    """``f·g⁻¹`` — the degree of the component (f, g) of a left G-algebra."""
    return group_op(G, f, group_inv(G, g))


def validate_group(G: GradingGroup) -> ValidationReport:
    """
    List every violated group axiom of a Cayley table.

    The integers are always valid.  For finite tables the report covers
    closure, the identity, inverses and associativity; it is empty iff the
    table defines a group.
    """
    report = ValidationReport(subject="group")
    if G.is_integers:
        return report
    n = len(G.labels)
    violations: list[Violation] = []

    bad_entries = [(i, j) for i, j in product(range(n), repeat=2) if not 0 <= G.table[i][j] < n]
    for i, j in bad_entries:
        violations.append(Violation(
            rule="closure",
            witness=(G.labels[i], G.labels[j]),
            detail=f"product of {G.labels[i]} and {G.labels[j]} is not an element",
        ))
    if bad_entries:
        return report.model_copy(update={"violations": violations})

    identities = [
        i for i in range(n)
        if all(G.table[i][j] == j and G.table[j][i] == j for j in range(n))
    ]
    if not identities:
        violations.append(Violation(rule="identity", witness=(), detail="no identity element"))
    else:
        e = identities[0]
        for i in range(n):
            if not any(G.table[i][j] == e and G.table[j][i] == e for j in range(n)):
                violations.append(Violation(
                    rule="inverse",
                    witness=(G.labels[i],),
                    detail=f"no inverse for {G.labels[i]}",
                ))

    for i, j, k in product(range(n), repeat=3):
        if G.table[G.table[i][j]][k] != G.table[i][G.table[j][k]]:
            violations.append(Violation(
                rule="associativity",
                witness=(G.labels[i], G.labels[j], G.labels[k]),
                detail=f"({G.labels[i]}{G.labels[j]}){G.labels[k]} != "
                       f"{G.labels[i]}({G.labels[j]}{G.labels[k]})",
            ))

    if violations:
        logger.debug("group table fails %d axiom checks", len(violations))
    return report.model_copy(update={"violations": violations})


# ---------------------------------------------------------------------------
# Windows
# ---------------------------------------------------------------------------


class Window(BaseModel):
    """
    A finite set of elements of ``group``.

    For ℤ the window is the closed interval ``[lo, hi]``; for a finite group
    it is the whole group and ``lo``/``hi`` are unused.
    """

    model_config = ConfigDict(frozen=True)

    group: GradingGroup
    lo: int = 0
    hi: int = 0

    @model_validator(mode="after")
    def _check_bounds(self) -> "Window":
        if self.group.is_integers and self.lo > self.hi:
            raise ValueError(f"empty window {self.lo}..{self.hi}")
        return self

    @classmethod
    def interval(cls, lo: int, hi: int):
        return cls(group=GradingGroup.integers(), lo=lo, hi=hi)

    @classmethod
    def whole(cls, group: GradingGroup):
        return cls(group=group)

    @classmethod
    def parse(cls, text: str, group: GradingGroup | None = None):
        """Parse ``lo..hi`` (integers) or ``all`` (finite groups)."""
        group = group or GradingGroup.integers()
        text = text.strip()
        if not group.is_integers:
            if text != "all":
                raise ValueError(f"finite-group windows are spelled 'all', got {text!r}")
            return cls(group=group)
        lo, sep, hi = text.partition("..")
        if not sep:
            raise ValueError(f"window must look like 'lo..hi', got {text!r}")
        return cls(group=group, lo=int(lo), hi=int(hi))

    def elements(self) -> tuple[GroupElement, ...]:
        if self.group.is_integers:
            return tuple(range(self.lo, self.hi + 1))
        return self.group.labels

    def contains(self, g: GroupElement) -> bool:
        if self.group.is_integers:
            return isinstance(g, int) and self.lo <= g <= self.hi
        return g in self.group.labels

    def format(self) -> str:
        if self.group.is_integers:
            return f"{self.lo}..{self.hi}"
        return "all"

    def intersect(self, other: "Window"):
        if self.group != other.group:
            raise ShapeMismatch("windows over different groups")
        if not self.group.is_integers:
            return self
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise EmptyWindow(f"{self.format()} and {other.format()} do not meet")
        return type(self)(group=self.group, lo=lo, hi=hi)


class DegreeWindow(Window):
    """Degrees of a graded algebra kept on-window; always contains the identity."""

    @model_validator(mode="after")
    def _check_identity(self) -> "DegreeWindow":
        if not self.contains(self.group.identity):
            raise ValueError("a degree window must contain the identity degree")
        return self


class IndexWindow(Window):
    """Row/column indices of a G-algebra, or the members of a map family."""


def window_contains(W: Window, g: GroupElement) -> bool:
    """True iff ``g`` lies in the window."""
    return W.contains(g)


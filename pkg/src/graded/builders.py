"""
Builders for the graded algebras used throughout the toolkit.

Every builder works through :func:`build_from_products`, which turns a basis
(labels per degree) and a product rule on basis labels into structure
tensors.  Basis labels are canonical strings:

* monomials ``1``, ``x``, ``x^2``, ``x*y``, ``x^-1``;
* direct-sum vectors ``(x^2,0)`` and ``(0,y)``;
* matrix units times monomials ``E12*x^3`` (``E11`` in degree 0).
"""

from __future__ import annotations

import logging
import re
from itertools import product as cartesian
from typing import Callable, Mapping, Sequence

from src.foundations.errors import DimensionMismatch, ShapeMismatch
from src.foundations.fields import FieldSpec
from src.foundations.groups import DegreeWindow, GradingGroup, group_op

from .algebra import GradedAlgebra
from .maps import GradedLinearMap, diagonal_map

logger = logging.getLogger(__name__)

ProductRule = Callable[[str, str], Mapping[str, object]]

DEFAULT_NAMES = ("x", "y", "z", "w", "u", "v")

_FACTOR = re.compile(r"([A-Za-z]+)(?:\^(-?\d+))?$")


# ---------------------------------------------------------------------------
# Generic builder
# ---------------------------------------------------------------------------


def build_from_products(
    field: FieldSpec,
    window: DegreeWindow,
    labels: Mapping,
    product: ProductRule,
    unit: Mapping[str, object],
    name: str = "A",
) -> GradedAlgebra:
    """
    Assemble a ``GradedAlgebra`` from a basis and a rule multiplying labels.

    Parameters
    ----------
    labels:
        degree → basis labels of that degree (every window degree present).
    product:
        ``product(a, b)`` returns ``{label: coefficient}`` in degree
        deg(a)·deg(b); an empty mapping means ``a·b = 0``.
    unit:
        coordinates of 1 as ``{label: coefficient}`` in degree e.
    """
    G = window.group
    K = field.domain
    degrees = window.elements()
    index = {g: {label: i for i, label in enumerate(labels[g])} for g in degrees}
    structure = {}
    for g, h in cartesian(degrees, repeat=2):
        gh = group_op(G, g, h)
        if not window.contains(gh):
            continue
        n_out = len(labels[gh])
        tensor = []
        for a in labels[g]:
            row = []
            for b in labels[h]:
                cell = [K.zero] * n_out
                for label, coeff in product(a, b).items():
                    if label not in index[gh]:
                        raise DimensionMismatch(f"{a}·{b} = {label} is not a basis vector of degree {gh}")
                    cell[index[gh][label]] += field.scalar(coeff)
                row.append(tuple(cell))
            tensor.append(tuple(row))
        structure[(g, h)] = tuple(tensor)
    e = G.identity
    unit_coords = [K.zero] * len(labels[e])
    for label, coeff in unit.items():
        unit_coords[index[e][label]] = field.scalar(coeff)
    return GradedAlgebra(
        field=field,
        group=G,
        window=window,
        dims={g: len(labels[g]) for g in degrees},
        labels={g: tuple(labels[g]) for g in degrees},
        structure=structure,
        unit=tuple(unit_coords),
        name=name,
    )


# ---------------------------------------------------------------------------
# Monomial labels
# ---------------------------------------------------------------------------


def monomial_label(names: Sequence[str], exponents: Sequence[int]) -> str:
    factors = []
    for var, k in zip(names, exponents):
        if k == 0:
            continue
        factors.append(var if k == 1 else f"{var}^{k}")
    return "*".join(factors) if factors else "1"


def parse_monomial(label: str) -> dict[str, int]:
    """Exponents of the variables in a monomial-bearing label.

    Direct-sum wrappers and matrix units are ignored, so ``(x^2,0)`` gives
    ``{"x": 2}`` and ``E12*x^-3`` gives ``{"x": -3}``.
    """
    exponents: dict[str, int] = {}
    for part in re.split(r"[(),*]", label):
        part = part.strip()
        if not part or part in ("0", "1") or re.fullmatch(r"E\d\d", part):
            continue
        match = _FACTOR.match(part)
        if match is None:
            raise ValueError(f"cannot read monomial factor {part!r} in {label!r}")
        var, k = match.group(1), int(match.group(2) or 1)
        exponents[var] = exponents.get(var, 0) + k
    return exponents


def _times(unit_label: str, mono: str) -> str:
    return unit_label if mono == "1" else f"{unit_label}*{mono}"


# ---------------------------------------------------------------------------
# Example algebras
# ---------------------------------------------------------------------------


def build_polynomial_ring(
    field: FieldSpec,
    generator_degrees: Sequence[int],
    window: DegreeWindow,
    names: Sequence[str] | None = None,
    name: str | None = None,
) -> GradedAlgebra:
    """
    Commutative k[x₁,…,xₙ] with deg xᵢ = ``generator_degrees[i]`` (ℤ-graded).

    Degrees must be nonzero and of one sign so that each A_d is finite
    dimensional; degrees of the window with no monomials get dim 0.
    """
    degs = list(generator_degrees)
    if not window.group.is_integers:
        raise ShapeMismatch("polynomial rings are graded by the integers")
    if not degs or any(d == 0 for d in degs):
        raise DimensionMismatch("generator degrees must be nonzero")
    if not (all(d > 0 for d in degs) or all(d < 0 for d in degs)):
        raise DimensionMismatch("generator degrees must share one sign")
    names = tuple(names or DEFAULT_NAMES[: len(degs)])
    if len(names) != len(degs):
        raise DimensionMismatch("one variable name per generator")

    exps_of: dict[str, tuple[int, ...]] = {}
    labels: dict[int, list[str]] = {}
    for d in window.elements():
        bounds = [range(abs(d) // abs(a) + 1) for a in degs]
        monos = [e for e in cartesian(*bounds) if sum(k * a for k, a in zip(e, degs)) == d]
        monos.sort(reverse=True)
        labels[d] = [monomial_label(names, e) for e in monos]
        exps_of.update({monomial_label(names, e): e for e in monos})

    def rule(a: str, b: str) -> dict[str, int]:
        e = tuple(p + q for p, q in zip(exps_of[a], exps_of[b]))
        return {monomial_label(names, e): 1}

    name = name or f"k[{','.join(names)}]"
    return build_from_products(field, window, labels, rule, {"1": 1}, name)


def build_laurent_ring(
    field: FieldSpec,
    generator_degree: int,
    window: DegreeWindow,
    var: str = "x",
    name: str | None = None,
) -> GradedAlgebra:
    """k[x, x⁻¹] with deg x = ``generator_degree``."""
    if generator_degree == 0:
        raise DimensionMismatch("a degree-0 Laurent generator gives infinite-dimensional A_0")
    labels = {
        d: [monomial_label((var,), (d // generator_degree,))] if d % generator_degree == 0 else []
        for d in window.elements()
    }

    def rule(a: str, b: str) -> dict[str, int]:
        k = parse_monomial(a).get(var, 0) + parse_monomial(b).get(var, 0)
        return {monomial_label((var,), (k,)): 1}

    return build_from_products(field, window, labels, rule, {"1": 1}, name or f"k[{var},{var}^-1]")


def build_direct_sum(A: GradedAlgebra, B: GradedAlgebra, name: str | None = None) -> GradedAlgebra:
    """A ⊕ B with componentwise product; labels ``(a,0)`` then ``(0,b)``."""
    if A.field != B.field or A.window != B.window:
        raise ShapeMismatch("direct summands must share field and window")
    labels = {
        g: [f"({a},0)" for a in A.labels[g]] + [f"(0,{b})" for b in B.labels[g]]
        for g in A.degrees()
    }
    where: dict[str, tuple[GradedAlgebra, int, int]] = {}
    for g in A.degrees():
        for i in range(A.dims[g]):
            where[f"({A.labels[g][i]},0)"] = (A, g, i)
        for i in range(B.dims[g]):
            where[f"(0,{B.labels[g][i]})"] = (B, g, i)

    def rule(a: str, b: str) -> dict[str, object]:
        (X, g, i), (Y, h, j) = where[a], where[b]
        if X is not Y:
            return {}
        gh = group_op(X.group, g, h)
        out = {}
        for m, c in enumerate(X.structure[(g, h)][i][j]):
            if c != X.K.zero:
                label = X.labels[gh][m]
                out[f"({label},0)" if X is A else f"(0,{label})"] = c
        return out

    e = A.identity
    unit = {f"({A.labels[e][i]},0)": c for i, c in enumerate(A.unit) if c != A.K.zero}
    unit.update({f"(0,{B.labels[e][i]})": c for i, c in enumerate(B.unit) if c != B.K.zero})
    return build_from_products(A.field, A.window, labels, rule, unit, name or f"{A.name}+{B.name}")


def build_matrix_example(field: FieldSpec, window: DegreeWindow, var: str = "x",
                         name: str = "M") -> GradedAlgebra:
    """
    The 2×2 pattern ring with A_n = k E11 xⁿ ⊕ k E22 xⁿ (n even) and
    A_n = k E12 xⁿ ⊕ k E21 xⁿ (n odd).
    """
    labels = {}
    for n in window.elements():
        units = ("E11", "E22") if n % 2 == 0 else ("E12", "E21")
        mono = monomial_label((var,), (n,))
        labels[n] = [_times(u, mono) for u in units]

    def rule(a: str, b: str) -> dict[str, int]:
        ua, ub = a[:3], b[:3]
        if ua[2] != ub[1]:
            return {}
        k = parse_monomial(a).get(var, 0) + parse_monomial(b).get(var, 0)
        return {_times(f"E{ua[1]}{ub[2]}", monomial_label((var,), (k,))): 1}

    return build_from_products(field, window, labels, rule, {"E11": 1, "E22": 1}, name)


def build_group_algebra(field: FieldSpec, group: GradingGroup, window: DegreeWindow | None = None,
                        name: str | None = None) -> GradedAlgebra:
    """k[G] graded by G: one basis vector ``[g]`` in each degree g."""
    window = window or DegreeWindow.whole(group)
    labels = {g: [f"[{g}]"] for g in window.elements()}
    parse = {f"[{g}]": g for g in window.elements()}

    def rule(a: str, b: str) -> dict[str, int]:
        return {f"[{group_op(group, parse[a], parse[b])}]": 1}

    return build_from_products(field, window, labels, rule, {f"[{group.identity}]": 1},
                               name or "k[G]")


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------


def scaling_automorphism(A: GradedAlgebra, weights: Mapping[str, object]) -> GradedLinearMap:
    """
    σ(m) = Π wᵥ^{eᵥ} · m on monomial-labelled bases.

    Variables missing from ``weights`` are fixed.  Weights must be nonzero,
    since negative exponents (Laurent labels) need inverses.
    """
    F = A.field
    scalars = {var: F.scalar(w) for var, w in weights.items()}
    if any(F.is_zero(w) for w in scalars.values()):
        raise DimensionMismatch("scaling weights must be nonzero")

    def scale(g, i):
        c = F.one
        for var, k in parse_monomial(A.labels[g][i]).items():
            if var in scalars:
                c *= F.power(scalars[var], k)
        return c

    logger.debug("scaling automorphism of %s with weights %s", A.name, dict(weights))
    return diagonal_map(A, scale)

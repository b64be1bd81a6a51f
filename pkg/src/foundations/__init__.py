"""
Foundations package — exact scalars, grading groups, windows, reports, errors.
"""

from .errors import (
    CertificationFailed,
    DimensionMismatch,
    EmptyWindow,
    FixtureParseError,
    InvalidGroup,
    MissingComponent,
    NotAssociated,
    OutOfWindow,
    ShapeMismatch,
    SingularBlock,
    UncertifiedIso,
    UnknownElement,
    UnknownFixture,
    UnverifiedPrincipalMap,
    UnverifiedTwistingSystem,
    ZalgError,
)
from .fields import FieldKind, FieldSpec, Scalar
from .groups import (
    DegreeWindow,
    GradingGroup,
    GroupElement,
    GroupKind,
    IndexWindow,
    Window,
    group_inv,
    group_op,
    left_quotient,
    right_quotient,
    validate_group,
    window_contains,
)
from .reports import ValidationReport, Verdict, Violation

__all__ = [
    # Scalars
    "FieldKind",
    "FieldSpec",
    "Scalar",
    # Groups / windows
    "GroupKind",
    "GradingGroup",
    "GroupElement",
    "Window",
    "DegreeWindow",
    "IndexWindow",
    "group_op",
    "group_inv",
    "left_quotient",
    "right_quotient",
    "validate_group",
    "window_contains",
    # Reports
    "ValidationReport",
    "Verdict",
    "Violation",
    # Errors
    "ZalgError",
    "UnknownElement",
    "InvalidGroup",
    "EmptyWindow",
    "OutOfWindow",
    "DimensionMismatch",
    "ShapeMismatch",
    "SingularBlock",
    "MissingComponent",
    "NotAssociated",
    "UnverifiedPrincipalMap",
    "UnverifiedTwistingSystem",
    "UncertifiedIso",
    "UnknownFixture",
    "CertificationFailed",
    "FixtureParseError",
]

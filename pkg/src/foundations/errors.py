"""
Exception hierarchy shared by every package under ``src``.

Report-returning checks (``validate_*``, ``verify_*``, ``check_*``) never raise
for a failed property; the exceptions below signal *input* problems: data that
leaves a window, malformed shapes, unverified preconditions.

The CLI maps the unverified and uncertified errors to exit status 1 and any
other ``ZalgError`` to 2.
"""

from __future__ import annotations


class ZalgError(Exception):
    """Base class for all errors raised by the toolkit."""


class UnknownElement(ZalgError):
    """A group element label that is not part of the grading group."""


class InvalidGroup(ZalgError):
    """A Cayley table that does not define a group."""

    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("invalid group: " + "; ".join(problems))


class EmptyWindow(ZalgError):
    """A window (or window intersection) with no elements."""


class OutOfWindow(ZalgError):
    """A degree or index that leaves the window the computation lives on."""


class DimensionMismatch(ZalgError):
    """A coordinate vector or matrix whose size disagrees with the dimensions."""


class ShapeMismatch(ZalgError):
    """Two objects that must share a group, window or block layout do not."""


class SingularBlock(ZalgError):
    """A block that must be inverted is not invertible."""


class MissingComponent(ZalgError):
    """A family member that the family window claims to contain is absent."""


class NotAssociated(ZalgError):
    """A G-algebra without the identification R_{h,l} = A_{h^-1 l}."""


class UnverifiedPrincipalMap(ZalgError):
    """An operation that needs a verified principal map received one that fails."""


class UnverifiedTwistingSystem(ZalgError):
    """An operation that needs a verified twisting system received one that fails."""


class UncertifiedIso(ZalgError):
    """A morphism offered as a G-algebra isomorphism fails certification."""


class UnknownFixture(ZalgError):
    """A fixture name outside the shipped corpus."""


class CertificationFailed(ZalgError):
    """A fixture bundle whose objects fail re-verification."""

    def __init__(self, bundle: str, subject: str, check: str, detail: str = ""):
        self.bundle = bundle
        self.subject = subject
        self.check = check
        message = f"fixture {bundle}: {subject} fails {check}"
        super().__init__(f"{message} ({detail})" if detail else message)


class FixtureParseError(ZalgError):
    """A fixture document that cannot be parsed, with its source location."""

    def __init__(self, message: str, line: int, column: int = 1, source: str = "<input>"):
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")

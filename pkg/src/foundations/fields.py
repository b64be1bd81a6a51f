"""
Exact base fields: the rationals and prime fields.

Scalars are sympy domain elements (``QQ`` or ``GF(p)``); nothing in the
toolkit ever touches a float.  ``FieldSpec`` is the serializable description,
``FieldSpec.domain`` the sympy domain that does the arithmetic.
"""

from __future__ import annotations

import re
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain

Scalar = Any  # a sympy domain element of FieldSpec.domain

_LITERAL = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


class FieldKind(str, Enum):
    RATIONALS = "rationals"
    PRIME_FIELD = "prime_field"


@lru_cache(maxsize=None)
def _domain(kind: FieldKind, characteristic: int) -> Domain:
    if kind is FieldKind.RATIONALS:
        return QQ
    return GF(characteristic, symmetric=False)


class FieldSpec(BaseModel):
    """
    The base field k.

    Fields:
        kind           — ``rationals`` or ``prime_field``.
        characteristic — 0 for the rationals, a prime p for 𝔽_p.
    """

    model_config = ConfigDict(frozen=True)

    kind: FieldKind
    characteristic: int = 0

    @model_validator(mode="after")
    def _check_characteristic(self) -> "FieldSpec":
        if self.kind is FieldKind.RATIONALS and self.characteristic != 0:
            raise ValueError("the rationals have characteristic 0")
        if self.kind is FieldKind.PRIME_FIELD and not isprime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is not prime")
        return self

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(kind=FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(kind=FieldKind.PRIME_FIELD, characteristic=p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``q`` or ``fp:<p>`` (the ``--field`` flag syntax)."""
        text = text.strip()
        if text == "q":
            return cls.rationals()
        if text.startswith("fp:") and text[3:].isdigit():
            return cls.prime(int(text[3:]))
        raise ValueError(f"unknown field {text!r}; expected 'q' or 'fp:<p>'")

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    @property
    def domain(self) -> Domain:
        return _domain(self.kind, self.characteristic)

    @property
    def zero(self) -> Scalar:
        return self.domain.zero

    @property
    def one(self) -> Scalar:
        return self.domain.one

    def scalar(self, value: Any) -> Scalar:
        """
        Convert ``value`` into an exact scalar of this field.

        Accepts ints, ``fractions.Fraction``, literal strings (``"3"``,
        ``"-2/7"``) and elements that already belong to the domain.
        """
        K = self.domain
        if isinstance(value, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(value, int):
            return K(value)
        if isinstance(value, Fraction):
            return self._ratio(value.numerator, value.denominator)
        if isinstance(value, str):
            match = _LITERAL.match(value.strip())
            if match is None:
                raise ValueError(f"not an exact scalar literal: {value!r}")
            numerator = int(match.group(1))
            denominator = int(match.group(2) or 1)
            return self._ratio(numerator, denominator)
        if K.of_type(value):
            return value
        raise TypeError(f"cannot convert {value!r} into {self.label()}")

    def _ratio(self, numerator: int, denominator: int) -> Scalar:
        K = self.domain
        if denominator == 0:
            raise ZeroDivisionError("zero denominator in scalar literal")
        if self.kind is FieldKind.RATIONALS:
            return K(numerator, denominator)
        if denominator % self.characteristic == 0:
            raise ZeroDivisionError(f"{denominator} is not invertible mod {self.characteristic}")
        return K(numerator) / K(denominator)

    def format(self, a: Scalar) -> str:
        """Canonical literal: ``n``, ``n/d`` or a residue in ``0..p-1``."""
        return str(self.domain.to_sympy(a))

    def to_int(self, a: Scalar) -> int:
        """Residue of ``a`` (prime fields) or its integer value (integral rationals)."""
        value = self.domain.to_sympy(a)
        if not value.is_Integer:
            raise ValueError(f"{value} is not integral")
        return int(value)

    def is_zero(self, a: Scalar) -> bool:
        return a == self.domain.zero

    def power(self, a: Scalar, n: int) -> Scalar:
        if n < 0:
            return self.domain.one / (a ** (-n))
        return a ** n

    def label(self) -> str:
        """The ``--field`` flag spelling of this field."""
        if self.kind is FieldKind.RATIONALS:
            return "q"
        return f"fp:{self.characteristic}"

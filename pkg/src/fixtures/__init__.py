"""
Named worked examples, rebuilt and certified on demand.
"""

from .bundles import (
    CertificationEntry,
    CertificationReport,
    FixtureBundle,
    certify,
    fixture,
    list_fixtures,
    matrix_pair_image,
)

__all__ = [
    "CertificationEntry",
    "CertificationReport",
    "FixtureBundle",
    "certify",
    "fixture",
    "list_fixtures",
    "matrix_pair_image",
]

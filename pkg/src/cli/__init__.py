"""
Command-line front end and the fixture file format.
"""

from .commands import build_parser, run
from .fixture_format import (
    FixtureDocument,
    bundle_document,
    document_of,
    load_documents,
    parse_document,
    print_document,
)
from .reports import CommandReport, render

__all__ = [
    "build_parser",
    "run",
    "FixtureDocument",
    "bundle_document",
    "document_of",
    "load_documents",
    "parse_document",
    "print_document",
    "CommandReport",
    "render",
]

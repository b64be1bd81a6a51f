#!/usr/bin/env python
"""
Write every fixture bundle, expanded and re-certified, as a fixture document.

The output goes to ZALG_CORPUS_DIR (build/corpus by default). The versioned inputs
those bundles are rebuilt from live in corpus/v1 and are not touched here.
"""
import sys
import os

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from pathlib import Path

from src.cli.fixture_format import bundle_document, print_document
from src.config import get_settings
from src.fixtures import certify, fixture

# ---------------------------------------------------------------------------
# Corpus definitions
# ---------------------------------------------------------------------------

# (file stem, fixture name, field, index window)
ENTRIES = [
    ("not-principal.q", "not-principal", "q", "-3..3"),
    ("not-principal.f5", "not-principal", "fp:5", "0..3"),
    ("eg2.f5", "eg2", "fp:5", "-2..2"),
    ("zhang-matrix-pair.q", "zhang-matrix-pair", "q", "-3..3"),
    ("q-plane.q", "q-plane", "q", "0..4"),
    ("q-plane.f7", "q-plane", "fp:7", "0..4"),
]


# ---------------------------------------------------------------------------
# Build
# ---------------------------------------------------------------------------

def build(target: Path) -> None:
    target.mkdir(parents=True, exist_ok=True)
    written = 0
    for stem, name, field, window in ENTRIES:
        bundle = fixture(name, field, window, certify_bundle=False)
        report = certify(bundle)
        if not report.ok:
            failed = ", ".join(f"{f.subject}:{f.check}" for f in report.failures())
            print(f"  skip {stem}: certification failed ({failed})")
            continue
        doc = bundle_document(bundle)
        path = target / f"{stem}.fix"
        path.write_text(print_document(doc), encoding="utf-8")
        written += 1
        print(f"  + {path.name}: {name} over {field} on {window}")
    print(f"\nCorpus written to {target} ({written} of {len(ENTRIES)} files)")


if __name__ == "__main__":
    build(Path(sys.argv[1]) if len(sys.argv) > 1 else get_settings().corpus_dir)

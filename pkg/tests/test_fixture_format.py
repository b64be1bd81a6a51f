"""
Tests for reading and writing fixture documents.
"""

import pytest

from src.cli.fixture_format import (
    bundle_document,
    document_of,
    load_documents,
    parse_document,
    print_document,
    tokenize_line,
)
from src.foundations.errors import FixtureParseError, UnknownElement
from src.foundations.fields import FieldSpec
from src.galgebra import validate_g_algebra, verify_principal_map
from src.graded import same_structure, structure_differences
from src.twisting import verify_twisting_system
from tests.fixtures import cached_plane

HEAD = "format zalg-fixture 1\nfield q\n\n"

POINT = HEAD + """algebra k
  window 0..0
  basis 0 1
  unit 1
  mul 0 0 0 0 0=1
end
"""


def _reprinted(text: str) -> str:
    return print_document(parse_document(text))


# ---------------------------------------------------------------------------
# Tokens
# ---------------------------------------------------------------------------


class TestTokenizer:
    def test_quotes_and_comments(self):
        tokens = tokenize_line('basis 0 "a b" # trailing', 3, "t")
        assert [t.text for t in tokens] == ["basis", "0", "a b"]
        assert (tokens[2].line, tokens[2].column) == (3, 9)

    def test_unterminated_quote(self):
        with pytest.raises(FixtureParseError) as info:
            tokenize_line('basis 0 "a b', 5, "t")
        assert (info.value.line, info.value.column) == (5, 9)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class TestParse:
    def test_corpus_plane(self, corpus_dir):
        doc = load_documents([corpus_dir / "qplane.alg"])
        A = doc.pick("algebra")
        assert A.dims == {0: 1, 1: 2, 2: 3}
        assert same_structure(A, cached_plane("q", 2)), structure_differences(A, cached_plane("q", 2))

    def test_later_files_refer_to_earlier_names(self, corpus_dir):
        doc = load_documents([corpus_dir / "qplane.alg", corpus_dir / "qplane.twist"])
        tau = doc.pick("twist", "tau")
        assert tau.carrier is doc.algebras["A"]
        assert tau.sigma is doc.maps["sigma"]
        assert verify_twisting_system(tau.carrier, tau).ok

    def test_field_override(self, corpus_dir):
        doc = load_documents([corpus_dir / "qplane.alg"], field=FieldSpec.parse("fp:5"))
        assert doc.field.label() == "fp:5"
        assert doc.pick("algebra").field.characteristic == 5

    def test_pick_needs_a_name_when_ambiguous(self):
        doc = parse_document(POINT + POINT.replace(HEAD, "").replace("algebra k", "algebra j"))
        with pytest.raises(UnknownElement):
            doc.pick("algebra")
        assert doc.pick("algebra", "j").name == "j"

    def test_twist_from_blocks(self):
        text = POINT + """
twist t
  algebra k
  family 0..0
  block 0 0 1 1 1
end
"""
        tau = parse_document(text).pick("twist")
        assert tau.block_count() == 1
        assert verify_twisting_system(tau.carrier, tau).ok


class TestParseErrors:
    def _error(self, text: str) -> FixtureParseError:
        with pytest.raises(FixtureParseError) as info:
            parse_document(text, "doc.fix")
        return info.value

    def test_wrong_header(self):
        err = self._error("format zalg-fixture 2\nfield q\n")
        assert (err.line, err.column) == (1, 1)
        assert str(err).startswith("doc.fix:1:1:")

    def test_empty_document(self):
        assert self._error("# nothing here\n").line == 1

    def test_unknown_section(self):
        err = self._error(HEAD + "algebre A\nend\n")
        assert (err.line, err.column) == (4, 1)
        assert "section keyword" in str(err)

    def test_missing_end(self):
        err = self._error(HEAD + "algebra k\n  window 0..0\n")
        assert "has no 'end'" in str(err)

    def test_bad_coefficient(self):
        err = self._error(POINT.replace("0=1\n", "0=1/0\n"))
        assert (err.line, err.column) == (8, 17)
        assert "bad scalar" in str(err)

    def test_index_out_of_range(self):
        err = self._error(POINT.replace("0=1\n", "3=1\n"))
        assert err.line == 8
        assert "out of range" in str(err)

    def test_undefined_reference(self):
        err = self._error(POINT + "\ntwist t\n  algebra Z\n  family 0..0\nend\n")
        assert (err.line, err.column) == (12, 11)
        assert "no algebra named 'Z'" in str(err)

    def test_duplicate_name(self):
        err = self._error(POINT + POINT.replace(HEAD, "\n"))
        assert "defined twice" in str(err)

    def test_unit_of_the_wrong_length(self):
        err = self._error(POINT.replace("unit 1", "unit 1 1"))
        assert (err.line, err.column) == (7, 3)
        assert "expects 1 argument" in str(err)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


class TestPrint:
    def test_printing_is_canonical(self, corpus_dir):
        text = (corpus_dir / "qplane.alg").read_text(encoding="utf-8")
        once = _reprinted(text)
        assert _reprinted(once) == once
        assert once.startswith("format zalg-fixture 1\nfield q\ngroup integers\n")

    def test_expanded_g_algebra_reads_back(self, plane_bar):
        doc = document_of(plane_bar.field, plane_bar.group, g_algebras={"A.bar": plane_bar})
        expanded = print_document(doc, expand=True)
        back = parse_document(expanded).g_algebras["A.bar"]
        assert back.origin is None
        assert back.dims == plane_bar.dims
        assert validate_g_algebra(back).ok

    def test_associated_g_algebra_is_written_as_a_reference(self, plane_bar):
        doc = document_of(plane_bar.field, plane_bar.group, g_algebras={"A.bar": plane_bar})
        text = print_document(doc)
        assert "  associated A right\n" in text
        assert "\nalgebra A\n" in text

    def test_bundle_reads_back(self, q_plane_bundle):
        text = print_document(bundle_document(q_plane_bundle))
        doc = parse_document(text)
        assert same_structure(doc.algebras["A^tau"], q_plane_bundle.algebras["A^tau"])
        T = doc.principal_maps["T"]
        assert verify_principal_map(T.carrier, T).ok
        assert print_document(doc) == text

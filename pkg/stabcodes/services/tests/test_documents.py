import pytest

from stabcodes.exceptions import DocumentError
from stabcodes.services.corpus import corpus_names, load_document, read_source
from stabcodes.services.documents import (
    MajoranaData,
    build_presentation,
    build_section,
    parse_document,
    print_document,
)
from stabcodes.services.witt import FiniteQuadraticForm

SMALL = """\
# metadata first
title = small   example

[presentation p]
dimension = 1
matrix = [[2, 1 + x1],    # first row
          [0, 2]]
"""


def test_parse_sections_and_metadata():
    doc = parse_document(SMALL)
    assert doc.data()["metadata"] == {"title": "small example"}
    assert doc.names() == ["p"]
    section = doc.section("p", "presentation")
    assert section.require("matrix").value.plain() == [["2", "1 + x1"], ["0", "2"]]
    assert build_presentation(doc).k0 == 4


def test_printed_document_parses_to_the_same_data():
    doc = parse_document(SMALL)
    text = print_document(doc)
    assert "# " not in text
    assert "matrix = [[2, 1 + x1], [0, 2]]" in text
    assert parse_document(text).data() == doc.data()


@pytest.mark.parametrize("text,line,column", [
    ("", 1, 1),
    ("[widget w]\n", 1, 2),
    ("[presentation p]\nmatrix = [[1, 2]\n", 2, 10),
    ("[presentation p]\n[presentation p]\n", 2, 1),
    ("[presentation p]\njust words\n", 2, 1),
    ("[presentation p]\ndimension = 1\ndimension = 2\n", 3, 1),
])
def test_syntax_errors_carry_positions(text, line, column):
    with pytest.raises(DocumentError) as info:
        parse_document(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_polynomial_errors_point_into_the_document():
    doc = parse_document("[presentation p]\ndimension = 1\nmatrix = [[1 + x2]]\n")
    with pytest.raises(DocumentError) as info:
        build_presentation(doc)
    assert (info.value.line, info.value.column) == (3, 16)


def test_missing_keys_and_wrong_kinds():
    doc = parse_document("[presentation p]\nmatrix = [[2]]\n")
    with pytest.raises(DocumentError, match="missing 'dimension'"):
        build_presentation(doc)
    with pytest.raises(DocumentError, match="expected a form"):
        doc.section("p", "form")
    with pytest.raises(DocumentError):
        doc.section("q")


def test_builders_dispatch_on_kind():
    _, witt_doc = load_document("witt-corpus")
    assert isinstance(build_section(witt_doc, "z3"), FiniteQuadraticForm)
    _, majorana_doc = load_document("majorana-pairs")
    pairs = build_section(majorana_doc, "pairs")
    assert isinstance(pairs, MajoranaData)
    assert pairs.modes == 2
    assert pairs.generators == [(1, 1, 0, 0), (0, 0, 1, 1)]


def test_bad_majorana_generator():
    doc = parse_document("[majorana m]\nmodes = 1\ngenerators = [[1, 2]]\n")
    with pytest.raises(DocumentError, match="2 bits"):
        build_section(doc, "m")


def test_corpus_resolution(tmp_path):
    assert {"toric", "z2-chain", "witt-corpus", "majorana-pairs"} <= set(corpus_names())
    label, text = read_source("toric")
    assert label == "toric" and "[formation toric]" in text
    label, _ = read_source("somewhere/else/toric.code")
    assert label == "toric"

    path = tmp_path / "mine.code"
    path.write_text("[presentation p]\ndimension = 0\nmatrix = [[5]]\n", encoding="utf-8")
    label, doc = load_document(str(path))
    assert label == str(path)
    assert build_presentation(doc).k0 == 5

    with pytest.raises(DocumentError, match="No corpus document"):
        read_source("no-such-code")

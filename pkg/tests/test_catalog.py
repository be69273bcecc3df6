import json

import pytest

from codiff.catalog import (
    CATALOG_SIZE,
    data_path,
    emit_entries,
    entries,
    errata,
    expected_row,
    get,
    load_file,
    lookup,
    parse_entries,
    parse_expression,
)
from codiff.errors import MalformedInput
from codiff.graded import IndexRangeError, InhomogeneousError, is_codifferential


def test_d1_terms():
    d = get(1).d
    assert len(d) == 5
    assert sorted(int(c.re) for c in d.terms.values()) == [-1, -1, 1, 1, 1]


def test_single_term_entries():
    assert get(25).d == parse_expression("+3:33")
    assert get(28).d == parse_expression("+2:33")


def test_expected_rows():
    assert expected_row(1) == (2, 0, 0, 0, 0)
    assert expected_row(24) == (3, 4, 6, 12, 24)
    assert expected_row(28) == (3, 5, 9, 17, 33)


def test_emit_parse_round_trip():
    items = entries()
    back = parse_entries(emit_entries(items))
    assert [e.to_json() for e in back] == [e.to_json() for e in items]


def test_target_out_of_range():
    with pytest.raises(IndexRangeError):
        parse_expression("+4:11")
    obj = get(2).d.to_json()
    obj["terms"][0]["target"] = 4
    with pytest.raises((IndexRangeError, MalformedInput)):
        parse_entries(json.dumps({"entries": [dict(get(2).to_json(), codifferential=obj)]}))


@pytest.mark.parametrize("k", range(1, CATALOG_SIZE + 1))
def test_shipped_files_match_builtin(k):
    assert load_file(str(data_path("catalog") / f"d{k:02d}.json")) == get(k).d


def test_shipped_catalog_index():
    shipped = parse_entries(data_path("catalog.json").read_text())
    assert [e.d for e in shipped] == [e.d for e in entries()]


def test_all_entries_are_codifferentials():
    assert all(is_codifferential(e.d) for e in entries())


def test_opposite_symmetry():
    for e in entries():
        if e.opposite is not None:
            assert get(e.opposite).opposite == e.index


def test_lookup_forms():
    assert lookup("d7") is lookup("7") is get(7)
    with pytest.raises(KeyError):
        lookup("d29")


@pytest.mark.parametrize("k", [14, 15])
def test_heading_variant_is_rejected(k):
    # the variant with psi_3^31 mixes parities; the recorded erratum says so
    variant = errata_item(f"heading:d{k}")["reference"]
    expr = " ".join(("+" if not t.startswith("-") else "-") + t.lstrip("+-").replace("psi_", "").replace("^", ":")
                    for t in variant.replace(" - ", " + -").split(" + "))
    with pytest.raises(InhomogeneousError):
        parse_expression(expr)


def errata_item(key):
    return next(it for it in errata()["items"] if it["key"] == key)


def test_errata_document_shape():
    doc = errata()
    assert doc["version"] == 1
    keys = [it["key"] for it in doc["items"]]
    assert len(keys) == len(set(keys))
    for it in doc["items"]:
        assert set(it) == {"key", "kind", "entry", "reference", "computed", "note", "whitelisted"}


def test_malformed_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(MalformedInput):
        load_file(str(p))

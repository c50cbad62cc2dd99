import json
from pathlib import Path

import pytest

from pseudohoops import builtin, dumps, load, loads
from pseudohoops.algebra import tables_equal
from pseudohoops.checks import standard_corpus
from pseudohoops.errors import AlgebraSyntaxError, AxiomViolation
from pseudohoops.fileformat import parse, serialize, to_document

ROOT = Path(__file__).resolve().parent.parent


@pytest.mark.parametrize("A", standard_corpus(), ids=lambda A: A.name)
def test_round_trip(A):
    B = parse(serialize(A))
    assert tables_equal(A, B) and A.labels == B.labels and A.name == B.name
    assert serialize(B) == serialize(A)


def test_squig_defaults_to_arrow():
    doc = to_document(builtin("hoop5-godel"))
    assert "squig" not in doc
    A = loads(json.dumps(doc))
    assert A.squig == A.to


def test_explicit_squig_kept():
    doc = to_document(builtin("hoop5-godel"))
    doc["squig"] = doc["to"]
    assert loads(json.dumps(doc)).squig == builtin("hoop5-godel").to


def _doc():
    return to_document(builtin("hoop5-godel"))


def test_duplicate_label():
    doc = _doc()
    doc["elements"][1] = "0"
    with pytest.raises(AlgebraSyntaxError) as exc:
        loads(json.dumps(doc))
    assert exc.value.path == "elements[1]"


def test_syntax_error_position():
    with pytest.raises(AlgebraSyntaxError) as exc:
        loads('{\n  "name": "x",\n  "elements": [,]\n}')
    assert exc.value.line == 3


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(extra=1),
        lambda d: d.pop("odot"),
        lambda d: d["elements"].__setitem__(2, "b c"),
        lambda d: d.update(name=3),
    ],
)
def test_rejected_documents(mutate):
    doc = _doc()
    mutate(doc)
    with pytest.raises(AlgebraSyntaxError):
        loads(json.dumps(doc))


def test_duplicate_key():
    text = dumps(builtin("hoop5-godel")).replace('"name": "hoop5-godel"', '"name": "x", "name": "y"')
    with pytest.raises(AlgebraSyntaxError):
        loads(text)


def test_axiom_errors_pass_through():
    doc = _doc()
    doc["to"][1][1] = "b"
    with pytest.raises(AxiomViolation):
        loads(json.dumps(doc))


@pytest.mark.parametrize("name", ["hoop5-godel", "hoop5-wajsberg"])
def test_corpus_files_match_builtins(name):
    A = load(ROOT / "corpus" / f"{name}.json")
    assert tables_equal(A, builtin(name)) and A.labels == builtin(name).labels


def test_dumps_is_canonical(godel):
    text = dumps(godel)
    assert text.endswith("}\n")
    assert list(json.loads(text)) == ["name", "elements", "one", "zero", "odot", "to"]

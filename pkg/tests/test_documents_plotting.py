import pytest

from heyting import documents
from heyting.catalog import lookup, prohibited, zn
from heyting.errors import InvalidInput
from heyting.kernel import is_isomorphic
from heyting.plotting import draw_hasse, layout


def test_document_fields_are_exact():
    doc = documents.to_document(zn(3))
    assert sorted(doc) == ["covers", "name", "size"]
    assert doc == {"name": "Z3", "size": 3, "covers": [[0, 1], [1, 2]]}


@pytest.mark.parametrize(
    "text",
    [
        "[]",
        "not json",
        '{"name": "x", "size": 2}',
        '{"name": 3, "size": 2, "covers": [[0,1]]}',
        '{"name": "x", "size": "2", "covers": [[0,1]]}',
        '{"name": "x", "size": 2, "covers": [[0,1,2]]}',
        '{"name": "x", "size": 2, "covers": [[0,1]], "extra": 1}',
    ],
)
def test_malformed_documents(text):
    with pytest.raises(InvalidInput):
        documents.loads(text)


def test_loads_inverse_of_dumps():
    for alg in (prohibited(4), lookup("P2*")):
        back = documents.loads(documents.dumps(alg))
        assert is_isomorphic(back, alg) and back.covers == alg.covers


def test_layout_respects_heights():
    alg = prohibited(5)
    pos = layout(alg)
    for lo, hi in alg.covers:
        assert pos[lo][1] < pos[hi][1]
    assert len(set(pos.values())) == alg.size


def test_draw_hasse_writes_png(tmp_path):
    path = draw_hasse(zn(6), tmp_path / "z6.png", title="Z6", highlight=[1], annotations={2: "p"})
    assert path.read_bytes()[:4] == b"\x89PNG"

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nwfs import encoding as enc
from nwfs import presets
from nwfs.arrows import arrow, enumerate_squares
from nwfs.fincat import FinGraph, FinMod, FinSet, Morphism, edge_graph, hom_enumerate

from corpus import cycle, finset_arrows


@st.composite
def finset_morphisms(draw):
    a = draw(st.integers(0, 4))
    b = draw(st.integers(1 if a else 0, 4))
    data = tuple(draw(st.lists(st.integers(0, b - 1), min_size=a, max_size=a))) if b else ()
    return Morphism(FinSet(a), FinSet(b), data)


@given(finset_morphisms())
def test_morphism_round_trip(m):
    assert enc.decode_morphism(enc.encode_morphism(m)) == m
    assert enc.decode_morphism(json.loads(enc.dumps(enc.encode_morphism(m)))) == m


@pytest.mark.parametrize("obj", [FinSet(0), FinSet(3), edge_graph(), cycle(2), FinMod(5, 2)])
def test_object_round_trip(obj):
    assert enc.decode_object(enc.encode_object(obj)) == obj


def test_int_is_a_finset():
    assert enc.decode_object(4) == FinSet(4)


def test_graph_and_module_morphisms():
    for m in hom_enumerate(edge_graph(), cycle(2)) + hom_enumerate(FinMod(2, 1), FinMod(2, 2)):
        assert enc.decode_morphism(enc.encode_morphism(m)) == m


def test_square_round_trip():
    for f in finset_arrows(1, 2):
        for g in finset_arrows(1, 2):
            for sq in enumerate_squares(f, g):
                assert enc.decode_square(enc.encode_square(sq)) == sq


def test_generators_round_trip():
    for J in (presets.splitepi(), presets.graph(), presets.modfree(3), presets.empty()):
        back = enc.decode_generators(enc.encode_generators(J))
        assert list(back.names) == list(J.names) and list(back) == list(J)


@pytest.mark.parametrize(
    "bad",
    [
        {"dom": {"backend": "finset", "size": 2}, "cod": {"backend": "finset", "size": 1}, "map": [0, 3]},
        {"dom": {"backend": "finset", "size": 2}, "cod": {"backend": "finset", "size": 1}, "map": [0]},
        {"dom": {"backend": "nope"}, "cod": 1, "map": []},
        {"cod": 1, "map": []},
    ],
)
def test_bad_morphisms(bad):
    with pytest.raises(ValueError):
        enc.decode_morphism(bad)


def test_bad_structure_label():
    f = enc.encode_arrow(arrow(FinSet(0), FinSet(1), ()))
    with pytest.raises(ValueError):
        enc.decode_structure({"arrow": f, "stage": "twostep", "s": [0]}, "s")


def test_dumps_is_stable_and_flat():
    d = {"b": [1, 2, 3], "a": {"x": [[0, 1], [1, 0]], "t": [True, False]}}
    text = enc.dumps(d)
    assert text == enc.dumps(json.loads(text))
    assert "[1, 2, 3]" in text and "[true, false]" in text
    assert json.loads(text) == d


def test_graph_object_fields():
    g = FinGraph(2, 1, (0,), (1,))
    assert enc.encode_object(g) == {"backend": "fingraph", "vertices": 2, "arrows": 1, "src": [0], "tgt": [1]}

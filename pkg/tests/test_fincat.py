from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nwfs.errors import BackendMismatch, CapExceeded, DomainMismatch, NotComposable, NotCompatible, NotParallel
from nwfs.fincat import (
    FinGraph,
    FinMod,
    FinSet,
    Morphism,
    cardinality,
    chain_colimit,
    coequalizer,
    compose,
    coproduct,
    edge_graph,
    enumeration_cap,
    hom_enumerate,
    identity,
    is_iso,
    mod_elements,
    point_graph,
    pushout,
)

from corpus import fs


def finset_maps(max_size=3):
    @st.composite
    def build(draw):
        a = draw(st.integers(0, max_size))
        b = draw(st.integers(1 if a else 0, max_size))
        data = draw(st.lists(st.integers(0, max(b - 1, 0)), min_size=a, max_size=a))
        return fs(a, b, data)

    return build()


# ------------------------------------------------------------- compose


def test_compose_identity():
    f = fs(2, 3, (0, 2))
    assert compose(identity(f.cod), f) == f
    assert compose(f, identity(f.dom)) == f


def test_compose_swap():
    assert compose(fs(2, 2, (0, 1)), fs(2, 2, (1, 0))).data == (1, 0)


def test_compose_mod_is_matrix_product():
    M = FinMod(5, 2)
    a = Morphism(M, M, ((1, 2), (3, 4)))
    b = Morphism(M, M, ((0, 1), (1, 1)))
    ab = compose(a, b)
    for v in mod_elements(M):
        assert ab(v) == a(b(v))


def test_compose_domain_mismatch():
    with pytest.raises(DomainMismatch):
        compose(fs(2, 2, (0, 1)), fs(1, 3, (0,)))


@given(finset_maps(), st.data())
def test_compose_associative(f, data):
    b, c = f.cod.size, data.draw(st.integers(1, 3))
    g = fs(b, c, data.draw(st.lists(st.integers(0, c - 1), min_size=b, max_size=b)))
    h = fs(c, 2, data.draw(st.lists(st.integers(0, 1), min_size=c, max_size=c)))
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


# --------------------------------------------------------- hom_enumerate


def test_hom_from_empty_is_single():
    assert len(hom_enumerate(FinSet(0), FinSet(3))) == 1


def test_hom_from_point_counts_elements():
    assert len(hom_enumerate(FinSet(1), FinSet(3))) == 3


def test_hom_from_vertex_graph_is_vertex_count():
    G = FinGraph(3, 2, (0, 1), (1, 2))
    maps = hom_enumerate(point_graph(), G)
    assert sorted(m.data[0] for m in maps) == [(0,), (1,), (2,)]


def test_hom_graph_brute_force():
    G = FinGraph(2, 3, (0, 0, 1), (1, 0, 1))
    H = FinGraph(2, 2, (0, 1), (1, 0))
    expected = 0
    for vm in product(range(H.vertices), repeat=G.vertices):
        for am in product(range(H.arrows), repeat=G.arrows):
            if all(H.src[am[a]] == vm[G.src[a]] and H.tgt[am[a]] == vm[G.tgt[a]] for a in range(G.arrows)):
                expected += 1
    assert len(hom_enumerate(G, H)) == expected


@pytest.mark.parametrize("a,b", [(0, 0), (0, 2), (2, 0), (2, 3), (3, 3)])
def test_hom_cardinality(a, b):
    homs = hom_enumerate(FinSet(a), FinSet(b))
    assert len(homs) == b**a
    assert len(set(homs)) == len(homs)


def test_hom_cap():
    with enumeration_cap(10):
        with pytest.raises(CapExceeded) as exc:
            hom_enumerate(FinSet(3), FinSet(3))
    assert exc.value.cardinality == 27


def test_hom_mod_count():
    assert len(hom_enumerate(FinMod(3, 1), FinMod(3, 2))) == 9


def test_env_cap(monkeypatch):
    monkeypatch.setenv("NWFS_CAP", "5")
    with pytest.raises(CapExceeded):
        hom_enumerate(FinSet(2), FinSet(3))


# --------------------------------------------------------------- colimits


def _unique_induced(res, cocone):
    """Brute-force: exactly one map out of the apex commutes with every leg."""
    target = cocone[0].cod
    hits = [m for m in hom_enumerate(res.apex, target) if all(compose(m, l) == c for l, c in zip(res.legs, cocone))]
    return hits


def test_coproduct_empty():
    assert coproduct([]).apex == FinSet(0)


def test_coproduct_universal():
    res = coproduct([FinSet(2), FinSet(3)])
    assert res.apex == FinSet(5)
    assert set(res.legs[0].data).isdisjoint(res.legs[1].data)
    T = FinSet(2)
    for a in hom_enumerate(FinSet(2), T):
        for b in hom_enumerate(FinSet(3), T):
            hits = _unique_induced(res, [a, b])
            assert hits == [res.induce([a, b])]


def test_coproduct_mod_biproduct():
    res = coproduct([FinMod(3, 1), FinMod(3, 1)])
    assert res.apex == FinMod(3, 2)
    assert {res.legs[0]((1,)), res.legs[1]((1,))} == {(1, 0), (0, 1)}


def test_coproduct_backend_mismatch():
    with pytest.raises(BackendMismatch):
        coproduct([FinSet(1), FinMod(2, 1)])


def test_pushout_of_identity():
    g = fs(2, 3, (0, 0))
    res = pushout(identity(FinSet(2)), g)
    assert res.apex == FinSet(3)
    assert is_iso(res.legs[1]) is not None


def test_pushout_point_glue():
    res = pushout(fs(0, 1, ()), fs(0, 2, ()))
    assert res.apex == FinSet(3)


def test_pushout_glue_edge_on_vertex():
    G = FinGraph(2, 1, (0,), (1,))
    v = Morphism(point_graph(), G, ((1,), ()))
    e = Morphism(point_graph(), edge_graph(), ((0,), ()))
    res = pushout(v, e)
    assert (res.apex.vertices, res.apex.arrows) == (G.vertices + 1, G.arrows + 1)


def test_pushout_domain_mismatch():
    with pytest.raises(DomainMismatch):
        pushout(fs(1, 1, (0,)), fs(2, 1, (0, 0)))


def test_pushout_universal_exhaustive():
    """All spans of finsets of size <= 2, all cocones into a 2-element set."""
    for a in range(3):
        for b, c in product(range(3), repeat=2):
            for f in hom_enumerate(FinSet(a), FinSet(b)):
                for g in hom_enumerate(FinSet(a), FinSet(c)):
                    res = pushout(f, g)
                    assert compose(res.legs[0], f) == compose(res.legs[1], g)
                    T = FinSet(2)
                    for x in hom_enumerate(FinSet(b), T):
                        for y in hom_enumerate(FinSet(c), T):
                            hits = _unique_induced(res, [x, y])
                            if compose(x, f) == compose(y, g):
                                assert hits == [res.induce([x, y])]
                            else:
                                assert hits == []
                                with pytest.raises(NotCompatible):
                                    res.induce([x, y])


def test_pushout_of_iso_is_iso():
    for a in range(4):
        for f in hom_enumerate(FinSet(a), FinSet(a)):
            if is_iso(f) is None:
                continue
            for c in range(4):
                for g in hom_enumerate(FinSet(a), FinSet(c)):
                    assert is_iso(pushout(f, g).legs[1]) is not None


def test_coequalizer_equal_pair():
    u = fs(2, 3, (0, 2))
    res = coequalizer(u, u)
    assert res.apex == FinSet(3)
    assert res.legs[0] == identity(FinSet(3))


def test_coequalizer_two_points():
    res = coequalizer(fs(1, 2, (0,)), fs(1, 2, (1,)))
    assert res.apex == FinSet(1)


def test_coequalizer_graph_parallel_arrows():
    G = FinGraph(2, 2, (0, 0), (1, 1))
    u = Morphism(edge_graph(), G, ((0, 1), (0,)))
    v = Morphism(edge_graph(), G, ((0, 1), (1,)))
    res = coequalizer(u, v)
    assert (res.apex.vertices, res.apex.arrows) == (2, 1)


def test_coequalizer_mod_quotient():
    # quotient of (Z/3)^2 by the diagonal
    M, N = FinMod(3, 1), FinMod(3, 2)
    u = Morphism(M, N, ((1,), (0,)))
    v = Morphism(M, N, ((0,), (1,)))
    res = coequalizer(u, v)
    assert res.apex == FinMod(3, 1)
    assert compose(res.legs[0], u) == compose(res.legs[0], v)


def test_coequalizer_not_parallel():
    with pytest.raises(NotParallel):
        coequalizer(fs(1, 2, (0,)), fs(1, 3, (0,)))


@given(finset_maps(), st.data())
def test_coequalizer_projection_equalizes(u, data):
    b = u.cod.size
    v = fs(u.dom.size, b, data.draw(st.lists(st.integers(0, max(b - 1, 0)), min_size=u.dom.size, max_size=u.dom.size)))
    q = coequalizer(u, v).legs[0]
    assert compose(q, u) == compose(q, v)


@given(st.integers(0, 2), st.data())
def test_mod_coequalizer_universal(r, data):
    q = 2
    M, N = FinMod(q, r), FinMod(q, 2)
    entries = st.lists(st.lists(st.integers(0, 1), min_size=r, max_size=r), min_size=2, max_size=2)
    u = Morphism(M, N, tuple(map(tuple, data.draw(entries))))
    v = Morphism(M, N, tuple(map(tuple, data.draw(entries))))
    res = coequalizer(u, v)
    T = FinMod(q, 1)
    for w in hom_enumerate(N, T):
        hits = _unique_induced(res, [w])
        assert len(hits) == (1 if compose(w, u) == compose(w, v) else 0)


def test_chain_singleton():
    res = chain_colimit([], first=FinSet(2))
    assert res.apex == FinSet(2) and res.legs == (identity(FinSet(2)),)


def test_chain_of_isos():
    s = fs(2, 2, (1, 0))
    res = chain_colimit([s, s])
    assert is_iso(res.legs[0]) is not None


def test_chain_injections():
    res = chain_colimit([fs(1, 2, (0,)), fs(2, 3, (0, 1))])
    assert res.apex == FinSet(3)
    assert res.legs[0].data == (0,)


def test_chain_not_composable():
    with pytest.raises(NotComposable):
        chain_colimit([fs(1, 2, (0,)), fs(3, 3, (0, 1, 2))])


def test_is_iso():
    assert is_iso(identity(FinSet(3))) == identity(FinSet(3))
    assert is_iso(fs(2, 2, (1, 0))).data == (1, 0)
    assert is_iso(fs(2, 1, (0, 0))) is None
    assert is_iso(Morphism(FinMod(5, 1), FinMod(5, 1), ((2,),))).data == ((3,),)


def test_invalid_morphisms():
    with pytest.raises(ValueError):
        fs(2, 2, (0, 2))
    with pytest.raises(ValueError):
        Morphism(edge_graph(), point_graph(), ((0, 0), (0,)))


def test_mod_elements_cardinality():
    assert len(mod_elements(FinMod(3, 2))) == 9 == cardinality(FinMod(3, 2))

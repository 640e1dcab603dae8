import pytest

from nwfs import presets
from nwfs.arrows import IdentityStage, arrow, check_stage, enumerate_squares
from nwfs.errors import MissingComult, NotConverged
from nwfs.fincat import FinMod, FinSet, compose, identity, is_iso
from nwfs.freeseq import (
    SequenceState,
    TensorStage,
    coequalized_stage_sizes,
    converged_nwfs,
    naive_stage_sizes,
    successor_stage,
    tensor_stage,
)
from nwfs.onestep import onestep_stage

from corpus import finset_arrows

SMALL = finset_arrows(2, 2)


def _same_stage_at(a, b, arrows, squares=()):
    for f in arrows:
        assert a.factor(f) == b.factor(f)
        assert a.comult(f) == b.comult(f)
    for sq in squares:
        assert a.on_square(sq) == b.on_square(sq)


def _squares(arrows):
    return [s for f in arrows for g in arrows for s in enumerate_squares(f, g)]


def test_tensor_units():
    T = onestep_stage(presets.cosection())
    sq = _squares(SMALL[:6])
    _same_stage_at(TensorStage(IdentityStage(), T), T, SMALL, sq)
    _same_stage_at(TensorStage(T, IdentityStage()), T, SMALL, sq)


def test_tensor_onestep_twice_splitepi():
    T = onestep_stage(presets.splitepi())
    for g in finset_arrows(3, 3):
        lam, E, rho, sigma = tensor_stage(T, T, g)
        assert E == FinSet(g.dom.size + 2 * g.cod.size)


def test_tensor_associative():
    T = onestep_stage(presets.cosection())
    left = TensorStage(TensorStage(T, T), T)
    right = TensorStage(T, TensorStage(T, T))
    arrows = [arrow(FinSet(1), FinSet(1), (0,)), arrow(FinSet(1), FinSet(2), (1,)), arrow(FinSet(0), FinSet(1), ())]
    _same_stage_at(left, right, arrows, _squares(arrows))


def test_tensor_comonad_laws():
    T = onestep_stage(presets.cosection())
    assert check_stage(TensorStage(T, T), finset_arrows(1, 2)).ok


def test_tensor_needs_comult():
    T = onestep_stage(presets.splitepi())
    g = arrow(FinSet(1), FinSet(1), (0,))

    class Bare(IdentityStage):
        has_comult = False

    with pytest.raises(MissingComult):
        tensor_stage(T, Bare(), g)


def test_splitepi_converges_at_one(splitepi_state, corpus3):
    assert splitepi_state.converged_at(corpus3) == 1
    for g in corpus3:
        assert is_iso(splitepi_state.step(1, g)) is not None
        assert splitepi_state.record[g] <= 1


def test_cosection_stage_two_size():
    st = SequenceState(presets.cosection(), max_stage=3)
    g = arrow(FinSet(1), FinSet(2), (0,))
    assert coequalized_stage_sizes(st, g, 2) == [3, 7]
    assert successor_stage(st, 0).E(g) == FinSet(7)


def test_cosection_never_converges_within_cap():
    st = SequenceState(presets.cosection(), max_stage=4)
    g = arrow(FinSet(1), FinSet(2), (0,))
    assert st.converged_at([g]) is None
    assert st.record[g] is None
    sizes = [row[1] for row in st.stage_report(g, 3)]
    assert sizes == sorted(set(sizes))
    with pytest.raises(NotConverged):
        converged_nwfs(st, [g])


def test_empty_generators_converge_at_zero():
    st = SequenceState(presets.empty())
    N = converged_nwfs(st, SMALL)
    assert N.alpha == 0
    for g in SMALL:
        assert N.lam(g) == identity(g.dom)
        assert N.comult(g) == identity(g.dom)
        assert N.mult(g) == identity(g.dom)


def test_mod_converges_at_one():
    J = presets.modfree(5)
    st = SequenceState(J)
    corpus = [arrow(FinMod(5, 1), FinMod(5, 1), ((2,),)), arrow(FinMod(5, 0), FinMod(5, 1), ((),))]
    assert st.converged_at(corpus) == 1


def test_connecting_maps_compose_and_preserve_factorisations():
    st = SequenceState(presets.both(), max_stage=4)
    for g in finset_arrows(1, 2):
        for a in range(3):
            for b in range(a, 3):
                for c in range(b, 3):
                    assert st.connecting(a, c, g) == compose(st.connecting(b, c, g), st.connecting(a, b, g))
        for n in range(2):
            step = st.step(n, g)
            assert compose(step, st.stage(n).lam(g)) == st.stage(n + 1).lam(g)
            assert compose(st.stage(n + 1).rho(g), step) == st.stage(n).rho(g)
            # unit compatibility: theta after the unit of T is the connecting map
            assert compose(st.theta(n, g), st.T.lam(st.stage(n).R(g))) == step


def test_coequalized_stages_are_comonads():
    st = SequenceState(presets.cosection(), max_stage=3)
    assert check_stage(st.stage(2), finset_arrows(1, 2)).ok


def test_splitepi_pi_closed_form(splitepi_nwfs):
    g = arrow(FinSet(2), FinSet(3), (0, 2))
    # <in1, in2, in2>: (X + Y) + Y -> X + Y
    assert splitepi_nwfs.mult(g).data == (0, 1, 2, 3, 4, 2, 3, 4)


def test_splitepi_delta_square(splitepi_nwfs, corpus3):
    for g in corpus3:
        d = splitepi_nwfs.Delta(g)
        assert compose(d.tgt.mor, d.h) == compose(d.k, d.src.mor)


def test_converged_nwfs_laws(splitepi_nwfs, corpus3):
    rep = check_stage(splitepi_nwfs, corpus3)
    assert rep.ok, rep.failed()
    assert {"counit_L", "coassociativity", "unit_R", "associativity", "distributivity"} <= set(rep.laws())


def test_chi_is_identity_at_one(splitepi_nwfs):
    g = arrow(FinSet(2), FinSet(2), (0, 0))
    assert splitepi_nwfs.chi(g) == identity(splitepi_nwfs.E(g))


def test_naive_vs_coequalized_splitepi():
    g = arrow(FinSet(2), FinSet(3), (0, 2))
    assert naive_stage_sizes(presets.splitepi(), g, 4) == [5, 8, 11, 14]
    st = SequenceState(presets.splitepi())
    assert coequalized_stage_sizes(st, g, 4) == [5, 5, 5, 5]


def test_naive_empty_constant():
    g = arrow(FinSet(2), FinSet(3), (0, 2))
    assert naive_stage_sizes(presets.empty(), g, 3) == [2, 2, 2]


def test_naive_cosection_stage_two():
    g = arrow(FinSet(1), FinSet(2), (0,))
    assert naive_stage_sizes(presets.cosection(), g, 2) == [3, 9]


def test_coequalized_never_larger():
    st = SequenceState(presets.both(), max_stage=3)
    for g in finset_arrows(1, 2):
        naive = naive_stage_sizes(presets.both(), g, 3)
        coeq = coequalized_stage_sizes(st, g, 3)
        assert all(c <= n for c, n in zip(coeq, naive))
        # strict from stage 2 whenever some problem exists
        if g.dom.size and g.cod.size:
            assert coeq[1] < naive[1]

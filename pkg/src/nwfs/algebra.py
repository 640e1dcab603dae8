"""Coalgebras (L-maps), algebras (R-maps), lifting data and the closure
operations on L-maps."""

from dataclasses import dataclass, field
from functools import reduce

from .arrows import Arrow, FactorizationStage, GeneratingSet, Square, full_problem_set, id_square
from .errors import (
    DomainMismatch,
    IncompleteData,
    InternalLawError,
    NotComposable,
    NotContractible,
    NotIso,
    NwfsError,
    StageMismatch,
    StructureError,
)
from .fincat import chain_colimit, compose, compose_all, coproduct, identity, is_iso, pushout
from .freeseq import ConvergedStage, module_extension
from .onestep import OneStepStage, generator_coalgebra, problem_key


def _stage_key(stage):
    return stage.key


@dataclass(frozen=True)
class LMapStructure:
    """An arrow f: X -> Y with a coalgebra map s: Y -> Ef."""

    arrow: Arrow
    stage: FactorizationStage = field(compare=False)
    s: object
    stage_key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "stage_key", self.stage.key)


@dataclass(frozen=True)
class RMapStructure:
    """An arrow g: C -> D with an algebra map p: Eg -> C."""

    arrow: Arrow
    stage: FactorizationStage = field(compare=False)
    p: object
    stage_key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "stage_key", self.stage.key)


def _holds(thunk):
    try:
        lhs, rhs = thunk()
    except NwfsError:
        return False
    return lhs == rhs


def lmap_failures(stage, f: Arrow, s) -> list:
    """Names of the coalgebra equations that (f, s) violates."""
    E = stage
    out = []
    if not _holds(lambda: (compose(s, f.mor), E.lam(f))):
        out.append("s_after_f")
    if not _holds(lambda: (compose(E.rho(f), s), identity(f.cod))):
        out.append("rho_after_s")
    if E.has_comult and not _holds(
        lambda: (compose(E.comult(f), s), compose(E.E_sq(f, E.L(f), identity(f.dom), s), s))
    ):
        out.append("comult_compat")
    return out


def rmap_failures(stage, g: Arrow, p) -> list:
    """Names of the algebra equations that (g, p) violates."""
    E = stage
    out = []
    if not _holds(lambda: (compose(g.mor, p), E.rho(g))):
        out.append("g_after_p")
    if not _holds(lambda: (compose(p, E.lam(g)), identity(g.dom))):
        out.append("p_after_lambda")
    if E.has_mult and not _holds(
        lambda: (compose(p, E.mult(g)), compose(p, E.E_sq(E.R(g), g, p, identity(g.cod))))
    ):
        out.append("mult_compat")
    return out


def make_lmap(f: Arrow, stage, s) -> LMapStructure:
    """Validate user data and wrap it; raises StructureError on failure."""
    bad = lmap_failures(stage, f, s)
    if bad:
        raise StructureError("L-map", bad)
    return LMapStructure(f, stage, s)


def make_rmap(g: Arrow, stage, p) -> RMapStructure:
    bad = rmap_failures(stage, g, p)
    if bad:
        raise StructureError("R-map", bad)
    return RMapStructure(g, stage, p)


def _checked_lmap(f, stage, s, what):
    bad = lmap_failures(stage, f, s)
    if bad:
        raise InternalLawError(f"{what} produced a non-coalgebra: {bad}")
    return LMapStructure(f, stage, s)


def _checked_rmap(g, stage, p, what):
    bad = rmap_failures(stage, g, p)
    if bad:
        raise InternalLawError(f"{what} produced a non-algebra: {bad}")
    return RMapStructure(g, stage, p)


def is_lmap_morphism(l1: LMapStructure, l2: LMapStructure, sq: Square) -> bool:
    """Whether (h, k): (f, s) -> (g, t) satisfies t.k = E(h, k).s."""
    E = l1.stage
    return compose(l2.s, sq.k) == compose(E.on_square(sq), l1.s)


def is_rmap_morphism(r1: RMapStructure, r2: RMapStructure, sq: Square) -> bool:
    """Whether (h, k): (g, p) -> (g', p') satisfies h.p = p'.E(h, k)."""
    E = r1.stage
    return compose(sq.h, r1.p) == compose(r2.p, E.on_square(sq))


def _same_stage(*structs):
    keys = {st.stage_key for st in structs}
    if len(keys) != 1:
        raise StageMismatch("structures live over different stages")


# ---------------------------------------------------------------- lifting


def solve_lifting(l: LMapStructure, r: RMapStructure, problem: Square):
    """Canonical filler p . E(h, k) . s of a lifting problem f -> g."""
    _same_stage(l, r)
    if problem.src != l.arrow or problem.tgt != r.arrow:
        raise DomainMismatch("problem does not run from the L-map to the R-map")
    j = compose_all(r.p, l.stage.on_square(problem), l.s)
    if compose(j, l.arrow.mor) != problem.h or compose(r.arrow.mor, j) != problem.k:
        raise InternalLawError("canonical lift is not a filler")
    return j


@dataclass(frozen=True)
class RightLiftingData:
    """A chosen filler for every problem in S_g."""

    J: GeneratingSet
    arrow: Arrow
    fillers: tuple  # ((generator index, square, filler), ...) in S_g order

    def __post_init__(self):
        for j, sq, d in self.fillers:
            if compose(d, self.J[j].mor) != sq.h or compose(self.arrow.mor, d) != sq.k:
                raise StructureError("lifting data", [f"problem {problem_key(j, sq)}"])

    def as_dict(self):
        return {problem_key(j, sq): d for j, sq, d in self.fillers}

    def __call__(self, j, sq):
        return self.as_dict()[problem_key(j, sq)]


def make_lifting_data(J, g: Arrow, choose) -> RightLiftingData:
    """Lifting data from a function (j, square) -> filler, over all of S_g."""
    return RightLiftingData(J, g, tuple((j, sq, choose(j, sq)) for j, sq in full_problem_set(J, g)))


def enumerate_lifting_data(J, g: Arrow):
    """Every right lifting datum on g (exhaustive)."""
    from itertools import product

    from .arrows import lifts

    probs = full_problem_set(J, g)
    options = [lifts(sq) for _, sq in probs]
    for choice in product(*options):
        yield RightLiftingData(J, g, tuple((j, sq, d) for (j, sq), d in zip(probs, choice)))


def is_lifting_morphism(d1: RightLiftingData, d2: RightLiftingData, sq: Square) -> bool:
    """(m, n): (g, d1) -> (g', d2) preserves chosen fillers."""
    table = d2.as_dict()
    for j, x, d in d1.fillers:
        y = x.then(sq)
        if compose(sq.h, d) != table[problem_key(j, y)]:
            return False
    return True


def _generators_of(stage):
    if isinstance(stage, OneStepStage):
        return stage.J
    if isinstance(stage, ConvergedStage):
        return stage.state.J
    raise StageMismatch(f"stage {stage.name} has no generating set")


def generator_lmap(stage, j: int) -> LMapStructure:
    """The canonical structure on f_j over ``stage`` (pushed through chi)."""
    J = _generators_of(stage)
    if isinstance(stage, OneStepStage):
        return generator_coalgebra(J, j, stage)
    alpha = generator_coalgebra(J, j, stage.state.T)
    f = J[j]
    return _checked_lmap(f, stage, compose(stage.chi(f), alpha.s), "generator_lmap")


def delta_from_rmap(r: RMapStructure) -> RightLiftingData:
    J = _generators_of(r.stage)
    gens = [generator_lmap(r.stage, j) for j in range(len(J))]
    return make_lifting_data(J, r.arrow, lambda j, sq: solve_lifting(gens[j], r, sq))


def rmap_from_delta(delta: RightLiftingData, stage) -> RMapStructure:
    """R1-algebra <1, <delta(x)>> from lifting data, promoted to ``stage``."""
    J = _generators_of(stage)
    if J != delta.J:
        raise StageMismatch("lifting data for another generating set")
    g = delta.arrow
    T = stage if isinstance(stage, OneStepStage) else stage.state.T
    Kg = T.K(g)
    table = delta.as_dict()
    try:
        fills = [table[problem_key(j, sq)] for j, sq in Kg.problems]
    except KeyError:
        raise IncompleteData("lifting data misses a problem of S_g") from None
    k = T.pushout_data(g).induce([identity(g.dom), Kg.cod_sum.induce(fills, target=g.dom)])
    if isinstance(stage, OneStepStage):
        return _checked_rmap(g, stage, k, "rmap_from_delta")
    stage.require(g)
    p = module_extension(stage.state, g, stage.alpha, k)
    return _checked_rmap(g, stage, p, "rmap_from_delta")


def chi_star(r: RMapStructure) -> RMapStructure:
    """Restrict an R-algebra to an R1-algebra along chi."""
    if not isinstance(r.stage, ConvergedStage):
        raise StageMismatch("chi_star needs a converged structure")
    T = r.stage.state.T
    return _checked_rmap(r.arrow, T, compose(r.p, r.stage.chi(r.arrow)), "chi_star")


def chi_lmap(l: LMapStructure, target: ConvergedStage) -> LMapStructure:
    """Push an L1-coalgebra forward along chi."""
    if not isinstance(l.stage, OneStepStage) or l.stage.key != target.state.T.key:
        raise StageMismatch("chi_lmap needs a one-step structure for the same generators")
    return _checked_lmap(l.arrow, target, compose(target.chi(l.arrow), l.s), "chi_lmap")


# --------------------------------------------------------------- closure


def compose_lmaps(l1: LMapStructure, l2: LMapStructure) -> LMapStructure:
    """Composite structure u = pi_gf . E(E(1, g), 1) . E(s, 1) . t on g.f."""
    _same_stage(l1, l2)
    E = l1.stage
    if not E.has_mult:
        raise StageMismatch("composition needs a multiplication")
    f, g = l1.arrow, l2.arrow
    if f.cod != g.dom:
        raise NotComposable("L-maps do not compose")
    gf = Arrow(compose(g.mor, f.mor))
    g_rho = Arrow(compose(g.mor, E.rho(f)))
    one_z = identity(g.cod)
    a = E.E_sq(g, g_rho, l1.s, one_z)
    inner = E.E_sq(f, gf, identity(f.dom), g.mor)
    b = E.E_sq(g_rho, E.R(gf), inner, one_z)
    u = compose_all(E.mult(gf), b, a, l2.s)
    return _checked_lmap(gf, E, u, "compose_lmaps")


def identity_lmap(f: Arrow, stage) -> LMapStructure:
    inv = is_iso(f.mor)
    if inv is None:
        raise NotIso(f"{f!r} is not invertible")
    return _checked_lmap(f, stage, compose(stage.lam(f), inv), "identity_lmap")


def all_lmap_structures(f: Arrow, stage) -> list:
    """Every coalgebra structure on f, by exhaustive search."""
    from .arrows import lifts

    cands = lifts(Square(f, stage.R(f), stage.lam(f), identity(f.cod)))
    return [LMapStructure(f, stage, s) for s in cands if not lmap_failures(stage, f, s)]


def pushout_lmap(l: LMapStructure, h):
    """Push (f, s) out along h: A -> C; returns (square f -> g, structure on g)."""
    E, f = l.stage, l.arrow
    if h.dom != f.dom:
        raise DomainMismatch("h must start at dom f")
    po = pushout(f.mor, h)
    k, g_mor = po.legs
    g = Arrow(g_mor)
    sq = Square(f, g, h, k)
    t = po.induce([compose(E.on_square(sq), l.s), E.lam(g)])
    out = _checked_lmap(g, E, t, "pushout_lmap")
    if not is_lmap_morphism(l, out, sq):
        raise InternalLawError("pushout square is not a coalgebra morphism")
    return sq, out


def coproduct_lmaps(ls, like=None):
    """Coproduct of L-maps; returns (structure, injection squares)."""
    ls = list(ls)
    if not ls and like is None:
        raise ValueError("empty coproduct needs a stage and an object")
    if ls:
        _same_stage(*ls)
        E = ls[0].stage
        like_obj = ls[0].arrow.dom
    else:
        E, like_obj = like
    A = coproduct([l.arrow.dom for l in ls], like=like_obj)
    B = coproduct([l.arrow.cod for l in ls], like=like_obj)
    f = Arrow(A.induce([compose(B.legs[i], l.arrow.mor) for i, l in enumerate(ls)], target=B.apex))
    inj = [Square(l.arrow, f, A.legs[i], B.legs[i]) for i, l in enumerate(ls)]
    s = B.induce([compose(E.on_square(sq), l.s) for sq, l in zip(inj, ls)], target=E.E(f))
    return _checked_lmap(f, E, s, "coproduct_lmaps"), inj


@dataclass(frozen=True)
class ContractiblePairData:
    """i: f -> g, p: g -> f, j, k: g -> h, q: h -> g with structures on g, h."""

    i: Square
    p: Square
    j: Square
    k: Square
    q: Square
    s: LMapStructure
    t: LMapStructure


def _sq_eq(a: Square, b: Square):
    return a.h == b.h and a.k == b.k


def contractible_failures(d: ContractiblePairData) -> list:
    out = []
    f, g = d.i.src, d.i.tgt
    checks = [
        ("p.i = 1", lambda: _sq_eq(d.i.then(d.p), id_square(f))),
        ("q.j = 1", lambda: _sq_eq(d.j.then(d.q), id_square(g))),
        ("j.i = k.i", lambda: _sq_eq(d.i.then(d.j), d.i.then(d.k))),
        ("q.k = i.p", lambda: _sq_eq(d.k.then(d.q), d.p.then(d.i))),
        ("j coalgebra morphism", lambda: is_lmap_morphism(d.s, d.t, d.j)),
        ("k coalgebra morphism", lambda: is_lmap_morphism(d.s, d.t, d.k)),
    ]
    for name, test in checks:
        try:
            ok = test()
        except NwfsError:
            ok = False
        if not ok:
            out.append(name)
    return out


def retract_formula(i: Square, p: Square, s: LMapStructure):
    """r = E(p) . s . (codomain part of i), and the equations it fails."""
    E = s.stage
    f = i.src
    r = compose_all(E.on_square(p), s.s, i.k)
    return r, lmap_failures(E, f, r)


def retract_equalizer_lmap(d: ContractiblePairData) -> LMapStructure:
    _same_stage(d.s, d.t)
    if d.s.arrow != d.i.tgt or d.t.arrow != d.j.tgt:
        raise NotContractible("structures sit on the wrong arrows")
    bad = contractible_failures(d)
    if bad:
        raise NotContractible(bad[0])
    r, fails = retract_formula(d.i, d.p, d.s)
    if fails:
        raise InternalLawError(f"retract of a contractible pair fails {fails}")
    out = LMapStructure(d.i.src, d.s.stage, r)
    if not is_lmap_morphism(out, d.s, d.i):
        raise InternalLawError("inclusion is not a coalgebra morphism")
    return out


def canonical_retract_data(l: LMapStructure) -> ContractiblePairData:
    """f as a retract of the cofree Lf, via (1, s) and (1, rho_f)."""
    E, f, s = l.stage, l.arrow, l.s
    Lf, LLf = E.L(f), E.L(E.L(f))
    i = Square(f, Lf, identity(f.dom), s)
    cofree_g = LMapStructure(Lf, E, E.comult(f))
    cofree_h = LMapStructure(LLf, E, E.comult(Lf))
    return ContractiblePairData(
        i=i, p=E.Phi(f), j=E.Sigma(f), k=E.L_sq(i), q=E.Phi(Lf), s=cofree_g, t=cofree_h
    )


def transfinite_composite_lmaps(chain) -> LMapStructure:
    """Composite of a finite chain of L-maps (left fold)."""
    chain = list(chain)
    if not chain:
        raise NotComposable("empty chain")
    return reduce(compose_lmaps, chain)


def transfinite_right_fold(chain) -> LMapStructure:
    chain = list(chain)
    if not chain:
        raise NotComposable("empty chain")
    return reduce(lambda acc, l: compose_lmaps(l, acc), reversed(chain[:-1]), chain[-1])


def transfinite_via_colimit(chain) -> LMapStructure:
    """Structure on X0 -> colim built stage by stage along the chain colimit.

    Each partial composite X0 -> X_d maps into the final one by the square
    (1, leg_d), which must be a coalgebra morphism.
    """
    chain = list(chain)
    col = chain_colimit([l.arrow.mor for l in chain])
    partial = [chain[0]]
    for l in chain[1:]:
        partial.append(compose_lmaps(partial[-1], l))
    final = partial[-1]
    for d, part in enumerate(partial[:-1]):
        leg = col.legs[d + 1]
        sq = Square(part.arrow, final.arrow, identity(part.arrow.dom), leg)
        if not is_lmap_morphism(part, final, sq):
            raise InternalLawError("colimit leg is not a coalgebra morphism")
    return final

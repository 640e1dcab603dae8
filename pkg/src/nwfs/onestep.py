"""The one-step comonad L1 generated by a set J of arrows.

For an arrow g: C -> D, every lifting problem x = (h_x, k_x): f_x -> g is
glued in at once: E1 g is the pushout of the coproduct of the generators
along the sum of the h_x.
"""

from dataclasses import dataclass, field
from functools import lru_cache

from .arrows import Arrow, FactorizationStage, Factorization, GeneratingSet, Square, _trusted_square, full_problem_set, id_square
from .errors import InternalLawError
from .fincat import ColimitResult, compose, coproduct, pushout


def problem_key(j, sq):
    return (j, sq.h.data, sq.k.data)


@dataclass(eq=False)
class KResult:
    arrow: Arrow  # Kg = sum of f_x
    problems: list  # S_g as (generator index, square)
    injections: list  # in_x: f_x -> Kg
    phi: Square  # <(h_x, k_x)>: Kg -> g
    dom_sum: ColimitResult
    cod_sum: ColimitResult
    index: dict = field(repr=False)


def k_apply_arrow(J: GeneratingSet, g: Arrow) -> KResult:
    problems = full_problem_set(J, g)
    A = coproduct([J[j].dom for j, _ in problems], like=g.dom)
    B = coproduct([J[j].cod for j, _ in problems], like=g.dom)
    sum_f = A.induce([compose(B.legs[i], J[j].mor) for i, (j, _) in enumerate(problems)], target=B.apex)
    K = Arrow(sum_f)
    # summand inclusions commute by construction of sum_f
    inj = [_trusted_square(J[j], K, A.legs[i], B.legs[i]) for i, (j, _) in enumerate(problems)]
    phi = Square(
        K,
        g,
        A.induce([sq.h for _, sq in problems], target=g.dom),
        B.induce([sq.k for _, sq in problems], target=g.cod),
    )
    index = {problem_key(j, sq): i for i, (j, sq) in enumerate(problems)}
    return KResult(K, problems, inj, phi, A, B, index)


def _reindex(Kg: KResult, Kh: KResult, targets):
    """The square Kg -> Kh sending summand i onto summand targets[i]."""
    h = Kg.dom_sum.induce([Kh.dom_sum.legs[t] for t in targets], target=Kh.arrow.dom)
    k = Kg.cod_sum.induce([Kh.cod_sum.legs[t] for t in targets], target=Kh.arrow.cod)
    return Square(Kg.arrow, Kh.arrow, h, k)


class OneStepStage(FactorizationStage):
    name = "onestep"
    has_comult = True

    def __init__(self, J: GeneratingSet):
        super().__init__()
        self.J = J

    @property
    def key(self):
        return ("onestep", self.J)

    def K(self, g: Arrow) -> KResult:
        return self._memo("K", g, lambda a: k_apply_arrow(self.J, a))

    def K_square(self, gamma: Square) -> Square:
        Kg, Kh = self.K(gamma.src), self.K(gamma.tgt)
        targets = [Kh.index[problem_key(j, x.then(gamma))] for j, x in Kg.problems]
        return _reindex(Kg, Kh, targets)

    def pushout_data(self, g: Arrow) -> ColimitResult:
        """Pushout of <h_x> and sum f_x; legs (from dom g, from sum B_x)."""

        def build(a):
            Kg = self.K(a)
            return pushout(Kg.phi.h, Kg.arrow.mor)

        return self._memo("pushout", g, build)

    def epsilon(self, g: Arrow) -> Square:
        """The square (<h_x>, leg from sum B_x): Kg -> L1 g."""
        Kg, po = self.K(g), self.pushout_data(g)
        return Square(Kg.arrow, self.L(g), Kg.phi.h, po.legs[1])

    def psi(self, g: Arrow) -> list:
        """Positions in S_{L1 g} of the problems eps_g . in_x."""
        Kg, KL = self.K(g), self.K(self.L(g))
        eps = self.epsilon(g)
        return [KL.index[problem_key(j, Kg.injections[i].then(eps))] for i, (j, _) in enumerate(Kg.problems)]

    def _factor(self, g):
        Kg, po = self.K(g), self.pushout_data(g)
        rho = po.induce([g.mor, Kg.phi.k])
        return Factorization(po.legs[0], po.apex, rho)

    def _on_square(self, gamma):
        g, h = gamma.src, gamma.tgt
        Kgam = self.K_square(gamma)
        po_h = self.pushout_data(h)
        return self.pushout_data(g).induce([compose(self.lam(h), gamma.h), compose(po_h.legs[1], Kgam.k)])

    def _comult(self, g):
        Lg = self.L(g)
        delta = _reindex(self.K(g), self.K(Lg), self.psi(g))
        po_L = self.pushout_data(Lg)
        return self.pushout_data(g).induce([self.lam(Lg), compose(po_L.legs[1], delta.k)])


@lru_cache(maxsize=64)
def onestep_stage(J: GeneratingSet) -> OneStepStage:
    """Shared stage per generating set, so memoised work is reused."""
    return OneStepStage(J)


def k_apply_square(J: GeneratingSet, gamma: Square) -> Square:
    return onestep_stage(J).K_square(gamma)


def one_step_arrow(J: GeneratingSet, g: Arrow):
    """(lam1_g, E1 g, rho1_g) together with eps_g."""
    st = onestep_stage(J)
    return st.factor(g), st.epsilon(g)


def one_step_square(J: GeneratingSet, gamma: Square):
    return onestep_stage(J).on_square(gamma)


def one_step_comult(J: GeneratingSet, g: Arrow):
    return onestep_stage(J).comult(g)


def generator_coalgebra(J: GeneratingSet, j: int, stage=None):
    """The canonical L1-coalgebra on the generator f_j.

    Its structure map is the codomain part of eps_f . in_i, where i is the
    identity problem on f.
    """
    from .algebra import LMapStructure, lmap_failures

    st = stage or onestep_stage(J)
    f = J[j]
    Kf = st.K(f)
    i = Kf.index[problem_key(j, id_square(f))]
    s = compose(st.pushout_data(f).legs[1], Kf.cod_sum.legs[i])
    bad = lmap_failures(st, f, s)
    if bad:
        raise InternalLawError(f"generator coalgebra fails {bad}")
    return LMapStructure(f, st, s)

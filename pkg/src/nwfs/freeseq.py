"""The free module sequence on the one-step comonad and its convergence.

Stages X_0 = I, X_1 = T = L1, and X_{n} for n >= 2 is the coequalizer, inside
T (x) X_{n-1}, of the two maps out of T (x) X_{n-2}. Per arrow everything is
computed on demand; the codomain part never changes.

``theta(n, f)`` is the action T (x) X_n -> X_{n+1} at f (a coequalizer
projection for n >= 1, the identity for n = 0). ``step(n, f)`` is the
connecting map X_n -> X_{n+1}.
"""

import threading
from typing import Optional

from .arrows import Arrow, Factorization, FactorizationStage, IdentityStage
from .errors import MissingComult, NotConverged
from .fincat import coequalizer, compose, identity, is_iso, size
from .onestep import onestep_stage


class TensorStage(FactorizationStage):
    """F2 (x) F1: factor with F1, then factor its right half with F2."""

    def __init__(self, F2: FactorizationStage, F1: FactorizationStage):
        super().__init__()
        self.F2, self.F1 = F2, F1
        self.name = f"({F2.name} x {F1.name})"
        self.has_comult = F2.has_comult and F1.has_comult

    @property
    def key(self):
        return ("tensor", self.F2.key, self.F1.key)

    def _factor(self, f):
        F1, F2 = self.F1, self.F2
        R1 = F1.R(f)
        return Factorization(compose(F2.lam(R1), F1.lam(f)), F2.E(R1), F2.rho(R1))

    def _on_square(self, sq):
        return self.F2.on_square(self.F1.R_sq(sq))

    def _comult(self, f):
        F1, F2 = self.F1, self.F2
        R1 = F1.R(f)
        l2 = F2.lam(R1)
        first = F2.comult(R1)
        mid = Arrow(compose(l2, F1.rho(F1.L(f))))
        second = F2.E_sq(F2.L(R1), mid, F1.comult(f), identity(F2.E(R1)))
        inner = F1.E_sq(F1.L(f), self.L(f), identity(f.dom), l2)
        third = F2.E_sq(mid, F1.R(self.L(f)), inner, identity(F2.E(R1)))
        return compose(third, compose(second, first))


def tensor_stage(F2, F1, f):
    """(lam, E, rho, sigma) of F2 (x) F1 at f."""
    st = TensorStage(F2, F1)
    if not st.has_comult:
        raise MissingComult(f"{F2.name} and {F1.name} must both carry a comultiplication")
    lam, mid, rho = st.factor(f)
    return lam, mid, rho, st.comult(f)


class CoequalizerStage(FactorizationStage):
    has_comult = True

    def __init__(self, state: "SequenceState", n: int):
        super().__init__()
        assert n >= 2
        self.state, self.n = state, n
        self.name = f"X{n}"

    @property
    def key(self):
        return ("stage", self.state.J, self.n)

    def projection(self, f: Arrow):
        """Coequalizer of the two maps T (x) X_{n-2} -> T (x) X_{n-1} at f."""

        def build(a):
            st, n, T = self.state, self.n, self.state.T
            Ra = st.stage(n - 2).R(a)
            Rb = st.stage(n - 1).R(a)
            theta = st.theta(n - 2, a)
            u = compose(T.lam(Rb), theta)
            RTa = T.R(Ra)
            one = identity(a.cod)
            v = compose(T.E_sq(RTa, Rb, theta, one), T.E_sq(Ra, RTa, T.lam(Ra), one))
            return coequalizer(u, v)

        return self._memo("proj", f, build)

    def _B(self):
        return self.state.tensor(self.n - 1)

    def _factor(self, f):
        B = self._B()
        ce = self.projection(f)
        return Factorization(compose(ce.legs[0], B.lam(f)), ce.apex, ce.induce([B.rho(f)]))

    def _on_square(self, sq):
        B = self._B()
        q_tgt = self.projection(sq.tgt).legs[0]
        return self.projection(sq.src).induce([compose(q_tgt, B.on_square(sq))])

    def _comult(self, f):
        # induced through the projection; induce() checks well-definedness
        B = self._B()
        q = self.projection(f).legs[0]
        Lf = self.L(f)
        move = B.E_sq(B.L(f), Lf, identity(f.dom), q)
        c = compose(self.projection(Lf).legs[0], compose(move, B.comult(f)))
        return self.projection(f).induce([c])


class SequenceState:
    """Stages, actions and connecting maps for one generating set."""

    def __init__(self, J, max_stage: int = 6):
        self.J = J
        self.max_stage = max_stage
        self.T = onestep_stage(J)
        self._stages = {0: IdentityStage(), 1: self.T}
        self._tensors = {}
        self._steps = {}
        self._lock = threading.Lock()
        self.record = {}

    def stage(self, n: int) -> FactorizationStage:
        if n > self.max_stage:
            raise NotConverged(f"stage {n} is beyond the cap {self.max_stage}")
        with self._lock:
            if n not in self._stages:
                self._stages[n] = CoequalizerStage(self, n)
            return self._stages[n]

    def tensor(self, n: int) -> TensorStage:
        st = self.stage(n)
        with self._lock:
            if n not in self._tensors:
                self._tensors[n] = TensorStage(self.T, st)
            return self._tensors[n]

    def theta(self, n: int, f: Arrow):
        """Action T (x) X_n -> X_{n+1} at f."""
        if n == 0:
            return identity(self.T.E(f))
        return self.stage(n + 1).projection(f).legs[0]

    def step(self, n: int, f: Arrow):
        """Connecting map X_n -> X_{n+1} at f."""
        key = (n, f)
        hit = self._steps.get(key)
        if hit is None:
            hit = compose(self.theta(n, f), self.T.lam(self.stage(n).R(f)))
            self._steps[key] = hit
        return hit

    def connecting(self, a: int, b: int, f: Arrow):
        """Connecting map X_a -> X_b at f for a <= b."""
        out = identity(self.stage(a).E(f))
        for n in range(a, b):
            out = compose(self.step(n, f), out)
        return out

    def converged_at(self, corpus) -> Optional[int]:
        """Smallest stage whose next connecting map is invertible on the corpus."""
        corpus = list(corpus)
        pending = list(corpus)
        for n in range(self.max_stage):
            still = []
            for f in pending:
                if is_iso(self.step(n, f)) is None:
                    still.append(f)
                else:
                    self.record.setdefault(f, n)
            pending = still
            if all(is_iso(self.step(n, f)) is not None for f in corpus):
                return n
        for f in pending:
            self.record[f] = None
        return None

    def stage_report(self, f: Arrow, upto: Optional[int] = None):
        """[(stage, E-size, next connecting map invertible)] for stages 0..upto."""
        upto = self.max_stage - 1 if upto is None else upto
        return [(n, size(self.stage(n).E(f)), is_iso(self.step(n, f)) is not None) for n in range(upto + 1)]


def successor_stage(state: SequenceState, n: int) -> CoequalizerStage:
    """The stage X_{n+2} built from X_n and X_{n+1}."""
    return state.stage(n + 2)


def module_extension(state: SequenceState, g: Arrow, n: int, k):
    """Extend an R1-algebra k: E1 g -> dom g up the sequence to stage n.

    q_0 = 1, q_1 = k and q_{b+1} is induced through the coequalizer by
    k . E1(q_b, 1). The result is a map E^n g -> dom g.
    """
    T = state.T
    q = identity(g.dom)
    for b in range(n):
        if b == 0:
            q = k
            continue
        e = T.E_sq(state.stage(b).R(g), g, q, identity(g.cod))
        q = state.stage(b + 1).projection(g).induce([compose(k, e)])
    return q


class ConvergedStage(FactorizationStage):
    """The n.w.f.s. read off a converged stage."""

    name = "converged"
    has_comult = True
    has_mult = True

    def __init__(self, state: SequenceState, alpha: int):
        super().__init__()
        self.state, self.alpha = state, alpha
        self.base = state.stage(alpha)

    @property
    def key(self):
        return ("converged", self.state.J)

    def require(self, f: Arrow):
        def check(a):
            inv = is_iso(self.state.step(self.alpha, a))
            if inv is None:
                raise NotConverged(f"stage {self.alpha} is not converged at {a!r}")
            return inv

        return self._memo("inv", f, check)

    def _factor(self, f):
        self.require(f)
        return self.base.factor(f)

    def _on_square(self, sq):
        self.require(sq.src)
        self.require(sq.tgt)
        return self.base.on_square(sq)

    def _comult(self, f):
        self.require(self.L(f))
        return self.base.comult(f)

    def action(self, f: Arrow):
        """One-step action E1(Rf) -> Ef: inverse connecting map after theta."""
        return compose(self.require(f), self.state.theta(self.alpha, f))

    def _mult(self, f):
        Rf = self.R(f)
        self.require(Rf)
        return module_extension(self.state, Rf, self.alpha, self.action(f))

    def chi(self, f: Arrow):
        """Comparison map E1 f -> Ef from the one-step stage."""
        if self.alpha == 0:
            return self.require(f)
        return self.state.connecting(1, self.alpha, f)


def converged_nwfs(state: SequenceState, corpus) -> ConvergedStage:
    alpha = state.converged_at(corpus)
    if alpha is None:
        raise NotConverged(f"no convergence within {state.max_stage} stages")
    return ConvergedStage(state, alpha)


def naive_stage_sizes(J, f: Arrow, n: int) -> list:
    """E-sizes of T, T (x) T, T (x) T (x) T, ... at f, without coequalizing."""
    T = onestep_stage(J)
    st, out = T, []
    for _ in range(n):
        out.append(size(st.E(f)))
        st = TensorStage(T, st)
    return out


def coequalized_stage_sizes(state: SequenceState, f: Arrow, n: int) -> list:
    return [size(state.stage(i).E(f)) for i in range(1, n + 1)]

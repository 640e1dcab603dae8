"""The arrow category: arrows, squares, lifting problems and functorial
factorisations with their structure maps."""

import threading
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from . import fincat
from .errors import MissingComult, MissingMult, NotCommuting, NotComposable, NwfsError
from .fincat import Morphism, compose, compose_all, identity


@dataclass(frozen=True)
class Arrow:
    """An object of the arrow category; just a wrapped base morphism."""

    mor: Morphism

    @property
    def dom(self):
        return self.mor.dom

    @property
    def cod(self):
        return self.mor.cod

    def __repr__(self):
        return f"Arrow({self.mor.data}: {self.dom!r} -> {self.cod!r})"


def arrow(dom, cod, data) -> Arrow:
    return Arrow(Morphism(dom, cod, data))


@dataclass(frozen=True)
class Square:
    """A morphism (h, k): src -> tgt of arrows, with tgt.h = k.src."""

    src: Arrow
    tgt: Arrow
    h: Morphism
    k: Morphism

    def __post_init__(self):
        if self.h.dom != self.src.dom or self.h.cod != self.tgt.dom:
            raise NotCommuting("domain part has the wrong type")
        if self.k.dom != self.src.cod or self.k.cod != self.tgt.cod:
            raise NotCommuting("codomain part has the wrong type")
        if compose(self.tgt.mor, self.h) != compose(self.k, self.src.mor):
            raise NotCommuting(f"square {self.h.data}, {self.k.data} does not commute")

    def then(self, other: "Square") -> "Square":
        """other after self."""
        if self.tgt != other.src:
            raise NotComposable("squares do not meet")
        # pasting commuting squares commutes, so skip the re-check
        return _trusted_square(self.src, other.tgt, compose(other.h, self.h), compose(other.k, self.k))


def _trusted_square(src, tgt, h, k) -> Square:
    """A Square already known to commute."""
    out = object.__new__(Square)
    for name, v in (("src", src), ("tgt", tgt), ("h", h), ("k", k)):
        object.__setattr__(out, name, v)
    return out


def id_square(f: Arrow) -> Square:
    return Square(f, f, identity(f.dom), identity(f.cod))


def enumerate_squares(f: Arrow, g: Arrow) -> list:
    """Every square f -> g, ordered lexicographically by (h, k) data."""
    out = []
    for h in fincat.hom_enumerate(f.dom, g.dom):
        gh = compose(g.mor, h)
        for k in fincat.fillers(f.mor, gh):
            out.append(_trusted_square(f, g, h, k))
    out.sort(key=lambda s: (s.h.data, s.k.data))
    return out


def lifts(sq: Square) -> list:
    """All diagonal fillers j of a lifting problem (h, k): f -> g."""
    return fincat.fillers(sq.src.mor, sq.h, sq.tgt.mor, sq.k)


@dataclass(frozen=True)
class GeneratingSet:
    names: tuple
    arrows: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(self.names) != len(self.arrows):
            raise ValueError("one name per generator")
        for a in self.arrows[1:]:
            if not fincat.same_backend(a.dom, self.arrows[0].dom):
                raise ValueError("generators must live in one backend")

    def __len__(self):
        return len(self.arrows)

    def __getitem__(self, j):
        return self.arrows[j]

    def __iter__(self):
        return iter(self.arrows)


def full_problem_set(J: GeneratingSet, g: Arrow) -> list:
    """The set S_g: (generator index, square) pairs in generator order."""
    return [(j, sq) for j, f in enumerate(J) for sq in enumerate_squares(f, g)]


# ------------------------------------------------------ factorisations


class Factorization(NamedTuple):
    lam: Morphism
    mid: object
    rho: Morphism


class FactorizationStage:
    """A functorial factorisation f = rho_f . lam_f with optional comonad
    comultiplication and monad multiplication.

    Subclasses implement ``_factor`` and ``_on_square`` and, when present,
    ``_comult`` / ``_mult``. Results are memoised per arrow or square.
    """

    name = "stage"
    has_comult = False
    has_mult = False

    def __init__(self):
        self._lock = threading.Lock()
        self._cache = {}

    @property
    def key(self):
        return (self.name, id(self))

    def _memo(self, tag, arg, fn):
        k = (tag, arg)
        hit = self._cache.get(k)
        if hit is not None:
            return hit
        value = fn(arg)
        with self._lock:
            return self._cache.setdefault(k, value)

    def factor(self, f: Arrow) -> Factorization:
        return self._memo("factor", f, self._factor)

    def on_square(self, sq: Square) -> Morphism:
        return self._memo("square", sq, self._on_square)

    def comult(self, f: Arrow) -> Morphism:
        if not self.has_comult:
            raise MissingComult(f"{self.name} has no comultiplication")
        return self._memo("comult", f, self._comult)

    def mult(self, f: Arrow) -> Morphism:
        if not self.has_mult:
            raise MissingMult(f"{self.name} has no multiplication")
        return self._memo("mult", f, self._mult)

    # derived data

    def E(self, f: Arrow):
        return self.factor(f).mid

    def lam(self, f: Arrow) -> Morphism:
        return self.factor(f).lam

    def rho(self, f: Arrow) -> Morphism:
        return self.factor(f).rho

    def L(self, f: Arrow) -> Arrow:
        return Arrow(self.lam(f))

    def R(self, f: Arrow) -> Arrow:
        return Arrow(self.rho(f))

    def E_sq(self, src: Arrow, tgt: Arrow, h: Morphism, k: Morphism) -> Morphism:
        return self.on_square(Square(src, tgt, h, k))

    def L_sq(self, sq: Square) -> Square:
        return Square(self.L(sq.src), self.L(sq.tgt), sq.h, self.on_square(sq))

    def R_sq(self, sq: Square) -> Square:
        return Square(self.R(sq.src), self.R(sq.tgt), self.on_square(sq), sq.k)

    def Phi(self, f: Arrow) -> Square:
        """Counit square (1, rho_f): Lf -> f."""
        return Square(self.L(f), f, identity(f.dom), self.rho(f))

    def Lambda(self, f: Arrow) -> Square:
        """Unit square (lam_f, 1): f -> Rf."""
        return Square(f, self.R(f), self.lam(f), identity(f.cod))

    def Sigma(self, f: Arrow) -> Square:
        return Square(self.L(f), self.L(self.L(f)), identity(f.dom), self.comult(f))

    def Pi(self, f: Arrow) -> Square:
        return Square(self.R(self.R(f)), self.R(f), self.mult(f), identity(f.cod))

    def Delta(self, f: Arrow) -> Square:
        """Distributive law component (sigma_f, pi_f): LRf -> RLf.

        Assembled on demand; constructing the square checks that both
        composites around it agree.
        """
        return Square(self.L(self.R(f)), self.R(self.L(f)), self.comult(f), self.mult(f))

    def _factor(self, f):
        raise NotImplementedError

    def _on_square(self, sq):
        raise NotImplementedError

    def _comult(self, f):
        raise NotImplementedError

    def _mult(self, f):
        raise NotImplementedError


class IdentityStage(FactorizationStage):
    """The unit I: f = f . 1."""

    name = "identity"
    has_comult = True
    has_mult = True

    @property
    def key(self):
        return ("identity",)

    def _factor(self, f):
        return Factorization(identity(f.dom), f.dom, f.mor)

    def _on_square(self, sq):
        return sq.h

    def _comult(self, f):
        return identity(f.dom)

    def _mult(self, f):
        return identity(f.dom)


class TerminalStage(FactorizationStage):
    """The unit for the other product: f = 1 . f."""

    name = "terminal"
    has_comult = True
    has_mult = True

    @property
    def key(self):
        return ("terminal",)

    def _factor(self, f):
        return Factorization(f.mor, f.cod, identity(f.cod))

    def _on_square(self, sq):
        return sq.k

    def _comult(self, f):
        return identity(f.cod)

    def _mult(self, f):
        return identity(f.cod)


class OverrideStage(FactorizationStage):
    """Wraps a stage, replacing its comultiplication and/or multiplication.

    Used to build deliberately broken structures for law tests.
    """

    def __init__(self, base, comult=None, mult=None, name=None):
        super().__init__()
        self.base = base
        self._comult_fn = comult
        self._mult_fn = mult
        self.name = name or f"override({base.name})"
        self.has_comult = base.has_comult or comult is not None
        self.has_mult = base.has_mult or mult is not None

    def _factor(self, f):
        return self.base.factor(f)

    def _on_square(self, sq):
        return self.base.on_square(sq)

    def _comult(self, f):
        if self._comult_fn is not None:
            return self._comult_fn(self, f)
        return self.base.comult(f)

    def _mult(self, f):
        if self._mult_fn is not None:
            return self._mult_fn(self, f)
        return self.base.mult(f)


# ------------------------------------------------------------ law checks


@dataclass
class LawResult:
    law: str
    passed: bool
    checked: int = 0
    witness: Optional[dict] = None


@dataclass
class LawReport:
    results: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.passed for r in self.results)

    def get(self, law):
        for r in self.results:
            if r.law == law:
                return r
        return None

    def failed(self):
        return [r.law for r in self.results if not r.passed]

    def laws(self):
        return [r.law for r in self.results]


NWFS1 = ("counit_L", "counit_E", "coassociativity", "unit_R", "unit_E", "associativity")


class _Collector:
    def __init__(self):
        self.order = []
        self.data = {}

    def declare(self, law):
        if law not in self.data:
            self.order.append(law)
            self.data[law] = LawResult(law, True)

    def check(self, law, where, thunk):
        self.declare(law)
        res = self.data[law]
        res.checked += 1
        if not res.passed:
            return
        try:
            lhs, rhs = thunk()
        except NwfsError as exc:
            res.passed = False
            res.witness = {"at": where, "error": str(exc)}
            return
        if lhs != rhs:
            res.passed = False
            res.witness = {"at": where, "lhs": lhs, "rhs": rhs}

    def report(self):
        return LawReport([self.data[k] for k in self.order])


def _squares_and_arrows(corpus):
    arrows, squares = [], []
    for item in corpus:
        if isinstance(item, Square):
            squares.append(item)
            for a in (item.src, item.tgt):
                if a not in arrows:
                    arrows.append(a)
        elif item not in arrows:
            arrows.append(item)
    return arrows, squares


def check_stage(stage: FactorizationStage, corpus) -> LawReport:
    """Check every law applicable to the structure ``stage`` carries.

    The corpus is a list of arrows and squares. Failures are reported with
    the first witness; nothing is raised.
    """
    arrows, squares = _squares_and_arrows(corpus)
    c = _Collector()
    E = stage

    for f in arrows:
        c.check("factorisation", f, lambda: (compose(E.rho(f), E.lam(f)), f.mor))
        c.check("identity", f, lambda: (E.on_square(id_square(f)), identity(E.E(f))))

    for sq in squares:
        f, g = sq.src, sq.tgt
        c.check("lambda_naturality", sq, lambda: (compose(E.on_square(sq), E.lam(f)), compose(E.lam(g), sq.h)))
        c.check("rho_naturality", sq, lambda: (compose(E.rho(g), E.on_square(sq)), compose(sq.k, E.rho(f))))
    for s1 in squares:
        for s2 in squares:
            if s1.tgt == s2.src:
                c.check("composition", (s1, s2), lambda: (E.on_square(s1.then(s2)), compose(E.on_square(s2), E.on_square(s1))))

    if E.has_comult:
        for f in arrows:
            c.check("comult_over_dom", f, lambda: (compose(E.comult(f), E.lam(f)), E.lam(E.L(f))))
            c.check("counit_L", f, lambda: (compose(E.rho(E.L(f)), E.comult(f)), identity(E.E(f))))
            c.check("counit_E", f, lambda: (compose(E.on_square(E.Phi(f)), E.comult(f)), identity(E.E(f))))
            c.check("coassociativity", f, lambda: (
                compose(E.on_square(E.Sigma(f)), E.comult(f)),
                compose(E.comult(E.L(f)), E.comult(f)),
            ))
        for sq in squares:
            c.check("comult_naturality", sq, lambda: (
                compose(E.comult(sq.tgt), E.on_square(sq)),
                compose(E.on_square(E.L_sq(sq)), E.comult(sq.src)),
            ))

    if E.has_mult:
        for f in arrows:
            c.check("mult_over_cod", f, lambda: (compose(E.rho(f), E.mult(f)), E.rho(E.R(f))))
            c.check("unit_R", f, lambda: (compose(E.mult(f), E.lam(E.R(f))), identity(E.E(f))))
            c.check("unit_E", f, lambda: (compose(E.mult(f), E.on_square(E.Lambda(f))), identity(E.E(f))))
            c.check("associativity", f, lambda: (
                compose(E.mult(f), E.on_square(E.Pi(f))),
                compose(E.mult(f), E.mult(E.R(f))),
            ))
        for sq in squares:
            c.check("mult_naturality", sq, lambda: (
                compose(E.on_square(sq), E.mult(sq.src)),
                compose(E.mult(sq.tgt), E.on_square(E.R_sq(sq))),
            ))

    if E.has_comult and E.has_mult:
        for f in arrows:
            c.check("distributivity", f, lambda: distributivity_sides(E, f))
    return c.report()


def distributivity_sides(E: FactorizationStage, f: Arrow):
    """Both sides of sigma_f pi_f = pi_Lf E(sigma_f, pi_f) sigma_Rf."""
    lhs = compose(E.comult(f), E.mult(f))
    rhs = compose_all(E.mult(E.L(f)), E.on_square(E.Delta(f)), E.comult(E.R(f)))
    return lhs, rhs

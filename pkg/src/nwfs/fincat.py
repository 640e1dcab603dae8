"""Finite cocomplete base categories.

Three backends share one interface:

* ``FinSet(n)``: the set {0, ..., n-1}; a morphism is its index list.
* ``FinGraph``: a directed multigraph; a morphism is a vertex map and an arrow
  map commuting with source and target.
* ``FinMod(q, r)``: the vector space (Z/q)^r for prime q; a morphism is a
  (cod rank x dom rank) matrix.

Colimits come back as :class:`ColimitResult` with canonical apexes, so two
constructions on equal inputs give equal outputs and morphism equality is
plain data equality.
"""

import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field, replace
from itertools import product
from math import prod
from typing import Callable, Optional, Sequence

from . import modp
from .errors import (
    BackendMismatch,
    CapExceeded,
    DomainMismatch,
    NotCompatible,
    NotComposable,
    NotParallel,
)

DEFAULT_CAP = 10**6
_cap = ContextVar("nwfs_cap", default=None)


def get_cap() -> int:
    value = _cap.get()
    if value is not None:
        return value
    env = os.environ.get("NWFS_CAP")
    if env:
        return int(env)
    return DEFAULT_CAP


@contextmanager
def enumeration_cap(n: int):
    """Temporarily set the hom-enumeration cap for the current context."""
    token = _cap.set(n)
    try:
        yield
    finally:
        _cap.reset(token)


def _check_cap(count):
    cap = get_cap()
    if count > cap:
        raise CapExceeded(count, cap)


# ---------------------------------------------------------------- objects


@dataclass(frozen=True)
class FinSet:
    size: int
    backend = "finset"

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("negative size")

    def __repr__(self):
        return f"FinSet({self.size})"


@dataclass(frozen=True)
class FinGraph:
    vertices: int
    arrows: int
    src: tuple
    tgt: tuple
    backend = "fingraph"

    def __post_init__(self):
        object.__setattr__(self, "src", tuple(self.src))
        object.__setattr__(self, "tgt", tuple(self.tgt))
        if len(self.src) != self.arrows or len(self.tgt) != self.arrows:
            raise ValueError("src/tgt length must equal the arrow count")
        for v in self.src + self.tgt:
            if not 0 <= v < self.vertices:
                raise ValueError(f"vertex index {v} out of range")

    def __repr__(self):
        return f"FinGraph({self.vertices}, {self.arrows}, {self.src}, {self.tgt})"


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class FinMod:
    q: int
    rank: int
    backend = "finmod"

    def __post_init__(self):
        if not _is_prime(self.q):
            raise ValueError("finmod needs a prime modulus")
        if self.rank < 0:
            raise ValueError("negative rank")

    def __repr__(self):
        return f"FinMod({self.q}, {self.rank})"


def point_graph():
    return FinGraph(1, 0, (), ())


def edge_graph():
    return FinGraph(2, 1, (0,), (1,))


# -------------------------------------------------------------- morphisms


@dataclass(frozen=True)
class Morphism:
    dom: object
    cod: object
    data: tuple
    _hash: Optional[int] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if type(self.dom) is not type(self.cod):
            raise BackendMismatch(f"{self.dom!r} and {self.cod!r}")
        ops = _ops(self.dom)
        object.__setattr__(self, "data", ops.normalize(self))
        ops.validate(self)

    def __hash__(self):
        # computed lazily: most intermediate maps are never hashed
        h = self._hash
        if h is None:
            h = hash((self.dom, self.cod, self.data))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"Morphism({self.dom!r} -> {self.cod!r}: {self.data})"

    def __call__(self, x):
        """Image of an element (finset index or finmod vector)."""
        return _ops(self.dom).apply(self, x)


def _trusted(dom, cod, data) -> Morphism:
    """A Morphism from data an operation already produced in normal form."""
    m = object.__new__(Morphism)
    object.__setattr__(m, "dom", dom)
    object.__setattr__(m, "cod", cod)
    object.__setattr__(m, "data", data)
    object.__setattr__(m, "_hash", None)
    return m


def _ops(obj):
    try:
        return _BACKENDS[type(obj)]
    except KeyError:
        raise BackendMismatch(f"not a base object: {obj!r}") from None


def same_backend(x, y):
    if type(x) is not type(y):
        return False
    if isinstance(x, FinMod):
        return x.q == y.q
    return True


def identity(x) -> Morphism:
    m = _ops(x).identity(x)
    object.__setattr__(m, "_is_identity", True)
    return m


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g after f."""
    if f.cod != g.dom:
        raise DomainMismatch(f"cannot compose {g!r} after {f!r}")
    if g.__dict__.get("_is_identity"):
        return f
    if f.__dict__.get("_is_identity"):
        return g
    return _ops(f.dom).compose(g, f)


def compose_all(*ms: Morphism) -> Morphism:
    """compose_all(h, g, f) = h.g.f"""
    out = ms[-1]
    for m in reversed(ms[:-1]):
        out = compose(m, out)
    return out


def initial_like(x):
    """The initial object of the backend containing ``x``."""
    return _ops(x).initial(x)


def initial_map(x) -> Morphism:
    return _ops(x).initial_map(x)


def size(x) -> int:
    """Reporting size: element count, vertices plus arrows, or rank."""
    return _ops(x).size(x)


def cardinality(x) -> int:
    return _ops(x).cardinality(x)


def hom_enumerate(x, y) -> list:
    """All morphisms x -> y, exhaustive and duplicate free."""
    if not same_backend(x, y):
        raise BackendMismatch(f"{x!r} and {y!r}")
    return fillers(initial_map(x), initial_map(y))


def fillers(f: Morphism, h: Morphism, g: Optional[Morphism] = None, k: Optional[Morphism] = None) -> list:
    """All j: cod f -> cod h with j.f = h and, when g is given, g.j = k.

    Results are sorted by data. Raises CapExceeded when the search space
    is too large.
    """
    if f.dom != h.dom:
        raise DomainMismatch("f and h must share a domain")
    if g is not None and (g.dom != h.cod or k is None or k.dom != f.cod or k.cod != g.cod):
        raise DomainMismatch("g, k do not close the lifting square")
    return _ops(f.dom).fillers(f, h, g, k)


def is_iso(f: Morphism) -> Optional[Morphism]:
    """Two-sided inverse of f, or None."""
    return _ops(f.dom).inverse(f)


# --------------------------------------------------------------- colimits


@dataclass(frozen=True)
class ColimitResult:
    apex: object
    legs: tuple
    _induce: Callable = field(repr=False, compare=False)
    # no compatibility conditions (coproducts, pushouts of initial spans):
    # any cocone works, so induce skips the check
    unconstrained: bool = field(default=False, compare=False)

    def induce(self, cocone: Sequence[Morphism], target=None) -> Morphism:
        """The unique map out of the apex commuting with ``cocone``.

        ``target`` is needed only when the diagram is empty. Raises
        NotCompatible if the cocone does not commute with the diagram.
        """
        cocone = list(cocone)
        if len(cocone) != len(self.legs):
            raise NotCompatible(f"expected {len(self.legs)} cocone maps, got {len(cocone)}")
        if cocone:
            target = cocone[0].cod
        if target is None:
            raise NotCompatible("empty cocone needs an explicit target")
        for leg, c in zip(self.legs, cocone):
            if c.dom != leg.dom or c.cod != target:
                raise NotCompatible(f"cocone map {c!r} does not match leg {leg!r}")
        out = self._induce(cocone, target)
        if self.unconstrained:
            return out
        for leg, c in zip(self.legs, cocone):
            if compose(out, leg) != c:
                raise NotCompatible("cocone does not commute with the diagram")
        return out


def coproduct(family: Sequence, like=None) -> ColimitResult:
    """Coproduct of a list of objects. ``like`` fixes the backend when empty."""
    family = list(family)
    if not family:
        like = FinSet(0) if like is None else like
        return replace(_ops(like).coproduct([], like), unconstrained=True)
    for x in family[1:]:
        if not same_backend(x, family[0]):
            raise BackendMismatch(f"{x!r} and {family[0]!r}")
    return replace(_ops(family[0]).coproduct(family, family[0]), unconstrained=True)


def coequalizer(u: Morphism, v: Morphism) -> ColimitResult:
    if u.dom != v.dom or u.cod != v.cod:
        raise NotParallel(f"{u!r} and {v!r}")
    return _ops(u.dom).coequalizer(u, v)


def pushout(f: Morphism, g: Morphism) -> ColimitResult:
    """Pushout of the span cod f <- A -> cod g.

    Legs are (q1: cod f -> P, q2: cod g -> P) with q1.f = q2.g. Built as a
    coequalizer of the coproduct, so apex numbering follows cod f first.
    """
    if f.dom != g.dom:
        raise DomainMismatch("pushout needs a span")
    cp = coproduct([f.cod, g.cod])
    if size(f.dom) == 0:
        # nothing to glue: the pushout is the coproduct
        return cp
    ce = coequalizer(compose(cp.legs[0], f), compose(cp.legs[1], g))
    q = ce.legs[0]
    legs = (compose(q, cp.legs[0]), compose(q, cp.legs[1]))

    def induce(cocone, target):
        return ce.induce([cp.induce(cocone)])

    return ColimitResult(ce.apex, legs, induce)


def chain_colimit(chain: Sequence[Morphism], first=None) -> ColimitResult:
    """Colimit of a finite chain X0 -> X1 -> ... -> Xn.

    The apex is Xn and the legs are the forward composites. An empty chain
    needs ``first`` and has the identity as its only leg.
    """
    chain = list(chain)
    for a, b in zip(chain, chain[1:]):
        if a.cod != b.dom:
            raise NotComposable(f"{a!r} then {b!r}")
    if not chain:
        if first is None:
            raise NotComposable("empty chain without an object")
        objs = [first]
    else:
        objs = [m.dom for m in chain] + [chain[-1].cod]
    apex = objs[-1]
    legs = [identity(apex)]
    for m in reversed(chain):
        legs.append(compose(legs[-1], m))
    legs.reverse()

    def induce(cocone, target):
        return cocone[-1]

    return ColimitResult(apex, tuple(legs), induce)


def stable_from(chain: Sequence[Morphism]) -> Optional[int]:
    """Smallest index from which every chain map is invertible, or None."""
    idx = len(chain)
    for i in range(len(chain) - 1, -1, -1):
        if is_iso(chain[i]) is None:
            break
        idx = i
    return idx if idx < len(chain) else None


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller index as root
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def labels(self):
        """Class label per element, classes numbered by first member."""
        seen = {}
        out = []
        for x in range(len(self.parent)):
            r = self.find(x)
            if r not in seen:
                seen[r] = len(seen)
            out.append(seen[r])
        return out, len(seen)


def _factor_through(labels, n_classes, values, what):
    # values[x] for every element x; must be constant on classes
    out = [None] * n_classes
    for x, c in enumerate(labels):
        if out[c] is None:
            out[c] = values[x]
        elif out[c] != values[x]:
            raise NotCompatible(f"cocone is not constant on a {what} class")
    return tuple(out)


# ----------------------------------------------------------------- finset


class _FinSetOps:
    @staticmethod
    def normalize(m):
        return tuple(int(x) for x in m.data)

    @staticmethod
    def validate(m):
        if len(m.data) != m.dom.size:
            raise ValueError("finset map has the wrong length")
        for x in m.data:
            if not 0 <= x < m.cod.size:
                raise ValueError(f"image index {x} out of range")

    @staticmethod
    def apply(m, x):
        return m.data[x]

    @staticmethod
    def identity(x):
        return Morphism(x, x, tuple(range(x.size)))

    @staticmethod
    def compose(g, f):
        gd = g.data
        return _trusted(f.dom, g.cod, tuple(gd[i] for i in f.data))

    @staticmethod
    def initial(x):
        return FinSet(0)

    @staticmethod
    def initial_map(x):
        return Morphism(FinSet(0), x, ())

    @staticmethod
    def size(x):
        return x.size

    @staticmethod
    def cardinality(x):
        return x.size

    @staticmethod
    def fillers(f, h, g, k):
        forced = {}
        for a, b in enumerate(f.data):
            c = h.data[a]
            if forced.setdefault(b, c) != c:
                return []
        choices = []
        for b in range(f.cod.size):
            if b in forced:
                c = forced[b]
                if g is not None and g.data[c] != k.data[b]:
                    return []
                choices.append((c,))
            elif g is None:
                choices.append(tuple(range(h.cod.size)))
            else:
                choices.append(tuple(c for c in range(h.cod.size) if g.data[c] == k.data[b]))
        _check_cap(prod(len(c) for c in choices))
        return [Morphism(f.cod, h.cod, t) for t in product(*choices)]

    @staticmethod
    def coproduct(family, like):
        total = sum(x.size for x in family)
        apex = FinSet(total)
        legs, off = [], 0
        for x in family:
            legs.append(Morphism(x, apex, tuple(range(off, off + x.size))))
            off += x.size

        def induce(cocone, target):
            return Morphism(apex, target, tuple(i for c in cocone for i in c.data))

        return ColimitResult(apex, tuple(legs), induce)

    @staticmethod
    def coequalizer(u, v):
        uf = UnionFind(u.cod.size)
        for a, b in zip(u.data, v.data):
            uf.union(a, b)
        labels, n = uf.labels()
        apex = FinSet(n)
        q = Morphism(u.cod, apex, tuple(labels))

        def induce(cocone, target):
            (w,) = cocone
            return Morphism(apex, target, _factor_through(labels, n, w.data, "element"))

        return ColimitResult(apex, (q,), induce)

    @staticmethod
    def inverse(f):
        if f.dom.size != f.cod.size or len(set(f.data)) != len(f.data):
            return None
        inv = [0] * f.cod.size
        for i, y in enumerate(f.data):
            inv[y] = i
        return Morphism(f.cod, f.dom, tuple(inv))


# --------------------------------------------------------------- fingraph


class _FinGraphOps:
    @staticmethod
    def normalize(m):
        vmap, amap = m.data
        return (tuple(int(x) for x in vmap), tuple(int(x) for x in amap))

    @staticmethod
    def validate(m):
        vmap, amap = m.data
        X, Y = m.dom, m.cod
        if len(vmap) != X.vertices or len(amap) != X.arrows:
            raise ValueError("graph map has the wrong shape")
        if any(not 0 <= v < Y.vertices for v in vmap) or any(not 0 <= a < Y.arrows for a in amap):
            raise ValueError("graph map index out of range")
        for a, b in enumerate(amap):
            if Y.src[b] != vmap[X.src[a]] or Y.tgt[b] != vmap[X.tgt[a]]:
                raise ValueError("graph map does not preserve source/target")

    @staticmethod
    def apply(m, x):
        raise TypeError("apply a graph map through .data")

    @staticmethod
    def identity(x):
        return Morphism(x, x, (tuple(range(x.vertices)), tuple(range(x.arrows))))

    @staticmethod
    def compose(g, f):
        gv, ga = g.data
        fv, fa = f.data
        return _trusted(f.dom, g.cod, (tuple(gv[i] for i in fv), tuple(ga[i] for i in fa)))

    @staticmethod
    def initial(x):
        return FinGraph(0, 0, (), ())

    @staticmethod
    def initial_map(x):
        return Morphism(FinGraph(0, 0, (), ()), x, ((), ()))

    @staticmethod
    def size(x):
        return x.vertices + x.arrows

    @staticmethod
    def cardinality(x):
        return x.vertices + x.arrows

    @staticmethod
    def fillers(f, h, g, k):
        B, C = f.cod, h.cod
        fv, fa = f.data
        hv, ha = h.data
        gv, ga = (None, None) if g is None else g.data
        kv, ka = (None, None) if k is None else k.data

        vforced, aforced = {}, {}
        for a, b in enumerate(fv):
            if vforced.setdefault(b, hv[a]) != hv[a]:
                return []
        for a, b in enumerate(fa):
            if aforced.setdefault(b, ha[a]) != ha[a]:
                return []

        def vopts(b):
            if b in vforced:
                c = vforced[b]
                return [c] if g is None or gv[c] == kv[b] else []
            return [c for c in range(C.vertices) if g is None or gv[c] == kv[b]]

        def aopts(b):
            if b in aforced:
                c = aforced[b]
                return [c] if g is None or ga[c] == ka[b] else []
            return [c for c in range(C.arrows) if g is None or ga[c] == ka[b]]

        vchoices = [vopts(b) for b in range(B.vertices)]
        abase = [aopts(b) for b in range(B.arrows)]
        # arrows become checkable once both endpoints are assigned
        ready = [[] for _ in range(B.vertices)]
        for b in range(B.arrows):
            ready[max(B.src[b], B.tgt[b])].append(b)

        out = []
        cap = get_cap()
        assign = [0] * B.vertices

        def arrow_options(b):
            s, t = assign[B.src[b]], assign[B.tgt[b]]
            return [c for c in abase[b] if C.src[c] == s and C.tgt[c] == t]

        def rec(i):
            if i == B.vertices:
                opts = [arrow_options(b) for b in range(B.arrows)]
                n = prod(len(o) for o in opts)
                if len(out) + n > cap:
                    raise CapExceeded(len(out) + n, cap)
                vm = tuple(assign)
                for am in product(*opts):
                    out.append(Morphism(B, C, (vm, am)))
                return
            for c in vchoices[i]:
                assign[i] = c
                if all(arrow_options(b) for b in ready[i]):
                    rec(i + 1)

        if B.vertices == 0 and B.arrows:
            raise ValueError("graph with arrows but no vertices")
        rec(0)
        return out

    @staticmethod
    def coproduct(family, like):
        nv = sum(x.vertices for x in family)
        na = sum(x.arrows for x in family)
        src, tgt, legs = [], [], []
        voff = aoff = 0
        for x in family:
            src.extend(s + voff for s in x.src)
            tgt.extend(t + voff for t in x.tgt)
            voff += x.vertices
            aoff += x.arrows
        apex = FinGraph(nv, na, tuple(src), tuple(tgt))
        voff = aoff = 0
        for x in family:
            legs.append(Morphism(x, apex, (tuple(range(voff, voff + x.vertices)), tuple(range(aoff, aoff + x.arrows)))))
            voff += x.vertices
            aoff += x.arrows

        def induce(cocone, target):
            vm = tuple(i for c in cocone for i in c.data[0])
            am = tuple(i for c in cocone for i in c.data[1])
            return Morphism(apex, target, (vm, am))

        return ColimitResult(apex, tuple(legs), induce)

    @staticmethod
    def coequalizer(u, v):
        Y = u.cod
        vu, au = UnionFind(Y.vertices), UnionFind(Y.arrows)
        for a, b in zip(u.data[0], v.data[0]):
            vu.union(a, b)
        for a, b in zip(u.data[1], v.data[1]):
            au.union(a, b)
        vl, nv = vu.labels()
        al, na = au.labels()
        src = [None] * na
        tgt = [None] * na
        for a, c in enumerate(al):
            if src[c] is None:
                src[c], tgt[c] = vl[Y.src[a]], vl[Y.tgt[a]]
        apex = FinGraph(nv, na, tuple(src), tuple(tgt))
        q = Morphism(Y, apex, (tuple(vl), tuple(al)))

        def induce(cocone, target):
            (w,) = cocone
            vm = _factor_through(vl, nv, w.data[0], "vertex")
            am = _factor_through(al, na, w.data[1], "arrow")
            return Morphism(apex, target, (vm, am))

        return ColimitResult(apex, (q,), induce)

    @staticmethod
    def inverse(f):
        X, Y = f.dom, f.cod
        vm, am = f.data
        if X.vertices != Y.vertices or X.arrows != Y.arrows:
            return None
        if len(set(vm)) != len(vm) or len(set(am)) != len(am):
            return None
        iv = [0] * Y.vertices
        ia = [0] * Y.arrows
        for i, y in enumerate(vm):
            iv[y] = i
        for i, y in enumerate(am):
            ia[y] = i
        return Morphism(Y, X, (tuple(iv), tuple(ia)))


# ----------------------------------------------------------------- finmod


def mod_elements(x: FinMod):
    """Elements of (Z/q)^r in lexicographic order."""
    return list(product(range(x.q), repeat=x.rank))


def _sparse(m):
    """Cached per-row nonzero entries of a matrix morphism."""
    sp = m.__dict__.get("_sparse")
    if sp is None:
        sp = modp.sparse_rows(m.data)
        object.__setattr__(m, "_sparse", sp)
    return sp


class _FinModOps:
    @staticmethod
    def normalize(m):
        q = m.dom.q
        return tuple(tuple(int(v) % q for v in row) for row in m.data)

    @staticmethod
    def validate(m):
        if m.dom.q != m.cod.q:
            raise BackendMismatch("finmod maps need a common modulus")
        if len(m.data) != m.cod.rank or any(len(r) != m.dom.rank for r in m.data):
            raise ValueError("matrix shape must be cod rank x dom rank")

    @staticmethod
    def apply(m, x):
        q = m.dom.q
        return tuple(sum(a * b for a, b in zip(row, x)) % q for row in m.data)

    @staticmethod
    def identity(x):
        return Morphism(x, x, modp.identity(x.rank))

    @staticmethod
    def compose(g, f):
        data, sp = modp.matmul(g.data, f.data, f.dom.q, f.dom.rank, _sparse(g), f.__dict__.get("_sparse"))
        out = _trusted(f.dom, g.cod, data)
        object.__setattr__(out, "_sparse", sp)
        return out

    @staticmethod
    def initial(x):
        return FinMod(x.q, 0)

    @staticmethod
    def initial_map(x):
        return Morphism(FinMod(x.q, 0), x, tuple(() for _ in range(x.rank)))

    @staticmethod
    def size(x):
        return x.rank

    @staticmethod
    def cardinality(x):
        return x.q**x.rank

    @staticmethod
    def fillers(f, h, g, k):
        q = f.dom.q
        a, b, c = f.dom.rank, f.cod.rank, h.cod.rank
        nvars = c * b
        eqs, rhs = [], []
        F, H = f.data, h.data
        # j.f = h
        for i in range(c):
            for l in range(a):
                row = [0] * nvars
                for m in range(b):
                    row[i * b + m] = F[m][l]
                eqs.append(row)
                rhs.append(H[i][l])
        if g is not None:
            G, K = g.data, k.data
            for r in range(g.cod.rank):
                for m in range(b):
                    row = [0] * nvars
                    for i in range(c):
                        row[i * b + m] = G[r][i]
                    eqs.append(row)
                    rhs.append(K[r][m])
        sol = modp.solve_affine(eqs, rhs, q, nvars)
        if sol is None:
            return []
        particular, basis = sol
        _check_cap(q ** len(basis))
        out = []
        for v in modp.span_points(particular, basis, q):
            mat = tuple(tuple(v[i * b : (i + 1) * b]) for i in range(c))
            out.append(Morphism(f.cod, h.cod, mat))
        out.sort(key=lambda m: m.data)
        return out

    @staticmethod
    def coproduct(family, like):
        q = like.q
        n = sum(x.rank for x in family)
        apex = FinMod(q, n)
        legs, off = [], 0
        for x in family:
            rows, sp = [(0,) * x.rank] * n, [[]] * n
            for j in range(x.rank):
                rows[off + j] = tuple(1 if t == j else 0 for t in range(x.rank))
                sp[off + j] = [(j, 1)]
            leg = _trusted(x, apex, tuple(rows))
            object.__setattr__(leg, "_sparse", sp)
            legs.append(leg)
            off += x.rank

        def induce(cocone, target):
            rows = tuple(tuple(v for c in cocone for v in c.data[t]) for t in range(target.rank))
            return _trusted(apex, target, rows)

        return ColimitResult(apex, tuple(legs), induce)

    @staticmethod
    def coequalizer(u, v):
        V = u.cod
        q, n = V.q, V.rank
        cols = [[(u.data[i][j] - v.data[i][j]) % q for i in range(n)] for j in range(u.dom.rank)]
        basis, pivots = modp.rref(cols, q, n)
        free = [i for i in range(n) if i not in pivots]
        apex = FinMod(q, len(free))
        pos = {c: t for t, c in enumerate(free)}
        P = [[0] * n for _ in free]
        for i in free:
            P[pos[i]][i] = 1
        for row, p in zip(basis, pivots):
            for t, c in enumerate(free):
                P[t][p] = (-row[c]) % q
        proj = _trusted(V, apex, tuple(tuple(r) for r in P))

        def induce(cocone, target):
            (w,) = cocone
            mat = tuple(tuple(r[c] for c in free) for r in w.data)
            return _trusted(apex, target, mat)

        return ColimitResult(apex, (proj,), induce)

    @staticmethod
    def inverse(f):
        if f.dom.rank != f.cod.rank:
            return None
        inv = modp.inverse(f.data, f.dom.q)
        if inv is None:
            return None
        return _trusted(f.cod, f.dom, inv)


_BACKENDS = {FinSet: _FinSetOps, FinGraph: _FinGraphOps, FinMod: _FinModOps}

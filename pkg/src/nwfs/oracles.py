"""Closed-form factorisations for the worked examples.

These never build a pushout or coequalizer: every carrier is a list of
explicit labels and every map is written down by formula. They serve as
independent oracles for the generic engine, which is compared against them
up to an isomorphism commuting with lam and rho (and sigma, pi when both
sides have them).
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .arrows import Arrow, Factorization, FactorizationStage
from .fincat import FinGraph, FinMod, FinSet, Morphism, _check_cap, cardinality, compose, compose_all, identity, is_iso, mod_elements


class LabelledStage(FactorizationStage):
    """A finset factorisation given by label formulas.

    Subclasses provide ``carrier(f)`` and the label-level maps; this class
    turns them into index maps.
    """

    def carrier(self, f: Arrow) -> list:
        raise NotImplementedError

    def index(self, f: Arrow) -> dict:
        return self._memo("index", f, lambda a: {lab: i for i, lab in enumerate(self.carrier(a))})

    def obj(self, f: Arrow):
        return FinSet(len(self.carrier(f)))

    def _table(self, dom_labels, target_index, fn, dom, cod):
        return Morphism(dom, cod, tuple(target_index[fn(lab)] for lab in dom_labels))

    def _factor(self, f):
        E = self.obj(f)
        idx = self.index(f)
        lam = Morphism(f.dom, E, tuple(idx[self.lam_label(f, x)] for x in range(f.dom.size)))
        rho = Morphism(E, f.cod, tuple(self.rho_label(f, lab) for lab in self.carrier(f)))
        return Factorization(lam, E, rho)

    def _on_square(self, sq):
        return self._table(self.carrier(sq.src), self.index(sq.tgt), lambda lab: self.sq_label(sq, lab), self.obj(sq.src), self.obj(sq.tgt))

    def _comult(self, f):
        Lf = self.L(f)
        return self._table(self.carrier(f), self.index(Lf), lambda lab: self.comult_label(f, lab), self.obj(f), self.obj(Lf))

    def _mult(self, f):
        Rf = self.R(f)
        return self._table(self.carrier(Rf), self.index(f), lambda lab: self.mult_label(f, lab), self.obj(Rf), self.obj(f))


class SplitEpiOracle(LabelledStage):
    """J = {0 -> 1}: X -> X + Y -> Y with lam = in1, rho = <g, 1>."""

    name = "oracle_splitepi"
    has_comult = True
    has_mult = True

    def carrier(self, f):
        return [("x", i) for i in range(f.dom.size)] + [("y", j) for j in range(f.cod.size)]

    def lam_label(self, f, x):
        return ("x", x)

    def rho_label(self, f, lab):
        tag, v = lab
        return f.mor.data[v] if tag == "x" else v

    def sq_label(self, sq, lab):
        tag, v = lab
        return (tag, sq.h.data[v] if tag == "x" else sq.k.data[v])

    def comult_label(self, f, lab):
        # <in1, in3>: X + Y -> X + (X + Y)
        tag, v = lab
        if tag == "x":
            return ("x", v)
        return ("y", self.index(f)[("y", v)])

    def mult_label(self, f, lab):
        # <in1, in2, in2>: (X + Y) + Y -> X + Y
        tag, v = lab
        if tag == "x":
            return self.carrier(f)[v]
        return ("y", v)


class CosectionOracle(LabelledStage):
    """J = {in1: 1 -> 1 + 1}: X x Y* truncated to lists of length <= n."""

    has_comult = True

    def __init__(self, n: int):
        super().__init__()
        self.n = n
        self.name = f"oracle_cosection_{n}"

    def carrier(self, f):
        out = []
        for m in range(self.n + 1):
            for x in range(f.dom.size):
                for ys in product(range(f.cod.size), repeat=m):
                    out.append((x, ys))
        return out

    def lam_label(self, f, x):
        return (x, ())

    def rho_label(self, f, lab):
        x, ys = lab
        return ys[-1] if ys else f.mor.data[x]

    def sq_label(self, sq, lab):
        x, ys = lab
        return (sq.h.data[x], tuple(sq.k.data[y] for y in ys))

    def comult_label(self, f, lab):
        x, ys = lab
        idx = self.index(f)
        return (x, tuple(idx[(x, ys[:i])] for i in range(1, len(ys) + 1)))

    def mult_partial(self, f: Arrow) -> dict:
        """Concatenation on E(Rf); None marks results beyond the truncation."""
        Rf = self.R(f)
        car = self.carrier(f)
        out = {}
        for lab in self.carrier(Rf):
            e, zs = lab
            x, ys = car[e]
            out[lab] = (x, ys + zs) if len(ys) + len(zs) <= self.n else None
        return out


class BothOracle(LabelledStage):
    """J = {0 -> 1, in1}: (X + Y) x Y* truncated.

    ``aligned`` keeps Y-headed lists one shorter, which is the shape the
    coequalized stages produce (a Y-headed cell is already present at the
    first stage).
    """

    has_comult = True

    def __init__(self, n: int, aligned: bool = False):
        super().__init__()
        self.n, self.aligned = n, aligned
        self.name = f"oracle_both_{n}{'_aligned' if aligned else ''}"

    def carrier(self, f):
        out = []
        for m in range(self.n + 1):
            for x in range(f.dom.size):
                for ys in product(range(f.cod.size), repeat=m):
                    out.append((("x", x), ys))
            if self.aligned and m == self.n:
                continue
            for j in range(f.cod.size):
                for ys in product(range(f.cod.size), repeat=m):
                    out.append((("y", j), ys))
        return out

    def lam_label(self, f, x):
        return (("x", x), ())

    def rho_label(self, f, lab):
        (tag, v), ys = lab
        if ys:
            return ys[-1]
        return f.mor.data[v] if tag == "x" else v

    def sq_label(self, sq, lab):
        (tag, v), ys = lab
        head = (tag, sq.h.data[v] if tag == "x" else sq.k.data[v])
        return (head, tuple(sq.k.data[y] for y in ys))

    def comult_label(self, f, lab):
        (tag, v), ys = lab
        idx = self.index(f)
        if tag == "x":
            return (("x", v), tuple(idx[(("x", v), ys[:i])] for i in range(1, len(ys) + 1)))
        head = ("y", idx[(("y", v), ())])
        return (head, tuple(idx[(("y", v), ys[:i])] for i in range(1, len(ys) + 1)))


def _paths(Y: FinGraph, start: int, n: int):
    """Arrow sequences b1..bm (1 <= m <= n) forming a path from ``start``."""
    out = []
    frontier = [((), start)]
    for _ in range(n):
        nxt = []
        for seq, v in frontier:
            for b in range(Y.arrows):
                if Y.src[b] == v:
                    s = seq + (b,)
                    out.append(s)
                    nxt.append((s, Y.tgt[b]))
        frontier = nxt
    return out


class GraphOracle(FactorizationStage):
    """Graph generator (.) -> (. -> .): paths of length <= n glued at f(x)."""

    def __init__(self, n: int):
        super().__init__()
        self.n = n
        self.name = f"oracle_graph_{n}"

    def cells(self, f: Arrow):
        def build(a):
            X, Y = a.dom, a.cod
            fv, fa = a.mor.data
            verts = [("v", x) for x in range(X.vertices)]
            arrs = [("a", e) for e in range(X.arrows)]
            for x in range(X.vertices):
                for bs in _paths(Y, fv[x], self.n):
                    verts.append(("p", x, bs))
                    arrs.append(("q", x, bs))
            vidx = {v: i for i, v in enumerate(verts)}
            src, tgt = [], []
            for lab in arrs:
                if lab[0] == "a":
                    src.append(vidx[("v", X.src[lab[1]])])
                    tgt.append(vidx[("v", X.tgt[lab[1]])])
                else:
                    _, x, bs = lab
                    src.append(vidx[("v", x)] if len(bs) == 1 else vidx[("p", x, bs[:-1])])
                    tgt.append(vidx[("p", x, bs)])
            G = FinGraph(len(verts), len(arrs), tuple(src), tuple(tgt))
            aidx = {e: i for i, e in enumerate(arrs)}
            return verts, arrs, vidx, aidx, G

        return self._memo("cells", f, build)

    def _factor(self, f):
        verts, arrs, vidx, aidx, G = self.cells(f)
        X, Y = f.dom, f.cod
        fv, fa = f.mor.data
        lam = Morphism(X, G, (tuple(vidx[("v", x)] for x in range(X.vertices)), tuple(aidx[("a", e)] for e in range(X.arrows))))
        rv = [fv[lab[1]] if lab[0] == "v" else Y.tgt[lab[2][-1]] for lab in verts]
        ra = [fa[lab[1]] if lab[0] == "a" else lab[2][-1] for lab in arrs]
        return Factorization(lam, G, Morphism(G, Y, (tuple(rv), tuple(ra))))

    def _on_square(self, sq):
        verts, arrs, _, _, G = self.cells(sq.src)
        _, _, vidx, aidx, G2 = self.cells(sq.tgt)
        hv, ha = sq.h.data
        kv, ka = sq.k.data

        def mv(lab):
            if lab[0] == "v":
                return vidx[("v", hv[lab[1]])]
            return vidx[("p", hv[lab[1]], tuple(ka[b] for b in lab[2]))]

        def ma(lab):
            if lab[0] == "a":
                return aidx[("a", ha[lab[1]])]
            return aidx[("q", hv[lab[1]], tuple(ka[b] for b in lab[2]))]

        return Morphism(G, G2, (tuple(mv(v) for v in verts), tuple(ma(a) for a in arrs)))


class ModOracle(FactorizationStage):
    """J = {0 -> R} over Z/q: M -> M + F|N| -> N with rho = <g, ev>."""

    name = "oracle_mod"
    has_comult = True
    has_mult = True

    def _free_rank(self, N: FinMod):
        n = cardinality(N)
        _check_cap(n)
        return n

    def _factor(self, f):
        M, N = f.dom, f.cod
        q, r = M.q, M.rank
        n = self._free_rank(N)
        E = FinMod(q, r + n)
        lam = tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r + n))
        elems = mod_elements(N)
        rho = tuple(tuple(f.mor.data[t]) + tuple(e[t] for e in elems) for t in range(N.rank))
        return Factorization(Morphism(M, E, lam), E, Morphism(E, N, rho))

    def _on_square(self, sq):
        E1, E2 = self.E(sq.src), self.E(sq.tgt)
        r1, r2 = sq.src.dom.rank, sq.tgt.dom.rank
        elems1 = mod_elements(sq.src.cod)
        pos2 = {e: i for i, e in enumerate(mod_elements(sq.tgt.cod))}
        rows = [[0] * E1.rank for _ in range(E2.rank)]
        for i in range(r2):
            for j in range(r1):
                rows[i][j] = sq.h.data[i][j]
        for j, e in enumerate(elems1):
            rows[r2 + pos2[sq.k(e)]][r1 + j] = 1
        return Morphism(E1, E2, tuple(tuple(r) for r in rows))

    def _comult(self, f):
        E = self.E(f)
        Lf = self.L(f)
        E2 = self.E(Lf)
        r = f.dom.rank
        n = E.rank - r
        pos = {e: i for i, e in enumerate(mod_elements(E))}
        rows = [[0] * E.rank for _ in range(E2.rank)]
        for i in range(r):
            rows[i][i] = 1
        for t in range(n):
            gen = tuple(1 if i == r + t else 0 for i in range(E.rank))
            rows[r + pos[gen]][r + t] = 1
        return Morphism(E, E2, tuple(tuple(x) for x in rows))

    def _mult(self, f):
        E = self.E(f)
        ER = self.E(self.R(f))
        r = f.dom.rank
        n = E.rank - r
        rows = [[0] * ER.rank for _ in range(E.rank)]
        for i in range(r):
            rows[i][i] = 1
        for t in range(n):
            rows[r + t][r + t] = 1
            rows[r + t][r + n + t] = 1
        return Morphism(ER, E, tuple(tuple(x) for x in rows))


def oracle_splitepi(g: Arrow):
    st = SplitEpiOracle()
    return st, st.factor(g)


def oracle_cosection(g: Arrow, n: int):
    st = CosectionOracle(n)
    return st, st.factor(g)


def oracle_both(g: Arrow, n: int, aligned: bool = False):
    st = BothOracle(n, aligned)
    return st, st.factor(g)


def oracle_graph(f: Arrow, n: int):
    st = GraphOracle(n)
    return st, st.factor(f)


def oracle_mod(g: Arrow):
    st = ModOracle()
    return st, st.factor(g)


# ------------------------------------------------------------- comparison


@dataclass
class CompareReport:
    passed: bool
    obstruction: Optional[str] = None
    iso: Optional[Morphism] = None
    checked: list = field(default_factory=list)


def _finset_bijections(n, fixed, posts, limit=None):
    """Bijections of an n-element set honouring fixed values and posts.

    ``posts`` is a list of (c, d) with c . phi = d required.
    """
    buckets = []
    for c, d in posts:
        fib = {}
        for b in range(n):
            fib.setdefault(c.data[b], set()).add(b)
        buckets.append((fib, d))
    cand = []
    for e in range(n):
        opts = {fixed[e]} if e in fixed else None
        for fib, d in buckets:
            f = fib.get(d.data[e], set())
            opts = set(f) if opts is None else opts & f
        cand.append(sorted(range(n) if opts is None else opts))
    order = sorted(range(n), key=lambda e: len(cand[e]))
    out, used, img = [], set(), [None] * n
    # explicit stack: carriers can exceed the recursion limit
    stack = [iter(cand[order[0]])] if n else []
    if not n:
        return [()]
    steps = 0
    while stack:
        i = len(stack) - 1
        e = order[i]
        if img[e] is not None:
            used.discard(img[e])
            img[e] = None
        b = next((b for b in stack[-1] if b not in used), None)
        steps += 1
        _check_cap(steps)
        if b is None:
            stack.pop()
            continue
        used.add(b)
        img[e] = b
        if i + 1 == n:
            out.append(tuple(img))
            if limit is not None and len(out) >= limit:
                break
        else:
            stack.append(iter(cand[order[i + 1]]))
    return out


def _isos(A, B, pairs, posts, limit=None):
    """Isos phi: A -> B with phi . a = b for (a, b) in pairs and c . phi = d."""
    if type(A) is not type(B) or cardinality(A) != cardinality(B):
        return []
    if isinstance(A, FinSet):
        fixed = {}
        for a, b in pairs:
            for x in range(a.dom.size):
                y = a.data[x]
                if fixed.get(y, b.data[x]) != b.data[x]:
                    return []
                fixed[y] = b.data[x]
        return [Morphism(A, B, t) for t in _finset_bijections(A.size, fixed, posts, limit)]

    def ok(phi):
        return all(compose(phi, a) == b for a, b in pairs) and all(compose(c, phi) == d for c, d in posts)

    if A == B and ok(identity(A)):
        return [identity(A)]
    from .fincat import fillers

    a0, b0 = pairs[0]
    c0, d0 = posts[0]
    out = [phi for phi in fillers(a0, b0, c0, d0) if ok(phi) and is_iso(phi) is not None]
    return out[:limit] if limit is not None else out


def commuting_isos(engine, oracle, f: Arrow, limit=None) -> list:
    """Isomorphisms E_engine f -> E_oracle f commuting with lam and rho."""
    return _isos(engine.E(f), oracle.E(f), [(engine.lam(f), oracle.lam(f))], [(oracle.rho(f), engine.rho(f))], limit)


def _size_obstruction(engine, oracle, f):
    a, b = engine.E(f), oracle.E(f)
    if type(a) is not type(b) or cardinality(a) != cardinality(b):
        return f"size: engine {a!r} vs oracle {b!r}"
    if isinstance(a, FinGraph) and (a.vertices, a.arrows) != (b.vertices, b.arrows):
        return f"size: engine {a!r} vs oracle {b!r}"
    return None


def compare(engine, oracle, f: Arrow, structure: bool = True, tries: int = 64) -> CompareReport:
    """Search for an isomorphism between the two factorisations of f.

    With ``structure`` the iso must also carry sigma (and pi) across, via
    some commuting iso at Lf (and Rf) on the oracle side. At most ``tries``
    candidate isos at f are examined.
    """
    obs = _size_obstruction(engine, oracle, f)
    if obs:
        return CompareReport(False, obs)
    isos = commuting_isos(engine, oracle, f, limit=tries)
    if not isos:
        return CompareReport(False, "no isomorphism commutes with lam and rho")
    checked = ["lam", "rho"]
    want_sigma = structure and engine.has_comult and oracle.has_comult
    want_pi = structure and engine.has_mult and oracle.has_mult
    checked += ["sigma"] * want_sigma + ["pi"] * want_pi
    for phi in isos:
        if want_sigma:
            L_or = oracle.L(f)
            move = engine.E_sq(engine.L(f), L_or, identity(f.dom), phi)
            pairs = [(engine.lam(L_or), oracle.lam(L_or)), (compose(move, engine.comult(f)), compose(oracle.comult(f), phi))]
            if not _isos(engine.E(L_or), oracle.E(L_or), pairs, [(oracle.rho(L_or), engine.rho(L_or))], limit=1):
                continue
        if want_pi:
            R_or = oracle.R(f)
            move = engine.E_sq(engine.R(f), R_or, phi, identity(f.cod))
            back = is_iso(move)
            posts = [(oracle.rho(R_or), engine.rho(R_or)), (oracle.mult(f), compose_all(phi, engine.mult(f), back))]
            if not _isos(engine.E(R_or), oracle.E(R_or), [(engine.lam(R_or), oracle.lam(R_or))], posts, limit=1):
                continue
        return CompareReport(True, None, phi, checked)
    return CompareReport(False, "no isomorphism carries " + "/".join(checked[2:]), None, checked)

"""Shared small corpora for the tests."""

from itertools import product

from nwfs.arrows import Arrow, arrow
from nwfs.fincat import FinGraph, FinSet, Morphism, hom_enumerate


def finset_arrows(max_dom, max_cod, min_cod=0):
    out = []
    for a in range(max_dom + 1):
        for b in range(min_cod, max_cod + 1):
            for data in product(range(b), repeat=a):
                out.append(arrow(FinSet(a), FinSet(b), data))
    return out


def graph_arrows(objs):
    return [Arrow(m) for x in objs for y in objs for m in hom_enumerate(x, y)]


def cycle(n):
    return FinGraph(n, n, tuple(range(n)), tuple((i + 1) % n for i in range(n)))


def fs(dom, cod, data):
    return Morphism(FinSet(dom), FinSet(cod), tuple(data))


# ------------------------------------------------ random instances (seeded)


def random_injection(rng, a, b):
    return arrow(FinSet(a), FinSet(b), tuple(rng.sample(range(b), a)))


def random_map(rng, a, b):
    return Morphism(FinSet(a), FinSet(b), tuple(rng.randrange(b) for _ in range(a)))


def random_lmap(rng, stage, max_size=3):
    """A random injection with a coalgebra structure over ``stage``."""
    from nwfs.algebra import all_lmap_structures

    while True:
        b = rng.randint(0, max_size)
        a = rng.randint(0, b)
        structs = all_lmap_structures(random_injection(rng, a, b), stage)
        if structs:
            return rng.choice(structs)


def random_split_epi(rng, stage, max_size=3):
    """A random surjection with a random section, as an R-map structure over
    the converged stage for {0 -> 1}: p = <1, i> on C + D."""
    from nwfs.algebra import make_rmap

    d = rng.randint(0, max_size)
    c = rng.randint(d, max_size)
    if d == 0:
        c = 0
    section = rng.sample(range(c), d)
    rest = [rng.randrange(d) for _ in range(c - d)]
    data = [None] * c
    for y, x in enumerate(section):
        data[x] = y
    free = [x for x in range(c) if data[x] is None]
    for x, y in zip(free, rest):
        data[x] = y
    g = arrow(FinSet(c), FinSet(d), tuple(data))
    p = Morphism(stage.E(g), FinSet(c), tuple(range(c)) + tuple(section))
    return make_rmap(g, stage, p)

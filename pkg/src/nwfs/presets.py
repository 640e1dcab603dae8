"""Named generating sets for the worked examples."""

from .arrows import Arrow, GeneratingSet, arrow
from .fincat import FinMod, FinSet, Morphism, edge_graph, point_graph


def splitepi() -> GeneratingSet:
    """{0 -> 1} in finite sets; its right maps are the split epis."""
    return GeneratingSet(["pt"], [arrow(FinSet(0), FinSet(1), ())])


def cosection() -> GeneratingSet:
    """{in1: 1 -> 1 + 1}; never converges."""
    return GeneratingSet(["in1"], [arrow(FinSet(1), FinSet(2), (0,))])


def both() -> GeneratingSet:
    return GeneratingSet(["pt", "in1"], [arrow(FinSet(0), FinSet(1), ()), arrow(FinSet(1), FinSet(2), (0,))])


def graph() -> GeneratingSet:
    """The inclusion of a vertex as the source of an edge."""
    return GeneratingSet(["edge"], [Arrow(Morphism(point_graph(), edge_graph(), ((0,), ())))])


def modfree(q: int = 2) -> GeneratingSet:
    """{0 -> R} for R = Z/q."""
    return GeneratingSet(["R"], [arrow(FinMod(q, 0), FinMod(q, 1), ((),))])


def empty() -> GeneratingSet:
    return GeneratingSet([], [])


PRESETS = {
    "splitepi": splitepi,
    "cosection": cosection,
    "both": both,
    "graph": graph,
    "modfree": modfree,
    "empty": empty,
}


def preset(spec: str) -> GeneratingSet:
    """Look up ``name`` or ``name:param`` (only modfree takes one, the prime)."""
    name, _, param = spec.partition(":")
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}")
    if name == "modfree" and param:
        return modfree(int(param))
    if param:
        raise ValueError(f"preset {name!r} takes no parameter")
    return PRESETS[name]()

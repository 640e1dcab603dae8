"""JSON encodings for objects, morphisms, arrows, squares and structures.

Decoders raise ValueError on malformed input. Encoders produce plain
lists/dicts with a fixed key order, so ``dumps`` output is byte-stable.
"""

import json
import re

from .arrows import Arrow, GeneratingSet, Square
from .fincat import FinGraph, FinMod, FinSet, Morphism


_FLAT_LIST = re.compile(r"\[\s*([-\w.,\s]*?)\s*\]")


def dumps(obj) -> str:
    """Indented JSON with lists of scalars kept on one line."""
    text = json.dumps(obj, indent=2)
    return _FLAT_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",") if x.strip()) + "]", text) + "\n"


def encode_object(x) -> dict:
    if isinstance(x, FinSet):
        return {"backend": "finset", "size": x.size}
    if isinstance(x, FinGraph):
        return {"backend": "fingraph", "vertices": x.vertices, "arrows": x.arrows, "src": list(x.src), "tgt": list(x.tgt)}
    if isinstance(x, FinMod):
        return {"backend": "finmod", "q": x.q, "rank": x.rank}
    raise TypeError(f"not a base object: {x!r}")


def _need(d, key):
    if not isinstance(d, dict) or key not in d:
        raise ValueError(f"missing field {key!r}")
    return d[key]


def decode_object(d, backend=None):
    if isinstance(d, int) and backend in (None, "finset"):
        return FinSet(d)
    kind = d.get("backend", backend) if isinstance(d, dict) else None
    try:
        if kind == "finset":
            return FinSet(int(_need(d, "size")))
        if kind == "fingraph":
            return FinGraph(int(_need(d, "vertices")), int(_need(d, "arrows")), tuple(_need(d, "src")), tuple(_need(d, "tgt")))
        if kind == "finmod":
            return FinMod(int(_need(d, "q")), int(_need(d, "rank")))
    except (TypeError, AssertionError) as exc:
        raise ValueError(f"bad object {d!r}: {exc}") from exc
    raise ValueError(f"unknown backend in {d!r}")


def encode_payload(m: Morphism) -> dict:
    if isinstance(m.dom, FinSet):
        return {"map": list(m.data)}
    if isinstance(m.dom, FinGraph):
        return {"vmap": list(m.data[0]), "amap": list(m.data[1])}
    return {"matrix": [list(r) for r in m.data]}


def encode_morphism(m: Morphism) -> dict:
    return {"dom": encode_object(m.dom), "cod": encode_object(m.cod), **encode_payload(m)}


def decode_payload(dom, cod, d) -> Morphism:
    try:
        if isinstance(dom, FinSet):
            data = d if isinstance(d, list) else _need(d, "map")
            return Morphism(dom, cod, tuple(int(v) for v in data))
        if isinstance(dom, FinGraph):
            return Morphism(dom, cod, (tuple(_need(d, "vmap")), tuple(_need(d, "amap"))))
        rows = d if isinstance(d, list) else _need(d, "matrix")
        return Morphism(dom, cod, tuple(tuple(int(v) for v in r) for r in rows))
    except ValueError:
        raise
    except Exception as exc:
        raise ValueError(f"bad morphism data {d!r}: {exc}") from exc


def decode_morphism(d, dom=None, cod=None, backend=None) -> Morphism:
    dom = decode_object(d["dom"], backend) if isinstance(d, dict) and "dom" in d else dom
    cod = decode_object(d["cod"], backend) if isinstance(d, dict) and "cod" in d else cod
    if dom is None or cod is None:
        raise ValueError(f"morphism {d!r} needs dom and cod")
    return decode_payload(dom, cod, d)


def encode_arrow(f: Arrow) -> dict:
    return {"dom": encode_object(f.dom), "cod": encode_object(f.cod), "mor": encode_payload(f.mor)}


def decode_arrow(d, backend=None) -> Arrow:
    dom = decode_object(_need(d, "dom"), backend)
    cod = decode_object(_need(d, "cod"), backend)
    return Arrow(decode_payload(dom, cod, _need(d, "mor")))


def encode_square(sq: Square) -> dict:
    return {"src": encode_arrow(sq.src), "tgt": encode_arrow(sq.tgt), "h": encode_payload(sq.h), "k": encode_payload(sq.k)}


def decode_square(d, backend=None) -> Square:
    src = decode_arrow(_need(d, "src"), backend)
    tgt = decode_arrow(_need(d, "tgt"), backend)
    h = decode_morphism(_need(d, "h"), src.dom, tgt.dom)
    k = decode_morphism(_need(d, "k"), src.cod, tgt.cod)
    return Square(src, tgt, h, k)


def encode_generators(J: GeneratingSet) -> dict:
    return {"generators": [{"name": n, "arrow": encode_arrow(a)} for n, a in zip(J.names, J.arrows)]}


def decode_generators(d, backend=None) -> GeneratingSet:
    gens = _need(d, "generators")
    if not isinstance(gens, list):
        raise ValueError("generators must be a list")
    return GeneratingSet([str(_need(g, "name")) for g in gens], [decode_arrow(_need(g, "arrow"), backend) for g in gens])


def encode_factorization(stage, f: Arrow) -> dict:
    out = {
        "arrow": encode_arrow(f),
        "lambda": encode_payload(stage.lam(f)),
        "E": encode_object(stage.E(f)),
        "rho": encode_payload(stage.rho(f)),
    }
    if stage.has_comult:
        out["sigma"] = encode_morphism(stage.comult(f))
    if stage.has_mult:
        out["pi"] = encode_morphism(stage.mult(f))
    return out


def stage_label(stage) -> str:
    return stage.key[0]


def encode_lmap(l) -> dict:
    return {"arrow": encode_arrow(l.arrow), "stage": stage_label(l.stage), "s": encode_payload(l.s)}


def encode_rmap(r) -> dict:
    return {"arrow": encode_arrow(r.arrow), "stage": stage_label(r.stage), "p": encode_payload(r.p)}


def decode_structure(d, field_name, backend=None):
    """(arrow, stage label, raw map payload) from an L-map or R-map encoding.

    The payload is decoded by the caller once the stage fixes Ef.
    """
    f = decode_arrow(_need(d, "arrow"), backend)
    label = _need(d, "stage")
    if label not in ("onestep", "converged"):
        raise ValueError(f"unknown stage {label!r}")
    return f, label, _need(d, field_name)


def encode_lifting_data(delta) -> list:
    """List of (generator, square, filler) triples in a fixed order."""
    out = []
    for j, sq, filler in delta.fillers:
        out.append({"generator": delta.J.names[j], "square": encode_square(sq), "filler": encode_payload(filler)})
    return out


def encode_value(v):
    """Best-effort encoding of law witnesses and other report values."""
    if isinstance(v, Morphism):
        return encode_morphism(v)
    if isinstance(v, Arrow):
        return encode_arrow(v)
    if isinstance(v, Square):
        return encode_square(v)
    if isinstance(v, dict):
        return {str(k): encode_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [encode_value(x) for x in v]
    if isinstance(v, (int, str, bool, float)) or v is None:
        return v
    return repr(v)

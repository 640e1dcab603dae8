"""Command-line front end.

Every subcommand reads an instance file:

    {"generators": "splitepi" | {"generators": [...]},
     "arrows": [arrow, ...],          # or "arrow": arrow
     "mutate": {...}}                 # optional, laws only

Exit codes: 0 ok, 1 law or structure failure, 2 bad input, 3 CapExceeded,
4 NotConverged, 5 StageMismatch.
"""

import argparse
import csv
import io
import json
import sys
from itertools import product

from . import encoding as enc
from .algebra import make_lmap, make_rmap, solve_lifting
from .arrows import Arrow, IdentityStage, LawReport, OverrideStage, check_stage, enumerate_squares
from .errors import CapExceeded, NotConverged, NwfsError, StageMismatch, StructureError
from .fincat import FinMod, FinSet, enumeration_cap, hom_enumerate
from .freeseq import SequenceState, coequalized_stage_sizes, converged_nwfs, naive_stage_sizes
from .monoidal_laws import bialgebra_check
from .presets import preset

EXIT_LAW, EXIT_INPUT, EXIT_CAP, EXIT_NOT_CONVERGED, EXIT_STAGE = 1, 2, 3, 4, 5


class Instance:
    def __init__(self, J, arrows, raw):
        self.J, self.arrows, self.raw = J, arrows, raw


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON: {exc}") from exc


def _decode_generators(spec, backend):
    if isinstance(spec, str):
        return preset(spec)
    return enc.decode_generators(spec, backend)


def load_instance(path, generators=None, backend=None) -> Instance:
    raw = _read_json(path)
    if not isinstance(raw, dict):
        raise ValueError("instance must be a JSON object")
    if generators is not None:
        gspec = generators if not generators.endswith(".json") else _read_json(generators)
    else:
        gspec = raw.get("generators")
        if gspec is None:
            raise ValueError("no generators given (instance field or --generators)")
    J = _decode_generators(gspec, backend)
    items = raw.get("arrows", [raw["arrow"]] if "arrow" in raw else [])
    arrows = [enc.decode_arrow(a, backend) for a in items]
    if backend is not None:
        for a in list(J) + arrows:
            if enc.encode_object(a.dom)["backend"] != backend:
                raise ValueError(f"arrow {a!r} is not in backend {backend}")
    return Instance(J, arrows, raw)


def _stage_for(args, inst, corpus):
    """(stage, metadata, sequence state) per --stage / --converge."""
    state = SequenceState(inst.J, max_stage=args.max_stage)
    if args.stage is not None:
        if args.stage > args.max_stage:
            raise ValueError("--stage exceeds --max-stage")
        st = state.stage(args.stage)
        return st, {"mode": "stage", "stage": args.stage}, state
    st = converged_nwfs(state, corpus)
    return st, {"mode": "converge", "converged_at": st.alpha}, state


def cmd_factorize(args):
    inst = load_instance(args.instance, args.generators, args.backend)
    st, meta, state = _stage_for(args, inst, inst.arrows)
    upto = min(args.stage if args.stage is not None else st.alpha, args.max_stage - 1)
    out = {
        "generators": list(inst.J.names),
        **meta,
        "factorizations": [enc.encode_factorization(st, f) for f in inst.arrows],
        "stage_report": [
            [list(row) for row in state.stage_report(f, upto)] for f in inst.arrows
        ],
    }
    _emit(args, enc.dumps(out))
    return 0


def _structure_stage(label, state, arrows):
    if label == "onestep":
        return state.T
    return converged_nwfs(state, arrows)


def cmd_lift(args):
    inst = load_instance(args.instance, args.generators, args.backend)
    fl, llab, s_raw = enc.decode_structure(_read_json(args.lmap), "s", args.backend)
    gr, rlab, p_raw = enc.decode_structure(_read_json(args.rmap), "p", args.backend)
    if llab != rlab:
        raise StageMismatch(f"L-map over {llab} but R-map over {rlab}")
    problem = enc.decode_square(_read_json(args.problem), args.backend)
    state = SequenceState(inst.J, max_stage=args.max_stage)
    st = _structure_stage(llab, state, [fl, gr])
    l = make_lmap(fl, st, enc.decode_payload(fl.cod, st.E(fl), s_raw))
    r = make_rmap(gr, st, enc.decode_payload(st.E(gr), gr.dom, p_raw))
    j = solve_lifting(l, r, problem)
    _emit(args, enc.dumps({"stage": llab, "filler": enc.encode_morphism(j)}))
    return 0


def generated_corpus(J, max_size):
    """All arrows between objects of size <= max_size in the generators' backend.

    Finite sets and modules are enumerated; graphs contribute none (supply
    them in the instance instead).
    """
    if len(J) == 0 or isinstance(J[0].dom, FinSet):
        objs = [FinSet(n) for n in range(max_size + 1)]
    elif isinstance(J[0].dom, FinMod):
        objs = [FinMod(J[0].dom.q, r) for r in range(max_size + 1)]
    else:
        return []
    return [Arrow(m) for a, b in product(objs, repeat=2) for m in hom_enumerate(a, b)]


def _apply_mutation(st, spec, backend):
    which = spec.get("which")
    if which not in ("comult", "mult"):
        raise ValueError("mutate.which must be 'comult' or 'mult'")
    at = enc.decode_arrow(spec["arrow"], backend)
    payload = spec["map"]

    def patched(self, f):
        orig = getattr(self.base, which)(f)
        if f != at:
            return orig
        return enc.decode_payload(orig.dom, orig.cod, payload)

    return OverrideStage(st, **{which: patched}, name=f"mutated({st.name})")


def _report_json(report: LawReport):
    return [
        {"law": r.law, "passed": r.passed, "checked": r.checked, "witness": enc.encode_value(r.witness)}
        for r in report.results
    ]


def cmd_laws(args):
    inst = load_instance(args.instance, args.generators, args.backend)
    corpus = list(inst.arrows)
    for f in generated_corpus(inst.J, args.corpus_max_size):
        if f not in corpus:
            corpus.append(f)
    st, meta, _ = _stage_for(args, inst, corpus)
    if "mutate" in inst.raw:
        st = _apply_mutation(st, inst.raw["mutate"], args.backend)
    items = list(corpus)
    if args.with_squares:
        items += [sq for f in corpus for g in corpus for sq in enumerate_squares(f, g)]
    report = check_stage(st, items)
    results = list(report.results)
    if st.has_comult and st.has_mult:
        results += [r for r in bialgebra_check(st, corpus).results if r.law != "distributivity"]
    full = LawReport(results)
    out = {**meta, "corpus_size": len(corpus), "ok": full.ok, "failed": full.failed(), "laws": _report_json(full)}
    _emit(args, enc.dumps(out))
    if not full.ok:
        print("law failure: " + ", ".join(full.failed()), file=sys.stderr)
        return EXIT_LAW
    return 0


def size_rows(J, f, max_stage):
    """[(stage, naive, coequalized, ratio)] for stages 1..max_stage."""
    state = SequenceState(J, max_stage=max_stage)
    naive = naive_stage_sizes(J, f, max_stage)
    coeq = coequalized_stage_sizes(state, f, max_stage)
    return [(n + 1, a, b, a / b if b else float("nan")) for n, (a, b) in enumerate(zip(naive, coeq))]


def cmd_size_report(args):
    inst = load_instance(args.instance, args.generators, args.backend)
    if not inst.arrows:
        raise ValueError("size-report needs an arrow")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["stage", "naive", "coequalized", "ratio"])
    for row in size_rows(inst.J, inst.arrows[args.arrow_index], args.max_stage):
        w.writerow([row[0], row[1], row[2], f"{row[3]:.4f}"])
    _emit(args, buf.getvalue())
    return 0


def cmd_compare(args):
    from . import oracles

    inst = load_instance(args.instance, args.generators, args.backend)
    state = SequenceState(inst.J, max_stage=max(args.max_stage, args.stage))
    engine = state.stage(args.stage) if args.stage > 0 else IdentityStage()
    makers = {
        "splitepi": lambda n: oracles.SplitEpiOracle(),
        "cosection": oracles.CosectionOracle,
        "both": lambda n: oracles.BothOracle(n, aligned=True),
        "graph": oracles.GraphOracle,
        "mod": lambda n: oracles.ModOracle(),
    }
    oracle = makers[args.oracle](args.stage)
    rows = []
    for f in inst.arrows:
        rep = oracles.compare(engine, oracle, f, structure=not args.no_structure)
        rows.append({
            "arrow": enc.encode_arrow(f),
            "passed": rep.passed,
            "checked": rep.checked,
            "obstruction": rep.obstruction,
            "iso": enc.encode_morphism(rep.iso) if rep.iso is not None else None,
        })
    ok = all(r["passed"] for r in rows)
    _emit(args, enc.dumps({"oracle": args.oracle, "stage": args.stage, "ok": ok, "results": rows}))
    return 0 if ok else EXIT_LAW


def _emit(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser():
    p = argparse.ArgumentParser(prog="nwfs", description="Natural weak factorisation systems on finite categories.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("instance", help="instance JSON file")
    common.add_argument("--generators", help="preset name or generating-set JSON file (overrides the instance)")
    common.add_argument("--backend", choices=["finset", "fingraph", "finmod"])
    common.add_argument("--max-stage", type=int, default=6)
    common.add_argument("--cap", type=int, help="enumeration cap (default NWFS_CAP or 1e6)")
    common.add_argument("--out", help="write output here instead of stdout")
    sub = p.add_subparsers(dest="cmd", required=True)

    def staged(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--stage", type=int, help="use stage N of the free module sequence")
        g.add_argument("--converge", action="store_true", help="use the converged stage (default)")

    f = sub.add_parser("factorize", parents=[common], help="factor the instance arrows")
    staged(f)
    f.set_defaults(func=cmd_factorize)

    li = sub.add_parser("lift", parents=[common], help="canonical filler of a lifting problem")
    li.add_argument("lmap")
    li.add_argument("rmap")
    li.add_argument("problem")
    li.set_defaults(func=cmd_lift)

    la = sub.add_parser("laws", parents=[common], help="run the law suite")
    staged(la)
    la.add_argument("--corpus-max-size", type=int, default=0, help="add all arrows between objects up to this size")
    la.add_argument("--with-squares", action="store_true", help="also check all squares between corpus arrows")
    la.set_defaults(func=cmd_laws)

    sr = sub.add_parser("size-report", parents=[common], help="naive vs coequalized stage sizes as CSV")
    sr.add_argument("--arrow-index", type=int, default=0)
    sr.set_defaults(func=cmd_size_report)

    co = sub.add_parser("compare", parents=[common], help="compare an engine stage against a closed-form oracle")
    co.add_argument("--oracle", required=True, choices=["splitepi", "cosection", "both", "graph", "mod"])
    co.add_argument("--stage", type=int, default=1)
    co.add_argument("--no-structure", action="store_true", help="only match lam and rho")
    co.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    try:
        if args.cap is not None:
            with enumeration_cap(args.cap):
                return args.func(args)
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NotConverged as exc:
        print(f"error: not converged: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except StageMismatch as exc:
        print(f"error: stage mismatch: {exc}", file=sys.stderr)
        return EXIT_STAGE
    except StructureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LAW
    except (ValueError, KeyError) as exc:
        print(f"error: bad input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NwfsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LAW


if __name__ == "__main__":
    sys.exit(main())

"""Batch command-line front end.

Reads workspace documents, runs one verification or construction command,
and emits a deterministic report.  Exit status: 0 for clean results, 2 for
verification violations (the report is still emitted), 1 for malformed
input, unresolved references, or unsupported-ring operations.
"""
from __future__ import annotations

import argparse
import sys

from .complexes import ChainMap, ProjComplex, ProjModule, homology, validate_complex, verify_chain_map
from .constructions import (algebraic_mapping_torus, laurent_resolution,
                            realize, swindle_prefix)
from .corpus import generate_corpus
from .documents import (DocumentError, Workspace, canonical_json, complex_literal,
                        content_digest, homology_literal, matrix_literal,
                        module_literal, parse_workspace, report_literal,
                        witness_literal)
from .instant import (Domination, TrimPreconditionError, build_instant,
                      finite_projective_reduction, finiteness_obstruction,
                      free_replacement, trim_below, verify_domination)
from .matrices import ShapeError
from .projective import quadratic_class_oracle, rank
from .rings import QuadraticRing, RingMismatch, UnsupportedRing
from .verdicts import Report


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="chaink0",
        description="chain-level finiteness-obstruction engine")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, named=True):
        sp.add_argument("--input", required=True, help="workspace document path")
        if named:
            sp.add_argument("--name", required=True, help="object name")
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("text", "structured"),
                        default="structured")

    common(sub.add_parser("verify", help="check a complex, map, or domination"))
    common(sub.add_parser("homology", help="lattice homology of a complex"))
    common(sub.add_parser("instant", help="assemble the instant-obstruction data"))
    ob = sub.add_parser("obstruction", help="(chi, sigma) of a domination")
    common(ob)
    ob.add_argument("--class-bound", type=int, default=None,
                    help="norm bound for the quadratic class oracle")
    tr = sub.add_parser("trim", help="peel acyclic bottom degrees")
    common(tr)
    tr.add_argument("--below", type=int, required=True,
                    help="trim degrees <= this value")
    fr = sub.add_parser("free-replace", help="replace a stably free module")
    common(fr)
    fr.add_argument("--witness", required=True, help="witness name")
    lr = sub.add_parser("laurent-resolve", help="(1-t)+1 resolution of a module")
    common(lr)
    lr.add_argument("--window", type=int, default=8)
    sw = sub.add_parser("swindle", help="finite swindle prefix of a module")
    common(sw)
    sw.add_argument("--window", type=int, default=8,
                    help="prefix length")
    common(sub.add_parser("torus", help="algebraic mapping torus of an endomorphism"))
    rl = sub.add_parser("realize", help="dominated complex with a prescribed class")
    common(rl)
    rl.add_argument("--degree", type=int, default=0)
    rl.add_argument("--class-bound", type=int, default=None)
    cp = sub.add_parser("corpus", help="generate a seeded domination corpus")
    cp.add_argument("--seed", type=int, default=0)
    cp.add_argument("--count", type=int, default=10)
    cp.add_argument("--ring", choices=("integers", "c2"), default="integers")
    cp.add_argument("--output", help="write the document here instead of stdout")
    cp.add_argument("--format", choices=("text", "structured"),
                    default="structured")
    return p


def _load(args) -> tuple[Workspace, str]:
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as ex:
        raise DocumentError(f"cannot read input: {ex}") from ex
    return parse_workspace(text), content_digest_text(text)


def content_digest_text(text: str) -> str:
    import hashlib
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _emit(args, payload: dict) -> None:
    if args.format == "structured":
        out = canonical_json(payload)
    else:
        out = _as_text(payload)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _as_text(payload, indent: str = "") -> str:
    lines = []

    def walk(key, value, depth):
        pad = "  " * depth
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k in sorted(value):
                walk(k, value[k], depth + 1)
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: " + ", ".join(map(str, value)))
        else:
            lines.append(f"{pad}{key}: {value}")

    for k in sorted(payload):
        walk(k, payload[k], 0)
    return "\n".join(lines) + "\n"


def _obstruction_payload(dom: Domination, bound: int | None) -> tuple[dict, Report]:
    rep = verify_domination(dom)
    if not rep.ok:
        return {"verify": report_literal(rep)}, rep
    ob = finiteness_obstruction(dom)
    sigma_trivial = not ob.sigma.plus and not ob.sigma.minus
    payload: dict = {
        "chi": ob.chi,
        "sigma": {
            "plus": [module_literal(m) for m in ob.sigma.plus],
            "minus": [module_literal(m) for m in ob.sigma.minus],
            "trivial": sigma_trivial,
        },
        "witnessed_zero": ob.sigma_is_witnessed_zero,
    }
    if ob.sigma_zero_witness is not None:
        payload["witness"] = witness_literal(ob.sigma_zero_witness)
    if isinstance(dom.A.ring, QuadraticRing):
        probe = [m for m in ob.sigma.plus + ob.sigma.minus
                 if not m.is_free and rank(m) == 1]
        if probe:
            v = quadratic_class_oracle(probe[0], bound)
            payload["oracle"] = {
                "status": v.status, "norm": v.norm, "bound": v.bound,
                "minkowski": v.minkowski,
                "generator": (probe[0].ring.literal(v.generator)
                              if v.generator is not None else None),
            }
    return payload, Report()


def _run(args) -> int:
    cmd = args.command
    if cmd == "corpus":
        doc = generate_corpus(args.seed, args.count, args.ring)
        _emit(args, doc)
        return 0

    ws, digest = _load(args)
    provenance = {"input_digest": digest, "name": args.name}
    obj = ws.find(args.name)

    if cmd == "verify":
        if isinstance(obj, ProjComplex):
            rep = validate_complex(obj)
        elif isinstance(obj, ChainMap):
            rep = verify_chain_map(obj)
        elif isinstance(obj, Domination):
            rep = verify_domination(obj)
        elif isinstance(obj, ProjModule):
            rep = obj.validate()
        else:
            raise DocumentError(f"{args.name!r} is not verifiable on its own")
        _emit(args, {"command": cmd, "provenance": provenance,
                     "report": report_literal(rep)})
        return 0 if rep.ok else 2

    if cmd == "homology":
        if not isinstance(obj, ProjComplex):
            raise DocumentError(f"{args.name!r} is not a complex")
        h = homology(obj)
        _emit(args, {"command": cmd, "provenance": provenance,
                     "homology": homology_literal(h)})
        return 0

    if cmd == "instant":
        if not isinstance(obj, Domination):
            raise DocumentError(f"{args.name!r} is not a domination")
        rep = verify_domination(obj)
        if not rep.ok:
            _emit(args, {"command": cmd, "provenance": provenance,
                         "report": report_literal(rep)})
            return 2
        inst = build_instant(obj)
        red = finite_projective_reduction(inst)
        _emit(args, {"command": cmd, "provenance": provenance,
                     "F_rank": inst.F_rank,
                     "P": matrix_literal(inst.P),
                     "boundaries": [matrix_literal(b) for b in inst.boundaries],
                     "reduction": complex_literal(red, obj.A.ring)})
        return 0

    if cmd == "obstruction":
        if not isinstance(obj, Domination):
            raise DocumentError(f"{args.name!r} is not a domination")
        payload, rep = _obstruction_payload(obj, args.class_bound)
        payload.update({"command": cmd, "provenance": provenance})
        _emit(args, payload)
        return 0 if rep.ok else 2

    if cmd == "trim":
        if not isinstance(obj, ProjComplex):
            raise DocumentError(f"{args.name!r} is not a complex")
        try:
            res = trim_below(obj, args.below)
        except TrimPreconditionError as ex:
            rep = Report()
            rep.add("trim.homology_nonvanishing", degree=ex.degree)
            _emit(args, {"command": cmd, "provenance": provenance,
                         "report": report_literal(rep)})
            return 2
        _emit(args, {"command": cmd, "provenance": provenance,
                     "complex": complex_literal(res.complex, ws.ring),
                     "splittings": {str(k): matrix_literal(v)
                                    for k, v in sorted(res.splittings.items())}})
        return 0

    if cmd == "free-replace":
        if not isinstance(obj, ProjComplex):
            raise DocumentError(f"{args.name!r} is not a complex")
        if args.witness not in ws.witnesses:
            raise DocumentError(f"unresolved witness reference: {args.witness!r}")
        try:
            out, fwd, bwd = free_replacement(obj, ws.witnesses[args.witness])
        except ValueError as ex:
            rep = Report()
            rep.add("free_replace.rejected", detail=str(ex))
            _emit(args, {"command": cmd, "provenance": provenance,
                         "report": report_literal(rep)})
            return 2
        _emit(args, {"command": cmd, "provenance": provenance,
                     "complex": complex_literal(out, ws.ring),
                     "forward": {str(n): matrix_literal(m)
                                 for n, m in sorted(fwd.components.items())},
                     "backward": {str(n): matrix_literal(m)
                                  for n, m in sorted(bwd.components.items())}})
        return 0

    if cmd == "laurent-resolve":
        if not isinstance(obj, ProjModule):
            raise DocumentError(f"{args.name!r} is not a module")
        cx, chk = laurent_resolution(obj, args.window)
        _emit(args, {"command": cmd, "provenance": provenance,
                     "complex": complex_literal(cx, ws.ring),
                     "window_check": chk.as_dict()})
        return 0 if chk.ok else 2

    if cmd == "swindle":
        if not isinstance(obj, ProjModule):
            raise DocumentError(f"{args.name!r} is not a module")
        cx = swindle_prefix(obj, args.window)
        h = homology(cx)
        _emit(args, {"command": cmd, "provenance": provenance,
                     "complex": complex_literal(cx, ws.ring),
                     "homology": homology_literal(h)})
        return 0

    if cmd == "torus":
        if not isinstance(obj, ChainMap):
            raise DocumentError(f"{args.name!r} is not a chain map")
        if obj.source != obj.target:
            raise DocumentError("mapping torus needs an endomorphism")
        t = algebraic_mapping_torus(obj)
        _emit(args, {"command": cmd, "provenance": provenance,
                     "complex": complex_literal(t, ws.ring)})
        return 0

    if cmd == "realize":
        if not isinstance(obj, ProjModule):
            raise DocumentError(f"{args.name!r} is not a module")
        a, dom = realize(obj, args.degree)
        payload, rep = _obstruction_payload(dom, args.class_bound)
        payload.update({"command": cmd, "provenance": provenance,
                        "complex": complex_literal(a, ws.ring)})
        _emit(args, payload)
        return 0 if rep.ok else 2

    raise DocumentError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _run(args)
    except (DocumentError, UnsupportedRing, RingMismatch, ShapeError) as ex:
        sys.stderr.write(f"error: {ex}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

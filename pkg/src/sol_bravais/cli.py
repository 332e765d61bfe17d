"""sol-bravais command line: classify, realize, enumerate, equivalent, verify, export.

Exit status 0 on success, 1 when an input fails validation, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from . import equivalence, geometry, serialize
from .classify import analyse, bravais_type, realize_type
from .errors import NotEquivalent, SolBravaisError, ValidationError
from .lattice import LatticeMatrix, isotropy_witness, verify_presentation


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.replace(";", ",").split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected four comma-separated integers, got {text!r}") from None
    if len(vals) != 4:
        raise argparse.ArgumentTypeError(f"expected four integers p,q,r,s, got {len(vals)}")
    return vals


def _face(text: str) -> tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("face is given as two base vertex names, e.g. P,P'")
    return parts[0].strip(), parts[1].strip()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sol-bravais", description="Bravais types of Sol lattices, exactly.")
    sub = ap.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    p = sub.add_parser("classify", help="classify a lattice spec")
    p.add_argument("--input", required=True, help="spec file, or - for stdin")

    p = sub.add_parser("realize", help="build a lattice of a given type")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--type", required=True, dest="label")
    p.add_argument("--q", type=int, default=None, help="primitive or C4 base parameter")
    p.add_argument("--decimals", type=int, default=None, help="annotate values with k decimals")

    p = sub.add_parser("enumerate", help="partition candidate (p, q, r) into conjugacy classes")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--bound", type=int, default=None)

    p = sub.add_parser("equivalent", help="bounded search for a conjugating unimodular matrix")
    p.add_argument("--a", type=_int_list, required=True, help="p,q,r,s")
    p.add_argument("--b", type=_int_list, required=True, help="p,q,r,s")
    p.add_argument("--bound", type=int, default=None)

    p = sub.add_parser("verify", help="check the presentation and isotropy of a spec")
    p.add_argument("--input", required=True)

    p = sub.add_parser("export", help="fundamental parallelepiped geometry")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=geometry.FORMATS, default="json")
    p.add_argument("--samples", type=int, default=geometry.DEFAULT_SAMPLES)
    p.add_argument("--scale", type=float, default=1.0, help="float scale for base coordinates")
    p.add_argument("--face", type=_face, action="append", default=[], help="extra bent face A,B")
    p.add_argument("--output", default="-")
    return ap


def _check_numbers(args):
    if getattr(args, "N", None) is not None and args.N < 3:
        raise ValidationError(f"N = {args.N}, expected >= 3", invariant="N >= 3")
    if getattr(args, "bound", None) is not None and args.bound < 0:
        raise UsageError("--bound must be >= 0")
    if getattr(args, "decimals", None) is not None and not 0 <= args.decimals <= 1000:
        raise UsageError("--decimals must be between 0 and 1000")
    if getattr(args, "samples", None) is not None and args.samples < 2:
        raise UsageError("--samples must be >= 2")
    if getattr(args, "q", None) is not None and args.q <= 0:
        raise UsageError("--q must be positive")
    scale = getattr(args, "scale", None)
    if scale is not None and not (scale > 0 and scale != float("inf")):
        raise UsageError("--scale must be a positive finite number")


def cmd_classify(args, out):
    L = serialize.load(args.input)
    out.write(serialize.dumps(analyse(L).to_json()))
    return 0


def cmd_realize(args, out):
    t = bravais_type(args.label)
    L = realize_type(args.N, t, q=args.q)
    out.write(serialize.dumps(serialize.lattice_to_obj(L, args.decimals)))
    return 0


def cmd_enumerate(args, out):
    part = equivalence.class_representatives(args.N, args.bound)
    out.write(serialize.dumps(part.to_json()))
    return 0


def cmd_equivalent(args, out):
    a, b = LatticeMatrix(*args.a).validate(), LatticeMatrix(*args.b).validate()
    try:
        res = equivalence.equivalence_search(a, b, args.bound)
        obj = res.to_json()
    except NotEquivalent as exc:
        obj = {"status": "not_equivalent", "reason": str(exc)}
    out.write(serialize.dumps({"a": list(a.as_tuple()), "b": list(b.as_tuple()), **obj}))
    return 0


def cmd_verify(args, out):
    L = serialize.load(args.input)
    rep = verify_presentation(L)
    obj = rep.to_json()
    wit = isotropy_witness(L) if rep.checks.get("independent") else None
    obj["isotropic"] = None if wit is None else {"witness": list(wit[0]), "axis": wit[1]}
    obj["ok"] = rep.ok and wit is None
    out.write(serialize.dumps(obj))
    return 0 if obj["ok"] else 1


def cmd_export(args, out):
    L = serialize.load(args.input)
    data = geometry.export(L, args.format, args.samples, args.scale, tuple(args.face))
    if args.output == "-":
        out.flush()
        buf = getattr(out, "buffer", None)
        if buf is not None:
            buf.write(data)
        else:
            out.write(data.decode())
    else:
        with open(args.output, "wb") as fh:
            fh.write(data)
    return 0


COMMANDS = {
    "classify": cmd_classify,
    "realize": cmd_realize,
    "enumerate": cmd_enumerate,
    "equivalent": cmd_equivalent,
    "verify": cmd_verify,
    "export": cmd_export,
}


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _check_numbers(args)
        if getattr(args, "bound", 0) is None:
            args.bound = equivalence.default_bound()  # SOL_BRAVAIS_BOUND or 50
        return COMMANDS[args.verb](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except ValidationError as exc:
        where = f" [{exc.invariant}]" if getattr(exc, "invariant", "") else ""
        err.write(f"validation failed{where}: {exc}\n")
        return 1
    except SolBravaisError as exc:
        err.write(f"{exc}\n")
        return 1
    except ValueError as exc:
        # InvalidParameter and friends derive from ValueError
        err.write(f"invalid input: {exc}\n")
        return 1


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

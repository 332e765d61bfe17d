"""Lattice spec files: exact JSON in and out.

A spec looks like

    {"schema": "sol-lattice/1", "N": 6, "phi": [p, q, r, s],
     "tau1": {"x": X, "y": Y, "k": 0}, "tau2": {...}, "tau3": {..., "k": 1}}

where each field element X is {"a": [num, den], "b": [num, den]} for a + b√D
(D = N^2 - 4). Integers and "num/den" strings are accepted as rational shorthand.
"phi" may be omitted, in which case it is derived from the basis.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

from .errors import InvalidParameter, ValidationError
from .lattice import LatticeMatrix, SolLattice, from_translations
from .quadfield import FieldContext, QuadNum
from .solgroup import SolTranslation

SCHEMA = "sol-lattice/1"


def _rational(v, what: str) -> Fraction:
    if isinstance(v, bool):
        raise InvalidParameter(f"{what}: booleans are not numbers")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidParameter(f"{what}: cannot read {v!r} as a rational") from None
    raise InvalidParameter(f"{what}: expected an integer or 'num/den' string, got {v!r}")


def parse_quad(obj, ctx: FieldContext, what: str = "value") -> QuadNum:
    if isinstance(obj, dict):
        unknown = set(obj) - {"a", "b", "decimal"}
        if unknown:
            raise InvalidParameter(f"{what}: unknown keys {sorted(unknown)}")
        parts = []
        for key in ("a", "b"):
            v = obj.get(key, 0)
            if isinstance(v, list):
                if len(v) != 2 or any(isinstance(x, bool) or not isinstance(x, int) for x in v):
                    raise InvalidParameter(f"{what}.{key}: expected [num, den] integers, got {v!r}")
                if v[1] == 0:
                    raise InvalidParameter(f"{what}.{key}: zero denominator")
                parts.append(Fraction(v[0], v[1]))
            else:
                parts.append(_rational(v, f"{what}.{key}"))
        return ctx(*parts)
    return ctx(_rational(obj, what))


def parse_translation(obj, ctx: FieldContext, what: str) -> SolTranslation:
    if not isinstance(obj, dict):
        raise InvalidParameter(f"{what}: expected an object with x, y, k")
    missing = [key for key in ("x", "y", "k") if key not in obj]
    if missing:
        raise InvalidParameter(f"{what}: missing {', '.join(missing)}")
    k = obj["k"]
    if isinstance(k, bool) or not isinstance(k, int):
        raise InvalidParameter(f"{what}.k must be an integer, got {k!r}")
    return SolTranslation(parse_quad(obj["x"], ctx, f"{what}.x"), parse_quad(obj["y"], ctx, f"{what}.y"), k)


def lattice_from_obj(obj) -> SolLattice:
    if not isinstance(obj, dict):
        raise InvalidParameter("lattice spec must be a JSON object")
    if "schema" in obj and obj["schema"] != SCHEMA:
        raise InvalidParameter(f"unsupported schema {obj['schema']!r}, expected {SCHEMA!r}")
    if "N" not in obj:
        raise InvalidParameter("lattice spec is missing N")
    N = obj["N"]
    if isinstance(N, bool) or not isinstance(N, int):
        raise InvalidParameter(f"N must be an integer, got {N!r}")
    if N < 3:
        raise ValidationError(f"N = {N}, expected >= 3", invariant="p + s = N >= 3")
    ctx = FieldContext(N)
    taus = [parse_translation(obj.get(name), ctx, name) for name in ("tau1", "tau2", "tau3")]
    if "phi" not in obj:
        return from_translations(*taus)
    phi = obj["phi"]
    if not isinstance(phi, list) or len(phi) != 4:
        raise InvalidParameter("phi must be a list [p, q, r, s]")
    M = LatticeMatrix(*phi).validate()
    if M.trace != N:
        raise ValidationError(f"p + s = {M.trace} but N = {N}", invariant="p + s = N")
    return SolLattice(ctx, *taus, M)


def lattice_to_obj(L: SolLattice, decimals: int | None = None) -> dict:
    def tr(t: SolTranslation) -> dict:
        return {"x": t.x.to_json(decimals), "y": t.y.to_json(decimals), "k": t.k}
    return {
        "schema": SCHEMA,
        "N": L.N,
        "phi": list(L.phi.as_tuple()),
        "tau1": tr(L.tau1),
        "tau2": tr(L.tau2),
        "tau3": tr(L.tau3),
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def loads(text: str) -> SolLattice:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParameter(f"malformed JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None
    return lattice_from_obj(obj)


def load(path: str) -> SolLattice:
    """Read a spec from a file path, or from stdin when path is '-'."""
    if path == "-":
        return loads(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise InvalidParameter(f"cannot read {path}: {exc.strerror}") from None


def save(L: SolLattice, path: str, decimals: int | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(lattice_to_obj(L, decimals)))

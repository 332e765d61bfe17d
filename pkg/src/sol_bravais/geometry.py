"""Float export of the fundamental parallelepiped: vertices, translation curves, bent faces.

Everything exact is computed in the field first and converted once. Curves use
the closed form of the one-parameter subgroup through a translation (a, b, c):

    rel(t) = (a (1 - e^-ct)/(1 - e^-c), b (e^ct - 1)/(e^c - 1), c t)

composed onto the start point with the group law.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from decimal import localcontext

import numpy as np

from . import _kernels
from .errors import InvalidParameter
from .lattice import SolLattice
from .quadfield import FieldContext, QuadNum
from .solgroup import SolTranslation, compose

SCHEMA = "sol-geom/1"
DEFAULT_SAMPLES = 64


def to_float(q: QuadNum) -> float:
    return float(q)


def log_lambda(ctx: FieldContext) -> float:
    """log of the fundamental unit, via 40-digit decimal."""
    with localcontext() as dc:
        dc.prec = 45
        return float(ctx.lam.to_decimal(40).ln())


@dataclass(frozen=True)
class FloatPoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for c in (self.x, self.y, self.z):
            if not math.isfinite(c):
                raise InvalidParameter(f"non-finite coordinate {c!r}")

    @classmethod
    def from_translation(cls, t: SolTranslation, scale: float = 1.0) -> FloatPoint:
        return cls(to_float(t.x) * scale, to_float(t.y) * scale, t.k * log_lambda(t.ctx))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple())


@dataclass
class CurveSamples:
    points: np.ndarray  # (n, 3)
    params: np.ndarray  # (n,) in [0, 1]

    def __len__(self) -> int:
        return len(self.params)

    @property
    def start(self) -> FloatPoint:
        return FloatPoint(*map(float, self.points[0]))

    @property
    def end(self) -> FloatPoint:
        return FloatPoint(*map(float, self.points[-1]))


def _target_floats(target, scale: float, log_lam: float | None = None):
    if isinstance(target, SolTranslation):
        ll = log_lambda(target.ctx) if log_lam is None else log_lam
        return to_float(target.x) * scale, to_float(target.y) * scale, target.k * ll
    a, b, c = target
    return float(a), float(b), float(c)


def translation_curve(start, target, n: int = DEFAULT_SAMPLES, scale: float = 1.0) -> CurveSamples:
    """Sample the translation curve from start to start * target at n uniform parameters.

    target is a SolTranslation (converted with the given base-plane scale) or a
    float triple (a, b, c) with c the z-displacement.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise InvalidParameter(f"need at least 2 samples, got {n!r}")
    if isinstance(start, SolTranslation):
        start = FloatPoint.from_translation(start, scale)
    s = start.as_tuple() if isinstance(start, FloatPoint) else tuple(map(float, start))
    a, b, c = _target_floats(target, scale)
    ts = np.linspace(0.0, 1.0, n)
    return CurveSamples(_kernels.curve(s, a, b, c, ts), ts)


def arclength(samples: CurveSamples) -> float:
    """Midpoint-rule length under ds^2 = e^2z dx^2 + e^-2z dy^2 + dz^2."""
    pts = samples.points if isinstance(samples, CurveSamples) else np.asarray(samples, dtype=float)
    if len(pts) < 2:
        raise InvalidParameter("arclength needs at least 2 samples")
    return _kernels.arclength(pts)


def curve_speed(start: FloatPoint, a: float, b: float, c: float) -> float:
    """Constant metric speed of the closed-form curve (its exact length)."""
    if c == 0.0:
        u, v = a, b
    else:
        u = a * c / -math.expm1(-c)
        v = b * c / math.expm1(c)
    ez = math.exp(start.z)
    return math.sqrt(ez ** 2 * (u - c * start.x) ** 2 + (v + c * start.y) ** 2 / ez ** 2 + c * c)


VERTEX_NAMES = ("O", "P", "P'", "P3", "Q", "Q'", "Q^t3", "P''", "P'^t3", "P^t3")


def exact_vertices(L: SolLattice) -> dict[str, SolTranslation]:
    ctx = L.ctx
    zero = SolTranslation.identity(ctx)
    base = lambda x, y: SolTranslation(x, y, 0)
    P = base(L.tau1.x, L.tau1.y)
    P1 = base(L.tau2.x, L.tau2.y)
    Q = base(L.tau1.x + L.tau2.x, L.tau1.y + L.tau2.y)
    shrink = lambda v: base(v.x * ctx.lam_inv, v.y * ctx.lam)
    t3 = L.tau3
    return {
        "O": zero,
        "P": P,
        "P'": P1,
        "P3": t3,
        "Q": Q,
        "Q'": shrink(Q),
        "Q^t3": compose(Q, t3),
        "P''": shrink(P1),
        "P'^t3": compose(P1, t3),
        "P^t3": compose(P, t3),
    }


def parallelepiped_vertices(L: SolLattice, scale: float = 1.0) -> dict[str, FloatPoint]:
    return {k: FloatPoint.from_translation(v, scale) for k, v in exact_vertices(L).items()}


# (from, to, kind): base/top edges are straight, vertical ones follow tau3
EDGES = (
    ("O", "P", "base"), ("P", "Q", "base"), ("Q", "P'", "base"), ("P'", "O", "base"),
    ("P3", "P^t3", "top"), ("P^t3", "Q^t3", "top"), ("Q^t3", "P'^t3", "top"), ("P'^t3", "P3", "top"),
    ("O", "P3", "tau3"), ("P", "P^t3", "tau3"), ("Q", "Q^t3", "tau3"), ("P'", "P'^t3", "tau3"),
)
SIDE_FACES = (("O", "P"), ("P", "Q"), ("Q", "P'"), ("P'", "O"))


def _segment(p: FloatPoint, q: FloatPoint, n: int) -> CurveSamples:
    ts = np.linspace(0.0, 1.0, n)
    a, b = p.as_array(), q.as_array()
    return CurveSamples(a + np.outer(ts, b - a), ts)


def edge_curves(L: SolLattice, n: int = DEFAULT_SAMPLES, scale: float = 1.0) -> dict[str, CurveSamples]:
    V = parallelepiped_vertices(L, scale)
    out = {}
    for a, b, kind in EDGES:
        if kind == "tau3":
            out[f"{a}-{b}"] = translation_curve(V[a], L.tau3, n, scale)
        else:
            out[f"{a}-{b}"] = _segment(V[a], V[b], n)
    return out


def bent_face(L: SolLattice, a: str, b: str, n: int = DEFAULT_SAMPLES, scale: float = 1.0) -> np.ndarray:
    """Face swept by tau3-curves from the base segment a-b; grid[i, j] at (s_i, t_j)."""
    V = parallelepiped_vertices(L, scale)
    for name in (a, b):
        if name not in V or V[name].z != 0.0:
            raise InvalidParameter(f"{name!r} is not a base-plane vertex")
    edge = _segment(V[a], V[b], n).points
    ta, tb, tc = _target_floats(L.tau3, scale)
    return _kernels.sweep(edge, ta, tb, tc, np.linspace(0.0, 1.0, n))


@dataclass
class Geometry:
    N: int
    samples: int
    scale: float
    vertices: dict[str, FloatPoint]
    curves: dict[str, CurveSamples]
    faces: dict[str, np.ndarray] = field(default_factory=dict)


def build(L: SolLattice, samples: int = DEFAULT_SAMPLES, scale: float = 1.0,
          extra_faces=()) -> Geometry:
    if isinstance(samples, bool) or not isinstance(samples, int) or samples < 2:
        raise InvalidParameter(f"samples must be an integer >= 2, got {samples!r}")
    faces = {}
    for a, b in tuple(SIDE_FACES) + tuple(extra_faces):
        faces[f"{a}-{b}"] = bent_face(L, a, b, samples, scale)
    return Geometry(L.N, samples, scale, parallelepiped_vertices(L, scale),
                    edge_curves(L, samples, scale), faces)


def _fl(x: float) -> str:
    return repr(float(x))


def to_json_obj(g: Geometry) -> dict:
    return {
        "schema": SCHEMA,
        "N": g.N,
        "samples": g.samples,
        "scale": g.scale,
        "vertices": {k: list(v.as_tuple()) for k, v in g.vertices.items()},
        "curves": [
            {"name": k, "params": c.params.tolist(), "points": c.points.tolist()}
            for k, c in g.curves.items()
        ],
        "faces": [{"name": k, "grid": f.tolist()} for k, f in g.faces.items()],
    }


def to_obj(g: Geometry) -> str:
    buf = io.StringIO()
    idx = 0

    def vline(p):
        nonlocal idx
        buf.write(f"v {_fl(p[0])} {_fl(p[1])} {_fl(p[2])}\n")
        idx += 1
        return idx

    for v in g.vertices.values():
        vline(v.as_tuple())
    for c in g.curves.values():
        ids = [vline(p) for p in c.points]
        buf.write("l " + " ".join(map(str, ids)) + "\n")
    for f in g.faces.values():
        n, m = f.shape[0], f.shape[1]
        first = idx + 1
        for i in range(n):
            for j in range(m):
                vline(f[i, j])
        at = lambda i, j: first + i * m + j
        for i in range(n - 1):
            for j in range(m - 1):
                buf.write(f"f {at(i, j)} {at(i + 1, j)} {at(i + 1, j + 1)} {at(i, j + 1)}\n")
    return buf.getvalue()


def obj_line_count(g: Geometry) -> int:
    """Expected OBJ lines: named vertices, curve samples plus one l record per curve,
    face grid points plus one f record per grid cell."""
    total = len(g.vertices)
    total += sum(len(c) + 1 for c in g.curves.values())
    total += sum(f.shape[0] * f.shape[1] + (f.shape[0] - 1) * (f.shape[1] - 1) for f in g.faces.values())
    return total


FORMATS = ("json", "obj")


def export(L: SolLattice, format: str = "json", samples: int = DEFAULT_SAMPLES,
           scale: float = 1.0, extra_faces=()) -> bytes:
    if format not in FORMATS:
        raise InvalidParameter(f"unknown export format {format!r}; expected one of {', '.join(FORMATS)}")
    g = build(L, samples, scale, extra_faces)
    if format == "json":
        return (json.dumps(to_json_obj(g), sort_keys=False) + "\n").encode()
    return to_obj(g).encode()

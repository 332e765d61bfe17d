"""Hot loops: conjugator scan, translation-curve sampling, metric arclength.

Each kernel has a numba version and a plain numpy version with identical
results. SOL_BRAVAIS_NUMBA=0 selects numpy; numba is also skipped when it
cannot be imported.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None


def _want_numba() -> bool:
    return numba is not None and os.environ.get("SOL_BRAVAIS_NUMBA", "1").strip() not in ("0", "false", "no")


# numpy versions

def np_conjugators(a, b, bound: int) -> np.ndarray:
    """All U = (u v; w wb), |entries| <= bound, det = +-1, with A U = U B."""
    p, q, r, s = a
    p2, q2, r2, s2 = b
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    u, v = np.meshgrid(rng, rng, indexing="ij")
    u, v = u.ravel(), v.ravel()
    # (1,1) and (1,2) entries of A U = U B fix w, wb once (u, v) are chosen
    nw = u * (p2 - p) + v * r2
    nwb = u * q2 + v * (s2 - p)
    ok = (nw % q == 0) & (nwb % q == 0)
    u, v, w, wb = u[ok], v[ok], nw[ok] // q, nwb[ok] // q
    ok = (np.abs(w) <= bound) & (np.abs(wb) <= bound)
    u, v, w, wb = u[ok], v[ok], w[ok], wb[ok]
    det = u * wb - v * w
    ok = (np.abs(det) == 1)
    ok &= r * u + s * w == w * p2 + wb * r2
    ok &= r * v + s * wb == w * q2 + wb * s2
    return np.stack([u[ok], v[ok], w[ok], wb[ok]], axis=1)


def np_curve(start, a: float, b: float, c: float, ts) -> np.ndarray:
    ts = np.asarray(ts, dtype=np.float64)
    if c == 0.0:
        rx, ry, rz = a * ts, b * ts, np.zeros_like(ts)
    else:
        rx = a * np.expm1(-c * ts) / np.expm1(-c)
        ry = b * np.expm1(c * ts) / np.expm1(c)
        rz = c * ts
    out = np.empty((ts.size, 3))
    out[:, 0] = rx + start[0] * np.exp(-rz)
    out[:, 1] = ry + start[1] * np.exp(rz)
    out[:, 2] = start[2] + rz
    return out


def np_sweep(edge: np.ndarray, a: float, b: float, c: float, ts) -> np.ndarray:
    """Grid (i, j): the curve of (a, b, c) started at edge[i], sampled at ts[j]."""
    return np.stack([np_curve(e, a, b, c, ts) for e in edge])


def np_arclength(pts: np.ndarray) -> float:
    d = np.diff(pts, axis=0)
    zm = 0.5 * (pts[1:, 2] + pts[:-1, 2])
    return float(np.sum(np.sqrt(np.exp(2 * zm) * d[:, 0] ** 2 + np.exp(-2 * zm) * d[:, 1] ** 2 + d[:, 2] ** 2)))


# numba versions

if numba is not None:
    @numba.njit(cache=True)
    def _nb_conjugators(p, q, r, s, p2, q2, r2, s2, bound):
        out = np.empty((64, 4), dtype=np.int64)
        k = 0
        for u in range(-bound, bound + 1):
            for v in range(-bound, bound + 1):
                nw = u * (p2 - p) + v * r2
                if nw % q != 0:
                    continue
                w = nw // q
                if abs(w) > bound:
                    continue
                nwb = u * q2 + v * (s2 - p)
                if nwb % q != 0:
                    continue
                wb = nwb // q
                if abs(wb) > bound:
                    continue
                det = u * wb - v * w
                if det != 1 and det != -1:
                    continue
                if r * u + s * w != w * p2 + wb * r2 or r * v + s * wb != w * q2 + wb * s2:
                    continue
                if k == out.shape[0]:
                    grown = np.empty((2 * k, 4), dtype=np.int64)
                    grown[:k] = out
                    out = grown
                out[k, 0] = u
                out[k, 1] = v
                out[k, 2] = w
                out[k, 3] = wb
                k += 1
        return out[:k].copy()

    @numba.njit(cache=True)
    def _nb_curve_into(out, sx, sy, sz, a, b, c, ts):
        if c != 0.0:
            dx = np.expm1(-c)
            dy = np.expm1(c)
        for i in range(ts.shape[0]):
            t = ts[i]
            if c == 0.0:
                rx, ry, rz = a * t, b * t, 0.0
            else:
                rx = a * np.expm1(-c * t) / dx
                ry = b * np.expm1(c * t) / dy
                rz = c * t
            out[i, 0] = rx + sx * np.exp(-rz)
            out[i, 1] = ry + sy * np.exp(rz)
            out[i, 2] = sz + rz

    @numba.njit(cache=True)
    def _nb_curve(sx, sy, sz, a, b, c, ts):
        out = np.empty((ts.shape[0], 3))
        _nb_curve_into(out, sx, sy, sz, a, b, c, ts)
        return out

    @numba.njit(cache=True)
    def _nb_sweep(edge, a, b, c, ts):
        out = np.empty((edge.shape[0], ts.shape[0], 3))
        for i in range(edge.shape[0]):
            _nb_curve_into(out[i], edge[i, 0], edge[i, 1], edge[i, 2], a, b, c, ts)
        return out

    @numba.njit(cache=True)
    def _nb_arclength(pts):
        total = 0.0
        for i in range(pts.shape[0] - 1):
            dx = pts[i + 1, 0] - pts[i, 0]
            dy = pts[i + 1, 1] - pts[i, 1]
            dz = pts[i + 1, 2] - pts[i, 2]
            zm = 0.5 * (pts[i + 1, 2] + pts[i, 2])
            total += np.sqrt(np.exp(2 * zm) * dx * dx + np.exp(-2 * zm) * dy * dy + dz * dz)
        return total


def nb_conjugators(a, b, bound: int) -> np.ndarray:
    return _nb_conjugators(*(int(x) for x in a), *(int(x) for x in b), int(bound))


def nb_curve(start, a, b, c, ts) -> np.ndarray:
    return _nb_curve(float(start[0]), float(start[1]), float(start[2]),
                     float(a), float(b), float(c), np.asarray(ts, dtype=np.float64))


def nb_sweep(edge, a, b, c, ts) -> np.ndarray:
    return _nb_sweep(np.ascontiguousarray(edge, dtype=np.float64), float(a), float(b), float(c),
                     np.asarray(ts, dtype=np.float64))


def nb_arclength(pts) -> float:
    return float(_nb_arclength(np.ascontiguousarray(pts, dtype=np.float64)))


def backend() -> str:
    return "numba" if _want_numba() else "numpy"


def conjugators(a, b, bound):
    return nb_conjugators(a, b, bound) if _want_numba() else np_conjugators(a, b, bound)


def curve(start, a, b, c, ts):
    return nb_curve(start, a, b, c, ts) if _want_numba() else np_curve(start, a, b, c, ts)


def sweep(edge, a, b, c, ts):
    return nb_sweep(edge, a, b, c, ts) if _want_numba() else np_sweep(edge, a, b, c, ts)


def arclength(pts):
    return nb_arclength(pts) if _want_numba() else np_arclength(pts)

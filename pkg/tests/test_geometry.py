import decimal
import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_ivp

from conftest import rationals
from sol_bravais import geometry as geo
from sol_bravais.errors import InvalidParameter
from sol_bravais.lattice import canonical_basis, centred_base
from sol_bravais.quadfield import FieldContext
from sol_bravais.solgroup import SolTranslation, compose

FIG2_SCALE = math.sqrt(2) / 2


def fig2():
    return canonical_basis(3, 0, 1, mu=1)


def ode_curve(start, a, b, c, ts):
    """Integrate the translation-curve ODE with constant frame coefficients."""
    s = start
    if c == 0.0:
        u, v = a, b
    else:
        u = a * c / -math.expm1(-c)
        v = b * c / math.expm1(c)
    u1 = (u - c * s.x) * math.exp(s.z)
    v1 = (v + c * s.y) * math.exp(-s.z)

    def rhs(t, X):
        return [u1 * math.exp(-X[2]), v1 * math.exp(X[2]), c]

    sol = solve_ivp(rhs, (0.0, 1.0), list(s.as_tuple()), t_eval=ts, rtol=1e-12, atol=1e-13, method="DOP853")
    return sol.y.T


def rel_close(x, y, tol):
    return abs(x - y) <= tol * max(1.0, abs(y))


def test_fig2_vertices():
    V = geo.parallelepiped_vertices(fig2(), scale=FIG2_SCALE)
    assert V["P"].x == pytest.approx(0.70710678118654752, abs=1e-15)
    assert V["P"].y == pytest.approx(0.70710678118654752, abs=1e-15)
    assert V["P3"].as_tuple()[:2] == (0.0, 0.0)
    assert V["P3"].z == pytest.approx(math.log((3 + math.sqrt(5)) / 2), abs=1e-15)
    assert V["P3"].z == pytest.approx(0.9624236501192069, abs=1e-15)
    assert list(V) == list(geo.VERTEX_NAMES)


def test_zero_offset_top_vertex():
    V = geo.parallelepiped_vertices(fig2())
    d = np.array(V["Q^t3"].as_tuple()) - np.array(V["Q'"].as_tuple())
    assert d[0] == 0 and d[1] == 0 and d[2] > 0


def test_vertices_match_exact_products():
    L = centred_base(6).with_offset_coords(Fraction(1, 3), Fraction(1, 2))
    ex = geo.exact_vertices(L)
    assert ex["P^t3"] == compose(ex["P"], L.tau3)
    lam = L.ctx.lam
    assert ex["Q'"].x == ex["Q"].x / lam and ex["P''"].y == ex["P'"].y * lam


def test_conversion_within_an_ulp():
    L = centred_base(6).with_offset_coords(Fraction(1, 3), Fraction(-2, 7))
    for name, t in geo.exact_vertices(L).items():
        f = geo.FloatPoint.from_translation(t)
        for exact, got in ((t.x, f.x), (t.y, f.y)):
            ref = exact.to_decimal(30)
            assert abs(decimal.Decimal(got) - ref) <= decimal.Decimal(math.ulp(got)) + decimal.Decimal(10) ** -29


def test_vertical_target():
    ctx = FieldContext(6)
    c = geo.translation_curve(geo.FloatPoint(0, 0, 0), SolTranslation.of(ctx, 0, 0, 1), 11)
    assert np.all(c.points[:, :2] == 0)
    np.testing.assert_allclose(np.diff(c.points[:, 2]), geo.log_lambda(ctx) / 10, rtol=1e-14)


def test_midpoint_closed_form():
    ctx = FieldContext(6)
    ll = geo.log_lambda(ctx)
    lam = float(ctx.lam)
    c = geo.translation_curve(geo.FloatPoint(0, 0, 0), (1.0, 1.0, ll), 3)
    assert c.points[1][0] == pytest.approx((1 - lam ** -0.5) / (1 - 1 / lam), rel=1e-14)
    assert c.points[1][1] == pytest.approx((lam ** 0.5 - 1) / (lam - 1), rel=1e-14)


@settings(max_examples=100)
@given(st.integers(3, 9), rationals, rationals, st.integers(-2, 2), rationals, rationals, st.integers(-2, 2))
def test_endpoint_is_exact_product(N, sx, sy, sk, a, b, k):
    ctx = FieldContext(N)
    s = SolTranslation.of(ctx, sx, sy, sk)
    t = SolTranslation.of(ctx, a, b, k)
    c = geo.translation_curve(s, t, 5)
    end = geo.FloatPoint.from_translation(compose(s, t))
    got = c.end
    for x, y in zip(got.as_tuple(), end.as_tuple()):
        assert rel_close(x, y, 1e-12)
    for x, y in zip(c.start.as_tuple(), geo.FloatPoint.from_translation(s).as_tuple()):
        assert rel_close(x, y, 1e-12)


@settings(max_examples=25)
@given(st.tuples(st.floats(-2, 2), st.floats(-2, 2), st.floats(-1, 1)), st.floats(-2, 2), st.floats(-2, 2),
       st.floats(-1.8, 1.8))
def test_matches_ode_oracle(start, a, b, c):
    s = geo.FloatPoint(*start)
    ts = np.linspace(0, 1, 9)
    closed = geo.translation_curve(s, (a, b, c), 9).points
    np.testing.assert_allclose(closed, ode_curve(s, a, b, c, ts), rtol=1e-8, atol=1e-8)


@pytest.mark.parametrize("N", [3, 6])
def test_tau3_edge_length(N):
    L = canonical_basis(N, 0, 1)
    c = geo.edge_curves(L, 65)["O-P3"]
    assert abs(geo.arclength(c) - math.log((N + math.sqrt(N * N - 4)) / 2)) < 1e-10


def test_x_axis_segment():
    c = geo.translation_curve(geo.FloatPoint(0, 0, 0), (-2.5, 0.0, 0.0), 7)
    assert geo.arclength(c) == pytest.approx(2.5, abs=1e-14)


def test_convergence():
    s = geo.FloatPoint(0.3, -0.2, 0.4)
    args = (1.0, 1.0, geo.log_lambda(FieldContext(6)))
    exact = geo.curve_speed(s, *args)
    errs = [abs(geo.arclength(geo.translation_curve(s, args, n + 1)) - exact) for n in (50, 100, 200)]
    assert errs[0] / errs[1] > 3.5 and errs[1] / errs[2] > 3.5
    l4 = geo.arclength(geo.translation_curve(s, args, 10 ** 4))
    l5 = geo.arclength(geo.translation_curve(s, args, 10 ** 5))
    assert abs(l4 - l5) < 1e-8


def test_bent_face_rows_are_translation_curves():
    L = centred_base(6).with_offset_coords(Fraction(1, 3), Fraction(1, 2))
    n = 9
    face = geo.bent_face(L, "P", "P'", n)
    V = geo.parallelepiped_vertices(L)
    ta = geo._target_floats(L.tau3, 1.0)
    for i in range(n):
        base = geo.FloatPoint(*face[i, 0])
        again = geo.translation_curve(base, ta, n).points
        np.testing.assert_allclose(face[i], again, rtol=1e-10, atol=1e-10)
    np.testing.assert_allclose(face[0], geo.translation_curve(V["P"], L.tau3, n).points, atol=1e-12)
    np.testing.assert_allclose(face[-1, -1], V["P'^t3"].as_tuple(), atol=1e-12)
    with pytest.raises(InvalidParameter):
        geo.bent_face(L, "P", "P3")


def test_json_round_trip_and_schema():
    L = fig2()
    data = geo.export(L, "json", samples=8, scale=FIG2_SCALE)
    obj = json.loads(data)
    assert obj["schema"] == "sol-geom/1"
    V = geo.parallelepiped_vertices(L, FIG2_SCALE)
    for k, v in obj["vertices"].items():
        assert tuple(v) == V[k].as_tuple()
    assert data == geo.export(L, "json", samples=8, scale=FIG2_SCALE)


def test_obj_counts_and_determinism():
    L = centred_base(6)
    g = geo.build(L, 6, extra_faces=[("P", "P'")])
    data = geo.export(L, "obj", samples=6, extra_faces=[("P", "P'")])
    lines = data.decode().splitlines()
    assert len(lines) == geo.obj_line_count(g)
    assert {ln.split()[0] for ln in lines} == {"v", "l", "f"}
    assert data == geo.export(L, "obj", samples=6, extra_faces=[("P", "P'")])
    nv = sum(1 for ln in lines if ln.startswith("v "))
    assert all(1 <= int(i) <= nv for ln in lines if ln[0] in "lf" for i in ln.split()[1:])


def test_scaled_lattices_export_proportionally():
    L = centred_base(6).with_offset_coords(Fraction(1, 5), Fraction(2, 5))
    a = json.loads(geo.export(L, "json", samples=5))
    b = json.loads(geo.export(L.scaled(3), "json", samples=5))
    for k in a["vertices"]:
        x1, y1, z1 = a["vertices"][k]
        x2, y2, z2 = b["vertices"][k]
        assert x2 == pytest.approx(3 * x1, rel=1e-14, abs=1e-14)
        assert y2 == pytest.approx(3 * y1, rel=1e-14, abs=1e-14)
        assert z2 == z1


def test_errors():
    with pytest.raises(InvalidParameter):
        geo.export(fig2(), "stl")
    with pytest.raises(InvalidParameter):
        geo.translation_curve(geo.FloatPoint(0, 0, 0), (1, 1, 1), 1)
    with pytest.raises(InvalidParameter):
        geo.FloatPoint(float("nan"), 0, 0)
    with pytest.raises(InvalidParameter):
        geo.arclength(np.zeros((1, 3)))

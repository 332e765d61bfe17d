from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import lattices, unimodular
from sol_bravais.equivalence import candidate_parameters
from sol_bravais.lattice import c4_base, canonical_basis, centred_base, combine, primitive_bases
from sol_bravais.quadfield import FieldContext
from sol_bravais.solgroup import PointIsometry as G
from sol_bravais.symmetry import (
    REFLECTIONS,
    Centering,
    PointGroup,
    _offset_line_hit,
    axis_vectors,
    centering,
    certificate,
    mirror,
    point_group,
    reflected_tau3_word,
    reflection_kills_tau3,
    symmetry_flags,
    z_sublattice_exists,
)


def brute_line_hit(L, c, R=8):
    ox, oy = L.offset
    for m in range(-R, R + 1):
        for n in range(-R, R + 1):
            v = combine(L, m, n)
            if oy + v[1] == c * (ox + v[0]):
                return True
    return False


@pytest.mark.parametrize("N", range(3, 13))
def test_shapes_have_expected_groups(N):
    assert point_group(canonical_basis(N, 0, 1, 2)) is PointGroup.C2
    assert point_group(centred_base(N)) is PointGroup.D2BAR
    assert centering(centred_base(N)) is Centering.CENTRED
    for B in primitive_bases(N):
        assert point_group(B) is PointGroup.D2BAR
        assert centering(B) is Centering.PRIMITIVE


@pytest.mark.parametrize("N", range(3, 13))
def test_c4_exactly_when_q_squared(N):
    ctx = FieldContext(N)
    for p, q, r in candidate_parameters(N):
        hit = q * q == p * (N - p) - 1
        mu_c4 = (ctx.sqrt_d - (N - 2 * p)) / (2 * q)
        seen = set()
        for mu in (mu_c4, 1, 2, Fraction(-3, 2), ctx.lam, ctx.lam_inv):
            try:
                L = canonical_basis(N, p, q, mu=mu)
            except Exception:
                continue
            seen.add(point_group(L) is PointGroup.C4)
        assert (True in seen) == hit, (N, p, q, r)
        if hit:
            assert point_group(c4_base(N, p, q)) is PointGroup.C4


@given(lattices())
def test_symmetries_form_a_group(L):
    present = {g for g, ok in symmetry_flags(L).items() if ok}
    for g in present:
        assert g.inverse() in present
        for h in present:
            assert g.then(h) in present
    assert present == set(point_group(L).elements)


@given(lattices(), unimodular)
def test_group_is_basis_independent(L, U):
    assert point_group(L.rebased(*U)) is point_group(L)
    assert centering(L.rebased(*U)) is centering(L)


def _reflective_samples():
    out = []
    third = Fraction(1, 3)
    for N in (4, 5, 6):
        ctx = FieldContext(N)
        C = centred_base(N)
        out += [C.with_offset_coords(Fraction(a), Fraction(b)) for a, b in [("1/2", 0), (0, "1/2"), ("1/2", "1/2")]]
        out.append(C.with_offset(ctx(third), -ctx.lam * third))
        out.append(C.with_offset(1 / (ctx.lam + 1), ctx.lam ** 2 / (ctx.lam + 1)))
        for P in primitive_bases(N):
            out += [P.with_offset_coords(Fraction(a), Fraction(b)) for a, b in [("1/2", 0), (0, "1/2"), ("1/2", "1/2")]]
    return out


@pytest.mark.parametrize("L", _reflective_samples())
def test_offset_tests_match_brute_force(L):
    lam = L.ctx.lam
    for c in (lam ** 2, -lam ** 2, lam, -lam):
        assert _offset_line_hit(L, c) == brute_line_hit(L, c)


@settings(max_examples=40)
@given(st.sampled_from(_reflective_samples()), st.integers(-3, 3), st.integers(-3, 3))
def test_offset_tests_are_representative_free(L, m, n):
    w = combine(L, m, n)
    S = L.with_offset(L.offset[0] + w[0], L.offset[1] + w[1])
    pg = point_group(L)
    assert point_group(S) is pg
    assert z_sublattice_exists(S, pg) == z_sublattice_exists(L, pg)
    assert reflection_kills_tau3(S, pg) == reflection_kills_tau3(L, pg)


def test_killing_representative_really_kills():
    ctx = FieldContext(6)
    L = centred_base(6).with_offset(ctx(Fraction(1, 3)), -ctx.lam * Fraction(1, 3))
    assert reflected_tau3_word(G.DELTA_R, L) == (0, 0)
    assert reflection_kills_tau3(L)


def test_axis_vectors_and_index():
    av = axis_vectors(centred_base(6))
    assert av.index == 2
    assert axis_vectors(primitive_bases(6)[0]).index == 1
    assert axis_vectors(canonical_basis(6, 0, 1, 2)).index is None


def test_mirror_swaps_reflections():
    ctx = FieldContext(6)
    L = centred_base(6).with_offset(ctx(Fraction(1, 3)), -ctx.lam * Fraction(1, 3))
    flags, mflags = symmetry_flags(L), symmetry_flags(mirror(L))
    assert flags[G.DELTA_R] == mflags[G.DELTA_RBAR]
    assert flags[G.DELTA_RBAR] == mflags[G.DELTA_R]


def test_certificates_for_shapes():
    c = certificate(centred_base(6))
    assert c.kind.value == "CentredDr"
    assert c.coefficients["alpha"] == 0 and c.coefficients["beta"] == 0
    c = certificate(c4_base(6, 1, 2))
    assert c.kind.value == "C4" and c.conditions["qq_plus_1_eq_p_times_N_minus_p"]
    assert set(REFLECTIONS) == {G.DELTA_R, G.DELTA_RBAR}

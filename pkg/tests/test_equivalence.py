import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import unimodular
from sol_bravais.equivalence import (
    UnimodularMatrix,
    all_witnesses,
    candidate_matrix,
    candidate_parameters,
    class_representatives,
    conjugate_matrix,
    default_bound,
    equivalence_search,
)
from sol_bravais.errors import InvalidParameter, NotEquivalent
from sol_bravais.lattice import LatticeMatrix, canonical_basis

A = LatticeMatrix(0, 1, -1, 6)


def det_oracle_equivalent(phi1, phi2, bound):
    """Independent box search: enumerate (u, v, w), recover wbar from the determinant."""
    r = np.arange(-bound, bound + 1)
    u, v, w = (x.ravel() for x in np.meshgrid(r, r, r, indexing="ij"))
    for det in (1, -1):
        nz = u != 0
        num = det + v * w
        ok = nz & (num % np.where(nz, u, 1) == 0)
        uu, vv, ww = u[ok], v[ok], w[ok]
        wb = num[ok] // uu
        keep = np.abs(wb) <= bound
        uu, vv, ww, wb = uu[keep], vv[keep], ww[keep], wb[keep]
        # phi1 U == U phi2
        p, q, rr, s = phi1.as_tuple()
        p2, q2, r2, s2 = phi2.as_tuple()
        good = (p * uu + q * ww == uu * p2 + vv * r2) & (p * vv + q * wb == uu * q2 + vv * s2) & \
               (rr * uu + s * ww == ww * p2 + wb * r2) & (rr * vv + s * wb == ww * q2 + wb * s2)
        if good.any():
            return True
    # u = 0 columns
    for v0 in range(-bound, bound + 1):
        for w0 in range(-bound, bound + 1):
            if abs(v0 * w0) != 1:
                continue
            for wb in range(-bound, bound + 1):
                try:
                    U = UnimodularMatrix(0, v0, w0, wb)
                except InvalidParameter:
                    continue
                if conjugate_matrix(phi1, U) == phi2:
                    return True
    return False


@pytest.mark.parametrize("U,expect", [((1, 0, 1, 1), (1, 1, 4, 5)), ((1, 0, 2, 1), (2, 1, 7, 4)), ((1, 0, 0, 1), (0, 1, -1, 6))])
def test_conjugate_examples(U, expect):
    assert conjugate_matrix(A, UnimodularMatrix(*U)).as_tuple() == expect


@given(st.tuples(*[st.integers(-20, 20)] * 4), unimodular)
def test_conjugation_preserves_trace_and_det(m, U):
    phi = LatticeMatrix(*m)
    U = UnimodularMatrix(*U)
    c = conjugate_matrix(phi, U)
    assert c.trace == phi.trace and c.det == phi.det
    assert conjugate_matrix(c, U.inverse()) == phi


def test_unimodular_validation():
    with pytest.raises(InvalidParameter):
        UnimodularMatrix(2, 0, 0, 1)
    U = UnimodularMatrix(2, 1, 1, 1)
    assert (U @ U.inverse()).as_tuple() == (1, 0, 0, 1)


def test_candidates():
    assert set(candidate_parameters(6)) == {(0, 1, -1), (1, 1, 4), (1, 2, 2), (1, 4, 1), (2, 1, 7), (2, 7, 1),
                                            (3, 1, 8), (3, 2, 4), (3, 4, 2), (3, 8, 1)}
    assert set(candidate_parameters(3)) == {(0, 1, -1), (1, 1, 1)}


@pytest.mark.parametrize("N", range(3, 13))
def test_candidates_build(N):
    for pqr in candidate_parameters(N):
        phi = candidate_matrix(N, pqr)
        assert phi.det == 1
        assert canonical_basis(N, pqr[0], pqr[1]).phi == phi


def test_search_examples():
    assert equivalence_search(A, LatticeMatrix(1, 1, 4, 5), 5).witness.as_tuple() == (1, 0, 1, 1)
    assert equivalence_search(A, LatticeMatrix(2, 1, 7, 4), 5).witness.as_tuple() == (1, 0, 2, 1)
    res = equivalence_search(LatticeMatrix(3, 1, 8, 3), LatticeMatrix(3, 2, 4, 3), 50)
    assert res.status == "not_found_within_bound" and res.witness is None
    assert equivalence_search(A, A, 1).witness.as_tuple() == (1, 0, 0, 1)


def test_trace_mismatch():
    with pytest.raises(NotEquivalent):
        equivalence_search(A, LatticeMatrix(1, 1, 4, 6), 5)


@pytest.mark.parametrize("N", [5, 6, 7])
def test_search_is_symmetric(N):
    cands = candidate_parameters(N)
    for a in cands:
        for b in cands:
            pa, pb = candidate_matrix(N, a), candidate_matrix(N, b)
            r1 = equivalence_search(pa, pb, 8)
            r2 = equivalence_search(pb, pa, 8)
            assert r1.equivalent == r2.equivalent
            if r1.equivalent:
                assert conjugate_matrix(pb, r1.witness.inverse()) == pa
                assert conjugate_matrix(pa, r1.witness) == pb


@pytest.mark.parametrize("N", [3, 5, 6])
def test_search_matches_oracle(N):
    cands = candidate_parameters(N)
    for a in cands:
        for b in cands:
            pa, pb = candidate_matrix(N, a), candidate_matrix(N, b)
            assert equivalence_search(pa, pb, 6).equivalent == det_oracle_equivalent(pa, pb, 6)


def test_every_witness_conjugates():
    for U in all_witnesses(A, LatticeMatrix(1, 1, 4, 5), 10):
        assert conjugate_matrix(A, U) == LatticeMatrix(1, 1, 4, 5)


def test_partition_n6():
    part = class_representatives(6, 50)
    cls = part.class_of((0, 1, -1))
    assert {(1, 1, 4), (2, 1, 7)} <= set(cls.members)
    assert part.class_of((3, 1, 8)) is not part.class_of((3, 2, 4))
    for c in part.classes:
        assert c.representative == min(c.members)
        for m in c.members:
            assert conjugate_matrix(candidate_matrix(6, c.representative), c.witnesses[m]) == candidate_matrix(6, m)
    j = part.to_json()
    assert j["bound"] == 50 and j["search"] == "bounded"


def test_partition_n3_matches_oracle():
    part = class_representatives(3, 50)
    a, b = (candidate_matrix(3, x) for x in candidate_parameters(3))
    expect = 1 if det_oracle_equivalent(a, b, 50) else 2
    assert len(part.classes) == expect == 1


def test_bound_from_env(monkeypatch):
    monkeypatch.setenv("SOL_BRAVAIS_BOUND", "7")
    assert default_bound() == 7
    assert equivalence_search(A, A).bound == 7
    monkeypatch.setenv("SOL_BRAVAIS_BOUND", "x")
    with pytest.raises(InvalidParameter):
        default_bound()
    monkeypatch.delenv("SOL_BRAVAIS_BOUND")
    assert default_bound() == 50

"""numba and numpy kernels must agree exactly (scan) or to rounding (floats)."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sol_bravais import _kernels as K
from sol_bravais.equivalence import candidate_matrix, candidate_parameters

pytestmark = pytest.mark.skipif(K.numba is None, reason="numba not installed")

floats = st.floats(-3, 3, allow_nan=False)


@pytest.mark.parametrize("N", [3, 6, 10])
def test_scan_agrees(N):
    cands = [candidate_matrix(N, c).as_tuple() for c in candidate_parameters(N)]
    for a in cands:
        for b in cands:
            x = sorted(map(tuple, K.np_conjugators(a, b, 12).tolist()))
            y = sorted(map(tuple, K.nb_conjugators(a, b, 12).tolist()))
            assert x == y


@settings(max_examples=50)
@given(st.tuples(floats, floats, floats), floats, floats, st.floats(-2, 2, allow_nan=False))
def test_curve_agrees(start, a, b, c):
    ts = np.linspace(0, 1, 17)
    np.testing.assert_allclose(K.np_curve(start, a, b, c, ts), K.nb_curve(start, a, b, c, ts), rtol=1e-13, atol=1e-13)


def test_sweep_and_length_agree():
    edge = np.column_stack([np.linspace(0, 1, 9), np.linspace(0, 2, 9), np.zeros(9)])
    ts = np.linspace(0, 1, 11)
    A = K.np_sweep(edge, 0.5, -0.3, 1.2, ts)
    B = K.nb_sweep(edge, 0.5, -0.3, 1.2, ts)
    np.testing.assert_allclose(A, B, rtol=1e-13, atol=1e-13)
    assert abs(K.np_arclength(A[3]) - K.nb_arclength(A[3])) < 1e-12


def test_env_switch(monkeypatch):
    monkeypatch.setenv("SOL_BRAVAIS_NUMBA", "0")
    assert K.backend() == "numpy"
    monkeypatch.setenv("SOL_BRAVAIS_NUMBA", "1")
    assert K.backend() == "numba"

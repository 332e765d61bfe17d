import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sol_bravais.equivalence import candidate_parameters
from sol_bravais.lattice import canonical_basis
from sol_bravais.quadfield import FieldContext
from sol_bravais.solgroup import SolTranslation

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

Ns = st.integers(min_value=3, max_value=12)

rationals = st.builds(Fraction, st.integers(-24, 24), st.integers(1, 9))
nonzero_rationals = rationals.filter(bool)


@st.composite
def quads(draw, ctx=None):
    ctx = ctx or FieldContext(draw(Ns))
    return ctx(draw(rationals), draw(rationals))


@st.composite
def quad_pairs(draw):
    ctx = FieldContext(draw(Ns))
    return ctx(draw(rationals), draw(rationals)), ctx(draw(rationals), draw(rationals))


def translation_in(ctx, draw, kmax=3):
    return SolTranslation(ctx(draw(rationals), draw(rationals)), ctx(draw(rationals), draw(rationals)),
                          draw(st.integers(-kmax, kmax)))


@st.composite
def translations(draw, n=1, kmax=3):
    ctx = FieldContext(draw(Ns))
    out = [translation_in(ctx, draw, kmax) for _ in range(n)]
    return out[0] if n == 1 else out


@st.composite
def lattices(draw, with_offset=True):
    """canonical_basis over every candidate (N, p, q) with a random rational mu and offset."""
    N = draw(Ns)
    p, q, _ = draw(st.sampled_from(candidate_parameters(N)))
    mu = draw(nonzero_rationals)
    L = canonical_basis(N, p, q, mu=mu)
    if with_offset:
        small = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 6))
        L = L.with_offset_coords(draw(small), draw(small))
    return L


_GENS = ((1, 1, 0, 1), (1, -1, 0, 1), (1, 0, 1, 1), (1, 0, -1, 1), (0, -1, 1, 0), (1, 0, 0, -1))


def _mul(a, b):
    return (a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3])


@st.composite
def _unimodular(draw, length=5):
    m = (1, 0, 0, 1)
    for g in draw(st.lists(st.sampled_from(_GENS), max_size=length)):
        m = _mul(m, g)
    return m


# GL2(Z) elements as words in elementary generators
unimodular = _unimodular()


@pytest.fixture
def ctx6():
    return FieldContext(6)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    rows = getattr(mod, "ACCEPTANCE", None)
    if not rows:
        return
    terminalreporter.section("acceptance")
    for k, ok, detail in sorted(rows):
        terminalreporter.write_line(mod.line(k, ok, detail))

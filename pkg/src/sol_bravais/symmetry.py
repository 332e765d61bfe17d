"""Point groups, centering, z-sublattices and integrality certificates."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InconsistentLattice, NotApplicable
from .lattice import (
    SolLattice,
    _kill_witness,
    base_coordinates,
    base_membership,
    combine,
    from_translations,
    is_case_one,
    lattice_membership,
    solve_integer_line,
)
from .quadfield import QuadNum, Sign
from .solgroup import PointIsometry as G
from .solgroup import SolTranslation, apply_to_base, compose, conjugate_by

REFLECTIONS = (G.DELTA_R, G.DELTA_RBAR)


class PointGroup(enum.Enum):
    ID = "Id"
    C2 = "C2"
    DR = "Dr"
    DRBAR = "Drbar"
    D2BAR = "D2bar"
    C4 = "C4"

    @property
    def label(self) -> str:
        return self.value

    @property
    def elements(self) -> frozenset:
        return _ELEMENTS[self]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def family(self) -> str:
        """Dr and Drbar classify together."""
        return "Dr" if self is PointGroup.DRBAR else self.value


_ELEMENTS = {
    PointGroup.ID: frozenset({G.ID}),
    PointGroup.C2: frozenset({G.ID, G.GAMMA2}),
    PointGroup.DR: frozenset({G.ID, G.DELTA_R}),
    PointGroup.DRBAR: frozenset({G.ID, G.DELTA_RBAR}),
    PointGroup.D2BAR: frozenset({G.ID, G.GAMMA2, G.DELTA_R, G.DELTA_RBAR}),
    PointGroup.C4: frozenset({G.ID, G.GAMMA2, G.GAMMA4, G.GAMMA4_INV}),
}


class Centering(enum.Enum):
    CENTRED = "centred"
    PRIMITIVE = "primitive"
    NONE = "none"


def is_symmetry(g: G, L: SolLattice) -> bool:
    for tau in (L.tau1, L.tau2, L.tau3):
        img = conjugate_by(g, tau)
        if tau.k and g.flips_z:
            # tau3^g has k = -1; multiply back into the base plane
            if base_membership(compose(img, L.tau3), L) is None:
                return False
        elif lattice_membership(img, L) is None:
            return False
    return True


def symmetry_flags(L: SolLattice) -> dict[G, bool]:
    return {g: (g is G.ID or is_symmetry(g, L)) for g in G}


def point_group(L: SolLattice) -> PointGroup:
    flags = symmetry_flags(L)
    present = frozenset(g for g, ok in flags.items() if ok)
    if G.SIGMA_X in present or G.SIGMA_Y in present:
        raise InconsistentLattice("lattice admits a reflection sigma_x or sigma_y")
    for pg in PointGroup:
        if pg.elements == present:
            return pg
    raise InconsistentLattice(f"symmetries {sorted(g.label for g in present)} form no allowed group")


# Tests that do not depend on the chosen offset representative.

def _offset_line_hit(L: SolLattice, c: QuadNum) -> bool:
    """Is there w in the base lattice with (o + w).y = c (o + w).x ?"""
    def f(v):
        return v[1] - c * v[0]
    A = f(L.offset)
    B = f((L.tau1.x, L.tau1.y))
    C = f((L.tau2.x, L.tau2.y))
    # A + m B + n C = 0 splits into rational and sqrt(D) parts
    det = B.a * C.b - C.a * B.b
    if det:
        m = (-A.a * C.b + C.a * A.b) / det
        n = (-B.a * A.b + A.a * B.b) / det
        return m.denominator == 1 and n.denominator == 1
    rows = [(B.a, C.a, -A.a), (B.b, C.b, -A.b)]
    if any(not r[0] and not r[1] and r[2] for r in rows):
        return False
    rows = [r for r in rows if r[0] or r[1]]
    if not rows:
        return True
    b1, b2, rhs = rows[0]
    for other in rows[1:]:
        # proportional coefficient rows must have proportional right-hand sides
        scale = other[0] / b1 if b1 else other[1] / b2
        if other[2] != scale * rhs:
            return False
    return solve_integer_line(Fraction(b1), Fraction(b2), Fraction(rhs))


def _z_ratio(g: G, L: SolLattice) -> QuadNum:
    lam2 = L.ctx.lam * L.ctx.lam
    return lam2 if g is G.DELTA_R else -lam2


def _zero_ratio(g: G, L: SolLattice) -> QuadNum:
    return -L.ctx.lam if g is G.DELTA_R else L.ctx.lam


def z_sublattice_exists(L: SolLattice, pg: PointGroup | None = None) -> bool:
    if is_case_one(L):
        return True
    pg = pg or point_group(L)
    return any(_offset_line_hit(L, _z_ratio(g, L)) for g in REFLECTIONS if g in pg.elements)


def reflection_kills_tau3(L: SolLattice, pg: PointGroup | None = None) -> bool:
    """Some representative offset has (tau3^delta) tau3 = identity."""
    if is_case_one(L):
        return False
    pg = pg or point_group(L)
    return any(_offset_line_hit(L, _zero_ratio(g, L)) for g in REFLECTIONS if g in pg.elements)


@dataclass(frozen=True)
class AxisVectors:
    r: tuple[int, int] | None
    rbar: tuple[int, int] | None

    @property
    def index(self) -> int | None:
        if self.r is None or self.rbar is None:
            return None
        return abs(self.r[0] * self.rbar[1] - self.r[1] * self.rbar[0])


def axis_vectors(L: SolLattice) -> AxisVectors:
    t1, t2 = L.tau1, L.tau2
    r = _kill_witness(t1.x - t1.y, t2.x - t2.y)
    rbar = _kill_witness(t1.x + t1.y, t2.x + t2.y)
    return AxisVectors(r, rbar)


def centering(L: SolLattice) -> Centering:
    idx = axis_vectors(L).index
    if idx == 2:
        return Centering.CENTRED
    if idx == 1:
        return Centering.PRIMITIVE
    return Centering.NONE


# Certificates.

class CertificateKind(enum.Enum):
    CENTRED_DR = "CentredDr"
    PRIMITIVE_DR = "PrimitiveDr"
    CENTRED_C2 = "CentredC2"
    PRIMITIVE_C2 = "PrimitiveC2"
    C2 = "C2"
    C4 = "C4"


_NAMES = {
    CertificateKind.CENTRED_DR: ("alpha", "beta", "gamma", "delta"),
    CertificateKind.CENTRED_C2: ("gamma", "delta"),
    CertificateKind.PRIMITIVE_DR: ("alpha_bar", "beta_bar", "gamma_bar", "delta_bar"),
    CertificateKind.PRIMITIVE_C2: ("gamma_bar", "delta_bar"),
    CertificateKind.C2: ("gamma", "delta"),
    CertificateKind.C4: ("epsilon", "phi", "psi", "chi"),
}


@dataclass
class IntegralityCertificate:
    kind: CertificateKind
    coefficients: dict  # name -> int, or None when not integral
    conditions: dict = field(default_factory=dict)
    basis: SolLattice | None = None
    mirrored: bool = False

    def values(self) -> tuple:
        return tuple(self.coefficients[n] for n in _NAMES[self.kind])

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, **self.coefficients, "conditions": dict(self.conditions)}
        if self.mirrored:
            out["mirrored"] = True
        return out


def _int_or_none(x: QuadNum):
    return int(x.a) if x.is_integer() else None


def _oriented(vec, positive_axis: int):
    """Flip so that the chosen coordinate is positive."""
    if vec[positive_axis].sign() is Sign.NEGATIVE:
        return (-vec[0], -vec[1])
    return vec


def _rebuild(L: SolLattice, v1, v2) -> SolLattice:
    ctx = L.ctx
    return from_translations(
        SolTranslation(v1[0], v1[1], 0), SolTranslation(v2[0], v2[1], 0), L.tau3
    )


def normal_centred_basis(L: SolLattice) -> SolLattice:
    """Basis (t, delta_r t) of a centred base lattice."""
    ax = axis_vectors(L)
    if ax.index != 2:
        raise NotApplicable("base lattice is not centred")
    vr = _oriented(combine(L, *ax.r), 0)
    vb = _oriented(combine(L, *ax.rbar), 1)
    half = Fraction(1, 2)
    t1 = ((vr[0] - vb[0]) * half, (vr[1] - vb[1]) * half)
    t2 = apply_to_base(G.DELTA_R, t1)
    return _rebuild(L, t1, t2)


def normal_primitive_basis(L: SolLattice) -> SolLattice:
    """Basis (v_r, v_rbar) with v_r = (t, t), t > 0 and v_rbar = (-s, s), s > 0."""
    ax = axis_vectors(L)
    if ax.index != 1:
        raise NotApplicable("base lattice is not primitive")
    vr = _oriented(combine(L, *ax.r), 0)
    vb = _oriented(combine(L, *ax.rbar), 1)
    return _rebuild(L, vr, vb)


def _gauss_reduce(a: int, b: int, c: int):
    """Reduce a positive definite a m^2 + b mn + c n^2; returns the form and basis change."""
    M = [[1, 0], [0, 1]]
    while True:
        k = (a - b) // (2 * a)
        if k:
            # (m, n) -> (m + k n, n)
            a, b, c = a, 2 * a * k + b, a * k * k + b * k + c
            M = [[M[0][0], M[0][0] * k + M[0][1]], [M[1][0], M[1][0] * k + M[1][1]]]
        if a > c:
            a, b, c = c, -b, a
            M = [[M[0][1], -M[0][0]], [M[1][1], -M[1][0]]]
            continue
        return (a, b, c), M


def normal_c4_basis(L: SolLattice) -> SolLattice:
    """Basis (t, gamma4 t) of a quarter-turn invariant base lattice."""
    rot = []
    for tau in (L.tau1, L.tau2):
        img = apply_to_base(G.GAMMA4, (tau.x, tau.y))
        mn = base_membership(img, L)
        if mn is None:
            raise NotApplicable("base lattice is not invariant under the quarter turn")
        rot.append(mn)
    (a, b), (c, d) = rot
    # det[v, R v] as a form in the coefficients of v
    A, B, C = b, d - a, -c
    sign = 1 if A > 0 else -1
    (ra, _, _), M = _gauss_reduce(sign * A, sign * B, sign * C)
    if ra != 1:
        raise InconsistentLattice("quarter-turn form does not represent 1")
    v = combine(L, M[0][0], M[1][0])
    for _ in range(4):
        if v[0].sign() is Sign.POSITIVE and v[1].sign() is Sign.POSITIVE:
            break
        v = apply_to_base(G.GAMMA4, v)
    return _rebuild(L, v, apply_to_base(G.GAMMA4, v))


def mirror(L: SolLattice) -> SolLattice:
    """Image under sigma_x; swaps the roles of delta_r and delta_rbar."""
    t1, t2, t3 = (conjugate_by(G.SIGMA_X, t) for t in (L.tau1, L.tau2, L.tau3))
    return from_translations(t1, t2, t3)


def reflected_tau3_word(g: G, L: SolLattice):
    """Base part of (tau3^g) tau3."""
    w = compose(conjugate_by(g, L.tau3), L.tau3)
    return (w.x, w.y)


def _coords(v, B: SolLattice):
    m, n = base_coordinates(v, B)
    return _int_or_none(m), _int_or_none(n)


def certificate(L: SolLattice, pg: PointGroup | None = None) -> IntegralityCertificate:
    """Integer coefficients of the symmetry words in a normalized base basis.

    The offset used is the lattice's own tau3, not a reduced representative,
    so the numbers match the construction that produced L.
    """
    pg = pg or point_group(L)
    if pg is PointGroup.ID:
        raise NotApplicable("trivial point group carries no certificate")
    two_o = (L.tau3.x * 2, L.tau3.y * 2)
    if pg is PointGroup.C4:
        B = normal_c4_basis(L)
        eps, ph = _coords(reflected_tau3_word(G.GAMMA4, B), B)
        psi, chi = _coords(two_o, B)
        p, q = B.phi.p, B.phi.q
        N = L.N
        conds = {
            "qq_plus_1_eq_p_times_N_minus_p": q * q + 1 == p * (N - p),
            "phi_zero": ph == 0,
        }
        if None not in (eps, psi, chi):
            # the closed-form ratios eps : psi : chi = 2 : 1 - q : p - N
            conds["ratios_eps_psi_chi"] = eps * (1 - q) == 2 * psi and eps * (p - N) == 2 * chi
            conds["ratios_eps_half_psi_chi"] = eps * (1 - q) == psi and eps * (p - N) == chi
        return IntegralityCertificate(
            CertificateKind.C4, {"epsilon": eps, "phi": ph, "psi": psi, "chi": chi}, conds, B
        )
    mirrored = False
    if pg is PointGroup.DRBAR:
        L, pg, mirrored = mirror(L), PointGroup.DR, True
    cen = centering(L)
    has_dr = G.DELTA_R in pg.elements
    if cen is Centering.CENTRED:
        B = normal_centred_basis(L)
        gam, dlt = _coords(two_o, B)
        N = L.N
        if has_dr:
            al, be = _coords(reflected_tau3_word(G.DELTA_R, B), B)
            conds = {"alpha_zero": al == 0}
            if None not in (be, gam, dlt):
                conds["gammaN_plus_2delta_eq_2beta"] = gam * N + 2 * dlt == 2 * be
                conds["2delta_eq_N_gamma"] = 2 * dlt == N * gam
                conds["2delta_eq_minus_N_gamma"] = 2 * dlt == -N * gam
            return IntegralityCertificate(
                CertificateKind.CENTRED_DR,
                {"alpha": al, "beta": be, "gamma": gam, "delta": dlt},
                conds, B, mirrored,
            )
        return IntegralityCertificate(
            CertificateKind.CENTRED_C2, {"gamma": gam, "delta": dlt}, {}, B
        )
    if cen is Centering.PRIMITIVE:
        B = normal_primitive_basis(L)
        gb, db = _coords(two_o, B)
        p, q = B.phi.p, B.phi.q
        if has_dr:
            ab, bb = _coords(reflected_tau3_word(G.DELTA_R, B), B)
            conds = {}
            if None not in (ab, bb):
                conds["alpha_bar_q_eq_beta_bar_p_plus_1"] = ab * q == bb * (p + 1)
            if None not in (ab, gb, db):
                conds["q_gamma_bar_relation"] = q * (gb * (p + 1) - ab) == db * (p - 1) * (p + 1)
            if None not in (gb, db):
                conds["gamma_bar_q_eq_delta_bar_p_minus_1"] = gb * q == db * (p - 1)
            return IntegralityCertificate(
                CertificateKind.PRIMITIVE_DR,
                {"alpha_bar": ab, "beta_bar": bb, "gamma_bar": gb, "delta_bar": db},
                conds, B, mirrored,
            )
        return IntegralityCertificate(
            CertificateKind.PRIMITIVE_C2, {"gamma_bar": gb, "delta_bar": db}, {}, B
        )
    if has_dr:
        raise InconsistentLattice("reflection-symmetric lattice without lattice vectors on both axes")
    gam, dlt = _coords(two_o, L)
    return IntegralityCertificate(CertificateKind.C2, {"gamma": gam, "delta": dlt}, {}, L)

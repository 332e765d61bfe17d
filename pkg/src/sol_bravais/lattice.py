"""Sol lattices: construction from (N, p, q), membership, presentation checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import (
    DegenerateBasis,
    InvalidParameter,
    IsotropicLattice,
    NotALatticeParameter,
    NotRegular,
    ValidationError,
)
from .quadfield import FieldContext, QuadNum
from .solgroup import SolTranslation, compose, commutator, invert, power

Vec = tuple[QuadNum, QuadNum]


@dataclass(frozen=True)
class LatticeMatrix:
    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        for name in ("p", "q", "r", "s"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise InvalidParameter(f"{name} must be an integer, got {v!r}")

    @property
    def det(self) -> int:
        return self.p * self.s - self.q * self.r

    @property
    def trace(self) -> int:
        return self.p + self.s

    def validate(self):
        if self.det != 1:
            raise ValidationError(
                f"ps - qr = {self.det}, expected 1", invariant="ps - qr = 1"
            )
        if self.trace < 3:
            raise ValidationError(
                f"trace p + s = {self.trace}, expected >= 3", invariant="p + s = N >= 3"
            )
        return self

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.p, self.q, self.r, self.s)

    def __str__(self) -> str:
        return f"({self.p},{self.q};{self.r},{self.s})"


@dataclass(frozen=True)
class BasisMatrix:
    t11: QuadNum
    t12: QuadNum
    t21: QuadNum
    t22: QuadNum

    @property
    def det(self) -> QuadNum:
        return self.t11 * self.t22 - self.t12 * self.t21

    @classmethod
    def from_vectors(cls, v1: Vec, v2: Vec) -> BasisMatrix:
        return cls(v1[0], v1[1], v2[0], v2[1])


@dataclass(frozen=True)
class SolLattice:
    ctx: FieldContext
    tau1: SolTranslation
    tau2: SolTranslation
    tau3: SolTranslation
    phi: LatticeMatrix

    @property
    def N(self) -> int:
        return self.ctx.N

    @property
    def offset(self) -> Vec:
        return (self.tau3.x, self.tau3.y)

    @property
    def basis(self) -> BasisMatrix:
        return BasisMatrix(self.tau1.x, self.tau1.y, self.tau2.x, self.tau2.y)

    def with_offset(self, ox, oy) -> SolLattice:
        ox = ox if isinstance(ox, QuadNum) else self.ctx(ox)
        oy = oy if isinstance(oy, QuadNum) else self.ctx(oy)
        return SolLattice(self.ctx, self.tau1, self.tau2, SolTranslation(ox, oy, 1), self.phi)

    def with_offset_coords(self, m, n) -> SolLattice:
        """Offset m*tau1 + n*tau2 for rational or field coefficients m, n."""
        ox, oy = combine(self, m, n)
        return self.with_offset(ox, oy)

    def scaled(self, c) -> SolLattice:
        """Multiply every base coordinate (offset included) by c."""
        def sc(t: SolTranslation) -> SolTranslation:
            return SolTranslation(t.x * c, t.y * c, t.k)
        return SolLattice(self.ctx, sc(self.tau1), sc(self.tau2), sc(self.tau3), self.phi)

    def rebased(self, a: int, b: int, c: int, d: int) -> SolLattice:
        """New base vectors a*tau1 + b*tau2 and c*tau1 + d*tau2 (ad - bc = +-1)."""
        if a * d - b * c not in (1, -1):
            raise InvalidParameter("rebasing matrix is not unimodular")
        v1 = combine(self, a, b)
        v2 = combine(self, c, d)
        tau1 = SolTranslation(v1[0], v1[1], 0)
        tau2 = SolTranslation(v2[0], v2[1], 0)
        return from_translations(tau1, tau2, self.tau3)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "phi": list(self.phi.as_tuple()),
            "tau1": self.tau1.to_json(),
            "tau2": self.tau2.to_json(),
            "tau3": self.tau3.to_json(),
        }


def combine(L: SolLattice, m, n) -> Vec:
    return (L.tau1.x * m + L.tau2.x * n, L.tau1.y * m + L.tau2.y * n)


def _check_params(N: int, p: int, q: int) -> int:
    if q <= 0:
        raise NotALatticeParameter(f"q must be positive, got {q}")
    if not 0 <= p <= N // 2:
        raise NotALatticeParameter(f"p must lie in [0, {N // 2}], got {p}")
    num = p * (N - p) - 1
    if num % q:
        raise NotALatticeParameter(f"q = {q} does not divide p(N - p) - 1 = {num}")
    return num // q


def canonical_basis(N: int, p: int, q: int, mu=2) -> SolLattice:
    """tau1 = (1, mu), tau2 from the eigen-ratios of Phi = (p q; r N-p)."""
    ctx = FieldContext(N)
    r = _check_params(N, p, q)
    mu = mu if isinstance(mu, QuadNum) else ctx(mu)
    if not mu:
        raise DegenerateBasis("mu = 0 collapses tau1 onto the x-axis")
    root = ctx.sqrt_d
    tau1 = SolTranslation(ctx.one, mu, 0)
    tau2 = SolTranslation(
        (ctx(N - 2 * p) - root) / (2 * q),
        mu * (ctx(N - 2 * p) + root) / (2 * q),
        0,
    )
    L = SolLattice(ctx, tau1, tau2, SolTranslation(ctx.zero, ctx.zero, 1),
                   LatticeMatrix(p, q, r, N - p))
    report = verify_presentation(L)
    assert report.ok, report.failures
    isotropy_check(L)
    return L


def _solve2(a11, a12, a21, a22, b1, b2):
    det = a11 * a22 - a12 * a21
    return (b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det


def phi_from_basis(T: BasisMatrix, ctx: FieldContext) -> LatticeMatrix:
    """Phi = T diag(1/lambda, lambda) T^-1, required to be integral."""
    det = T.det
    if not det:
        raise DegenerateBasis("base vectors are linearly dependent")
    li, l = ctx.lam_inv, ctx.lam
    # rows of T * diag, then times adj(T) / det
    a11, a12 = T.t11 * li, T.t12 * l
    a21, a22 = T.t21 * li, T.t22 * l
    entries = [
        (a11 * T.t22 - a12 * T.t21) / det,
        (-a11 * T.t12 + a12 * T.t11) / det,
        (a21 * T.t22 - a22 * T.t21) / det,
        (-a21 * T.t12 + a22 * T.t11) / det,
    ]
    if not all(e.is_integer() for e in entries):
        raise NotRegular("T diag(1/lambda, lambda) T^-1 is not integral: "
                         + ", ".join(str(e) for e in entries))
    return LatticeMatrix(*(int(e.a) for e in entries))


def from_translations(tau1: SolTranslation, tau2: SolTranslation,
                      tau3: SolTranslation) -> SolLattice:
    ctx = tau1.ctx
    if tau1.k or tau2.k:
        raise ValidationError("tau1 and tau2 must lie in the base plane", invariant="t1^3 = t2^3 = 0")
    if tau3.k != 1:
        raise ValidationError("tau3 must have k = 1", invariant="tau3.k = 1")
    phi = phi_from_basis(BasisMatrix(tau1.x, tau1.y, tau2.x, tau2.y), ctx)
    return SolLattice(ctx, tau1, tau2, tau3, phi)


def base_coordinates(v: Vec, L: SolLattice) -> tuple[QuadNum, QuadNum]:
    """Field coefficients (m, n) with v = m*tau1 + n*tau2."""
    return _solve2(L.tau1.x, L.tau2.x, L.tau1.y, L.tau2.y, v[0], v[1])


def base_membership(v, L: SolLattice) -> tuple[int, int] | None:
    if isinstance(v, SolTranslation):
        if v.k != 0:
            raise InvalidParameter("base membership needs k = 0")
        v = (v.x, v.y)
    m, n = base_coordinates(v, L)
    if m.is_integer() and n.is_integer():
        return (int(m.a), int(n.a))
    return None


def lattice_membership(g: SolTranslation, L: SolLattice) -> tuple[int, int, int] | None:
    """(m, n, k) with g = tau1^m tau2^n tau3^k, or None."""
    h = compose(g, power(L.tau3, -g.k))
    assert h.k == 0
    mn = base_membership(h, L)
    if mn is None:
        return None
    return (mn[0], mn[1], g.k)


@dataclass
class PresentationReport:
    ok: bool = True
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, name: str, passed: bool, detail: str = ""):
        self.checks[name] = passed
        if not passed:
            self.ok = False
            self.failures.append(f"{name}: {detail}" if detail else name)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "failures": self.failures}


def verify_presentation(L: SolLattice) -> PresentationReport:
    rep = PresentationReport()
    ctx = L.ctx
    phi = L.phi
    rep.record("det_phi", phi.det == 1, f"ps - qr = {phi.det}")
    rep.record("trace_phi", phi.trace == ctx.N, f"p + s = {phi.trace}, N = {ctx.N}")
    rep.record("base_plane", L.tau1.k == 0 and L.tau2.k == 0 and L.tau3.k == 1)
    rep.record("independent", bool(L.basis.det), "x1 y2 - x2 y1 = 0")
    if not rep.checks["independent"] or not rep.checks["base_plane"]:
        return rep
    rep.record("commutator", commutator(L.tau1, L.tau2).is_identity())
    t3i = invert(L.tau3)
    for name, tau, (a, b) in (
        ("conj_tau1", L.tau1, (phi.p, phi.q)),
        ("conj_tau2", L.tau2, (phi.r, phi.s)),
    ):
        lhs = compose(compose(t3i, tau), L.tau3)
        rx = L.tau1.x * a + L.tau2.x * b
        ry = L.tau1.y * a + L.tau2.y * b
        rep.record(name, lhs.k == 0 and lhs.x == rx and lhs.y == ry,
                   f"tau3^-1 tau tau3 = {lhs}, expected {a} tau1 + {b} tau2")
    # T^-1 Phi T = diag(1/lambda, lambda)
    T = L.basis
    det = T.det
    inv = ((T.t22 / det, -T.t12 / det), (-T.t21 / det, T.t11 / det))
    P = ((ctx(phi.p), ctx(phi.q)), (ctx(phi.r), ctx(phi.s)))
    Tm = ((T.t11, T.t12), (T.t21, T.t22))
    PT = [[P[i][0] * Tm[0][j] + P[i][1] * Tm[1][j] for j in range(2)] for i in range(2)]
    M = [[inv[i][0] * PT[0][j] + inv[i][1] * PT[1][j] for j in range(2)] for i in range(2)]
    diag_ok = M[0][0] == ctx.lam_inv and M[1][1] == ctx.lam and not M[0][1] and not M[1][0]
    rep.record("eigen_diagonal", diag_ok, f"T^-1 Phi T = {[[str(e) for e in r] for r in M]}")
    rep.record("cosh_trace", ctx.lam + ctx.lam_inv == ctx.N)
    return rep


def _rational_ratio(num: QuadNum, den: QuadNum) -> Fraction | None:
    if not den:
        return None
    ratio = num / den
    return ratio.a if ratio.is_rational() else None


def _kill_witness(c1: QuadNum, c2: QuadNum) -> tuple[int, int] | None:
    """Primitive nonzero (m, n) with m*c1 + n*c2 = 0, if one exists."""
    if not c1:
        return (1, 0)
    if not c2:
        return (0, 1)
    ratio = _rational_ratio(c2, c1)
    if ratio is None:
        return None
    # c2 = (P/Q) c1  =>  -P*c1 + Q*c2 = 0
    return (-ratio.numerator, ratio.denominator)


def isotropy_witness(L: SolLattice) -> tuple[tuple[int, int], str] | None:
    w = _kill_witness(L.tau1.y, L.tau2.y)
    if w is not None:
        return w, "e1"
    w = _kill_witness(L.tau1.x, L.tau2.x)
    if w is not None:
        return w, "e2"
    return None


def isotropy_check(L: SolLattice) -> bool:
    found = isotropy_witness(L)
    if found is not None:
        (m, n), axis = found
        raise IsotropicLattice(
            f"{m} tau1 + {n} tau2 is proportional to {axis}", witness=(m, n), axis=axis
        )
    return True


def reduce_offset(v: Vec, L: SolLattice) -> Vec:
    m, n = base_coordinates(v, L)
    m = m - m.floor()
    n = n - n.floor()
    return combine(L, m, n)


def reduced_offset_coords(L: SolLattice) -> tuple[QuadNum, QuadNum]:
    m, n = base_coordinates(L.offset, L)
    return m - m.floor(), n - n.floor()


def is_case_one(L: SolLattice) -> bool:
    return base_membership(L.offset, L) is not None


def rotated_form(ctx: FieldContext) -> list[list[QuadNum]]:
    """diag(1/lambda, lambda) in the 45-degree rotated basis."""
    # R = (1 1; -1 1)/sqrt2; the sqrt2 factors cancel in R^-1 A R
    R = ((ctx(1), ctx(1)), (ctx(-1), ctx(1)))
    Rinv = ((ctx(Fraction(1, 2)), ctx(Fraction(-1, 2))), (ctx(Fraction(1, 2)), ctx(Fraction(1, 2))))
    A = ((ctx.lam_inv, ctx.zero), (ctx.zero, ctx.lam))
    AR = [[A[i][0] * R[0][j] + A[i][1] * R[1][j] for j in range(2)] for i in range(2)]
    return [[Rinv[i][0] * AR[0][j] + Rinv[i][1] * AR[1][j] for j in range(2)] for i in range(2)]


def rotated_basis_check(L: SolLattice) -> bool:
    ctx = L.ctx
    M = rotated_form(ctx)
    cosh = ctx(Fraction(ctx.N, 2))
    sinh = ctx(0, Fraction(1, 2))
    symmetric = M[0][1] == M[1][0]
    entries = M[0][0] == cosh and M[1][1] == cosh and abs(M[0][1]) == sinh
    trace = M[0][0] + M[1][1] == ctx.N
    # Phi is basis-independent: recompute it from the rotated coordinates
    def rot(t):
        return (t.x - t.y, t.x + t.y)
    a, b = rot(L.tau1), rot(L.tau2)
    T = BasisMatrix(a[0], a[1], b[0], b[1])
    det = T.det
    inv = ((T.t22 / det, -T.t12 / det), (-T.t21 / det, T.t11 / det))
    Tm = ((T.t11, T.t12), (T.t21, T.t22))
    TM = [[Tm[i][0] * M[0][j] + Tm[i][1] * M[1][j] for j in range(2)] for i in range(2)]
    P = [[TM[i][0] * inv[0][j] + TM[i][1] * inv[1][j] for j in range(2)] for i in range(2)]
    same_phi = [P[0][0], P[0][1], P[1][0], P[1][1]] == [ctx(e) for e in L.phi.as_tuple()]
    return symmetric and entries and trace and same_phi


# Standard base shapes.

def centred_base(N: int) -> SolLattice:
    """tau1 = (lambda, 1), tau2 = (1, lambda), the delta_r-image of tau1."""
    ctx = FieldContext(N)
    L = canonical_basis(N, 0, 1, mu=ctx.lam_inv)
    return L.scaled(ctx.lam)


def primitive_bases(N: int) -> list[SolLattice]:
    """tau1 on r, tau2 on rbar; needs N = 2p and one lattice per divisor q of p^2 - 1."""
    if N % 2:
        return []
    p = N // 2
    return [canonical_basis(N, p, q, mu=1) for q in _divisors(p * p - 1)]


def c4_parameters(N: int) -> list[tuple[int, int]]:
    out = []
    for p in range(0, N // 2 + 1):
        m = p * (N - p) - 1
        if m <= 0:
            continue
        q = _isqrt_exact(m)
        if q is not None:
            out.append((p, q))
    return out


def c4_base(N: int, p: int, q: int) -> SolLattice:
    """tau2 is the quarter-turn image (-y, x) of tau1; needs q^2 = p(N-p) - 1."""
    ctx = FieldContext(N)
    if q * q != p * (N - p) - 1:
        raise NotALatticeParameter(f"q^2 = {q * q} differs from p(N-p) - 1 = {p * (N - p) - 1}")
    mu = (ctx.sqrt_d - (N - 2 * p)) / (2 * q)
    return canonical_basis(N, p, q, mu=mu)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def _isqrt_exact(m: int) -> int | None:
    from math import isqrt
    r = isqrt(m)
    return r if r * r == m else None


def solve_integer_line(b1: Fraction, b2: Fraction, rhs: Fraction) -> bool:
    """Whether b1*m + b2*n = rhs has an integer solution."""
    den = 1
    for v in (b1, b2, rhs):
        den = den * v.denominator // gcd(den, v.denominator)
    i1, i2, ir = int(b1 * den), int(b2 * den), int(rhs * den)
    g = gcd(i1, i2)
    if g == 0:
        return ir == 0
    return ir % g == 0

"""Sol group law on translations (x, y, k) with z = k * log(lambda).

Multiplication follows (a, b, c)(x, y, z) = (x + a e^-z, y + b e^z, z + c):
the left factor is the point, the right factor the translation applied to it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ContextMismatch, InvalidParameter
from .quadfield import FieldContext, QuadNum


@dataclass(frozen=True)
class SolTranslation:
    x: QuadNum
    y: QuadNum
    k: int

    def __post_init__(self):
        if self.x.ctx is not self.y.ctx:
            raise ContextMismatch("x and y live in different fields")
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise InvalidParameter(f"k must be an integer, got {self.k!r}")

    @property
    def ctx(self) -> FieldContext:
        return self.x.ctx

    @classmethod
    def of(cls, ctx: FieldContext, x=0, y=0, k: int = 0) -> SolTranslation:
        if not isinstance(x, QuadNum):
            x = ctx(x)
        if not isinstance(y, QuadNum):
            y = ctx(y)
        return cls(x, y, k)

    @classmethod
    def identity(cls, ctx: FieldContext) -> SolTranslation:
        return cls(ctx.zero, ctx.zero, 0)

    def is_identity(self) -> bool:
        return self.k == 0 and not self.x and not self.y

    @property
    def base(self) -> tuple[QuadNum, QuadNum]:
        return (self.x, self.y)

    def __str__(self) -> str:
        return f"({self.x}, {self.y}, {self.k})"

    def to_json(self) -> dict:
        return {"x": self.x.to_json(), "y": self.y.to_json(), "k": self.k}

    @classmethod
    def from_json(cls, obj: dict, ctx: FieldContext) -> SolTranslation:
        try:
            k = obj["k"]
            x = QuadNum.from_json(obj["x"], ctx)
            y = QuadNum.from_json(obj["y"], ctx)
        except (KeyError, TypeError) as exc:
            raise InvalidParameter(f"malformed translation {obj!r}") from exc
        return cls(x, y, k)


def _same_ctx(t: SolTranslation, u: SolTranslation):
    if t.ctx is not u.ctx:
        raise ContextMismatch(f"N={t.ctx.N} vs N={u.ctx.N}")


def compose(t: SolTranslation, u: SolTranslation) -> SolTranslation:
    _same_ctx(t, u)
    ctx = t.ctx
    if u.k == 0:
        return SolTranslation(u.x + t.x, u.y + t.y, t.k)
    return SolTranslation(
        u.x + t.x * ctx.lam_pow(-u.k),
        u.y + t.y * ctx.lam_pow(u.k),
        t.k + u.k,
    )


def invert(t: SolTranslation) -> SolTranslation:
    ctx = t.ctx
    return SolTranslation(-t.x * ctx.lam_pow(t.k), -t.y * ctx.lam_pow(-t.k), -t.k)


def word(*factors: SolTranslation) -> SolTranslation:
    """Left-to-right product of the given translations."""
    if not factors:
        raise InvalidParameter("empty word has no context")
    acc = factors[0]
    for f in factors[1:]:
        acc = compose(acc, f)
    return acc


def commutator(t: SolTranslation, u: SolTranslation) -> SolTranslation:
    """t^-1 u^-1 t u, by its closed form."""
    _same_ctx(t, u)
    ctx = t.ctx
    one = ctx.one
    x = u.x * (one - ctx.lam_pow(-t.k)) + t.x * (ctx.lam_pow(-u.k) - one)
    y = u.y * (one - ctx.lam_pow(t.k)) + t.y * (ctx.lam_pow(u.k) - one)
    return SolTranslation(x, y, 0)


def _geometric(r: QuadNum, n: int) -> QuadNum:
    # 1 + r + ... + r^(n-1)
    total = r.ctx.zero
    term = r.ctx.one
    for _ in range(n):
        total = total + term
        term = term * r
    return total


def power(t: SolTranslation, n: int) -> SolTranslation:
    """t**n for any integer n via the partial geometric sums of lambda^-k."""
    ctx = t.ctx
    if n == 0:
        return SolTranslation.identity(ctx)
    if n < 0:
        return power(invert(t), -n)
    if t.k == 0:
        return SolTranslation(t.x * n, t.y * n, 0)
    sx = _geometric(ctx.lam_pow(-t.k), n)
    sy = _geometric(ctx.lam_pow(t.k), n)
    return SolTranslation(t.x * sx, t.y * sy, t.k * n)


class PointIsometry(enum.Enum):
    """The origin stabilizer, a copy of D4, acting by signed permutations."""

    ID = "Id"
    GAMMA2 = "gamma2"
    GAMMA4 = "gamma4"
    GAMMA4_INV = "gamma4_inv"
    DELTA_R = "delta_r"
    DELTA_RBAR = "delta_rbar"
    SIGMA_X = "sigma_x"
    SIGMA_Y = "sigma_y"

    @property
    def label(self) -> str:
        return self.value

    @classmethod
    def from_label(cls, label: str) -> PointIsometry:
        for g in cls:
            if g.value.lower() == label.lower():
                return g
        raise InvalidParameter(f"unknown point isometry {label!r}")

    @property
    def matrix(self) -> tuple[tuple[int, int, int], ...]:
        """Row-vector action: (x, y, z) @ M."""
        return _MATRICES[self]

    @property
    def flips_z(self) -> bool:
        return self.matrix[2][2] == -1

    def then(self, other: PointIsometry) -> PointIsometry:
        """Element acting as self first, then other."""
        a, b = self.matrix, other.matrix
        prod = tuple(
            tuple(sum(a[i][m] * b[m][j] for m in range(3)) for j in range(3))
            for i in range(3)
        )
        return _BY_MATRIX[prod]

    def inverse(self) -> PointIsometry:
        m = self.matrix
        return _BY_MATRIX[tuple(tuple(m[j][i] for j in range(3)) for i in range(3))]


_MATRICES = {
    PointIsometry.ID: ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    PointIsometry.GAMMA2: ((-1, 0, 0), (0, -1, 0), (0, 0, 1)),
    # (x, y, z) -> (-y, x, -z)
    PointIsometry.GAMMA4: ((0, 1, 0), (-1, 0, 0), (0, 0, -1)),
    PointIsometry.GAMMA4_INV: ((0, -1, 0), (1, 0, 0), (0, 0, -1)),
    PointIsometry.DELTA_R: ((0, 1, 0), (1, 0, 0), (0, 0, -1)),
    PointIsometry.DELTA_RBAR: ((0, -1, 0), (-1, 0, 0), (0, 0, -1)),
    PointIsometry.SIGMA_X: ((1, 0, 0), (0, -1, 0), (0, 0, 1)),
    PointIsometry.SIGMA_Y: ((-1, 0, 0), (0, 1, 0), (0, 0, 1)),
}
_BY_MATRIX = {m: g for g, m in _MATRICES.items()}


def conjugate_by(g: PointIsometry, t: SolTranslation) -> SolTranslation:
    """g^-1 t g: the signed permutation applied to (x, y, k)."""
    m = g.matrix
    coords = (t.x, t.y)
    x = coords[0] * m[0][0] + coords[1] * m[1][0]
    y = coords[0] * m[0][1] + coords[1] * m[1][1]
    return SolTranslation(x, y, t.k * m[2][2])


def apply_to_base(g: PointIsometry, v: tuple[QuadNum, QuadNum]) -> tuple[QuadNum, QuadNum]:
    m = g.matrix
    return (v[0] * m[0][0] + v[1] * m[1][0], v[0] * m[0][1] + v[1] * m[1][1])


# 4x4 homogeneous picture, used as an independent check in the tests.

def translation_matrix(t: SolTranslation) -> list[list[QuadNum]]:
    ctx = t.ctx
    z, o = ctx.zero, ctx.one
    return [
        [o, t.x, t.y, ctx(t.k)],
        [z, ctx.lam_pow(-t.k), z, z],
        [z, z, ctx.lam_pow(t.k), z],
        [z, z, z, o],
    ]


def isometry_matrix(g: PointIsometry, ctx: FieldContext) -> list[list[QuadNum]]:
    m = g.matrix
    rows = [[ctx.one, ctx.zero, ctx.zero, ctx.zero]]
    for i in range(3):
        rows.append([ctx.zero] + [ctx(m[i][j]) for j in range(3)])
    return rows


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][l] * b[l][j] for l in range(1, m)), a[i][0] * b[0][j]) for j in range(p)]
            for i in range(n)]


def from_matrix(mat, ctx: FieldContext) -> SolTranslation:
    """Read (x, y, k) back out of a translation matrix."""
    kq = mat[0][3]
    if not kq.is_integer():
        raise InvalidParameter("z-entry is not an integer multiple of log(lambda)")
    return SolTranslation(mat[0][1], mat[0][2], int(kq.a))

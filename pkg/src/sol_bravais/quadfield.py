"""Exact arithmetic in Q(sqrt(D)) with D = N^2 - 4.

The radicand is kept unreduced, so for N = 6 the field generator is sqrt(32)
and 2*sqrt(2) is stored as b = 1/2.
"""

from __future__ import annotations

import decimal
import enum
import math
from fractions import Fraction
from functools import cached_property, total_ordering

from .errors import ContextMismatch, InvalidParameter

Rational = int | Fraction


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


class FieldContext:
    """The field Q(sqrt(N^2 - 4)) attached to the trace parameter N."""

    _cache: dict[int, FieldContext] = {}

    def __new__(cls, N: int):
        if isinstance(N, bool) or not isinstance(N, int):
            raise InvalidParameter(f"N must be an integer, got {N!r}")
        if N < 3:
            raise InvalidParameter(f"N must be >= 3, got {N}")
        ctx = cls._cache.get(N)
        if ctx is None:
            ctx = super().__new__(cls)
            ctx._N = N
            ctx._D = N * N - 4
            cls._cache[N] = ctx
        return ctx

    def __getnewargs__(self):
        return (self._N,)

    @property
    def N(self) -> int:
        return self._N

    @property
    def D(self) -> int:
        return self._D

    def __repr__(self) -> str:
        return f"FieldContext(N={self._N})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldContext) and other._N == self._N

    def __hash__(self) -> int:
        return hash(("FieldContext", self._N))

    def __call__(self, a: Rational = 0, b: Rational = 0) -> QuadNum:
        return QuadNum(a, b, self)

    @property
    def zero(self) -> QuadNum:
        return QuadNum(0, 0, self)

    @property
    def one(self) -> QuadNum:
        return QuadNum(1, 0, self)

    @property
    def sqrt_d(self) -> QuadNum:
        return QuadNum(0, 1, self)

    @cached_property
    def lam(self) -> QuadNum:
        return fundamental_unit(self)

    @cached_property
    def lam_inv(self) -> QuadNum:
        return self.lam.conjugate()

    def lam_pow(self, k: int) -> QuadNum:
        """lambda**k for any integer k (lambda**-1 is the conjugate)."""
        if k >= 0:
            return self.lam**k
        return self.lam_inv ** (-k)

    def to_json(self) -> dict:
        return {"N": self._N}


@total_ordering
class QuadNum:
    """a + b*sqrt(D) with rational a, b; immutable."""

    __slots__ = ("_a", "_b", "_ctx")

    def __init__(self, a: Rational, b: Rational, ctx: FieldContext):
        self._a = Fraction(a)
        self._b = Fraction(b)
        self._ctx = ctx

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def ctx(self) -> FieldContext:
        return self._ctx

    def __repr__(self) -> str:
        return f"QuadNum({self._a}, {self._b}, N={self._ctx.N})"

    def __str__(self) -> str:
        if self._b == 0:
            return str(self._a)
        root = f"√{self._ctx.D}"
        if self._a == 0:
            return f"{self._b}{root}"
        sign = "+" if self._b > 0 else "-"
        return f"{self._a}{sign}{abs(self._b)}{root}"

    def _coerce(self, other) -> QuadNum:
        if isinstance(other, QuadNum):
            if other._ctx is not self._ctx:
                raise ContextMismatch(
                    f"cannot combine N={self._ctx.N} with N={other._ctx.N}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadNum(other, 0, self._ctx)
        return NotImplemented

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._a == o._a and self._b == o._b

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b, self._ctx.N))

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() is Sign.NEGATIVE

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __neg__(self) -> QuadNum:
        return QuadNum(-self._a, -self._b, self._ctx)

    def __pos__(self) -> QuadNum:
        return self

    def __add__(self, other) -> QuadNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadNum(self._a + o._a, self._b + o._b, self._ctx)

    __radd__ = __add__

    def __sub__(self, other) -> QuadNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadNum(self._a - o._a, self._b - o._b, self._ctx)

    def __rsub__(self, other) -> QuadNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> QuadNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        D = self._ctx.D
        return QuadNum(
            self._a * o._a + self._b * o._b * D,
            self._a * o._b + self._b * o._a,
            self._ctx,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> QuadNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.invert()

    def __rtruediv__(self, other) -> QuadNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.invert()

    def __pow__(self, n: int) -> QuadNum:
        if n < 0:
            return self.invert() ** (-n)
        result = self._ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> QuadNum:
        return QuadNum(self._a, -self._b, self._ctx)

    def norm(self) -> Fraction:
        return self._a * self._a - self._b * self._b * self._ctx.D

    def trace(self) -> Fraction:
        return 2 * self._a

    def invert(self) -> QuadNum:
        n = self.norm()
        if n == 0:
            # D is never a square, so the norm vanishes only at zero
            raise ZeroDivisionError("inverse of zero in Q(sqrt(D))")
        return QuadNum(self._a / n, -self._b / n, self._ctx)

    def sign(self) -> Sign:
        sa, sb = _sign(self._a), _sign(self._b)
        if sb == 0:
            return Sign(sa)
        if sa == 0 or sa == sb:
            return Sign(sb)
        lhs = self._a * self._a
        rhs = self._b * self._b * self._ctx.D
        return Sign(sa if lhs > rhs else sb)

    def is_rational(self) -> bool:
        return self._b == 0

    def is_integer(self) -> bool:
        return self._b == 0 and self._a.denominator == 1

    def __abs__(self) -> QuadNum:
        return -self if self.sign() is Sign.NEGATIVE else self

    def to_decimal(self, digits: int = 30) -> decimal.Decimal:
        with decimal.localcontext() as dc:
            dc.prec = digits + 10
            root = decimal.Decimal(self._ctx.D).sqrt()
            val = (
                decimal.Decimal(self._a.numerator) / self._a.denominator
                + decimal.Decimal(self._b.numerator) / self._b.denominator * root
            )
            dc.prec = digits
            return +val

    def __float__(self) -> float:
        if self._b == 0:
            return float(self._a)
        # the decimal route avoids cancellation in values like 3 - 2*sqrt(2)
        return float(self.to_decimal(40))

    def floor(self) -> int:
        guess = math.floor(self.to_decimal(40))
        while self < guess:
            guess -= 1
        while not self < guess + 1:
            guess += 1
        return guess

    def to_json(self, decimals: int | None = None) -> dict:
        out = {
            "a": [self._a.numerator, self._a.denominator],
            "b": [self._b.numerator, self._b.denominator],
        }
        if decimals is not None:
            digits = decimals + 20 + max(0, self.to_decimal(10).adjusted())
            with decimal.localcontext() as dc:
                dc.prec = digits + 5
                d = self.to_decimal(digits).quantize(decimal.Decimal(1).scaleb(-decimals))
            out["decimal"] = str(d)
        return out

    @classmethod
    def from_json(cls, obj: dict, ctx: FieldContext) -> QuadNum:
        try:
            a_num, a_den = obj["a"]
            b_num, b_den = obj["b"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidParameter(f"malformed QuadNum {obj!r}") from exc
        for part in (a_num, a_den, b_num, b_den):
            if isinstance(part, bool) or not isinstance(part, int):
                raise InvalidParameter(f"QuadNum parts must be integers: {obj!r}")
        if a_den == 0 or b_den == 0:
            raise InvalidParameter(f"zero denominator in {obj!r}")
        return cls(Fraction(a_num, a_den), Fraction(b_num, b_den), ctx)


def compare(x: QuadNum) -> Sign:
    return x.sign()


def fundamental_unit(ctx: FieldContext) -> QuadNum:
    """lambda = (N + sqrt(D)) / 2, the unit with lambda + 1/lambda = N."""
    return QuadNum(Fraction(ctx.N, 2), Fraction(1, 2), ctx)

"""The lettered N = 6 example lattices, rebuilt from their published parameters.

Each entry records the stated type and, where one is printed, the stated
certificate. Entries whose printed data do not reproduce the stated type are
kept as printed; the acceptance run reports them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .lattice import SolLattice, c4_base, canonical_basis, centred_base, combine
from .quadfield import FieldContext, QuadNum

N = 6
CTX = FieldContext(N)
LAM = CTX.lam
SQRT2 = CTX(0, Fraction(1, 4))  # sqrt(32) / 4

third = Fraction(1, 3)
half = Fraction(1, 2)


@dataclass
class Example:
    label: str
    letter: str
    build: Callable[[], SolLattice]
    printed: dict = field(default_factory=dict)  # certificate fields as printed
    note: str = ""

    @property
    def key(self) -> str:
        return f"{self.label} {self.letter}"


def _primitive(q: int) -> SolLattice:
    return canonical_basis(N, 3, q, mu=1)


def _generic(p: int) -> SolLattice:
    return canonical_basis(N, p, 1, mu=2)


def _dr_line(B: SolLattice, m: int, n: int, X) -> SolLattice:
    """Offset with (tau3^delta_r) tau3 = m tau1 + n tau2 and o.x = X."""
    w = combine(B, m, n)
    X = X if isinstance(X, QuadNum) else CTX(X)
    return B.with_offset(X, LAM * (w[0] - X))


def _half_word(B: SolLattice, g: int, d: int) -> SolLattice:
    """Offset with (tau3^gamma2)^-1 tau3 = 2 o = g tau1 + d tau2."""
    return B.with_offset_coords(Fraction(g, 2), Fraction(d, 2))


def _c4_word(eps: int, phi: int) -> SolLattice:
    from .classify import _offset_from_c4_word
    B = c4_base(N, 1, 2)
    return B.with_offset(*_offset_from_c4_word(B, eps, phi))


EXAMPLES: list[Example] = [
    Example("I/1", "a", lambda: _generic(0)),
    Example("I/1", "b", lambda: _generic(1)),
    Example("I/1", "c", lambda: _generic(2)),
    Example("I/2", "a", lambda: centred_base(N)),
    Example("I/3", "a", lambda: _primitive(1)),
    Example("I/3", "b", lambda: _primitive(2)),
    Example("I/4", "a", lambda: c4_base(N, 1, 2)),
    # no offset is printed for II/1; a third of tau1 is generic
    Example("II/1", "a", lambda: _generic(0).with_offset_coords(third, 0)),
    Example("II/1", "b", lambda: _generic(1).with_offset_coords(third, 0)),
    Example("II/1", "c", lambda: _generic(2).with_offset_coords(third, 0)),
    Example("II/2", "a", lambda: _generic(0).with_offset_coords(half, 0)),
    Example("II/2", "b", lambda: _generic(1).with_offset_coords(half, 0)),
    Example("II/2", "c", lambda: _generic(2).with_offset_coords(half, 0)),
    # x̄ = lambda^2 and (tau3^delta_r) tau3 = tau2
    Example("II/3", "a", lambda: centred_base(N).with_offset(1 / (LAM + 1), LAM * LAM / (LAM + 1))),
    # ȳ = t31/t11 = 1/lambda on the q = 1 primitive base
    Example("II/4", "a", lambda: _primitive(1).with_offset(CTX.lam_inv, LAM),
            printed={"alpha_bar": 4, "beta_bar": 1, "gamma_bar": 6, "delta_bar": 2}),
    # primed variant with ȳ' = ȳ/2
    Example("II/4", "b", lambda: _primitive(2).with_offset(CTX.lam_inv / 2, LAM / 2),
            printed={"alpha_bar": 2, "beta_bar": 1, "gamma_bar": 3, "delta_bar": 2}),
    Example("II/5", "a", lambda: _dr_line(centred_base(N), 0, 1, 2),
            printed={"alpha": 0, "beta": 1}),
    Example("II/6", "a", lambda: _dr_line(_primitive(1), 4, 1, third),
            printed={"alpha_bar": 4, "beta_bar": 1}),
    Example("II/6", "b", lambda: _dr_line(_primitive(2), 2, 1, third),
            printed={"alpha_bar": 2, "beta_bar": 1}),
    Example("II/7", "a", lambda: centred_base(N).with_offset(CTX(third), -LAM * third),
            printed={"alpha": 0, "beta": 0}),
    Example("II/8", "a", lambda: _primitive(1).with_offset(CTX(third), -LAM * third),
            printed={"alpha_bar": 0, "beta_bar": 0}),
    Example("II/8", "b", lambda: _primitive(2).with_offset(CTX(third), -LAM * third),
            printed={"alpha_bar": 0, "beta_bar": 0}),
    Example("II/9", "a", lambda: _half_word(centred_base(N), 1, -2),
            printed={"beta": 1, "gamma": 1, "delta": -2}),
    Example("II/9", "b", lambda: _half_word(centred_base(N), -1, 4),
            printed={"beta": 1, "gamma": -1, "delta": 4}),
    Example("II/10", "a", lambda: _half_word(_primitive(1), 3, 1),
            printed={"alpha_bar": 4, "beta_bar": 1, "gamma_bar": 3, "delta_bar": 1}),
    Example("II/10", "b", lambda: _half_word(_primitive(2), 2, 1),
            printed={"alpha_bar": 4, "beta_bar": 2, "gamma_bar": 2, "delta_bar": 1}),
    # x̄ = -lambda with t31/t12 = sqrt2
    Example("II/11", "a", lambda: centred_base(N).with_offset(SQRT2, -LAM * SQRT2),
            printed={"gamma": 1, "delta": 3}),
    Example("II/12", "a", lambda: _half_word(_primitive(1), 2, 1),
            printed={"gamma_bar": 2, "delta_bar": 1}),
    Example("II/12", "b", lambda: _half_word(_primitive(2), 1, 1),
            printed={"gamma_bar": 1, "delta_bar": 1}),
    Example("II/13", "a", lambda: _c4_word(2, 0),
            printed={"epsilon": 2, "phi": 0, "psi": -1, "chi": -5}),
]

# printed offset ratios that accompany some entries
PRINTED_RATIOS = {
    "II/11 a": {"ybar": SQRT2},
    "II/13 a": {
        "ybar": CTX(4) - SQRT2,
        "xbar": (CTX(6 - 30) - 5 * CTX.sqrt_d) / (CTX(4 + 12) - CTX.sqrt_d),
    },
}


def by_key(key: str) -> Example:
    for ex in EXAMPLES:
        if ex.key == key:
            return ex
    raise KeyError(key)

"""The seventeen Bravais types and the decision tree that assigns them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InconsistentLattice,
    InvalidParameter,
    NotApplicable,
    Unrealizable,
    ValidationError,
)
from .lattice import (
    SolLattice,
    c4_base,
    c4_parameters,
    canonical_basis,
    centred_base,
    combine,
    is_case_one,
    isotropy_check,
    primitive_bases,
    verify_presentation,
)
from .quadfield import FieldContext, QuadNum, Sign
from .symmetry import (
    Centering,
    PointGroup,
    centering,
    certificate,
    point_group,
    reflection_kills_tau3,
    z_sublattice_exists,
)


@dataclass(frozen=True)
class BravaisType:
    label: str
    main_case: str
    group: str  # point group family: Id, C2, Dr, D2bar, C4
    has_z_sublattice: bool
    base: str  # Centred, Primitive or Unconstrained
    kills_tau3: bool = False  # (tau3^delta_r) tau3 = 1 for some offset representative
    name: str = ""

    def __str__(self) -> str:
        return self.label

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "case": self.main_case,
            "point_group": self.group,
            "z_sublattice": self.has_z_sublattice,
            "base": self.base,
        }


_U, _C, _P = "Unconstrained", "Centred", "Primitive"

TYPES: tuple[BravaisType, ...] = (
    BravaisType("I/1", "I", "C2", True, _U, name="primitive monoclinic"),
    BravaisType("I/2", "I", "D2bar", True, _C, name="base-centred orthorhombic"),
    BravaisType("I/3", "I", "D2bar", True, _P, name="primitive orthorhombic"),
    BravaisType("I/4", "I", "C4", True, _U, name="primitive tetragonal"),
    BravaisType("II/1", "II", "Id", False, _U, name="primitive triclinic"),
    BravaisType("II/2", "II", "C2", False, _U, name="monoclinic single-side-face-centred"),
    BravaisType("II/3", "II", "Dr", True, _C, name="base-centred with z-sublattice"),
    BravaisType("II/4", "II", "D2bar", True, _P, name="base-primitive with z-sublattice"),
    BravaisType("II/5", "II", "Dr", False, _C, name="base-centred without z-sublattice"),
    BravaisType("II/6", "II", "Dr", False, _P, name="base-primitive without z-sublattice"),
    BravaisType("II/7", "II", "Dr", False, _C, True, name="base-centred, unrestricted base"),
    BravaisType("II/8", "II", "Dr", False, _P, True, name="base-primitive, unrestricted base"),
    BravaisType("II/9", "II", "D2bar", False, _C, name="base-centred without z-sublattice"),
    BravaisType("II/10", "II", "D2bar", False, _P, name="base-primitive without z-sublattice"),
    BravaisType("II/11", "II", "D2bar", False, _C, True, name="base-centred, unrestricted base"),
    BravaisType("II/12", "II", "D2bar", False, _P, True, name="base-primitive, unrestricted base"),
    BravaisType("II/13", "II", "C4", False, _U, name="skew tetragonal"),
)
BY_LABEL = {t.label: t for t in TYPES}


def bravais_type(label: str | BravaisType) -> BravaisType:
    if isinstance(label, BravaisType):
        return label
    key = label.strip().upper()
    if key not in BY_LABEL:
        raise InvalidParameter(f"unknown Bravais type label {label!r}")
    return BY_LABEL[key]


def validate(L: SolLattice) -> None:
    rep = verify_presentation(L)
    if not rep.ok:
        raise ValidationError("presentation fails: " + "; ".join(rep.failures),
                              invariant=rep.failures[0].split(":")[0])
    isotropy_check(L)


@dataclass
class Classification:
    type: BravaisType
    point_group: PointGroup
    centering: Centering
    z_sublattice: bool
    main_case: str
    certificate: object = None

    def to_json(self) -> dict:
        out = {
            "type": self.type.label,
            "case": self.main_case,
            "point_group": self.point_group.label,
            "z_sublattice": self.z_sublattice,
            "centering": self.centering.value,
            "certificates": {},
        }
        if self.certificate is not None:
            out["certificates"] = {self.certificate.kind.value: self.certificate.to_json()}
        return out


def analyse(L: SolLattice, with_certificate: bool = True) -> Classification:
    validate(L)
    case = "I" if is_case_one(L) else "II"
    pg = point_group(L)
    cen = centering(L)
    zsub = z_sublattice_exists(L, pg)
    fam = pg.family
    if case == "I":
        label = {"C2": "I/1", "C4": "I/4"}.get(fam)
        if fam == "D2bar":
            label = {Centering.CENTRED: "I/2", Centering.PRIMITIVE: "I/3"}.get(cen)
        if label is None:
            raise InconsistentLattice(f"case I lattice with point group {pg.label}, centering {cen.value}")
    else:
        label = {"Id": "II/1", "C2": "II/2", "C4": "II/13"}.get(fam)
        if label is None:
            if cen is Centering.NONE:
                raise InconsistentLattice("reflection-symmetric lattice with no centering")
            centred = cen is Centering.CENTRED
            d2 = fam == "D2bar"
            if zsub:
                label = "II/4" if d2 else "II/3"
            elif reflection_kills_tau3(L, pg):
                label = ("II/11" if centred else "II/12") if d2 else ("II/7" if centred else "II/8")
            else:
                label = ("II/9" if centred else "II/10") if d2 else ("II/5" if centred else "II/6")
    cert = None
    if with_certificate and pg is not PointGroup.ID:
        try:
            cert = certificate(L, pg)
        except NotApplicable:
            cert = None
    return Classification(BY_LABEL[label], pg, cen, zsub, case, cert)


def classify(L: SolLattice) -> BravaisType:
    return analyse(L, with_certificate=False).type


# Realizers: one explicit lattice per type, verified by the decision tree.

def _offset_from_c4_word(B: SolLattice, eps: int, phi: int) -> tuple:
    """Offset o with (tau3^gamma4) tau3 = eps tau1 + phi tau2."""
    ctx = B.ctx
    wx = B.tau1.x * eps + B.tau2.x * phi
    wy = B.tau1.y * eps + B.tau2.y * phi
    # o.x - o.y / lambda = wx,  lambda o.x + o.y = wy
    ox = (wx + wy * ctx.lam_inv) / 2
    oy = wy - ctx.lam * ox
    return ox, oy


def _dr_line_vector(B: SolLattice) -> tuple:
    """Primitive base vector w with w.y = lambda w.x (the delta_r offset line)."""
    from .lattice import _kill_witness
    lam = B.ctx.lam
    m, n = _kill_witness(B.tau1.y - lam * B.tau1.x, B.tau2.y - lam * B.tau2.x)
    w = combine(B, m, n)
    return w if w[0].sign() is Sign.POSITIVE else (-w[0], -w[1])


def _on_dr_line(B: SolLattice, beta: int, X) -> SolLattice:
    # (tau3^delta_r) tau3 = beta w forces o.y = lambda (beta w.x - o.x)
    ctx = B.ctx
    w = _dr_line_vector(B)
    X = X if isinstance(X, QuadNum) else ctx(X)
    return B.with_offset(X, ctx.lam * (w[0] * beta - X))


def _candidates(N: int, label: str, q: int | None):
    ctx = FieldContext(N)
    lam = ctx.lam
    third = Fraction(1, 3)
    half = Fraction(1, 2)
    halves = [(half, 0), (0, half), (half, half)]
    if label == "I/1":
        yield canonical_basis(N, 0, 1, 2)
    elif label == "I/2":
        yield centred_base(N)
    elif label in ("I/3",):
        yield from _primitive(N, q)
    elif label in ("I/4",):
        for B in _c4(N, q):
            yield B
    elif label == "II/1":
        yield canonical_basis(N, 0, 1, 2).with_offset_coords(third, 0)
    elif label == "II/2":
        yield canonical_basis(N, 0, 1, 2).with_offset_coords(half, 0)
    elif label == "II/3":
        B = centred_base(N)
        yield B.with_offset(1 / (lam + 1), lam * lam / (lam + 1))
    elif label == "II/5":
        for X in (2, 3, third):
            yield _on_dr_line(centred_base(N), 1, X)
    elif label == "II/7":
        for a in (third, Fraction(1, 5)):
            yield centred_base(N).with_offset(ctx(a), -lam * a)
    elif label == "II/6":
        for B in _primitive(N, q):
            for X in (third, Fraction(1, 5)):
                yield _on_dr_line(B, 1, X)
    elif label == "II/8":
        for B in _primitive(N, q):
            for a in (third, Fraction(1, 5)):
                yield B.with_offset(ctx(a), -lam * a)
    elif label in ("II/9", "II/11"):
        # 2o = gamma tau1 + delta tau2 with gamma N + 2 delta = 2 beta: beta = 1, then beta = 0
        words = [(1, 1 - N // 2), (1, -(N // 2))] if N % 2 == 0 else []
        if label == "II/11":
            words.reverse()
        B = centred_base(N)
        for g, d in words:
            yield B.with_offset_coords(Fraction(g, 2), Fraction(d, 2))
        for off in halves:
            yield B.with_offset_coords(*off)
    elif label in ("II/4", "II/10", "II/12"):
        for B in _primitive(N, q):
            for off in halves:
                yield B.with_offset_coords(*off)
    elif label == "II/13":
        # phi = 0 first; some N (e.g. 3) need phi != 0 to leave the base lattice
        words = sorted(((e, f) for e in range(4) for f in range(4) if e or f),
                       key=lambda ef: (ef[1] != 0, ef[0] + ef[1], ef[1]))
        for B in _c4(N, q):
            for eps, phi in words:
                yield B.with_offset(*_offset_from_c4_word(B, eps, phi))


def _primitive(N: int, q: int | None):
    if N % 2:
        raise Unrealizable("", "primitive base requires even N")
    bases = primitive_bases(N)
    if q is not None:
        bases = [B for B in bases if B.phi.q == q]
        if not bases:
            raise Unrealizable("", f"q = {q} does not divide p^2 - 1 = {(N // 2) ** 2 - 1}")
    return bases


def _c4(N: int, q: int | None):
    params = c4_parameters(N)
    if q is not None:
        params = [pq for pq in params if pq[1] == q]
    if not params:
        raise Unrealizable("", "no (p,q) with q^2 = p(N-p)-1")
    return [c4_base(N, p, qq) for p, qq in params]


def realize_type(N: int, t, q: int | None = None) -> SolLattice:
    """An explicit lattice of type t for trace N, or Unrealizable."""
    bt = bravais_type(t)
    FieldContext(N)
    try:
        for L in _candidates(N, bt.label, q):
            if classify(L) == bt:
                return L
    except Unrealizable as exc:
        raise Unrealizable(bt.label, exc.reason) from None
    raise Unrealizable(bt.label, f"no candidate lattice for N = {N} classifies as {bt.label}")


def realizable_types(N: int) -> list[BravaisType]:
    out = []
    for bt in TYPES:
        try:
            realize_type(N, bt)
        except Unrealizable:
            continue
        out.append(bt)
    return out

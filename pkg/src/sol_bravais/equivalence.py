"""GL2(Z) conjugacy of lattice matrices and bounded equivalence search."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from . import _kernels
from .errors import InvalidParameter, NotEquivalent
from .lattice import LatticeMatrix, _divisors

DEFAULT_BOUND = 50


def default_bound() -> int:
    raw = os.environ.get("SOL_BRAVAIS_BOUND")
    if raw is None or raw.strip() == "":
        return DEFAULT_BOUND
    try:
        b = int(raw)
    except ValueError:
        raise InvalidParameter(f"SOL_BRAVAIS_BOUND must be an integer, got {raw!r}") from None
    if b < 0:
        raise InvalidParameter("SOL_BRAVAIS_BOUND must be >= 0")
    return b


@dataclass(frozen=True)
class UnimodularMatrix:
    u: int
    v: int
    w: int
    wbar: int

    def __post_init__(self):
        if abs(self.det) != 1:
            raise InvalidParameter(f"u*wbar - v*w = {self.det}, not +-1")

    @property
    def det(self) -> int:
        return self.u * self.wbar - self.v * self.w

    @classmethod
    def identity(cls) -> UnimodularMatrix:
        return cls(1, 0, 0, 1)

    def inverse(self) -> UnimodularMatrix:
        d = self.det
        return UnimodularMatrix(self.wbar * d, -self.v * d, -self.w * d, self.u * d)

    def __matmul__(self, o: UnimodularMatrix) -> UnimodularMatrix:
        return UnimodularMatrix(self.u * o.u + self.v * o.w, self.u * o.v + self.v * o.wbar,
                                self.w * o.u + self.wbar * o.w, self.w * o.v + self.wbar * o.wbar)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.u, self.v, self.w, self.wbar)

    def __str__(self) -> str:
        return f"({self.u},{self.v};{self.w},{self.wbar})"

    def to_json(self) -> list[int]:
        return list(self.as_tuple())


def conjugate_matrix(phi: LatticeMatrix, U: UnimodularMatrix) -> LatticeMatrix:
    """U^-1 phi U."""
    Ui = U.inverse()
    # phi U
    a = phi.p * U.u + phi.q * U.w
    b = phi.p * U.v + phi.q * U.wbar
    c = phi.r * U.u + phi.s * U.w
    d = phi.r * U.v + phi.s * U.wbar
    return LatticeMatrix(Ui.u * a + Ui.v * c, Ui.u * b + Ui.v * d,
                         Ui.w * a + Ui.wbar * c, Ui.w * b + Ui.wbar * d)


def candidate_parameters(N: int) -> list[tuple[int, int, int]]:
    if isinstance(N, bool) or not isinstance(N, int) or N < 3:
        raise InvalidParameter(f"N must be an integer >= 3, got {N!r}")
    out = []
    for p in range(N // 2 + 1):
        m = p * (N - p) - 1
        if m == -1:
            out.append((p, 1, -1))
            continue
        for q in _divisors(m):
            out.append((p, q, m // q))
    return out


def candidate_matrix(N: int, pqr: tuple[int, int, int]) -> LatticeMatrix:
    p, q, r = pqr
    return LatticeMatrix(p, q, r, N - p)


def _rank(U: tuple[int, ...]):
    # smallest entries first, then det +1, then a fixed sign order
    return (max(abs(x) for x in U), U[0] * U[3] - U[1] * U[2] != 1, tuple((abs(x), x < 0) for x in U))


@dataclass
class SearchResult:
    status: str  # "equivalent" or "not_found_within_bound"
    bound: int
    witness: UnimodularMatrix | None = None
    count: int = 0  # witnesses inside the box

    @property
    def equivalent(self) -> bool:
        return self.status == "equivalent"

    def to_json(self) -> dict:
        return {"status": self.status, "bound": self.bound,
                "witness": self.witness.to_json() if self.witness else None,
                "witnesses_in_bound": self.count}


def all_witnesses(phi1: LatticeMatrix, phi2: LatticeMatrix, bound: int) -> list[UnimodularMatrix]:
    """Every U with |entries| <= bound and U^-1 phi1 U = phi2, best first."""
    if phi1.q == 0:
        raise InvalidParameter("phi1 has q = 0")  # impossible for trace >= 3 and det 1
    arr = _kernels.conjugators(phi1.as_tuple(), phi2.as_tuple(), bound)
    rows = sorted((tuple(int(x) for x in row) for row in arr), key=_rank)
    return [UnimodularMatrix(*r) for r in rows]


def equivalence_search(phi1: LatticeMatrix, phi2: LatticeMatrix, bound: int | None = None) -> SearchResult:
    if bound is None:
        bound = default_bound()
    if isinstance(bound, bool) or not isinstance(bound, int) or bound < 0:
        raise InvalidParameter(f"bound must be a non-negative integer, got {bound!r}")
    if phi1.trace != phi2.trace:
        raise NotEquivalent(f"trace {phi1.trace} != {phi2.trace}")
    if phi1.det != phi2.det:
        raise NotEquivalent(f"determinant {phi1.det} != {phi2.det}")
    ws = all_witnesses(phi1, phi2, bound)
    if not ws:
        return SearchResult("not_found_within_bound", bound)
    return SearchResult("equivalent", bound, ws[0], len(ws))


@dataclass
class EquivalenceClass:
    representative: tuple[int, int, int]
    members: list[tuple[int, int, int]] = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)  # member -> U with U^-1 rep U = member

    def to_json(self) -> dict:
        return {
            "representative": list(self.representative),
            "members": [
                {"pqr": list(m), "witness": self.witnesses[m].to_json()} for m in self.members
            ],
        }


@dataclass
class Partition:
    N: int
    bound: int
    classes: list[EquivalenceClass]

    def class_of(self, pqr) -> EquivalenceClass:
        pqr = tuple(pqr)
        for c in self.classes:
            if pqr in c.members:
                return c
        raise KeyError(pqr)

    def to_json(self) -> dict:
        return {"N": self.N, "bound": self.bound, "search": "bounded",
                "classes": [c.to_json() for c in self.classes]}


def class_representatives(N: int, bound: int | None = None) -> Partition:
    if bound is None:
        bound = default_bound()
    cands = sorted(candidate_parameters(N))
    classes: list[EquivalenceClass] = []
    for pqr in cands:
        phi = candidate_matrix(N, pqr)
        for cl in classes:
            res = equivalence_search(candidate_matrix(N, cl.representative), phi, bound)
            if res.equivalent:
                cl.members.append(pqr)
                cl.witnesses[pqr] = res.witness
                break
        else:
            # candidates arrive sorted, so the first member is the minimal (p, q)
            classes.append(EquivalenceClass(pqr, [pqr], {pqr: UnimodularMatrix.identity()}))
    return Partition(N, bound, classes)

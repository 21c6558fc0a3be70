"""Structural data for the supported algebras of rank one and two.

Weights are integer tuples in the fundamental-weight basis, so that the
eigenvalue of ``h_i`` on a weight ``lam`` is simply ``lam[i]``.  With the
symmetrised Cartan matrix ``sym = diag(w) @ K`` the simple root ``alpha_i``
is column ``i`` of ``K`` and ``[h_i, X_j] = K[i][j] X_j``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidParameter

IntMatrix = tuple[tuple[int, ...], ...]
Weight = tuple[int, ...]


class AlgebraKind(str, enum.Enum):
    A1 = "A1"
    A2 = "A2"
    B2 = "B2"
    C2 = "C2"
    D2 = "D2"
    G2 = "G2"

    @classmethod
    def parse(cls, value: "AlgebraKind | str") -> "AlgebraKind":
        """Return the canonical tag; ``C2`` folds onto ``B2``."""
        try:
            kind = cls(value.upper() if isinstance(value, str) else value)
        except ValueError:
            raise InvalidParameter(f"unsupported algebra {value!r}") from None
        return cls.B2 if kind is cls.C2 else kind


# symmetrised Cartan matrix, symmetrisers, alpha-class root (1-based)
_TABLE: dict[AlgebraKind, tuple[IntMatrix, tuple[int, ...], int]] = {
    AlgebraKind.A1: (((2,),), (1,), 1),
    AlgebraKind.A2: (((2, -1), (-1, 2)), (1, 1), 1),
    AlgebraKind.B2: (((2, -2), (-2, 4)), (1, 2), 2),
    AlgebraKind.D2: (((2, 0), (0, 2)), (1, 1), 1),
    AlgebraKind.G2: (((2, -3), (-3, 6)), (1, 3), 1),
}


@dataclass(frozen=True)
class RootSystem:
    kind: AlgebraKind
    cartan: IntMatrix
    sym_cartan: IntMatrix
    symmetrizers: tuple[int, ...]
    weyl_group: tuple[IntMatrix, ...]
    rho: Weight
    grading: tuple[int, ...]
    level_step: int
    shifts: tuple[int, ...]
    alpha_index: int
    simple_roots: tuple[Weight, ...]
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.symmetrizers)

    @property
    def p(self) -> int:
        """Off-diagonal magnitude of the symmetrised Cartan matrix (1, 2, 3)."""
        if self.rank != 2:
            raise AttributeError("p is defined for rank-two algebras only")
        return -self.sym_cartan[0][1] if self.sym_cartan[0][1] else 0

    @property
    def shift1(self) -> int:
        return self.shifts[0]

    @property
    def shift2(self) -> int:
        return self.shifts[1]

    def q_degree(self, weight: Weight) -> int:
        """Exponent of the grading operator ``Q`` on ``weight`` (units of t)."""
        return sum(c * n for c, n in zip(self.grading, weight))

    def alpha_degree(self, weight: Weight) -> int:
        """Exponent of the alpha operator ``R_k`` on ``weight`` (units of t)."""
        k = self.alpha_index - 1
        return self.symmetrizers[k] * weight[k]

    def root_coords(self, diff: Weight) -> tuple[int, ...]:
        """Coordinates of ``diff`` in the simple-root basis (must be integral)."""
        inv = _inverse(self.cartan)
        coords = [sum(inv[i][j] * diff[j] for j in range(self.rank)) for i in range(self.rank)]
        if any(c.denominator != 1 for c in coords):
            raise InvalidParameter(f"{diff} is not in the root lattice")
        return tuple(int(c) for c in coords)

    def depth(self, highest: Weight, weight: Weight) -> int:
        """Number of simple lowering steps from ``highest`` down to ``weight``."""
        diff = tuple(a - b for a, b in zip(highest, weight))
        return sum(self.root_coords(diff))

    def inner(self, lam: Weight, mu: Weight) -> Fraction:
        """Invariant form ``(lam, mu)`` normalised by ``(alpha_i, alpha_i) = 2 w_i``."""
        gram = fundamental_gram(self)
        return sum(
            (gram[i][j] * lam[i] * mu[j] for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )


def _inverse(m: IntMatrix) -> tuple[tuple[Fraction, ...], ...]:
    if len(m) == 1:
        return ((Fraction(1, m[0][0]),),)
    (a, b), (c, d) = m
    det = Fraction(a * d - b * c)
    return ((d / det, -b / det), (-c / det, a / det))


def _matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _apply(m: IntMatrix, v: Weight) -> Weight:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def det(m: IntMatrix) -> int:
    if len(m) == 1:
        return m[0][0]
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _reflection(cartan: IntMatrix, i: int) -> IntMatrix:
    # s_i(lam) = lam - lam_i * alpha_i, alpha_i = column i of K
    n = len(cartan)
    return tuple(
        tuple(int(r == c) - (cartan[r][i] if c == i else 0) for c in range(n)) for r in range(n)
    )


def _close_group(gens: list[IntMatrix]) -> tuple[IntMatrix, ...]:
    n = len(gens[0])
    ident = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
    seen = [ident]
    index = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = _matmul(s, g)
                if h not in index:
                    index.add(h)
                    seen.append(h)
                    nxt.append(h)
        frontier = nxt
    return tuple(seen)


@lru_cache(maxsize=None)
def root_system(kind: AlgebraKind | str) -> RootSystem:
    kind = AlgebraKind.parse(kind)
    sym, w, alpha_index = _TABLE[kind]
    n = len(w)
    cartan = tuple(tuple(sym[i][j] // w[i] for j in range(n)) for i in range(n))
    simple = tuple(tuple(cartan[r][i] for r in range(n)) for i in range(n))
    weyl = _close_group([_reflection(cartan, i) for i in range(n)])

    roots = {_apply(g, a) for g in weyl for a in simple}
    inv = _inverse(cartan)
    positive = []
    for r in roots:
        coords = tuple(sum(inv[i][j] * r[j] for j in range(n)) for i in range(n))
        if all(c >= 0 for c in coords):
            positive.append(tuple(int(c) for c in coords))
    positive.sort(key=lambda k: (sum(k), k))

    grading = tuple(w)
    degrees = [sum(g * a for g, a in zip(grading, alpha)) for alpha in simple]
    step = 0
    for d in degrees:
        step = _gcd(step, abs(d))
    shifts = tuple(d // step for d in degrees)
    return RootSystem(
        kind=kind,
        cartan=cartan,
        sym_cartan=sym,
        symmetrizers=tuple(w),
        weyl_group=weyl,
        rho=(1,) * n,
        grading=grading,
        level_step=step,
        shifts=shifts,
        alpha_index=alpha_index,
        simple_roots=simple,
        positive_roots=tuple(positive),
    )


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def fundamental_gram(rs: RootSystem) -> tuple[tuple[Fraction, ...], ...]:
    """Gram matrix ``(omega_i, omega_j) = w_i (K^-1)_{ij}``."""
    inv = _inverse(rs.cartan)
    return tuple(
        tuple(rs.symmetrizers[i] * inv[i][j] for j in range(rs.rank)) for i in range(rs.rank)
    )


def weyl_orbit(rs: RootSystem, weight: Weight) -> list[tuple[Weight, int]]:
    """All ``(W weight, det W)`` pairs, one per group element (repeats kept)."""
    weight = tuple(weight)
    return [(_apply(g, weight), det(g)) for g in rs.weyl_group]

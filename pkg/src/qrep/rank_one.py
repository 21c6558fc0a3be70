"""Closed-form irreducible representations of quantum A1 and their products."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra_data import AlgebraKind, root_system
from .errors import InvalidParameter
from .generators import GeneratorSet, label_rows


def _check_t(t: float) -> float:
    t = float(t)
    if not t > 0 or not math.isfinite(t):
        raise InvalidParameter(f"deformation parameter must be positive, got {t}")
    return t


@dataclass(frozen=True)
class RankOneRep:
    """Spin ``twice_l / 2`` representation; rows ordered by descending ``h``."""

    twice_l: int
    t: float
    xplus: np.ndarray
    xminus: np.ndarray
    h: np.ndarray

    @property
    def dim(self) -> int:
        return self.twice_l + 1


def ladder_entries(twice_l: int, t: float) -> np.ndarray:
    """Superdiagonal of ``X^+``: entry ``k-1`` couples states ``k-1`` and ``k``."""
    k = np.arange(1, twice_l + 1, dtype=float)
    return np.sqrt(np.sinh(k * t) * np.sinh((twice_l - k + 1) * t)) / math.sinh(t)


def build_rank_one(twice_l: int, t: float) -> RankOneRep:
    if twice_l < 0:
        raise InvalidParameter(f"twice_l must be non-negative, got {twice_l}")
    t = _check_t(t)
    n = twice_l + 1
    xp = np.zeros((n, n))
    if twice_l:
        xp[np.arange(n - 1), np.arange(1, n)] = ladder_entries(twice_l, t)
    h = np.diag(np.arange(twice_l, -twice_l - 1, -2, dtype=float))
    return RankOneRep(twice_l, t, xp, xp.T.copy(), h)


def build_q_generators(rep: RankOneRep) -> tuple[np.ndarray, np.ndarray]:
    """``Q^\\pm = T^\\pm \\pm R / (2 sinh t)`` with ``T^\\pm = e^{th/4} X^\\pm e^{th/4}``."""
    hd = np.diag(rep.h)
    quarter = np.exp(rep.t * hd / 4)
    r = np.diag(np.exp(rep.t * hd))
    tp = quarter[:, None] * rep.xplus * quarter[None, :]
    tm = quarter[:, None] * rep.xminus * quarter[None, :]
    shift = r / (2 * math.sinh(rep.t))
    return tp + shift, tm - shift


def rank_one_generators(twice_l: int, t: float) -> GeneratorSet:
    rep = build_rank_one(twice_l, t)
    weights = [(int(v),) for v in np.diag(rep.h)]
    rs = root_system(AlgebraKind.A1)
    return GeneratorSet(
        algebra=AlgebraKind.A1,
        hw=(twice_l,),
        t=rep.t,
        xplus=(rep.xplus,),
        xminus=(rep.xminus,),
        h=(rep.h,),
        weights=weights,
        basis=label_rows(rs, weights),
    )


def build_d2(hw: tuple[int, int], t: float) -> GeneratorSet:
    """Direct product of two rank-one representations (commuting factors)."""
    if len(hw) != 2 or any(x < 0 for x in hw):
        raise InvalidParameter(f"D2 needs two non-negative components, got {hw}")
    first = build_rank_one(hw[0], t)
    second = build_rank_one(hw[1], t)
    one, two = np.eye(first.dim), np.eye(second.dim)
    h1d, h2d = np.diag(first.h), np.diag(second.h)
    weights = [(int(a), int(b)) for a in h1d for b in h2d]
    rs = root_system(AlgebraKind.D2)
    return GeneratorSet(
        algebra=AlgebraKind.D2,
        hw=tuple(hw),
        t=first.t,
        xplus=(np.kron(first.xplus, two), np.kron(one, second.xplus)),
        xminus=(np.kron(first.xminus, two), np.kron(one, second.xminus)),
        h=(np.kron(first.h, two), np.kron(one, second.h)),
        weights=weights,
        basis=label_rows(rs, weights),
    )

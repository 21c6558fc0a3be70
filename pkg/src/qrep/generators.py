"""Container for the explicit generator matrices of one representation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra_data import AlgebraKind, RootSystem, Weight, root_system


@dataclass(frozen=True)
class BasisLabel:
    level: int
    alpha_exp: int
    copy: int


@dataclass
class GeneratorSet:
    """Dense ``X^+_i``, ``X^-_i`` and diagonal ``h_i`` at a fixed ``t``.

    ``weights[k]`` is the weight of basis vector ``k`` and ``basis[k]`` its
    (level, alpha class, copy) label.
    """

    algebra: AlgebraKind
    hw: tuple[int, ...]
    t: float
    xplus: tuple[np.ndarray, ...]
    xminus: tuple[np.ndarray, ...]
    h: tuple[np.ndarray, ...]
    weights: list[Weight]
    basis: list[BasisLabel]

    @property
    def dim(self) -> int:
        return self.h[0].shape[0]

    @property
    def rank(self) -> int:
        return len(self.h)

    @property
    def rs(self) -> RootSystem:
        return root_system(self.algebra)

    # spelled-out accessors used by exporters
    @property
    def xp1(self) -> np.ndarray:
        return self.xplus[0]

    @property
    def xm1(self) -> np.ndarray:
        return self.xminus[0]

    @property
    def h1(self) -> np.ndarray:
        return self.h[0]

    @property
    def xp2(self) -> np.ndarray:
        return self.xplus[1]

    @property
    def xm2(self) -> np.ndarray:
        return self.xminus[1]

    @property
    def h2(self) -> np.ndarray:
        return self.h[1]

    def matrices(self) -> dict[str, np.ndarray]:
        out = {}
        for i in range(self.rank):
            out[f"xp{i + 1}"] = self.xplus[i]
            out[f"xm{i + 1}"] = self.xminus[i]
        for i in range(self.rank):
            out[f"h{i + 1}"] = self.h[i]
        return out


def label_rows(rs: RootSystem, weights: list[Weight]) -> list[BasisLabel]:
    """Level / alpha-class / copy labels for an arbitrary row order."""
    top = max(rs.q_degree(w) for w in weights)
    seen: dict[Weight, int] = {}
    labels = []
    for w in weights:
        copy = seen.get(w, 0)
        seen[w] = copy + 1
        level = (top - rs.q_degree(w)) // rs.level_step + 1
        labels.append(BasisLabel(level, rs.alpha_degree(w), copy))
    return labels

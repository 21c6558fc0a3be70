"""Turn solved blocks into dense generator matrices.

Presentations, for each simple root with ``wt = w_i t``:

    R   = exp(wt h)
    T^± = exp(wt h / 4) X^± exp(wt h / 4)
    Q^± = T^± ± R / (2 sinh wt) = (s ± r) / (2 sinh wt)
    s   = sinh(wt) (T^+ + T^-),   r = R + sinh(wt) (T^+ - T^-)
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable

import numpy as np

from .algebra_data import AlgebraKind, root_system
from .chain_solver import DEFAULT_TOL, BlockSystem, solve_a2, solve_b2, solve_g2
from .characters import _check_dominant, character
from .errors import CapExceeded, InvalidParameter, RoundingError, ShapeError
from .generators import BasisLabel, GeneratorSet
from .rank_one import _check_t, build_d2, rank_one_generators
from .spectra import SpectraTable, build_spectra

log = logging.getLogger(__name__)

MAX_DIM = 2000

_SOLVERS = {AlgebraKind.A2: solve_a2, AlgebraKind.B2: solve_b2, AlgebraKind.G2: solve_g2}


def _sr_pair(bs: BlockSystem, root: int) -> tuple[np.ndarray, np.ndarray]:
    st = bs.spectra
    n = st.total_dim
    wt = bs.rs.symmetrizers[root - 1] * bs.t
    s = np.zeros((n, n))
    r = np.diag([math.exp(wt * w[root - 1]) for w in st.row_weights()])
    for edge in bs.graph.edges(root):
        up, low = st.slice(edge.upper), st.slice(edge.lower)
        blk = bs.values[edge]
        if blk.shape != (up.stop - up.start, low.stop - low.start):
            raise ShapeError(f"block {edge} has shape {blk.shape}")
        s[up, low] += blk
        s[low, up] += blk.T
        r[up, low] += blk
        r[low, up] -= blk.T
    return s, r


def assemble_sr(bs: BlockSystem) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Dense ``(s^1, r^1, s^2, r^2)``; rows follow the spectra table."""
    s1, r1 = _sr_pair(bs, 1)
    s2, r2 = _sr_pair(bs, 2)
    return s1, r1, s2, r2


def _round_h(r: np.ndarray, wt: float, root: int) -> np.ndarray:
    raw = np.log(np.diag(r)) / wt
    h = np.rint(raw)
    off = float(np.max(np.abs(raw - h), initial=0.0))
    if off > 1e-6:
        raise RoundingError(f"h{root} recovered from R is {off:.2e} away from an integer")
    return h


def to_generators(
    s1: np.ndarray, r1: np.ndarray, s2: np.ndarray, r2: np.ndarray, st: SpectraTable, t: float
) -> GeneratorSet:
    """Invert the substitutions above.

    ``h`` is taken from the exact weights of the spectra table; the value
    recovered from ``log diag R`` only serves as a cross-check.
    """
    rs = st.rs
    n = st.total_dim
    if any(m.shape != (n, n) for m in (s1, r1, s2, r2)):
        raise ShapeError(f"matrices do not match dimension {n}")
    weights = st.row_weights()
    xplus, xminus, hs = [], [], []
    for root, (s, r) in enumerate(((s1, r1), (s2, r2)), start=1):
        wt = rs.symmetrizers[root - 1] * t
        h = np.array([w[root - 1] for w in weights], dtype=float)
        if not np.array_equal(_round_h(r, wt, root), h):
            raise RoundingError(f"diag R{root} disagrees with the weight table")
        two_sinh = 2 * math.sinh(wt)
        qp = (s + r) / two_sinh
        qm = (s - r) / two_sinh
        shift = np.diag(r) / two_sinh
        tp = qp - np.diag(shift)
        tm = qm + np.diag(shift)
        quarter = np.exp(-wt * h / 4)
        xplus.append(quarter[:, None] * tp * quarter[None, :])
        xminus.append(quarter[:, None] * tm * quarter[None, :])
        hs.append(np.diag(h))
    basis = [BasisLabel(*key) for key, _ in sorted(st.basis_index.items(), key=lambda kv: kv[1])]
    hw = _highest_weight(st)
    return GeneratorSet(rs.kind, hw, t, tuple(xplus), tuple(xminus), tuple(hs), weights, basis)


def _highest_weight(st: SpectraTable) -> tuple[int, ...]:
    """The only weight with nothing above it along either simple root."""
    present = set(st.weight_node)
    tops = [
        w for w in present
        if all(tuple(a + b for a, b in zip(w, alpha)) not in present for alpha in st.rs.simple_roots)
    ]
    if len(tops) != 1:
        raise ShapeError(f"spectra table has {len(tops)} highest weights")
    return tops[0]


def spectra_for(kind: AlgebraKind | str, hw: Iterable[int]) -> SpectraTable:
    rs = root_system(AlgebraKind.parse(kind))
    hw = _check_dominant(rs, hw)
    char = character(rs, hw)
    if char.mass() > MAX_DIM:
        raise CapExceeded(f"dimension {char.mass()} exceeds {MAX_DIM}")
    return build_spectra(rs, char)


def solve_blocks(
    kind: AlgebraKind | str,
    hw: Iterable[int],
    t: float,
    tol: float = DEFAULT_TOL,
    gauge: str = "lower",
    order: str = "forward",
) -> BlockSystem:
    kind = AlgebraKind.parse(kind)
    if kind not in _SOLVERS:
        raise InvalidParameter(f"{kind.value} is built in closed form, not by block solving")
    t = _check_t(t)
    st = spectra_for(kind, hw)
    log.info("solving %s %s at t=%g, dim %d", kind.value, tuple(hw), t, st.total_dim)
    return _SOLVERS[kind](st.rs, st, t, tol, gauge=gauge, order=order)


def build_generators(
    kind: AlgebraKind | str,
    hw: Iterable[int],
    t: float,
    tol: float = DEFAULT_TOL,
    gauge: str = "lower",
    order: str = "forward",
) -> GeneratorSet:
    """Generators of the irreducible representation with highest weight ``hw``."""
    kind = AlgebraKind.parse(kind)
    hw = _check_dominant(root_system(kind), hw)
    if not 0 < tol < 1:
        raise InvalidParameter(f"tolerance must lie in (0, 1), got {tol}")
    if kind is AlgebraKind.A1:
        return rank_one_generators(hw[0], t)
    if kind is AlgebraKind.D2:
        return build_d2(hw, t)
    bs = solve_blocks(kind, hw, t, tol, gauge, order)
    return to_generators(*assemble_sr(bs), bs.spectra, bs.t)

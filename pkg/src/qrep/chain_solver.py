"""Recursive solution of the quadratic block systems.

Unknowns are the primitive blocks of ``s^i = sinh(w_i t) (T^+_i + T^-_i)``.
For a node ``nu`` the two blocks raising out of it, ``a`` along the first
root and ``b`` along the second, share the column space ``V_nu`` and obey

    a a^T = A,   b b^T = B,   b a^T = C,

with ``A, B, C`` built from blocks that raise out of higher nodes.  Nodes are
visited by increasing depth below the highest weight, so every right-hand
side is known when it is needed.  For A2 depth and Q-level coincide.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .algebra_data import AlgebraKind, RootSystem, Weight
from .errors import ConsistencyError, InternalError, NegativeEigenvalue, RankError
from .rank_one import build_rank_one
from .spectra import BlockGraph, Edge, Node, SpectraTable, build_block_graph

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9


@dataclass
class GramStep:
    A: np.ndarray  # (ra, ra)
    B: np.ndarray  # (rb, rb)
    C: np.ndarray  # (rb, ra)
    n_cols: int
    location: Node | None = None

    def stacked(self) -> np.ndarray:
        return np.block([[self.A, self.C.T], [self.C, self.B]])


def _lower_gauge(m: np.ndarray) -> np.ndarray:
    """Rotate columns so the leading square block is lower-triangular, diag >= 0."""
    if m.shape[1] == 0:
        return m
    q, r = np.linalg.qr(m.T)
    signs = np.where(np.diag(r) < 0, -1.0, 1.0)
    return m @ (q * signs)


GAUGES: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "lower": _lower_gauge,
    # same rule applied to the reversed row order
    "trailing": lambda m: _lower_gauge(m[::-1])[::-1],
}


def solve_gram_step(
    step: GramStep, tol: float = DEFAULT_TOL, gauge: str = "lower"
) -> tuple[np.ndarray, np.ndarray]:
    ra, rb = step.A.shape[0], step.B.shape[0]
    g = step.stacked()
    if g.size == 0:
        if step.n_cols:
            raise RankError("no raising blocks for a non-highest node", step.location)
        return np.zeros((0, 0)), np.zeros((0, 0))
    g = (g + g.T) / 2
    vals, vecs = np.linalg.eigh(g)
    scale = float(np.max(np.abs(vals)))
    if scale == 0.0:
        if step.n_cols:
            raise RankError(f"zero Gram matrix but multiplicity {step.n_cols}", step.location)
        return np.zeros((ra, 0)), np.zeros((rb, 0))
    if vals[0] < -tol * scale:
        raise NegativeEigenvalue(f"Gram eigenvalue {vals[0]:.3e} (scale {scale:.3e})", step.location)
    keep = vals > tol * scale
    rank = int(keep.sum())
    if rank != step.n_cols:
        raise RankError(
            f"Gram rank {rank} differs from multiplicity {step.n_cols} "
            f"(eigenvalues {np.array2string(vals / scale, precision=3)})",
            step.location,
        )
    m = vecs[:, keep] * np.sqrt(vals[keep])
    m = GAUGES[gauge](m)
    return m[:ra], m[ra:]


@dataclass
class BlockSystem:
    rs: RootSystem
    spectra: SpectraTable
    graph: BlockGraph
    t: float
    values: dict[Edge, np.ndarray]
    gauge_log: list[str] = field(default_factory=list)

    def edge_between(self, root: int, lower_weight: Weight) -> Edge | None:
        return _edge_lookup(self.graph, self.spectra).get((root, lower_weight))

    def block(self, root: int, lower_weight: Weight) -> np.ndarray | None:
        edge = self.edge_between(root, lower_weight)
        return None if edge is None else self.values[edge]

    def singular_values(self) -> dict[Edge, np.ndarray]:
        return {e: np.linalg.svd(v, compute_uv=False) for e, v in self.values.items()}


def _edge_lookup(graph: BlockGraph, st: SpectraTable) -> dict[tuple[int, Weight], Edge]:
    return {(e.root, st.node_weight[e.lower]): e for e in graph.all_edges()}


def _add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


class _Recursion:
    """Right-hand sides of the Gram systems, shared by solver and checks."""

    def __init__(self, rs: RootSystem, st: SpectraTable, graph: BlockGraph, t: float):
        self.rs, self.st, self.t = rs, st, t
        self.lookup = _edge_lookup(graph, st)
        self.values: dict[Edge, np.ndarray] = {}

    def raising(self, root: int, weight: Weight) -> np.ndarray | None:
        edge = self.lookup.get((root, weight))
        return None if edge is None else self.values.get(edge)

    def diagonal_term(self, root: int, target: Weight) -> float:
        wt = self.rs.symmetrizers[root - 1] * self.t
        m = target[root - 1]
        return math.exp(-wt) * math.sinh(wt) * math.expm1(2 * wt * m) / 2

    def gram_diag(self, root: int, target: Weight, size: int) -> np.ndarray:
        wt = self.rs.symmetrizers[root - 1] * self.t
        out = self.diagonal_term(root, target) * np.eye(size)
        up = self.raising(root, target)
        if up is not None:
            out = out + math.exp(-2 * wt) * up.T @ up
        return out

    def gram_cross(self, nu: Weight, size1: int, size2: int) -> np.ndarray:
        a1, a2 = self.rs.simple_roots
        t1, t2 = _add(nu, a1), _add(nu, a2)
        s1 = self.raising(1, t2)  # t2 -> t1 + a2 along root 1
        s2 = self.raising(2, t1)  # t1 -> t1 + a2 along root 2
        if s1 is None or s2 is None:
            return np.zeros((size2, size1))
        factor = math.exp(-self.rs.sym_cartan[1][0] * self.t)
        return factor * s1.T @ s2

    def step(self, nu: Weight, n_cols: int) -> GramStep:
        st = self.st
        targets = [_add(nu, a) for a in self.rs.simple_roots]
        sizes = [st.mults[st.weight_node[w]] if w in st.weight_node else 0 for w in targets]
        blocks = [
            self.gram_diag(r + 1, targets[r], sizes[r]) if sizes[r] else np.zeros((0, 0))
            for r in range(2)
        ]
        cross = self.gram_cross(nu, sizes[0], sizes[1]) if all(sizes) else np.zeros((sizes[1], sizes[0]))
        return GramStep(blocks[0], blocks[1], cross, n_cols, st.weight_node.get(nu))


def _highest(st: SpectraTable, graph: BlockGraph) -> Weight:
    lowered = {e.lower for e in graph.all_edges()}
    tops = [nd for nd in graph.nodes if nd not in lowered]
    if len(tops) != 1:
        raise InternalError(f"expected one highest node, found {tops}")
    return st.node_weight[tops[0]]


def depth_schedule(rs: RootSystem, st: SpectraTable, graph: BlockGraph) -> list[list[Node]]:
    """Nodes grouped by depth below the highest weight (steps of one simple root)."""
    hw = _highest(st, graph)
    groups: dict[int, list[Node]] = {}
    for nd in graph.nodes:
        groups.setdefault(rs.depth(hw, st.node_weight[nd]), []).append(nd)
    return [sorted(groups[d]) for d in sorted(groups)]


def _solve_chains(
    rs: RootSystem,
    st: SpectraTable,
    graph: BlockGraph,
    t: float,
    tol: float,
    gauge: str,
    order: str,
) -> BlockSystem:
    rec = _Recursion(rs, st, graph, t)
    gauge_log = []
    schedule = depth_schedule(rs, st, graph)
    for depth, nodes in enumerate(schedule):
        if depth == 0:
            continue
        if order == "reverse":
            nodes = nodes[::-1]
        elif order != "forward":
            raise ValueError(f"unknown order {order!r}")
        for nd in nodes:
            nu = st.node_weight[nd]
            step = rec.step(nu, st.mults[nd])
            a, b = solve_gram_step(step, tol, gauge)
            for root, blk in ((1, a), (2, b)):
                if blk.shape[0]:
                    rec.values[rec.lookup[(root, nu)]] = blk
            gauge_log.append(f"depth {depth} node {nd}: rank {st.mults[nd]}, gauge {gauge}")
            log.debug("solved node %s at depth %d", nd, depth)
    missing = [e for e in graph.all_edges() if e not in rec.values]
    if missing:
        raise InternalError(f"unsolved blocks {missing}")
    return BlockSystem(rs, st, graph, t, rec.values, gauge_log)


def system_residual(bs: BlockSystem) -> float:
    """Largest relative residual of every Gram and cross row of the system."""
    rec = _Recursion(bs.rs, bs.spectra, bs.graph, bs.t)
    rec.values = bs.values
    worst = 0.0
    for nd in bs.graph.nodes:
        nu = bs.spectra.node_weight[nd]
        a = rec.raising(1, nu)
        b = rec.raising(2, nu)
        if a is None and b is None:
            continue
        step = rec.step(nu, bs.spectra.mults[nd])
        m = np.vstack([x for x in (a, b) if x is not None])
        got = m @ m.T
        want = step.stacked()
        scale = max(np.linalg.norm(want), np.linalg.norm(got), 1e-300)
        worst = max(worst, float(np.linalg.norm(got - want)) / scale)
    return worst


def boundary_residual(bs: BlockSystem) -> float:
    """Relative size of the Gram right-hand side at nodes just outside the module.

    Exact closure of the recursion means these all vanish.
    """
    rs, st = bs.rs, bs.spectra
    rec = _Recursion(rs, st, bs.graph, bs.t)
    rec.values = bs.values
    ref = max((float(np.linalg.norm(v)) ** 2 for v in bs.values.values()), default=0.0)
    worst = 0.0
    virtual = set()
    for w in st.weight_node:
        for alpha in rs.simple_roots:
            nu = tuple(x - y for x, y in zip(w, alpha))
            if nu not in st.weight_node:
                virtual.add(nu)
    for nu in sorted(virtual):
        g = rec.step(nu, 0).stacked()
        if g.size:
            worst = max(worst, float(np.linalg.norm(g)) / max(ref, 1e-300))
    return worst


def _check(value: float, tol: float, what: str) -> None:
    if not value <= tol:
        raise ConsistencyError(f"{what} residual {value:.3e} exceeds {tol:.1e}")


def solve_a2(
    rs: RootSystem,
    st: SpectraTable,
    t: float,
    tol: float = DEFAULT_TOL,
    *,
    gauge: str = "lower",
    order: str = "forward",
) -> BlockSystem:
    if rs.kind is not AlgebraKind.A2:
        raise InternalError("solve_a2 called for a different algebra")
    bs = _solve_chains(rs, st, build_block_graph(rs, st), t, tol, gauge, order)
    _check(boundary_residual(bs), 1e3 * tol, "boundary closure")
    return bs


def solve_g2(
    rs: RootSystem,
    st: SpectraTable,
    t: float,
    tol: float = DEFAULT_TOL,
    *,
    gauge: str = "lower",
    order: str = "forward",
) -> BlockSystem:
    if rs.kind is not AlgebraKind.G2:
        raise InternalError("solve_g2 called for a different algebra")
    bs = _solve_chains(rs, st, build_block_graph(rs, st), t, tol, gauge, order)
    _check(boundary_residual(bs), 1e3 * tol, "boundary closure")
    _check(system_residual(bs), 1e3 * tol, "cross-coupling")
    return bs


def solve_b2(
    rs: RootSystem,
    st: SpectraTable,
    t: float,
    tol: float = DEFAULT_TOL,
    *,
    gauge: str = "lower",
    order: str = "forward",
) -> BlockSystem:
    """Solve, then rotate every Q-level into a basis of first-root strings.

    Inside one level the first-root blocks then form a direct sum of rank-one
    representations, one per string, with copies ordered by decreasing spin.
    """
    if rs.kind is not AlgebraKind.B2:
        raise InternalError("solve_b2 called for a different algebra")
    bs = _solve_chains(rs, st, build_block_graph(rs, st), t, tol, gauge, order)
    _regauge_strings(bs, tol)
    _check(boundary_residual(bs), 1e3 * tol, "boundary closure")
    _check(within_level_residual(bs), 1e3 * tol, "within-level commutator")
    return bs


def _x_from_s(rs: RootSystem, t: float, root: int, lower: Weight, s_block: np.ndarray) -> np.ndarray:
    wt = rs.symmetrizers[root - 1] * t
    return s_block / (math.sinh(wt) * math.exp(wt * (lower[root - 1] + 1) / 2))


def _complement_basis(vectors: np.ndarray, dim: int, tol: float) -> np.ndarray:
    """Orthonormal, sign-fixed basis of the orthogonal complement of ``vectors``."""
    proj = np.eye(dim) - vectors @ vectors.T
    vals, vecs = np.linalg.eigh((proj + proj.T) / 2)
    comp = vecs[:, vals > 0.5]
    if comp.shape[1] == 0:
        return comp
    q, r = np.linalg.qr(comp)
    signs = np.where(np.diag(r) < 0, -1.0, 1.0)
    basis = q * signs
    # make the first nonzero component of each vector positive
    for k in range(basis.shape[1]):
        col = basis[:, k]
        lead = np.flatnonzero(np.abs(col) > 1e-12)
        if lead.size and col[lead[0]] < 0:
            basis[:, k] = -col
    return basis


def _regauge_strings(bs: BlockSystem, tol: float) -> None:
    rs, st, t = bs.rs, bs.spectra, bs.t
    rec = _Recursion(rs, st, bs.graph, t)
    rec.values = bs.values
    alpha1 = rs.simple_roots[0]
    frames: dict[Weight, np.ndarray] = {}
    for lv in st.levels:
        weights = sorted((st.node_weight[(lv.n, a)] for a, _ in lv.alpha_classes), key=lambda w: -w[0])
        for w in weights:
            dim = st.mults[st.weight_node[w]]
            above = _add(w, alpha1)
            parts = []
            if above in frames:
                x = _x_from_s(rs, t, 1, w, rec.raising(1, w))  # V_w -> V_above
                images = x.T @ frames[above]  # X^- applied to the string vectors above
                norms = np.linalg.norm(images, axis=0)
                images = images[:, norms > math.sqrt(tol)] / norms[norms > math.sqrt(tol)]
                parts.append(images)
            used = np.hstack(parts) if parts else np.zeros((dim, 0))
            fresh = _complement_basis(used, dim, tol)
            frame = np.hstack([used, fresh])
            if frame.shape != (dim, dim):
                raise ConsistencyError(f"string basis of {w} has shape {frame.shape}", st.weight_node[w])
            frames[w] = frame
    for edge, blk in bs.values.items():
        up, low = st.node_weight[edge.upper], st.node_weight[edge.lower]
        bs.values[edge] = frames[up].T @ blk @ frames[low]
    bs.gauge_log.append("B2: levels rotated into first-root string frames")


def within_level_blocks(bs: BlockSystem, level: int) -> tuple[np.ndarray, np.ndarray, list[Weight]]:
    """Level-restricted ``(s^1, r^1)`` for B2, rows ordered as in the spectra table."""
    st, rs, t = bs.spectra, bs.rs, bs.t
    lv = next(x for x in st.levels if x.n == level)
    start = st.offset((lv.n, lv.alpha_classes[0][0]))
    size = lv.dim
    s = np.zeros((size, size))
    r = np.zeros((size, size))
    weights = st.row_weights()[start : start + size]
    for k, w in enumerate(weights):
        r[k, k] = math.exp(rs.symmetrizers[0] * t * w[0])
    for edge in bs.graph.edges_a:
        if edge.upper[0] != level:
            continue
        up = st.slice(edge.upper)
        low = st.slice(edge.lower)
        up = slice(up.start - start, up.stop - start)
        low = slice(low.start - start, low.stop - start)
        blk = bs.values[edge]
        s[up, low] += blk
        s[low, up] += blk.T
        r[up, low] += blk
        r[low, up] -= blk.T
    return s, r, weights


def within_level_residual(bs: BlockSystem) -> float:
    """``[a, b] = tanh t (a^2 - b^2 + 1)`` per level, plus the rank-one string check."""
    t = bs.t
    worst = 0.0
    for lv in bs.spectra.levels:
        s, r, weights = within_level_blocks(bs, lv.n)
        lhs = s @ r - r @ s
        rhs = math.tanh(t) * (s @ s - r @ r + np.eye(len(s)))
        scale = max(np.linalg.norm(lhs), np.linalg.norm(rhs), 1.0)
        worst = max(worst, float(np.linalg.norm(lhs - rhs)) / scale)
        worst = max(worst, _string_mismatch(bs, lv.n, s, weights))
    return worst


def _string_mismatch(bs: BlockSystem, level: int, s: np.ndarray, weights: list[Weight]) -> float:
    """Compare each first-root string with the closed rank-one ladder."""
    t = bs.t
    alpha1 = bs.rs.simple_roots[0]
    # X^+ within the level, recovered from the symmetric s^1 block
    upper = np.zeros_like(s)
    index = {}
    for k, w in enumerate(weights):
        index.setdefault(w, []).append(k)
    for w, rows in index.items():
        above = _add(w, alpha1)
        if above not in index:
            continue
        block = s[np.ix_(index[above], rows)]
        upper[np.ix_(index[above], rows)] = block / (math.sinh(t) * math.exp(t * (w[0] + 1) / 2))
    worst = 0.0
    visited = set()
    for w in sorted(index, key=lambda x: -x[0]):
        for copy, k in enumerate(index[w]):
            if k in visited:
                continue
            chain = [k]
            cur, pos = w, copy
            while True:
                nxt = tuple(x - y for x, y in zip(cur, alpha1))
                if nxt not in index or pos >= len(index[nxt]):
                    break
                cur = nxt
                chain.append(index[cur][pos])
            visited.update(chain)
            twice_l = len(chain) - 1
            if twice_l != w[0]:
                return float("inf")
            ref = build_rank_one(twice_l, t).xplus
            got = upper[np.ix_(chain, chain)]
            worst = max(worst, float(np.max(np.abs(got - ref))) / max(1.0, float(np.max(np.abs(ref)))))
    return worst

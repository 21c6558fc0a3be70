"""Independent checks: relation residuals, classical limit, Verma-module oracle."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algebra_data import AlgebraKind, RootSystem, Weight, root_system
from .characters import _check_dominant
from .errors import CapExceeded, DimensionMismatch, NumericalRankAmbiguity
from .generators import GeneratorSet, label_rows
from .rank_one import _check_t

ORACLE_CAP = 200
ORACLE_TOL = 1e-8


# ---------------------------------------------------------------- relations


@dataclass
class RelationReport:
    """Residual norms of every defining relation.

    Each entry maps a relation name to ``(residual, term_scale)``; the
    relative residual is their ratio.  ``scale`` is the largest generator norm.
    """

    cartan_action: dict[str, tuple[float, float]] = field(default_factory=dict)
    ladder: dict[str, tuple[float, float]] = field(default_factory=dict)
    qform: dict[str, tuple[float, float]] = field(default_factory=dict)
    qq: dict[str, tuple[float, float]] = field(default_factory=dict)
    scale: float = 0.0
    tol: float = 1e-9

    def groups(self) -> dict[str, dict[str, tuple[float, float]]]:
        return {"cartan_action": self.cartan_action, "ladder": self.ladder, "qform": self.qform, "qq": self.qq}

    def relative(self) -> dict[str, float]:
        return {
            f"{g}:{name}": res / max(sc, 1e-300)
            for g, rows in self.groups().items()
            for name, (res, sc) in rows.items()
        }

    def max_relative(self) -> float:
        return max(self.relative().values(), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_relative() <= self.tol


def _rel(report_group: dict, name: str, lhs: Sequence[np.ndarray], rhs: Sequence[np.ndarray]) -> None:
    """Record ``||sum lhs - sum rhs||`` against the largest single term."""
    diff = sum(lhs) - sum(rhs)
    terms = [np.linalg.norm(x) for x in (*lhs, *rhs)]
    report_group[name] = (float(np.linalg.norm(diff)), float(max(terms, default=0.0)) or 1.0)


def presentations(g: GeneratorSet) -> dict[str, list[np.ndarray]]:
    """``R_i``, ``T^\\pm_i`` and ``Q^\\pm_i`` derived from the ``X, h`` data."""
    rs = g.rs
    out: dict[str, list[np.ndarray]] = {"R": [], "Tp": [], "Tm": [], "Qp": [], "Qm": []}
    for i in range(g.rank):
        wt = rs.symmetrizers[i] * g.t
        hd = np.diag(g.h[i])
        quarter = np.exp(wt * hd / 4)
        r = np.diag(np.exp(wt * hd))
        tp = quarter[:, None] * g.xplus[i] * quarter[None, :]
        tm = quarter[:, None] * g.xminus[i] * quarter[None, :]
        shift = r / (2 * math.sinh(wt))
        out["R"].append(r)
        out["Tp"].append(tp)
        out["Tm"].append(tm)
        out["Qp"].append(tp + shift)
        out["Qm"].append(tm - shift)
    return out


def check_relations(g: GeneratorSet, tol: float = 1e-9) -> RelationReport:
    rs, t, n = g.rs, g.t, g.dim
    kt = rs.sym_cartan
    w = rs.symmetrizers
    eye = np.eye(n)
    rep = RelationReport(tol=tol)
    rep.scale = float(max(np.linalg.norm(m) for m in (*g.xplus, *g.xminus, *g.h)))
    p = presentations(g)
    R, Tp, Tm, Qp, Qm = p["R"], p["Tp"], p["Tm"], p["Qp"], p["Qm"]
    r = g.rank

    for i in range(r):
        for j in range(r):
            k = rs.cartan[i][j]  # h_i eigenvalue shift produced by X_j
            for sign, x in ((1, g.xplus[j]), (-1, g.xminus[j])):
                tag = "+" if sign > 0 else "-"
                _rel(rep.cartan_action, f"[h{i+1},X{tag}{j+1}]", [g.h[i] @ x, -x @ g.h[i]], [sign * k * x])
            want = [np.diag(np.sinh(t * w[i] * np.diag(g.h[i])) / math.sinh(w[i] * t))] if i == j else []
            _rel(rep.ladder, f"[X+{i+1},X-{j+1}]", [g.xplus[i] @ g.xminus[j], -g.xminus[j] @ g.xplus[i]], want)

    for i in range(r):
        for j in range(r):
            f = math.exp(kt[j][i] * t)
            _rel(rep.qform, f"R{i+1}T+{j+1}", [R[i] @ Tp[j]], [f * Tp[j] @ R[i]])
            _rel(rep.qform, f"R{i+1}T-{j+1}", [R[i] @ Tm[j]], [Tm[j] @ R[i] / f])
            h = math.exp(kt[j][i] * t / 2)
            want = [(R[i] @ R[i] - eye) / (2 * math.sinh(w[i] * t))] if i == j else []
            _rel(rep.qform, f"T+{i+1}T-{j+1}", [h * Tp[i] @ Tm[j], -Tm[j] @ Tp[i] / h], want)

    for i in range(r):
        e = math.exp(w[i] * t)
        _rel(rep.qq, f"row1[{i+1}]", [e * Qp[i] @ Qm[i], -Qm[i] @ Qp[i] / e], [-eye / (2 * math.sinh(w[i] * t))])
    for i in range(r):
        for j in range(r):
            if i == j:
                continue
            h = math.exp(kt[j][i] * t / 2)
            if kt[i][j] != 0:
                _rel(
                    rep.qq,
                    f"row2[{i+1},{j+1}]",
                    [h * (Qp[i] @ Qm[j] - Qp[j] @ Qm[i]), -(Qm[j] @ Qp[i] - Qm[i] @ Qp[j]) / h],
                    [],
                )
                rhs = -math.sinh(kt[j][i] * t / 2) / (math.sinh(w[i] * t) * math.sinh(w[j] * t)) * R[i] @ R[j]
                _rel(
                    rep.qq,
                    f"row4[{i+1},{j+1}]",
                    [h * (Qp[i] @ Qm[j] + Qp[j] @ Qm[i]), -(Qm[j] @ Qp[i] + Qm[i] @ Qp[j]) / h],
                    [rhs],
                )
            else:
                _rel(rep.qq, f"row3[{i+1},{j+1}]", [Qp[i] @ Qm[j], -Qm[j] @ Qp[i]], [])
    for i in range(r):
        for j in range(r):
            for sign, q in ((1, Qp[j]), (-1, Qm[j])):
                f = math.exp(sign * kt[j][i] * t)
                corr = sign * (f - 1) * R[j] @ R[i] / (2 * math.sinh(w[j] * t))
                tag = "+" if sign > 0 else "-"
                _rel(rep.qq, f"row5[R{i+1}Q{tag}{j+1}]", [R[i] @ q], [f * q @ R[i], -corr])
    return rep


def classical_residual(g: GeneratorSet) -> float:
    """``max_i ||[X^+_i, X^-_i] - h_i||``; vanishes as ``t^2`` when ``t -> 0``."""
    return max(
        float(np.linalg.norm(g.xplus[i] @ g.xminus[i] - g.xminus[i] @ g.xplus[i] - g.h[i])) for i in range(g.rank)
    )


def classical_trace_gap(g: GeneratorSet, i: int = 0) -> float:
    """Relative gap between ``Tr([X^+_i, X^-_i] h_i)`` and ``Tr(h_i^2)``."""
    c = g.xplus[i] @ g.xminus[i] - g.xminus[i] @ g.xplus[i]
    a = float(np.trace(c @ g.h[i]))
    b = float(np.trace(g.h[i] @ g.h[i]))
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


# ---------------------------------------------------------------- oracle

Word = tuple[int, ...]  # lowering indices, leftmost applied last
Vector = dict[Word, float]


class _Verma:
    """Verma module words with the contravariant form fixed by ``<v, v> = 1``."""

    def __init__(self, rs: RootSystem, hw: Weight, t: float):
        self.rs, self.hw, self.t = rs, hw, t
        self.raise_action = lru_cache(maxsize=None)(self._raise_action)
        self.inner = lru_cache(maxsize=None)(self._inner)

    def weight(self, word: Word) -> Weight:
        out = list(self.hw)
        for j in word:
            for k, a in enumerate(self.rs.simple_roots[j]):
                out[k] -= a
        return tuple(out)

    def qnum(self, i: int, n: int) -> float:
        wt = self.rs.symmetrizers[i] * self.t
        return math.sinh(wt * n) / math.sinh(wt)

    def _raise_action(self, i: int, word: Word) -> tuple[tuple[Word, float], ...]:
        """``X^+_i`` on a word, pushed through to the highest vector."""
        if not word:
            return ()
        head, rest = word[0], word[1:]
        acc: dict[Word, float] = {}
        if head == i:
            c = self.qnum(i, self.weight(rest)[i])
            if c:
                acc[rest] = acc.get(rest, 0.0) + c
        for w, c in self.raise_action(i, rest):
            key = (head, *w)
            acc[key] = acc.get(key, 0.0) + c
        return tuple((w, c) for w, c in acc.items() if c)

    def _inner(self, a: Word, b: Word) -> float:
        if len(a) != len(b):
            return 0.0
        if not a:
            return 1.0
        if self.weight(a) != self.weight(b):
            return 0.0
        return math.fsum(c * self.inner(a[1:], w) for w, c in self.raise_action(a[0], b))

    def vec_inner(self, u: Vector, v: Vector) -> float:
        return math.fsum(cu * cv * self.inner(a, b) for a, cu in u.items() for b, cv in v.items())


def build_oracle(
    algebra: AlgebraKind | str,
    hw: Iterable[int],
    t: float,
    tol: float = ORACLE_TOL,
    cap: int = ORACLE_CAP,
) -> GeneratorSet:
    """Irreducible quotient of the Verma module, built by brute-force lowering.

    Candidates ``X^-_i b`` for orthonormal ``b`` one step higher are reduced
    with the eigen-decomposition of their Gram matrix; null directions are
    the submodule that is quotiented out.  Eigenvalues are judged against the
    largest Gram eigenvalue met so far (at least 1, the highest vector).
    """
    rs = root_system(AlgebraKind.parse(algebra))
    hw = _check_dominant(rs, hw)
    t = _check_t(t)
    verma = _Verma(rs, hw, t)
    basis: dict[Weight, list[Vector]] = {hw: [{(): 1.0}]}
    frontier = [hw]
    total = 1
    ref = 1.0
    while frontier:
        new_weights: dict[Weight, list[Vector]] = {}
        parent_scale: dict[Weight, list[float]] = {}
        for mu in frontier:
            for i in range(rs.rank):
                target = tuple(a - b for a, b in zip(mu, rs.simple_roots[i]))
                parent_scale.setdefault(target, []).append(abs(verma.qnum(i, mu[i])))
                for b in basis[mu]:
                    new_weights.setdefault(target, []).append({(i, *w): c for w, c in b.items()})
        frontier = []
        for nu in sorted(new_weights, reverse=True):
            if nu in basis:
                continue
            cands = new_weights[nu]
            # every candidate also arises from the other parents; collect them all
            gram = np.array([[verma.vec_inner(u, v) for v in cands] for u in cands])
            vals, vecs = np.linalg.eigh((gram + gram.T) / 2)
            # a null weight space has only round-off entries, so the scale
            # must come from data already known to be nonzero
            ref = max(ref, float(np.max(np.abs(vals))), *parent_scale[nu])
            ratio = vals / ref
            if np.any((np.abs(ratio) > tol * 1e-2) & (np.abs(ratio) < tol * 1e2)):
                raise NumericalRankAmbiguity(f"Gram eigenvalue near the rank threshold at weight {nu}")
            keep = ratio > tol
            if not keep.any():
                continue
            vectors = []
            for k in np.flatnonzero(keep):
                coef = vecs[:, k] / math.sqrt(vals[k])
                acc: Vector = {}
                for c, cand in zip(coef, cands):
                    for w, x in cand.items():
                        acc[w] = acc.get(w, 0.0) + c * x
                vectors.append({w: x for w, x in acc.items() if x})
            basis[nu] = vectors
            total += len(vectors)
            if total > cap:
                raise CapExceeded(f"oracle dimension exceeds cap {cap}")
            frontier.append(nu)

    order = sorted(basis, key=lambda wgt: (-rs.q_degree(wgt), -rs.alpha_degree(wgt), wgt))
    index: dict[Weight, int] = {}
    weights: list[Weight] = []
    for wgt in order:
        index[wgt] = len(weights)
        weights.extend([wgt] * len(basis[wgt]))
    n = len(weights)
    xminus = []
    for i in range(rs.rank):
        xm = np.zeros((n, n))
        for mu in order:
            target = tuple(a - b for a, b in zip(mu, rs.simple_roots[i]))
            if target not in basis:
                continue
            for col, b in enumerate(basis[mu]):
                image = {(i, *w): c for w, c in b.items()}
                for row, bt in enumerate(basis[target]):
                    xm[index[target] + row, index[mu] + col] = verma.vec_inner(bt, image)
        xminus.append(xm)
    hs = tuple(np.diag([float(wgt[i]) for wgt in weights]) for i in range(rs.rank))
    return GeneratorSet(
        algebra=rs.kind,
        hw=hw,
        t=t,
        xplus=tuple(x.T.copy() for x in xminus),
        xminus=tuple(xminus),
        h=hs,
        weights=weights,
        basis=label_rows(rs, weights),
    )


# ---------------------------------------------------------------- invariants

WORDS: tuple[tuple[str, ...], ...] = (
    (),
    ("xp1", "xm1"),
    ("xp2", "xm2"),
    ("xm1", "xp1"),
    ("e1",),
    ("e2",),
    ("h1", "xp1", "xm1"),
    ("e2", "xp1", "xm1"),
    ("xp1", "xp2", "xm2", "xm1"),
    ("xp1", "xp2", "xm1", "xm2"),
    ("xp2", "xp1", "xm1", "xm2"),
    ("xp1", "xm1", "xp1", "xm1"),
    ("xp1", "xp1", "xm1", "xm1"),
    ("xp2", "xm2", "xp1", "xm1"),
    ("xp1", "xp1", "xp2", "xm2", "xm1", "xm1"),
    ("xp2", "xp1", "xp2", "xm1", "xm2", "xm2"),
    ("xp1", "xm2", "xp2", "xm1", "xp1", "xm1"),
    ("e1", "xp2", "xm1", "xp1", "xm2"),
)


def _word_matrix(g: GeneratorSet, word: Sequence[str]) -> np.ndarray:
    mats = g.matrices()
    for i in range(g.rank):
        mats[f"e{i + 1}"] = np.diag(np.exp(np.diag(g.h[i])))
    out = np.eye(g.dim)
    for name in word:
        out = out @ mats[name]
    return out


def usable_words(rank: int, words: Iterable[Sequence[str]] = WORDS) -> list[tuple[str, ...]]:
    return [tuple(w) for w in words if all(int(x[-1]) <= rank for x in w)]


def compare_invariants(g: GeneratorSet, o: GeneratorSet, words: Iterable[Sequence[str]] | None = None) -> float:
    """Largest relative deviation between word traces of two generator sets."""
    if g.dim != o.dim or g.rank != o.rank:
        raise DimensionMismatch(f"dimensions {g.dim}/{o.dim}, ranks {g.rank}/{o.rank}")
    words = usable_words(g.rank, WORDS if words is None else words)
    pairs = [(float(np.trace(_word_matrix(g, w))), float(np.trace(_word_matrix(o, w)))) for w in words]
    ref = max((max(abs(a), abs(b)) for a, b in pairs), default=1.0)
    return max(
        (abs(a - b) / max(abs(a), abs(b), 1e-12 * ref) for a, b in pairs),
        default=0.0,
    )

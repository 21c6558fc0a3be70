"""Diagonal data of the construction: Q-levels, alpha classes, block graph.

A node ``(n, s)`` is the alpha class with exponent ``s`` inside level ``n``.
For every supported algebra the pair determines a single weight, so nodes
and weight spaces are in one-to-one correspondence.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra_data import RootSystem, Weight
from .characters import WeightPolynomial
from .errors import InternalError, StructureError

Node = tuple[int, int]


@dataclass(frozen=True)
class LevelData:
    n: int
    lambda_exp: int
    alpha_classes: tuple[tuple[int, int], ...]  # (alpha_exp, multiplicity)

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.alpha_classes)

    def beta_exps(self) -> tuple[int, ...]:
        return tuple(self.lambda_exp - a for a, _ in self.alpha_classes)


@dataclass
class SpectraTable:
    rs: RootSystem
    levels: list[LevelData]
    basis_index: dict[tuple[int, int, int], int]
    total_dim: int
    node_weight: dict[Node, Weight]
    weight_node: dict[Weight, Node] = field(repr=False)
    mults: dict[Node, int] = field(repr=False, default_factory=dict)

    def mult(self, node: Node) -> int:
        return self.mults[node]

    def offset(self, node: Node) -> int:
        return self.basis_index[(*node, 0)]

    def slice(self, node: Node) -> slice:
        start = self.offset(node)
        return slice(start, start + self.mult(node))

    def nodes(self) -> list[Node]:
        return [(lv.n, a) for lv in self.levels for a, _ in lv.alpha_classes]

    def row_weights(self) -> list[Weight]:
        out: list[Weight] = [()] * self.total_dim
        for (n, s, _), idx in self.basis_index.items():
            out[idx] = self.node_weight[(n, s)]
        return out


def build_spectra(rs: RootSystem, char: WeightPolynomial) -> SpectraTable:
    if not char or any(c <= 0 for c in char.terms.values()):
        raise InternalError("not a character: empty or non-positive multiplicities")
    by_q: dict[int, dict[int, tuple[Weight, int]]] = {}
    for w, c in char.terms.items():
        cls = by_q.setdefault(rs.q_degree(w), {})
        a = rs.alpha_degree(w)
        if a in cls:
            raise InternalError(f"alpha class {a} does not determine a unique weight")
        cls[a] = (w, c)

    top = max(by_q)
    levels = []
    basis_index: dict[tuple[int, int, int], int] = {}
    node_weight: dict[Node, Weight] = {}
    idx = 0
    for q in sorted(by_q, reverse=True):
        n = (top - q) // rs.level_step + 1
        classes = []
        for a in sorted(by_q[q], reverse=True):
            w, c = by_q[q][a]
            classes.append((a, c))
            node_weight[(n, a)] = w
            for copy in range(c):
                basis_index[(n, a, copy)] = idx
                idx += 1
        levels.append(LevelData(n, q, tuple(classes)))
    return SpectraTable(
        rs=rs,
        levels=levels,
        basis_index=basis_index,
        total_dim=idx,
        node_weight=node_weight,
        weight_node={w: nd for nd, w in node_weight.items()},
        mults={(lv.n, a): m for lv in levels for a, m in lv.alpha_classes},
    )


@dataclass(frozen=True)
class Edge:
    """Primitive block between ``upper`` and ``lower = upper - alpha_root``.

    The stored block has shape ``(dim upper, dim lower)``.
    """

    root: int  # 1 or 2
    upper: Node
    lower: Node
    shape: tuple[int, int]


@dataclass
class BlockGraph:
    nodes: list[Node]
    edges_a: list[Edge]
    edges_b: list[Edge]

    def edges(self, root: int) -> list[Edge]:
        return self.edges_a if root == 1 else self.edges_b

    def all_edges(self) -> list[Edge]:
        return [*self.edges_a, *self.edges_b]

    def chains(self, root: int) -> list[list[Node]]:
        """Connected components along one root direction, top node first."""
        parent = {nd: nd for nd in self.nodes}

        def find(x: Node) -> Node:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges(root):
            parent[find(e.upper)] = find(e.lower)
        groups: dict[Node, list[Node]] = {}
        for nd in self.nodes:
            groups.setdefault(find(nd), []).append(nd)
        down = {e.upper: e.lower for e in self.edges(root)}
        has_up = set(down.values())
        chains = []
        for members in groups.values():
            start = [nd for nd in members if nd not in has_up]
            if len(start) != 1:
                raise StructureError(f"chain {members} is not a simple string")
            chain = [start[0]]
            while chain[-1] in down:
                chain.append(down[chain[-1]])
            chains.append(chain)
        chains.sort()
        return chains


def build_block_graph(rs: RootSystem, st: SpectraTable) -> BlockGraph:
    if rs.rank != 2:
        raise InternalError("block graphs are built for rank-two algebras")
    nodes = st.nodes()
    edges: dict[int, list[Edge]] = {1: [], 2: []}
    outgoing: set[tuple[Node, int]] = set()
    for upper in nodes:
        w = st.node_weight[upper]
        for root in (1, 2):
            alpha = rs.simple_roots[root - 1]
            low_w = tuple(a - b for a, b in zip(w, alpha))
            lower = st.weight_node.get(low_w)
            if lower is None:
                continue
            if lower[0] - upper[0] != rs.shifts[root - 1]:
                raise StructureError(f"level shift {upper}->{lower} violates the selection rule")
            if (upper, root) in outgoing:
                raise StructureError(f"node {upper} has two outgoing blocks along root {root}")
            outgoing.add((upper, root))
            edges[root].append(Edge(root, upper, lower, (st.mult(upper), st.mult(lower))))
    return BlockGraph(nodes, edges[1], edges[2])

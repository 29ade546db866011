"""Two-terminal series-parallel recognition, decomposition trees, clean-tree
transform and capacity folding.

Recognition works by exhaustive series/parallel reduction on an internal
multigraph workspace: inner vertices with in-degree = out-degree = 1 are
contracted (series), parallel edges are merged on creation (parallel), each
step recording a tree node. The reduction system is confluent on acyclic
single-source single-sink graphs, so getting stuck proves the graph is not
series-parallel; the stuck core is then handed to the W-subdivision search
for a best-effort witness.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import BudgetExceededError, NotDspError
from .graphs import DirectedGraph, EdgeSet
from . import _wsearch

LEAF = 0
SERIES = 1
PARALLEL = 2

_KIND_NAMES = {LEAF: "leaf", SERIES: "series", PARALLEL: "parallel"}


class _Node:
    __slots__ = ("kind", "left", "right", "edge", "s", "t")

    def __init__(self, kind, left, right, edge, s, t):
        self.kind = kind
        self.left = left
        self.right = right
        self.edge = edge
        self.s = s
        self.t = t

    def copy(self):
        return _Node(self.kind, self.left, self.right, self.edge, self.s, self.t)


@dataclass
class NotDspWitness:
    """Why a graph is not a two-terminal series-parallel digraph.

    For reason "w-subdivision", `w` holds the embedded subdivision of the
    forbidden graph W when extraction stayed within budget (best effort).
    """

    reason: str  # "cyclic" | "multiple-sources" | "multiple-sinks" | "w-subdivision"
    cycle: Optional[tuple[int, ...]] = None
    sources: Optional[tuple[int, ...]] = None
    sinks: Optional[tuple[int, ...]] = None
    w: Optional[_wsearch.WSubdivision] = None


class DecompositionTree:
    """Binary S/P-composition tree of a two-terminal DSP.

    Leaves biject with the host graph's edges. Every node carries its
    terminal pair; `cap_full[i]` is the max-flow value of node i's subgraph
    between its terminals (leaf 1, series min, parallel sum).
    """

    def __init__(self, graph: DirectedGraph, nodes: list[_Node], root: int):
        self.graph = graph
        self.nodes = nodes
        self.root = root
        self.parent = [-1] * len(nodes)
        for i, nd in enumerate(nodes):
            if nd.kind != LEAF:
                self.parent[nd.left] = i
                self.parent[nd.right] = i
        self.postorder = self._compute_postorder()
        self.leaf_of_edge: dict[int, int] = {
            nd.edge: i for i, nd in enumerate(nodes) if nd.kind == LEAF
        }
        self.cap_full = self.fold(range(graph.m))

    def _compute_postorder(self) -> list[int]:
        order = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            i, expanded = stack.pop()
            if expanded:
                order.append(i)
                continue
            stack.append((i, True))
            nd = self.nodes[i]
            if nd.kind != LEAF:
                stack.append((nd.right, False))
                stack.append((nd.left, False))
        return order

    def fold(self, selected: "EdgeSet | Iterable[int]") -> list[int]:
        """Per-node capacity using only the selected leaf edges.

        Leaf: 1 if selected else 0; series: min of children; parallel: sum.
        Returns a fresh annotation list indexed by node id.
        """
        if isinstance(selected, EdgeSet):
            chosen = selected.indices
        else:
            chosen = set(selected)
        cap = [0] * len(self.nodes)
        for i in self.postorder:
            nd = self.nodes[i]
            if nd.kind == LEAF:
                cap[i] = 1 if nd.edge in chosen else 0
            elif nd.kind == SERIES:
                cap[i] = min(cap[nd.left], cap[nd.right])
            else:
                cap[i] = cap[nd.left] + cap[nd.right]
        return cap

    def terminals(self) -> tuple[int, int]:
        root = self.nodes[self.root]
        return (root.s, root.t)

    def is_clean(self) -> bool:
        """No leaf hangs below a P node that has a P parent."""
        for i, nd in enumerate(self.nodes):
            if nd.kind != LEAF:
                continue
            p = self.parent[i]
            if p != -1 and self.nodes[p].kind == PARALLEL:
                pp = self.parent[p]
                if pp != -1 and self.nodes[pp].kind == PARALLEL:
                    return False
        return True

    def validate(self) -> None:
        """Check structural invariants; raises AssertionError on violation."""
        seen_edges = []
        for i in self.postorder:
            nd = self.nodes[i]
            if nd.kind == LEAF:
                u, v = self.graph.edges[nd.edge]
                assert (nd.s, nd.t) == (u, v), f"leaf {i} terminals mismatch"
                seen_edges.append(nd.edge)
            elif nd.kind == SERIES:
                l, r = self.nodes[nd.left], self.nodes[nd.right]
                assert l.s == nd.s and r.t == nd.t and l.t == r.s, \
                    f"series node {i} terminal chain broken"
            else:
                l, r = self.nodes[nd.left], self.nodes[nd.right]
                assert (l.s, l.t) == (r.s, r.t) == (nd.s, nd.t), \
                    f"parallel node {i} terminals mismatch"
        assert sorted(seen_edges) == list(range(self.graph.m)), \
            "leaves do not biject with graph edges"

    def dump(self) -> str:
        """Indented text rendering (node kind, terminals, full capacity)."""
        lines = []
        stack: list[tuple[int, int]] = [(self.root, 0)]
        while stack:
            i, depth = stack.pop()
            nd = self.nodes[i]
            pad = "  " * depth
            if nd.kind == LEAF:
                lines.append(f"{pad}leaf e{nd.edge} ({nd.s},{nd.t}) cap={self.cap_full[i]}")
            else:
                lines.append(f"{pad}{_KIND_NAMES[nd.kind]} ({nd.s},{nd.t}) cap={self.cap_full[i]}")
                stack.append((nd.right, depth + 1))
                stack.append((nd.left, depth + 1))
        return "\n".join(lines) + "\n"


def recognize_dsp(graph: DirectedGraph,
                  witness_budget: int = _wsearch.DEFAULT_BUDGET) -> DecompositionTree:
    """Decompose a two-terminal series-parallel digraph, or raise NotDspError.

    Contraction picks the lowest eligible vertex id first and parallel merges
    fold the newer edge into the older one, so the resulting tree (and every
    downstream solver decision) is deterministic.
    """
    if graph.m == 0:
        raise ValueError("series-parallel recognition needs at least one edge")
    cycle = graph.find_cycle()
    if cycle is not None:
        raise NotDspError(NotDspWitness("cyclic", cycle=tuple(cycle)))
    srcs = graph.sources()
    snks = graph.sinks()
    if len(srcs) != 1:
        raise NotDspError(NotDspWitness("multiple-sources", sources=tuple(srcs)))
    if len(snks) != 1:
        raise NotDspError(NotDspWitness("multiple-sinks", sinks=tuple(snks)))
    s, t = srcs[0], snks[0]

    nodes: list[_Node] = []
    out: list[dict[int, int]] = [{} for _ in range(graph.n)]
    inn: list[dict[int, int]] = [{} for _ in range(graph.n)]
    node_of: dict[int, int] = {}
    for i, (u, v) in enumerate(graph.edges):
        out[u][v] = i
        inn[v][u] = i
        nodes.append(_Node(LEAF, -1, -1, i, u, v))
        node_of[i] = i
    next_eid = graph.m

    heap = [v for v in range(graph.n)
            if v != s and v != t and len(out[v]) == 1 and len(inn[v]) == 1]
    heapq.heapify(heap)
    while heap:
        v = heapq.heappop(heap)
        if v == s or v == t or len(out[v]) != 1 or len(inn[v]) != 1:
            continue
        (x, e_in), = inn[v].items()
        (y, e_out), = out[v].items()
        del out[x][v]
        del inn[y][v]
        inn[v].clear()
        out[v].clear()
        nodes.append(_Node(SERIES, node_of[e_in], node_of[e_out], -1, x, y))
        new_idx = len(nodes) - 1
        if y in out[x]:
            old = out[x][y]
            nodes.append(_Node(PARALLEL, node_of[old], new_idx, -1, x, y))
            node_of[old] = len(nodes) - 1
            for w in (x, y):
                if w != s and w != t and len(out[w]) == 1 and len(inn[w]) == 1:
                    heapq.heappush(heap, w)
        else:
            eid = next_eid
            next_eid += 1
            out[x][y] = eid
            inn[y][x] = eid
            node_of[eid] = new_idx

    remaining = [(x, y, eid) for x in range(graph.n) for y, eid in out[x].items()]
    if len(remaining) == 1 and (remaining[0][0], remaining[0][1]) == (s, t):
        return DecompositionTree(graph, nodes, node_of[remaining[0][2]])

    w = _extract_core_witness(graph, remaining, nodes, node_of, witness_budget)
    raise NotDspError(NotDspWitness("w-subdivision", w=w))


def _rep_paths(nodes: list[_Node], roots: Iterable[int]) -> dict[int, tuple[int, ...]]:
    """One representative terminal-to-terminal path per requested subtree."""
    memo: dict[int, tuple[int, ...]] = {}
    for root in roots:
        stack = [root]
        while stack:
            i = stack[-1]
            if i in memo:
                stack.pop()
                continue
            nd = nodes[i]
            if nd.kind == LEAF:
                memo[i] = (nd.s, nd.t)
                stack.pop()
            elif nd.kind == PARALLEL:
                if nd.left in memo:
                    memo[i] = memo[nd.left]
                    stack.pop()
                else:
                    stack.append(nd.left)
            else:
                if nd.left in memo and nd.right in memo:
                    memo[i] = memo[nd.left] + memo[nd.right][1:]
                    stack.pop()
                else:
                    if nd.right not in memo:
                        stack.append(nd.right)
                    if nd.left not in memo:
                        stack.append(nd.left)
    return memo


def _extract_core_witness(graph, remaining, nodes, node_of, budget):
    """Search the stuck reduction core for a W-subdivision, then expand each
    core edge back to a path of the original graph. Interior vertices of
    distinct core edges are disjoint by construction, so the expansion is a
    valid subdivision. Returns None when the search exceeds its budget."""
    core_edges = sorted((x, y) for x, y, _ in remaining)
    eid_of = {(x, y): eid for x, y, eid in remaining}
    try:
        core = DirectedGraph(graph.n, core_edges)
        found = _wsearch.find_w_subdivision_graph(core, budget=budget)
    except BudgetExceededError:
        return None
    if found is None:
        return None
    reps = _rep_paths(nodes, [node_of[eid_of[e]] for e in core_edges])
    expanded = {}
    for key, path in found.paths.items():
        full = [path[0]]
        for x, y in zip(path, path[1:]):
            full.extend(reps[node_of[eid_of[(x, y)]]][1:])
        expanded[key] = tuple(full)
    return _wsearch.WSubdivision(branch=found.branch, paths=expanded)


def make_clean(tree: DecompositionTree) -> DecompositionTree:
    """Rebuild the tree so every terminal edge of a P-chain is composed last.

    Bottom-up leaf ascent: a leaf under a P node climbs while its ancestors
    stay P nodes and is swapped with the non-ascent child of the topmost one.
    The leaf multiset and the represented graph are unchanged.
    """
    nodes = [nd.copy() for nd in tree.nodes]
    parent = list(tree.parent)
    for edge in range(tree.graph.m):
        leaf = tree.leaf_of_edge[edge]
        p = parent[leaf]
        if p == -1 or nodes[p].kind != PARALLEL:
            continue
        top = p
        while parent[top] != -1 and nodes[parent[top]].kind == PARALLEL:
            top = parent[top]
        if top == p:
            continue
        below = p
        while parent[below] != top:
            below = parent[below]
        gamma = nodes[top].right if nodes[top].left == below else nodes[top].left
        if nodes[top].left == gamma:
            nodes[top].left = leaf
        else:
            nodes[top].right = leaf
        if nodes[p].left == leaf:
            nodes[p].left = gamma
        else:
            nodes[p].right = gamma
        parent[leaf] = top
        parent[gamma] = p
    return DecompositionTree(tree.graph, nodes, tree.root)


def fold_capacity(tree: DecompositionTree, selected: "EdgeSet | Iterable[int]") -> list[int]:
    """Capacity annotation of the tree under a leaf selection (see fold)."""
    return tree.fold(selected)

"""The exact solvers: the decomposition-tree algorithm for two-terminal
series-parallel graphs, the mu-ordered greedy algorithm for laminar
series-parallel graphs, the derived MED/MSCS/Hamiltonian solvers, and one
dispatching entry point that re-validates every answer.
"""

from __future__ import annotations

from typing import Optional

from . import oracle
from .errors import McpsError, NotDspError, NotLspError
from .flow import RetentionRatio, check_all_pairs, max_flow_value
from .graphs import DirectedGraph, EdgeSet
from .lsp import DEFAULT_PATH_BUDGET, eas_family, is_lsp
from .solution import Solution
from .spdecomp import LEAF, PARALLEL, make_clean, recognize_dsp


def solve_dsp(graph: DirectedGraph, alpha: RetentionRatio) -> Solution:
    """Optimal solution on a two-terminal series-parallel digraph.

    Start from the full edge set, walk the clean decomposition tree bottom-up
    and drop the terminal edge at a P node whenever the rest of that node's
    subgraph already provides the required capacity. Tree-local capacities
    are sound because at a clean P node with a terminal-edge child, the
    node's subgraph is exactly the path-induced subgraph of its terminals.

    Raises NotDspError (carrying the witness) on non-DSP input.
    """
    tree = make_clean(recognize_dsp(graph))
    nodes = tree.nodes
    selected = set(range(graph.m))
    cap_cur = [0] * len(nodes)
    for i in tree.postorder:
        nd = nodes[i]
        if nd.kind == LEAF:
            cap_cur[i] = 1
        elif nd.kind == PARALLEL:
            left, right = nd.left, nd.right
            if nodes[left].kind == LEAF:
                leaf, other = left, right
            elif nodes[right].kind == LEAF:
                leaf, other = right, left
            else:
                cap_cur[i] = cap_cur[left] + cap_cur[right]
                continue
            need = alpha.required(tree.cap_full[i])
            if cap_cur[other] >= need:
                selected.discard(nodes[leaf].edge)
                cap_cur[i] = cap_cur[other]
            else:
                cap_cur[i] = cap_cur[other] + cap_cur[leaf]
        else:
            cap_cur[i] = min(cap_cur[nd.left], cap_cur[nd.right])
    med_size = _med_size_from_tree(tree)
    return Solution(edges=EdgeSet(selected, graph.m), algorithm="dsp", alpha=alpha,
                    objective=len(selected), mcps_star=len(selected) - med_size)


def _med_size_from_tree(tree) -> int:
    # An edge of a DSP has an alternative path between its endpoints exactly
    # when its leaf is the terminal-edge child of a P node (clean tree).
    count = 0
    for edge in range(tree.graph.m):
        leaf = tree.leaf_of_edge[edge]
        parent = tree.parent[leaf]
        if parent == -1 or tree.nodes[parent].kind != PARALLEL:
            count += 1
    return count


def _greedy_by_mu(graph: DirectedGraph, requirement, budget: int):
    """Core of the LSP algorithm: scan edges by non-descending mu (ties by
    edge index) and add an edge iff the current selection does not yet cover
    its endpoint pair. Coverage is evaluated on the selection restricted to
    the edge's path-induced set, which is exact because flows between the
    endpoints decompose into simple paths."""
    fam = eas_family(graph, budget)
    lam = [max_flow_value(graph, u, v, edges=fam.sets[e])
           for e, (u, v) in enumerate(graph.edges)]
    order = sorted(range(graph.m), key=lambda e: (len(fam.sets[e]), e))
    chosen: set[int] = set()
    for e in order:
        u, v = graph.edges[e]
        need = requirement(lam[e])
        if need == 0:
            continue
        have = max_flow_value(graph, u, v, edges=chosen & fam.sets[e], limit=need)
        if have < need:
            chosen.add(e)
    med_size = sum(1 for s in fam.sets if len(s) == 1)
    return chosen, med_size


def _require_lsp(graph: DirectedGraph, budget: int):
    verdict = is_lsp(graph, budget)
    if not verdict.is_lsp:
        raise NotLspError(verdict)


def solve_lsp(graph: DirectedGraph, alpha: RetentionRatio,
              budget: int = DEFAULT_PATH_BUDGET) -> Solution:
    """Optimal solution on a laminar series-parallel graph.

    Raises NotLspError (carrying the verdict) on non-LSP input.
    """
    _require_lsp(graph, budget)
    chosen, med_size = _greedy_by_mu(graph, alpha.required, budget)
    return Solution(edges=EdgeSet(chosen, graph.m), algorithm="lsp", alpha=alpha,
                    objective=len(chosen), mcps_star=len(chosen) - med_size)


def solve_med(graph: DirectedGraph, budget: int = DEFAULT_PATH_BUDGET) -> Solution:
    """Minimum equivalent digraph of a laminar series-parallel graph.

    This is the retention-ratio problem in the limit where every reachable
    pair must keep one path, so the requirement is min(capacity, 1) and no
    ratio is materialized; the result is exactly the edges that are the only
    simple path between their endpoints.
    """
    _require_lsp(graph, budget)
    chosen, med_size = _greedy_by_mu(graph, lambda lam: min(lam, 1), budget)
    assert len(chosen) == med_size, "MED must equal the unique-path edges"
    return Solution(edges=EdgeSet(chosen, graph.m), algorithm="med", alpha=None,
                    objective=len(chosen), mcps_star=0)


def _is_strongly_connected(graph: DirectedGraph) -> bool:
    if graph.n <= 1:
        return True
    return (len(graph.reachable_from(0)) == graph.n
            and len(graph.reaching(0)) == graph.n)


def _is_hamiltonian_cycle(graph: DirectedGraph, edge_set: EdgeSet) -> bool:
    if graph.n < 2 or len(edge_set) != graph.n:
        return False
    succ: dict[int, int] = {}
    for u, v in edge_set.pairs(graph):
        if u in succ:
            return False
        succ[u] = v
    if len(succ) != graph.n:
        return False
    seen = {0}
    v = succ[0]
    while v not in seen:
        seen.add(v)
        v = succ[v]
    return v == 0 and len(seen) == graph.n


def extract_mscs_or_hamiltonian(graph: DirectedGraph,
                                budget: int = DEFAULT_PATH_BUDGET) -> tuple[Solution, str]:
    """MED plus a classification: "hamiltonian-cycle" when the result is a
    single directed cycle through all vertices, "mscs" when the input is
    strongly connected, else "not-strongly-connected"."""
    sol = solve_med(graph, budget)
    if _is_strongly_connected(graph):
        if _is_hamiltonian_cycle(graph, sol.edges):
            return sol, "hamiltonian-cycle"
        return sol, "mscs"
    return sol, "not-strongly-connected"


def mcps_star_value(graph: DirectedGraph, sol: Solution,
                    oracle_budget: int = oracle.DEFAULT_EDGE_BUDGET,
                    budget: int = DEFAULT_PATH_BUDGET) -> Optional[int]:
    """objective minus the MED size, when the MED size is computable:
    via the LSP solver on LSPs, via brute force on small general graphs,
    undefined (None) otherwise."""
    if is_lsp(graph, budget).is_lsp:
        med_size = solve_med(graph, budget).objective
    elif graph.m <= oracle_budget:
        med_size = len(oracle.brute_force_med(graph, oracle_budget))
    else:
        return None
    return sol.objective - med_size


def solve(graph: DirectedGraph, alpha: RetentionRatio, mode: str = "auto",
          oracle_budget: int = oracle.DEFAULT_EDGE_BUDGET,
          budget: int = DEFAULT_PATH_BUDGET) -> Solution:
    """Dispatching entry point.

    auto tries DSP recognition, then the LSP check, then falls back to the
    brute-force oracle when the instance is small enough. Every returned
    solution is re-validated with the all-pairs coverage check.
    """
    if mode not in ("auto", "dsp", "lsp", "oracle"):
        raise ValueError(f"unknown mode {mode!r}")

    def _oracle_solution() -> Solution:
        brute = oracle.brute_force_mcps(graph, alpha, oracle_budget)
        star = mcps_star_value(graph, brute, oracle_budget, budget)
        return Solution(edges=brute.edges, algorithm="oracle", alpha=alpha,
                        objective=brute.objective, mcps_star=star)

    if mode == "dsp":
        sol = solve_dsp(graph, alpha)
    elif mode == "lsp":
        sol = solve_lsp(graph, alpha, budget)
    elif mode == "oracle":
        sol = _oracle_solution()
    elif graph.m == 0:
        sol = solve_lsp(graph, alpha, budget)
    else:
        try:
            sol = solve_dsp(graph, alpha)
        except NotDspError:
            if is_lsp(graph, budget).is_lsp:
                sol = solve_lsp(graph, alpha, budget)
            elif graph.m <= oracle_budget:
                sol = _oracle_solution()
            else:
                raise McpsError(
                    f"instance too large for the oracle ({graph.m} > {oracle_budget} edges) "
                    "and not a laminar series-parallel graph") from None
    report = check_all_pairs(graph, sol.edges, alpha)
    if not report.feasible:
        raise McpsError(
            f"internal error: solver {sol.algorithm!r} produced an infeasible solution "
            f"(first violation {report.first_violation})")
    return sol

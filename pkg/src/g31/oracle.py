"""Exact ground truth at small n.

``exact_min_edges`` computes r(l), the fewest edges induced by any l
vertices, by branch and bound; ``enumerate_independent_sets`` lists all
maximal independent sets.  Both work on Python-int bitmasks over colex
ranks and are meant for n <= 8.
"""

from __future__ import annotations

from .bounds import turan_lb
from .errors import InvalidParameterError
from .graph import GraphParams, VertexSet, adjacency_masks
from .independence import _Budget, _OutOfBudget, load_alpha_table, max_independent_set
from .results import BUDGET_EXCEEDED, EXACT, ExactResult

SIDES = ("auto", "direct", "complement")


def _exact_alpha(params: GraphParams) -> int:
    table = load_alpha_table()
    if params.n in table:
        return table[params.n]
    res = max_independent_set(params)
    return res.value


def _greedy(nbrs: list[list[int]], N: int, m: int) -> tuple[int, tuple]:
    """Add vertices one at a time, always the one with fewest edges to the set."""
    costs = [0] * N
    taken = [False] * N
    chosen = []
    edges = 0
    for _ in range(m):
        v = min((u for u in range(N) if not taken[u]), key=lambda u: costs[u])
        taken[v] = True
        chosen.append(v)
        edges += costs[v]
        for u in nbrs[v]:
            costs[u] += 1
    return edges, tuple(sorted(chosen))


def _search(nbrs: list[list[int]], N: int, m: int, floor: list[int], clock: _Budget):
    """Minimum number of edges spanned by m of the N vertices.

    Inclusion-first DFS in rank order with vertex 0 fixed (the graph is
    vertex-transitive).  A node is pruned when the edges already spanned,
    plus the q cheapest remaining attachment costs, plus ``floor[q]`` (a
    lower bound on the edges among any q vertices), cannot beat the
    incumbent.  Only strict improvements are recorded, so the first
    optimum found is the lexicographically smallest one.
    """
    greedy_value, greedy_set = _greedy(nbrs, N, m)
    state = {"limit": greedy_value + 1, "best": None}

    def rec(s: int, e: int, costs: list[int], i: int, chosen: tuple) -> None:
        if clock.tick():
            raise _OutOfBudget
        if s == m:
            if e < state["limit"]:
                state["limit"] = e
                state["best"] = chosen
            return
        q = m - s
        while N - i >= q:
            tail = sorted(costs[i:])
            if e + sum(tail[:q]) + floor[q] >= state["limit"]:
                return
            v = i
            i += 1
            child = costs.copy()
            for u in nbrs[v]:
                child[u] += 1
            rec(s + 1, e + costs[v], child, i, chosen + (v,))

    start = [0] * N
    for u in nbrs[0]:
        start[u] += 1
    status = EXACT
    try:
        rec(1, 0, start, 1, (0,))
    except _OutOfBudget:
        status = BUDGET_EXCEEDED
    if state["best"] is None:
        return greedy_value, greedy_set, status
    return state["limit"], state["best"], status


# n -> {m: (r(m), witness ranks)} for exactly solved sizes
_KNOWN: dict[int, dict[int, tuple[int, tuple]]] = {}


def _floor_table(params: GraphParams, m: int, alpha: int, clock: _Budget) -> list[int]:
    """Lower bounds on r(q) for q <= m: Turán, raised to exact r(q) for q < m."""
    known = _KNOWN.setdefault(params.n, {})
    floor = [turan_lb(q, alpha) for q in range(m + 1)]
    nbrs = None
    for q in range(1, m):
        if q not in known:
            if nbrs is None:
                nbrs = _neighbor_lists(params)
            value, ranks, status = _search(nbrs, params.vertex_count, q, floor, clock)
            if status != EXACT:
                break
            known[q] = (value, ranks)
        floor[q] = max(floor[q], known[q][0])
    return floor


def _neighbor_lists(params: GraphParams) -> list[list[int]]:
    N = params.vertex_count
    return [[u for u in range(N) if mask >> u & 1] for mask in adjacency_masks(params)]


def exact_min_edges(params: GraphParams, l: int, budget: float | None = None,
                    alpha: int | None = None, side: str = "auto") -> ExactResult:
    """r(l) for G(n,3,1) with a witness set.

    Removing a set D from V_n deletes ``d_n |D| - e(D)`` edges, so
    ``r(l) = |E_n| - d_n (N - l) + r(N - l)``; with ``side="auto"`` the
    smaller of l and N - l is searched.  Pruning uses the Turán bound with
    ``alpha`` (exact independence number, cached by default), raised to
    the exact minima of all smaller sizes, which are solved first.
    """
    N = params.vertex_count
    if not 0 <= l <= N:
        raise InvalidParameterError(f"l={l} outside [0, {N}] for n={params.n}")
    if side not in SIDES:
        raise InvalidParameterError(f"side must be one of {SIDES}")
    if budget is not None and budget <= 0:
        raise InvalidParameterError("budget must be positive")
    if alpha is None:
        alpha = _exact_alpha(params)
    complement = (N - l < l) if side == "auto" else side == "complement"
    m = N - l if complement else l

    clock = _Budget(budget)
    known = _KNOWN.setdefault(params.n, {})
    if m == 0:
        value, ranks, status = 0, (), EXACT
    elif m in known:
        (value, ranks), status = known[m], EXACT
    else:
        floor = _floor_table(params, m, alpha, clock)
        value, ranks, status = _search(_neighbor_lists(params), N, m, floor, clock)
        if status == EXACT:
            known[m] = (value, ranks)

    witness = VertexSet(params.n, ranks)
    if complement:
        value = params.total_edges - params.degree * m + value
        witness = witness.complement()
    return ExactResult(value, witness, status, clock.nodes, clock.elapsed)


def enumerate_independent_sets(params: GraphParams, min_size: int = 1) -> list[VertexSet]:
    """All maximal independent sets with at least ``min_size`` vertices.

    Bron-Kerbosch with pivoting on the complement graph; results are
    sorted by their colex rank sequences.
    """
    if params.n > 7:
        raise InvalidParameterError("enumeration is limited to n <= 7")
    N = params.vertex_count
    full = (1 << N) - 1
    masks = adjacency_masks(params)
    compat = [full & ~masks[v] & ~(1 << v) for v in range(N)]
    found: list[tuple] = []

    def bits(x: int):
        while x:
            low = x & -x
            yield low.bit_length() - 1
            x ^= low

    def bk(R: tuple, P: int, X: int) -> None:
        if not P and not X:
            if len(R) >= min_size:
                found.append(tuple(sorted(R)))
            return
        if len(R) + P.bit_count() < min_size:
            return
        pivot = max(bits(P | X), key=lambda u: (P & compat[u]).bit_count())
        for v in list(bits(P & ~compat[pivot])):
            bk(R + (v,), P & compat[v], X & compat[v])
            P &= ~(1 << v)
            X |= 1 << v

    bk((), full, 0)
    found.sort()
    return [VertexSet(params.n, r) for r in found]



def clear_cache() -> None:
    """Forget exact minima memoised by earlier searches."""
    _KNOWN.clear()

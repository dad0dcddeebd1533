"""Independent sets of G(n,3,1).

Covers verification, the exact independence number at small n (with a
shipped cache of values), the asymptotic proxy ``alpha_n ~ n``, and the
split of an independent set into type-1/2/3 blocks with disjoint supports.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Iterable

from .errors import DecompositionError, InvalidParameterError, NotIndependentError
from .graph import (GraphParams, VertexSet, adjacency_masks, count_induced_edges,
                    make_params)
from .results import BUDGET_EXCEEDED, EXACT, ExactResult

EXACT_MODE = "exact"
ASYMPTOTIC_MODE = "asymptotic"

TYPE1, TYPE2, TYPE3 = "type1", "type2", "type3"


def is_independent(W: VertexSet) -> bool:
    return count_induced_edges(make_params(W.n), W) == 0


# ---------------------------------------------------------------------------
# exact independence number
# ---------------------------------------------------------------------------

def _clique_cover_size(cand: int, adj: list[int]) -> int:
    """Number of cliques in a greedy clique cover of ``cand``.

    An independent set meets each clique at most once, so this bounds the
    independence number of the subgraph induced on ``cand``.
    """
    count = 0
    while cand:
        low = cand & -cand
        clique = low
        ext = cand & adj[low.bit_length() - 1]
        while ext:
            b = ext & -ext
            clique |= b
            ext &= adj[b.bit_length() - 1]
        cand &= ~clique
        count += 1
    return count


class _Budget:
    def __init__(self, seconds: float | None):
        self.start = time.monotonic()
        self.deadline = None if seconds is None else self.start + seconds
        self.nodes = 0

    def tick(self) -> bool:
        """Count a node; return True once the deadline has passed."""
        self.nodes += 1
        return (self.deadline is not None and not self.nodes & 1023
                and time.monotonic() > self.deadline)

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.start


class _OutOfBudget(Exception):
    pass


def max_independent_set(params: GraphParams, budget: float | None = None) -> ExactResult:
    """Exact independence number by branch and bound.

    Vertices are branched in colex order, inclusion first, pruning with a
    greedy clique cover.  The graph is vertex-transitive, so vertex 0 is
    fixed in the set; the witness returned is the lexicographically
    smallest maximum independent set by colex ranks.
    """
    if budget is not None and budget <= 0:
        raise InvalidParameterError("budget must be positive")
    N = params.vertex_count
    adj = adjacency_masks(params)
    clock = _Budget(budget)
    best: list = [1, (0,)]

    def rec(size: int, chosen: tuple, cand: int) -> None:
        if clock.tick():
            raise _OutOfBudget
        if size > best[0]:
            best[0], best[1] = size, chosen
        while cand:
            if size + _clique_cover_size(cand, adj) <= best[0]:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            rec(size + 1, chosen + (v,), cand & ~adj[v])

    status = EXACT
    try:
        rec(1, (0,), ((1 << N) - 1) & ~adj[0] & ~1)
    except _OutOfBudget:
        status = BUDGET_EXCEEDED
    witness = VertexSet(params.n, best[1])
    return ExactResult(best[0], witness, status, clock.nodes, clock.elapsed)


# ---------------------------------------------------------------------------
# cached values and the asymptotic proxy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlphaReference:
    n: int
    value: int
    mode: str

    def __int__(self) -> int:
        return self.value


def parse_alpha_table(text: str) -> dict[int, int]:
    table = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        n, a = line.split("\t")
        table[int(n)] = int(a)
    return table


def format_alpha_table(table: dict[int, int]) -> str:
    return "".join(f"{n}\t{a}\n" for n, a in sorted(table.items()))


@lru_cache(maxsize=None)
def load_alpha_table() -> dict[int, int]:
    text = resources.files("g31").joinpath("data/alpha.tsv").read_text()
    return parse_alpha_table(text)


def regenerate_alpha_table(ns: Iterable[int], path: str | Path | None = None,
                           budget: float | None = None) -> dict[int, int]:
    """Recompute exact alpha for each n; write the TSV if ``path`` is given."""
    table = {}
    for n in ns:
        res = max_independent_set(make_params(n), budget)
        if not res.is_exact:
            raise RuntimeError(f"alpha search for n={n} exceeded its budget")
        table[n] = res.value
    if path is not None:
        Path(path).write_text(format_alpha_table(table))
    return table


def alpha_reference(n: int, mode: str = EXACT_MODE) -> AlphaReference:
    """Exact cached alpha_n, or the asymptotic proxy ``n``."""
    if mode == EXACT_MODE:
        table = load_alpha_table()
        if n not in table:
            raise InvalidParameterError(f"no cached exact alpha for n={n}")
        return AlphaReference(n, table[n], EXACT_MODE)
    if mode == ASYMPTOTIC_MODE:
        if n < 3:
            raise InvalidParameterError(f"n must be >= 3, got {n}")
        return AlphaReference(n, n, ASYMPTOTIC_MODE)
    raise InvalidParameterError(f"unknown alpha mode {mode!r}")


# ---------------------------------------------------------------------------
# type-1/2/3 decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    kind: str
    vertices: VertexSet
    support: frozenset
    # common pair for type1, 4-element envelope for type2, None for type3
    witness: tuple | None = None

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "witness": None if self.witness is None else list(self.witness),
            "support": sorted(self.support),
            "vertices": [list(v) for v in self.vertices],
        }


@dataclass(frozen=True)
class Decomposition:
    n: int
    blocks: list[Block] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"n": self.n, "blocks": [b.as_dict() for b in self.blocks]}


def _components(verts: list[tuple]) -> list[list[tuple]]:
    # union-find on "share an element"
    parent = list(range(len(verts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    first_owner: dict[int, int] = {}
    for i, v in enumerate(verts):
        for e in v:
            j = first_owner.setdefault(e, i)
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[tuple]] = {}
    for i, v in enumerate(verts):
        groups.setdefault(find(i), []).append(v)
    return [groups[k] for k in sorted(groups)]


def _classify(comp: list[tuple], n: int) -> Block:
    support = frozenset(e for v in comp for e in v)
    vs = VertexSet.from_vertices(n, comp)
    common = frozenset.intersection(*(frozenset(v) for v in comp))
    if len(comp) >= 3 and len(common) >= 2:
        return Block(TYPE1, vs, support, tuple(sorted(common)[:2]))
    if len(comp) >= 2 and len(support) == 4:
        return Block(TYPE2, vs, support, tuple(sorted(support)))
    raise DecompositionError(
        f"component of {len(comp)} vertices fits neither type 1 nor type 2", comp
    )


def decompose_independent(W: VertexSet) -> Decomposition:
    """Split an independent set into blocks of type 1, 2 and 3.

    Vertices are grouped into connected components of the "share an
    element" relation; in an independent set such vertices share exactly
    two elements.  Components of size >= 3 with a common pair are type 1,
    components of size >= 2 inside a 4-set are type 2, and all singleton
    components together form one type-3 block.  Supports of different
    components are disjoint by construction.  The result is verified
    before it is returned.
    """
    params = make_params(W.n)
    if count_induced_edges(params, W) != 0:
        raise NotIndependentError("input set contains an edge")
    verts = list(W)
    blocks = []
    singles = []
    for comp in _components(verts):
        if len(comp) == 1:
            singles.append(comp[0])
        else:
            blocks.append(_classify(comp, W.n))
    if singles:
        blocks.append(Block(TYPE3, VertexSet.from_vertices(W.n, singles),
                            frozenset(e for v in singles for e in v)))
    dec = Decomposition(W.n, blocks)
    verify_decomposition(dec, W)
    return dec


def verify_decomposition(dec: Decomposition, W: VertexSet) -> None:
    """Check every block invariant; raise :class:`DecompositionError`."""
    seen = []
    for b in dec.blocks:
        verts = list(b.vertices)
        support = frozenset(e for v in verts for e in v)
        if support != b.support:
            raise DecompositionError(f"{b.kind} block support mismatch", verts)
        if b.kind == TYPE1:
            i, j = b.witness
            if len(verts) < 3 or not all(i in v and j in v for v in verts):
                raise DecompositionError("invalid type1 block", verts)
        elif b.kind == TYPE2:
            env = set(b.witness)
            if len(verts) < 2 or len(env) != 4 or not all(set(v) <= env for v in verts):
                raise DecompositionError("invalid type2 block", verts)
        elif b.kind == TYPE3:
            if any(set(u) & set(v) for u, v in combinations(verts, 2)):
                raise DecompositionError("type3 block vertices are not disjoint", verts)
        else:
            raise DecompositionError(f"unknown block kind {b.kind!r}", verts)
        seen.append(b)
    for a, b in combinations(seen, 2):
        if a.support & b.support:
            raise DecompositionError(
                "block supports overlap", list(a.vertices) + list(b.vertices)
            )
    union = VertexSet(W.n)
    total = 0
    for b in seen:
        union = union.union(b.vertices)
        total += b.vertices.size
    if total != union.size or union != W:
        raise DecompositionError("blocks do not partition the input set",
                                 list(W.difference(union)))

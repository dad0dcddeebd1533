"""Explicit vertex sets with few induced edges, one family per growth range of l.

* regime 1 (n << l << n^2): pairs of fresh elements glued to a common
  prefix; cliques appear only among vertices sharing their prefix element.
* regime 2 (l ~ n^2): a star ``{1, 2, i}`` plus pairs glued to each ``i``.
* regime 3 (n^2 << l << n^3): blocks ``A1 x P`` for pairwise disjoint
  perfect matchings P of ``A2``, plus a partial block.

Each builder returns a :class:`ConstructionReport` with the closed-form
size and edge count next to the directly measured ones.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ConstructionUndefinedError, InvalidParameterError, InvariantViolation
from .graph import VertexSet, count_induced_edges, make_params

DEFAULT_MAX_MATERIALIZE = 10**6


def _sig(x: float) -> float:
    return float(f"{x:.6g}")


@dataclass
class ConstructionReport:
    regime: int
    n: int
    l: int | None
    params: object
    vertex_set: VertexSet | None
    size_predicted: int
    size_actual: int | None
    edges_predicted: int
    edges_actual: int | None
    target: float
    target_ratio: float
    pieces: dict = field(default_factory=dict)

    def check(self) -> None:
        """Raise :class:`InvariantViolation` if a measured count disagrees."""
        if self.size_actual is not None and self.size_actual != self.size_predicted:
            raise InvariantViolation(
                f"regime {self.regime}: size {self.size_actual} != predicted {self.size_predicted}"
            )
        if self.edges_actual is not None and self.edges_actual != self.edges_predicted:
            raise InvariantViolation(
                f"regime {self.regime}: edges {self.edges_actual} != predicted {self.edges_predicted}"
            )

    def as_dict(self) -> dict:
        return {
            "regime": self.regime,
            "n": self.n,
            "l": self.l,
            "params": self.params.as_dict(),
            "size_predicted": self.size_predicted,
            "size_actual": self.size_actual,
            "edges_formula": self.edges_predicted,
            "edges_actual": self.edges_actual,
            "target": _sig(self.target),
            "target_ratio": _sig(self.target_ratio),
            "pieces": self.pieces,
        }


def _finish(report: ConstructionReport, elems_fn, materialize: bool,
            max_materialize: int, count_method: str) -> ConstructionReport:
    if materialize and report.size_predicted <= max_materialize:
        W = VertexSet.from_array(report.n, elems_fn())
        report.vertex_set = W
        report.size_actual = W.size
        report.edges_actual = count_induced_edges(make_params(report.n), W, count_method)
    return report


def _ratio(edges: int, target: float) -> float:
    return edges / target if target > 0 else math.nan


# ---------------------------------------------------------------------------
# regime 1
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class C1Params:
    n: int
    l: int
    a: int
    b: int
    x: int
    y: int

    @property
    def half(self) -> int:
        return self.y // 2

    def as_dict(self) -> dict:
        return asdict(self)


def c1_params(n: int, l: int) -> C1Params:
    """``a = n^2 // l``, ``b = floor(ln a)``, ``x = n - n // b``, ``y = 2l // x``."""
    if n < 3 or l < 1:
        raise InvalidParameterError(f"need n >= 3 and l >= 1, got n={n}, l={l}")
    a = n * n // l
    b = math.floor(math.log(a)) if a >= 1 else 0
    if b < 1:
        raise ConstructionUndefinedError(f"regime 1 undefined: a={a} gives b=floor(ln a)=0")
    x = n - n // b
    if x < 1:
        raise ConstructionUndefinedError(f"regime 1 undefined: x={x}")
    y = 2 * l // x
    if x + 2 * (y // 2) > n:
        raise ConstructionUndefinedError(
            f"regime 1 undefined: needs {x + 2 * (y // 2)} ground elements, n={n}"
        )
    return C1Params(n, l, a, b, x, y)


def c1_valid(n: int, l: int) -> bool:
    try:
        c1_params(n, l)
    except (ConstructionUndefinedError, InvalidParameterError):
        return False
    return True


def c1_elements(p: C1Params) -> np.ndarray:
    i = np.arange(1, p.x + 1, dtype=np.int64)
    j = np.arange(1, p.half + 1, dtype=np.int64)
    ii, jj = np.meshgrid(i, j, indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    return np.stack([ii, p.x + 2 * jj - 1, p.x + 2 * jj], axis=1)


def build_c1(n: int, l: int, materialize: bool = True,
             max_materialize: int = DEFAULT_MAX_MATERIALIZE,
             count_method: str = "grouped") -> ConstructionReport:
    """Vertices ``{x+2j-1, x+2j, i}`` for ``i <= x``, ``j <= y // 2``.

    Two of them are adjacent exactly when they share ``i``, so the set is
    ``x`` disjoint cliques of size ``y // 2``.  The size ``x * (y // 2)``
    never exceeds ``l`` and is reported as is.
    """
    p = c1_params(n, l)
    h = p.half
    size = p.x * h
    edges = h * p.x * (h - 1) // 2
    target = l * l / (2 * n)
    report = ConstructionReport(1, n, l, p, None, size, None, edges, None,
                                target, _ratio(edges, target))
    return _finish(report, lambda: c1_elements(p), materialize, max_materialize, count_method)


# ---------------------------------------------------------------------------
# regime 2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class C2Params:
    n: int
    c: float
    k: int
    M: int
    J: int

    def as_dict(self) -> dict:
        d = asdict(self)
        d["c"] = _sig(self.c)
        return d


def default_c2(n: int) -> float:
    return 4 - 1 / math.log(n)


def c2_params(n: int, c: float | None = None) -> C2Params:
    """``k = n // 4``, ``M = floor(c k)``, ``J = (n - M) // 2``."""
    if n < 3:
        raise InvalidParameterError(f"n must be >= 3, got {n}")
    if c is None:
        c = default_c2(n)
    if not 0 < c < 4:
        raise InvalidParameterError(f"c must lie in (0, 4), got {c}")
    k = n // 4
    M = math.floor(c * k)
    J = (n - M) // 2
    if M < 3 or M + 2 * J > n:
        raise ConstructionUndefinedError(f"regime 2 undefined: M={M}, J={J}, n={n}")
    return C2Params(n, c, k, M, J)


def solve_c2_parameter(n: int, l: int) -> float:
    """The root of ``c (4 - c) k^2 / 2 = l`` lying in ``[2, 4)``."""
    k = n // 4
    if k < 1 or l < 1:
        raise InvalidParameterError(f"need n >= 4 and l >= 1, got n={n}, l={l}")
    disc = 4 - 2 * l / (k * k)
    if disc < 0:
        raise ConstructionUndefinedError(
            f"l={l} exceeds the largest reachable size 2k^2={2 * k * k}"
        )
    return 2 + math.sqrt(disc)


def c2_elements(p: C2Params) -> np.ndarray:
    i = np.arange(3, p.M + 1, dtype=np.int64)
    w1 = np.stack([np.ones_like(i), np.full_like(i, 2), i], axis=1)
    j = np.arange(1, p.J + 1, dtype=np.int64)
    ii, jj = np.meshgrid(i, j, indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    w2 = np.stack([ii, p.M + 2 * jj - 1, p.M + 2 * jj], axis=1)
    return np.concatenate([w1, w2])


def build_c2(n: int, c: float | None = None, l: int | None = None,
             materialize: bool = True, max_materialize: int = DEFAULT_MAX_MATERIALIZE,
             count_method: str = "grouped") -> ConstructionReport:
    """``W1 = {1, 2, i}`` and ``W2 = {i, M+2j-1, M+2j}`` for ``3 <= i <= M``.

    Each W2 vertex meets W1 once (through ``i``) and the J vertices of W2
    with the same ``i`` form a clique.  ``c`` defaults to ``4 - 1/ln n``;
    ``l`` is only recorded for reporting.
    """
    p = c2_params(n, c)
    s, J = p.M - 2, p.J
    size = s * (1 + J)
    edges = s * J + s * J * (J - 1) // 2
    target = size * size / (2 * n)
    report = ConstructionReport(2, n, l, p, None, size, None, edges, None,
                                target, _ratio(edges, target),
                                pieces={"w1": s, "w2": s * J, "w1_w2": s * J,
                                        "w2_internal": s * J * (J - 1) // 2})
    return _finish(report, lambda: c2_elements(p), materialize, max_materialize, count_method)


# ---------------------------------------------------------------------------
# regime 3
# ---------------------------------------------------------------------------

def one_factorization(m: int, t: int) -> list[list[tuple[int, int]]]:
    """``t`` pairwise disjoint perfect matchings of ``{1..m}``.

    Circle method: ``m`` stays fixed while ``1..m-1`` rotate.  Round ``r``
    pairs ``r+1`` with ``m`` and ``r+1+i`` with ``r+1-i`` (mod ``m-1``).
    Pairs are ``(small, large)`` and each matching is sorted.
    """
    if m < 2 or m % 2:
        raise InvalidParameterError(f"m must be even and >= 2, got {m}")
    if not 1 <= t <= m - 1:
        raise InvalidParameterError(f"t must lie in [1, {m - 1}], got {t}")
    q = m - 1
    rounds = []
    for r in range(t):
        pairs = [(r + 1, m)]
        for i in range(1, m // 2):
            u, v = (r + i) % q + 1, (r - i) % q + 1
            pairs.append((min(u, v), max(u, v)))
        rounds.append(sorted(pairs))
    return rounds


@dataclass(frozen=True)
class C3Params:
    n: int
    l: int
    a: int            # |A1|; A1 = {1..a}
    a2: int           # |A2|; A2 = {a+1..n}
    w: int            # block size a * a2 / 2
    k: int            # number of full blocks
    remainder: int    # vertices taken from block k+1
    matchings: tuple  # pairs of labels in A2, as ground elements

    @property
    def within_degree(self) -> int:
        return self.a2 // 2 - 1

    @property
    def cross_degree(self) -> int:
        """Neighbours a block vertex has in one other block."""
        return (self.a2 // 2 - 2) + 2 * (self.a - 1)

    def as_dict(self) -> dict:
        return {
            "n": self.n, "l": self.l, "a": self.a, "a2": self.a2, "w": self.w,
            "k": self.k, "remainder": self.remainder,
            "within_degree": self.within_degree, "cross_degree": self.cross_degree,
            "matchings": [[list(p) for p in mt] for mt in self.matchings],
        }


def c3_params(n: int, l: int) -> C3Params:
    """Split ``{1..n}`` into ``A1`` of size ``n - 2 (n // 4)`` and ``A2``.

    The number of full blocks is ``l // w`` with ``w`` the true block size,
    so the set has exactly ``l`` vertices.
    """
    if n < 4 or l < 1:
        raise InvalidParameterError(f"need n >= 4 and l >= 1, got n={n}, l={l}")
    a2 = 2 * (n // 4)
    a = n - a2
    w = a * a2 // 2
    k, remainder = divmod(l, w)
    needed = k + (1 if remainder else 0)
    if needed > a2 - 1:
        raise ConstructionUndefinedError(
            f"regime 3 undefined: needs {needed} disjoint matchings of {a2} elements, "
            f"at most {a2 - 1} exist"
        )
    matchings = tuple(
        tuple((a + y, a + z) for y, z in mt)
        for mt in one_factorization(a2, needed)
    )
    return C3Params(n, l, a, a2, w, k, remainder, matchings)


def c3_block_elements(p: C3Params, i: int) -> np.ndarray:
    """Triples of block ``i`` (0-based) in colex order."""
    # colex sorts by the pair first; within a pair, by the A1 element
    pairs = sorted(p.matchings[i], key=lambda yz: (yz[1], yz[0]))
    xs = np.arange(1, p.a + 1, dtype=np.int64)
    rows = [np.stack([xs, np.full_like(xs, y), np.full_like(xs, z)], axis=1)
            for y, z in pairs]
    return np.concatenate(rows)


def c3_blocks(p: C3Params) -> list[VertexSet]:
    """Full blocks followed by the partial block U (if non-empty)."""
    out = [VertexSet.from_array(p.n, c3_block_elements(p, i)) for i in range(p.k)]
    if p.remainder:
        out.append(VertexSet.from_array(p.n, c3_block_elements(p, p.k)[:p.remainder]))
    return out


def c3_pieces(p: C3Params) -> dict:
    """Closed-form edge tallies by piece."""
    k, r, a, cd = p.k, p.remainder, p.a, p.cross_degree
    within = k * a * math.comb(p.a2 // 2, 2)
    cross = cd * p.w * k * (k - 1) // 2
    u_cross = r * k * cd
    # U is a colex prefix of its block: f whole pairs, then `rest` more A1 elements
    f, rest = divmod(r, a)
    u_internal = rest * math.comb(f + 1, 2) + (a - rest) * math.comb(f, 2)
    return {"within": within, "cross": cross, "u_internal": u_internal, "u_cross": u_cross}


def build_c3(n: int, l: int, materialize: bool = True,
             max_materialize: int = DEFAULT_MAX_MATERIALIZE,
             count_method: str = "grouped") -> ConstructionReport:
    """Union of ``k`` full blocks ``A1 x P_i`` and a colex prefix of block k+1.

    Inside a block two vertices are adjacent iff they share the A1 element,
    so each block is regular of degree ``|A2|/2 - 1``; a vertex has exactly
    ``cross_degree`` neighbours in every other block.
    """
    p = c3_params(n, l)
    pieces = c3_pieces(p)
    edges = sum(pieces.values())
    target = 5 * l * l / n
    report = ConstructionReport(3, n, l, p, None, l, None, edges, None,
                                target, _ratio(edges, target), pieces=pieces)

    def elems():
        parts = [c3_block_elements(p, i) for i in range(p.k)]
        if p.remainder:
            parts.append(c3_block_elements(p, p.k)[:p.remainder])
        return np.concatenate(parts)

    return _finish(report, elems, materialize, max_materialize, count_method)


def build(regime: int, n: int, l: int | None = None, c: float | None = None,
          **kwargs) -> ConstructionReport:
    """Dispatch to the builder for ``regime``.

    For regime 2 without ``c``, ``l`` (if given) selects ``c`` through
    :func:`solve_c2_parameter`.
    """
    if regime == 1:
        if l is None:
            raise InvalidParameterError("regime 1 needs l")
        return build_c1(n, l, **kwargs)
    if regime == 2:
        if c is None and l is not None:
            c = solve_c2_parameter(n, l)
        return build_c2(n, c, l=l, **kwargs)
    if regime == 3:
        if l is None:
            raise InvalidParameterError("regime 3 needs l")
        return build_c3(n, l, **kwargs)
    raise InvalidParameterError(f"regime must be 1, 2 or 3, got {regime}")

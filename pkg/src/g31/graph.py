"""Core representation of the distance graph G(n,3,1).

Vertices are the 3-element subsets of ``{1..n}``, written as ascending
integer triples.  Two vertices are adjacent iff they share exactly one
element.  Every vertex has a colex rank in ``[0, C(n,3))`` which is the
canonical index used by :class:`VertexSet` and by the exact searches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy import sparse

from .errors import InvalidParameterError

Vertex = tuple[int, int, int]

#: Above this many ranks a packed bit vector is refused (~128 MiB).
MAX_BITVECTOR_BITS = 2**30


@dataclass(frozen=True)
class GraphParams:
    n: int
    vertex_count: int
    degree: int
    total_edges: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "vertices": self.vertex_count,
            "degree": self.degree,
            "edges": self.total_edges,
        }


def make_params(n: int) -> GraphParams:
    """Return vertex count, degree and edge count of G(n,3,1)."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidParameterError(f"n must be an integer, got {n!r}")
    n = int(n)
    if n < 3:
        raise InvalidParameterError(f"n must be >= 3, got {n}")
    vertex_count = math.comb(n, 3)
    degree = 3 * math.comb(n - 3, 2)
    # degree * vertex_count is always even; keep the division exact
    total_edges = degree * vertex_count // 2
    return GraphParams(n, vertex_count, degree, total_edges)


def check_vertex(v: Sequence[int], n: int) -> Vertex:
    """Validate ``v`` as a vertex for ``n`` and return it as a tuple."""
    try:
        t = tuple(int(e) for e in v)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"not a vertex: {v!r}") from None
    if len(t) != 3:
        raise InvalidParameterError(f"vertex must have 3 elements: {v!r}")
    if not (1 <= t[0] < t[1] < t[2] <= n):
        raise InvalidParameterError(
            f"vertex {v!r} is not strictly increasing within [1, {n}]"
        )
    return t


def adjacent(u: Sequence[int], w: Sequence[int]) -> bool:
    """True iff ``u`` and ``w`` share exactly one element."""
    return len(set(u) & set(w)) == 1


# ---------------------------------------------------------------------------
# colex ranking
# ---------------------------------------------------------------------------

def colex_rank(v: Sequence[int], n: int) -> int:
    e1, e2, e3 = check_vertex(v, n)
    return math.comb(e3 - 1, 3) + math.comb(e2 - 1, 2) + (e1 - 1)


def _largest_below(r: int, k: int) -> int:
    """Largest c with C(c, k) <= r (k in {2, 3})."""
    c = int(round((math.factorial(k) * r) ** (1.0 / k))) + k
    while math.comb(c, k) > r:
        c -= 1
    while math.comb(c + 1, k) <= r:
        c += 1
    return c


def colex_unrank(r: int, n: int) -> Vertex:
    total = math.comb(n, 3)
    if not 0 <= r < total:
        raise InvalidParameterError(f"rank {r} out of range [0, {total})")
    c3 = _largest_below(r, 3)
    r -= math.comb(c3, 3)
    c2 = _largest_below(r, 2)
    r -= math.comb(c2, 2)
    return (r + 1, c2 + 1, c3 + 1)


def colex_rank_array(elems: np.ndarray) -> np.ndarray:
    """Vectorised colex rank of an ``(N, 3)`` array of sorted triples."""
    e = np.asarray(elems, dtype=np.int64)
    a, b, c = e[:, 0] - 1, e[:, 1] - 1, e[:, 2] - 1
    return c * (c - 1) * (c - 2) // 6 + b * (b - 1) // 2 + a


def colex_unrank_array(ranks: np.ndarray) -> np.ndarray:
    """Inverse of :func:`colex_rank_array`."""
    r = np.asarray(ranks, dtype=np.int64)
    c3 = np.floor(np.cbrt(6.0 * r)).astype(np.int64) + 2
    c3[c3 < 2] = 2

    def tri(c):
        return c * (c - 1) * (c - 2) // 6

    # float estimate is off by at most a couple of units
    while True:
        over = tri(c3) > r
        if not over.any():
            break
        c3[over] -= 1
    while True:
        under = tri(c3 + 1) <= r
        if not under.any():
            break
        c3[under] += 1
    r2 = r - tri(c3)
    c2 = np.floor((1.0 + np.sqrt(1.0 + 8.0 * r2)) / 2.0).astype(np.int64)
    while True:
        over = c2 * (c2 - 1) // 2 > r2
        if not over.any():
            break
        c2[over] -= 1
    while True:
        under = (c2 + 1) * c2 // 2 <= r2
        if not under.any():
            break
        c2[under] += 1
    c1 = r2 - c2 * (c2 - 1) // 2
    return np.stack([c1 + 1, c2 + 1, c3 + 1], axis=1)


# ---------------------------------------------------------------------------
# vertex sets
# ---------------------------------------------------------------------------

class VertexSet:
    """Immutable set of vertices of G(n,3,1).

    Members are kept as a sorted array of colex ranks; :meth:`bitvector`
    gives the packed bit-vector view indexed by the same ranks.
    """

    __slots__ = ("n", "_ranks")

    def __init__(self, n: int, ranks: Iterable[int] | np.ndarray = ()):
        if n < 3:
            raise InvalidParameterError(f"n must be >= 3, got {n}")
        arr = np.unique(np.fromiter(ranks, dtype=np.int64)
                        if not isinstance(ranks, np.ndarray)
                        else ranks.astype(np.int64, copy=False))
        if arr.size and (arr[0] < 0 or arr[-1] >= math.comb(n, 3)):
            raise InvalidParameterError(f"rank out of range for n={n}")
        arr.flags.writeable = False
        self.n = int(n)
        self._ranks = arr

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[Sequence[int]]) -> "VertexSet":
        verts = [check_vertex(v, n) for v in vertices]
        if not verts:
            return cls(n)
        return cls(n, colex_rank_array(np.array(verts, dtype=np.int64)))

    @classmethod
    def from_array(cls, n: int, elems: np.ndarray) -> "VertexSet":
        """Build from an ``(N, 3)`` array of triples (validated in bulk)."""
        e = np.asarray(elems, dtype=np.int64).reshape(-1, 3)
        if e.size and not (
            (e[:, 0] >= 1).all() and (e[:, 0] < e[:, 1]).all()
            and (e[:, 1] < e[:, 2]).all() and (e[:, 2] <= n).all()
        ):
            raise InvalidParameterError(f"invalid triples for n={n}")
        return cls(n, colex_rank_array(e))

    @classmethod
    def from_bitvector(cls, n: int, bits: np.ndarray) -> "VertexSet":
        total = math.comb(n, 3)
        mask = np.unpackbits(np.asarray(bits, dtype=np.uint8), count=total,
                             bitorder="little")
        return cls(n, np.flatnonzero(mask))

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, np.arange(math.comb(n, 3), dtype=np.int64))

    @property
    def ranks(self) -> np.ndarray:
        return self._ranks

    @property
    def size(self) -> int:
        return int(self._ranks.size)

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[Vertex]:
        for row in self.to_array():
            yield (int(row[0]), int(row[1]), int(row[2]))

    def __contains__(self, v) -> bool:
        try:
            r = colex_rank(v, self.n)
        except InvalidParameterError:
            return False
        i = np.searchsorted(self._ranks, r)
        return bool(i < self.size and self._ranks[i] == r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._ranks, other._ranks)

    def __hash__(self) -> int:
        return hash((self.n, self._ranks.tobytes()))

    def __repr__(self) -> str:
        shown = ", ".join(str(set(v)) for v in list(self)[:4])
        more = ", ..." if self.size > 4 else ""
        return f"VertexSet(n={self.n}, size={self.size}, [{shown}{more}])"

    def to_array(self) -> np.ndarray:
        """``(N, 3)`` array of triples in colex order."""
        if not self.size:
            return np.empty((0, 3), dtype=np.int64)
        return colex_unrank_array(self._ranks)

    def bitvector(self) -> np.ndarray:
        """Packed membership bits, little bit order, length ``C(n,3)`` bits."""
        total = math.comb(self.n, 3)
        if total > MAX_BITVECTOR_BITS:
            raise InvalidParameterError(
                f"C({self.n},3) = {total} bits is too large to pack"
            )
        mask = np.zeros(total, dtype=np.uint8)
        mask[self._ranks] = 1
        return np.packbits(mask, bitorder="little")

    def union(self, other: "VertexSet") -> "VertexSet":
        self._check_same_n(other)
        return VertexSet(self.n, np.union1d(self._ranks, other._ranks))

    def difference(self, other: "VertexSet") -> "VertexSet":
        self._check_same_n(other)
        return VertexSet(self.n, np.setdiff1d(self._ranks, other._ranks))

    def complement(self) -> "VertexSet":
        return VertexSet.full(self.n).difference(self)

    def without(self, v: Sequence[int]) -> "VertexSet":
        r = colex_rank(v, self.n)
        return VertexSet(self.n, self._ranks[self._ranks != r])

    def take(self, k: int) -> "VertexSet":
        """First ``k`` members in colex order."""
        return VertexSet(self.n, self._ranks[:k])

    def _check_same_n(self, other: "VertexSet") -> None:
        if other.n != self.n:
            raise InvalidParameterError(f"n mismatch: {self.n} vs {other.n}")


# ---------------------------------------------------------------------------
# neighbourhoods and edge counts
# ---------------------------------------------------------------------------

def neighbors(params: GraphParams, v: Sequence[int]) -> list[Vertex]:
    """All vertices sharing exactly one element with ``v``, in colex order."""
    n = params.n
    v = check_vertex(v, n)
    rest = [e for e in range(1, n + 1) if e not in v]
    out = [tuple(sorted((a, p, q))) for a in v for p, q in combinations(rest, 2)]
    out.sort(key=lambda t: (t[2], t[1], t[0]))
    return out


def _pairwise_count(elems: np.ndarray) -> int:
    sets = [frozenset(map(int, row)) for row in elems]
    count = 0
    for i, a in enumerate(sets):
        for b in sets[i + 1:]:
            if len(a & b) == 1:
                count += 1
    return count


def _grouped_count(elems: np.ndarray, n: int) -> int:
    # Sum over elements of C(c_e, 2) counts a pair once per shared element;
    # pairs sharing two elements are exactly the pairs with a common 2-subset.
    if elems.shape[0] < 2:
        return 0
    ce = np.bincount(elems.ravel(), minlength=n + 1).astype(np.int64)
    by_element = int((ce * (ce - 1) // 2).sum())
    base = np.int64(n + 1)
    keys = np.concatenate([
        elems[:, 0] * base + elems[:, 1],
        elems[:, 0] * base + elems[:, 2],
        elems[:, 1] * base + elems[:, 2],
    ])
    _, cp = np.unique(keys, return_counts=True)
    cp = cp.astype(np.int64)
    by_pair = int((cp * (cp - 1) // 2).sum())
    return by_element - 2 * by_pair


def _sparse_count(elems: np.ndarray, n: int) -> int:
    m = elems.shape[0]
    if m < 2:
        return 0
    rows = np.repeat(np.arange(m), 3)
    inc = sparse.csr_matrix(
        (np.ones(3 * m, dtype=np.int32), (rows, elems.ravel() - 1)), shape=(m, n)
    )
    gram = (inc @ inc.T).tocsr()
    return int(np.count_nonzero(gram.data == 1)) // 2


COUNT_METHODS = ("grouped", "pairwise", "sparse")


def count_induced_edges(params: GraphParams, W: VertexSet, method: str = "grouped") -> int:
    """Number of edges of G(n,3,1) with both ends in ``W``.

    ``pairwise`` is the O(|W|^2) reference; ``grouped`` counts via
    element and pair multiplicities in O(|W| log |W|); ``sparse`` reads
    intersection sizes off the Gram matrix of the incidence matrix.
    """
    if W.n != params.n:
        raise InvalidParameterError(f"set over n={W.n} used with n={params.n}")
    elems = W.to_array()
    if method == "grouped":
        return _grouped_count(elems, params.n)
    if method == "pairwise":
        return _pairwise_count(elems)
    if method == "sparse":
        return _sparse_count(elems, params.n)
    raise InvalidParameterError(f"unknown method {method!r}; use one of {COUNT_METHODS}")


def adjacency_masks(params: GraphParams) -> list[int]:
    """Adjacency of every vertex as a Python-int bitmask over colex ranks.

    Meant for the exact searches at small n; size grows as C(n,3)^2 bits.
    """
    n = params.n
    if params.vertex_count > 4096:
        raise InvalidParameterError(f"n={n} is too large for bitmask adjacency")
    verts = [colex_unrank(r, n) for r in range(params.vertex_count)]
    masks = []
    for v in verts:
        m = 0
        for u in neighbors(params, v):
            m |= 1 << colex_rank(u, n)
        masks.append(m)
    return masks


# ---------------------------------------------------------------------------
# set files
# ---------------------------------------------------------------------------

def format_set(W: VertexSet) -> str:
    lines = [f"# n={W.n} size={W.size}"]
    lines.extend(f"{a} {b} {c}" for a, b, c in W)
    return "\n".join(lines) + "\n"


def write_set_file(path: str | Path, W: VertexSet) -> None:
    Path(path).write_text(format_set(W))


def parse_set(text: str, n: int | None = None) -> VertexSet:
    """Parse the one-triple-per-line set format.

    ``n`` defaults to an ``n=`` token in a header comment, then to the
    largest element present.
    """
    triples = []
    header_n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                if tok.startswith("n="):
                    try:
                        header_n = int(tok[2:])
                    except ValueError:
                        pass
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InvalidParameterError(f"line {lineno}: expected 3 integers: {raw!r}")
        try:
            t = tuple(int(p) for p in parts)
        except ValueError:
            raise InvalidParameterError(f"line {lineno}: not integers: {raw!r}") from None
        if not t[0] < t[1] < t[2]:
            raise InvalidParameterError(f"line {lineno}: not ascending: {raw!r}")
        triples.append(t)
    if n is None:
        n = header_n
    if n is None:
        n = max((t[2] for t in triples), default=3)
    return VertexSet.from_vertices(max(n, 3), triples)


def read_set_file(path: str | Path, n: int | None = None) -> VertexSet:
    return parse_set(Path(path).read_text(), n)

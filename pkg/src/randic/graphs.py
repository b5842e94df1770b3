"""Simple undirected graphs: text formats, generators, subdivision, and
exhaustive enumeration of small connected graphs.

Vertices are integers ``0..n-1``.  Edges are stored as a sorted tuple of
``(u, v)`` pairs with ``u < v``, so every iteration order in the package is
deterministic.  Construction is permissive about isolated vertices; the
spectral layer rejects them where degree weights would be undefined.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .errors import GraphFormatError

GRAPH6_MAX_ORDER = 62  # short graph6 form: one header byte
ENUMERATION_MAX_ORDER = 7

_GRAPH6_HEADER = ">>graph6<<"


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph: no self-loops, no parallel edges."""

    n: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph on vertices ``0..n-1``, deduplicating undirected pairs."""
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        canon = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for order {n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            canon.add((u, v) if u < v else (v, u))
        return cls(n, tuple(sorted(canon)))

    @property
    def m(self) -> int:
        """Number of edges."""
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix (read-only, symmetric, zero diagonal)."""
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = 1
            a[v, u] = 1
        a.setflags(write=False)
        return a

    @cached_property
    def _neighbor_sets(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._neighbor_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def is_regular(self) -> bool:
        return self.n > 0 and len(set(self.degrees)) == 1


# ---------------------------------------------------------------------------
# graph6 text format (short form, n <= 62)
#
# Byte 0 is n+63.  The upper triangle of the adjacency matrix is read column
# by column (a(0,1), a(0,2), a(1,2), a(0,3), ...) and packed big-endian six
# bits per byte, each byte offset by 63, zero-padded at the end.
# ---------------------------------------------------------------------------


def _column_major_pairs(n: int) -> Iterator[tuple[int, int]]:
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(text: str) -> Graph:
    """Decode one short-form graph6 string into a Graph.

    Raises GraphFormatError for malformed input: bad header byte, characters
    outside the printable graph6 range, wrong body length, nonzero padding
    bits, or the extended (n > 62) forms, which are not supported.
    """
    s = text.strip()
    if s.startswith(_GRAPH6_HEADER):
        s = s[len(_GRAPH6_HEADER):].strip()
    if not s:
        raise GraphFormatError("empty graph6 string")
    values = []
    for ch in s:
        v = ord(ch) - 63
        if not 0 <= v <= 63:
            raise GraphFormatError(f"character {ch!r} outside graph6 range")
        values.append(v)
    if values[0] == 63:
        raise GraphFormatError("extended graph6 forms (order > 62) are not supported")
    n = values[0]
    body = values[1:]
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(body) != nbytes:
        raise GraphFormatError(
            f"graph6 body for order {n} needs {nbytes} bytes, got {len(body)}"
        )
    bits = []
    for v in body:
        for shift in range(5, -1, -1):
            bits.append((v >> shift) & 1)
    if any(bits[nbits:]):
        raise GraphFormatError("nonzero padding bits in graph6 body")
    edges = [
        pair for pair, bit in zip(_column_major_pairs(n), bits) if bit
    ]
    return Graph.from_edges(n, edges)


def encode_graph6(g: Graph) -> str:
    """Encode a Graph as a short-form graph6 string (order <= 62)."""
    if g.n > GRAPH6_MAX_ORDER:
        raise GraphFormatError(
            f"order {g.n} exceeds the short graph6 limit of {GRAPH6_MAX_ORDER}"
        )
    bits = [1 if g.has_edge(i, j) else 0 for i, j in _column_major_pairs(g.n)]
    while len(bits) % 6:
        bits.append(0)
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(chr(v + 63))
    return "".join(out)


# ---------------------------------------------------------------------------
# Edge-list text format: first token is n, then "u v" pairs, 0-based.
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse an edge-list document; duplicate undirected pairs collapse."""
    tokens = text.split()
    if not tokens:
        raise GraphFormatError("empty edge list")
    try:
        numbers = [int(t) for t in tokens]
    except ValueError as exc:
        raise GraphFormatError(f"non-integer token in edge list: {exc}") from None
    n = numbers[0]
    if n < 0:
        raise GraphFormatError("vertex count must be non-negative")
    rest = numbers[1:]
    if len(rest) % 2:
        raise GraphFormatError("dangling vertex index; edges come in pairs")
    try:
        return Graph.from_edges(n, zip(rest[0::2], rest[1::2]))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

GENERATOR_KINDS = ("complete", "path", "cycle", "star", "petersen")


def generate(kind: str, n: int | None = None) -> Graph:
    """Construct a named graph.

    ``complete``, ``path`` and ``star`` need n >= 2, ``cycle`` needs n >= 3;
    ``petersen`` ignores n and always has order 10.  The star has vertex 0 as
    its center.
    """
    if kind == "petersen":
        return _petersen()
    if kind not in GENERATOR_KINDS:
        raise ValueError(f"unknown generator kind {kind!r}")
    if n is None:
        raise ValueError(f"generator {kind!r} needs an order")
    minimum = 3 if kind == "cycle" else 2
    if n < minimum:
        raise ValueError(f"generator {kind!r} needs order >= {minimum}, got {n}")
    if kind == "complete":
        edges = combinations(range(n), 2)
    elif kind == "path":
        edges = ((i, i + 1) for i in range(n - 1))
    elif kind == "cycle":
        edges = ((i, (i + 1) % n) for i in range(n))
    else:  # star
        edges = ((0, i) for i in range(1, n))
    return Graph.from_edges(n, edges)


def _petersen() -> Graph:
    # Kneser construction: vertices are the 2-subsets of a 5-set, adjacent
    # exactly when disjoint.
    subsets = list(combinations(range(5), 2))
    edges = [
        (i, j)
        for i in range(10)
        for j in range(i + 1, 10)
        if not set(subsets[i]) & set(subsets[j])
    ]
    return Graph.from_edges(10, edges)


# ---------------------------------------------------------------------------
# Structural operations
# ---------------------------------------------------------------------------


def subdivision(g: Graph) -> Graph:
    """Insert one new degree-2 vertex into every edge.

    The result has order n+m and size 2m: original vertices keep their
    indices (and degrees), and the vertex splitting edge number ``i`` in the
    canonical sorted edge order gets index ``n + i``.
    """
    edges = []
    for i, (u, v) in enumerate(g.edges):
        w = g.n + i
        edges.append((u, w))
        edges.append((v, w))
    return Graph.from_edges(g.n + g.m, edges)


def is_connected(g: Graph) -> bool:
    """True when a traversal from vertex 0 reaches all n vertices."""
    if g.n <= 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def common_neighbor_stats(g: Graph, i: int, j: int) -> tuple[int, float]:
    """Common-neighbor count of i and j plus the reciprocal-degree sum over
    that common neighborhood."""
    if i == j:
        raise ValueError("common neighbors are defined for distinct vertices")
    common = g.neighbors(i) & g.neighbors(j)
    weighted = sum(1.0 / g.degrees[k] for k in common)
    return len(common), weighted


def incidence_matrix(g: Graph) -> np.ndarray:
    """n x m vertex-edge incidence matrix over the canonical edge order.

    Each column has exactly two 1-entries, at the endpoints of its edge, so
    B @ B.T equals D + A entrywise in integer arithmetic.
    """
    if g.m == 0:
        raise ValueError("incidence matrix needs at least one edge")
    b = np.zeros((g.n, g.m), dtype=np.int64)
    for col, (u, v) in enumerate(g.edges):
        b[u, col] = 1
        b[v, col] = 1
    return b


# ---------------------------------------------------------------------------
# Exhaustive enumeration of small connected graphs
# ---------------------------------------------------------------------------


def vertex_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Lexicographic vertex pairs; bit k of an edge mask selects pair k."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def _mask_is_connected(n: int, adj_bits: list[int]) -> bool:
    visited = 1
    stack = [0]
    while stack:
        v = stack.pop()
        fresh = adj_bits[v] & ~visited
        while fresh:
            low = fresh & -fresh
            visited |= low
            stack.append(low.bit_length() - 1)
            fresh ^= low
    return visited == (1 << n) - 1


def _connected_masks(n: int, start: int, stop: int) -> Iterator[tuple[int, tuple[tuple[int, int], ...]]]:
    pairs = vertex_pairs(n)
    for mask in range(start, stop):
        adj_bits = [0] * n
        edges = []
        mm = mask
        k = 0
        while mm:
            if mm & 1:
                u, v = pairs[k]
                adj_bits[u] |= 1 << v
                adj_bits[v] |= 1 << u
                edges.append(pairs[k])
            mm >>= 1
            k += 1
        # connectivity implies no isolated vertex for n >= 2
        if _mask_is_connected(n, adj_bits):
            yield mask, tuple(edges)


def edge_mask_count(n: int) -> int:
    """Size of the edge-subset space scanned for order n."""
    return 1 << (n * (n - 1) // 2)


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """Yield every labeled connected simple graph on n vertices.

    All 2^(n(n-1)/2) edge subsets are visited in increasing mask order over
    the lexicographic pair list, so the stream is deterministic.  Bounded to
    2 <= n <= 7; the order-7 space has about 2.1 million subsets, so callers
    surface it behind an explicit opt-in.
    """
    if not 2 <= n <= ENUMERATION_MAX_ORDER:
        raise ValueError(
            f"enumeration supports orders 2..{ENUMERATION_MAX_ORDER}, got {n}"
        )
    for _, edges in _connected_masks(n, 0, edge_mask_count(n)):
        yield Graph(n, edges)

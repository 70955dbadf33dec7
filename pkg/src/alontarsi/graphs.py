"""Small simple graphs, Cartesian products, toroidal grids and orientations.

Vertex numbering of products is layer-major: in ``cartesian_product(g, h)``
the vertex ``(u, v)`` with ``u`` in ``g`` and ``v`` in ``h`` gets index
``v * g.n + u``, so each consecutive block of ``g.n`` indices is one copy of
``g``. The signs of graph-polynomial coefficients depend on this ordering
and every module relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Base class for invalid graph input."""


class InvalidParameterError(GraphError):
    pass


class MalformedLineError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class LoopError(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on ``0..n-1`` with lexicographically sorted edges ``(i, j)``, ``i < j``."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidParameterError("vertex count must be nonnegative")
        seen = set()
        canon = []
        for u, v in self.edges:
            if u == v:
                raise LoopError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexRangeError(f"edge ({u}, {v}) out of range for n={self.n}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise DuplicateEdgeError(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        return cls(n, tuple((int(u), int(v)) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def is_regular(self) -> bool:
        deg = self.degrees()
        return all(d == deg[0] for d in deg) if deg else True

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.neighbors()
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.n

    def is_proper(self, values: Sequence) -> bool:
        return all(values[u] != values[v] for u, v in self.edges)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> Graph:
        return cls.from_edges(obj["n"], obj["edges"])


def make_path(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError("path needs at least one vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError(f"cycle length must be >= 3, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def make_complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def make_complete_bipartite(p: int, q: int) -> Graph:
    return Graph.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G box H with vertex ``(u, v)`` at index ``v * g.n + u``."""
    edges = []
    for v in range(h.n):
        base = v * g.n
        edges.extend((base + a, base + b) for a, b in g.edges)
    for a, b in h.edges:
        edges.extend((a * g.n + u, b * g.n + u) for u in range(g.n))
    return Graph.from_edges(g.n * h.n, edges)


@dataclass(frozen=True)
class TorusSpec:
    """Toroidal grid C_m box C_k: ``m`` is the layer cycle, ``k`` the outer cycle."""

    m: int
    k: int

    def __post_init__(self) -> None:
        if self.m < 3 or self.k < 3:
            raise InvalidParameterError(f"torus sides must be >= 3, got ({self.m}, {self.k})")


def make_torus(spec: TorusSpec | tuple[int, int]) -> Graph:
    if not isinstance(spec, TorusSpec):
        spec = TorusSpec(*spec)
    return cartesian_product(make_cycle(spec.m), make_cycle(spec.k))


@dataclass(frozen=True)
class Orientation:
    """Assignment of a head to every edge of ``graph`` (aligned with ``graph.edges``)."""

    graph: Graph
    heads: tuple[int, ...] = field()

    def __post_init__(self) -> None:
        if len(self.heads) != self.graph.m:
            raise InvalidParameterError("one head per edge required")
        for (u, v), h in zip(self.graph.edges, self.heads):
            if h != u and h != v:
                raise InvalidParameterError(f"head {h} is not an endpoint of ({u}, {v})")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]]) -> Orientation:
        """Build from ``(tail, head)`` pairs in any order."""
        arcs = [(int(t), int(h)) for t, h in arcs]
        graph = Graph.from_edges(n, arcs)
        head_of = {(min(t, h), max(t, h)): h for t, h in arcs}
        return cls(graph, tuple(head_of[e] for e in graph.edges))

    @classmethod
    def from_bits(cls, graph: Graph, bits: int) -> Orientation:
        """Bit ``i`` set means edge ``i`` points to its larger endpoint."""
        return cls(graph, tuple(v if bits >> i & 1 else u for i, (u, v) in enumerate(graph.edges)))

    def arcs(self) -> list[tuple[int, int]]:
        return [(u + v - h, h) for (u, v), h in zip(self.graph.edges, self.heads)]

    def indegrees(self) -> tuple[int, ...]:
        deg = [0] * self.graph.n
        for h in self.heads:
            deg[h] += 1
        return tuple(deg)

    def max_indegree(self) -> int:
        return max(self.indegrees(), default=0)

    def reversed(self) -> Orientation:
        return Orientation(self.graph, tuple(u + v - h for (u, v), h in zip(self.graph.edges, self.heads)))


def all_orientations(graph: Graph) -> Iterable[Orientation]:
    for bits in range(1 << graph.m):
        yield Orientation.from_bits(graph, bits)


def cyclic_orientation(n: int) -> Orientation:
    """The orientation 0 -> 1 -> ... -> n-1 -> 0 of C_n."""
    return Orientation.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def indegrees(d: Orientation) -> tuple[int, ...]:
    return d.indegrees()


def _parse_pairs(text: str, what: str) -> tuple[int, list[tuple[int, int]]]:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MalformedLineError("empty input")
    header = lines[0].split()
    if len(header) != 2 or not all(tok.lstrip("-").isdigit() for tok in header):
        raise MalformedLineError(f"bad header line: {lines[0]!r}")
    n, m = int(header[0]), int(header[1])
    if n < 0 or m < 0:
        raise MalformedLineError(f"bad header line: {lines[0]!r}")
    body = lines[1:]
    if len(body) != m:
        raise MalformedLineError(f"header announces {m} {what}s, found {len(body)}")
    pairs = []
    for ln in body:
        tok = ln.split()
        if len(tok) != 2 or not all(t.lstrip("-").isdigit() for t in tok):
            raise MalformedLineError(f"bad {what} line: {ln!r}")
        u, v = int(tok[0]), int(tok[1])
        if u == v:
            raise LoopError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"{what} ({u}, {v}) out of range for n={n}")
        pairs.append((u, v))
    return n, pairs


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``."""
    n, pairs = _parse_pairs(text, "edge")
    return Graph.from_edges(n, pairs)


def serialize(g: Graph) -> str:
    return "\n".join([f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]) + "\n"


def parse_orientation(text: str) -> Orientation:
    """Parse ``"n m"`` followed by ``m`` lines ``"tail head"``."""
    n, pairs = _parse_pairs(text, "arc")
    return Orientation.from_arcs(n, pairs)


def serialize_orientation(d: Orientation) -> str:
    arcs = d.arcs()
    return "\n".join([f"{d.graph.n} {len(arcs)}"] + [f"{t} {h}" for t, h in arcs]) + "\n"

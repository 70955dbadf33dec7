"""Even and odd circulations of an orientation, and the link to f_G.

A circulation is a set of arcs with in-degree equal to out-degree at every
vertex; the empty set counts. For an orientation ``D`` of ``G`` with
indegree vector ``t``,

    [prod x_i^{t_i}] f_G = sign(D) * (even(D) - odd(D)),

where ``sign(D) = (-1)^(number of arcs pointing to the larger endpoint)``:
in ``(x_i - x_j)``, ``i < j``, picking ``x_j`` means the arc points to ``j``
and costs a factor ``-1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from . import polycoeff
from .graphs import Graph, Orientation

MAX_CIRCULATION_EDGES = 22


@dataclass(frozen=True)
class CirculationCount:
    even: int
    odd: int

    @property
    def difference(self) -> int:
        return self.even - self.odd

    def to_json(self) -> dict:
        return {"even": self.even, "odd": self.odd, "difference": self.difference}


def circulation_diff(d: Orientation, *, max_edges: int = MAX_CIRCULATION_EDGES) -> CirculationCount:
    """Count balanced arc subsets of ``d`` by parity of their size.

    Arcs are decided in edge order; a branch dies as soon as some vertex has
    no undecided arcs left and is unbalanced.
    """
    g = d.graph
    if g.m > max_edges:
        raise polycoeff.SizeGuardError(f"{g.m} arcs exceeds the circulation guard of {max_edges}")
    arcs = d.arcs()
    last = [-1] * g.n
    for idx, (t, h) in enumerate(arcs):
        last[t] = idx
        last[h] = idx
    # A vertex with no arcs is trivially balanced.
    balance = [0] * g.n
    counts = [0, 0]

    def rec(idx: int, size: int) -> None:
        if idx == len(arcs):
            counts[size & 1] += 1
            return
        t, h = arcs[idx]
        for take in (False, True):
            if take:
                balance[t] -= 1
                balance[h] += 1
            if (last[t] != idx or balance[t] == 0) and (last[h] != idx or balance[h] == 0):
                rec(idx + 1, size + take)
            if take:
                balance[t] += 1
                balance[h] -= 1

    rec(0, 0)
    return CirculationCount(even=counts[0], odd=counts[1])


def sign_of_orientation(d: Orientation) -> int:
    ascending = sum(h == v for (u, v), h in zip(d.graph.edges, d.heads))
    return -1 if ascending % 2 else 1


@dataclass(frozen=True)
class CorrespondenceReport:
    indegrees: tuple[int, ...]
    coefficient: int
    sign: int
    counts: CirculationCount

    @property
    def ok(self) -> bool:
        return self.coefficient == self.sign * self.counts.difference

    def to_json(self) -> dict:
        return {
            "indegrees": list(self.indegrees),
            "coefficient": self.coefficient,
            "sign": self.sign,
            **self.counts.to_json(),
            "ok": self.ok,
        }


def verify_at_correspondence(g: Graph, d: Orientation) -> CorrespondenceReport:
    if d.graph != g:
        raise ValueError("orientation is not of this graph")
    t = d.indegrees()
    return CorrespondenceReport(
        indegrees=t,
        coefficient=polycoeff.coefficient_of(g, t),
        sign=sign_of_orientation(d),
        counts=circulation_diff(d),
    )


def orientation_with_indegrees(g: Graph, t: tuple[int, ...] | list[int]) -> Orientation | None:
    """An orientation whose indegree vector is exactly ``t``, via max-flow, or None."""
    if len(t) != g.n or sum(t) != g.m:
        return None
    net = nx.DiGraph()
    for idx, (u, v) in enumerate(g.edges):
        net.add_edge("s", ("e", idx), capacity=1)
        net.add_edge(("e", idx), ("v", u), capacity=1)
        net.add_edge(("e", idx), ("v", v), capacity=1)
    for v in range(g.n):
        net.add_edge(("v", v), "t", capacity=int(t[v]))
    if g.m == 0:
        return Orientation(g, ())
    value, flow = nx.maximum_flow(net, "s", "t")
    if value != g.m:
        return None
    heads = []
    for idx, (u, v) in enumerate(g.edges):
        heads.append(u if flow[("e", idx)].get(("v", u), 0) == 1 else v)
    return Orientation(g, tuple(heads))


def at_upper_bound_certificate(
    g: Graph,
    k: int,
    *,
    max_edges: int = polycoeff.MAX_EXPAND_EDGES,
    max_circulation_edges: int = MAX_CIRCULATION_EDGES,
) -> tuple[Orientation, int, CirculationCount | None] | None:
    """Orientation with max indegree ``k - 1`` whose even and odd circulation counts differ.

    Every nonzero monomial of f_G under cap ``k - 1`` is tried in sorted
    order; the first realizable indegree vector wins. Returns
    ``(orientation, coefficient, counts)``; ``counts`` is None when the graph
    is above the circulation guard (the coefficient is then the evidence).
    """
    table = polycoeff.expand(g, k - 1, max_edges=max_edges)
    for t in sorted(table):
        d = orientation_with_indegrees(g, t)
        if d is None:
            continue
        counts = circulation_diff(d) if g.m <= max_circulation_edges else None
        if counts is not None and counts.difference == 0:
            raise ArithmeticError(f"nonzero coefficient {table[t]} but balanced circulation counts")
        return d, table[t], counts
    return None

"""Brute-force list coloring for tiny graphs.

List assignments are enumerated up to renaming of colors: lists are built
vertex by vertex and any color not used so far is introduced as the next
unused integer, so each orbit under color permutations is visited once.
With a universe of ``k * n`` colors this is exhaustive, because a bad
assignment never uses more than ``k * n`` distinct colors.

The default search only looks at minimal bad assignments (see
``critical_subsets`` and ``tight_assignments``); ``method="plain"`` walks the
whole canonical space and serves as its cross-check.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .graphs import Graph
from . import polycoeff

MAX_ASSIGNMENTS = 5_000_000
MAX_SUBSET_VERTICES = 16

ListAssignment = tuple[tuple[int, ...], ...]


def degeneracy_order(g: Graph) -> list[int]:
    """Vertices in reverse smallest-last order, so each has few earlier neighbors."""
    adj = [set(a) for a in g.neighbors()]
    alive = set(range(g.n))
    order = []
    while alive:
        v = min(alive, key=lambda x: (len(adj[x] & alive), x))
        order.append(v)
        alive.remove(v)
    return order[::-1]


def l_colorable(g: Graph, lists: Sequence[Sequence[int]], order: list[int] | None = None) -> tuple[int, ...] | None:
    """A proper coloring with ``color[v] in lists[v]``, or None when none exists."""
    if len(lists) != g.n:
        raise ValueError("one list per vertex required")
    order = degeneracy_order(g) if order is None else order
    adj = g.neighbors()
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[w for w in adj[v] if pos[w] < pos[v]] for v in order]
    color = [None] * g.n

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in lists[v]:
            if all(color[w] != c for w in earlier[i]):
                color[v] = c
                if rec(i + 1):
                    return True
        color[v] = None
        return False

    if rec(0):
        return tuple(color)
    return None


@dataclass(frozen=True)
class ChoosabilityVerdict:
    choosable: bool
    k: int
    universe_size: int
    complete: bool
    witness: ListAssignment | None = None
    assignments_checked: int = 0

    @property
    def label(self) -> str:
        if not self.choosable:
            return "not choosable"
        return "choosable" if self.complete else "choosable within universe"

    def to_json(self) -> dict:
        out = {
            "choosable": self.choosable,
            "label": self.label,
            "k": self.k,
            "universe": self.universe_size,
            "complete": self.complete,
            "assignments_checked": self.assignments_checked,
        }
        if self.witness is not None:
            out["witness"] = witness_json(self.witness)
        return out


def witness_json(lists: ListAssignment) -> dict:
    return {"lists": [list(x) for x in lists], "colorable": False}


def canonical_assignments(n: int, k: int, universe: int, prefix: ListAssignment = ()) -> Iterator[ListAssignment]:
    """Every k-list assignment on ``n`` vertices from ``range(universe)``, one per color-renaming class."""
    used = 1 + max((c for lst in prefix for c in lst), default=-1)
    cur = list(prefix)

    def rec(i: int, used: int) -> Iterator[ListAssignment]:
        if i == n:
            yield tuple(cur)
            return
        for fresh in range(0, k + 1):
            if used + fresh > universe or k - fresh > used:
                continue
            new = tuple(range(used, used + fresh))
            for old in combinations(range(used), k - fresh):
                cur.append(old + new)
                yield from rec(i + 1, used + fresh)
                cur.pop()

    yield from rec(len(prefix), used)


def count_canonical_assignments(n: int, k: int, universe: int) -> int:
    # ways[u] = number of prefixes using exactly u colors
    ways = {0: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for used, w in ways.items():
            for fresh in range(k + 1):
                if used + fresh > universe or k - fresh > used:
                    continue
                nxt[used + fresh] = nxt.get(used + fresh, 0) + w * comb(used, k - fresh)
        ways = nxt
    return sum(ways.values())


def _scan(args) -> tuple[ListAssignment | None, int]:
    g, k, universe, prefix = args
    order = degeneracy_order(g)
    checked = 0
    for lists in canonical_assignments(g.n, k, universe, prefix):
        checked += 1
        if l_colorable(g, lists, order) is None:
            return lists, checked
    return None, checked


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    pos = {v: i for i, v in enumerate(vertices)}
    return Graph.from_edges(len(vertices), [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos])


def critical_subsets(g: Graph, k: int) -> list[tuple[int, ...]]:
    """Vertex sets that can carry a minimal bad k-list assignment.

    A vertex of degree < k in G[S] can always be colored last, and a bad
    assignment on a disconnected graph is bad on some component, so only
    connected induced subgraphs of minimum degree >= k remain.
    """
    out = []
    for size in range(k + 1, g.n + 1):
        for s in combinations(range(g.n), size):
            h = induced_subgraph(g, s)
            if h.n and min(h.degrees()) >= k and h.is_connected():
                out.append(s)
    return out


def tight_assignments(h: Graph, k: int, universe: int) -> Iterator[ListAssignment]:
    """Canonical k-list assignments of ``h`` in which every color of every list
    also appears in some neighbor's list.

    If ``c`` in ``L(v)`` appears in no neighbor's list, ``v`` can always take
    ``c``; so a bad assignment that is not of this form is already bad on
    ``h - v``, which :func:`critical_subsets` covers separately.
    """
    adj = h.neighbors()
    closes_at: list[list[int]] = [[] for _ in range(h.n)]
    for v in range(h.n):
        closes_at[max([v] + adj[v])].append(v)
    cur: list[tuple[int, ...]] = []

    def tight(v: int) -> bool:
        seen = set()
        for w in adj[v]:
            seen.update(cur[w])
        return all(c in seen for c in cur[v])

    def rec(i: int, used: int) -> Iterator[ListAssignment]:
        if i == h.n:
            yield tuple(cur)
            return
        for fresh in range(0, k + 1):
            if used + fresh > universe or k - fresh > used:
                continue
            new = tuple(range(used, used + fresh))
            for old in combinations(range(used), k - fresh):
                cur.append(old + new)
                if all(tight(v) for v in closes_at[i]):
                    yield from rec(i + 1, used + fresh)
                cur.pop()

    yield from rec(0, 0)


def _scan_subset(args) -> tuple[ListAssignment | None, int]:
    g, k, universe, subset = args
    h = induced_subgraph(g, subset)
    order = degeneracy_order(h)
    checked = 0
    for lists in tight_assignments(h, k, universe):
        checked += 1
        if l_colorable(h, lists, order) is None:
            return lists, checked
    return None, checked


def _lift(g: Graph, k: int, subset: Sequence[int], lists: ListAssignment) -> ListAssignment:
    full = [tuple(range(k))] * g.n
    for v, lst in zip(subset, lists):
        full[v] = lst
    return tuple(full)


def k_choosable(
    g: Graph,
    k: int,
    universe: int | None = None,
    *,
    method: str = "reduced",
    max_assignments: int = MAX_ASSIGNMENTS,
    threads: int = 1,
) -> ChoosabilityVerdict:
    """Decide k-choosability by exhaustive search over list assignments.

    ``method="plain"`` checks every canonical assignment of ``g``;
    ``method="reduced"`` checks only tight assignments of the critical
    induced subgraphs, which finds a bad assignment exactly when the plain
    search does. Colors are drawn from ``range(universe)`` (default
    ``k * n``, which makes the verdict complete).
    """
    if k < 1:
        raise ValueError("k must be positive")
    universe = k * g.n if universe is None else universe
    if universe < k:
        raise ValueError("universe must contain at least k colors")
    complete = universe >= k * g.n
    if method == "plain":
        total = count_canonical_assignments(g.n, k, universe)
        if total > max_assignments:
            raise polycoeff.SizeGuardError(
                f"{total} canonical list assignments would be enumerated, guard is {max_assignments}"
            )
        if threads > 1 and g.n >= 2:
            # split on the second vertex's list; the first list is always (0..k-1)
            jobs = [(g, k, universe, p) for p in canonical_assignments(2, k, universe)]
            with ProcessPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(_scan, jobs))
        else:
            results = [_scan((g, k, universe, ()))]
        witness = next((w for w, _ in results if w is not None), None)
    elif method == "reduced":
        if g.n > MAX_SUBSET_VERTICES:
            raise polycoeff.SizeGuardError(f"{g.n} vertices exceeds the subset guard of {MAX_SUBSET_VERTICES}")
        subsets = critical_subsets(g, k)
        total = sum(count_canonical_assignments(len(s), k, universe) for s in subsets)
        if total > max_assignments:
            raise polycoeff.SizeGuardError(
                f"{total} canonical list assignments over {len(subsets)} critical subgraphs "
                f"would be enumerated, guard is {max_assignments}"
            )
        jobs = [(g, k, universe, s) for s in subsets]
        if threads > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(_scan_subset, jobs))
        else:
            results = []
            for job in jobs:
                results.append(_scan_subset(job))
                if results[-1][0] is not None:
                    break
        witness = None
        for s, (w, _) in zip(subsets, results):
            if w is not None:
                witness = _lift(g, k, s, w)
                break
    else:
        raise ValueError(f"unknown method {method!r}")
    checked = sum(c for _, c in results)
    if witness is not None:
        assert l_colorable(g, witness) is None
        return ChoosabilityVerdict(False, k, universe, complete, witness, checked)
    return ChoosabilityVerdict(True, k, universe, complete, None, checked)


def chromatic_number(g: Graph) -> int:
    for k in range(1, g.n + 1):
        if l_colorable(g, [tuple(range(k))] * g.n) is not None:
            return k
    return max(g.n, 0)


@dataclass(frozen=True)
class ListChromaticResult:
    chi_l: int
    chi: int
    at: int | None
    verdicts: tuple[ChoosabilityVerdict, ...]

    @property
    def sandwich_ok(self) -> bool:
        return self.chi <= self.chi_l and (self.at is None or self.chi_l <= self.at)

    def to_json(self) -> dict:
        return {
            "chi": self.chi,
            "chi_l": self.chi_l,
            "at": self.at,
            "sandwich_ok": self.sandwich_ok,
            "verdicts": [v.to_json() for v in self.verdicts],
        }


def list_chromatic_number(
    g: Graph,
    kmax: int,
    *,
    max_assignments: int = MAX_ASSIGNMENTS,
    threads: int = 1,
    with_at: bool = True,
    method: str = "reduced",
) -> ListChromaticResult:
    """Smallest ``k <= kmax`` for which ``g`` is k-choosable, using the complete universe ``k * n``."""
    chi = chromatic_number(g)
    verdicts = []
    # k-choosable implies k-colorable, so start at chi
    for k in range(max(chi, 1), kmax + 1):
        v = k_choosable(g, k, k * g.n, method=method, max_assignments=max_assignments, threads=threads)
        verdicts.append(v)
        if v.choosable:
            at = None
            if with_at and g.m <= polycoeff.MAX_EXPAND_EDGES:
                at = polycoeff.alon_tarsi_number(g)[0]
            return ListChromaticResult(k, chi, at, tuple(verdicts))
    raise ValueError(f"not {kmax}-choosable; raise kmax")

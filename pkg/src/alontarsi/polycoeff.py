"""Coefficients of the graph polynomial f_G = prod_{(i,j) in E, i<j} (x_i - x_j).

Two independent routes to a coefficient:

* expansion: multiply the edge factors out one at a time, tracking exponent
  vectors exactly (``expand``, ``coefficient_of``);
* interpolation: the weighted sum of f_G over a grid of points,
  ``sum f(a) / N(a)`` over ``A_1 x ... x A_n`` (``coefficient_formula``).
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .eisenstein import EisensteinInt, unit_root
from .graphs import Graph

MAX_EXPAND_EDGES = 26
MAX_FORMULA_VERTICES = 16

ExponentVector = tuple[int, ...]
CoefficientTable = dict[ExponentVector, int]


class SizeGuardError(ValueError):
    """Input exceeds a configured enumeration guard."""


class SetSizeError(ValueError):
    pass


class MembershipError(ValueError):
    pass


def _check_edges(g: Graph, max_edges: int) -> None:
    if g.m > max_edges:
        raise SizeGuardError(f"{g.m} edges exceeds the expansion guard of {max_edges}")


def _last_use(g: Graph) -> list[int]:
    last = [-1] * g.n
    for idx, (u, v) in enumerate(g.edges):
        last[u] = idx
        last[v] = idx
    return last


def expand(g: Graph, cap: int | Sequence[int] | None = None, *, max_edges: int = MAX_EXPAND_EDGES) -> CoefficientTable:
    """Expand f_G exactly.

    With ``cap`` (an int or one bound per vertex) only monomials whose exponents
    all stay within the cap are produced; partial products that overshoot are
    dropped as soon as they do, which is sound because exponents only grow.
    """
    _check_edges(g, max_edges)
    if cap is None:
        bound = [g.m] * g.n
    elif isinstance(cap, int):
        bound = [cap] * g.n
    else:
        bound = list(cap)
        if len(bound) != g.n:
            raise ValueError("one cap per vertex required")
    if any(b < 0 for b in bound):
        return {}
    states: dict[ExponentVector, int] = {(0,) * g.n: 1}
    for u, v in g.edges:
        nxt: dict[ExponentVector, int] = {}
        for exps, c in states.items():
            # choosing x_u keeps the sign, choosing x_v flips it
            for w, sgn in ((u, c), (v, -c)):
                if exps[w] >= bound[w]:
                    continue
                key = exps[:w] + (exps[w] + 1,) + exps[w + 1:]
                nxt[key] = nxt.get(key, 0) + sgn
        states = {k: c for k, c in nxt.items() if c}
        if not states:
            break
    return states


def coefficient_of(g: Graph, t: Sequence[int], *, max_edges: int = MAX_EXPAND_EDGES) -> int:
    """Exact coefficient of prod x_i^{t_i} in f_G.

    Expands with the target as a per-vertex cap and additionally requires a
    vertex to have reached exactly ``t_i`` once its last incident edge is used.
    """
    t = tuple(int(x) for x in t)
    if len(t) != g.n:
        raise ValueError(f"exponent vector has length {len(t)}, graph has {g.n} vertices")
    if any(x < 0 for x in t) or sum(t) != g.m:
        return 0
    _check_edges(g, max_edges)
    last = _last_use(g)
    deg = g.degrees()
    if any(t[i] > deg[i] for i in range(g.n)):
        return 0
    isolated_ok = all(t[i] == 0 for i in range(g.n) if deg[i] == 0)
    if not isolated_ok:
        return 0
    states: dict[ExponentVector, int] = {(0,) * g.n: 1}
    for idx, (u, v) in enumerate(g.edges):
        nxt: dict[ExponentVector, int] = {}
        for exps, c in states.items():
            for w, sgn in ((u, c), (v, -c)):
                if exps[w] >= t[w]:
                    continue
                key = exps[:w] + (exps[w] + 1,) + exps[w + 1:]
                nxt[key] = nxt.get(key, 0) + sgn
        closed = [w for w in (u, v) if last[w] == idx]
        states = {k: c for k, c in nxt.items() if c and all(k[w] == t[w] for w in closed)}
        if not states:
            return 0
    return states.get(t, 0)


def evaluate(g: Graph, point: Sequence) -> object:
    """f_G at ``point``; works over int, Fraction or EisensteinInt entries."""
    value = 1
    for u, v in g.edges:
        value = value * (point[u] - point[v])
    return value


def evaluate_table(table: CoefficientTable, point: Sequence[int]) -> int:
    total = 0
    for exps, c in table.items():
        term = c
        for x, e in zip(point, exps):
            if e:
                term *= x**e
        total += term
    return total


def weight_N(point: Sequence, sets: Sequence[Iterable]) -> object:
    """prod_i prod_{b in A_i, b != a_i} (a_i - b); never zero."""
    if len(point) != len(sets):
        raise ValueError("point and sets differ in length")
    value = 1
    for a, s in zip(point, sets):
        s = list(s)
        if a not in s:
            raise MembershipError(f"{a} is not in its set {s}")
        for b in s:
            if b != a:
                value = value * (a - b)
    return value


def _proper_points(g: Graph, sets: Sequence[Sequence]):
    """All points of A_1 x ... x A_n on which f_G does not vanish."""
    adj = g.neighbors()
    n = g.n
    point: list = [None] * n

    def rec(i: int):
        if i == n:
            yield tuple(point)
            return
        for a in sets[i]:
            if all(point[j] != a for j in adj[i] if j < i):
                point[i] = a
                yield from rec(i + 1)
        point[i] = None

    yield from rec(0)


def _eisenstein_sets(sets: Sequence[Iterable]) -> list[list[EisensteinInt]]:
    out = []
    for s in sets:
        row = []
        for x in s:
            if isinstance(x, EisensteinInt):
                row.append(x)
            elif isinstance(x, int):
                row.append(EisensteinInt(x, 0))
            else:
                raise TypeError(f"unsupported set element {x!r}")
        out.append(row)
    return out


def coefficient_formula(
    g: Graph,
    t: Sequence[int],
    sets: Sequence[Iterable],
    *,
    field: str = "auto",
    max_vertices: int = MAX_FORMULA_VERTICES,
) -> int | EisensteinInt:
    """Coefficient of prod x_i^{t_i} as ``sum_{a in A_1 x ... x A_n} f_G(a) / N(a)``.

    ``field`` is ``"rational"`` (integer sets, exact Fractions),
    ``"eisenstein"`` (sets inside Z[w], e.g. the cube roots of unity) or
    ``"auto"`` which picks by element type. Only points where f_G is nonzero
    are visited; the others contribute nothing.
    """
    t = tuple(int(x) for x in t)
    sets = [list(dict.fromkeys(s)) for s in sets]
    if len(t) != g.n or len(sets) != g.n:
        raise SetSizeError("need one exponent and one set per vertex")
    for i, (ti, s) in enumerate(zip(t, sets)):
        if len(s) != ti + 1:
            raise SetSizeError(f"vertex {i}: |A_i| = {len(s)} but t_i + 1 = {ti + 1}")
    if sum(t) < g.m:
        raise SetSizeError(f"sum of exponents {sum(t)} is below deg f_G = {g.m}")
    if g.n > max_vertices:
        raise SizeGuardError(f"{g.n} vertices exceeds the formula guard of {max_vertices}")
    if field == "auto":
        field = "eisenstein" if any(isinstance(x, EisensteinInt) for s in sets for x in s) else "rational"

    if field == "rational":
        total = Fraction(0)
        for a in _proper_points(g, sets):
            total += Fraction(evaluate(g, a), weight_N(a, sets))
        if total.denominator != 1:
            raise ArithmeticError(f"coefficient formula produced non-integral {total}")
        return int(total)

    if field == "eisenstein":
        esets = _eisenstein_sets(sets)
        # f/N = f * conj(N) / norm(N): accumulate over a rational denominator
        re_part = Fraction(0)
        om_part = Fraction(0)
        for a in _proper_points(g, esets):
            den = weight_N(a, esets)
            num = evaluate(g, a) * den.conj()
            nrm = den.norm()
            re_part += Fraction(num.a, nrm)
            om_part += Fraction(num.b, nrm)
        if re_part.denominator != 1 or om_part.denominator != 1:
            raise ArithmeticError(f"coefficient formula produced non-integral ({re_part}, {om_part})")
        return EisensteinInt(int(re_part), int(om_part))

    raise ValueError(f"unknown field mode {field!r}")


def cube_root_sets(n: int) -> list[list[EisensteinInt]]:
    return [[unit_root(0), unit_root(1), unit_root(2)] for _ in range(n)]


def alon_tarsi_number(g: Graph, *, max_edges: int = MAX_EXPAND_EDGES) -> tuple[int, ExponentVector, int]:
    """Smallest ``k`` with a nonzero monomial of f_G whose exponents are all <= k - 1.

    Returns ``(k, witness exponents, witness coefficient)``. Caps below
    ``ceil(|E| / n)`` are skipped since a degree-|E| monomial cannot fit.
    """
    _check_edges(g, max_edges)
    if g.m == 0:
        return 1, (0,) * g.n, 1
    cap = -(-g.m // g.n)
    while cap <= g.m:
        table = expand(g, cap, max_edges=max_edges)
        if table:
            witness = min(table)
            return cap + 1, witness, table[witness]
        cap += 1
    raise AssertionError("f_G has no nonzero monomial, impossible for a simple graph")


def cn_point_search(g: Graph, t: Sequence[int], sets: Sequence[Iterable]) -> tuple | None:
    """Exhaustively look for a point of ``S_1 x ... x S_n`` where f_G is nonzero."""
    sets = [list(dict.fromkeys(s)) for s in sets]
    if len(sets) != g.n or len(t) != g.n:
        raise SetSizeError("need one exponent and one set per vertex")
    for i, (ti, s) in enumerate(zip(t, sets)):
        if len(s) <= ti:
            raise SetSizeError(f"vertex {i}: |S_i| = {len(s)} must exceed t_i = {ti}")
    return next(_proper_points(g, sets), None)


def brute_expand(g: Graph) -> CoefficientTable:
    """Literal 2^|E| enumeration of endpoint choices; a slow oracle for tests."""
    table: CoefficientTable = {}
    for choice in product((0, 1), repeat=g.m):
        exps = [0] * g.n
        sign = 1
        for (u, v), c in zip(g.edges, choice):
            if c:
                exps[v] += 1
                sign = -sign
            else:
                exps[u] += 1
        key = tuple(exps)
        table[key] = table.get(key, 0) + sign
    return {k: c for k, c in table.items() if c}


def brute_coefficient(g: Graph, t: Sequence[int], *, chunk_bits: int = 20, max_edges: int = 30) -> int:
    """Coefficient of prod x_i^{t_i} by visiting all 2^|E| endpoint choices literally.

    Bit ``e`` of the choice mask set means edge ``e = (u, v)`` contributes
    ``-x_v`` instead of ``x_u``. Vectorized over chunks of masks; independent
    of the pruned expansion used by :func:`coefficient_of`.
    """
    if g.m > max_edges:
        raise SizeGuardError(f"{g.m} edges exceeds the brute-force guard of {max_edges}")
    t = np.asarray(t, dtype=np.int16)
    total = 1 << g.m
    step = 1 << min(chunk_bits, g.m)
    result = 0
    for start in range(0, total, step):
        masks = np.arange(start, min(start + step, total), dtype=np.int64)
        indeg = np.zeros((g.n, masks.size), dtype=np.int16)
        parity = np.zeros(masks.size, dtype=np.int8)
        for e, (u, v) in enumerate(g.edges):
            bit = ((masks >> e) & 1).astype(np.int8)
            indeg[v] += bit
            indeg[u] += 1 - bit
            parity ^= bit
        hit = np.all(indeg == t[:, None], axis=0)
        odd = int(np.count_nonzero(hit & (parity == 1)))
        result += int(np.count_nonzero(hit)) - 2 * odd
    return result


def table_to_jsonl(table: CoefficientTable) -> str:
    return "".join(
        json.dumps({"exponents": list(k), "coefficient": table[k]}) + "\n" for k in sorted(table)
    )


def table_from_jsonl(text: str) -> CoefficientTable:
    table: CoefficientTable = {}
    for line in text.splitlines():
        if line.strip():
            obj = json.loads(line)
            table[tuple(obj["exponents"])] = int(obj["coefficient"])
    return table

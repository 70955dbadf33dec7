"""Verification suite shared by ``alontarsi selftest`` and the acceptance tests.

Each check returns a :class:`CheckResult`; a check passes only if its exact
conditions hold and it finishes within its time budget.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import choosability, circulations, polycoeff, transfer
from .eisenstein import Reality
from .graphs import (
    Graph,
    all_orientations,
    make_complete,
    make_complete_bipartite,
    make_cycle,
    make_torus,
)


@dataclass
class CheckResult:
    number: int
    name: str
    ok: bool
    seconds: float = 0.0
    budget: float = 0.0
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.ok and self.seconds < self.budget

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({'; '.join(self.details)})" if self.details and not self.passed else ""
        return f"[{status}] {self.number:2d}. {self.name}  {self.seconds:.2f}s / {self.budget:.0f}s{extra}"

    def to_json(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "budget": self.budget,
            "details": self.details,
        }


class _Recorder:
    def __init__(self) -> None:
        self.ok = True
        self.details: list[str] = []

    def expect(self, cond: bool, msg: str) -> None:
        if not cond:
            self.ok = False
            self.details.append(msg)


def _timed(number: int, name: str, budget: float, body: Callable[[_Recorder], None]) -> CheckResult:
    rec = _Recorder()
    start = time.perf_counter()
    try:
        body(rec)
    except Exception as exc:  # a crash is a failed check, reported by name
        rec.ok = False
        rec.details.append(f"{type(exc).__name__}: {exc}")
    return CheckResult(number, name, rec.ok, time.perf_counter() - start, budget, rec.details)


def check_antihermitian() -> CheckResult:
    def body(r: _Recorder) -> None:
        for m in (3, 5, 7):
            tm = transfer.build_matrix(make_cycle(m), "cycle_fast")
            r.expect(transfer.is_antihermitian(tm), f"M(C_{m}) is not antihermitian")
            r.expect(tm.matrix.nonzero_count() > 0, f"M(C_{m}) is zero")

    return _timed(1, "antihermitian M for C_3, C_5, C_7", 1.0, body)


def check_odd_even_nonvanishing() -> CheckResult:
    expected = {(3, 4): 36, (3, 6): -108}

    def body(r: _Recorder) -> None:
        for m, k in ((3, 4), (3, 6), (5, 4)):
            tr = transfer.trace_power(transfer.build_matrix(make_cycle(m), "cycle_fast"), k)
            r.expect(tr.reality_class() == Reality.REAL, f"tr M^{k} for C_{m} is {tr}, not real nonzero")
            r.expect((-1) ** (k // 2) * tr.a > 0, f"sign law fails for C_{m}, k={k}: {tr}")
            if (m, k) in expected:
                r.expect(tr == expected[m, k], f"tr M^{k} for C_{m} is {tr}, expected {expected[m, k]}")

    return _timed(2, "odd x even traces nonzero with sign (-1)^(k/2)", 1.0, body)


def check_odd_odd_vanishing() -> CheckResult:
    def body(r: _Recorder) -> None:
        for m, k in ((3, 3), (3, 5), (5, 3), (5, 5)):
            tr = transfer.trace_power(transfer.build_matrix(make_cycle(m), "cycle_fast"), k)
            r.expect(not tr, f"tr M^{k} for C_{m} is {tr}, expected 0")

    return _timed(3, "odd x odd traces vanish exactly", 5.0, body)


def check_oracle_equivalence(literal: bool = True) -> CheckResult:
    """All-2s coefficient by expansion equals sigma * tr M^k with one sigma."""

    def body(r: _Recorder) -> None:
        sigmas = set()
        for m, k in ((3, 3), (3, 4)):
            g = make_torus((m, k))
            t = (2,) * g.n
            coeff = polycoeff.coefficient_of(g, t)
            if literal:
                brute = polycoeff.brute_coefficient(g, t)
                r.expect(brute == coeff, f"T_{m},{k}: 2^{g.m} enumeration {brute} != pruned expansion {coeff}")
            tr = transfer.trace_power(transfer.build_matrix(make_cycle(m), "cycle_fast"), k)
            r.expect(tr.is_real(), f"tr M^{k} = {tr} not real")
            s = transfer.sigma(m, k)
            r.expect(coeff == s * tr.a, f"T_{m},{k}: coefficient {coeff} != {s} * {tr}")
            if tr:
                sigmas.add(coeff // tr.a)
        r.expect(len(sigmas) == 1, f"sigma not unique: {sigmas}")

    label = "2^|E| enumeration" if literal else "pruned expansion"
    return _timed(4, f"oracle equivalence, {label} vs sigma * tr M^k on T_3,3 and T_3,4", 60.0, body)


def check_at_table() -> CheckResult:
    def body(r: _Recorder) -> None:
        for (m, n), want in (((3, 4), 3), ((3, 6), 3), ((5, 4), 3), ((3, 3), 4), ((3, 5), 4), ((4, 4), 3)):
            got, cert = transfer.at_torus(m, n)
            r.expect(got == want, f"at_torus({m},{n}) = {got}, expected {want}")
            r.expect(cert["trace"] is not None, f"({m},{n}) has no machine trace")
            tr = cert["trace"]
            if want == 3:
                r.expect(tr and tr["b"] == 0 and tr["a"] != 0, f"({m},{n}) trace {tr} should be nonzero real")
            else:
                r.expect(tr == {"a": 0, "b": 0}, f"({m},{n}) trace {tr} should vanish")
        _, cert33 = transfer.at_torus(3, 3)
        w = cert33["witness"]
        r.expect(w is not None and max(w["exponents"]) <= 3 and w["coefficient"] != 0, "no capped-3 witness for (3,3)")
        if w is not None:
            g = make_torus((3, 3))
            r.expect(polycoeff.coefficient_of(g, w["exponents"]) == w["coefficient"], "witness coefficient mismatch")
        _, cert44 = transfer.at_torus(4, 4)
        r.expect(cert44.get("cited") == transfer.THEOREM_EVEN_EVEN, "(4,4) certificate lacks the even x even citation")

    return _timed(5, "AT table at desk scale", 90.0, body)


def check_correspondence() -> CheckResult:
    def body(r: _Recorder) -> None:
        for g in (make_cycle(3), make_cycle(4), make_cycle(5), make_complete(4)):
            for d in all_orientations(g):
                rep = circulations.verify_at_correspondence(g, d)
                if not rep.ok:
                    r.expect(False, f"n={g.n} heads={d.heads}: {rep.to_json()}")
                    return

    return _timed(6, "Alon-Tarsi correspondence over all orientations of C_3, C_4, C_5, K_4", 30.0, body)


def compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """Every exponent vector of length ``parts`` summing to ``total``."""
    if parts == 1:
        return [(total,)]
    return [(first,) + rest for first in range(total + 1) for rest in compositions(total - first, parts - 1)]


def _random_graph(rng: random.Random) -> Graph:
    n = rng.randint(2, 6)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = [p for p in pairs if rng.random() < 0.5] or [pairs[0]]
    return Graph.from_edges(n, edges)


def _random_exponents(rng: random.Random, g: Graph) -> tuple[int, ...]:
    table = polycoeff.expand(g)
    if table and rng.random() < 0.7:
        return rng.choice(sorted(table))
    t = [0] * g.n
    for _ in range(g.m + rng.randint(0, 1)):
        t[rng.randrange(g.n)] += 1
    return tuple(t)


def _random_set(rng: random.Random, size: int) -> list[int]:
    return rng.sample(range(-9, 10), size)


def formula_instances(seed: int = 20261019, count: int = 50) -> list[tuple[Graph, tuple[int, ...]]]:
    rng = random.Random(seed)
    return [(g, _random_exponents(rng, g)) for g in (_random_graph(rng) for _ in range(count))]


def check_coefficient_formula(seed: int = 20261019) -> CheckResult:
    def body(r: _Recorder) -> None:
        rng = random.Random(seed + 1)
        cases = []
        for g in (make_cycle(3), make_cycle(4)):
            cases.extend((g, t) for t in compositions(g.m, g.n))
        cases.extend(formula_instances(seed))
        for g, t in cases:
            sets = [_random_set(rng, ti + 1) for ti in t]
            got = polycoeff.coefficient_formula(g, t, sets)
            want = polycoeff.coefficient_of(g, t)
            r.expect(got == want, f"{g.to_json()} t={t}: formula {got} != expansion {want}")

    return _timed(7, "coefficient formula equals expansion (C_3, C_4, 50 random)", 10.0, body)


def check_nullstellensatz(seed: int = 20261019) -> CheckResult:
    def body(r: _Recorder) -> None:
        rng = random.Random(seed + 2)
        hits = 0
        for g, t in formula_instances(seed):
            if not polycoeff.coefficient_of(g, t):
                continue
            hits += 1
            sets = [_random_set(rng, ti + 1 + rng.randint(0, 2)) for ti in t]
            point = polycoeff.cn_point_search(g, t, sets)
            r.expect(point is not None, f"{g.to_json()} t={t}: no point found in {sets}")
            if point is not None:
                r.expect(polycoeff.evaluate(g, point) != 0, f"f_G vanishes at {point}")
                r.expect(all(a in s for a, s in zip(point, sets)), "point outside its sets")
        r.expect(hits > 0, "no instance with a nonzero coefficient")

    return _timed(8, "Nullstellensatz point search on nonzero-coefficient instances", 10.0, body)


def check_choosability_sandwich() -> CheckResult:
    def body(r: _Recorder) -> None:
        for name, g, want in (
            ("C_4", make_cycle(4), 2),
            ("C_5", make_cycle(5), 3),
            ("K_2,3", make_complete_bipartite(2, 3), 2),
            ("K_2,4", make_complete_bipartite(2, 4), 3),
        ):
            res = choosability.list_chromatic_number(g, 4)
            r.expect(res.chi_l == want, f"chi_l({name}) = {res.chi_l}, expected {want}")
            r.expect(res.at is not None and res.chi_l <= res.at, f"chi_l({name}) > AT = {res.at}")
            r.expect(res.chi <= res.chi_l, f"chi({name}) > chi_l")
            r.expect(all(v.complete for v in res.verdicts), f"{name}: incomplete universe")

    return _timed(9, "choosability sandwich chi <= chi_l <= AT", 120.0, body)


def check_out_of_desk_scale() -> CheckResult:
    def body(r: _Recorder) -> None:
        _, cert = transfer.at_torus(11, 13)
        r.expect(cert["kind"] == "theorem-cited" and not cert["machine_verified"], "large torus not flagged as cited")
        try:
            choosability.k_choosable(make_torus((3, 3)), 3)
        except polycoeff.SizeGuardError:
            pass
        else:
            r.expect(False, "choosability of T_3,3 was not refused")

    return _timed(10, "beyond desk scale: theorem-cited verdicts and refused chi_l", 5.0, body)


def run_checks(level: str = "fast") -> list[CheckResult]:
    if level not in ("fast", "full"):
        raise ValueError(f"unknown level {level!r}")
    return [
        check_antihermitian(),
        check_odd_even_nonvanishing(),
        check_odd_odd_vanishing(),
        check_oracle_equivalence(literal=level == "full"),
        check_at_table(),
        check_correspondence(),
        check_coefficient_formula(),
        check_nullstellensatz(),
        check_choosability_sandwich(),
        check_out_of_desk_scale(),
    ]

import json
from itertools import product

import numpy as np
import pytest

from alontarsi import polycoeff
from alontarsi.eisenstein import EisensteinInt as E, OMEGA, ONE, unit_root
from alontarsi.graphs import make_cycle, make_torus
from alontarsi.transfer import (
    LayerError,
    antihermitian_parity_diagnostic,
    at_torus,
    brute_trace,
    build_matrix,
    complement_color,
    cycle_matrix,
    cyclic_bridge_sign,
    enumerate_colorings,
    is_antihermitian,
    ratio_sequence,
    sigma,
    torus_coefficient,
    trace_power,
)

U = (0, 1, 2)  # (1, w, w^2) as residues


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_dimension_law(n):
    cols = enumerate_colorings(make_cycle(n))
    assert len(cols) == 2**n + 2 * (-1) ** n
    assert cols == sorted(cols)
    brute = [c for c in product(range(3), repeat=n) if make_cycle(n).is_proper(c)]
    assert cols == brute


def test_complement_color():
    assert unit_root(complement_color(U, 0)) == OMEGA
    assert complement_color(U, 1) == 2
    assert complement_color(U, 2) == 0


def test_ratio_sequence():
    assert ratio_sequence(U).values == (OMEGA,) * 3
    assert ratio_sequence(U).product() == ONE
    assert ratio_sequence((0, 2, 1)).residues == (2, 2, 2)
    for u in enumerate_colorings(make_cycle(5)):
        assert ratio_sequence(u).product() == ONE


@pytest.mark.parametrize("n", [3, 5, 7])
def test_modes_agree_on_odd_cycles(n):
    assert cyclic_bridge_sign(make_cycle(n)) == 1
    assert build_matrix(make_cycle(n), "general").matrix == build_matrix(make_cycle(n), "cycle_fast").matrix


def test_even_cycle_bridge_and_modes():
    assert cyclic_bridge_sign(make_cycle(4)) == -1
    assert build_matrix(make_cycle(4), "general").matrix == build_matrix(make_cycle(4), "cycle_fast").matrix


def test_c3_matrix_entries():
    tm = build_matrix(make_cycle(3))
    assert tm.dim == 6
    for i, u in enumerate(tm.colorings):
        nz = {v for v in tm.colorings if tm.entry(u, v)}
        rotations = {u[-1:] + u[:-1], u[1:] + u[:1]}
        assert nz == rotations
    assert tm.entry(U, (2, 0, 1)) == E(-1, 0)
    assert tm.entry(U, (1, 2, 0)) == E(1, 0)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_odd_cycle_entries(n):
    tm = build_matrix(make_cycle(n))
    for i in range(tm.dim):
        for j in range(tm.dim):
            x = tm.matrix[i, j]
            if any(a == b for a, b in zip(tm.colorings[i], tm.colorings[j])):
                assert not x
            else:
                assert x.norm() == 1
    for u in tm.colorings:
        assert tm.entry(u, u[-1:] + u[:-1])


@pytest.mark.parametrize("n", [3, 5, 7])
def test_antihermitian(n):
    assert is_antihermitian(build_matrix(make_cycle(n)))


def test_antihermitian_even_cycle_is_just_evaluated():
    assert isinstance(is_antihermitian(build_matrix(make_cycle(4), "general")), bool)


def test_non_cycle_layer_refused():
    with pytest.raises(LayerError):
        build_matrix(make_torus((3, 3)))


def eigen_trace(n, k):
    lam = np.linalg.eigvals(build_matrix(make_cycle(n)).matrix.to_complex())
    return complex(np.sum(lam**k))


@pytest.mark.parametrize("k, want", [(1, 0), (2, -12), (3, 0), (4, 36), (5, 0), (6, -108)])
def test_c3_traces(k, want):
    tm = build_matrix(make_cycle(3))
    tr = trace_power(tm, k)
    assert tr == E(want, 0)
    assert eigen_trace(3, k) == pytest.approx(want, abs=1e-8)
    if k <= 4:
        assert brute_trace(tm, k) == tr


def test_c3_block_eigenvalues():
    lam = np.linalg.eigvals(build_matrix(make_cycle(3)).matrix.to_complex())
    assert np.allclose(lam.real, 0, atol=1e-12)
    assert sorted(np.round(lam.imag**2, 9)) == [0, 0, 3, 3, 3, 3]


@pytest.mark.parametrize("n, powers", [(3, range(1, 6)), (5, range(1, 4)), (7, range(1, 3))])
def test_trace_parity_law(n, powers):
    tm = cycle_matrix(n)
    for half in powers:
        even = trace_power(tm, 2 * half)
        assert even.is_real() and (-1) ** half * even.a > 0
        assert not trace_power(tm, 2 * half + 1)


def test_c5_trace_matches_closed_walks():
    tm = build_matrix(make_cycle(5))
    assert brute_trace(tm, 3) == trace_power(tm, 3) == E(0, 0)


@pytest.mark.parametrize("m, k", [(3, 3), (3, 4), (3, 5), (3, 6), (4, 3), (4, 4), (5, 4), (4, 5), (5, 5)])
def test_sigma_against_expansion(m, k):
    g = make_torus((m, k))
    coeff = polycoeff.coefficient_of(g, (2,) * g.n, max_edges=64)
    tr = trace_power(cycle_matrix(m), k)
    assert tr.is_real()
    assert coeff == sigma(m, k) * tr.a
    assert torus_coefficient(m, k) == E(coeff, 0)


def test_sigma_against_cube_root_formula():
    g = make_torus((3, 4))
    via_formula = polycoeff.coefficient_formula(g, (2,) * g.n, polycoeff.cube_root_sets(g.n))
    assert via_formula == torus_coefficient(3, 4) == E(-36, 0)


def test_parity_diagnostic_examples():
    rep = antihermitian_parity_diagnostic(U, (2, 0, 1))
    assert len(set(rep.white)) == 1 and rep.boundaries == 0 and rep.identity_holds
    rep = antihermitian_parity_diagnostic(U, (1, 2, 0))
    assert rep.white == (True, True, True) or rep.white == (False, False, False)
    assert rep.identity_holds
    with pytest.raises(ValueError):
        antihermitian_parity_diagnostic(U, U)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_parity_diagnostic_all_pairs(n):
    cols = enumerate_colorings(make_cycle(n))
    for u in cols:
        for v in cols:
            if all(a != b for a, b in zip(u, v)):
                rep = antihermitian_parity_diagnostic(u, v)
                assert rep.boundaries_even and rep.omega_count_even and rep.identity_holds


@pytest.mark.parametrize(
    "m, n, want, kind",
    [
        (3, 4, 3, "trace"),
        (4, 3, 3, "trace"),
        (3, 6, 3, "trace"),
        (5, 4, 3, "trace"),
        (4, 4, 3, "trace"),
        (3, 3, 4, "trace+capped-witness"),
        (3, 5, 4, "trace"),
        (5, 5, 4, "trace"),
        (11, 13, 4, "theorem-cited"),
        (12, 10, 3, "theorem-cited"),
    ],
)
def test_at_torus(m, n, want, kind):
    got, cert = at_torus(m, n)
    assert got == want and cert["kind"] == kind
    assert json.loads(json.dumps(cert)) == cert
    if kind != "theorem-cited":
        assert cert["conclusion"] == f"AT={want}"


def test_at_torus_witness(t33):
    _, cert = at_torus(3, 3)
    w = cert["witness"]
    assert max(w["exponents"]) == 3
    assert polycoeff.coefficient_of(t33, w["exponents"]) == w["coefficient"] != 0


def test_at_torus_rejects_small():
    with pytest.raises(ValueError):
        at_torus(2, 5)


def test_widening_keeps_exactness():
    tm = cycle_matrix(3)
    tr = trace_power(tm, 80)
    assert tr == E(2 * 2 * (-3) ** 40, 0)  # eigenvalues +-i sqrt(3), each twice

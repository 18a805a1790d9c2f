"""Acceptance criteria 1-8; each test records one PASS/FAIL line for the terminal summary."""

import functools
import math

import numpy as np

from closedchain.chain import (
    ChainSpec,
    angle_distance,
    closure_residual,
    endpoint,
    prefix_cross_terms,
    sum_squares,
)
from closedchain.cli import region_grid
from closedchain.oracle import root_discriminants, run_oracle_suite
from closedchain.sampler import (
    circular_config,
    close_config,
    closing_rotation,
    sample_angles,
)
from closedchain.semidiagonal import SemiDiagonalVector, cn_constant, cube_to_c
from closedchain.svg import region_svg

from conftest import CRITERIA, random_feasible_chain

PI = math.pi
TOL = 1e-9


def record(num, text, ok):
    CRITERIA.append((num, text, bool(ok)))
    assert ok, text


def scale_chains():
    rng = np.random.default_rng(2024)
    out = []
    for n in (4, 5, 6, 10, 50):
        out.append(ChainSpec([1.0] * n))
        out.extend(random_feasible_chain(rng, n) for _ in range(5))
    return out


@functools.lru_cache(maxsize=None)
def closure_runs():
    runs = []
    for i, chain in enumerate(scale_chains()):
        runs.append((chain, sample_angles(chain, 1000 + i, 10_000)))
    return runs


@functools.lru_cache(maxsize=None)
def flip_run():
    chain = random_feasible_chain(np.random.default_rng(6), 6)
    out = sample_angles(chain, 77, 100, "all")
    return chain, out.c[::16], out


def test_criterion_1_closure_at_scale():
    worst_circ = worst_closed = 0.0
    for chain, out in closure_runs():
        worst_circ = max(worst_circ, out.residual.max() / chain.total**2)
        closed = closing_rotation(chain, out.angles)
        worst_closed = max(worst_closed, closure_residual(chain, closed).max() / chain.total)
    ok = worst_circ <= TOL and worst_closed <= TOL
    record(1, f"30 chains x 1e4 samples, max circular {worst_circ:.2e}, "
              f"max closure {worst_closed:.2e} (relative, limit 1e-9)", ok)


def test_criterion_2_cube_map_unit5():
    chain = ChainSpec([1] * 5)
    s = np.random.default_rng(2).uniform(-1, 1, size=(1000, 2))
    c = cube_to_c(chain, s)
    c4 = s[:, 0] - 0.5
    c3 = s[:, 1] * np.sqrt(2 * s[:, 0] + 2) + s[:, 0] + 0.5
    err = max(np.abs(c[:, 1] - c4).max(), np.abs(c[:, 0] - c3).max())
    record(2, f"unit 5-chain (C_4, C_3) vs closed form on 1e3 points, max error {err:.2e} (limit 1e-12)",
           err <= 1e-12)


def test_criterion_3_flip_completeness():
    chain, c, out = flip_run()
    assert np.array_equal(out.c, np.repeat(c, 16, axis=0))
    worst = out.residual.max() / chain.total**2
    rows = out.angles.shape[0]
    # every C gets 16 distinct configurations
    per_c = out.angles.reshape(100, 16, 5)
    distinct = all(
        np.min(np.max(angle_distance(g[i], g[j]), axis=-1)) > 1e-9
        for g in per_c for i in range(16) for j in range(i + 1, 16)
    )
    ok = rows == 1600 and worst <= TOL and distinct
    record(3, f"n=6, 100 C x 16 orientations = {rows} circular configurations, "
              f"max residual {worst:.2e}, all distinct {distinct}", ok)


def test_criterion_4_oracle_equivalence():
    parts = []
    ok = True
    for chain, res in ((ChainSpec([1] * 4), 90), (ChainSpec([1] * 5), 24)):
        for label, tol in (("grid tol", None), ("tight tol", 0.02 * chain.total**2)):
            s = run_oracle_suite(chain, res, tol=tol, samples=500)
            bad = s.grid_inconsistent + s.grid_sdq_diag_disagree + s.sampled_inconsistent
            ok &= bad == 0 and s.grid_circular > 0 and s.consistent
            parts.append(f"n={chain.n} res {res} {label}: {s.grid_circular} circular, {bad} inconsistent")
    record(4, "; ".join(parts), ok)


def test_criterion_5_root_realness():
    worst = math.inf
    checked = 0
    for chain, out in closure_runs():
        d = root_discriminants(chain, out.c) / chain.total**2
        worst = min(worst, d.min())
        checked += out.c.shape[0]
    chain, c, _ = flip_run()
    d = root_discriminants(chain, c) / chain.total**2
    worst = min(worst, d.min())
    checked += c.shape[0]

    rng = np.random.default_rng(5)
    base_err = 0.0
    for _ in range(100):
        ch = random_feasible_chain(rng, int(rng.integers(4, 30)))
        base = 2 * cn_constant(ch) + sum_squares(ch, ch.n - 1)
        base_err = max(base_err, abs(base - ch.links[-1] ** 2) / ch.links[-1] ** 2)
    ok = worst >= -1e-12 and base_err <= 1e-12
    record(5, f"{checked} sampled C, min relative discriminant {worst:.3g} (limit -1e-12); "
              f"base identity max relative error {base_err:.1e} on 100 chains", ok)


def test_criterion_6_round_trip():
    worst = 0.0
    for chain, out in closure_runs():
        x = prefix_cross_terms(chain, out.angles)[:, 1 : chain.n - 2]
        worst = max(worst, np.abs(x - out.c).max(initial=0.0) / chain.total**2)
    chain, c, out = flip_run()
    x = prefix_cross_terms(chain, out.angles)[:, 1 : chain.n - 2]
    worst = max(worst, np.abs(x - out.c).max() / chain.total**2)
    record(6, f"recomputed cross terms vs input C, max relative error {worst:.2e} (limit 1e-9)",
           worst <= TOL)


def test_criterion_7_region_figure():
    chain = ChainSpec([1] * 5)
    c4, c3, inq = region_grid(chain, 101)
    lo_err = abs(c4.min() + 1.5)
    hi_err = abs(c4.max() - 0.5)
    cut = np.array_equal(inq, np.abs(c3) <= 1 + chain.tol_nonneg)
    svg = region_svg(c4, c3, inq, chain.links[0] * chain.links[1])
    lines = svg.count('class="q-bound"') == 2 and 'y1="1.000000"' in svg and 'y1="-1.000000"' in svg
    ok = lo_err <= 1e-12 and hi_err <= 1e-12 and cut and lines
    record(7, f"unit 5-chain C_4 extent [{c4.min():.15g}, {c4.max():.15g}], "
              f"in_q matches |C_3| <= 1: {cut}, cut lines drawn: {lines}", ok)


def test_criterion_8_worked_four_bar():
    chain = ChainSpec([1] * 4)
    circ = circular_config(chain, SemiDiagonalVector(chain, [0.0]), "00", 0.0)
    d_circ = float(np.max(angle_distance(circ.beta, [0, -PI / 2, -PI])))
    closed = close_config(chain, circ)
    d_closed = float(np.max(angle_distance(closed.alpha, [PI / 2, 0, -PI / 2])))
    # independent check by direct endpoint evaluation
    e1 = endpoint(chain, [0, -PI / 2, -PI])
    e2 = endpoint(chain, [PI / 2, 0, -PI / 2])
    geo = np.allclose(e1, [0, -1], atol=1e-15) and np.allclose(e2, [1, 0], atol=1e-15)
    ok = d_circ <= 1e-12 and d_closed <= 1e-12 and geo
    record(8, f"n=4 circular vector off by {d_circ:.1e}, closed vector off by {d_closed:.1e} "
              f"(limit 1e-12), endpoints (0,-1) and (1,0): {geo}", ok)

"""Acceptance gate: one recorded pass/fail line per criterion.

Long checks (the t=22 average and the 2pi/128 table) are marked ``slow`` and
run with ``pytest --runslow``.
"""

import math
import time

import numpy as np
import pytest

from altqw.canonical import (
    BISEPARABLE_NEGATIVITIES,
    apply_local_unitaries,
    ckw_report,
    haar_unitary,
    make_canonical,
)
from altqw.coins import named_coin
from altqw.entanglement import (
    negativity_full,
    negativity_half,
    negativity_set,
    pi_tangle,
    theta_average,
    theta_average_series,
)
from altqw.oracle import dense_evolve
from altqw.sweep import reproduce_table
from altqw.walk import CoinParams, EvolutionSequence, InitParams, evolve, trajectory

from oracles import brute_partial_transpose, dense_trace_norm, projector, random_pure

PI = math.pi


def within(value, expected, rel):
    return abs(value - expected) <= rel * abs(expected)


def test_criterion_1_canonical_exactness(criterion):
    start = time.perf_counter()
    ghz = pi_tangle(make_canonical("GHZ")).pi_xyc
    w = pi_tangle(make_canonical("W")).pi_xyc
    fw = pi_tangle(make_canonical("flippedW")).pi_xyc
    elapsed = time.perf_counter() - start
    ok = abs(ghz - 1) <= 1e-9 and abs(w - 0.54936354) <= 1e-6 and abs(fw - 0.54936354) <= 1e-6 and elapsed < 1
    assert criterion("1", ok, f"GHZ={ghz:.12f} W={w:.10f} flippedW={fw:.10f} in {elapsed:.3f}s")


def test_criterion_2_axiom_suite(criterion):
    start = time.perf_counter()
    worst_c1 = 0.0
    for name, expected in BISEPARABLE_NEGATIVITIES.items():
        ns = negativity_set(make_canonical(name))
        assert len(expected) == 9
        worst_c1 = max(worst_c1, max(abs(ns[k] - v) for k, v in expected.items()))
    rng = np.random.default_rng(0)
    worst_c3 = 0.0
    tangles = {}
    for name in ("GHZ", "W", "flippedW"):
        psi = make_canonical(name).amplitudes
        tangles[name] = pi_tangle(psi).pi_xyc
        if name == "flippedW":
            continue
        for _ in range(50):
            moved = apply_local_unitaries(psi, *(haar_unitary(2, rng) for _ in range(3)))
            worst_c3 = max(worst_c3, abs(pi_tangle(moved).pi_xyc - tangles[name]))
    c5 = tangles["GHZ"] > tangles["W"] and tangles["GHZ"] > tangles["flippedW"]
    elapsed = time.perf_counter() - start
    ok = worst_c1 <= 1e-9 and worst_c3 <= 1e-8 and c5 and elapsed < 10
    assert criterion("2", ok, f"C1 err={worst_c1:.1e} C3 err={worst_c3:.1e} C5={c5} in {elapsed:.2f}s")


def test_criterion_3_three_way_point_values(criterion):
    start = time.perf_counter()
    m1 = pi_tangle(evolve(InitParams(PI / 2, PI), named_coin("M1"), 15)).pi_xyc
    m2 = pi_tangle(evolve(InitParams(PI / 2, PI / 2), named_coin("M2"), 15)).pi_xyc
    elapsed = time.perf_counter() - start
    ok = within(m1, 69.0024, 0.005) and abs(m1 - m2) <= 1e-6 and elapsed < 60
    assert criterion("3", ok, f"pi_xyc M1={m1:.6f} M2={m2:.6f} (target 69.0024) in {elapsed:.1f}s")


def test_criterion_4_three_way_averages(criterion):
    series = dict(theta_average_series(["pi"], PI, named_coin("M1"), 10))
    t2, t10 = series[2]["pi"], series[10]["pi"]
    ok = within(t2, 2.0656, 0.01) and within(t10, 30.6639, 0.01)
    assert criterion("4", ok, f"pi_av M1 phi=pi: t=2 {t2:.6f} (2.0656), t=10 {t10:.6f} (30.6639)")


@pytest.mark.slow
def test_criterion_4_long_average(criterion):
    start = time.perf_counter()
    value = theta_average("pi", PI, named_coin("M1"), 22)
    elapsed = time.perf_counter() - start
    assert criterion("4 (t=22)", within(value, 132.5407, 0.01), f"pi_av M1 phi=pi t=22 {value:.4f} (132.5407) in {elapsed:.0f}s")


def test_criterion_5_two_way_point_values(criterion):
    start = time.perf_counter()
    g1_15 = negativity_half(evolve(InitParams(PI / 2, PI), named_coin("G1"), 15))
    g1_25 = negativity_half(evolve(InitParams(PI / 2, 0.0), named_coin("G1"), 25))
    h_25 = negativity_half(evolve(InitParams(PI / 2, PI / 2), named_coin("H"), 25))
    # t=1 averages for the four sequences compared in the long-time study
    t1 = [
        theta_average("N", phi, named_coin(coin), 1)
        for coin, phi in (("G1", 0.0), ("G2", PI / 2), ("H", PI / 2), ("G1", PI))
    ]
    t1.append(negativity_half(evolve(InitParams(PI / 2, 0.0), named_coin("G1"), 1)))
    elapsed = time.perf_counter() - start
    ok = (
        within(g1_15, 4.4429, 0.001)
        and within(g1_25, 7.4104, 0.001)
        and within(h_25, 6.9429, 0.001)
        and max(abs(v) for v in t1) <= 1e-9
        and elapsed < 120
    )
    detail = f"G1 t=15 {g1_15:.5f}, G1 t=25 {g1_25:.5f}, H t=25 {h_25:.5f}, max |N(t=1)| {max(map(abs, t1)):.1e}, {elapsed:.1f}s"
    assert criterion("5", ok, detail)


def test_criterion_6_two_way_averages(criterion):
    g1 = dict(theta_average_series(["N"], PI, named_coin("G1"), 10))
    g2 = dict(theta_average_series(["N"], PI / 2, named_coin("G2"), 10))
    t2, t10 = g1[2]["N"], g1[10]["N"]
    worst = max(abs(g1[t]["N"] - g2[t]["N"]) / max(abs(g1[t]["N"]), 1e-9) for t in range(1, 11))
    ok = within(t2, 0.4290, 0.01) and within(t10, 2.7089, 0.01) and worst <= 0.01
    assert criterion("6", ok, f"N_av G1 t=2 {t2:.6f}, t=10 {t10:.6f}; G2 vs G1 max rel diff {worst:.1e}")


def _table(criterion, which, budget):
    start = time.perf_counter()
    report, _ = reproduce_table(which)
    elapsed = time.perf_counter() - start
    print(report.to_text())
    failed = [f"{r[0]} {r[1]}" for r in report.failures()]
    ok = report.ok and (budget is None or elapsed < budget)
    detail = f"table{which}: {len(report.rows) - len(failed)}/{len(report.rows)} checks pass in {elapsed:.0f}s"
    if failed:
        detail += "; failing: " + "; ".join(failed)
    assert criterion(f"7 (table{which})", ok, detail)


def test_criterion_7_table1(criterion):
    _table(criterion, 1, budget=300)


@pytest.mark.slow
def test_criterion_7_table2(criterion):
    _table(criterion, 2, budget=None)


def test_criterion_8_property_suites(criterion):
    rng = np.random.default_rng(8)
    worst_norm, steps = 0.0, 0
    while steps < 1000:
        coin = CoinParams(*rng.uniform(0, 2 * PI, 3))
        ip = InitParams(rng.uniform(0, PI), rng.uniform(0, 2 * PI))
        for s in trajectory(ip, coin, 10):
            if s.t:
                steps += 1
                worst_norm = max(worst_norm, abs(s.norm_sq() - 1))

    ckw = ckw_report(samples=100, t_max=4, seed=7, averages=False)

    worst_schmidt = 0.0
    for _ in range(20):
        psi = random_pure(rng, (int(rng.integers(2, 6)), int(rng.integers(2, 6)), 2))
        dense = projector(psi)
        for axis, label in enumerate("xyc"):
            ref = dense_trace_norm(brute_partial_transpose(dense, psi.shape, axis)) - 1
            worst_schmidt = max(worst_schmidt, abs(negativity_full(psi, label) - ref))

    worst_walk = 0.0
    for _ in range(20):
        T = int(rng.integers(0, 5))
        coins = [CoinParams(*rng.uniform(0, 2 * PI, 3)) for _ in range(T)]
        ip = InitParams(rng.uniform(0, PI), rng.uniform(0, 2 * PI))
        got = evolve(ip, EvolutionSequence(coins), T).window()
        worst_walk = max(worst_walk, float(np.abs(got - dense_evolve(ip, coins, T)).max()))

    ok = worst_norm <= 1e-12 and ckw.ok and worst_schmidt <= 1e-8 and worst_walk <= 1e-10
    detail = (
        f"norm err {worst_norm:.1e} over {steps} steps; CKW {'ok' if ckw.ok else 'violated'}; "
        f"Schmidt vs dense {worst_schmidt:.1e}; walk vs dense {worst_walk:.1e}"
    )
    assert criterion("8", ok, detail)


def test_criterion_9_gamma_degeneracy(criterion):
    gammas = 2 * PI * np.arange(16) / 16
    vals = [theta_average("N", PI / 2, CoinParams(19 * PI / 16, PI, g), 2) for g in gammas]
    spread = max(vals) - min(vals)
    assert criterion("9", spread < 1e-8, f"N_av spread over 16 gamma samples {spread:.1e} (value {vals[0]:.6f})")

"""Acceptance criteria, one test each.

Every criterion prints a single ``[PASS]``/``[FAIL]`` line with its timing;
under pytest the lines are repeated in the terminal summary.  Run the file
directly (``python tests/test_acceptance.py``) for the lines alone.
"""

import math
import time

import numpy as np
import pytest

from lcmgamma.family import FamilyParams, h_special, log_f_derivative
from lcmgamma.inequalities import CASE_IDS, misc_survey_bounds, sweep
from lcmgamma.oracle import oracle_all_orders
from lcmgamma.special import digamma, ln_gamma, polygamma
from lcmgamma.verifier import check_lcm, derivative_scale, integrand_quadrature, scan_region

RESULTS: list[str] = []


def report(num, title, ok, elapsed, limit, detail):
    ok = bool(ok) and elapsed < limit
    line = f"[{'PASS' if ok else 'FAIL'}] {num}. {title}: {detail} ({elapsed:.2f}s, limit {limit:g}s)"
    RESULTS.append(line)
    print(line)
    return ok


def crit_h_maximum():
    t0 = time.perf_counter()
    h1 = h_special(1.0)
    grid = np.geomspace(1e-4, 1e4, 10_000)
    vals = h_special(grid)
    i = int(np.argmax(vals))
    # x = 1 is the geometric midpoint of two gridpoints; both count as nearest
    dist = np.abs(np.log(grid))
    nearest = np.flatnonzero(np.isclose(dist, dist.min(), rtol=1e-9, atol=0))
    elapsed = time.perf_counter() - t0
    rel = abs(h1 - math.e) / math.e
    ok = rel <= 1e-12 and i in nearest
    detail = f"|h(1)-e|/e = {rel:.1e}, argmax index {i} at x = {grid[i]:.6f}, nearest {[int(k) for k in nearest]}"
    return report(1, "h maximum e at x = 1", ok, elapsed, 1.0, detail)


def crit_h_limits():
    t0 = time.perf_counter()
    lo = h_special(1e-6)
    hi = h_special(1e5)
    elapsed = time.perf_counter() - t0
    d = abs(hi - math.sqrt(2 * math.pi))
    ok = abs(lo - 1) <= 1e-3 and d <= 1e-3
    return report(2, "h limits", ok, elapsed, 0.1, f"h(1e-6) = {lo:.6f}, |h(1e5) - sqrt(2pi)| = {d:.1e}")


def crit_region():
    t0 = time.perf_counter()
    scan = scan_region((0.0, 1.5), (0.0, 1.5), 31, sign=-1, empirical="all")
    mismatches = []
    for c in scan.cells:
        if c.theorem == "undecided":
            continue
        if (c.theorem == "lcm") != (c.verdict != "fail"):
            mismatches.append((c.alpha, c.beta))
    alphas = scan.alphas
    step = alphas[1] - alphas[0]
    off = []
    for j, beta in enumerate(scan.betas):
        if beta < 0.5:
            continue
        row = [scan.cell(i, j) for i in range(31)]
        passing = [c.alpha for c in row if c.verdict != "fail"]
        edge = min(passing) if passing else math.inf
        if abs(edge - beta) > step * (1 + 1e-9):
            off.append((beta, edge))
    elapsed = time.perf_counter() - t0
    ok = not mismatches and not off
    detail = f"{len(mismatches)} theorem/grid mismatches, {len(off)} rows with boundary off the diagonal"
    return report(3, "region boundary 31x31", ok, elapsed, 60.0, detail)


def crit_necessity():
    oks, parts, worst = [], [], 0.0
    for a, b, s in ((0.9, 0, -1), (0.6, 0.7, -1), (0.6, 1, 1)):
        t0 = time.perf_counter()
        r = check_lcm(FamilyParams(a, b, s))
        elapsed = time.perf_counter() - t0
        worst = max(worst, elapsed)
        v = r.violations[0] if r.violations else None
        real = v is not None and (-1) ** v.order * log_f_derivative(FamilyParams(a, b, s), v.order, v.x) < 0
        oks.append(r.verdict == "fail" and real and elapsed < 5.0)
        parts.append(f"({a},{b},{s:+d}) -> {r.verdict}" + (f" at n={v.order}, x={v.x:.4g}" if v else ""))
    return report(4, "necessity counterexamples", all(oks), worst, 5.0, "; ".join(parts))


def crit_sweeps():
    t0 = time.perf_counter()
    bad = []
    floor = math.inf
    for case in CASE_IDS:
        res = sweep(case, 100_000, seed=20240601)
        m = res.min_normalized()
        floor = min(floor, m)
        if res.regime != "sufficient" or m < -1e-10:
            bad.append((case, m))
    elapsed = time.perf_counter() - t0
    detail = f"{len(CASE_IDS) - len(bad)}/{len(CASE_IDS)} cases hold, smallest slack/scale {floor:.2e}"
    if bad:
        detail += f", failing {bad}"
    return report(5, "inequality sweeps 15 x 1e5", not bad, elapsed, 30.0, detail)


def crit_gurland():
    t0 = time.perf_counter()
    mid = math.exp(ln_gamma(1.0) + ln_gamma(2.0) - 2 * ln_gamma(1.5))
    slack = misc_survey_bounds("chen_gurland", x=1.0, y=2.0)
    elapsed = time.perf_counter() - t0
    ok = abs(mid - 4 / math.pi) <= 1e-10 and slack >= 0
    detail = f"middle {mid:.12f} vs 4/pi off by {abs(mid - 4 / math.pi):.1e}, bracket slack {slack:.4f}"
    return report(6, "Gurland desk check", ok, elapsed, 1.0, detail)


def crit_oracle():
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    xs = np.exp(rng.uniform(math.log(1e-3), math.log(1e6), 10_000))
    prod = {"ln_gamma": ln_gamma(xs), 0: digamma(xs)}
    for k in range(1, 7):
        prod[k] = polygamma(k, xs)
    worst = {key: 0.0 for key in prod}
    for i, x in enumerate(xs):
        ref = oracle_all_orders(float(x), 6)
        for key, vals in prod.items():
            r = float(abs((vals[i] - ref[key]) / ref[key]))
            worst[key] = max(worst[key], r)
    elapsed = time.perf_counter() - t0
    top = max(worst.values())
    detail = f"max relative error {top:.1e} (lnΓ {worst['ln_gamma']:.1e}, ψ {worst[0]:.1e})"
    return report(7, "oracle equivalence 1e4 points", top <= 1e-12, elapsed, 30.0, detail)


def crit_quadrature():
    t0 = time.perf_counter()
    worst = 0.0
    for a, b in ((1, 1), (0.7, 0.5)):
        p = FamilyParams(a, b, -1)
        for n in (2, 3):
            for x in (0.5, 2, 10):
                worst = max(worst, abs(integrand_quadrature(p, n, x) - (-1) ** n * log_f_derivative(p, n, x)))
    elapsed = time.perf_counter() - t0
    return report(8, "quadrature identity", worst <= 1e-8, elapsed, 5.0, f"max abs difference {worst:.1e}")


def crit_shift():
    t0 = time.perf_counter()
    rng = np.random.default_rng(11)
    # 40 (α, sign) members × 25 log-uniform x values = 1000 points
    worst = 0.0
    for a in rng.uniform(-2, 2, 20):
        for s in (-1, 1):
            xs = np.exp(rng.uniform(math.log(1e-3), math.log(1e4), 25))
            p0, p1 = FamilyParams(float(a), 0.0, s), FamilyParams(float(a), 1.0, s)
            for n in range(1, 7):
                d = np.abs(log_f_derivative(p0, n, xs) - log_f_derivative(p1, n, xs))
                worst = max(worst, float(np.max(d / derivative_scale(p1, n, xs))))
    elapsed = time.perf_counter() - t0
    return report(9, "shift identity", worst <= 1e-11, elapsed, 5.0, f"max |difference|/scale {worst:.1e}")


CRITERIA = [
    crit_h_maximum,
    crit_h_limits,
    crit_region,
    crit_necessity,
    crit_sweeps,
    crit_gurland,
    crit_oracle,
    crit_quadrature,
    crit_shift,
]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"{i}_{c.__name__[5:]}" for i, c in enumerate(CRITERIA, 1)])
def test_acceptance(criterion):
    assert criterion(), RESULTS[-1]


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    raise SystemExit(0 if all(results) else 1)

import json
import math

import numpy as np
import pytest

from lcmgamma.family import FamilyParams, log_f_derivative
from lcmgamma.special import DomainError
from lcmgamma.verifier import (
    LcmCheckConfig,
    LcmReport,
    RegionScan,
    check_lcm,
    classify_by_theorems,
    derivative_scale,
    integrand,
    integrand_limit,
    integrand_quadrature,
    integrand_test,
    scan_region,
    theorem_tag,
)

FAST = LcmCheckConfig(n_points=120)


def test_config_validation():
    with pytest.raises(ValueError):
        LcmCheckConfig(max_order=0)
    with pytest.raises(ValueError):
        LcmCheckConfig(max_order=14)
    with pytest.raises(ValueError):
        LcmCheckConfig(x_min=0)
    with pytest.raises(ValueError):
        LcmCheckConfig(x_min=2, x_max=1)
    grid = LcmCheckConfig().x_grid
    assert grid.size == 400 and np.all(np.diff(grid) > 0)


@pytest.mark.parametrize(
    "a,b,s,expect",
    [
        (0.7, 0.6, -1, "lcm"),
        (0.6, 0.7, -1, "not_lcm"),
        (0.8, 0.3, -1, "undecided"),
        (1.0, 0.0, -1, "lcm"),
        (0.9, 0.0, -1, "not_lcm"),
        (2.0, 1.0, -1, "lcm"),
        (0.4, 0.2, -1, "not_lcm"),
        (0.5, 0.0, 1, "lcm"),
        (0.5, 1.0, 1, "lcm"),
        (0.6, 1.0, 1, "not_lcm"),
        (-0.1, 0.3, 1, "lcm"),
        (0.2, 0.3, 1, "undecided"),
    ],
)
def test_classify(a, b, s, expect):
    assert classify_by_theorems(FamilyParams(a, b, s)) == expect


def test_theorem_tags():
    assert theorem_tag(FamilyParams(1, 0, -1)) == "thm2_sufficient"
    assert theorem_tag(FamilyParams(0.6, 0.7, -1)) == "thm1_necessity_violated"
    assert theorem_tag(FamilyParams(0.8, 0.3, -1)) == "empirical"
    assert theorem_tag(FamilyParams(0.5, 1, 1)) == "cited_sufficient"


def test_check_examples():
    r = check_lcm(FamilyParams(1, 0, -1))
    assert r.verdict == "pass" and r.theorem_tag == "thm2_sufficient"
    r = check_lcm(FamilyParams(0.9, 0, -1))
    assert r.verdict == "fail"
    v = r.violations[0]
    assert v.order >= 1 and v.x > 0
    # the reported point really violates the sign condition
    assert (-1) ** v.order * log_f_derivative(FamilyParams(0.9, 0, -1), v.order, v.x) < 0
    assert check_lcm(FamilyParams(0.5, 0, 1)).passed


def test_refined_violation_is_no_worse():
    r = check_lcm(FamilyParams(0.6, 0.7, -1))
    kinds = {v.kind for v in r.violations}
    assert {"first", "worst"} <= kinds
    worst = min(v.rel for v in r.violations if v.kind == "worst")
    refined = [v for v in r.violations if v.kind == "refined"]
    if refined:
        assert refined[0].rel <= worst


def test_verdict_matches_violations():
    rng = np.random.default_rng(5)
    for _ in range(30):
        p = FamilyParams(rng.uniform(-1, 2), rng.uniform(0, 2), int(rng.choice([-1, 1])))
        r = check_lcm(p, FAST)
        failing = any(v.rel < -FAST.zero_tol for v in r.violations)
        assert (r.verdict == "fail") == failing
        assert len(r.worst) == FAST.max_order


def _sample_region(rng, which, n):
    out = []
    while len(out) < n:
        a, b = rng.uniform(-1, 3), rng.choice([0.0, rng.uniform(0, 3)])
        p = FamilyParams(float(a), float(b), -1)
        if classify_by_theorems(p) == which:
            out.append(p)
    return out


def test_theorems_consistent_with_grid():
    rng = np.random.default_rng(2024)
    for p in _sample_region(rng, "lcm", 50):
        assert check_lcm(p, FAST).passed, p
    for p in _sample_region(rng, "not_lcm", 50):
        r = check_lcm(p, FAST)
        assert r.verdict == "fail", p
        assert r.violations and all(v.x > 0 for v in r.violations)


def test_monotone_nesting():
    rng = np.random.default_rng(8)
    for _ in range(40):
        p = FamilyParams(rng.uniform(0, 2), rng.uniform(0, 2), -1)
        if check_lcm(p, LcmCheckConfig(max_order=8, n_points=120)).verdict == "pass":
            assert check_lcm(p, LcmCheckConfig(max_order=4, n_points=120)).verdict == "pass"


def test_report_round_trip():
    r = check_lcm(FamilyParams(0.9, 0, -1), FAST)
    d = json.loads(json.dumps(r.to_dict()))
    assert LcmReport.from_dict(d).to_dict() == r.to_dict()


def test_derivative_scale_positive():
    p = FamilyParams(0.3, 0.4, 1)
    for n in range(1, 9):
        assert np.all(derivative_scale(p, n, np.geomspace(1e-3, 1e4, 50)) > 0)


# -- integrand -----------------------------------------------------------------


def test_integrand_values():
    assert integrand(FamilyParams(1, 0.5, -1), 1.0) == pytest.approx(0.5 - (math.exp(0.5) / (math.e - 1) - 1), rel=1e-14)
    assert integrand(FamilyParams(1, 0.5, -1), 1.0) == pytest.approx(0.54048, abs=1e-5)
    # the removable value at t = 0 is α - 1/2
    for a, b in ((0.5, 0.5), (1.0, 0.2), (0.3, 1.7)):
        p = FamilyParams(a, b, -1)
        assert integrand(p, 0.0) == a - 0.5
        assert integrand(p, 1e-9) == pytest.approx(a - 0.5, abs=1e-8)
    assert integrand(FamilyParams(1, 0.5, 1), 1.0) == -integrand(FamilyParams(1, 0.5, -1), 1.0)


def test_integrand_sign_examples():
    assert integrand_test(FamilyParams(0.5, 0.5, -1)).nonnegative
    res = integrand_test(FamilyParams(0.5, 0, -1), np.geomspace(0.01, 50, 500))
    assert not res.nonnegative and res.t > 1
    with pytest.raises(DomainError):
        integrand_test(FamilyParams(1, 1), [0.0, 1.0])
    with pytest.raises(DomainError):
        integrand(FamilyParams(1, 1), -1.0)


def test_integrand_tail_beyond_grid():
    # β - α = 0.003: the integrand turns negative only past t ≈ 330
    p = FamilyParams(1.317, 1.320, -1)
    assert np.all(integrand(p, np.geomspace(1e-4, 200, 2000)) >= 0)
    assert integrand(p, 2000.0) < 0
    res = integrand_test(p)
    assert not res.nonnegative and res.t == math.inf
    assert res.value == pytest.approx(-0.003, abs=1e-12)
    assert check_lcm(p, FAST).verdict == "fail"


def test_integrand_limit_matches_large_t():
    for a, b, s in ((1.0, 0.0, -1), (0.7, 0.5, -1), (0.2, 1.4, 1), (0.9, 0.3, -1)):
        p = FamilyParams(a, b, s)
        assert integrand(p, 1e9) == pytest.approx(integrand_limit(p), abs=1e-7)


def test_bracket_minorant():
    # t/(e^t - 1) < e^{-t/2} on the certificate grid
    t = np.geomspace(1e-4, 200, 2000)
    assert np.all(t / np.expm1(t) - np.exp(-t / 2) < 0)


def test_integrand_large_t_no_overflow():
    vals = integrand(FamilyParams(1.0, 0.0, -1), np.array([100.0, 700.0, 1e4]))
    assert np.all(np.isfinite(vals))


@pytest.mark.parametrize("a,b", [(1, 1), (0.7, 0.5)])
@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("x", [0.5, 2, 10])
def test_quadrature_identity(a, b, n, x):
    p = FamilyParams(a, b, -1)
    got = integrand_quadrature(p, n, x)
    assert abs(got - (-1) ** n * log_f_derivative(p, n, x)) <= 1e-8


def test_certificate_soundness():
    rng = np.random.default_rng(17)
    certified = 0
    for _ in range(60):
        p = FamilyParams(rng.uniform(0, 2), rng.uniform(0, 2), -1)
        if not integrand_test(p).nonnegative:
            continue
        xs = FAST.x_grid
        first = -log_f_derivative(p, 1, xs)
        if np.all(first >= -FAST.zero_tol * derivative_scale(p, 1, xs)):
            certified += 1
            assert check_lcm(p, FAST).passed, p
    assert certified > 5


# -- region scan ---------------------------------------------------------------


def test_scan_small_and_round_trip():
    scan = scan_region((0, 1.5), (0, 1.5), 2, cfg=FAST)
    assert scan.complete and len(scan.cells) == 4
    assert RegionScan.from_dict(json.loads(json.dumps(scan.to_dict()))).to_dict() == scan.to_dict()
    assert scan.code_matrix() == [["F:T1", "P:T2"], ["F:T1", "P:T2"]]


def test_scan_cells_carry_one_classification():
    scan = scan_region((0, 1.5), (0, 1.5), 7, cfg=FAST)
    for c in scan.cells:
        assert c.code in "PFU" and c.provenance in ("T1", "T2", "C", "E")
        if c.theorem == "undecided":
            assert c.tag == "empirical" and c.verdict is not None


def test_scan_lcm_cell():
    scan = scan_region((2, 2), (1, 1), 2, cfg=FAST)
    assert all(c.theorem == "lcm" for c in scan.cells)


def test_scan_resume_matches_fresh():
    fresh = scan_region((0, 1.5), (0, 1.5), 6, cfg=FAST)
    partial = []

    class Stop(Exception):
        pass

    def hook(cell):
        partial.append(cell)
        if len(partial) == 13:
            raise Stop

    with pytest.raises(Stop):
        scan_region((0, 1.5), (0, 1.5), 6, cfg=FAST, on_cell=hook)
    done = {(c.i, c.j): c for c in partial}
    resumed = scan_region((0, 1.5), (0, 1.5), 6, cfg=FAST, done=done)
    assert resumed.to_dict() == fresh.to_dict()


def test_scan_validation():
    with pytest.raises(ValueError):
        scan_region((0, 1), (0, 1), 1)
    with pytest.raises(ValueError):
        scan_region((0, 1), (-1, 1), 3)
    with pytest.raises(ValueError):
        scan_region((0, 1), (0, 1), 3, empirical="some")


def test_open_strip_counterexample():
    # undecided by the theorems, but the first derivative changes sign
    p = FamilyParams(0.5, 0.05, -1)
    assert classify_by_theorems(p) == "undecided"
    r = check_lcm(p)
    assert r.verdict == "fail"
    v = r.violations[0]
    assert v.order == 1
    assert -log_f_derivative(p, 1, v.x) < 0

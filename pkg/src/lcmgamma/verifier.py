"""Numerical checks of logarithmic complete monotonicity for f_{α,β,±1}.

A function f is logarithmically completely monotonic (LCM) on (0, ∞) when
(-1)^n [ln f]^(n)(x) >= 0 for every n >= 1.  :func:`check_lcm` tests this
for n = 1..max_order over a finite x grid, :func:`classify_by_theorems`
applies the known necessary and sufficient conditions, and
:func:`scan_region` combines both over a rectangle of (α, β).

A grid ``fail`` is a counterexample up to evaluation error; a grid ``pass``
is evidence only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize

from .family import MAX_DERIVATIVE_ORDER, FamilyParams, log_f_derivative
from .special import DEFAULT_PRECISION, DomainError, EvalPrecision, polygamma, digamma

__all__ = [
    "LcmCheckConfig",
    "LcmReport",
    "Violation",
    "OrderWorst",
    "IntegrandResult",
    "RegionCell",
    "RegionScan",
    "check_lcm",
    "classify_by_theorems",
    "theorem_tag",
    "integrand",
    "integrand_limit",
    "integrand_test",
    "integrand_quadrature",
    "derivative_scale",
    "scan_region",
]

LCM, NOT_LCM, UNDECIDED = "lcm", "not_lcm", "undecided"

TAG_THM1 = "thm1_necessity_violated"
TAG_THM2 = "thm2_sufficient"
TAG_CITED_SUFF = "cited_sufficient"
TAG_CITED_NEC = "cited_necessity_violated"
TAG_EMPIRICAL = "empirical"


@dataclass(frozen=True)
class LcmCheckConfig:
    max_order: int = 8
    x_min: float = 1e-3
    x_max: float = 1e4
    n_points: int = 400
    zero_tol: float = 1e-10
    refine: bool = True
    prec: EvalPrecision = DEFAULT_PRECISION

    def __post_init__(self):
        if not 1 <= self.max_order:
            raise ValueError("max_order must be >= 1")
        if self.max_order > MAX_DERIVATIVE_ORDER:
            raise ValueError(
                f"max_order {self.max_order} needs polygamma order {self.max_order - 1}, "
                f"beyond supported {MAX_DERIVATIVE_ORDER - 1}"
            )
        if not 0 < self.x_min < self.x_max:
            raise ValueError("need 0 < x_min < x_max")
        if self.n_points < 2:
            raise ValueError("grid needs at least 2 points")
        if not self.zero_tol >= 0:
            raise ValueError("zero_tol must be >= 0")

    @property
    def x_grid(self) -> np.ndarray:
        return np.geomspace(self.x_min, self.x_max, self.n_points)

    def to_dict(self):
        return {
            "max_order": self.max_order,
            "x_min": self.x_min,
            "x_max": self.x_max,
            "n_points": self.n_points,
            "zero_tol": self.zero_tol,
            "refine": self.refine,
            "target_rel_err": self.prec.target_rel_err,
        }


@dataclass(frozen=True)
class Violation:
    order: int
    x: float
    value: float
    rel: float
    kind: str  # "first", "worst" or "refined"

    def to_dict(self):
        return {"order": self.order, "x": self.x, "value": self.value, "rel": self.rel, "kind": self.kind}


@dataclass(frozen=True)
class OrderWorst:
    order: int
    x: float
    value: float
    rel: float

    def to_dict(self):
        return {"order": self.order, "x": self.x, "value": self.value, "rel": self.rel}


@dataclass
class LcmReport:
    params: FamilyParams
    verdict: str  # "pass", "fail" or "boundary"
    worst: list[OrderWorst]
    violations: list[Violation]
    theorem_tag: str
    classification: str

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    def to_dict(self):
        return {
            "kind": "lcm_report",
            "params": self.params.to_dict(),
            "verdict": self.verdict,
            "theorem_tag": self.theorem_tag,
            "classification": self.classification,
            "worst": [w.to_dict() for w in self.worst],
            "violations": [v.to_dict() for v in self.violations],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            params=FamilyParams(**d["params"]),
            verdict=d["verdict"],
            worst=[OrderWorst(**w) for w in d["worst"]],
            violations=[Violation(**v) for v in d["violations"]],
            theorem_tag=d["theorem_tag"],
            classification=d["classification"],
        )


def classify_by_theorems(params: FamilyParams) -> str:
    """``lcm``, ``not_lcm`` or ``undecided`` from the known conditions.

    f_{α,0,s} and f_{α,1,s} coincide, so β = 0 is decided as β = 1.
    """
    a, b = params.alpha, params.beta
    if params.sign == -1:
        if b == 0:
            return LCM if a >= 1 else NOT_LCM
        if a < max(b, 0.5):
            return NOT_LCM
        if b >= 0.5:
            return LCM
        return UNDECIDED
    if b == 0:
        b = 1.0
    if (b > 0 and a <= 0) or (b >= 1 and a <= 0.5):
        return LCM
    if a > min(b, 0.5):
        return NOT_LCM
    return UNDECIDED


def theorem_tag(params: FamilyParams) -> str:
    cls = classify_by_theorems(params)
    if cls == UNDECIDED:
        return TAG_EMPIRICAL
    if params.sign == -1:
        return TAG_THM2 if cls == LCM else TAG_THM1
    return TAG_CITED_SUFF if cls == LCM else TAG_CITED_NEC


def derivative_scale(params: FamilyParams, n: int, x, prec: EvalPrecision = DEFAULT_PRECISION):
    """Magnitude of the terms entering (-1)^n [ln f]^(n)(x)."""
    x = np.asarray(x, dtype=float)
    b = params.beta
    psi = digamma(x + b, prec) if n == 1 else polygamma(n - 1, x + b, prec)
    return np.abs(psi) + math.factorial(n - 1) * (1 + abs(b - params.alpha)) / x**n


def _signed(params, n, x, prec):
    return (-1) ** n * log_f_derivative(params, n, x, prec)


def _refine(params, n, xs, i, prec):
    """Local minimum of the relative signed value around grid index i."""
    lo = math.log(xs[max(i - 1, 0)])
    hi = math.log(xs[min(i + 1, len(xs) - 1)])

    def obj(u):
        x = math.exp(u)
        return float(_signed(params, n, x, prec) / derivative_scale(params, n, x, prec))

    res = optimize.minimize_scalar(obj, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
    x = math.exp(res.x)
    val = float(_signed(params, n, x, prec))
    return x, val, float(res.fun)


def check_lcm(params: FamilyParams, cfg: LcmCheckConfig = LcmCheckConfig()) -> LcmReport:
    """Evaluate (-1)^n [ln f]^(n) on the grid for n = 1..max_order."""
    xs = cfg.x_grid
    worst: list[OrderWorst] = []
    violations: list[Violation] = []
    overall = (math.inf, None)
    for n in range(1, cfg.max_order + 1):
        vals = _signed(params, n, xs, cfg.prec)
        rel = vals / derivative_scale(params, n, xs, cfg.prec)
        i = int(np.argmin(rel))
        worst.append(OrderWorst(n, float(xs[i]), float(vals[i]), float(rel[i])))
        bad = np.flatnonzero(rel < -cfg.zero_tol)
        if bad.size:
            j = int(bad[0])
            violations.append(Violation(n, float(xs[j]), float(vals[j]), float(rel[j]), "first"))
            violations.append(Violation(n, float(xs[i]), float(vals[i]), float(rel[i]), "worst"))
            if rel[i] < overall[0]:
                overall = (float(rel[i]), (n, i))
    if overall[1] is not None and cfg.refine:
        n, i = overall[1]
        x, val, r = _refine(params, n, xs, i, cfg.prec)
        if r < overall[0]:
            violations.append(Violation(n, x, val, r, "refined"))
    if violations:
        verdict = "fail"
    elif min(w.rel for w in worst) < 0:
        verdict = "boundary"
    else:
        verdict = "pass"
    return LcmReport(
        params=params,
        verdict=verdict,
        worst=worst,
        violations=violations,
        theorem_tag=theorem_tag(params),
        classification=classify_by_theorems(params),
    )


# -- integrand certificate -------------------------------------------------


def _log_sinhc(u):
    """ln(sinh(u)/u) for u >= 0 without overflow or cancellation."""
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    small = u < 0.25
    us = u[small]
    w = us * us
    # ln(sinh u / u) = u²/6 - u⁴/180 + u⁶/2835 - u⁸/37800 + u¹⁰/467775
    out[small] = w * (1 / 6 + w * (-1 / 180 + w * (1 / 2835 + w * (-1 / 37800 + w / 467775))))
    mid = (~small) & (u < 20)
    out[mid] = np.log(np.sinh(u[mid]) / u[mid])
    big = u >= 20
    ub = u[big]
    out[big] = ub + np.log1p(-np.exp(-2 * ub)) - math.log(2) - np.log(ub)
    return out


def integrand(params: FamilyParams, t):
    """Laplace-representation integrand of (-1)^n [ln f]^(n), n >= 2.

    For s = -1 this is α - β - (1/t)(e^{(1-β)t}·t/(e^t - 1) - 1), with the
    removable value α - 1/2 at t = 0; for s = +1 the negative of it.
    """
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise DomainError("integrand requires 0 <= t < inf")
    a, b = params.alpha, params.beta
    out = np.empty_like(arr)
    zero = arr == 0
    out[zero] = a - 0.5
    tp = arr[~zero]
    # e^{(1-β)t}·t/(e^t - 1) = exp((1/2 - β)t - ln(sinh(t/2)/(t/2)))
    s = (0.5 - b) * tp - _log_sinhc(tp / 2)
    out[~zero] = a - b - np.expm1(s) / tp
    out = -params.sign * out
    return float(out) if np.ndim(t) == 0 else out


@dataclass(frozen=True)
class IntegrandResult:
    nonnegative: bool
    t: float | None = None
    value: float | None = None

    def to_dict(self):
        return {"nonnegative": self.nonnegative, "t": self.t, "value": self.value}


def integrand_test(params: FamilyParams, t_grid=None) -> IntegrandResult:
    """Sign of :func:`integrand` on ``t_grid`` plus its t → 0⁺ limit.

    Nonnegativity certifies (-1)^n [ln f]^(n) >= 0 for all n >= 2 at once.
    The limit t → ∞ is checked too; a violation there is reported at t = inf.
    """
    if t_grid is None:
        t_grid = np.geomspace(1e-4, 200, 2000)
    t = np.asarray(t_grid, dtype=float)
    if np.any(t <= 0):
        raise DomainError("t_grid must be strictly positive")
    t = np.concatenate([[0.0], t])
    vals = integrand(params, t)
    bad = np.flatnonzero(vals < 0)
    if bad.size:
        i = int(bad[np.argmin(vals[bad])])
        return IntegrandResult(False, float(t[i]), float(vals[i]))
    # a finite grid cannot see a sign change beyond its last point, which for
    # β > 1/2 happens near t = 1/(β - α); the limit at infinity closes that gap
    tail = integrand_limit(params)
    if tail < 0:
        return IntegrandResult(False, math.inf, tail)
    return IntegrandResult(True)


def integrand_limit(params: FamilyParams) -> float:
    """Limit of :func:`integrand` as t → ∞: α - β for β > 0, α - 1 for β = 0."""
    a, b = params.alpha, params.beta
    lim = a - b if b > 0 else a - 1.0
    return -params.sign * lim


def integrand_quadrature(params: FamilyParams, n: int, x: float) -> float:
    """∫_0^∞ integrand(t)·t^(n-1)·e^(-xt) dt by adaptive quadrature."""
    if n < 2:
        raise ValueError("the integral representation holds for n >= 2")
    if not x > 0:
        raise DomainError("x must be positive")
    f = lambda t: integrand(params, t) * t ** (n - 1) * math.exp(-x * t)
    # split at the peak of t^(n-1) e^(-xt)
    peak = (n - 1) / x
    a, _ = integrate.quad(f, 0, peak, epsabs=1e-14, epsrel=1e-13, limit=200)
    b, _ = integrate.quad(f, peak, math.inf, epsabs=1e-14, epsrel=1e-13, limit=200)
    return a + b


# -- region scan -----------------------------------------------------------


@dataclass
class RegionCell:
    i: int  # alpha index
    j: int  # beta index
    alpha: float
    beta: float
    theorem: str
    tag: str
    verdict: str | None  # empirical check_lcm verdict, if run

    @property
    def code(self) -> str:
        if self.theorem == LCM:
            return "P"
        if self.theorem == NOT_LCM:
            return "F"
        if self.verdict is None:
            return "U"
        return "F" if self.verdict == "fail" else "P"

    @property
    def provenance(self) -> str:
        return {
            TAG_THM1: "T1",
            TAG_THM2: "T2",
            TAG_CITED_SUFF: "C",
            TAG_CITED_NEC: "C",
        }.get(self.tag, "E")

    def to_dict(self):
        return {
            "i": self.i,
            "j": self.j,
            "alpha": self.alpha,
            "beta": self.beta,
            "theorem": self.theorem,
            "tag": self.tag,
            "verdict": self.verdict,
            "code": self.code,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["i"], d["j"], d["alpha"], d["beta"], d["theorem"], d["tag"], d["verdict"])


@dataclass
class RegionScan:
    alpha_range: tuple[float, float]
    beta_range: tuple[float, float]
    resolution: tuple[int, int]
    sign: int
    cells: list[RegionCell] = field(default_factory=list)

    @property
    def alphas(self) -> np.ndarray:
        return np.linspace(*self.alpha_range, self.resolution[0])

    @property
    def betas(self) -> np.ndarray:
        return np.linspace(*self.beta_range, self.resolution[1])

    @property
    def complete(self) -> bool:
        return len(self.cells) == self.resolution[0] * self.resolution[1]

    def cell(self, i: int, j: int) -> RegionCell:
        return self.cells[j * self.resolution[0] + i]

    def code_matrix(self) -> list[list[str]]:
        """Rows indexed by β, columns by α; entries like ``P:T2`` or ``F:E``."""
        na, nb = self.resolution
        return [[f"{self.cell(i, j).code}:{self.cell(i, j).provenance}" for i in range(na)] for j in range(nb)]

    def to_dict(self):
        return {
            "kind": "region_scan",
            "alpha_range": list(self.alpha_range),
            "beta_range": list(self.beta_range),
            "resolution": list(self.resolution),
            "sign": self.sign,
            "cells": [c.to_dict() for c in self.cells],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            alpha_range=tuple(d["alpha_range"]),
            beta_range=tuple(d["beta_range"]),
            resolution=tuple(d["resolution"]),
            sign=d["sign"],
            cells=[RegionCell.from_dict(c) for c in d["cells"]],
        )


def scan_region(
    alpha_range,
    beta_range,
    resolution,
    sign: int = -1,
    cfg: LcmCheckConfig = LcmCheckConfig(),
    empirical: str = "undecided",
    done=None,
    on_cell=None,
) -> RegionScan:
    """Classify each (α, β) grid cell, theorems first.

    ``empirical`` selects which cells also get a :func:`check_lcm` verdict:
    ``"undecided"`` (default), ``"all"`` or ``"none"``.  ``done`` maps
    (i, j) to cells already computed by an interrupted scan; ``on_cell`` is
    called with every newly computed cell, in row-major order.
    """
    if isinstance(resolution, int):
        resolution = (resolution, resolution)
    na, nb = resolution
    if na < 2 or nb < 2:
        raise ValueError("resolution must be >= 2 per axis")
    if empirical not in ("undecided", "all", "none"):
        raise ValueError(f"unknown empirical mode {empirical!r}")
    if alpha_range[0] > alpha_range[1] or beta_range[0] > beta_range[1] or beta_range[0] < 0:
        raise ValueError("ranges must be increasing and beta >= 0")
    scan = RegionScan(tuple(map(float, alpha_range)), tuple(map(float, beta_range)), (na, nb), sign)
    done = done or {}
    alphas, betas = scan.alphas, scan.betas
    for j in range(nb):
        for i in range(na):
            if (i, j) in done:
                scan.cells.append(done[(i, j)])
                continue
            p = FamilyParams(float(alphas[i]), float(betas[j]), sign)
            cls = classify_by_theorems(p)
            verdict = None
            if empirical == "all" or (empirical == "undecided" and cls == UNDECIDED):
                verdict = check_lcm(p, cfg).verdict
            cell = RegionCell(i, j, p.alpha, p.beta, cls, theorem_tag(p), verdict)
            scan.cells.append(cell)
            if on_cell is not None:
                on_cell(cell)
    return scan

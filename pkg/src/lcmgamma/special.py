"""Log-gamma, digamma and polygamma for positive real arguments.

All functions accept scalars or numpy arrays and return the same shape.
Evaluation is upward recurrence until the argument reaches
``EvalPrecision.shift_threshold`` followed by the Stirling/Bernoulli
asymptotic series.  Arguments close to the zeros of lnΓ (x = 1, 2) and of
ψ (x ≈ 1.4616) use local Taylor expansions so that the relative error stays
small where the function value itself is small.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "BERNOULLI",
    "DomainError",
    "EvalPrecision",
    "DEFAULT_PRECISION",
    "MAX_POLYGAMMA_ORDER",
    "digamma",
    "guaranteed",
    "ln_gamma",
    "log_minus_digamma",
    "polygamma",
]

MAX_POLYGAMMA_ORDER = 12
GUARANTEED_X_RANGE = (1e-3, 1e6)

EULER_GAMMA = 0.5772156649015329
HALF_LOG_2PI = 0.9189385332046728

# B_2, B_4, ..., B_40; odd-index entries beyond B_1 vanish and are not stored.
BERNOULLI: tuple[Fraction, ...] = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
    Fraction(854513, 138),
    Fraction(-236364091, 2730),
    Fraction(8553103, 6),
    Fraction(-23749461029, 870),
    Fraction(8615841276005, 14322),
    Fraction(-7709321041217, 510),
    Fraction(2577687858367, 6),
    Fraction(-26315271553053477373, 1919190),
    Fraction(2929993913841559, 6),
    Fraction(-261082718496449122051, 13530),
)

# zeta(k) - 1 for k = 2..30
_ZETA_MINUS_ONE = (
    0.6449340668482264, 0.2020569031595943, 0.08232323371113819,
    0.03692775514336993, 0.01734306198444914, 0.008349277381922827,
    0.00407735619794434, 0.0020083928260822143, 0.0009945751278180853,
    0.0004941886041194645, 0.0002460865533080483, 0.00012271334757848915,
    6.124813505870483e-05, 3.058823630702049e-05, 1.528225940865187e-05,
    7.637197637899763e-06, 3.81729326499984e-06, 1.908212716553939e-06,
    9.539620338727962e-07, 4.769329867878064e-07, 2.38450502727733e-07,
    1.1921992596531106e-07, 5.960818905125948e-08, 2.980350351465228e-08,
    1.4901554828365043e-08, 7.45071178983543e-09, 3.725334024788457e-09,
    1.862659723513049e-09, 9.313274324196682e-10,
)

# positive zero of digamma as an unevaluated sum hi + lo
_PSI_ROOT_HI = 1.4616321449683622
_PSI_ROOT_LO = 9.549995429965697e-17
_PSI_ROOT_RADIUS = 0.2


class DomainError(ValueError):
    """Argument outside the domain of a function."""


@dataclass(frozen=True)
class EvalPrecision:
    target_rel_err: float = 1e-12
    shift_threshold: float = 20.0
    series_terms: int = 15

    def __post_init__(self):
        if not (self.target_rel_err > 0 and math.isfinite(self.target_rel_err)):
            raise ValueError(f"target_rel_err must be positive, got {self.target_rel_err}")
        if not self.shift_threshold >= 2:
            raise ValueError(f"shift_threshold must be >= 2, got {self.shift_threshold}")
        if not 1 <= self.series_terms <= 30:
            raise ValueError(f"series_terms must lie in [1, 30], got {self.series_terms}")
        if self.series_terms > len(BERNOULLI):
            raise ValueError("series_terms exceeds the stored Bernoulli table")

    @classmethod
    def from_env(cls, var: str = "GLL_PRECISION") -> "EvalPrecision":
        """Default precision with ``target_rel_err`` overridden by ``$var`` if set."""
        raw = os.environ.get(var)
        if raw is None or raw.strip() == "":
            return cls()
        return cls(target_rel_err=float(raw))


DEFAULT_PRECISION = EvalPrecision()

_B = np.array([float(b) for b in BERNOULLI])


def _prepare(x, name: str):
    arr = np.asarray(x, dtype=float)
    if arr.size and not (np.all(np.isfinite(arr)) and np.all(arr > 0)):
        raise DomainError(f"{name} requires finite x > 0")
    return arr


def _result(arr, like):
    if np.ndim(like) == 0:
        return float(arr)
    return arr


def guaranteed(x, k: int = 0):
    """True where the stated relative-error guarantee applies."""
    arr = np.asarray(x, dtype=float)
    lo, hi = GUARANTEED_X_RANGE
    ok = (arr >= lo) & (arr <= hi) & (0 <= k <= MAX_POLYGAMMA_ORDER)
    return bool(ok) if np.ndim(x) == 0 else ok


def _shift(x, power: int, thr: float):
    """Return (z, s): z = x + N >= thr and s = sum_{j<N} (x+j)**-power.

    Kahan-compensated; ``power = 0`` accumulates ln(x+j) instead.
    """
    x = np.asarray(x, dtype=float)
    steps = np.maximum(np.ceil(thr - x), 0.0)
    s = np.zeros_like(x)
    c = np.zeros_like(x)
    nmax = int(steps.max()) if steps.size else 0
    for j in range(nmax):
        v = x + j
        term = np.log(v) if power == 0 else v ** -power
        y = np.where(j < steps, term, 0.0) - c
        t = s + y
        c = (t - s) - y
        s = t
    return x + steps, s


def _series(terms, lead, prec: EvalPrecision):
    """Add asymptotic terms until they drop below the target relative error."""
    total = np.zeros_like(lead)
    cutoff = 1e-2 * prec.target_rel_err * np.abs(lead)
    for j, term in zip(range(prec.series_terms), terms):
        total += term
        if np.all(np.abs(term) <= cutoff):
            break
    return total


def _digamma_asym(z, prec):
    inv2 = 1.0 / (z * z)

    def terms():
        p = inv2.copy()
        for j in range(1, prec.series_terms + 1):
            yield -_B[j - 1] / (2 * j) * p
            p = p * inv2

    lead = np.log(z) - 0.5 / z
    return lead + _series(terms(), lead, prec)


def _log_minus_digamma_asym(z, prec):
    inv2 = 1.0 / (z * z)

    def terms():
        p = inv2.copy()
        for j in range(1, prec.series_terms + 1):
            yield _B[j - 1] / (2 * j) * p
            p = p * inv2

    lead = 0.5 / z
    return lead + _series(terms(), lead, prec)


def _polygamma_asym_abs(k: int, z, prec):
    """|ψ^(k)(z)| for large z, k >= 1."""
    lead = math.factorial(k - 1) / z**k + math.factorial(k) / (2 * z ** (k + 1))
    inv2 = 1.0 / (z * z)

    def terms():
        p = z ** -k * inv2
        for j in range(1, prec.series_terms + 1):
            # B_2j (2j+k-1)! / (2j)! / z^(2j+k)
            coef = _B[j - 1] * math.exp(math.lgamma(2 * j + k) - math.lgamma(2 * j + 1))
            yield coef * p
            p = p * inv2

    return lead + _series(terms(), lead, prec)


def _ln_gamma_asym(z, prec):
    inv = 1.0 / z
    inv2 = inv * inv

    def terms():
        p = inv.copy()
        for j in range(1, prec.series_terms + 1):
            yield _B[j - 1] / (2 * j * (2 * j - 1)) * p
            p = p * inv2

    lead = (z - 0.5) * np.log(z) - z + HALF_LOG_2PI
    return lead + _series(terms(), np.abs(lead) + 1.0, prec)


def _ln_gamma_2p(z):
    """lnΓ(2 + z) for |z| <= 1/2 by the zeta series."""
    acc = np.zeros_like(z)
    p = z * z
    for k, zm1 in enumerate(_ZETA_MINUS_ONE, start=2):
        acc += (zm1 / k) * p if k % 2 == 0 else -(zm1 / k) * p
        p = p * z
    return z * (1.0 - EULER_GAMMA) + acc


def _stirling_tails(z, prec):
    """Series tails of lnΓ and ln - ψ past their leading terms, for z >= shift_threshold.

    Returns (μ, ε) with lnΓ(z) = (z - 1/2) ln z - z + ln√(2π) + μ and
    ln z - ψ(z) = 1/(2z) + ε.
    """
    inv = 1.0 / z
    inv2 = inv * inv
    mu = np.zeros_like(z)
    eps = np.zeros_like(z)
    p = inv.copy()
    for j in range(1, prec.series_terms + 1):
        tm = _B[j - 1] / (2 * j * (2 * j - 1)) * p
        te = _B[j - 1] / (2 * j) * p * inv
        mu += tm
        eps += te
        if np.all(np.abs(tm) <= 1e-2 * prec.target_rel_err * np.abs(mu)):
            break
        p = p * inv2
    return mu, eps


def ln_gamma(x, prec: EvalPrecision = DEFAULT_PRECISION):
    """Natural log of Γ(x) for x > 0."""
    arr = _prepare(x, "ln_gamma")
    out = np.empty_like(arr)

    near2 = (arr >= 1.5) & (arr <= 2.5)
    near1 = (arr >= 0.5) & (arr < 1.5)
    tiny = arr < 0.5
    rest = ~(near1 | near2 | tiny)

    if np.any(near2):
        out[near2] = _ln_gamma_2p(arr[near2] - 2.0)
    if np.any(near1):
        z = arr[near1] - 1.0
        out[near1] = _ln_gamma_2p(z) - np.log1p(z)
    if np.any(tiny):
        xt = arr[tiny]
        # lnΓ(x) = lnΓ(1+x) - ln x with 1 + x in (1, 1.5)
        out[tiny] = _ln_gamma_2p(xt) - np.log1p(xt) - np.log(xt)
    if np.any(rest):
        z, logs = _shift(arr[rest], 0, prec.shift_threshold)
        out[rest] = _ln_gamma_asym(z, prec) - logs
    return _result(out, x)


_PSI_ROOT_COEFS: np.ndarray | None = None


def _psi_root_coefs():
    # Taylor coefficients ψ^(k)(x0)/k!, built once from the general path
    global _PSI_ROOT_COEFS
    if _PSI_ROOT_COEFS is None:
        x0 = np.array([_PSI_ROOT_HI])
        coefs = []
        for k in range(1, 24):
            z, s = _shift(x0, k + 1, DEFAULT_PRECISION.shift_threshold)
            val = math.factorial(k) * s + _polygamma_asym_abs(k, z, DEFAULT_PRECISION)
            sign = 1.0 if k % 2 == 1 else -1.0
            coefs.append(sign * float(val[0]) / math.factorial(k))
        _PSI_ROOT_COEFS = np.array(coefs)
    return _PSI_ROOT_COEFS


def digamma(x, prec: EvalPrecision = DEFAULT_PRECISION):
    """ψ(x) = Γ'(x)/Γ(x) for x > 0."""
    arr = _prepare(x, "digamma")
    out = np.empty_like(arr)

    d = (arr - _PSI_ROOT_HI) - _PSI_ROOT_LO
    root = np.abs(d) < _PSI_ROOT_RADIUS
    if np.any(root):
        dr = d[root]
        acc = np.zeros_like(dr)
        for c in _psi_root_coefs()[::-1]:
            acc = (acc + c) * dr
        out[root] = acc
    rest = ~root
    if np.any(rest):
        z, s = _shift(arr[rest], 1, prec.shift_threshold)
        out[rest] = _digamma_asym(z, prec) - s
    return _result(out, x)


def log_minus_digamma(x, prec: EvalPrecision = DEFAULT_PRECISION):
    """ln x - ψ(x), free of cancellation for large x."""
    arr = _prepare(x, "log_minus_digamma")
    z, s = _shift(arr, 1, prec.shift_threshold)
    # ln x - ψ(x) = [ln z - ψ(z)] - ln(z/x) + Σ 1/(x+j)
    out = _log_minus_digamma_asym(z, prec) - np.log(z / arr) + s
    return _result(out, x)


def polygamma(k: int, x, prec: EvalPrecision = DEFAULT_PRECISION):
    """ψ^(k)(x) for integer 1 <= k <= 12 and x > 0."""
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= MAX_POLYGAMMA_ORDER:
        raise DomainError(f"polygamma order must be an integer in [1, {MAX_POLYGAMMA_ORDER}], got {k}")
    k = int(k)
    arr = _prepare(x, "polygamma")
    z, s = _shift(arr, k + 1, prec.shift_threshold)
    mag = math.factorial(k) * s + _polygamma_asym_abs(k, z, prec)
    out = mag if k % 2 == 1 else -mag
    return _result(out, x)

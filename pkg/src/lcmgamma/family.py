"""The families f_{α,β,±1}, h_{β,±1} and h(x), in log scale.

    f_{α,β,s}(x) = [e^x Γ(x+β) / x^(x+β-α)]^s,     x > 0, β >= 0
    h_{β,s}(x)   = [e^x Γ(x+1) / (x+β)^(x+β)]^s,   x > max(0, -β)
    h(x)         = e^x Γ(x) / x^(x[1 - ln x + ψ(x)])

The sign exponent s is folded into every returned value, so
``log_f_derivative(p, n, x)`` is d^n/dx^n ln f_{α,β,s}(x) itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .special import (
    DEFAULT_PRECISION,
    HALF_LOG_2PI,
    MAX_POLYGAMMA_ORDER,
    DomainError,
    EvalPrecision,
    _stirling_tails,
    ln_gamma,
    log_minus_digamma,
    polygamma,
)

__all__ = [
    "FamilyParams",
    "HFamilyParams",
    "OrderError",
    "MAX_DERIVATIVE_ORDER",
    "h_special",
    "log_f",
    "log_f_derivative",
    "log_h_beta",
    "log_h_special",
]

MAX_DERIVATIVE_ORDER = MAX_POLYGAMMA_ORDER + 1


class OrderError(ValueError):
    """Derivative order outside the supported range."""


def _check_sign(sign):
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return int(sign)


@dataclass(frozen=True)
class FamilyParams:
    alpha: float
    beta: float
    sign: int = -1

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        if not (math.isfinite(self.beta) and self.beta >= 0):
            raise ValueError(f"beta must be finite and >= 0, got {self.beta}")
        object.__setattr__(self, "sign", _check_sign(self.sign))

    def to_dict(self):
        return {"alpha": self.alpha, "beta": self.beta, "sign": self.sign}


@dataclass(frozen=True)
class HFamilyParams:
    beta: float
    sign: int = 1

    def __post_init__(self):
        if not math.isfinite(self.beta):
            raise ValueError("beta must be finite")
        object.__setattr__(self, "sign", _check_sign(self.sign))

    @property
    def domain_min(self) -> float:
        return max(0.0, -self.beta)


def _positive(x, name):
    arr = np.asarray(x, dtype=float)
    if not np.all(arr > 0) or not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} requires finite x > 0")
    return arr


def _out(arr, like):
    return float(arr) if np.ndim(like) == 0 else arr


def log_f(params: FamilyParams, x, prec: EvalPrecision = DEFAULT_PRECISION):
    """ln f_{α,β,s}(x) = s·[x + lnΓ(x+β) - (x+β-α) ln x]."""
    arr = _positive(x, "log_f")
    a, b = params.alpha, params.beta
    val = arr + ln_gamma(arr + b, prec) - (arr + b - a) * np.log(arr)
    return _out(params.sign * val, x)


def log_f_derivative(params: FamilyParams, n: int, x, prec: EvalPrecision = DEFAULT_PRECISION):
    """n-th derivative of ln f_{α,β,s} at x, in closed form.

    For s = -1: n = 1 gives ln x - ψ(x+β) + (β-α)/x, and for n >= 2
    (-1)^n times the value is
    (n-2)!/x^(n-1) - (-1)^n ψ^(n-1)(x+β) - (β-α)(n-1)!/x^n.
    """
    if isinstance(n, bool) or int(n) != n or not 1 <= n <= MAX_DERIVATIVE_ORDER:
        raise OrderError(f"derivative order must be an integer in [1, {MAX_DERIVATIVE_ORDER}], got {n}")
    n = int(n)
    arr = _positive(x, "log_f_derivative")
    a, b = params.alpha, params.beta
    if n == 1:
        # ln x - ψ(x+β) = [ln(x+β) - ψ(x+β)] - ln(1 + β/x)
        d = log_minus_digamma(arr + b, prec) - np.log1p(b / arr) + (b - a) / arr
        return _out(-params.sign * d, x)
    sgn = 1.0 if n % 2 == 0 else -1.0
    val = (
        polygamma(n - 1, arr + b, prec)
        - sgn * math.factorial(n - 2) / arr ** (n - 1)
        + sgn * (b - a) * math.factorial(n - 1) / arr**n
    )
    return _out(params.sign * val, x)


def log_h_beta(params: HFamilyParams, x, prec: EvalPrecision = DEFAULT_PRECISION):
    """ln h_{β,s}(x) = s·[x + lnΓ(x+1) - (x+β) ln(x+β)]."""
    arr = np.asarray(x, dtype=float)
    if not (np.all(np.isfinite(arr)) and np.all(arr > params.domain_min)):
        raise DomainError(f"log_h_beta requires x > {params.domain_min}")
    if np.any(arr <= 0):
        raise DomainError("log_h_beta requires x > 0")
    s = arr + params.beta
    val = arr + ln_gamma(arr + 1.0, prec) - s * np.log(s)
    return _out(params.sign * val, x)


def log_h_special(x, prec: EvalPrecision = DEFAULT_PRECISION):
    """ln h(x) = x + lnΓ(x) - x·[1 - ln x + ψ(x)]·ln x."""
    arr = np.atleast_1d(_positive(x, "h_special"))
    gap = log_minus_digamma(arr, prec)  # ln x - ψ(x)
    val = np.asarray(arr + ln_gamma(arr, prec) - arr * (1.0 - gap) * np.log(arr))
    big = arr >= prec.shift_threshold
    if np.any(big):
        # the terms above are O(x ln x) while ln h -> ln√(2π); expanding both
        # Stirling series cancels the large parts exactly
        z = arr[big]
        mu, eps = _stirling_tails(z, prec)
        val[big] = HALF_LOG_2PI + mu + z * eps * np.log(z)
    return _out(val[0] if np.ndim(x) == 0 else val.reshape(np.shape(x)), x)


def h_special(x, prec: EvalPrecision = DEFAULT_PRECISION):
    """h(x) = e^x Γ(x) / x^(x[1 - ln x + ψ(x)])."""
    return _out(np.exp(log_h_special(x, prec)), x)

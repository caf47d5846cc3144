"""Independent high-precision reference values, for tests only.

Two methods, neither shares code with :mod:`lcmgamma.special`:

``shift``
    mpmath arithmetic at 40 digits, recurrence to z >= 40 and an asymptotic
    tail whose Bernoulli numbers come from ``mpmath.bernoulli``.
``quad``
    tanh-sinh quadrature of the Laplace-type integral representations
    (Binet's formula for lnΓ, Gauss's integral for ψ, and
    ψ^(n)(x) = (-1)^(n+1) ∫ t^n e^{-xt} / (1 - e^{-t}) dt).
"""

from __future__ import annotations

import math

import mpmath
from mpmath import mp, mpf

__all__ = ["OracleConvergenceError", "oracle_eval", "oracle_all_orders"]

_DPS = 40
_SHIFT_TO = 40
_TAIL_TERMS = 24


class OracleConvergenceError(ArithmeticError):
    pass


def _check(func: str, k):
    if func not in ("ln_gamma", "digamma", "polygamma"):
        raise ValueError(f"unknown oracle function {func!r}")
    if func == "polygamma" and (k is None or k < 1):
        raise ValueError("polygamma oracle needs an order k >= 1")


def oracle_all_orders(x: float, kmax: int) -> dict:
    """lnΓ(x), ψ(x) and ψ^(k)(x), k = 1..kmax, sharing one shift loop.

    Returns ``{"ln_gamma": mpf, 0: mpf, 1: mpf, ...}`` with key 0 for ψ.
    """
    if not x > 0:
        raise ValueError("oracle requires x > 0")
    with mp.workdps(_DPS):
        x = mpf(x)
        n = max(0, math.ceil(_SHIFT_TO - float(x)))
        sums = [mpf(0)] * (kmax + 2)  # sums[p] = Σ (x+j)^-p
        prod = mpf(1)
        for j in range(n):
            v = x + j
            prod *= v
            inv = 1 / v
            p = inv
            for e in range(1, kmax + 2):
                sums[e] += p
                p *= inv
        z = x + n
        iz = 1 / z
        iz2 = iz * iz
        out = {}
        lg = (z - mpf(1) / 2) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
        lg += iz * mp.polyval(_coefs("ln_gamma")[::-1], iz2)
        out["ln_gamma"] = lg - mp.log(prod)
        ps = mp.log(z) - iz / 2 - iz2 * mp.polyval(_coefs(0)[::-1], iz2)
        out[0] = ps - sums[1]
        izk = iz
        for k in range(1, kmax + 1):
            mag = mp.factorial(k - 1) * izk + mp.factorial(k) * izk * iz / 2
            mag += izk * iz2 * mp.polyval(_coefs(k)[::-1], iz2)
            mag += mp.factorial(k) * sums[k + 1]
            out[k] = mag if k % 2 == 1 else -mag
            izk *= iz
        return out


_COEFS: dict = {}


def _coefs(which):
    """Asymptotic-tail coefficients in powers of 1/z^2, cached per function."""
    if which not in _COEFS:
        with mp.workdps(_DPS + 10):
            bern = [mpmath.bernoulli(2 * j) for j in range(1, _TAIL_TERMS + 1)]
            if which == "ln_gamma":
                c = [b / (2 * j * (2 * j - 1)) for j, b in enumerate(bern, start=1)]
            elif which == 0:
                c = [b / (2 * j) for j, b in enumerate(bern, start=1)]
            else:
                k = which
                c = [b * mp.factorial(2 * j + k - 1) / mp.factorial(2 * j)
                     for j, b in enumerate(bern, start=1)]
        _COEFS[which] = c
    return _COEFS[which]


def _quad(f, x, tol_digits):
    # split where e^{-xt} has decayed by one e-fold so slow tails are resolved
    pts = [0, 1, max(2, 1 / x), mp.inf] if x < 1 else [0, 1, mp.inf]
    val, err = mp.quad(f, pts, error=True, maxdegree=10)
    if err > mpf(10) ** (-tol_digits) * max(1, abs(val)):
        raise OracleConvergenceError(f"quadrature error estimate {err} too large")
    return val


def _binet_bracket(t):
    """1/2 - 1/t + 1/(e^t - 1), by its Taylor series where it cancels."""
    if t < mpf(1) / 4:
        acc, p = mpf(0), t
        for j in range(1, 16):
            acc += mpmath.bernoulli(2 * j) / mp.factorial(2 * j) * p
            p *= t * t
        return acc
    return mpf(1) / 2 - 1 / t + 1 / mp.expm1(t)


def _oracle_quad(func, x, k):
    with mp.workdps(30):
        x = mpf(x)
        if func == "polygamma":
            f = lambda t: t**k * mp.exp(-x * t) / -mp.expm1(-t)
            v = _quad(f, x, 20)
            return v if k % 2 == 1 else -v
        if func == "digamma":
            # ψ(x) = ln x + ∫ (1/t - 1/(1 - e^{-t})) e^{-xt} dt
            f = lambda t: (-mpf(1) / 2 - _binet_bracket(t)) * mp.exp(-x * t)
            return mp.log(x) + _quad(f, x, 20)
        # Binet's first formula
        f = lambda t: _binet_bracket(t) * mp.exp(-x * t) / t
        head = (x - mpf(1) / 2) * mp.log(x) - x + mp.log(2 * mp.pi) / 2
        return head + _quad(f, x, 20)


def oracle_eval(func: str, x: float, k: int | None = None, method: str = "shift") -> float:
    """Reference value of ``func`` at ``x`` (``k`` is the polygamma order)."""
    _check(func, k)
    if not (x > 0 and math.isfinite(x)):
        raise ValueError("oracle requires finite x > 0")
    if method == "shift":
        vals = oracle_all_orders(x, k or 0)
        key = "ln_gamma" if func == "ln_gamma" else (0 if func == "digamma" else k)
        return float(vals[key])
    if method == "quad":
        return float(_oracle_quad(func, x, k))
    raise ValueError(f"unknown oracle method {method!r}")

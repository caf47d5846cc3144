"""Gamma/psi/polygamma inequalities as signed-slack predicates.

Every predicate returns *slack* oriented so that ``slack >= 0`` means the
inequality holds, together with a *scale* (the sum of the absolute values
of the terms involved) used to judge rounding.  Ratio inequalities are
evaluated in log scale.  Hypotheses are enforced: evaluating an inequality
outside its regime raises :class:`RegimeError`.

Two displays are not true as typeset and are available in two readings:

* ``ratio_beta``: the exponential factor is printed e^{1/(y-x)}; the
  monotonicity of f_{α,β,+1} gives e^{y-x}.
* ``note_li_chen``: the printed direction and exponential factor disagree
  with the monotonicity of h(x) on either side of x = 1.

``printed=True`` evaluates the display verbatim, the default evaluates the
form implied by the monotonicity argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .family import log_h_special
from .special import DEFAULT_PRECISION, DomainError, digamma, ln_gamma, log_minus_digamma, polygamma

__all__ = [
    "CASE_IDS",
    "InequalityCase",
    "RegimeError",
    "SweepResult",
    "alzer_threshold",
    "gamma_ratio_bound",
    "guosl_optimal_constants",
    "gurland_weighted",
    "identric_bound",
    "identric_mean",
    "misc_survey_bounds",
    "polygamma_envelopes",
    "psi_envelopes",
    "shifted_envelopes",
    "sweep",
]

CASE_IDS = (
    "kec",
    "alzer_threshold",
    "chen_gurland",
    "ratio_beta",
    "psi_bounds",
    "polygamma_bounds",
    "beta_pos_upper",
    "beta_pos_poly",
    "beta_half_lower",
    "beta_one_upper",
    "beta_one_poly",
    "n_gurland",
    "identric",
    "guosl",
    "note_li_chen",
)


class RegimeError(ValueError):
    """Parameters outside the hypotheses of an inequality."""


def _arr(x):
    return np.asarray(x, dtype=float)


def _like(v, x):
    return float(v) if np.ndim(x) == 0 else v


def _pos(*xs):
    for x in xs:
        if not np.all(_arr(x) > 0):
            raise DomainError("arguments must be positive")


def _sides(*pairs):
    """Pick, per element, the side with the smallest slack/scale."""
    slack = np.stack([np.broadcast_to(s, np.broadcast(*[p[0] for p in pairs]).shape) for s, _ in pairs])
    scale = np.stack([np.broadcast_to(c, slack.shape[1:]) for _, c in pairs])
    idx = np.argmin(slack / scale, axis=0)
    pick = lambda a: np.take_along_axis(a, idx[None], 0)[0]
    return pick(slack), pick(scale)


def _fact(n):
    return np.array([math.factorial(int(v)) for v in np.ravel(n)], dtype=float).reshape(np.shape(n))


def _polygamma_k(k, x):
    """ψ^(k)(x) with an array of orders."""
    k = np.asarray(k, dtype=int)
    x = _arr(x)
    k, x = np.broadcast_arrays(k, x)
    out = np.empty(x.shape)
    for kk in np.unique(k):
        m = k == kk
        out[m] = digamma(x[m]) if kk == 0 else polygamma(int(kk), x[m])
    return out


# -- envelopes ---------------------------------------------------------------


def psi_envelopes(x):
    """(ln x - 1/x, ln x - 1/(2x)), which bracket ψ(x) on (0, ∞)."""
    _pos(x)
    xa = _arr(x)
    lx = np.log(xa)
    return _like(lx - 1 / xa, x), _like(lx - 0.5 / xa, x)


def polygamma_envelopes(k: int, x):
    """Bounds on (-1)^(k+1) ψ^(k)(x):  (k-1)!/x^k + k!/(c x^(k+1)), c = 2 and 1."""
    if not 1 <= k <= 11:
        raise RegimeError("polygamma_envelopes needs 1 <= k <= 11")
    _pos(x)
    xa = _arr(x)
    head = math.factorial(k - 1) / xa**k
    tail = math.factorial(k) / xa ** (k + 1)
    return _like(head + tail / 2, x), _like(head + tail, x)


def _psi_bounds_slack(x):
    lo, up = psi_envelopes(x)
    psi = digamma(_arr(x))
    lx = np.abs(np.log(x))
    return _sides((psi - lo, lx + 1 / x + np.abs(psi)), (up - psi, lx + 0.5 / x + np.abs(psi)))


def _polygamma_bounds_slack(k, x):
    k = np.asarray(k, dtype=int)
    x = _arr(x)
    head = _fact(k - 1) / x**k
    tail = _fact(k) / x ** (k + 1)
    val = np.where(k % 2 == 1, 1.0, -1.0) * _polygamma_k(k, x)
    scale = head + tail + np.abs(val)
    return _sides((val - head - tail / 2, scale), (head + tail - val, scale))


_SHIFTED_REGIMES = {
    "beta_pos_upper": lambda b: b > 0,
    "beta_pos_poly": lambda b: b > 0,
    "beta_half_lower": lambda b: b >= 0.5,
    "beta_one_upper": lambda b: b >= 1,
    "beta_one_poly": lambda b: b >= 1,
}


def _shifted_slack(case, beta, k, x):
    """Slack for the ψ(x+β) and ψ^(k-1)(x+β) envelopes of each β-regime."""
    beta, x = _arr(beta), _arr(x)
    lx = np.log(x)
    if case in ("beta_pos_upper", "beta_one_upper", "beta_half_lower"):
        psi = digamma(x + beta)
        scale_psi = np.abs(psi) + np.abs(lx)
    if case in ("beta_pos_poly", "beta_one_poly", "beta_half_lower"):
        k = np.asarray(k, dtype=int)
        if np.any(k < 2) or np.any(k > 13):
            raise RegimeError("polygamma envelopes need 2 <= k <= 13")
        val = np.where(k % 2 == 0, 1.0, -1.0) * _polygamma_k(k - 1, x + beta)
        head = _fact(k - 2) / x ** (k - 1)
        tail = _fact(k - 1) / x**k
    if case == "beta_pos_upper":
        return lx + beta / x - psi, scale_psi + beta / x
    if case == "beta_one_upper":
        return lx + (beta - 0.5) / x - psi, scale_psi + (beta - 0.5) / x
    if case == "beta_pos_poly":
        return val - (head - beta * tail), np.abs(val) + head + beta * tail
    if case == "beta_one_poly":
        return val - (head - (beta - 0.5) * tail), np.abs(val) + head + (beta - 0.5) * tail
    # beta_half_lower: ψ(x+β) >= ln x and (-1)^k ψ^(k-1)(x+β) <= (k-2)!/x^(k-1)
    return _sides((psi - lx, scale_psi), (head - val, np.abs(val) + head))


def shifted_envelopes(beta: float, k: int | None, x):
    """Bounds on ψ(x+β) and (-1)^k ψ^(k-1)(x+β) that hold for this β.

    Returns ``{case_id: (bound, slack)}`` for every applicable case; the
    ``beta_half_lower`` entry carries the ψ-bound and, when ``k`` is given,
    ``beta_half_lower_poly`` the polygamma bound.  Raises
    :class:`RegimeError` for β <= 0, where nothing is asserted.
    """
    if not beta > 0:
        raise RegimeError("shifted envelopes need beta > 0")
    _pos(x)
    x = _arr(x)
    lx = np.log(x)
    psi = digamma(x + beta)
    out = {"beta_pos_upper": (lx + beta / x, lx + beta / x - psi)}
    if beta >= 0.5:
        out["beta_half_lower"] = (lx, psi - lx)
    if beta >= 1:
        b = lx + (beta - 0.5) / x
        out["beta_one_upper"] = (b, b - psi)
    if k is not None:
        if not 2 <= k <= 13:
            raise RegimeError("polygamma envelopes need 2 <= k <= 13")
        val = (-1) ** k * polygamma(k - 1, x + beta)
        head = math.factorial(k - 2) / x ** (k - 1)
        tail = math.factorial(k - 1) / x**k
        b = head - beta * tail
        out["beta_pos_poly"] = (b, val - b)
        if beta >= 0.5:
            out["beta_half_lower_poly"] = (head, head - val)
        if beta >= 1:
            b = head - (beta - 0.5) * tail
            out["beta_one_poly"] = (b, val - b)
    return out


# -- gamma ratios --------------------------------------------------------------


def _ratio_regime(alpha, beta):
    alpha, beta = _arr(alpha), _arr(beta)
    suff = ((beta >= 1) & (alpha <= 0.5)) | ((beta > 0) & (alpha <= 0))
    nec = (beta >= 1) & (alpha > 0.5)
    return suff, nec


def _ratio_slack(alpha, beta, x, y, printed):
    alpha, beta, x, y = map(_arr, (alpha, beta, x, y))
    lx, ly = np.log(x), np.log(y)
    gx, gy = ln_gamma(x + beta), ln_gamma(y + beta)
    with np.errstate(divide="ignore"):
        expo = 1.0 / (y - x) if printed else y - x
    bound = (x + beta - alpha) * lx - (y + beta - alpha) * ly + expo
    scale = np.abs((x + beta - alpha) * lx) + np.abs((y + beta - alpha) * ly) + np.abs(expo)
    scale = scale + np.abs(gx) + np.abs(gy)
    return bound - (gx - gy), scale


def gamma_ratio_bound(alpha, beta, x, y, printed: bool = False, allow_necessity: bool = False):
    """Slack of Γ(x+β)/Γ(y+β) < x^(x+β-α)/y^(y+β-α)·E for x > y > 0.

    E = e^{y-x} by default, e^{1/(y-x)} with ``printed=True``.  Holds for
    β >= 1, α <= 1/2 and for β > 0, α <= 0; for β >= 1 and α > 1/2 it fails
    somewhere, and ``allow_necessity`` permits evaluating there.
    """
    suff, nec = _ratio_regime(alpha, beta)
    ok = suff | nec if allow_necessity else suff
    if not np.all(ok):
        raise RegimeError("ratio bound needs (beta >= 1, alpha <= 1/2) or (beta > 0, alpha <= 0)")
    _pos(x, y)
    if not np.all(_arr(x) > _arr(y)):
        raise DomainError("ratio bound needs x > y")
    s, _ = _ratio_slack(alpha, beta, x, y, printed)
    return float(s) if np.ndim(s) == 0 else s


def _gurland_direction(alpha, beta):
    """+1 where the weighted Gurland inequality holds as stated, -1 reversed, 0 neither."""
    alpha, beta = _arr(alpha), _arr(beta)
    b = np.where(beta == 0, 1.0, beta)  # f_{α,0,s} = f_{α,1,s}
    fwd = ((b > 0) & (alpha <= 0)) | ((b >= 1) & (alpha <= 0.5))
    rev = (alpha >= b) & (b >= 0.5)
    return np.where(fwd, 1, np.where(rev, -1, 0))


def _gurland_slack(xs, ps, alpha, beta):
    xs, ps = np.atleast_2d(_arr(xs)), np.atleast_2d(_arr(ps))
    alpha, beta = _arr(alpha), _arr(beta)
    a, b = alpha[..., None], beta[..., None]
    m = np.sum(ps * xs, axis=-1)
    used = ps > 0
    first = np.take_along_axis(xs, np.argmax(used, axis=-1)[:, None], -1)[:, 0]
    degenerate = np.all(~used | (xs == first[:, None]), axis=-1)
    m = np.where(degenerate, first, m)
    gx = ln_gamma(xs + b)
    gm = ln_gamma(m + beta)
    px = (xs + b - a) * np.log(xs)
    pm = (m + beta - alpha) * np.log(m)
    lhs = np.sum(ps * gx, axis=-1) - gm
    rhs = np.sum(ps * px, axis=-1) - pm
    scale = np.sum(ps * (np.abs(gx) + np.abs(px)), axis=-1) + np.abs(gm) + np.abs(pm)
    d = _gurland_direction(alpha, beta)
    slack = np.where(degenerate, 0.0, d * (lhs - rhs))
    return slack, scale


def gurland_weighted(xs, ps, alpha: float, beta: float) -> float:
    """Log-scale slack of the weighted Gurland-type inequality.

    ∏ Γ(x_k+β)^{p_k} / Γ(Σ p_k x_k + β)  >=  ∏ x_k^{p_k(x_k+β-α)} / m^{m+β-α}
    with m = Σ p_k x_k, for (β > 0, α <= 0) or (β >= 1, α <= 1/2); reversed
    for α >= β >= 1/2.  The slack is oriented by the regime.
    """
    xs, ps = _arr(xs), _arr(ps)
    if xs.shape != ps.shape or xs.ndim != 1 or xs.size == 0:
        raise ValueError("xs and ps must be non-empty 1-D sequences of equal length")
    _pos(xs)
    if np.any(ps < 0) or abs(ps.sum() - 1) > 1e-12:
        raise ValueError("weights must be nonnegative and sum to 1")
    if _gurland_direction(alpha, beta) == 0:
        raise RegimeError("weighted Gurland needs (beta>0, alpha<=0), (beta>=1, alpha<=1/2) or alpha>=beta>=1/2")
    s, _ = _gurland_slack(xs, ps, np.array([alpha]), np.array([beta]))
    return float(s[0])


def identric_mean(a: float, b: float) -> float:
    """I(a, b) = (1/e)(b^b/a^a)^{1/(b-a)}, with I(a, a) = a."""
    if not (a > 0 and b > 0):
        raise DomainError("identric mean needs a, b > 0")
    if a == b:
        return float(a)
    d = b - a
    return math.exp(math.log(a) + b * math.log1p(d / a) / d - 1.0)


def _identric_slack(alpha, beta, x, y):
    alpha, beta, x, y = map(_arr, (alpha, beta, x, y))
    lx, ly = np.log(x), np.log(y)
    d = x - y
    same = d == 0
    dd = np.where(same, 1.0, d)
    gx, gy = ln_gamma(x + beta), ln_gamma(y + beta)
    # ln I(x,y) = ln y + x·log1p((x-y)/y)/(x-y) - 1
    ln_i = ly + x * np.log1p(d / y) / dd - 1
    rhs = ((alpha - beta) * (lx - ly) + gx - gy) / dd
    scale = (np.abs(alpha - beta) * (np.abs(lx) + np.abs(ly)) + np.abs(gx) + np.abs(gy)) / np.abs(dd)
    scale = scale + np.abs(ln_i) + 1
    # x = y: the limit of the right side is ψ(x+β) + (α-β)/x
    lim = digamma(x + beta) + (alpha - beta) / x - lx
    slack = np.where(same, lim, rhs - ln_i)
    return slack, scale


def identric_bound(alpha, beta, x, y) -> float:
    """Log-scale slack of I(x,y) < [(x/y)^{α-β} Γ(x+β)/Γ(y+β)]^{1/(x-y)}, α >= β >= 1/2."""
    if not (alpha >= beta >= 0.5):
        raise RegimeError("identric bound needs alpha >= beta >= 1/2")
    _pos(x, y)
    s, _ = _identric_slack(alpha, beta, x, y)
    return float(s)


# -- survey inequalities -------------------------------------------------------


def alzer_threshold(c: float) -> float:
    """Least α for which f_{α,0,+1} increases on (c, ∞): c(ln c - ψ(c)), or 1 at c = 0."""
    if c < 0:
        raise DomainError("alzer threshold needs c >= 0")
    if c == 0:
        return 1.0
    return float(c * log_minus_digamma(c))


def _alzer_slack(c, x):
    c, x = _arr(c), _arr(x)
    gc = c * log_minus_digamma(c)
    gx = x * log_minus_digamma(x)
    scale = c * (np.abs(np.log(c)) + np.abs(digamma(c))) + x * (np.abs(np.log(x)) + np.abs(digamma(x)))
    return _sides((gc - gx, scale), (gx - 0.5, scale + 0.5))


def _kec_slack(a, b):
    a, b = _arr(a), _arr(b)
    la, lb = np.log(a), np.log(b)
    g = ln_gamma(b) - ln_gamma(a)
    base = np.abs(ln_gamma(b)) + np.abs(ln_gamma(a)) + np.abs(a - b)
    lo = (b - 1) * lb - (a - 1) * la + a - b
    up = (b - 0.5) * lb - (a - 0.5) * la + a - b
    return _sides(
        (g - lo, base + np.abs((b - 1) * lb) + np.abs((a - 1) * la)),
        (up - g, base + np.abs((b - 0.5) * lb) + np.abs((a - 0.5) * la)),
    )


def _chen_gurland_slack(x, y):
    x, y = _arr(x), _arr(y)
    m = (x + y) / 2
    lx, ly, lm = np.log(x), np.log(y), np.log(m)
    gx, gy, gm = ln_gamma(x), ln_gamma(y), ln_gamma(m)
    mid = gx + gy - 2 * gm
    base = np.abs(gx) + np.abs(gy) + 2 * np.abs(gm)
    lo = [(x - 0.5) * lx, (y - 0.5) * ly, -(x + y - 1) * lm]
    up = [(x - 1) * lx, (y - 1) * ly, -(x + y - 2) * lm]
    return _sides(
        (mid - sum(lo), base + sum(np.abs(t) for t in lo)),
        (sum(up) - mid, base + sum(np.abs(t) for t in up)),
    )


def _guosl_slack(x, y, lower_c=1.0, upper_c=0.5):
    x, y = _arr(x), _arr(y)
    r = ln_gamma(x + 1) - ln_gamma(y + 1)
    base = np.abs(ln_gamma(x + 1)) + np.abs(ln_gamma(y + 1)) + np.abs(y - x)

    def bound(c):
        tx, ty = (x + c) * np.log(x + c), (y + c) * np.log(y + c)
        return tx - ty + y - x, np.abs(tx) + np.abs(ty)

    lo, slo = bound(lower_c)
    up, sup = bound(upper_c)
    return _sides((r - lo, base + slo), (up - r, base + sup))


def guosl_optimal_constants(x_grid=None):
    """Extreme constants c for which (x+c)^{x+c} e^{-x}/Γ(x+1) stays monotone.

    Returns ``(lower, upper)``: the lower bound of the two-sided guosl
    inequality holds with any constant >= ``lower`` (the supremum of
    e^{ψ(x+1)} - x), the upper bound with any constant <= ``upper`` (its
    infimum).  Both are estimated on ``x_grid``.
    """
    if x_grid is None:
        x_grid = np.geomspace(1e-8, 1e8, 4001)
    x = _arr(x_grid)
    # e^{ψ(x+1)} - x = x·expm1(ψ(x+1) - ln x) without cancellation
    v = x * np.expm1(-log_minus_digamma(x + 1) + np.log1p(1 / x))
    return float(v.max()), float(v.min())


def _note_li_chen_slack(x, y, printed=False):
    x, y = _arr(x), _arr(y)
    lx, ly = np.log(x), np.log(y)
    px = x * (lx - digamma(x) - 1) * lx
    py = y * (ly - digamma(y) - 1) * ly
    g = ln_gamma(y) - ln_gamma(x)
    scale = np.abs(px) + np.abs(py) + np.abs(y - x) + np.abs(ln_gamma(y)) + np.abs(ln_gamma(x))
    upper_branch = x >= 1  # y > x >= 1; otherwise 0 < x < y <= 1
    orient = np.where(upper_branch, 1.0, -1.0)
    if printed:
        return orient * (g - (px - py + (y - x))), scale
    # ln h(x) - ln h(y), oriented by the side of 1
    return orient * (log_h_special(x) - log_h_special(y)), scale


def _note_li_chen_domain(x, y):
    x, y = _arr(x), _arr(y)
    ok = (y > x) & (((x >= 1)) | ((x > 0) & (y <= 1)))
    if not np.all(ok):
        raise RegimeError("note_li_chen needs y > x >= 1 or 0 < x < y <= 1")


def misc_survey_bounds(case: str, **params) -> float:
    """Slack for ``kec`` (a, b), ``chen_gurland`` (x, y), ``guosl`` (x, y),
    ``note_li_chen`` (x, y[, printed]) or the ``alzer_threshold`` value (c)."""
    if case == "alzer_threshold":
        return alzer_threshold(params["c"])
    if case == "kec":
        a, b = params["a"], params["b"]
        _pos(a, b)
        if not b >= a:
            raise DomainError("kec needs b > a > 0")
        s, _ = _kec_slack(a, b)
    elif case == "chen_gurland":
        _pos(params["x"], params["y"])
        s, _ = _chen_gurland_slack(params["x"], params["y"])
    elif case == "guosl":
        x, y = params["x"], params["y"]
        _pos(x, y)
        if not y >= x:
            raise DomainError("guosl needs y > x > 0")
        s, _ = _guosl_slack(x, y, params.get("lower_c", 1.0), params.get("upper_c", 0.5))
    elif case == "note_li_chen":
        _note_li_chen_domain(params["x"], params["y"])
        s, _ = _note_li_chen_slack(params["x"], params["y"], params.get("printed", False))
    else:
        raise KeyError(f"unknown survey case {case!r}")
    return float(s)


# -- sweeps -------------------------------------------------------------------


@dataclass
class InequalityCase:
    id: str
    params: dict
    point: dict
    slack: float
    scale: float

    @property
    def normalized(self) -> float:
        return self.slack / self.scale

    def holds(self, tol: float = 1e-10) -> bool:
        return self.slack >= -tol * self.scale

    def to_dict(self):
        return {"id": self.id, "params": self.params, "point": self.point, "slack": self.slack, "scale": self.scale}

    @classmethod
    def from_dict(cls, d):
        return cls(d["id"], d["params"], d["point"], d["slack"], d["scale"])


@dataclass
class SweepResult:
    case_id: str
    regime: str  # "sufficient" or "necessity"
    samples: dict
    slack: np.ndarray
    scale: np.ndarray
    options: dict = field(default_factory=dict)

    @property
    def normalized(self) -> np.ndarray:
        return self.slack / self.scale

    @property
    def argmin(self) -> int:
        return int(np.argmin(self.normalized))

    def min_normalized(self) -> float:
        return float(self.normalized.min())

    def holds(self, tol: float = 1e-10) -> bool:
        return self.min_normalized() >= -tol

    def case(self, i: int) -> InequalityCase:
        params, point = {}, {}
        for key, arr in self.samples.items():
            v = arr[i]
            if key == "xs" or key == "ps":
                m = int(self.samples["m"][i])
                point[key] = [float(t) for t in v[:m]]
            elif key == "m":
                continue
            elif key in _POINT_KEYS:
                point[key] = float(v)
            else:
                params[key] = int(v) if key == "k" else float(v)
        return InequalityCase(self.case_id, params, point, float(self.slack[i]), float(self.scale[i]))

    def summary(self, tol: float = 1e-10) -> dict:
        i = self.argmin
        return {
            "case": self.case_id,
            "regime": self.regime,
            "n": int(self.slack.size),
            "min_slack": float(self.slack.min()),
            "min_normalized_slack": self.min_normalized(),
            "argmin": self.case(i).to_dict(),
            "holds": self.holds(tol),
            "tolerance": tol,
        }


_POINT_KEYS = {"x", "y", "a", "b", "c", "xs", "ps"}


def _loguni(rng, lo, hi, n):
    return np.exp(rng.uniform(math.log(lo), math.log(hi), n))


def _ordered(rng, lo, hi, n):
    u, v = _loguni(rng, lo, hi, n), _loguni(rng, lo, hi, n)
    return np.minimum(u, v), np.maximum(u, v)


def _fill(fixed, key, n, default):
    if key in fixed and fixed[key] is not None:
        return np.full(n, fixed[key], dtype=int if key == "k" else float)
    return default


def _sample(case_id, rng, n, lo, hi, fixed):
    f = fixed
    s: dict = {}
    if case_id in ("kec",):
        a, b = _ordered(rng, lo, hi, n)
        s["a"], s["b"] = _fill(f, "a", n, a), _fill(f, "b", n, b)
    elif case_id == "alzer_threshold":
        c, x = _ordered(rng, lo, hi, n)
        s["c"], s["x"] = _fill(f, "c", n, c), _fill(f, "x", n, x)
    elif case_id in ("chen_gurland",):
        s["x"], s["y"] = _fill(f, "x", n, _loguni(rng, lo, hi, n)), _fill(f, "y", n, _loguni(rng, lo, hi, n))
    elif case_id == "guosl":
        x, y = _ordered(rng, lo, hi, n)
        s["x"], s["y"] = _fill(f, "x", n, x), _fill(f, "y", n, y)
    elif case_id == "note_li_chen":
        upper = rng.random(n) < 0.5
        x1, y1 = _ordered(rng, 1.0, max(hi, 1.0 + 1e-9), n)
        x0, y0 = _ordered(rng, min(lo, 1.0), 1.0, n)
        s["x"] = _fill(f, "x", n, np.where(upper, x1, x0))
        s["y"] = _fill(f, "y", n, np.where(upper, y1, y0))
    elif case_id == "ratio_beta":
        first = rng.random(n) < 0.5
        beta = np.where(first, _loguni(rng, 1e-3, 1e2, n), _loguni(rng, 1.0, 1e2, n))
        alpha = np.where(first, rng.uniform(-5, 0, n), rng.uniform(-5, 0.5, n))
        y, x = _ordered(rng, lo, hi, n)
        s.update(alpha=_fill(f, "alpha", n, alpha), beta=_fill(f, "beta", n, beta))
        s["x"], s["y"] = _fill(f, "x", n, x), _fill(f, "y", n, y)
    elif case_id in ("psi_bounds",):
        s["x"] = _fill(f, "x", n, _loguni(rng, lo, hi, n))
    elif case_id == "polygamma_bounds":
        s["k"] = _fill(f, "k", n, rng.integers(1, 12, n))
        s["x"] = _fill(f, "x", n, _loguni(rng, lo, hi, n))
    elif case_id in _SHIFTED_REGIMES:
        blo = {"beta_pos_upper": 1e-3, "beta_pos_poly": 1e-3, "beta_half_lower": 0.5}.get(case_id, 1.0)
        s["beta"] = _fill(f, "beta", n, _loguni(rng, blo, 1e2, n))
        if case_id.endswith("_poly") or case_id == "beta_half_lower":
            s["k"] = _fill(f, "k", n, rng.integers(2, 13, n))
        s["x"] = _fill(f, "x", n, _loguni(rng, lo, hi, n))
    elif case_id == "identric":
        beta = _loguni(rng, 0.5, 1e2, n)
        s["beta"] = _fill(f, "beta", n, beta)
        s["alpha"] = _fill(f, "alpha", n, s["beta"] + rng.uniform(0, 5, n))
        s["x"], s["y"] = _fill(f, "x", n, _loguni(rng, lo, hi, n)), _fill(f, "y", n, _loguni(rng, lo, hi, n))
    elif case_id == "n_gurland":
        width = 6
        regime = rng.integers(0, 3, n)
        beta = np.choose(regime, [_loguni(rng, 1e-3, 1e2, n), _loguni(rng, 1.0, 1e2, n), _loguni(rng, 0.5, 1e2, n)])
        alpha = np.choose(regime, [rng.uniform(-5, 0, n), rng.uniform(-5, 0.5, n), beta + rng.uniform(0, 5, n)])
        s["beta"] = _fill(f, "beta", n, beta)
        s["alpha"] = _fill(f, "alpha", n, alpha)
        if f.get("xs") is not None:
            xs = np.asarray(f["xs"], dtype=float)
            ps = np.asarray(f["ps"] if f.get("ps") is not None else np.full(xs.size, 1 / xs.size), dtype=float)
            m = np.full(n, xs.size)
            xs = np.tile(xs, (n, 1))
            ps = np.tile(ps, (n, 1))
        else:
            m = rng.integers(1, width + 1, n)
            xs = _loguni(rng, lo, hi, n * width).reshape(n, width)
            ps = rng.dirichlet(np.ones(width), n)
            active = np.arange(width)[None, :] < m[:, None]
            xs = np.where(active, xs, 1.0)
            ps = np.where(active, ps, 0.0)
            ps = ps / ps.sum(axis=1, keepdims=True)
        s.update(m=m, xs=xs, ps=ps)
    else:
        raise KeyError(f"unknown inequality case {case_id!r}")
    return s


def _check_regime(case_id, s):
    """Return "sufficient" or "necessity"; raise RegimeError otherwise."""
    if case_id in ("kec", "guosl"):
        key = ("a", "b") if case_id == "kec" else ("x", "y")
        if not np.all(s[key[1]] >= s[key[0]]):
            raise RegimeError(f"{case_id} needs {key[1]} > {key[0]}")
    elif case_id == "alzer_threshold":
        if not np.all(s["x"] >= s["c"]):
            raise RegimeError("alzer_threshold needs x >= c")
    elif case_id == "note_li_chen":
        _note_li_chen_domain(s["x"], s["y"])
    elif case_id == "ratio_beta":
        if not np.all(s["x"] > s["y"]):
            raise RegimeError("ratio_beta needs x > y")
        suff, nec = _ratio_regime(s["alpha"], s["beta"])
        if np.all(suff):
            return "sufficient"
        if np.all(nec):
            return "necessity"
        raise RegimeError("ratio_beta needs (beta>=1, alpha<=1/2) or (beta>0, alpha<=0); (beta>=1, alpha>1/2) probes necessity")
    elif case_id in _SHIFTED_REGIMES:
        if not np.all(_SHIFTED_REGIMES[case_id](s["beta"])):
            raise RegimeError(f"{case_id}: beta outside its hypothesis")
    elif case_id == "identric":
        if not np.all((s["alpha"] >= s["beta"]) & (s["beta"] >= 0.5)):
            raise RegimeError("identric needs alpha >= beta >= 1/2")
    elif case_id == "n_gurland":
        if np.any(_gurland_direction(s["alpha"], s["beta"]) == 0):
            raise RegimeError("n_gurland: (alpha, beta) outside every regime")
        if np.any(np.abs(s["ps"].sum(axis=1) - 1) > 1e-12) or np.any(s["ps"] < 0):
            raise ValueError("weights must be nonnegative and sum to 1")
    elif case_id == "polygamma_bounds":
        if np.any((s["k"] < 1) | (s["k"] > 11)):
            raise RegimeError("polygamma_bounds needs 1 <= k <= 11")
    for key in ("x", "y", "a", "b", "c"):
        if key in s and not np.all(s[key] > 0):
            raise DomainError(f"{key} must be positive")
    if "xs" in s and not np.all(s["xs"] > 0):
        raise DomainError("xs must be positive")
    return "sufficient"


def _evaluate(case_id, s, printed):
    if case_id == "kec":
        return _kec_slack(s["a"], s["b"])
    if case_id == "alzer_threshold":
        return _alzer_slack(s["c"], s["x"])
    if case_id == "chen_gurland":
        return _chen_gurland_slack(s["x"], s["y"])
    if case_id == "ratio_beta":
        return _ratio_slack(s["alpha"], s["beta"], s["x"], s["y"], printed)
    if case_id == "psi_bounds":
        return _psi_bounds_slack(s["x"])
    if case_id == "polygamma_bounds":
        return _polygamma_bounds_slack(s["k"], s["x"])
    if case_id in _SHIFTED_REGIMES:
        return _shifted_slack(case_id, s["beta"], s.get("k"), s["x"])
    if case_id == "n_gurland":
        return _gurland_slack(s["xs"], s["ps"], s["alpha"], s["beta"])
    if case_id == "identric":
        return _identric_slack(s["alpha"], s["beta"], s["x"], s["y"])
    if case_id == "guosl":
        return _guosl_slack(s["x"], s["y"])
    if case_id == "note_li_chen":
        return _note_li_chen_slack(s["x"], s["y"], printed)
    raise KeyError(case_id)


def sweep(
    case_id: str,
    n: int,
    seed: int = 0,
    x_range=(1e-3, 1e4),
    fixed: dict | None = None,
    printed: bool = False,
) -> SweepResult:
    """Sample ``n`` points inside the hypotheses of ``case_id`` and evaluate slacks.

    x-type arguments are log-uniform on ``x_range``; parameters in ``fixed``
    (``alpha``, ``beta``, ``k``, ``x``, ``y``, ``a``, ``b``, ``c``, ``xs``,
    ``ps``) are held constant.  Deterministic for a given seed.
    """
    if case_id not in CASE_IDS:
        raise KeyError(f"unknown inequality case {case_id!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if printed and case_id not in ("ratio_beta", "note_li_chen"):
        raise ValueError(f"{case_id} has a single reading")
    lo, hi = x_range
    if not 0 < lo < hi:
        raise ValueError("x_range must satisfy 0 < lo < hi")
    rng = np.random.default_rng(seed)
    samples = _sample(case_id, rng, n, lo, hi, fixed or {})
    regime = _check_regime(case_id, samples)
    slack, scale = _evaluate(case_id, samples, printed)
    opts = {"printed": printed} if case_id in ("ratio_beta", "note_li_chen") else {}
    return SweepResult(case_id, regime, samples, np.asarray(slack, float), np.asarray(scale, float), opts)

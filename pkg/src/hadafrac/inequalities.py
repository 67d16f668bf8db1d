"""Numerical verification of log-kernel fractional integral inequalities.

Each check evaluates both sides of one proven inequality for the Hadamard
fractional integral and returns a structured report.  The short identifiers
below name the nine checks shared by the fuzzing harness, the CSV schema,
and the command line:

  T31      Polya-Szego type bound, one order, four envelope functions
  T32      Polya-Szego type bound, two orders
  T33      product bound built from pointwise envelope ratios
  P31      constant-envelope Polya-Szego ratio, one order
  P32      constant-envelope ratio with an explicit two-order prefactor
  P33      constant-envelope product comparison across two orders
  T34      Minkowski-type bound obtained through a Young splitting
  YOUNG    Young product bound
  POWMEAN  power-mean bound for (x + y)^r

Every inequality here is a proven theorem, so a failed check indicates a
numerical or transcription bug, never new mathematics.  The tolerance
policy (pass iff lhs <= bound * (1 + rel_tol) + abs_tol) absorbs only
round-off.  Hypotheses are enforced by sampling: envelopes are checked at
a geometric grid on [1, t] plus every quadrature node in use, and a
violation raises EnvelopeError naming the first offending point.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, EnvelopeError
from .jacobi import build_jacobi_rule
from .operators import _eval_on, hadamard_integral, power_rule_integral
from .randfuncs import ConstantFunction

REL_TOL = 1e-9
ABS_TOL = 1e-12

# Extra geometric sample count used by precondition checks.
ENVELOPE_SAMPLES = 256

HOLDER_TOL = 1e-12


class TheoremId(str, enum.Enum):
    """Identifiers for the nine inequality checks."""

    T31 = "T31"
    T32 = "T32"
    T33 = "T33"
    P31 = "P31"
    P32 = "P32"
    P33 = "P33"
    T34 = "T34"
    YOUNG = "YOUNG"
    POWMEAN = "POWMEAN"


@dataclass(frozen=True)
class BoundingQuadruple:
    """Four positive functions with u1 <= x <= u2 and v1 <= y <= v2."""

    u1: object
    u2: object
    v1: object
    v2: object


@dataclass(frozen=True)
class ConstantBounds:
    """Constant bands 0 < m <= x <= M and 0 < n_lo <= y <= N_hi."""

    m: float
    M: float
    n_lo: float
    N_hi: float

    def __post_init__(self):
        if not (0.0 < self.m <= self.M < math.inf):
            raise DomainError(f"need 0 < m <= M, got m={self.m:g}, M={self.M:g}")
        if not (0.0 < self.n_lo <= self.N_hi < math.inf):
            raise DomainError(
                f"need 0 < n_lo <= N_hi, got n_lo={self.n_lo:g}, N_hi={self.N_hi:g}"
            )


@dataclass(frozen=True)
class HolderPair:
    """Conjugate exponents p, q > 1 with 1/p + 1/q = 1."""

    p: float
    q: float

    def __post_init__(self):
        if not (self.p > 1.0 and self.q > 1.0):
            raise DomainError(f"need p, q > 1, got p={self.p:g}, q={self.q:g}")
        if abs(1.0 / self.p + 1.0 / self.q - 1.0) > HOLDER_TOL:
            raise DomainError(
                f"exponents are not conjugate: 1/{self.p:g} + 1/{self.q:g} != 1"
            )

    @classmethod
    def conjugate(cls, p):
        """Build the pair (p, p / (p - 1)) from a single exponent p > 1."""
        p = float(p)
        if p <= 1.0:
            raise DomainError(f"need p > 1, got {p:g}")
        return cls(p, p / (p - 1.0))


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one inequality check.

    `passed` is lhs <= bound * (1 + rel_tol) + abs_tol; `ratio` is
    lhs / bound (infinite only when bound = 0 < lhs) and `margin` is
    bound - lhs.  `params` records alpha, beta, t, p, q as applicable,
    plus check-specific extras; `seed` is set for fuzzed trials.
    """

    theorem_id: TheoremId
    lhs: float
    bound: float
    ratio: float
    margin: float
    passed: bool
    params: dict = field(default_factory=dict)
    seed: int | None = None


def _report(theorem_id, lhs, bound, params, seed, rel_tol, abs_tol):
    lhs = float(lhs)
    bound = float(bound)
    if bound != 0.0:
        ratio = lhs / bound
    else:
        ratio = math.inf if lhs > 0.0 else 1.0
    return InequalityReport(
        theorem_id=theorem_id,
        lhs=lhs,
        bound=bound,
        ratio=ratio,
        margin=bound - lhs,
        passed=bool(lhs <= bound * (1.0 + rel_tol) + abs_tol),
        params=params,
        seed=seed,
    )


def _integral(f, alpha, t, nodes):
    return hadamard_integral(f, alpha, t, nodes=nodes, estimate_error=False).value


def _sample_points(t, samples, alphas, nodes):
    """Geometric grid on [1, t] plus the quadrature nodes actually used."""
    parts = [t ** np.linspace(0.0, 1.0, samples)]
    for alpha in alphas:
        rule = build_jacobi_rule(float(alpha), nodes)
        parts.append(np.minimum(t, np.maximum(1.0, t ** (1.0 - rule.nodes))))
    return np.unique(np.concatenate(parts))


def verify_envelope(f, lo, hi, t, samples=ENVELOPE_SAMPLES, extra_tau=None):
    """True iff 0 < lo(tau) <= f(tau) <= hi(tau) at every sample point.

    Sample points are `samples` geometrically spaced values in [1, t],
    plus any `extra_tau` supplied by the caller (typically the quadrature
    nodes in use).  Comparisons are non-strict, so tight envelopes pass.
    """
    samples = int(samples)
    if samples < 2:
        raise DomainError(f"samples must be at least 2, got {samples}")
    t = float(t)
    if not t >= 1.0:
        raise DomainError(f"t must satisfy t >= 1, got {t:g}")
    tau = t ** np.linspace(0.0, 1.0, samples)
    if extra_tau is not None:
        tau = np.unique(np.concatenate([tau, np.asarray(extra_tau, dtype=float)]))
    return _envelope_gap(f, lo, hi, tau) is None


def _envelope_gap(f, lo, hi, tau):
    """First (tau, reason) where the envelope fails, or None if it holds."""
    fv = _eval_on(f, tau)
    lov = _eval_on(lo, tau)
    hiv = _eval_on(hi, tau)
    for cond, reason in (
        (lov <= 0.0, "lower envelope is not strictly positive"),
        (fv < lov, "function drops below its lower envelope"),
        (fv > hiv, "function exceeds its upper envelope"),
    ):
        bad = np.flatnonzero(cond)
        if bad.size:
            return float(tau[bad[0]]), reason
    return None


def _require_envelope(name, f, lo, hi, tau):
    gap = _envelope_gap(f, lo, hi, tau)
    if gap is not None:
        where, reason = gap
        raise EnvelopeError(f"{name}: {reason} at tau={where!r}", tau=where)


def _require_nonnegative(name, f, tau):
    fv = _eval_on(f, tau)
    bad = np.flatnonzero(fv < 0.0)
    if bad.size:
        where = float(tau[bad[0]])
        raise EnvelopeError(f"{name} is negative at tau={where!r}", tau=where)


def polya_szego_single(
    x,
    y,
    env,
    alpha,
    t,
    *,
    nodes=64,
    rel_tol=REL_TOL,
    abs_tol=ABS_TOL,
    samples=ENVELOPE_SAMPLES,
    seed=None,
):
    """One-order Polya-Szego type check (T31).

    lhs   = I^a{v1 v2 x^2}(t) * I^a{u1 u2 y^2}(t)
    bound = (1/4) * (I^a{(v1 u1 + v2 u2) x y}(t))^2
    """
    alpha = float(alpha)
    t = float(t)
    tau = _sample_points(t, samples, (alpha,), nodes)
    _require_envelope("x", x, env.u1, env.u2, tau)
    _require_envelope("y", y, env.v1, env.v2, tau)
    u1, u2, v1, v2 = env.u1, env.u2, env.v1, env.v2
    left_a = _integral(lambda s: v1(s) * v2(s) * x(s) ** 2, alpha, t, nodes)
    left_b = _integral(lambda s: u1(s) * u2(s) * y(s) ** 2, alpha, t, nodes)
    cross = _integral(
        lambda s: (v1(s) * u1(s) + v2(s) * u2(s)) * x(s) * y(s), alpha, t, nodes
    )
    params = {"alpha": alpha, "t": t}
    return _report(
        TheoremId.T31, left_a * left_b, 0.25 * cross**2, params, seed, rel_tol, abs_tol
    )


def polya_szego_double(
    x,
    y,
    env,
    alpha,
    beta,
    t,
    *,
    nodes=64,
    rel_tol=REL_TOL,
    abs_tol=ABS_TOL,
    samples=ENVELOPE_SAMPLES,
    seed=None,
):
    """Two-order Polya-Szego type check (T32).

    lhs   = I^a{u1 u2}(t) I^b{v1 v2}(t) I^a{x^2}(t) I^b{y^2}(t)
    bound = (1/4) * (I^a{u1 x}(t) I^b{v1 y}(t) + I^a{u2 x}(t) I^b{v2 y}(t))^2
    """
    alpha = float(alpha)
    beta = float(beta)
    t = float(t)
    tau = _sample_points(t, samples, (alpha, beta), nodes)
    _require_envelope("x", x, env.u1, env.u2, tau)
    _require_envelope("y", y, env.v1, env.v2, tau)
    u1, u2, v1, v2 = env.u1, env.u2, env.v1, env.v2
    lhs = (
        _integral(lambda s: u1(s) * u2(s), alpha, t, nodes)
        * _integral(lambda s: v1(s) * v2(s), beta, t, nodes)
        * _integral(lambda s: x(s) ** 2, alpha, t, nodes)
        * _integral(lambda s: y(s) ** 2, beta, t, nodes)
    )
    cross = _integral(lambda s: u1(s) * x(s), alpha, t, nodes) * _integral(
        lambda s: v1(s) * y(s), beta, t, nodes
    ) + _integral(lambda s: u2(s) * x(s), alpha, t, nodes) * _integral(
        lambda s: v2(s) * y(s), beta, t, nodes
    )
    params = {"alpha": alpha, "beta": beta, "t": t}
    return _report(
        TheoremId.T32, lhs, 0.25 * cross**2, params, seed, rel_tol, abs_tol
    )


def product_bound(
    x,
    y,
    env,
    alpha,
    beta,
    t,
    *,
    nodes=64,
    rel_tol=REL_TOL,
    abs_tol=ABS_TOL,
    samples=ENVELOPE_SAMPLES,
    seed=None,
):
    """Envelope-ratio product check (T33).

    lhs   = I^a{x^2}(t) * I^b{y^2}(t)
    bound = I^a{u2 x y / v1}(t) * I^b{v2 x y / u1}(t)

    Positivity of u1 and v1 is part of the envelope hypothesis, so the
    divisions are safe once the precondition check passes.
    """
    alpha = float(alpha)
    beta = float(beta)
    t = float(t)
    tau = _sample_points(t, samples, (alpha, beta), nodes)
    _require_envelope("x", x, env.u1, env.u2, tau)
    _require_envelope("y", y, env.v1, env.v2, tau)
    u1, u2, v1, v2 = env.u1, env.u2, env.v1, env.v2
    lhs = _integral(lambda s: x(s) ** 2, alpha, t, nodes) * _integral(
        lambda s: y(s) ** 2, beta, t, nodes
    )
    bound = _integral(
        lambda s: u2(s) * x(s) * y(s) / v1(s), alpha, t, nodes
    ) * _integral(lambda s: v2(s) * x(s) * y(s) / u1(s), beta, t, nodes)
    params = {"alpha": alpha, "beta": beta, "t": t}
    return _report(TheoremId.T33, lhs, bound, params, seed, rel_tol, abs_tol)


def _constant_ps_bound(cb):
    low = cb.m * cb.n_lo
    high = cb.M * cb.N_hi
    root = math.sqrt(low / high) + math.sqrt(high / low)
    return 0.25 * root**2


def constant_polya_szego(
    x,
    y,
    cb,
    alpha,
    t,
    *,
    nodes=64,
    rel_tol=REL_TOL,
    abs_tol=ABS_TOL,
    samples=ENVELOPE_SAMPLES,
    seed=None,
):
    """Constant-envelope Polya-Szego ratio check (P31).

    lhs   = I^a{x^2}(t) I^a{y^2}(t) / (I^a{x y}(t))^2
    bound = (1/4) * (sqrt(m n / (M N)) + sqrt(M N / (m n)))^2
    """
    alpha = float(alpha)
    t = float(t)
    tau = _sample_points(t, samples, (alpha,), nodes)
    _require_envelope("x", x, ConstantFunction(cb.m), ConstantFunction(cb.M), tau)
    _require_envelope("y", y, ConstantFunction(cb.n_lo), ConstantFunction(cb.N_hi), tau)
    sq_x = _integral(lambda s: x(s) ** 2, alpha, t, nodes)
    sq_y = _integral(lambda s: y(s) ** 2, alpha, t, nodes)
    cross = _integral(lambda s: x(s) * y(s), alpha, t, nodes)
    lhs = sq_x * sq_y / cross**2
    params = {"alpha": alpha, "t": t}
    return _report(
        TheoremId.P31, lhs, _constant_ps_bound(cb), params, seed, rel_tol, abs_tol
    )


def constant_polya_szego_two_order(
    x,
    y,
    cb,
    alpha,
    beta,
    t,
    *,
    nodes=64,
    rel_tol=REL_TOL,
    abs_tol=ABS_TOL,
    samples=ENVELOPE_SAMPLES,
    seed=None,
):
    """Two-order constant-envelope ratio check (P32).

    lhs   = prefactor * I^a{x^2}(t) I^b{y^2}(t) / (I^a{x}(t) I^b{y}(t))^2
    bound = as in the one-order constant check

    The prefactor (ln t)^(a+b) / (Gamma(a+1) Gamma(b+1)) is evaluated as
    I^a{1}(t) * I^b{1}(t) through the power rule; the two agree to
    round-off, which a unit test pins down.
    """
    alpha = float(alpha)
    beta = float(beta)
    t = float(t)
    tau = _sample_points(t, samples, (alpha, beta), nodes)
    _require_envelope("x", x, ConstantFunction(cb.m), ConstantFunction(cb.M), tau)
    _require_envelope("y", y, ConstantFunction(cb.n_lo), ConstantFunction(cb.N_hi), tau)
    prefactor = power_rule_integral(1.0, alpha, t) * power_rule_integral(1.0, beta, t)
    sq_x = _integral(lambda s: x(s) ** 2, alpha, t, nodes)
    sq_y = _integral(lambda s: y(s) ** 2, beta, t, nodes)
    mean_x = _integral(x, alpha, t, nodes)
    mean_y = _integral(y, beta, t, nodes)
    lhs = prefactor * sq_x * sq_y / (mean_x * mean_y) ** 2
    params = {"alpha": alpha, "beta": beta, "t": t}
    return _report(
        TheoremId.P32, lhs, _constant_ps_bound(cb), params, seed, rel_tol, abs_tol
    )


def ratio_bound_constant(
    x,
    y,
    cb,
    alpha,
    beta,
    t,
    *,
    nodes=64,
    rel_tol=REL_TOL,
    abs_tol=ABS_TOL,
    samples=ENVELOPE_SAMPLES,
    seed=None,
):
    """Constant-envelope product comparison across two orders (P33).

    lhs   = I^a{x^2}(t) * I^b{y^2}(t)
    bound = (M N / (m n)) * I^a{x y}(t) * I^b{x y}(t)
    """
    alpha = float(alpha)
    beta = float(beta)
    t = float(t)
    tau = _sample_points(t, samples, (alpha, beta), nodes)
    _require_envelope("x", x, ConstantFunction(cb.m), ConstantFunction(cb.M), tau)
    _require_envelope("y", y, ConstantFunction(cb.n_lo), ConstantFunction(cb.N_hi), tau)
    lhs = _integral(lambda s: x(s) ** 2, alpha, t, nodes) * _integral(
        lambda s: y(s) ** 2, beta, t, nodes
    )
    factor = (cb.M * cb.N_hi) / (cb.m * cb.n_lo)
    cross_a = _integral(lambda s: x(s) * y(s), alpha, t, nodes)
    cross_b = _integral(lambda s: x(s) * y(s), beta, t, nodes)
    params = {"alpha": alpha, "beta": beta, "t": t}
    return _report(
        TheoremId.P33, lhs, factor * cross_a * cross_b, params, seed, rel_tol, abs_tol
    )


def minkowsky_related(
    x,
    y,
    hp,
    m,
    M,
    alpha,
    t,
    *,
    nodes=64,
    rel_tol=REL_TOL,
    abs_tol=ABS_TOL,
    samples=ENVELOPE_SAMPLES,
    seed=None,
):
    """Minkowski-type check via a Young splitting (T34).

    Requires 0 < m < x/y < M pointwise.  Then

      lhs   = I^a{x y}(t)
      bound = (2^(p-1) M^p / (p (M+1)^p)) * I^a{x^p + y^p}(t)
            + (2^(q-1) / (q (m+1)^q))     * I^a{x^q + y^q}(t)

    The intermediate Young bound

      mid = (1/p) (M/(M+1))^p I^a{(x+y)^p}(t)
          + (1/q) (1/(m+1))^q I^a{(x+y)^q}(t)

    satisfies lhs <= mid <= bound pointwise in exact arithmetic; it is
    recorded in params["young_mid"] so the chain can be audited.
    """
    m = float(m)
    M = float(M)
    if not (0.0 < m < M):
        raise DomainError(f"need 0 < m < M, got m={m:g}, M={M:g}")
    alpha = float(alpha)
    t = float(t)
    tau = _sample_points(t, samples, (alpha,), nodes)
    xv = _eval_on(x, tau)
    yv = _eval_on(y, tau)
    bad = np.flatnonzero(yv <= 0.0)
    if bad.size:
        where = float(tau[bad[0]])
        raise EnvelopeError(f"y is not strictly positive at tau={where!r}", tau=where)
    ratio = xv / yv
    bad = np.flatnonzero((ratio <= m) | (ratio >= M))
    if bad.size:
        where = float(tau[bad[0]])
        raise EnvelopeError(
            f"x/y leaves the open interval ({m:g}, {M:g}) at tau={where!r}", tau=where
        )
    p, q = hp.p, hp.q
    lhs = _integral(lambda s: x(s) * y(s), alpha, t, nodes)
    sum_p = _integral(lambda s: x(s) ** p + y(s) ** p, alpha, t, nodes)
    sum_q = _integral(lambda s: x(s) ** q + y(s) ** q, alpha, t, nodes)
    c_p = 2.0 ** (p - 1.0) * M**p / (p * (M + 1.0) ** p)
    c_q = 2.0 ** (q - 1.0) / (q * (m + 1.0) ** q)
    bound = c_p * sum_p + c_q * sum_q
    mid = (1.0 / p) * (M / (M + 1.0)) ** p * _integral(
        lambda s: (x(s) + y(s)) ** p, alpha, t, nodes
    ) + (1.0 / q) * (1.0 / (m + 1.0)) ** q * _integral(
        lambda s: (x(s) + y(s)) ** q, alpha, t, nodes
    )
    params = {
        "alpha": alpha,
        "t": t,
        "p": p,
        "q": q,
        "m": m,
        "M": M,
        "young_mid": mid,
    }
    return _report(TheoremId.T34, lhs, bound, params, seed, rel_tol, abs_tol)


def young_pointwise_check(
    x,
    y,
    hp,
    alpha,
    t,
    *,
    nodes=64,
    rel_tol=REL_TOL,
    abs_tol=ABS_TOL,
    samples=ENVELOPE_SAMPLES,
    seed=None,
):
    """Young product check (YOUNG): I^a{x y} <= I^a{x^p}/p + I^a{y^q}/q."""
    alpha = float(alpha)
    t = float(t)
    tau = _sample_points(t, samples, (alpha,), nodes)
    _require_nonnegative("x", x, tau)
    _require_nonnegative("y", y, tau)
    p, q = hp.p, hp.q
    lhs = _integral(lambda s: x(s) * y(s), alpha, t, nodes)
    bound = (1.0 / p) * _integral(lambda s: x(s) ** p, alpha, t, nodes) + (
        1.0 / q
    ) * _integral(lambda s: y(s) ** q, alpha, t, nodes)
    params = {"alpha": alpha, "t": t, "p": p, "q": q}
    return _report(TheoremId.YOUNG, lhs, bound, params, seed, rel_tol, abs_tol)


def power_mean_check(
    x,
    y,
    r,
    alpha,
    t,
    *,
    nodes=64,
    rel_tol=REL_TOL,
    abs_tol=ABS_TOL,
    samples=ENVELOPE_SAMPLES,
    seed=None,
):
    """Power-mean check (POWMEAN): I^a{(x+y)^r} <= 2^(r-1) I^a{x^r + y^r}."""
    r = float(r)
    if not r > 1.0:
        raise DomainError(f"need r > 1, got {r:g}")
    alpha = float(alpha)
    t = float(t)
    tau = _sample_points(t, samples, (alpha,), nodes)
    _require_nonnegative("x", x, tau)
    _require_nonnegative("y", y, tau)
    lhs = _integral(lambda s: (x(s) + y(s)) ** r, alpha, t, nodes)
    bound = 2.0 ** (r - 1.0) * _integral(
        lambda s: x(s) ** r + y(s) ** r, alpha, t, nodes
    )
    params = {"alpha": alpha, "t": t, "r": r}
    return _report(TheoremId.POWMEAN, lhs, bound, params, seed, rel_tol, abs_tol)

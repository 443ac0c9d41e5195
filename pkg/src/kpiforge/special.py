"""Distribution tail kernels: regularized incomplete beta/gamma and the
F, Student-t and chi-square tail probabilities built on top of them.

Everything here is pure-python, deterministic and thread-safe.
"""

from __future__ import annotations

import math

_BETA_TOL = 1e-12
_BETA_MAX_ITER = 300

_GAMMA_TOL = 1e-14
_GAMMA_MAX_ITER = 500


class DomainError(ValueError):
    """Argument outside the mathematical domain of a kernel function."""


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    tiny = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, _BETA_MAX_ITER + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETA_TOL:
            return h
    raise ArithmeticError(
        f"incomplete beta continued fraction did not converge "
        f"(a={a}, b={b}, x={x})"
    )


def regularized_incomplete_beta(x: float, a: float, b: float) -> float:
    """I_x(a, b), the regularized incomplete beta function.

    Evaluated by continued fraction, with the symmetry transform
    I_x(a,b) = 1 - I_{1-x}(b,a) applied when x > (a+1)/(a+b+2) so the
    fraction converges fast on either side.
    """
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"x must be in [0, 1], got {x}")
    if a <= 0.0 or b <= 0.0:
        raise DomainError(f"a and b must be positive, got a={a}, b={b}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def _gamma_p_series(a: float, x: float) -> float:
    """Lower regularized gamma P(a, x) by power series, for x < a + 1."""
    ap = a
    total = 1.0 / a
    term = total
    for _ in range(_GAMMA_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _GAMMA_TOL:
            return total * math.exp(-x + a * math.log(x) - math.lgamma(a))
    raise ArithmeticError(f"gamma series did not converge (a={a}, x={x})")


def _gamma_q_contfrac(a: float, x: float) -> float:
    """Upper regularized gamma Q(a, x) by continued fraction, for x >= a + 1."""
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _GAMMA_MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _GAMMA_TOL:
            return h * math.exp(-x + a * math.log(x) - math.lgamma(a))
    raise ArithmeticError(f"gamma continued fraction did not converge (a={a}, x={x})")


def regularized_upper_gamma(a: float, x: float) -> float:
    """Q(a, x) = Gamma(a, x) / Gamma(a), the upper regularized gamma."""
    if a <= 0.0:
        raise DomainError(f"a must be positive, got {a}")
    if x < 0.0:
        raise DomainError(f"x must be non-negative, got {x}")
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_p_series(a, x)
    return _gamma_q_contfrac(a, x)


def f_sf(f: float, d1: int, d2: int) -> float:
    """Right tail P(F(d1, d2) > f) of the F distribution."""
    if f < 0.0:
        raise DomainError(f"f statistic must be non-negative, got {f}")
    if d1 < 1 or d2 < 1:
        raise DomainError(f"degrees of freedom must be >= 1, got ({d1}, {d2})")
    if f == 0.0:
        return 1.0
    # pick the branch whose beta argument is small, so neither argument
    # is formed by cancellation against 1
    if d1 * f > d2:
        x = d2 / (d2 + d1 * f)
        return regularized_incomplete_beta(x, d2 / 2.0, d1 / 2.0)
    y = d1 * f / (d2 + d1 * f)
    return 1.0 - regularized_incomplete_beta(y, d1 / 2.0, d2 / 2.0)


def t_sf_two_tailed(t: float, df: int) -> float:
    """Two-tailed tail 2*P(T(df) > |t|) of Student's t distribution."""
    if df < 1:
        raise DomainError(f"degrees of freedom must be >= 1, got {df}")
    if t == 0.0:
        return 1.0
    if t * t > df:
        x = df / (df + t * t)
        return regularized_incomplete_beta(x, df / 2.0, 0.5)
    y = t * t / (df + t * t)
    return 1.0 - regularized_incomplete_beta(y, 0.5, df / 2.0)


def chi2_sf(x: float, df: int) -> float:
    """Right tail P(Chi2(df) > x), via the upper regularized gamma
    Q(df/2, x/2)."""
    if x < 0.0:
        raise DomainError(f"chi-square statistic must be non-negative, got {x}")
    if df < 1:
        raise DomainError(f"degrees of freedom must be >= 1, got {df}")
    return regularized_upper_gamma(df / 2.0, x / 2.0)

"""Special functions: Lobachevsky function and derivatives, regularized
incomplete beta, digamma/trigamma, Kolmogorov distribution tail.

All functions are deterministic pure functions with fixed truncation rules.
"""

import math

from . import _kernels
from .errors import PoleAtMultipleOfPi

lobachevsky = _kernels.lobachevsky


def lobachevsky_deriv(theta):
    """d/dtheta of the Lobachevsky function: -log|2 sin theta|."""
    s = math.sin(theta)
    if s == 0.0:
        raise PoleAtMultipleOfPi(f"derivative diverges at theta={theta!r}")
    return -math.log(2.0 * abs(s))

def lobachevsky_second_deriv(theta):
    """Second derivative -cot(theta) on (0, pi).

    Changes sign at pi/2; the volume objective is nevertheless strictly
    concave on the triangle-sum constraint surface, which is where the
    optimizer uses this.
    """
    if not 0.0 < theta < math.pi:
        raise ValueError(f"theta={theta!r} outside (0, pi)")
    return -math.cos(theta) / math.sin(theta)


def _betacf(a, b, x):
    # Lentz's continued fraction for the incomplete beta integral.
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
    for m in range(1, 500):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
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
        if abs(delta - 1.0) < 1e-15:
            return h
    raise ValueError("incomplete beta continued fraction did not converge")


def regularized_incomplete_beta(a, b, x):
    """I_x(a, b) via the continued fraction with the symmetry reduction."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    lbeta = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(lbeta)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


# Bernoulli-number coefficients B_{2n}/(2n) for the digamma asymptotic series.
_DIGAMMA_COEFFS = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def digamma(x):
    """psi(x) for x > 0: recurrence to x >= 10, then the asymptotic series."""
    if x <= 0.0:
        raise ValueError("digamma requires x > 0")
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    p = inv2
    for c in _DIGAMMA_COEFFS:
        series += c * p
        p *= inv2
    return acc + math.log(x) - 0.5 / x - series


def trigamma(x):
    """psi'(x) for x > 0, same recurrence/asymptotic strategy as digamma."""
    if x <= 0.0:
        raise ValueError("trigamma requires x > 0")
    acc = 0.0
    while x < 10.0:
        acc += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    # 1/x + 1/(2x^2) + sum B_{2n} x^(-2n-1)
    series = inv + 0.5 * inv2
    p = inv2 * inv
    for b2n in (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0):
        series += b2n * p
        p *= inv2
    return acc + series


def kolmogorov_tail(lam):
    """Q(lambda) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2), Q(0) = 1."""
    if lam < 0.0:
        raise ValueError("lambda must be nonnegative")
    if lam < 1e-8:
        return 1.0
    total = 0.0
    sign = 1.0
    for k in range(1, 100000):
        term = math.exp(-2.0 * k * k * lam * lam)
        total += sign * term
        if term < 1e-12:
            break
        sign = -sign
    return min(1.0, max(0.0, 2.0 * total))

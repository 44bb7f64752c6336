"""Classical Bessel functions of integer order, the mu = 0 baseline.

Every deformed family degenerates to these, and the connection formulas sum
them, so the float series here is written with the same term recurrence the
deformed families reuse: ``t[k+1] = -t[k] (x/2)**2 / ((k+1)(k+n+1))``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ._summation import DomainError, Evaluation, check_tol, evaluate_series
from .quadrature import gauss_jacobi
from .series import PowerSeries


def bessel_term_builder(n: int, x, deform=None, first_factor=1.0):
    """Builder for ``sum_k (-1)^k / (k! (k+n)!) (x/2)^(2k+n) * d_k``.

    ``deform(conv) -> (d0, ratio_k)`` supplies an optional multiplicative
    deformation ``d_k`` through its ratio; a ratio that is exactly 1.0 leaves
    the classical terms bit-for-bit unchanged.  The sum starts at
    ``k0 = max(0, -n)`` (reciprocal-factorial convention).
    """
    k0 = max(0, -n)
    ax = abs(x)

    def build(conv):
        xc = conv(x)
        half = xc / 2
        y = half * half
        # first term (-1)^k0 (x/2)^(2k0+n) / (k0! (k0+n)!)
        t = conv(1.0)
        for _ in range(2 * k0 + n):
            t = t * half
        t = t / (math.factorial(k0) * math.factorial(k0 + n))
        if k0 % 2:
            t = -t
        if deform is not None:
            d0, dratio = deform(conv)
            t = t * d0
        else:
            dratio = None

        def ratio(k):
            r = -y / ((k + 1) * (k + n + 1))
            if dratio is not None:
                r = r * dratio(k)
            return r

        def bound(k):
            # deformation ratios never exceed 1 for mu >= 0
            return (ax * ax / 4) / ((k + 1) * (k + n + 1)) if k + n + 1 > 0 else math.inf

        return t, ratio, bound

    return build, k0


def _series_eval(n: int, x, tol: float, deform=None) -> Evaluation:
    build, k0 = bessel_term_builder(n, x, deform)
    return evaluate_series(build, tol, start=k0)


def bessel_j(n: int, x, tol: float = 1e-14) -> Evaluation:
    """``J_n(x)`` for any integer ``n`` (``J_{-n} = (-1)^n J_n``)."""
    check_tol(tol)
    if int(n) != n:
        raise DomainError(f"integer order required, got {n!r}")
    n = int(n)
    if n < 0:
        ev = _series_eval(-n, x, tol)
        return Evaluation(-ev.value if n % 2 else ev.value, ev.abs_err_est, ev.work)
    return _series_eval(n, x, tol)


def bessel_j_coeffs(n: int, order: int) -> PowerSeries:
    """Exact coefficients of ``J_n`` (``n >= 0``) through ``x**order``."""
    if n < 0:
        raise DomainError("coefficients are defined for n >= 0; use parity for negative n")
    c = [Fraction(0)] * (order + 1)
    k = 0
    while 2 * k + n <= order:
        c[2 * k + n] = Fraction((-1) ** k, math.factorial(k) * math.factorial(k + n) * 2 ** (2 * k + n))
        k += 1
    return PowerSeries(tuple(c))


def poisson_nodes(x: float) -> int:
    """Node count for the oscillatory ``cos(s x)`` integrand."""
    return int(math.ceil(abs(x) / 2)) + 20


def bessel_j_poisson(n: int, x: float, m: int | None = None) -> Evaluation:
    """``J_n(x) = (x/2)^n / (Gamma(1/2) Gamma(n+1/2)) int (1-s^2)^(n-1/2) cos(sx) ds``."""
    if n < 0:
        raise DomainError("Poisson formula needs n >= 0")
    m = poisson_nodes(x) if m is None else m
    pref = (x / 2) ** n / (math.gamma(0.5) * math.gamma(n + 0.5))

    def q(nodes):
        rule = gauss_jacobi(n - 0.5, n - 0.5, nodes)
        return pref * rule.integrate(lambda s: math.cos(s * x))

    coarse, fine = q(m), q(2 * m)
    return Evaluation(fine, abs(fine - coarse), 3 * m)


def addition_cutoff(x: float, y: float, tol: float, cap: int = 60) -> int:
    """Smallest K with ``|J_K(max(|x|, |y|))| < tol / 10``, bounded by ``cap``."""
    z = max(abs(x), abs(y))
    for k in range(1, cap + 1):
        if k > z and abs(bessel_j(k, z).value) < tol / 10:
            return k
    return cap


def addition_residual(n: int, x: float, y: float, tol: float = 1e-12, K: int | None = None) -> Evaluation:
    """``|J_n(x+y) - sum_{|k|<=K} J_k(x) J_{n-k}(y)|``."""
    K = addition_cutoff(x, y, tol) if K is None else K
    terms = [bessel_j(k, x).value * bessel_j(n - k, y).value for k in range(-K, K + 1)]
    lhs = bessel_j(n, x + y)
    diff = abs(lhs.value - math.fsum(terms))
    return Evaluation(diff, lhs.abs_err_est + 1e-16 * (2 * K + 1), 2 * K + 1)

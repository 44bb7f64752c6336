"""One-dimensional Dunkl calculus.

The Dunkl operator ``D f(x) = f'(x) + mu (f(x) - f(-x)) / x`` acts diagonally on
monomials, ``D x**n = [n] x**(n-1)`` with the deformed integer
``[n] = n + mu (1 - (-1)**n)``.  Everything here is built on that one fact:
factorials, binomials, the deformed exponential ``E_mu``, the intertwining
operator ``V_mu`` and the generalized translation ``tau_y``.

Scalars follow the input: a :class:`fractions.Fraction` (or int) ``mu`` gives
exact results, a float ``mu`` gives floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

from ._summation import DomainError, Evaluation, check_tol, evaluate_series
from .quadrature import gauss_jacobi
from .series import PowerSeries, is_exact_scalar


@dataclass(frozen=True)
class DeformationParameter:
    """The Dunkl index ``mu >= 0``."""

    mu: Union[float, Fraction]

    def __post_init__(self):
        if isinstance(self.mu, bool) or not (self.mu >= 0):
            raise DomainError(f"mu must be >= 0, got {self.mu!r}")

    @property
    def exact(self) -> bool:
        return is_exact_scalar(self.mu)

    def require_integral(self) -> None:
        """Integral representations carry ``(1-t)**(mu-1)``; need mu > 0."""
        if not self.mu > 0:
            raise DomainError("integral representation requires mu > 0 (weight (1-t)^(mu-1))")


MuLike = Union[DeformationParameter, float, Fraction, int]


def mu_value(mu: MuLike):
    """Unwrap ``mu``.  Plain numbers are taken as-is (formal, possibly negative)."""
    return mu.mu if isinstance(mu, DeformationParameter) else mu


def checked_mu(mu: MuLike):
    """Unwrap ``mu`` and enforce ``mu >= 0``."""
    if isinstance(mu, DeformationParameter):
        return mu.mu
    return DeformationParameter(mu).mu


# -- deformed arithmetic ------------------------------------------------------------


def deformed_integer(n: int, mu: MuLike):
    """``[n] = n + mu (1 - (-1)**n)``: ``n`` for even ``n``, ``n + 2 mu`` for odd."""
    mu = mu_value(mu)
    return n + 2 * mu if n % 2 else n + 0 * mu


@lru_cache(maxsize=4096, typed=True)  # Fraction(1,4) == 0.25 must not share an entry
def _factorial(n: int, mu):
    acc = 1 + 0 * mu
    for j in range(1, n + 1):
        acc = acc * deformed_integer(j, mu)
    return acc


def deformed_factorial(n: int, mu: MuLike):
    """``[n]! = [n][n-1]...[1]`` with ``[0]! = 1``."""
    if n < 0:
        raise DomainError(f"deformed factorial needs n >= 0, got {n}")
    return _factorial(n, mu_value(mu))


def inverse_deformed_factorial(n: int, mu: MuLike):
    """``1/[n]!``, extended by zero to negative ``n`` like ``1/Gamma`` at the poles."""
    mu = mu_value(mu)
    if n < 0:
        return 0 * mu
    f = _factorial(n, mu)
    return Fraction(1) / f if is_exact_scalar(f) else 1.0 / f


def deformed_binomial(n: int, k: int, mu: MuLike):
    mu = mu_value(mu)
    if k < 0 or k > n:
        return 0 * mu
    return _factorial(n, mu) / (_factorial(k, mu) * _factorial(n - k, mu))


def pochhammer(a, k: int):
    """Rising factorial ``a (a+1) ... (a+k-1)``."""
    if k < 0:
        raise DomainError(f"Pochhammer index must be >= 0, got {k}")
    acc = a ** 0
    for j in range(k):
        acc = acc * (a + j)
    return acc


def odd_ratio(j: int, mu):
    """``j/[j]`` for odd ``j``; evaluates to exactly 1 when mu = 0."""
    if is_exact_scalar(mu):
        return Fraction(j) / deformed_integer(j, mu)
    return j / deformed_integer(j, mu)


def factorial_ratio(n: int, mu: MuLike):
    """``n!/[n]!`` as a product of ``j/[j]`` over odd ``j``."""
    mu = mu_value(mu)
    acc = 1 + 0 * mu
    for j in range(1, n + 1, 2):
        acc = acc * odd_ratio(j, mu)
    return acc


def log_beta_half(mu: float) -> float:
    """``log B(1/2, mu)``."""
    return math.lgamma(0.5) + math.lgamma(mu) - math.lgamma(mu + 0.5)


def beta_half(mu: float) -> float:
    """``B(1/2, mu)``; log-space above mu = 30 to keep Gamma finite."""
    mu = float(mu)
    if mu > 30:
        return math.exp(log_beta_half(mu))
    return math.gamma(0.5) * math.gamma(mu) / math.gamma(mu + 0.5)


# -- deformed exponential -----------------------------------------------------------


def e_mu(x, mu: MuLike, tol: float = 1e-14) -> Evaluation:
    """``E_mu(x) = sum x**n / [n]!`` (``x`` may be complex).

    Stops once the geometric majorant of the tail is below ``tol`` times the
    partial sum and the index has passed ``|x|``.
    """
    check_tol(tol)
    m = float(checked_mu(mu))
    ax = abs(x)

    def build(conv):
        xc = conv(x)
        mc = conv(m)

        def ratio(k):
            j = k + 1
            return xc / (j + 2 * mc) if j % 2 else xc / (j + 0 * mc)

        def bound(k):
            return ax / (k + 1)

        return conv(1.0), ratio, bound

    return evaluate_series(build, tol, min_index=int(ax) + 1)


def e_mu_coeffs(mu: MuLike, order: int, lam=1) -> PowerSeries:
    """Coefficients of ``E_mu(lam x)`` through ``x**order``."""
    mu = mu_value(mu)
    return PowerSeries(tuple(lam ** k * inverse_deformed_factorial(k, mu) for k in range(order + 1)))


# -- operators on truncated series --------------------------------------------------


def dunkl_apply(s: PowerSeries, mu: MuLike) -> PowerSeries:
    """``D_mu`` on a truncated series; the order drops by one."""
    mu = mu_value(mu)
    if s.order == 0:
        return PowerSeries((s[0] * 0,))
    return PowerSeries(tuple(deformed_integer(k, mu) * s[k] for k in range(1, s.order + 1)))


def x_dunkl_plus(s: PowerSeries, mu: MuLike, c=0) -> PowerSeries:
    """``(x D_mu + c)``, diagonal on monomials with eigenvalue ``[k] + c``."""
    mu = mu_value(mu)
    return s.diagonal(lambda k: deformed_integer(k, mu) + c)


def intertwine_coeff(s: PowerSeries, mu: MuLike) -> PowerSeries:
    """``V_mu`` on coefficients: ``x**n -> n!/[n]! x**n``."""
    mu = mu_value(mu)
    out = []
    r = 1 + 0 * mu
    for k, a in enumerate(s):
        if k % 2 == 1:
            r = r * odd_ratio(k, mu)
        out.append(r * a)
    return PowerSeries(tuple(out))


def _intertwine_rule_sum(f: Callable, x: float, m_value: float, nodes: int) -> float:
    rule = gauss_jacobi(m_value - 1.0, m_value, nodes)
    return rule.integrate(lambda t: f(x * t)) / beta_half(m_value)


def intertwine_quad(f: Callable, x: float, mu: MuLike, m: int = 32) -> Evaluation:
    """``V_mu f (x)`` by Gauss-Jacobi on ``(1-t)**(mu-1) (1+t)**mu``.

    The error estimate is the change when the node count is doubled.
    """
    p = mu if isinstance(mu, DeformationParameter) else DeformationParameter(mu)
    p.require_integral()
    if m < 2:
        raise DomainError(f"need at least 2 nodes, got {m}")
    mv = float(p.mu)
    coarse = _intertwine_rule_sum(f, x, mv, m)
    fine = _intertwine_rule_sum(f, x, mv, 2 * m)
    return Evaluation(fine, abs(fine - coarse), 3 * m)


def translate(s: PowerSeries, y, mu: MuLike) -> PowerSeries:
    """Generalized translation ``tau_y`` on a truncated series in ``x``.

    Uses ``tau_y x**n = sum_k binom_mu(n, k) x**k y**(n-k)``.
    """
    mu = mu_value(mu)
    out = []
    for k in range(s.order + 1):
        acc = s[k] * 0
        ypow = y ** 0
        for j in range(k, s.order + 1):
            if s[j] != 0:
                acc = acc + s[j] * deformed_binomial(j, k, mu) * ypow
            ypow = ypow * y
        out.append(acc)
    return PowerSeries(tuple(out))

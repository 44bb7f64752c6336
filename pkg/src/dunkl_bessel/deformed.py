"""The deformed Bessel families.

``J_MU``      ``J_n^mu = V_mu(J_n)``; series with ``(2k+n)!/[2k+n]!``.
``CAL_J_MU``  the Poisson-formula deformation; series with ``(2k)!/[2k]!``.
``D1``        ``sum (-1)^k / (k! [k+n]!) (x/2)^(2k+n)``.
``D2``        ``sum (-1)^k / ([k]! (k+n)!) (x/2)^(2k+n)``.
``D3``        ``sum (-1)^k / ([k]! [k+n]!) (x/2)^(2k+n)``.

Each family is the classical series times a deformation factor ``d_k`` that
is a product of ratios ``j/[j]``.  Those ratios are exactly 1.0 in floating
point when mu = 0, so every family reproduces :func:`bessel_j` bit for bit in
the classical limit.

Negative orders: ``J_MU`` uses parity; the other families start their sum at
``k = max(0, -n)`` (``1/m! = 1/[m]! = 0`` for ``m < 0``), which is exactly the
coefficient of ``t**n`` in the family's generating function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable

from scipy import special

from ._summation import EPS, DomainError, Evaluation, check_tol
from .classical import bessel_j, bessel_term_builder, poisson_nodes
from .dunkl import (
    checked_mu,
    deformed_integer,
    dunkl_apply,
    e_mu,
    factorial_ratio,
    inverse_deformed_factorial,
    mu_value,
    odd_ratio,
    translate,
    x_dunkl_plus,
)
from .hypergeom import ASYMPTOTIC_X_MIN, HypergeometricSpec, pfq
from .quadrature import gauss_jacobi
from .series import PowerSeries, is_exact_scalar

from ._summation import evaluate_series


class Family(str, Enum):
    CLASSICAL = "classical"
    J_MU = "jmu"
    CAL_J_MU = "caljmu"
    D1 = "d1"
    D2 = "d2"
    D3 = "d3"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, Family):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            names = ", ".join(f.value for f in cls)
            raise DomainError(f"unknown family {value!r}; expected one of {names}") from None


DEFORMED = (Family.J_MU, Family.CAL_J_MU, Family.D1, Family.D2, Family.D3)


def _half_floor(n: int) -> int:
    """``floor((n+1)/2)``."""
    return (n + 1) // 2


@dataclass(frozen=True)
class BetaShift:
    value: object


def beta_shift(n: int, mu) -> BetaShift:
    """``2 floor((n+1)/2) - [n]``: 0 for even n, ``1 - 2 mu`` for odd n."""
    mu = mu_value(mu)
    via_floor = 2 * _half_floor(n) - deformed_integer(n, mu)
    branch = (1 - 2 * mu) if n % 2 else 0 * mu
    if via_floor != branch:
        raise AssertionError(f"beta_n branches disagree at n={n}: {via_floor} vs {branch}")
    return BetaShift(branch)


# -- series evaluation --------------------------------------------------------------


def _deformation(family: Family, n: int, mu: float) -> Callable | None:
    """``conv -> (d_k0, ratio d_{k+1}/d_k)`` for the float/mp summation."""
    k0 = max(0, -n)

    def one(k):
        return 1

    if family is Family.J_MU:
        def make(conv):
            m = conv(mu)

            def ratio(k):
                j = 2 * k + n + 1 + (n % 2)
                return odd_ratio(j, m)

            return factorial_ratio(n, m), ratio
    elif family is Family.CAL_J_MU:
        def make(conv):
            m = conv(mu)
            return factorial_ratio(2 * k0, m), lambda k: odd_ratio(2 * k + 1, m)
    elif family is Family.D1:
        def make(conv):
            m = conv(mu)

            def ratio(k):
                j = k + n + 1
                return odd_ratio(j, m) if j % 2 else 1

            return factorial_ratio(k0 + n, m), ratio
    elif family is Family.D2:
        def make(conv):
            m = conv(mu)

            def ratio(k):
                j = k + 1
                return odd_ratio(j, m) if j % 2 else 1

            return factorial_ratio(k0, m), ratio
    elif family is Family.D3:
        def make(conv):
            m = conv(mu)

            def ratio(k):
                a, b = k + 1, k + n + 1
                r = odd_ratio(a, m) if a % 2 else 1
                return r * odd_ratio(b, m) if b % 2 else r

            return factorial_ratio(k0, m) * factorial_ratio(k0 + n, m), ratio
    else:
        return None
    return make


def eval(family, n: int, mu, x, tol: float = 1e-14) -> Evaluation:  # noqa: A001 - public name
    """Direct series value of ``family`` at order ``n``."""
    family = Family.parse(family)
    check_tol(tol)
    m = float(checked_mu(mu))
    n = int(n)
    if family is Family.CLASSICAL:
        return bessel_j(n, x, tol)
    if family is Family.J_MU and n < 0:
        ev = eval(family, -n, m, x, tol)
        return Evaluation(-ev.value if n % 2 else ev.value, ev.abs_err_est, ev.work)
    build, k0 = bessel_term_builder(n, x, _deformation(family, n, m))
    return evaluate_series(build, tol, start=k0)


def _coefficient(family: Family, n: int, k: int, mu):
    """Coefficient of ``(-1)^k (x/2)^(2k+n)`` in the defining series."""
    exact = is_exact_scalar(mu)
    fact = (lambda j: Fraction(1, math.factorial(j)) if j >= 0 else Fraction(0)) if exact else (
        lambda j: 1.0 / math.factorial(j) if j >= 0 else 0.0)
    inv = lambda j: inverse_deformed_factorial(j, mu)  # noqa: E731
    if family is Family.CLASSICAL:
        return fact(k) * fact(k + n)
    if family is Family.J_MU:
        return math.factorial(2 * k + n) * fact(k) * fact(k + n) * inv(2 * k + n)
    if family is Family.CAL_J_MU:
        return math.factorial(2 * k) * fact(k) * fact(k + n) * inv(2 * k)
    if family is Family.D1:
        return fact(k) * inv(k + n)
    if family is Family.D2:
        return inv(k) * fact(k + n)
    if family is Family.D3:
        return inv(k) * inv(k + n)
    raise DomainError(f"no series for {family}")


def coeffs(family, n: int, mu, order: int) -> PowerSeries:
    """Coefficients through ``x**order``; exact when ``mu`` is a Fraction/int.

    ``mu`` is taken formally here (negative values are allowed), since the
    superscript identities need the families at ``mu - 1``.
    """
    family = Family.parse(family)
    mu = mu_value(mu)
    if order < 0:
        raise DomainError("order must be >= 0")
    exact = is_exact_scalar(mu)
    zero = Fraction(0) if exact else 0.0
    if family in (Family.J_MU, Family.CLASSICAL) and n < 0:
        s = coeffs(family, -n, mu, order)
        return s.scale(-1) if n % 2 else s
    c = [zero] * (order + 1)
    k = max(0, -n)
    while 2 * k + n <= order:
        d = 2 * k + n
        v = _coefficient(family, n, k, mu)
        v = v / (2 ** d) if exact else v / 2.0 ** d
        c[d] = -v if k % 2 else v
        k += 1
    return PowerSeries(tuple(c))


def hyp_form(family, n: int, mu, x, tol: float = 1e-14) -> Evaluation:
    """Prefactor times 1F2 at ``-x**2/4``."""
    family = Family.parse(family)
    m = float(checked_mu(mu))
    if n < 0:
        raise DomainError("the 1F2 form is stated for n >= 0")
    if family is Family.J_MU:
        h = _half_floor(n)
        spec = HypergeometricSpec((h + 0.5,), (n + 1.0, h + m + 0.5))
        pref = float(factorial_ratio(n, m)) / math.factorial(n)
    elif family is Family.CAL_J_MU:
        spec = HypergeometricSpec((0.5,), (n + 1.0, m + 0.5))
        pref = 1.0 / math.factorial(n)
    else:
        raise DomainError("1F2 forms exist for jmu and caljmu only")
    pref *= (x / 2) ** n
    inner = pfq(spec.reduced(), -x * x / 4, tol)
    return Evaluation(pref * inner.value, abs(pref) * inner.abs_err_est, inner.work)


# -- generating functions -----------------------------------------------------------


def order_bound(n: int, x: float) -> float:
    """Majorant ``I_|n|(|x|)`` of ``|family_n(x)|`` valid for every family, mu >= 0."""
    a = abs(n)
    h = abs(x) / 2
    if h == 0:
        return 1.0 if a == 0 else 0.0
    return math.exp(a * math.log(h) - math.lgamma(a + 1) + h * h / (a + 1))


def outside_mass(N: int, x: float) -> float:
    """Bound on ``sum_{|n| > N} |c_n|``."""
    total = 0.0
    n = N + 1
    while True:
        b = order_bound(n, x)
        total += 2 * b
        if b < 1e-30 * max(total, 1e-300) or n > N + 400:
            break
        n += 1
    return total


def auto_half_width(family, mu, x: float, tol: float = 1e-12, cap: int = 64) -> int:
    """Smallest N whose leading series term at x is below tol/10."""
    family = Family.parse(family)
    m = mu_value(mu)
    for N in range(1, cap + 1):
        lead = abs(coeffs(family, N, float(m), N)[N]) * abs(x) ** N
        if lead < tol / 10:
            return N
    return cap


def _exp_tail(z: float, order: int) -> float:
    """Bound on ``sum_{i > order} z**i / i!``."""
    z = abs(z)
    t = z ** (order + 1) / math.factorial(order + 1) if z else 0.0
    r = z / (order + 2)
    return t / (1 - r) if r < 1 else math.inf


def default_order(x: float, N: int) -> int:
    order = max(2 * N, 8)
    while _exp_tail(abs(x), order) * math.exp(abs(x)) > 1e-18:
        order += 1
    return order


@dataclass(frozen=True)
class LaurentWindow:
    family: Family
    mu: float
    center_x: float
    half_width: int
    coeffs: dict = field(default_factory=dict)
    tail_bound: float = 0.0

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def at(self, t) -> complex | float:
        return math.fsum(c * t ** n for n, c in self.coeffs.items()) if isinstance(t, float) else sum(
            c * t ** n for n, c in self.coeffs.items())


def _one_sided(family: Family, mu: float, x: float, order: int):
    """Coefficient lists (in t and in 1/t) of the family's generating product."""
    h = x / 2
    e_cls = [h ** i / math.factorial(i) for i in range(order + 1)]
    e_def = [h ** i * float(inverse_deformed_factorial(i, mu)) for i in range(order + 1)]
    neg = lambda seq: [(-1) ** i * v for i, v in enumerate(seq)]  # noqa: E731
    if family is Family.CLASSICAL:
        return e_cls, neg(e_cls)
    if family is Family.CAL_J_MU:
        # e^{xt/2} 1F1(1/2; mu+1/2; -x/(2t))
        b = []
        c = 1.0
        for j in range(order + 1):
            b.append(c)
            c *= (0.5 + j) / ((j + 1) * (mu + 0.5 + j)) * (-h)
        return e_cls, b
    if family is Family.D1:
        return e_def, neg(e_cls)
    if family is Family.D2:
        return e_cls, neg(e_def)
    if family is Family.D3:
        return e_def, neg(e_def)
    raise DomainError(f"{family} has no one-sided product form")


def generating_window(family, mu, x: float, N: int | None = None, order: int | None = None) -> LaurentWindow:
    """Laurent coefficients ``c_n``, ``|n| <= N``, of the generating function at x."""
    family = Family.parse(family)
    m = float(checked_mu(mu))
    x = float(x)
    if N is None:
        N = auto_half_width(family, m, x)
    if N < 1:
        raise DomainError("half-width N must be >= 1")
    if order is None:
        order = default_order(x, N)
    if order < 2 * N:
        raise DomainError(f"order must be >= 2N = {2 * N}, got {order}")
    buckets: dict[int, list] = {n: [] for n in range(-N, N + 1)}
    h = x / 2
    if family is Family.J_MU:
        # E_mu((x/2)(t - 1/t)) = sum_m (x/2)^m/[m]! sum_j C(m,j) (-1)^j t^(m-2j)
        for mdeg in range(order + 1):
            a = h ** mdeg * float(inverse_deformed_factorial(mdeg, m))
            for j in range(mdeg + 1):
                n = mdeg - 2 * j
                if -N <= n <= N:
                    buckets[n].append(a * math.comb(mdeg, j) * (-1) ** j)
        trunc = _exp_tail(x, order)
        scale = math.exp(abs(x))
    else:
        a, b = _one_sided(family, m, x, order)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                n = i - j
                if -N <= n <= N:
                    buckets[n].append(ai * bj)
        trunc = 2 * math.exp(abs(h)) * _exp_tail(h, order)
        scale = math.exp(abs(x))
    out = {n: math.fsum(v) for n, v in buckets.items()}
    rounding = 4 * EPS * scale * (order + 1)
    tail = trunc + rounding + outside_mass(N, x)
    return LaurentWindow(family, m, x, N, out, tail)


# -- integral representations -------------------------------------------------------


def fourier_coefficient(n: int, mu, x: float, M: int | None = None) -> Evaluation:
    """``(1/2pi) int E_mu(i x sin th) e^{-i n th} dth`` by the periodic trapezoid rule."""
    m = float(checked_mu(mu))
    need = 4 * (abs(n) + abs(x) + 8)
    if M is None:
        M = 2 * int(math.ceil(need / 2))
    if M < need or M % 2:
        raise DomainError(f"grid M must be even and >= {need}, got {M}")
    re_parts, im_parts = [], []
    err = 0.0
    for j in range(M):
        th = -math.pi + 2 * math.pi * j / M
        ev = e_mu(1j * x * math.sin(th), m, 1e-15)
        v = ev.value * complex(math.cos(n * th), -math.sin(n * th))
        re_parts.append(v.real)
        im_parts.append(v.imag)
        err += ev.abs_err_est
    re = math.fsum(re_parts) / M
    im = math.fsum(im_parts) / M
    alias = outside_mass(M - abs(n) - 1, x)
    return Evaluation(re, abs(im) + err / M + alias, M)


def poisson_eval(family, n: int, mu, x: float, m: int | None = None) -> Evaluation:
    """Deformed Poisson integrals against ``(1 - s**2)**(n - 1/2)``."""
    family = Family.parse(family)
    mv = float(checked_mu(mu))
    if n < 0:
        raise DomainError("Poisson formula needs n >= 0")
    m = poisson_nodes(x) if m is None else m
    if m < 2:
        raise DomainError(f"need at least 2 nodes, got {m}")
    pref = (x / 2) ** n / (math.gamma(0.5) * math.gamma(n + 0.5))
    if family is Family.J_MU:
        h = _half_floor(n)
        spec = HypergeometricSpec((h + 0.5,), (0.5, h + mv + 0.5)).reduced()
        pref *= float(factorial_ratio(n, mv))

        def integrand(s):
            return pfq(spec, -(s * x) ** 2 / 4, 1e-15).value, 0.0
    elif family is Family.CAL_J_MU:
        def integrand(s):
            v = e_mu(1j * s * x, mv, 1e-15).value
            return v.real, v.imag
    else:
        raise DomainError("Poisson formulas exist for jmu and caljmu only")

    def q(nodes):
        rule = gauss_jacobi(n - 0.5, n - 0.5, nodes)
        vals = [integrand(s) for s in rule.nodes]
        re = math.fsum(w * v[0] for w, v in zip(rule.weights, vals))
        im = math.fsum(w * v[1] for w, v in zip(rule.weights, vals))
        return pref * re, abs(pref * im)

    (c_re, _), (f_re, f_im) = q(m), q(2 * m)
    return Evaluation(f_re, abs(f_re - c_re) + f_im, 3 * m)


# -- connection formulas ------------------------------------------------------------


def connection_eval(family, n: int, mu, x: float, K: int = 40) -> Evaluation:
    """Partial sum over ``k <= K`` of the expansion in classical ``J_{n +- k}``."""
    family = Family.parse(family)
    mv = float(checked_mu(mu))
    if K < 1:
        raise DomainError("K must be >= 1")
    if family is Family.J_MU and n < 0:
        ev = connection_eval(family, -n, mv, x, K)
        return Evaluation(-ev.value if n % 2 else ev.value, ev.abs_err_est, ev.work)
    if family is Family.J_MU:
        lower, z, step, pref = _half_floor(n) + mv + 0.5, x / 2, 1, float(factorial_ratio(n, mv))
    elif family is Family.CAL_J_MU:
        lower, z, step, pref = mv + 0.5, x / 2, 1, 1.0
    elif family is Family.D1:
        lower, z, step, pref = 2 * mv + 1, -x, -1, 1.0
    elif family is Family.D2:
        lower, z, step, pref = 2 * mv + 1, x, 1, 1.0
    else:
        raise DomainError(f"no connection formula for {family.value}")
    terms = []
    err = 0.0
    c = 1.0
    for k in range(K + 1):
        bj = bessel_j(n + step * k, x)
        terms.append(c * bj.value)
        err += abs(c) * bj.abs_err_est
        c *= (mv + k) / ((k + 1) * (lower + k)) * z
    value = pref * math.fsum(terms)
    err = abs(pref) * (err + abs(terms[-1]) + EPS * math.fsum(abs(t) for t in terms))
    return Evaluation(value, err, K + 1)


# -- coefficient-level identities ---------------------------------------------------


def _require_exact(mu):
    mu = mu_value(mu)
    if not is_exact_scalar(mu):
        raise DomainError("exactness checks need a rational mu (Fraction or int)")
    return Fraction(mu)


def apply_ode_operator(family, n: int, mu, y: PowerSeries, perturb=0) -> PowerSeries:
    """The third-order Dunkl operator annihilating ``family_n``, applied to ``y``.

    ``perturb`` shifts the constant of the innermost factor (harness self-test).
    """
    family = Family.parse(family)
    mu = mu_value(mu)
    if family is Family.J_MU:
        shift = beta_shift(n, mu).value
    elif family is Family.CAL_J_MU:
        shift = -deformed_integer(n, mu)
    else:
        raise DomainError("the third-order equation is stated for jmu and caljmu")
    inner = x_dunkl_plus(y, mu, shift + 2 * mu - 1 + perturb)
    cubic = x_dunkl_plus(x_dunkl_plus(inner, mu, -deformed_integer(-n, mu)), mu, -deformed_integer(n, mu))
    quad = x_dunkl_plus(y, mu, shift + 1).shift(2)
    return cubic + quad


def ode_residual(family, n: int, mu, order: int, perturb=0) -> PowerSeries:
    mu = _require_exact(mu)
    if order < n + 4:
        raise DomainError(f"order must be >= n + 4 = {n + 4}")
    return apply_ode_operator(family, n, mu, coeffs(family, n, mu, order), perturb)


def _recurrences():
    """id -> (family, fn(n, mu, order) -> (residual, member builder))."""
    xD = x_dunkl_plus  # noqa: N806
    br = deformed_integer

    def J(n, mu, order, fam=Family.J_MU):  # noqa: N802
        return coeffs(fam, n, mu, order)

    def C(n, mu, order):  # noqa: N802
        return coeffs(Family.CAL_J_MU, n, mu, order)

    def d1(n, mu, order):
        return coeffs(Family.D1, n, mu, order)

    def d2(n, mu, order):
        return coeffs(Family.D2, n, mu, order)

    reg = {}

    # first deformation
    reg["eq.dbessel1"] = (Family.J_MU, lambda n, mu, o: (
        dunkl_apply(J(n, mu, o), mu).scale(2) - (J(n - 1, mu, o) - J(n + 1, mu, o)), lambda n, mu, o: J(n, mu, o)))
    reg["eq.dbessel2"] = (Family.J_MU, lambda n, mu, o: (
        dunkl_apply(J(n, mu, o), mu).scale(n)
        - (J(n - 1, mu, o).shift() - dunkl_apply(J(n, mu, o), mu).shift()).derivative(),
        lambda n, mu, o: J(n, mu, o)))
    reg["eq.dbessel3"] = (Family.J_MU, lambda n, mu, o: (
        dunkl_apply(J(n, mu, o), mu).scale(n)
        - (J(n + 1, mu, o).shift() + dunkl_apply(J(n, mu, o), mu).shift()).derivative(),
        lambda n, mu, o: J(n, mu, o)))
    reg["eq.dbessel4"] = (Family.J_MU, lambda n, mu, o: (
        dunkl_apply(J(n, mu, o), mu).scale(2 * n)
        - (J(n - 1, mu, o).shift() + J(n + 1, mu, o).shift()).derivative(),
        lambda n, mu, o: J(n, mu, o)))
    reg["jmu.superscript"] = (Family.J_MU, lambda n, mu, o: (
        xD(J(n, mu, o), mu, beta_shift(n, mu).value + 2 * mu - 1) - J(n, mu - 1, o).scale(2 * mu - 1),
        lambda n, mu, o: J(n, mu, o)))

    # second deformation
    reg["caljmu.lower"] = (Family.CAL_J_MU, lambda n, mu, o: (
        xD(C(n, mu, o), mu, -br(-n, mu)) - C(n - 1, mu, o).shift(), lambda n, mu, o: C(n, mu, o)))
    reg["eq.rec2"] = (Family.CAL_J_MU, lambda n, mu, o: (
        xD(C(n + 1, mu, o).shift() + C(n - 1, mu, o).shift() - C(n, mu, o).scale(2 * (n - mu)),
           mu, -br(n, mu) - 1) + C(n, mu, o).scale(2 * mu), lambda n, mu, o: C(n, mu, o)))

    def k(mu):
        return 2 * mu / (2 * mu + 1)

    reg["caljmu.mixed1"] = (Family.CAL_J_MU, lambda n, mu, o: (
        C(n, mu, o).derivative().scale(2)
        - (C(n - 1, mu, o) - C(n + 1, mu, o) + C(n + 1, mu + 1, o).scale(k(mu))),
        lambda n, mu, o: C(n, mu, o)))
    reg["caljmu.mixed2"] = (Family.CAL_J_MU, lambda n, mu, o: (
        C(n, mu, o).scale(2 * n)
        - (C(n - 1, mu, o) + C(n + 1, mu, o) - C(n + 1, mu + 1, o).scale(k(mu))).shift(),
        lambda n, mu, o: C(n, mu, o)))
    reg["caljmu.mixed3"] = (Family.CAL_J_MU, lambda n, mu, o: (
        xD(C(n, mu, o), mu, -br(n, mu))
        - (C(n + 1, mu + 1, o).scale(k(mu)) - C(n + 1, mu, o)).shift(),
        lambda n, mu, o: C(n, mu, o)))
    reg["caljmu.superscript"] = (Family.CAL_J_MU, lambda n, mu, o: (
        xD(C(n, mu, o), mu, -br(n, mu) + 2 * mu - 1) - C(n, mu - 1, o).scale(2 * mu - 1),
        lambda n, mu, o: C(n, mu, o)))

    def g(mu):
        return 1 / (2 * mu + 1)

    def e(mu):
        return mu / (2 * mu + 1) ** 2

    # J^(1,mu)
    reg["d1.rec1"] = (Family.D1, lambda n, mu, o: (
        xD(d1(n, mu, o), mu) - (d1(n, mu, o).scale(br(n, mu)) - d1(n + 1, mu, o).shift()),
        lambda n, mu, o: d1(n, mu, o)))
    reg["d1.rec2"] = (Family.D1, lambda n, mu, o: (
        d1(n, mu, o).derivative().scale(2)
        - (d1(n - 1, mu, o).scale(g(mu)) - d1(n + 1, mu, o) + d1(n - 2, mu + 1, o).shift().scale(e(mu))),
        lambda n, mu, o: d1(n, mu, o)))
    reg["d1.rec3"] = (Family.D1, lambda n, mu, o: (
        d1(n, mu, o).scale(2 * n)
        - (d1(n - 1, mu, o).scale(g(mu)) + d1(n + 1, mu, o)
           + d1(n - 2, mu + 1, o).shift().scale(e(mu))).shift(),
        lambda n, mu, o: d1(n, mu, o)))
    reg["d1.rec4"] = (Family.D1, lambda n, mu, o: (
        xD(d1(n, mu, o), mu, -br(-n, mu))
        - (d1(n - 1, mu, o).shift().scale(g(mu)) + d1(n - 2, mu + 1, o).shift(2).scale(e(mu))),
        lambda n, mu, o: d1(n, mu, o)))

    # J^(2,mu)
    reg["d2.rec1"] = (Family.D2, lambda n, mu, o: (
        xD(d2(n, mu, o), mu) - (d2(n - 1, mu, o).shift() + d2(n, mu, o).scale(br(-n, mu))),
        lambda n, mu, o: d2(n, mu, o)))
    reg["d2.rec2"] = (Family.D2, lambda n, mu, o: (
        d2(n, mu, o).derivative().scale(2)
        - (d2(n - 1, mu, o) - d2(n + 1, mu, o).scale(g(mu)) + d2(n + 2, mu + 1, o).shift().scale(e(mu))),
        lambda n, mu, o: d2(n, mu, o)))
    reg["d2.rec3"] = (Family.D2, lambda n, mu, o: (
        d2(n, mu, o).scale(2 * n)
        - (d2(n - 1, mu, o) + d2(n + 1, mu, o).scale(g(mu))
           - d2(n + 2, mu + 1, o).shift().scale(e(mu))).shift(),
        lambda n, mu, o: d2(n, mu, o)))
    reg["d2.rec4"] = (Family.D2, lambda n, mu, o: (
        xD(d2(n, mu, o), mu, -br(n, mu))
        - (d2(n + 2, mu + 1, o).shift(2).scale(e(mu)) - d2(n + 1, mu, o).shift().scale(g(mu))),
        lambda n, mu, o: d2(n, mu, o)))
    return reg


RECURRENCES = _recurrences()


def recurrence_residual(id: str, family=None, n: int = 0, mu=Fraction(1, 2), order: int = 40,  # noqa: A002
                        perturb=0) -> PowerSeries:
    """Left-minus-right coefficient residual of a displayed recurrence.

    ``perturb`` adds that multiple of the family member itself (a unit change
    of the operator) so the harness can prove it would notice a wrong identity.
    """
    if id not in RECURRENCES:
        raise DomainError(f"unknown recurrence {id!r}; known: {', '.join(sorted(RECURRENCES))}")
    fam, fn = RECURRENCES[id]
    if family is not None and Family.parse(family) is not fam:
        raise DomainError(f"{id} belongs to {fam.value}, not {Family.parse(family).value}")
    mu = _require_exact(mu)
    if order < n + 4:
        raise DomainError(f"order must be >= n + 4 = {n + 4}")
    r, base = fn(n, mu, order)
    if perturb:
        r = r + base(n, mu, order).scale(perturb)
    return r


# -- addition theorem ---------------------------------------------------------------


def addition_sides(n: int, mu, x: float, y: float, K: int = 30, order: int = 60):
    """``(tau_y J_n^mu (x), sum_{|k|<=K} J_k^mu(x) J_{n-k}^mu(y), error bound)``."""
    m = float(checked_mu(mu))
    if K < 1 or order < 1:
        raise DomainError("K and order must be >= 1")
    s = coeffs(Family.J_MU, n, m, order)
    lhs = translate(s, y, m)(x)
    rhs_terms = [eval(Family.J_MU, k, m, x).value * eval(Family.J_MU, n - k, m, y).value
                 for k in range(-K, K + 1)]
    rhs = math.fsum(rhs_terms)
    # |binom_mu(j,k)| <= C(j,k), so the dropped degrees are bounded by I_j(|x|+|y|)-type terms
    trunc = math.fsum(order_bound(j, abs(x) + abs(y)) for j in range(order + 1, order + 60))
    conv_tail = 4 * order_bound(K + 1, max(abs(x), abs(y))) * order_bound(0, max(abs(x), abs(y)))
    err = trunc + conv_tail + 8 * EPS * (math.exp(abs(x) + abs(y)) + math.fsum(abs(t) for t in rhs_terms))
    return lhs, rhs, err


def addition_check(n: int, mu, x: float, y: float, K: int = 30, order: int = 60) -> Evaluation:
    """``|tau_y J_n^mu (x) - sum_{|k|<=K} J_k^mu(x) J_{n-k}^mu(y)|`` with both tails in the estimate."""
    lhs, rhs, err = addition_sides(n, mu, x, y, K, order)
    return Evaluation(abs(lhs - rhs), err, order + 2 * K + 1)


# -- asymptotics --------------------------------------------------------------------


def asymptotic_eval(family, n: int, mu, x: float, x_min: float = ASYMPTOTIC_X_MIN) -> float:
    """Two-term large-x form (cosine term plus algebraic term)."""
    family = Family.parse(family)
    mv = float(checked_mu(mu))
    if not x >= x_min:
        raise DomainError(f"asymptotic form needs x >= {x_min}, got {x}")
    if n < 0:
        if family is Family.J_MU:
            v = asymptotic_eval(family, -n, mv, x, x_min)
            return -v if n % 2 else v
        raise DomainError("asymptotic form is stated for n >= 0")
    half = x / 2
    osc = special.gamma(mv + 0.5) / math.pi * half ** (-mv - 0.5) * math.cos(
        x - 0.5 * math.pi * (0.5 + n + mv))
    if family is Family.J_MU:
        h = _half_floor(n)
        alg = (special.gamma(h + 0.5) * special.gamma(mv + 0.5) * special.rgamma(n + 0.5 - h)
               * special.rgamma(mv) / math.gamma(0.5) * half ** (n - 2 * h - 1))
    elif family is Family.CAL_J_MU:
        # algebraic term of 1F2(1/2; n+1, mu+1/2; -X^2) times (X^n / n!)
        alg = special.gamma(mv + 0.5) * special.rgamma(mv) * special.rgamma(n + 0.5) * half ** (n - 1)
    else:
        raise DomainError("asymptotic forms exist for jmu and caljmu only")
    return float(osc + alg)

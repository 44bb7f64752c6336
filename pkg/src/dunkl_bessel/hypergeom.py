"""Generalized hypergeometric series pFq.

``pFq(a; b; x) = sum_n (a_1)_n ... (a_p)_n / ((b_1)_n ... (b_q)_n) x**n / n!``

Float evaluation goes through the shared ratio-driven summation, so heavy
cancellation (negative argument, large modulus) triggers an extended-precision
pass automatically.  Exact parameters give exact truncated coefficient series,
which is what the contiguous relations and the pFq differential equation are
checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from scipy import special

from ._summation import DomainError, Evaluation, check_tol, evaluate_series
from .series import PowerSeries, fraction_str, is_exact_scalar

#: below this argument the two-term large-x form of 1F2 is not trusted
ASYMPTOTIC_X_MIN = 15.0

_POLE_TOL = 1e-12


def _near_nonpositive_integer(v) -> bool:
    v = complex(v)
    if abs(v.imag) > _POLE_TOL:
        return False
    r = round(v.real)
    return r <= 0 and abs(v.real - r) <= _POLE_TOL


@dataclass(frozen=True)
class HypergeometricSpec:
    upper: tuple = ()
    lower: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        for b in self.lower:
            if _near_nonpositive_integer(b):
                raise DomainError(f"lower parameter {b!r} is a non-positive integer")

    def __str__(self) -> str:
        show = lambda vs: ", ".join(fraction_str(v) if isinstance(v, Fraction) else repr(v) for v in vs)  # noqa: E731
        return f"{self.p}F{self.q}({show(self.upper)}; {show(self.lower)})"

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    @property
    def convergence(self) -> str:
        if self.p <= self.q:
            return "entire"
        if self.p == self.q + 1:
            return "unit-disk"
        return "divergent"

    @property
    def terminating_index(self) -> int | None:
        """Degree of the polynomial when an upper parameter is ``-m``."""
        ks = [int(round(a.real if isinstance(a, complex) else float(a)))
              for a in self.upper if _near_nonpositive_integer(a)]
        return -max(ks) if ks else None

    @property
    def exact(self) -> bool:
        return all(is_exact_scalar(v) for v in self.upper + self.lower)

    def reduced(self) -> "HypergeometricSpec":
        """Cancel upper/lower parameter pairs that coincide."""
        upper = list(self.upper)
        lower = []
        for b in self.lower:
            if b in upper:
                upper.remove(b)
            else:
                lower.append(b)
        return HypergeometricSpec(tuple(upper), tuple(lower))

    def shifted(self, upper_delta: Sequence = (), lower_delta: Sequence = ()) -> "HypergeometricSpec":
        up = tuple(a + d for a, d in zip(self.upper, list(upper_delta) + [0] * self.p))
        lo = tuple(b + d for b, d in zip(self.lower, list(lower_delta) + [0] * self.q))
        return HypergeometricSpec(up, lo)


def _ratio_bound_factory(spec: HypergeometricSpec, ax: float):
    """sup over j >= k of |t[j+1] / t[j]|, valid once k exceeds every |parameter|."""
    params = [abs(complex(v)) for v in spec.upper + spec.lower]
    kmin = int(math.ceil(max(params, default=0.0))) + 1
    upper = [complex(a) for a in spec.upper]
    lower = [complex(b) for b in spec.lower]
    npair = min(spec.p, spec.q)

    def bound(k: int) -> float:
        if k < kmin:
            return math.inf
        r = ax
        for a, b in zip(upper[:npair], lower[:npair]):
            r *= max(abs(a + k) / abs(b + k), 1.0)
        if spec.p > spec.q:
            r *= max(abs(upper[npair] + k) / (k + 1), 1.0)
        else:
            r /= k + 1
        for b in lower[npair:]:
            r /= abs(b + k)
        return r

    return bound


def pfq(spec: HypergeometricSpec, x, tol: float = 1e-14) -> Evaluation:
    check_tol(tol)
    if x == 0:
        return Evaluation(1.0, 0.0, 1)
    if spec.convergence == "divergent":
        raise DomainError(f"{spec.p}F{spec.q} diverges for every x != 0")
    if spec.convergence == "unit-disk" and abs(x) >= 1:
        raise DomainError(f"{spec.p}F{spec.q} needs |x| < 1, got |x| = {abs(x)}")
    ax = abs(x)
    upper = [complex(a) if isinstance(a, complex) else float(a) for a in spec.upper]
    lower = [complex(b) if isinstance(b, complex) else float(b) for b in spec.lower]
    fbound = _ratio_bound_factory(spec, ax)

    def build(conv):
        xc = conv(x)
        ac = [conv(a) for a in upper]
        bc = [conv(b) for b in lower]

        def ratio(k):
            num = xc / (k + 1)
            for a in ac:
                num = num * (a + k)
            for b in bc:
                num = num / (b + k)
            return num

        return conv(1.0), ratio, fbound

    return evaluate_series(build, tol, last_index=spec.terminating_index)


def pfq_coeffs(spec: HypergeometricSpec, order: int, scale=1) -> PowerSeries:
    """Truncated coefficients of ``pFq(scale * x)``; exact for exact parameters."""
    exact = spec.exact and is_exact_scalar(scale)
    one = Fraction(1) if exact else 1.0
    c = one
    out = [c]
    for k in range(order):
        num = one * scale / (k + 1)
        for a in spec.upper:
            num = num * (a + k)
        for b in spec.lower:
            num = num / (b + k)
        c = c * num
        out.append(c)
    return PowerSeries(tuple(out))


# -- appendix identities at the coefficient level ------------------------------------


def _euler_chain(s: PowerSeries, shifts) -> PowerSeries:
    for c in shifts:
        s = s.euler(c)
    return s


def pfq_ode_residual(spec: HypergeometricSpec, order: int) -> PowerSeries:
    """``(th+a_1)..(th+a_p) F - d/dx (th+b_1-1)..(th+b_q-1) F`` with ``th = x d/dx``."""
    f = pfq_coeffs(spec, order)
    left = _euler_chain(f, spec.upper)
    right = _euler_chain(f, [b - 1 for b in spec.lower]).derivative()
    return left - right


def contiguous_residuals(spec: HypergeometricSpec, order: int) -> dict:
    """Residuals of the three differential recursions (raise a_1, lower b_1, all + 1)."""
    f = pfq_coeffs(spec, order)
    out = {}
    if spec.p >= 1:
        a1 = spec.upper[0]
        raised = pfq_coeffs(spec.shifted([1]), order)
        out["raise_a1"] = f.euler(a1) - raised.scale(a1)
    if spec.q >= 1:
        b1 = spec.lower[0]
        if b1 - 1 != 0:
            lowered = pfq_coeffs(spec.shifted((), [-1]), order)
            out["lower_b1"] = f.euler(b1 - 1) - lowered.scale(b1 - 1)
    ratio = Fraction(1) if spec.exact else 1.0
    for a in spec.upper:
        ratio = ratio * a
    for b in spec.lower:
        ratio = ratio / b
    allplus = pfq_coeffs(spec.shifted([1] * spec.p, [1] * spec.q), order)
    out["derivative"] = f.derivative() - allplus.scale(ratio)
    return out


# -- large-argument 1F2 -------------------------------------------------------------


def onef2_asymptotic(alpha: float, n: int, beta: float, x: float,
                     x_min: float = ASYMPTOTIC_X_MIN) -> float:
    """Two-term large-x form of ``1F2(alpha; n+1, beta; -x**2)`` for real x > 0.

    Oscillatory part of amplitude ``Gamma(beta) n! / (Gamma(1/2) Gamma(alpha))``
    times ``x**(-1/2 - n + alpha - beta)``, plus the algebraic ``x**(-2 alpha)``
    term.  Only the positive real axis is supported.
    """
    if not x >= x_min:
        raise DomainError(f"asymptotic form needs x >= {x_min}, got {x}")
    g_beta_nfact = float(special.gamma(beta)) * math.factorial(n)
    osc = (
        g_beta_nfact * special.rgamma(0.5) * special.rgamma(alpha)
        * x ** (-0.5 - n + alpha - beta)
        * math.cos(2 * x - 0.5 * math.pi * (0.5 + n + beta - alpha))
    )
    alg = g_beta_nfact * special.rgamma(beta - alpha) * special.rgamma(n + 1 - alpha) * x ** (-2 * alpha)
    return float(osc + alg)


# -- special cases ------------------------------------------------------------------


def bessel_jnu_0f1(nu: float, x: float, tol: float = 1e-14) -> Evaluation:
    """``J_nu(x) = (x/2)**nu / Gamma(nu+1) 0F1(; nu+1; -x**2/4)``."""
    inner = pfq(HypergeometricSpec((), (nu + 1,)), -x * x / 4, tol)
    pref = (x / 2) ** nu * float(special.rgamma(nu + 1))
    return Evaluation(pref * inner.value, abs(pref) * inner.abs_err_est, inner.work)


def bessel_jnu_1f1(nu: float, x: float, tol: float = 1e-14) -> Evaluation:
    """``J_nu(x) = exp(-ix) (x/2)**nu / Gamma(nu+1) 1F1(nu+1/2; 2nu+1; 2ix)``; real part."""
    inner = pfq(HypergeometricSpec((nu + 0.5,), (2 * nu + 1,)), 2j * x, tol)
    pref = complex(math.cos(x), -math.sin(x)) * (x / 2) ** nu * float(special.rgamma(nu + 1))
    v = pref * inner.value
    return Evaluation(v.real, abs(pref) * inner.abs_err_est + abs(v.imag), inner.work)

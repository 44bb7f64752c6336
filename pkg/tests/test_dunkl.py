import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import hyp0f1, hyp1f1

from dunkl_bessel._summation import DomainError
from dunkl_bessel.dunkl import (
    DeformationParameter,
    beta_half,
    deformed_binomial,
    deformed_factorial,
    deformed_integer,
    dunkl_apply,
    e_mu,
    e_mu_coeffs,
    intertwine_coeff,
    intertwine_quad,
    pochhammer,
    translate,
    x_dunkl_plus,
)
from dunkl_bessel.series import PowerSeries, as_series

F = Fraction
MUS = [F(0), F(3, 10), F(1), F(5, 2)]


def mono(k, order=None):
    return PowerSeries.monomial(k, k if order is None else order)


# -- arithmetic ---------------------------------------------------------------------


@pytest.mark.parametrize("n,mu,expected", [(4, 0.7, 4), (3, 0.5, 4), (-3, 0.5, -2), (0, 2.0, 0), (1, F(1, 3), F(5, 3))])
def test_deformed_integer(n, mu, expected):
    assert deformed_integer(n, mu) == expected


def test_deformed_integer_exact_type_for_negative_n():
    assert isinstance(deformed_integer(-4, F(1, 3)), Fraction)


@pytest.mark.parametrize("n,mu,expected", [(0, 0.9, 1), (3, 0.5, 16), (2, 0.5, 4), (5, F(1, 2), F(6 * 4 * 4 * 2 * 2))])
def test_deformed_factorial(n, mu, expected):
    assert deformed_factorial(n, mu) == expected


def test_deformed_factorial_rejects_negative():
    with pytest.raises(DomainError):
        deformed_factorial(-1, 0.5)


def test_factorial_cache_keeps_scalar_kinds_apart():
    # equal-valued float and Fraction keys must not share a cache entry
    assert isinstance(deformed_factorial(7, 0.25), float)
    assert isinstance(deformed_factorial(7, F(1, 4)), Fraction)


@pytest.mark.parametrize("mu", [0.0, 0.25, 1.0, 2.7, 5.0])
def test_gamma_closed_forms(mu, mp50):
    mu_f, mu = mu, mp50.mpf(mu)
    for m in range(31):
        even = mp50.mpf(2) ** (2 * m) * mp50.factorial(m) * mp50.gamma(m + mu + 0.5) / mp50.gamma(mu + 0.5)
        even2 = mp50.factorial(2 * m) * mp50.rf(mu + 0.5, m) / mp50.rf(0.5, m)
        odd = mp50.mpf(2) ** (2 * m + 1) * mp50.factorial(m) * mp50.gamma(m + mu + 1.5) / mp50.gamma(mu + 0.5)
        odd2 = mp50.factorial(2 * m + 1) * mp50.rf(mu + 0.5, m + 1) / mp50.rf(0.5, m + 1)
        if 2 * m <= 60:
            assert float(deformed_factorial(2 * m, mu_f)) == pytest.approx(float(even), rel=1e-13)
            assert abs(even - even2) <= 1e-40 * even
        if 2 * m + 1 <= 60:
            assert float(deformed_factorial(2 * m + 1, mu_f)) == pytest.approx(float(odd), rel=1e-13)
            assert abs(odd - odd2) <= 1e-40 * odd


@pytest.mark.parametrize("n,k,mu,expected", [(6, 0, 0.3, 1), (2, 1, 0.5, 1), (3, 5, 0.5, 0), (3, -1, 0.5, 0), (3, 1, 0.5, 2)])
def test_deformed_binomial(n, k, mu, expected):
    # [3]!/([1]![2]!) = 16/(2*4) = 2 at mu = 1/2
    assert deformed_binomial(n, k, mu) == pytest.approx(expected)


@pytest.mark.parametrize("a,k,expected", [(2.5, 0, 1), (1, 5, 120), (0.5, 2, 0.75), (F(-1, 2), 3, F(-1, 2) * F(1, 2) * F(3, 2))])
def test_pochhammer(a, k, expected):
    assert pochhammer(a, k) == expected


def test_deformation_parameter():
    with pytest.raises(DomainError):
        DeformationParameter(-0.1)
    with pytest.raises(DomainError):
        DeformationParameter(True)
    assert DeformationParameter(F(1, 2)).exact
    with pytest.raises(DomainError):
        DeformationParameter(0.0).require_integral()


def test_beta_half_large_mu_finite(mp50):
    for mu in (0.5, 3.0, 40.0, 400.0):
        assert beta_half(mu) == pytest.approx(float(mp50.beta(0.5, mu)), rel=1e-12)


# -- E_mu ---------------------------------------------------------------------------


def test_e_mu_at_zero():
    assert e_mu(0, 0.7).value == 1.0


@pytest.mark.parametrize("x", [-10.0, -1.0, 0.3, 4.0, 25.0])
def test_e_mu_classical_limit(x):
    assert e_mu(x, 0, 1e-14).value == pytest.approx(math.exp(x), rel=1e-14)


def test_e_mu_kummer_form():
    # E_mu(x) = e^x 1F1(mu; 2mu + 1; -2x)
    assert e_mu(1, 0.5, 1e-14).value == pytest.approx(math.e * hyp1f1(0.5, 2.0, -2.0), abs=1e-12)


@pytest.mark.parametrize("mu", [0.25, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("x", [-10.0, -6.5, -2.0, -0.4, 0.0, 0.7, 3.0, 7.5, 10.0])
def test_e_mu_hypergeometric_forms(mu, x):
    v = e_mu(x, mu).value
    kummer = math.exp(x) * hyp1f1(mu, 2 * mu + 1, -2 * x)
    # j_a(ix) = 0F1(; a + 1; x^2/4) is real
    bessel = hyp0f1(mu + 0.5, x * x / 4) + x / (2 * mu + 1) * hyp0f1(mu + 1.5, x * x / 4)
    scale = max(1.0, abs(v))
    assert abs(v - kummer) <= 1e-11 * scale
    assert abs(v - bessel) <= 1e-11 * scale


def test_e_mu_complex_argument(mp50):
    z = 3.0j
    ref = _series_mp(mp50, mp50.mpc(0, 3), 0.5)
    got = e_mu(z, 0.5, 1e-15)
    assert abs(got.value - complex(ref)) < 1e-14


def _series_mp(ctx, z, mu, terms=200):
    """sum z^k/[k]! directly at 50 digits."""
    total, t = ctx.mpf(0), ctx.mpf(1)
    for k in range(terms):
        total += t
        j = k + 1
        t = t * z / (j + 2 * mu if j % 2 else j)
    return total


def test_e_mu_error_estimate_is_honest(mp50):
    for x, mu in [(7.0, 0.25), (-12.0, 1.5), (20.0, 0.0)]:
        ev = e_mu(x, mu, 1e-12)
        ref = _series_mp(mp50, mp50.mpf(x), mu)
        assert abs(ev.value - float(ref)) <= max(ev.abs_err_est, 1e-300) * 10


def test_e_mu_rejects_bad_tol():
    with pytest.raises(DomainError):
        e_mu(1.0, 0.5, 0.0)


def test_e_mu_thread_safe():
    xs = [(-15.0 + 0.37 * i, 0.3 + 0.01 * i) for i in range(60)]
    serial = [e_mu(x, m, 1e-14).value for x, m in xs]
    with ThreadPoolExecutor(8) as pool:
        threaded = list(pool.map(lambda a: e_mu(a[0], a[1], 1e-14).value, xs))
    assert threaded == serial


# -- operators ----------------------------------------------------------------------


def test_dunkl_apply_examples():
    assert dunkl_apply(mono(2), 0.5).coeffs == (0, 2)
    assert dunkl_apply(mono(3), F(1, 2)).coeffs == (0, 0, 4)
    z = dunkl_apply(as_series([F(7)]), F(1, 3))
    assert z.order == 0 and z.is_zero()


@pytest.mark.parametrize("mu", MUS)
@pytest.mark.parametrize("lam", [F(1), F(-3, 2)])
def test_e_mu_eigen_relation(mu, lam):
    s = e_mu_coeffs(mu, 25, lam)
    assert dunkl_apply(s, mu).coeffs == s.scale(lam).truncate(24).coeffs


def test_x_dunkl_plus_examples():
    n, mu = 5, F(2, 7)
    assert x_dunkl_plus(mono(n), mu, -deformed_integer(n, mu)).is_zero()
    assert x_dunkl_plus(mono(2), 0.5, 1).coeffs == (0, 0, 3)
    assert x_dunkl_plus(as_series([F(1)]), F(1, 2), F(9, 4)).coeffs == (F(9, 4),)


def test_intertwine_coeff_examples():
    assert intertwine_coeff(as_series([F(1)]), F(1, 2)).coeffs == (1,)
    assert intertwine_coeff(mono(2), F(1, 2)).coeffs == (0, 0, F(1, 2))
    s = as_series([F(k + 1, 3) for k in range(9)])
    assert intertwine_coeff(s, 0).coeffs == s.coeffs


def _poly(d, seed):
    return as_series([F((37 * k + seed) % 19 - 9, 1 + (k + seed) % 5) for k in range(d + 1)])


@pytest.mark.parametrize("mu", MUS + [F(7, 2)])
def test_intertwining_relation(mu):
    for d in range(31):
        p = _poly(d, d)
        lhs = dunkl_apply(intertwine_coeff(p, mu), mu)
        assert lhs.coeffs == intertwine_coeff(p.derivative(), mu).coeffs


polys = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=1, max_size=13)


@settings(max_examples=60, deadline=None)
@given(polys, polys, st.sampled_from(MUS))
def test_product_rule(a, b, mu):
    order = 24
    f = as_series(a + [0] * (order + 1 - len(a)), exact=True)
    g = as_series(b + [0] * (order + 1 - len(b)), exact=True)
    lhs = dunkl_apply(f * g, mu)
    rhs = f * dunkl_apply(g, mu) + g.reflect() * dunkl_apply(f, mu) + f.derivative() * (g - g.reflect())
    assert lhs.coeffs == rhs.coeffs


@settings(max_examples=60, deadline=None)
@given(polys, st.sampled_from(MUS))
def test_square_rule(a, mu):
    # D^2 f = f'' + (2mu/x) f' - (mu/x^2)(f(x) - f(-x)), checked after multiplying by x^2
    order = 16
    f = as_series(a + [0] * (order + 1 - len(a)), exact=True)
    lhs = dunkl_apply(dunkl_apply(f, mu), mu).shift(2)
    rhs = f.derivative().derivative().shift(2) + f.derivative().shift(1).scale(2 * mu) - (f - f.reflect()).scale(mu)
    top = min(lhs.order, rhs.order)
    assert lhs.truncate(top).coeffs == rhs.truncate(top).coeffs


# -- intertwining by quadrature -----------------------------------------------------


def test_intertwine_quad_constant():
    assert intertwine_quad(lambda t: 1.0, 0.8, 0.5).value == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("mu", [0.25, 1.0, 2.0])
def test_intertwine_quad_monomials(mu):
    x = 0.9
    for n in range(21):
        got = intertwine_quad(lambda t: t ** n, x, mu, m=16).value
        expected = float(intertwine_coeff(mono(n), mu)[n]) * x ** n
        assert got == pytest.approx(expected, abs=1e-12)


def test_intertwine_quad_exponential():
    got = intertwine_quad(math.exp, 1.0, 1.0, m=40)
    assert got.value == pytest.approx(e_mu(1.0, 1.0).value, abs=1e-10)
    assert got.abs_err_est < 1e-12


def test_intertwine_quad_domain():
    with pytest.raises(DomainError):
        intertwine_quad(math.exp, 1.0, 0.0)
    with pytest.raises(DomainError):
        intertwine_quad(math.exp, 1.0, 0.5, m=1)


# -- translation --------------------------------------------------------------------


def test_translate_identity_at_zero():
    s = _poly(9, 4)
    assert translate(s, F(0), F(1, 3)).coeffs == s.coeffs


def test_translate_linear():
    y = F(5, 7)
    assert translate(mono(1), y, F(1, 2)).coeffs == (y, 1)


@pytest.mark.parametrize("mu", [F(1, 4), F(1), F(5, 2)])
def test_translate_exponential_law(mu):
    lam, y, order = F(-2, 3), F(3, 2), 20
    lhs = translate(e_mu_coeffs(mu, order, lam), y, mu)
    # truncating E_mu(lam x) at order leaves E_mu(lam y) summed through order - k in degree k
    for k in range(order + 1):
        ey = sum((lam * y) ** i / deformed_factorial(i, mu) for i in range(order - k + 1))
        assert lhs[k] == lam ** k / deformed_factorial(k, mu) * ey


def test_translate_exponential_law_float():
    mu, lam, x, y = 0.8, 0.6, 1.1, -0.7
    lhs = translate(e_mu_coeffs(mu, 60, lam), y, mu)(x)
    assert lhs == pytest.approx(e_mu(lam * x, mu).value * e_mu(lam * y, mu).value, rel=1e-13)

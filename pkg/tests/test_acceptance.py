"""Acceptance criteria; each test records one pass/fail line (shown in the terminal summary)."""

import json
import math
from fractions import Fraction

from dunkl_bessel import deformed, verify
from dunkl_bessel.classical import bessel_j
from dunkl_bessel.cli import main
from dunkl_bessel.deformed import (
    DEFORMED,
    Family,
    addition_check,
    asymptotic_eval,
    connection_eval,
    fourier_coefficient,
    generating_window,
    hyp_form,
    ode_residual,
    poisson_eval,
    recurrence_residual,
)
from dunkl_bessel.dunkl import dunkl_apply, intertwine_coeff, intertwine_quad
from dunkl_bessel.hypergeom import HypergeometricSpec, contiguous_residuals, pfq, pfq_ode_residual
from dunkl_bessel.series import PowerSeries

MU_EXACT = (Fraction(1, 4), Fraction(1, 3), Fraction(1), Fraction(7, 2))
X17 = [10 * i / 16 for i in range(17)]


def test_criterion_01_exact_residuals(criterion):
    bad = []
    for mu in MU_EXACT:
        for n in range(7):
            for fam in (Family.J_MU, Family.CAL_J_MU):
                if not ode_residual(fam, n, mu, 40).is_zero(38):
                    bad.append(("ode", fam.value, n, mu))
            for rid in deformed.RECURRENCES:
                if not recurrence_residual(rid, n=n, mu=mu, order=40).is_zero(38):
                    bad.append((rid, n, mu))
    checks = 7 * len(MU_EXACT) * (2 + len(deformed.RECURRENCES))
    assert criterion(1, not bad, f"exact residuals zero through degree 38: {checks - len(bad)}/{checks}"), bad


def test_criterion_02_mu_zero_reduction(criterion):
    worst = max(abs(deformed.eval(f, n, 0, x).value - bessel_j(n, x).value)
                for f in DEFORMED for n in range(9) for x in X17)
    assert criterion(2, worst <= 1e-13, f"max |eval(mu=0) - J_n| = {worst:.3g} (limit 1e-13)")


def test_criterion_03_four_paths(criterion):
    worst_pair, worst_conn = 0.0, 0.0
    for mu in (0.5, 1.0):
        for n in range(6):
            for x in (0.5, 2.0, 5.0, 8.0):
                vals = [deformed.eval(Family.J_MU, n, mu, x).value, hyp_form(Family.J_MU, n, mu, x).value,
                        poisson_eval(Family.J_MU, n, mu, x).value, fourier_coefficient(n, mu, x).value]
                worst_pair = max(worst_pair, max(vals) - min(vals))
                worst_conn = max(worst_conn, abs(connection_eval(Family.J_MU, n, mu, x, K=40).value - vals[0]))
    ok = worst_pair <= 1e-8 and worst_conn <= 1e-8
    assert criterion(3, ok, f"max pairwise spread {worst_pair:.3g}, connection {worst_conn:.3g} (limit 1e-8)")


def test_criterion_04_generating_functions(criterion):
    worst_c, worst_s = 0.0, 0.0
    for x in (0.5, 2.0, 5.0):
        for mu in (0.25, 1.0):
            for f in DEFORMED:
                w = generating_window(f, mu, x)
                assert w.half_width >= 8
                worst_c = max(worst_c, max(abs(w[n] - deformed.eval(f, n, mu, x).value) for n in range(-8, 9)))
            w = generating_window(Family.J_MU, mu, x)
            full = math.fsum(w.coeffs.values())
            even = w[0] + 2 * math.fsum(w[n] for n in range(2, w.half_width + 1, 2))
            worst_s = max(worst_s, abs(full - 1), abs(even - 1))
    ok = worst_c <= 1e-10 and worst_s <= 1e-10
    assert criterion(4, ok, f"window vs eval {worst_c:.3g}, sum identities {worst_s:.3g} (limit 1e-10)")


def test_criterion_05_deformed_addition(criterion):
    worst = max(addition_check(n, mu, x, y, K=30, order=60).value
                for n in (0, 1, 3) for mu in (0.5, 1.0) for x in (0.5, 1, 2.5) for y in (0.5, 1, 2.5))
    assert criterion(5, worst <= 1e-8, f"max addition residual {worst:.3g} (limit 1e-8)")


def _poly(degree, salt):
    return PowerSeries(tuple(Fraction((31 * k + salt) % 17 - 8, 1 + (k + salt) % 5) for k in range(degree + 1)))


def test_criterion_06_intertwining(criterion):
    exact_ok = True
    for mu in (Fraction(1, 4), Fraction(1, 3), Fraction(1), Fraction(2), Fraction(7, 2)):
        for salt in range(3):
            p = _poly(30, salt)
            exact_ok &= dunkl_apply(intertwine_coeff(p, mu), mu).coeffs == intertwine_coeff(p.derivative(), mu).coeffs
    worst = 0.0
    for mu in (0.25, 1.0, 2.0):
        for n in range(21):
            mono = PowerSeries(tuple([Fraction(0)] * n + [Fraction(1)]))
            ref = intertwine_coeff(mono, Fraction(mu))
            for x in (-0.9, 0.4, 1.0):
                worst = max(worst, abs(intertwine_quad(lambda t: t ** n, x, mu).value - float(ref(Fraction(x)))))
    ok = exact_ok and worst <= 1e-12
    assert criterion(6, ok, f"D V = V d/dx exact: {exact_ok}; quadrature vs coefficients {worst:.3g} (limit 1e-12)")


def test_criterion_07_asymptotics(criterion):
    failures, worst = [], 0.0
    for fam in (Family.J_MU, Family.CAL_J_MU):
        for mu in (0.5, 1.0):
            for n in range(4):
                errs = []
                for x in (40.0, 80.0):
                    ref = deformed.eval(fam, n, mu, x).value
                    errs.append(abs(asymptotic_eval(fam, n, mu, x) - ref) / abs(ref))
                worst = max(worst, errs[0])
                if not (errs[0] <= 5e-2 and errs[1] < errs[0]):
                    failures.append(f"{fam.value} n={n} mu={mu}: {errs[0]:.3g} -> {errs[1]:.3g}")
    detail = f"pointwise relative error at x=40 <= 5e-2 and smaller at x=80: {16 - len(failures)}/16 cases"
    if failures:
        detail += "; failing " + ", ".join(failures)
    assert criterion(7, not failures, detail)


def test_criterion_08_appendix(criterion):
    kummer = 0.0
    for a in (0.5, 1, 2.5):
        for b in (0.5, 1, 2.5):
            for i in range(33):
                x = -8 + i / 2
                lhs = pfq(HypergeometricSpec((a,), (b,)), x).value
                rhs = math.exp(x) * pfq(HypergeometricSpec((b - a,), (b,)), -x).value
                kummer = max(kummer, abs(lhs - rhs) / max(1.0, abs(rhs)))
    exact_ok = True
    for spec in verify.APPENDIX_SPECS:
        exact_ok &= pfq_ode_residual(spec, 25).is_zero(23)
        exact_ok &= all(r.is_zero(23) for r in contiguous_residuals(spec, 25).values())
    special = 0.0
    for i in range(19):
        x = -0.9 + i / 10
        special = max(special, abs(pfq(HypergeometricSpec((), ()), x).value - math.exp(x)) / math.exp(x))
        for a in (0.5, 1, 2.5, -3):
            r = (1 - x) ** (-a)
            special = max(special, abs(pfq(HypergeometricSpec((a,), ()), x).value - r) / max(1.0, abs(r)))
    ok = kummer <= 1e-11 and exact_ok and special <= 1e-12
    assert criterion(8, ok, f"Kummer {kummer:.3g} (1e-11), exact ODE/contiguous {exact_ok}, "
                            f"e^x and (1-x)^-a {special:.3g} (1e-12)")


def test_criterion_09_mutation(criterion):
    detected = verify.mutation_self_test(parallelism=4)
    missed = [k for k, v in detected.items() if not v]
    assert criterion(9, len(detected) == len(verify.REGISTRY) and not missed,
                     f"perturbed checks reported failing: {len(detected) - len(missed)}/{len(verify.REGISTRY)}"), missed


def test_criterion_10_verify_all(criterion, capsys):
    code = main(["--format", "jsonl", "verify", "--all", "--parallel", "4"])
    out = capsys.readouterr().out
    reports = [json.loads(line) for line in out.splitlines()]
    ids = [r["id"] for r in reports]
    bad = [r["id"] for r in reports if not (r["status"] == "pass" or (r["status"] == "skipped" and r.get("reason")))]
    ok = code == 0 and ids == list(verify.REGISTRY) and not bad
    passed = sum(r["status"] == "pass" for r in reports)
    skipped = sum(r["status"] == "skipped" for r in reports)
    assert criterion(10, ok, f"verify --all exit {code}: {passed} pass, {skipped} skipped, {len(bad)} other, "
                             f"{len(ids)}/{len(verify.REGISTRY)} ids"), bad

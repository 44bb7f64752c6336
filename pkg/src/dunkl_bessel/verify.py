"""Identity harness.

Every displayed identity of the theory is a named :class:`IdentityCheck` in
``REGISTRY``.  A check is a runner ``(case, perturb) -> residual`` plus a
parameter grid.  In ``rational-exact`` mode the residual is the largest
coefficient (a Fraction) of an exact series that must vanish; in
``float-tolerance`` mode it is a float compared with the check's tolerance.

``perturb`` is the mutation hook: a nonzero value changes the identity by a
unit coefficient, and a sound check must then fail (see
:func:`mutation_self_test`).
"""

from __future__ import annotations

import itertools
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from scipy import special

from . import classical, deformed
from ._summation import DomainError
from .classical import bessel_j, bessel_j_coeffs, bessel_j_poisson
from .deformed import Family
from .dunkl import (
    dunkl_apply,
    e_mu,
    e_mu_coeffs,
    intertwine_coeff,
    intertwine_quad,
    inverse_deformed_factorial,
    translate,
)
from .hypergeom import (
    HypergeometricSpec,
    bessel_jnu_0f1,
    bessel_jnu_1f1,
    contiguous_residuals,
    pfq,
    pfq_coeffs,
    pfq_ode_residual,
)
from .series import PowerSeries, fraction_str

EXACT = "rational-exact"
FLOAT = "float-tolerance"

MU_RATIONAL = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(7, 2))
MU_FLOAT = (0.25, 0.5, 1.0, 2.5)
X_GRID = tuple(10 * i / 16 for i in range(17))
N_GRID = tuple(range(7))
ORDER = 40

TOL_SERIES = 1e-10
TOL_QUAD = 1e-8


@dataclass(frozen=True)
class IdentityCheck:
    id: str
    mode: str
    grid: tuple
    runner: Callable = field(compare=False, repr=False)
    tolerance: float | None = None
    description: str = ""
    validate: Callable | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == FLOAT and not (self.tolerance and self.tolerance > 0):
            raise ValueError(f"{self.id}: float checks need a positive tolerance")
        object.__setattr__(self, "grid", tuple((k, tuple(v)) for k, v in dict(self.grid).items()))

    def with_grid(self, **ranges) -> "IdentityCheck":
        g = dict(self.grid)
        g.update(ranges)
        return replace(self, grid=tuple(g.items()))

    def cases(self) -> list[dict]:
        names = [k for k, _ in self.grid]
        values = [v for _, v in self.grid]
        return [dict(zip(names, combo)) for combo in itertools.product(*values)]


def _plain(v):
    if isinstance(v, Fraction):
        return fraction_str(v)
    if isinstance(v, tuple):
        return [_plain(u) for u in v]
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    return str(v)


@dataclass(frozen=True)
class IdentityReport:
    id: str
    status: str
    mode: str
    cases_run: int
    worst_case: dict
    elapsed_ms: float
    reason: str | None = None

    def to_dict(self) -> dict:
        d = {
            "id": self.id,
            "status": self.status,
            "mode": self.mode,
            "cases_run": self.cases_run,
            "worst_case": self.worst_case,
            "elapsed_ms": self.elapsed_ms,
        }
        if self.reason is not None:
            d["reason"] = self.reason
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: Mapping) -> "IdentityReport":
        return cls(d["id"], d["status"], d["mode"], d["cases_run"], d["worst_case"],
                   d["elapsed_ms"], d.get("reason"))


# -- running ------------------------------------------------------------------------


def _measure(check: IdentityCheck, value):
    if check.mode == EXACT:
        return abs(Fraction(value))
    v = float(value)
    return math.inf if math.isnan(v) else v


def _failed(check: IdentityCheck, r) -> bool:
    return r != 0 if check.mode == EXACT else not (r <= check.tolerance)


def run_check(check: IdentityCheck, perturb=0) -> IdentityReport:
    """Execute every grid point in order; the worst residual is kept."""
    if check.id not in REGISTRY:
        raise DomainError(f"unregistered check {check.id!r}")
    start = time.perf_counter()
    cases = check.cases()
    runnable, reasons = [], []
    for case in cases:
        why = check.validate(case) if check.validate else None
        if why:
            reasons.append(why)
        else:
            runnable.append(case)
    if not runnable:
        reason = reasons[0] if reasons else "empty grid"
        return IdentityReport(check.id, "skipped", check.mode, 0, {"params": {}, "residual": None},
                              round((time.perf_counter() - start) * 1000, 3), reason)
    worst, worst_case = None, None
    for case in runnable:
        r = _measure(check, check.runner(case, perturb))
        if worst is None or r > worst:
            worst, worst_case = r, case
    status = "fail" if _failed(check, worst) else "pass"
    residual = fraction_str(worst) if check.mode == EXACT else worst
    reason = None
    if reasons:
        reason = f"{len(reasons)} case(s) outside the domain skipped: {reasons[0]}"
    return IdentityReport(check.id, status, check.mode, len(runnable),
                          {"params": {k: _plain(v) for k, v in worst_case.items()}, "residual": residual},
                          round((time.perf_counter() - start) * 1000, 3), reason)


def resolve(ids: Iterable[str]) -> list[IdentityCheck]:
    out = []
    for i in ids:
        if i not in REGISTRY:
            raise DomainError(f"unknown identity {i!r}")
        out.append(REGISTRY[i])
    return out


def run_suite(ids: Iterable[str], parallelism: int = 1, perturb=0) -> list[IdentityReport]:
    """Reports in the order of ``ids`` whatever the execution order."""
    checks = resolve(ids)
    if parallelism <= 1:
        return [run_check(c, perturb) for c in checks]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(lambda c: run_check(c, perturb), checks))


def suite_passed(reports: Iterable[IdentityReport]) -> bool:
    return all(r.status in ("pass", "skipped") for r in reports)


def mutation_self_test(ids: Iterable[str] | None = None, parallelism: int = 1) -> dict:
    """id -> True when the perturbed identity is reported as failing."""
    ids = list(REGISTRY) if ids is None else list(ids)
    reports = run_suite(ids, parallelism, perturb=1)
    return {r.id: r.status == "fail" for r in reports}


def reports_document(reports: Iterable[IdentityReport]) -> str:
    """JSON document with stable key order, one record per check."""
    reports = list(reports)
    doc = {"passed": suite_passed(reports), "reports": [r.to_dict() for r in reports]}
    return json.dumps(doc, indent=2)


# -- residual helpers ---------------------------------------------------------------


def _top(s: PowerSeries, order: int):
    """Largest coefficient magnitude through degree ``order - 2``."""
    through = order - 2
    if s.order < through:
        raise AssertionError(f"residual only known through degree {s.order} < {through}")
    return s.max_abs(through)


def _diff(lhs, rhs, perturb, scale=1.0) -> float:
    return abs(lhs - (1 + perturb) * rhs) / scale


def _rel(lhs, rhs, perturb) -> float:
    return _diff(lhs, rhs, perturb, max(1.0, abs(rhs)))


def _poly(degree: int, salt: int = 0) -> PowerSeries:
    """Fixed pseudo-random rational polynomial (deterministic)."""
    return PowerSeries(tuple(Fraction((7919 * (k + salt) + 13) % 23 - 11, 1 + (k * 5 + salt) % 7)
                             for k in range(degree + 1)))


def _pad(s: PowerSeries, order: int) -> PowerSeries:
    return PowerSeries(s.coeffs + (Fraction(0),) * (order - s.order))


@lru_cache(maxsize=512)
def _window(family: Family, mu: float, x: float):
    return deformed.generating_window(family, mu, x, max(8, deformed.auto_half_width(family, mu, x)))


def _ev(family, n, mu, x) -> float:
    return deformed.eval(family, n, mu, x).value


def _skip_mu_zero(case):
    return "integral representation needs mu > 0" if case["mu"] == 0 else None


def _skip_superscript(case):
    # [k]_(mu-1) = k + 2(mu-1) vanishes for an odd k = 2(1-mu) > 0
    mu = Fraction(case["mu"])
    k = 2 * (1 - mu)
    if k > 0 and k.denominator == 1 and k % 2 == 1:
        return f"[{k}]_(mu-1) = 0 at mu = {fraction_str(mu)}"
    return None


# -- dunkl-core ---------------------------------------------------------------------


def _dun(c, p):
    f = _poly(c["degree"])
    left = dunkl_apply(intertwine_coeff(f, c["mu"]), c["mu"])
    right = intertwine_coeff(f.derivative(), c["mu"])
    return (left - right.scale(1 + p)).max_abs()


def _product_rule(c, p):
    mu, d = c["mu"], c["degree"]
    order = 2 * d
    f, g = _pad(_poly(d, 1), order), _pad(_poly(d, 4), order)
    lhs = dunkl_apply(f * g, mu)
    df, dg = dunkl_apply(f, mu), dunkl_apply(g, mu)
    rhs = f * dg + g.reflect() * df + f.derivative() * (g - g.reflect())
    return (lhs - rhs - (f * dg).scale(p)).max_abs()


def _emu_eigen(c, p):
    s = e_mu_coeffs(c["mu"], ORDER, c["lam"])
    return (dunkl_apply(s, c["mu"]) - s.scale(c["lam"] * (1 + p))).max_abs(ORDER - 1)


def _evn(c, p):
    v = intertwine_quad(math.exp, c["x"], c["mu"], 40).value
    return _rel(v, e_mu(c["x"], c["mu"]).value, p)


def _translate_monomial(c, p):
    # tau_y = E_mu(y D): sum_j y^j / [j]! D^j x^n
    n, mu, y = c["n"], c["mu"], c["y"]
    mono = PowerSeries.monomial(n, n)
    lhs = translate(mono, y, mu)
    acc = [Fraction(0)] * (n + 1)
    s = mono
    for j in range(n + 1):
        w = y ** j * inverse_deformed_factorial(j, mu)
        for k in range(s.order + 1):
            acc[k] += w * s[k]
        s = dunkl_apply(s, mu)
    return (lhs - PowerSeries(tuple(acc)).scale(1 + p)).max_abs()


def _translate_exp(c, p):
    mu, lam, y = c["mu"], c["lam"], c["y"]
    lhs = translate(e_mu_coeffs(mu, ORDER, lam), y, mu)
    rhs = []
    for k in range(ORDER + 1):
        ey = sum((lam * y) ** i * inverse_deformed_factorial(i, mu) for i in range(ORDER - k + 1))
        rhs.append(lam ** k * inverse_deformed_factorial(k, mu) * ey)
    return (lhs - PowerSeries(tuple(rhs)).scale(1 + p)).max_abs()


# -- bessel-classical ---------------------------------------------------------------


def _parity(c, p):
    n, x = c["n"], c["x"]
    direct = classical._series_eval(-n, x, 1e-15).value  # starts at k = n
    return _rel(direct, (-1) ** n * bessel_j(n, x).value, p)


def _jc(n, order):
    s = bessel_j_coeffs(abs(n), order)
    return s.scale(-1) if n < 0 and n % 2 else s


def _bessel1(c, p):
    n = c["n"]
    r = _jc(n, ORDER).derivative().scale(2 + p) - (_jc(n - 1, ORDER) - _jc(n + 1, ORDER))
    return _top(r, ORDER)


def _bessel2(c, p):
    n = c["n"]
    j = _jc(n, ORDER)
    r = j.scale(n + p) - (_jc(n - 1, ORDER).shift() - j.derivative().shift())
    return _top(r, ORDER)


def _bessel3(c, p):
    n = c["n"]
    j = _jc(n, ORDER)
    r = j.scale(n + p) - (_jc(n + 1, ORDER).shift() + j.derivative().shift())
    return _top(r, ORDER)


def _bessel4(c, p):
    n = c["n"]
    r = (_jc(n - 1, ORDER) + _jc(n + 1, ORDER)).shift() - _jc(n, ORDER).scale(2 * n + p)
    return _top(r, ORDER)


def _poisson(c, p):
    return _diff(bessel_j_poisson(c["n"], c["x"]).value, bessel_j(c["n"], c["x"]).value, p)


def _addition(c, p):
    n, x, y = c["n"], c["x"], c["y"]
    K = classical.addition_cutoff(x, y, 1e-12)
    rhs = math.fsum(bessel_j(k, x).value * bessel_j(n - k, y).value for k in range(-K, K + 1))
    return _diff(bessel_j(n, x + y).value, rhs, p)


# -- first deformation --------------------------------------------------------------


def _jmu_parity(c, p):
    # start-index form of the defining series at -n, against (-1)^n times order n
    n, mu = c["n"], c["mu"]
    c_neg = [Fraction(0)] * (ORDER + 1)
    k = n
    while 2 * k - n <= ORDER:
        d = 2 * k - n
        v = deformed._coefficient(Family.J_MU, -n, k, mu) / 2 ** d
        c_neg[d] = -v if k % 2 else v
        k += 1
    rhs = deformed.coeffs(Family.J_MU, n, mu, ORDER).scale((-1) ** n * (1 + p))
    return (PowerSeries(tuple(c_neg)) - rhs).max_abs()


def _ode(family):
    def run(c, p):
        return _top(deformed.ode_residual(family, c["n"], c["mu"], ORDER, perturb=p), ORDER)
    return run


def _recurrence(rid):
    def run(c, p):
        return _top(deformed.recurrence_residual(rid, None, c["n"], c["mu"], ORDER, perturb=p), ORDER)
    return run


def _gen(family):
    def run(c, p):
        w = _window(family, c["mu"], c["x"])
        return _diff(w[c["n"]], _ev(family, c["n"], c["mu"], c["x"]), p)
    return run


def _sum1(c, p):
    w = _window(Family.J_MU, c["mu"], c["x"])
    return _diff(math.fsum(w.coeffs.values()), 1.0, p)


def _sum2(c, p):
    mu, x = c["mu"], c["x"]
    terms = [_ev(Family.J_MU, 0, mu, x)]
    k = 1
    while True:
        t = _ev(Family.J_MU, 2 * k, mu, x)
        terms.append(2 * t)
        if deformed.order_bound(2 * k, x) < 1e-18:
            break
        k += 1
    return _diff(math.fsum(terms), 1.0, p)


def _fourier(c, p):
    n, mu, x = c["n"], c["mu"], c["x"]
    return _diff(deformed.fourier_coefficient(n, mu, x).value, _ev(Family.J_MU, n, mu, x), p)


def _hyp(family):
    def run(c, p):
        n, mu, x = c["n"], c["mu"], c["x"]
        return _diff(deformed.hyp_form(family, n, mu, x).value, _ev(family, n, mu, x), p)
    return run


def _poisson_deformed(family):
    def run(c, p):
        n, mu, x = c["n"], c["mu"], c["x"]
        return _diff(deformed.poisson_eval(family, n, mu, x).value, _ev(family, n, mu, x), p)
    return run


def _daddition(c, p):
    n, mu, x, y = c["n"], c["mu"], c["x"], c["y"]
    if not p:
        return deformed.addition_check(n, mu, x, y, 30, 60).value
    lhs, rhs, _ = deformed.addition_sides(n, mu, x, y, 30, 60)
    return _diff(lhs, rhs, p)


def _connection(family):
    def run(c, p):
        n, mu, x = c["n"], c["mu"], c["x"]
        return _diff(deformed.connection_eval(family, n, mu, x, 40).value, _ev(family, n, mu, x), p)
    return run


def _asym_scale(family, n, mu, x):
    env = special.gamma(mu + 0.5) / math.pi * (x / 2) ** (-mu - 0.5)
    osc = env * math.cos(x - 0.5 * math.pi * (0.5 + n + mu))
    return env + abs(deformed.asymptotic_eval(family, n, mu, x) - osc)


def asymptotic_window_error(family, n: int, mu: float, x: float, perturb=0, points: int = 16) -> float:
    """Largest scale-normalized error of the two-term form over one period from x.

    The raw relative error is useless near the zeros of the oscillation, so the
    difference is divided by the size of the form itself (amplitude plus
    algebraic term) and maximized over ``[x, x + 2 pi)``.
    """
    worst = 0.0
    for j in range(points):
        s = x + 2 * math.pi * j / points
        a = deformed.asymptotic_eval(family, n, mu, s) * (1 + perturb)
        worst = max(worst, abs(a - _ev(family, n, mu, s)) / _asym_scale(family, n, mu, s))
    return worst


ASYMPTOTIC_XS = (40.0, 80.0, 160.0)
ASYMPTOTIC_TOL = 5e-2


def _asymptotic(family):
    def run(c, p):
        errs = [asymptotic_window_error(family, c["n"], c["mu"], x, p) for x in ASYMPTOTIC_XS]
        decreasing = all(b < a for a, b in zip(errs, errs[1:]))
        # residual in tolerance units: last error, or infinity when not decaying
        return errs[-1] if decreasing else math.inf
    return run


# -- second deformation -------------------------------------------------------------


def _kummer(c, p):
    a, b, x = c["a"], c["b"], c["x"]
    lhs = pfq(HypergeometricSpec((a,), (b,)), x).value
    rhs = math.exp(x) * pfq(HypergeometricSpec((b - a,), (b,)), -x).value
    return _rel(lhs, rhs, p)


# -- appendix -----------------------------------------------------------------------

APPENDIX_SPECS = (
    HypergeometricSpec((Fraction(1, 2),), (Fraction(3), Fraction(5, 4))),
    HypergeometricSpec((Fraction(-3, 7), Fraction(2)), (Fraction(1, 3),)),
    HypergeometricSpec((Fraction(5, 2),), (Fraction(7, 3), Fraction(-1, 2))),
    HypergeometricSpec((Fraction(1, 3), Fraction(4, 5), Fraction(2)), (Fraction(3, 2), Fraction(9, 4))),
    HypergeometricSpec((Fraction(-4),), (Fraction(1, 6),)),
)
APPENDIX_ORDER = 25


def _pfq_ode(c, p):
    spec = c["spec"]
    r = pfq_ode_residual(spec, APPENDIX_ORDER)
    if p:
        r = r + pfq_coeffs(spec, APPENDIX_ORDER).scale(p)
    return r.max_abs(APPENDIX_ORDER - 2)


def _contiguous(key):
    def run(c, p):
        spec = c["spec"]
        r = contiguous_residuals(spec, APPENDIX_ORDER)[key]
        if p:
            r = r + pfq_coeffs(spec, APPENDIX_ORDER).scale(p)
        return r.max_abs(APPENDIX_ORDER - 2)
    return run


def _contiguous_valid(key):
    def check(c):
        spec = c["spec"]
        if key == "lower_b1" and (spec.q < 1 or spec.lower[0] - 1 == 0):
            return "b1 - 1 = 0: lowered series undefined"
        if key == "raise_a1" and spec.p < 1:
            return "no upper parameter"
        return None
    return check


def _pfq_exp(c, p):
    return _rel(pfq(HypergeometricSpec((), ()), c["x"], 1e-16).value, math.exp(c["x"]), p)


def _pfq_binomial(c, p):
    a, x = c["a"], c["x"]
    return _rel(pfq(HypergeometricSpec((a,), ()), x, 1e-16).value, (1 - x) ** (-a), p)


def _jnu(which):
    def run(c, p):
        nu, x = c["nu"], c["x"]
        v = (bessel_jnu_0f1 if which == "0f1" else bessel_jnu_1f1)(nu, x).value
        return _diff(v, float(special.jv(nu, x)), p)
    return run


# -- registry -----------------------------------------------------------------------


def _mk(*checks: IdentityCheck) -> dict:
    reg = {}
    for c in checks:
        if c.id in reg:
            raise ValueError(f"duplicate check id {c.id}")
        reg[c.id] = c
    return reg


_N_NEG = tuple(range(-3, 7))
_X4 = (0.5, 2.0, 5.0, 8.0)
_X3 = (0.5, 2.0, 5.0)
_MU_GEN = (0.25, 1.0)
_MU_SUP = tuple(m for m in MU_RATIONAL if m != Fraction(1, 2))
_SPEC_GRID = APPENDIX_SPECS


def _exact_grid(n=N_GRID, mu=MU_RATIONAL):
    return {"mu": mu, "n": n}


def _build_registry() -> dict:
    E, F = EXACT, FLOAT
    checks = [
        IdentityCheck("eq.dun", E, {"mu": MU_RATIONAL, "degree": (30,)}, _dun,
                      description="D_mu V_mu = V_mu d/dx on a degree-30 polynomial"),
        IdentityCheck("dunkl.product_rule", E,
                      {"mu": (Fraction(0), Fraction(3, 10), Fraction(1), Fraction(5, 2)), "degree": (6, 12)},
                      _product_rule, description="Dunkl product rule on polynomial pairs"),
        IdentityCheck("dunkl.emu_eigen", E, {"mu": MU_RATIONAL, "lam": (Fraction(1), Fraction(-2), Fraction(1, 3))},
                      _emu_eigen, description="D_mu E_mu(lam x) = lam E_mu(lam x)"),
        IdentityCheck("eq.evn", F, {"mu": MU_FLOAT, "x": (-2.0, -1.0, 0.5, 1.0, 3.0)}, _evn, TOL_QUAD,
                      "E_mu = V_mu(exp) by Gauss-Jacobi", _skip_mu_zero),
        IdentityCheck("dunkl.translate_monomial", E,
                      {"mu": MU_RATIONAL, "n": tuple(range(13)), "y": (Fraction(1, 2), Fraction(-3), Fraction(2, 7))},
                      _translate_monomial, description="tau_y x^n against E_mu(y D_mu) x^n"),
        IdentityCheck("dunkl.translate_exp", E,
                      {"mu": MU_RATIONAL, "lam": (Fraction(1), Fraction(-1, 2)), "y": (Fraction(2, 3), Fraction(-2))},
                      _translate_exp, description="tau_y E_mu(lam x) = E_mu(lam x) E_mu(lam y)"),
        IdentityCheck("eq.parity", F, {"n": tuple(range(1, 9)), "x": X_GRID}, _parity, TOL_SERIES,
                      "J_-n = (-1)^n J_n from the start-index series"),
        IdentityCheck("eq.bessel1", E, {"n": tuple(range(-3, 11))}, _bessel1, description="2J' = J_(n-1) - J_(n+1)"),
        IdentityCheck("eq.bessel2", E, {"n": tuple(range(-3, 11))}, _bessel2, description="nJ = xJ_(n-1) - xJ'"),
        IdentityCheck("eq.bessel3", E, {"n": tuple(range(-3, 11))}, _bessel3, description="nJ = xJ_(n+1) + xJ'"),
        IdentityCheck("eq.bessel4", E, {"n": tuple(range(-3, 11))}, _bessel4,
                      description="J_(n-1) + J_(n+1) = (2n/x) J_n"),
        IdentityCheck("eq.poisson", F, {"n": N_GRID, "x": X_GRID}, _poisson, TOL_SERIES,
                      "classical Poisson integral"),
        IdentityCheck("eq.addition", F, {"n": tuple(range(6)), "x": (0.5, 1.5, 3.0), "y": (0.5, 1.5, 3.0)},
                      _addition, TOL_SERIES, "classical addition theorem"),
        # first deformation
        IdentityCheck("jmu.parity", E, _exact_grid(n=tuple(range(1, 7))), _jmu_parity,
                      description="J^mu_-n = (-1)^n J^mu_n"),
        IdentityCheck("eq.eqdiff-un", E, _exact_grid(), _ode(Family.J_MU),
                      description="third-order equation for J^mu_n"),
        IdentityCheck("eq.gen", F, {"mu": _MU_GEN, "x": _X3, "n": tuple(range(-8, 9))}, _gen(Family.J_MU),
                      TOL_SERIES, "E_mu((x/2)(t - 1/t)) Laurent coefficients"),
        IdentityCheck("gen.sum1", F, {"mu": MU_FLOAT, "x": _X3}, _sum1, TOL_SERIES, "sum_n J^mu_n = 1"),
        IdentityCheck("gen.sum2", F, {"mu": MU_FLOAT, "x": _X3}, _sum2, TOL_SERIES,
                      "J^mu_0 + 2 sum J^mu_2n = 1"),
        IdentityCheck("jmu.fourier", F, {"mu": (0.5, 1.0), "x": _X4, "n": tuple(range(-3, 6))}, _fourier, TOL_QUAD,
                      "Fourier integral of E_mu(i x sin th)"),
    ]
    for i in range(1, 5):
        checks.append(IdentityCheck(f"eq.dbessel{i}", E, _exact_grid(n=_N_NEG), _recurrence(f"eq.dbessel{i}"),
                                    description=f"first-deformation recurrence {i}"))
    checks += [
        IdentityCheck("jmu.superscript", E, _exact_grid(mu=_MU_SUP), _recurrence("jmu.superscript"),
                      description="(xD + beta_n + 2mu - 1) J^mu = (2mu - 1) J^(mu-1)", validate=_skip_superscript),
        IdentityCheck("jmu.hyp1f2", F, {"mu": MU_FLOAT, "n": N_GRID, "x": X_GRID}, _hyp(Family.J_MU), TOL_SERIES,
                      "1F2 form of J^mu_n"),
        IdentityCheck("jmu.poisson", F, {"mu": (0.5, 1.0, 2.5), "n": tuple(range(6)), "x": _X4},
                      _poisson_deformed(Family.J_MU), TOL_QUAD, "mu-Poisson formula"),
        IdentityCheck("eq.daddition", F,
                      {"mu": (0.5, 1.0), "n": (0, 1, 3), "x": (0.5, 1.0, 2.5), "y": (0.5, 1.0, 2.5)},
                      _daddition, TOL_QUAD, "deformed addition theorem"),
        IdentityCheck("eq.connection1", F, {"mu": MU_FLOAT, "n": _N_NEG, "x": _X4}, _connection(Family.J_MU),
                      TOL_SERIES, "J^mu_n in classical J_(n+k)"),
        IdentityCheck("jmu.asymptotic", F, {"mu": (0.5, 1.0), "n": tuple(range(4))}, _asymptotic(Family.J_MU),
                      ASYMPTOTIC_TOL, "two-term large-x form, windowed error decaying in x"),
        # second deformation
        IdentityCheck("caljmu.definition", F, {"mu": (0.5, 1.0, 2.5), "n": tuple(range(6)), "x": _X4},
                      _poisson_deformed(Family.CAL_J_MU), TOL_QUAD, "integral definition against the series"),
        IdentityCheck("eq.eqdiff", E, _exact_grid(), _ode(Family.CAL_J_MU),
                      description="third-order equation for the second deformation"),
        IdentityCheck("eq.gen2", F, {"mu": _MU_GEN, "x": _X3, "n": tuple(range(-8, 9))}, _gen(Family.CAL_J_MU),
                      TOL_SERIES, "e^(xt/2) 1F1(1/2; mu+1/2; -x/(2t)) Laurent coefficients"),
        IdentityCheck("caljmu.lower", E, _exact_grid(n=_N_NEG), _recurrence("caljmu.lower"),
                      description="(xD - [-n]) J = x J_(n-1)"),
        IdentityCheck("eq.rec2", E, _exact_grid(n=_N_NEG), _recurrence("eq.rec2"),
                      description="second-deformation three-term recursion"),
        IdentityCheck("caljmu.kummer", F,
                      {"a": (0.5, 1.0, 2.5), "b": (0.5, 1.0, 2.5), "x": tuple(float(v) for v in range(-8, 9))},
                      _kummer, 1e-11, "Kummer transformation of 1F1"),
        IdentityCheck("eq.connection", F, {"mu": MU_FLOAT, "n": _N_NEG, "x": _X4}, _connection(Family.CAL_J_MU),
                      TOL_SERIES, "second deformation in classical J_(n+k)"),
    ]
    for i in range(1, 4):
        checks.append(IdentityCheck(f"caljmu.mixed{i}", E, _exact_grid(n=_N_NEG), _recurrence(f"caljmu.mixed{i}"),
                                    description=f"mixed-superscript relation {i}"))
    checks += [
        IdentityCheck("caljmu.superscript", E, _exact_grid(n=_N_NEG, mu=_MU_SUP), _recurrence("caljmu.superscript"),
                      description="superscript-lowering relation", validate=_skip_superscript),
        IdentityCheck("caljmu.hyp1f2", F, {"mu": MU_FLOAT, "n": N_GRID, "x": X_GRID}, _hyp(Family.CAL_J_MU),
                      TOL_SERIES, "1F2 form of the second deformation"),
        IdentityCheck("caljmu.asymptotic", F, {"mu": (0.5, 1.0), "n": tuple(range(4))},
                      _asymptotic(Family.CAL_J_MU), ASYMPTOTIC_TOL,
                      "two-term large-x form, windowed error decaying in x"),
    ]
    for fam, tag in ((Family.D1, "d1"), (Family.D2, "d2")):
        checks.append(IdentityCheck(f"{tag}.gen", F, {"mu": _MU_GEN, "x": _X3, "n": tuple(range(-8, 9))}, _gen(fam),
                                    TOL_SERIES, "product generating function"))
        for i in range(1, 5):
            checks.append(IdentityCheck(f"{tag}.rec{i}", E, _exact_grid(n=_N_NEG), _recurrence(f"{tag}.rec{i}"),
                                        description=f"recursive relation {i}"))
        checks.append(IdentityCheck(f"{tag}.connection", F, {"mu": MU_FLOAT, "n": _N_NEG, "x": _X4},
                                    _connection(fam), TOL_SERIES, "expansion in classical J"))
    checks += [
        IdentityCheck("d3.gen", F, {"mu": _MU_GEN, "x": _X3, "n": tuple(range(-8, 9))}, _gen(Family.D3),
                      TOL_SERIES, "E_mu(xt/2) E_mu(-x/(2t)) Laurent coefficients"),
        # appendix
        IdentityCheck("pfq.ode", E, {"spec": _SPEC_GRID}, _pfq_ode, description="pFq differential equation"),
    ]
    for key in ("raise_a1", "lower_b1", "derivative"):
        checks.append(IdentityCheck(f"pfq.contiguous.{key}", E, {"spec": _SPEC_GRID}, _contiguous(key),
                                    description=f"differential recursion {key}", validate=_contiguous_valid(key)))
    checks += [
        IdentityCheck("pfq.exp", F, {"x": tuple(v / 10 for v in range(-9, 10))}, _pfq_exp, 1e-12, "0F0 = e^x"),
        IdentityCheck("pfq.binomial", F,
                      {"a": (0.5, 1.0, 2.5, -1.5), "x": tuple(v / 10 for v in range(-9, 10))},
                      _pfq_binomial, 1e-12, "1F0(a;;x) = (1 - x)^-a"),
        IdentityCheck("pfq.jnu_0f1", F, {"nu": (0.0, 0.5, 1.0, 2.5), "x": X_GRID}, _jnu("0f1"), TOL_SERIES,
                      "J_nu as 0F1"),
        IdentityCheck("pfq.jnu_1f1", F, {"nu": (0.0, 0.5, 1.0, 2.5), "x": X_GRID}, _jnu("1f1"), TOL_SERIES,
                      "J_nu as 1F1 with complex argument"),
    ]
    return _mk(*checks)


REGISTRY = _build_registry()

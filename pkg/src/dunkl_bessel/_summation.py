"""Shared machinery for summing hypergeometric-type series.

Every series evaluated in this package is generated by a term ratio,
``t[k+1] = t[k] * ratio(k)``.  The caller supplies the ratio *in terms of
plain arithmetic*, so the same closure runs on floats, complex numbers or
mpmath values.  A float64 pass is tried first; when its rounding estimate
exceeds the requested tolerance (alternating series at large argument) the
sum is redone in an mpmath context with enough guard digits.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable

import mpmath

EPS = 2.0 ** -53
MAX_TERMS = 20000


class DomainError(ValueError):
    """An argument violates an operation's precondition."""


@dataclass(frozen=True)
class Evaluation:
    value: float
    abs_err_est: float
    work: int

    def __post_init__(self):
        if not self.abs_err_est >= 0:
            raise ValueError("abs_err_est must be non-negative")
        if self.work < 1:
            raise ValueError("work must be at least 1")


def check_tol(tol: float) -> None:
    if not (tol > 0):
        raise DomainError(f"tol must be positive, got {tol!r}")


_local = threading.local()


def mp_context(prec_bits: int):
    """Thread-private mpmath context; the global one is shared mutable state."""
    ctx = getattr(_local, "ctx", None)
    if ctx is None:
        ctx = mpmath.MPContext()
        _local.ctx = ctx
    ctx.prec = prec_bits
    return ctx


def _fsum(values):
    if any(isinstance(v, complex) for v in values):
        return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))
    return math.fsum(values)


@dataclass
class _Pass:
    value: object
    tail: float
    abs_sum: float
    round_est: float
    terms: int


# builder(conv) -> (first_term, ratio(k), ratio_bound(k))
# conv turns a Python float/complex/int into the working scalar type.
Builder = Callable[[Callable], tuple]


def _run(first, ratio, ratio_bound, tol, *, start, min_index, last_index, fsum):
    terms = []
    t = first
    partial = t * 0
    k = start
    tail = math.inf
    while True:
        terms.append(t)
        partial = partial + t
        if last_index is not None:
            if k >= last_index:
                tail = 0.0
                break
        elif k >= min_index:
            rb = ratio_bound(k)
            if rb < 1:
                tail = float(abs(t)) * rb / (1 - rb)
                if tail <= tol * float(abs(partial)):
                    break
        if len(terms) >= MAX_TERMS:
            raise DomainError("series did not converge within the term budget")
        t = t * ratio(k)
        k += 1
    value = fsum(terms)
    abs_sum = float(sum(abs(v) for v in terms))
    round_est = EPS * sum((3 + 2 * i) * float(abs(v)) for i, v in enumerate(terms))
    return _Pass(value, tail, abs_sum, round_est, len(terms))


def evaluate_series(
    builder: Builder,
    tol: float,
    *,
    start: int = 0,
    min_index: int = 0,
    last_index: int | None = None,
    complex_result: bool = False,
) -> Evaluation:
    """Sum the series described by ``builder`` to relative tolerance ``tol``.

    ``start`` is the index of the first term (the ratio is called with the
    running index), ``min_index`` suppresses the stopping test below it, and
    ``last_index`` marks a terminating series that is summed exactly.
    """
    check_tol(tol)
    first, ratio, bound = builder(lambda v: v)
    p = _run(first, ratio, bound, tol, start=start, min_index=min_index,
             last_index=last_index, fsum=_fsum)
    scale = abs(p.value)
    if p.round_est <= tol * scale or p.round_est == 0.0:
        err = p.tail + p.round_est
        return Evaluation(p.value, err, p.terms)

    # cancellation: redo with guard digits proportional to the lost ones.  The
    # float value may be pure rounding noise, so the size of the true value is
    # re-read from each extended pass until the precision covers it.
    complex_result = complex_result or isinstance(p.value, complex)
    want = int(math.ceil(-math.log2(tol))) + 64
    scale = max(scale, EPS * p.abs_sum)
    bits = 0
    for _ in range(8):
        lost = math.log2(max(1.0, p.abs_sum / max(scale, 1e-300)))
        need = want + int(math.ceil(lost))
        if need <= bits:
            break
        bits = need
        ctx = mp_context(bits)
        conv = ctx.mpc if complex_result else ctx.mpf
        first, ratio, bound = builder(conv)
        q = _run(first, ratio, bound, tol, start=start, min_index=min_index,
                 last_index=last_index, fsum=ctx.fsum)
        scale = float(abs(q.value))
    value = complex(q.value) if complex_result else float(q.value)
    err = q.tail + EPS * abs(value) + q.abs_sum * 2.0 ** (-bits + 4)
    return Evaluation(value, err, q.terms)

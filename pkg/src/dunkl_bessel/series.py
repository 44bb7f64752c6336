"""Truncated power series with float or exact-rational coefficients.

A :class:`PowerSeries` stores the coefficients ``a_0 .. a_order`` of a function
analytic at the origin.  Every coefficient it holds is *known*: operations that
lose information at the top (differentiation, products with a shorter series)
lower ``order`` instead of inventing zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Callable, Iterable, Sequence

FLOAT64 = "float64"
EXACT = "exact-rational"


def is_exact_scalar(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def fraction_str(value) -> str:
    """Render an exact scalar as ``"p/q"`` (integers get ``/1``)."""
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple

    def __post_init__(self):
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) == 0:
            raise ValueError("a power series needs at least the constant coefficient")

    # -- construction ---------------------------------------------------------------

    @classmethod
    def zero(cls, order: int, exact: bool = True) -> "PowerSeries":
        z = Fraction(0) if exact else 0.0
        return cls((z,) * (order + 1))

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1, exact: bool = True) -> "PowerSeries":
        z = Fraction(0) if exact else 0.0
        c = [z] * (order + 1)
        if 0 <= k <= order:
            c[k] = Fraction(coeff) if exact else float(coeff)
        return cls(tuple(c))

    @classmethod
    def from_function(cls, fn: Callable[[int], object], order: int) -> "PowerSeries":
        return cls(tuple(fn(k) for k in range(order + 1)))

    # -- introspection ----------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def scalar_kind(self) -> str:
        return EXACT if all(is_exact_scalar(c) for c in self.coeffs) else FLOAT64

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def is_zero(self, through: int | None = None) -> bool:
        top = self.order if through is None else min(through, self.order)
        return all(c == 0 for c in self.coeffs[: top + 1])

    def max_abs(self, through: int | None = None):
        top = self.order if through is None else min(through, self.order)
        return max(abs(c) for c in self.coeffs[: top + 1])

    # -- arithmetic -------------------------------------------------------------------

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return PowerSeries(self.coeffs[: order + 1])

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        top = min(self.order, other.order)
        return PowerSeries(tuple(self.coeffs[k] + other.coeffs[k] for k in range(top + 1)))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        top = min(self.order, other.order)
        return PowerSeries(tuple(self.coeffs[k] - other.coeffs[k] for k in range(top + 1)))

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(tuple(-c for c in self.coeffs))

    def scale(self, c) -> "PowerSeries":
        return PowerSeries(tuple(c * a for a in self.coeffs))

    def __rmul__(self, c) -> "PowerSeries":
        if isinstance(c, Number):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        top = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return PowerSeries(
            tuple(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(top + 1))
        )

    def shift(self, k: int = 1) -> "PowerSeries":
        """Multiply by ``x**k``; the result knows ``k`` more coefficients."""
        if k < 0:
            raise ValueError("use divide_x for negative shifts")
        z = self.coeffs[0] * 0
        return PowerSeries((z,) * k + self.coeffs)

    def divide_x(self) -> "PowerSeries":
        if self.coeffs[0] != 0:
            raise ValueError("series has a nonzero constant term; not divisible by x")
        if self.order == 0:
            return PowerSeries((self.coeffs[0],))
        return PowerSeries(self.coeffs[1:])

    def derivative(self) -> "PowerSeries":
        if self.order == 0:
            return PowerSeries((self.coeffs[0] * 0,))
        return PowerSeries(tuple(k * self.coeffs[k] for k in range(1, self.order + 1)))

    def euler(self, c=0) -> "PowerSeries":
        """Apply ``x d/dx + c``."""
        return PowerSeries(tuple((k + c) * a for k, a in enumerate(self.coeffs)))

    def diagonal(self, fn: Callable[[int], object]) -> "PowerSeries":
        return PowerSeries(tuple(fn(k) * a for k, a in enumerate(self.coeffs)))

    def compose_scale(self, lam) -> "PowerSeries":
        """Coefficients of ``f(lam * x)``."""
        out = []
        p = lam ** 0
        for a in self.coeffs:
            out.append(a * p)
            p = p * lam
        return PowerSeries(tuple(out))

    def reflect(self) -> "PowerSeries":
        """Coefficients of ``f(-x)``."""
        return PowerSeries(tuple(-a if k % 2 else a for k, a in enumerate(self.coeffs)))

    # -- evaluation / conversion ------------------------------------------------------

    def __call__(self, x):
        acc = self.coeffs[-1] * (x ** 0)
        for a in reversed(self.coeffs[:-1]):
            acc = acc * x + a
        return acc

    def to_float(self) -> "PowerSeries":
        return PowerSeries(tuple(float(c) for c in self.coeffs))

    def to_strings(self) -> list[str]:
        if self.scalar_kind != EXACT:
            raise TypeError("only exact series serialize as p/q strings")
        return [fraction_str(c) for c in self.coeffs]


def series_sum(terms: Iterable[PowerSeries]) -> PowerSeries:
    it = iter(terms)
    acc = next(it)
    for s in it:
        acc = acc + s
    return acc


def as_series(coeffs: Sequence, exact: bool | None = None) -> PowerSeries:
    if exact:
        return PowerSeries(tuple(Fraction(c) for c in coeffs))
    if exact is False:
        return PowerSeries(tuple(float(c) for c in coeffs))
    return PowerSeries(tuple(coeffs))

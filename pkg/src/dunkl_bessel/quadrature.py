"""Gauss-Jacobi quadrature for the weight ``(1-t)**alpha * (1+t)**beta`` on [-1, 1].

Nodes come from the eigenvalues of the symmetric Jacobi matrix of the monic
three-term recurrence (Golub-Welsch).  They are then polished by Newton steps
on the recurrence itself, and the weights are recomputed from the Christoffel
function, which is more accurate for the small outer weights than squared
eigenvector components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ._summation import DomainError


@dataclass(frozen=True)
class QuadratureRule:
    alpha: float
    beta: float
    nodes: tuple
    weights: tuple

    def __len__(self) -> int:
        return len(self.nodes)

    def integrate(self, f) -> float:
        """Apply the rule to a scalar callable (called once per node)."""
        return math.fsum(w * f(t) for t, w in zip(self.nodes, self.weights))

    @property
    def total_weight(self) -> float:
        return math.fsum(self.weights)


def jacobi_moment0(alpha: float, beta: float) -> float:
    """Integral of the weight itself, ``2**(a+b+1) B(a+1, b+1)``."""
    log_m0 = (
        (alpha + beta + 1) * math.log(2.0)
        + math.lgamma(alpha + 1)
        + math.lgamma(beta + 1)
        - math.lgamma(alpha + beta + 2)
    )
    return math.exp(log_m0)


def _recurrence(alpha: float, beta: float, m: int):
    """Diagonal ``a[0..m-1]`` and squared off-diagonal ``b2[1..m-1]`` (index 0 unused)."""
    ab = alpha + beta
    a = np.empty(m)
    b2 = np.zeros(m)
    a[0] = (beta - alpha) / (ab + 2)
    for k in range(1, m):
        s = 2 * k + ab
        a[k] = (beta * beta - alpha * alpha) / (s * (s + 2))
        if k == 1:
            # the (ab + 1) factor cancels; keeps alpha + beta = -1 regular
            b2[k] = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) ** 2 * (3 + ab))
        else:
            b2[k] = 4 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1) * (s - 1))
    return a, b2


@lru_cache(maxsize=256)
def _rule(alpha: float, beta: float, m: int) -> QuadratureRule:
    a, b2 = _recurrence(alpha, beta, m + 1)
    m0 = jacobi_moment0(alpha, beta)
    if m == 1:
        nodes = np.array([a[0]])
    else:
        nodes = eigh_tridiagonal(a[:m], np.sqrt(b2[1:m]), eigvals_only=True)
    bsq = np.sqrt(b2)
    polished = []
    weights = []
    for x0 in np.sort(nodes):
        x = float(x0)
        for _ in range(3):
            p, dp, _ = _eval(x, a, bsq, m, m0)
            if dp == 0:
                break
            step = p / dp
            x -= step
            if abs(step) <= 1e-16:
                break
        _, _, christoffel = _eval(x, a, bsq, m, m0)
        polished.append(x)
        weights.append(1.0 / christoffel)
    order = np.argsort(polished)
    nodes_t = tuple(float(polished[i]) for i in order)
    weights_t = tuple(float(weights[i]) for i in order)
    return QuadratureRule(float(alpha), float(beta), nodes_t, weights_t)


def _eval(x, a, b, m, m0):
    """q_m(x), q_m'(x) and sum_{k<m} q_k(x)**2 for the orthonormal family."""
    q_prev, q = 0.0, 1.0 / math.sqrt(m0)
    dq_prev, dq = 0.0, 0.0
    total = q * q
    for k in range(m):
        bk = b[k] if k > 0 else 0.0
        bn = b[k + 1]
        q_next = ((x - a[k]) * q - bk * q_prev) / bn
        dq_next = (q + (x - a[k]) * dq - bk * dq_prev) / bn
        q_prev, q = q, q_next
        dq_prev, dq = dq, dq_next
        if k + 1 < m:
            total += q * q
    return q, dq, total


def gauss_jacobi(alpha: float, beta: float, m: int) -> QuadratureRule:
    """m-point Gauss rule for ``(1-t)**alpha (1+t)**beta``, exact to degree 2m-1."""
    alpha = float(alpha)
    beta = float(beta)
    if not (alpha > -1 and beta > -1):
        raise DomainError(f"Jacobi exponents must exceed -1, got alpha={alpha}, beta={beta}")
    if int(m) != m or m < 1:
        raise DomainError(f"node count must be a positive integer, got {m!r}")
    return _rule(alpha, beta, int(m))

"""Resolvents and resolvent powers by three independent routes.

For a bounded generator A with ||T(t)|| <= M e^{omega t}:

* direct:    R(lambda, A) = (lambda I - A)^{-1}, powers by composition;
* Laplace:   R(lambda, A)^k = 1/(k-1)! * integral_0^inf e^{-lambda t}
             t^{k-1} T(t) dt for Re lambda > omega, by composite
             quadrature on [0, t_max] with an explicit tail bound;
* contour:   T(t) = 1/(2 pi i) * integral over |z| = r of e^{tz}
             R(z, A) dz for r >= ||A|| + 1 (trapezoid rule, which is
             spectrally accurate on closed analytic contours), feeding
             the same Laplace quadrature.

The three routes share no code path beyond the linear solver, so their
pairwise agreement is a genuine cross-check of each.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .linalg import (
    DenseOperator,
    LinalgError,
    SingularOperatorError,
    identity,
    op_norm,
)
from .semigroup import OperatorFamilyLimit, SemigroupFamily

__all__ = [
    "QuadratureSpec",
    "ContourSpec",
    "LaplaceResult",
    "SpectrumError",
    "resolvent_direct",
    "resolvent_power_direct",
    "resolvent_power_laplace",
    "dunford_evaluate",
    "dunford_semigroup",
    "resolvent_power_via_dunford",
    "default_quadrature",
    "default_contour",
    "laplace_tail_bound",
]


class SpectrumError(LinalgError):
    """lambda is (numerically) in the spectrum of the operator."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Truncated-Laplace quadrature: rule on [0, t_max] with `nodes` points."""

    t_max: float
    nodes: int = 256
    rule: str = "composite-gauss-legendre"

    def __post_init__(self):
        if self.t_max <= 0:
            raise LinalgError("t_max must be positive")
        if self.nodes < 16:
            raise LinalgError("quadrature needs at least 16 nodes")
        if self.rule not in ("composite-gauss-legendre", "composite-trapezoid"):
            raise LinalgError(f"unknown quadrature rule {self.rule!r}")

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        """Quadrature nodes and weights on [0, t_max]."""
        if self.rule == "composite-trapezoid":
            ts = np.linspace(0.0, self.t_max, self.nodes)
            h = ts[1] - ts[0]
            ws = np.full(self.nodes, h)
            ws[0] = ws[-1] = h / 2.0
            return ts, ws
        panel = min(32, self.nodes)
        n_panels = max(1, self.nodes // panel)
        base_x, base_w = _leggauss(panel)
        edges = np.linspace(0.0, self.t_max, n_panels + 1)
        ts, ws = [], []
        for a, b in zip(edges[:-1], edges[1:]):
            half = (b - a) / 2.0
            ts.append(half * (base_x + 1.0) + a)
            ws.append(half * base_w)
        return np.concatenate(ts), np.concatenate(ws)


@lru_cache(maxsize=None)
def _leggauss(m: int):
    x, w = np.polynomial.legendre.leggauss(m)
    return x, w


@dataclass(frozen=True)
class ContourSpec:
    """Circular Dunford contour |z| = radius sampled at `nodes` points."""

    radius: float
    nodes: int = 256

    def __post_init__(self):
        if self.radius <= 0:
            raise LinalgError("contour radius must be positive")
        if self.nodes < 64:
            raise LinalgError("contour needs at least 64 nodes")


@dataclass(frozen=True)
class LaplaceResult:
    """Quadrature value with its a-priori tail bound and a-posteriori rule estimate."""

    operator: DenseOperator
    tail_bound: float
    rule_estimate: float


def resolvent_direct(A: DenseOperator, lam: complex) -> DenseOperator:
    """R(lambda, A) = (lambda I - A)^{-1}, validated to 1e-10 residual."""
    lam = complex(lam)
    shifted = lam * identity(A.dim) - A
    try:
        s = np.linalg.svd(shifted.matrix, compute_uv=False)
        rcond = float(s[-1] / s[0]) if s[0] > 0 else 0.0
        if rcond < 1e-12:
            raise SingularOperatorError("singular", rcond)
        R = np.linalg.solve(shifted.matrix, np.eye(A.dim, dtype=np.complex128))
    except SingularOperatorError as exc:
        raise SpectrumError(
            f"lambda = {lam} is numerically in the spectrum "
            f"(reciprocal condition {exc.rcond:.3e})"
        ) from exc
    resid = float(np.linalg.norm(shifted.matrix @ R - np.eye(A.dim), 2))
    if resid > 1e-10:
        raise SpectrumError(
            f"resolvent validation failed at lambda = {lam}: residual {resid:.3e}"
        )
    return DenseOperator(R)


def resolvent_power_direct(A: DenseOperator, lam: complex, k: int) -> DenseOperator:
    """R(lambda, A)^k by repeated composition of the direct resolvent."""
    if k < 1:
        raise LinalgError(f"power k must be a positive integer, got {k}")
    R = resolvent_direct(A, lam)
    out = R
    for _ in range(k - 1):
        out = out @ R
    return out


def laplace_tail_bound(M: float, a: float, t_max: float, k: int) -> float:
    """Bound on || integral_{t_max}^inf e^{-a t} t^{k-1}/(k-1)! T(t)/M dt || * M.

    Closed form of the incomplete-gamma tail:
    M e^{-a T} sum_{j<k} T^j / (j! a^{k-j}).
    """
    if a <= 0:
        return math.inf
    total = 0.0
    for j in range(k):
        total += t_max**j / math.factorial(j) / a ** (k - j)
    return M * math.exp(-a * t_max) * total


def default_quadrature(
    lam: complex, M: float, omega: float, k: int = 1,
    nodes: int = 256, tail_tol: float = 1e-10,
) -> QuadratureSpec:
    """Choose t_max so the explicit tail bound drops below tail_tol."""
    a = lam.real - omega
    if a <= 0:
        raise LinalgError(
            f"Laplace representation needs Re lambda > omega "
            f"(got Re lambda = {lam.real}, omega = {omega})"
        )
    lo, hi = 1.0, 400.0
    if laplace_tail_bound(M, a, hi, k) > tail_tol:
        raise LinalgError("tail bound not attainable below t_max = 400")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if laplace_tail_bound(M, a, mid, k) <= tail_tol:
            hi = mid
        else:
            lo = mid
    return QuadratureSpec(t_max=hi, nodes=nodes)


def _laplace_sum(
    eval_T: Callable[[float], DenseOperator],
    lam: complex,
    k: int,
    ts: np.ndarray,
    ws: np.ndarray,
    D: int,
) -> np.ndarray:
    acc = np.zeros((D, D), dtype=np.complex128)
    fact = math.factorial(k - 1)
    # Fixed summation order keeps results bit-reproducible.
    for t, w in zip(ts, ws):
        coeff = w * cmath.exp(-lam * t) * t ** (k - 1) / fact
        acc = acc + coeff * eval_T(float(t)).matrix
    return acc


def resolvent_power_laplace(
    family: SemigroupFamily,
    lam: complex,
    k: int = 1,
    q: QuadratureSpec | None = None,
) -> LaplaceResult:
    """R(lambda, A)^k via the truncated Laplace transform of T(t).

    Requires Re lambda > omega so the integral converges; the result
    carries the explicit truncation tail bound and an a-posteriori rule
    estimate (difference against the half-node rule).
    """
    lam = complex(lam)
    if k < 1:
        raise LinalgError(f"power k must be a positive integer, got {k}")
    a = lam.real - family.omega
    if a <= 0:
        raise LinalgError(
            f"Laplace representation needs Re lambda > omega "
            f"(got Re lambda = {lam.real}, omega = {family.omega})"
        )
    if q is None:
        q = default_quadrature(lam, family.M, family.omega, k)
    ts, ws = q.points()
    cache: dict[float, DenseOperator] = {}

    def eval_T(t: float) -> DenseOperator:
        if t not in cache:
            cache[t] = family.at(t)
        return cache[t]

    D = family.dim
    value = _laplace_sum(eval_T, lam, k, ts, ws, D)
    coarse_spec = QuadratureSpec(q.t_max, max(16, q.nodes // 2), q.rule)
    cts, cws = coarse_spec.points()
    coarse = _laplace_sum(eval_T, lam, k, cts, cws, D)
    rule_estimate = float(np.linalg.norm(value - coarse, 2))
    tail = laplace_tail_bound(family.M, a, q.t_max, k)
    return LaplaceResult(DenseOperator(value), tail, rule_estimate)


def default_contour(A: DenseOperator, nodes: int = 256) -> ContourSpec:
    """Circle of radius ||A||_2 + 1, comfortably enclosing the spectrum."""
    return ContourSpec(radius=op_norm(A, 2.0).value + 1.0, nodes=nodes)


def _contour_resolvents(A: DenseOperator, c: ContourSpec) -> tuple[np.ndarray, np.ndarray]:
    """Resolvents R(z_j, A) at the equispaced contour nodes z_j."""
    theta = 2.0 * math.pi * np.arange(c.nodes) / c.nodes
    zs = c.radius * np.exp(1j * theta)
    Rs = np.empty((c.nodes, A.dim, A.dim), dtype=np.complex128)
    I = np.eye(A.dim, dtype=np.complex128)
    for j, z in enumerate(zs):
        Rs[j] = np.linalg.solve(z * I - A.matrix, I)
    return zs, Rs


def _dunford_split(radius: float) -> float:
    # e^{t z} on the contour reaches e^{t * radius}; cap the exponent at 8
    # so trapezoid-sum cancellation stays near machine precision, and use
    # the semigroup law to reach larger times by repeated squaring.
    return max(1e-3, min(1.0, 8.0 / radius))


def _dunford_from_nodes(zs: np.ndarray, Rs: np.ndarray, t: float, radius: float) -> np.ndarray:
    t_split = _dunford_split(radius)
    if t > t_split:
        half = _dunford_from_nodes(zs, Rs, t / 2.0, radius)
        return half @ half
    coeffs = zs * np.exp(t * zs) / len(zs)
    return np.tensordot(coeffs, Rs, axes=1)


def dunford_evaluate(A: DenseOperator, t: float, c: ContourSpec | None = None) -> DenseOperator:
    """T(t) = e^{tA} reconstructed from the contour integral of e^{tz} R(z, A).

    Precondition: ||A||_2 <= radius - 1 (the contour must enclose the
    spectrum with a unit margin).  Times above ~8/radius are reached by
    dyadic splitting T(t) = T(t/2)^2 to keep the oscillatory contour sum
    well conditioned.
    """
    if t < 0:
        raise LinalgError(f"dunford_evaluate needs t >= 0, got {t}")
    if c is None:
        c = default_contour(A)
    nrm = op_norm(A, 2.0).value
    if nrm > c.radius - 1.0 + 1e-6:
        raise LinalgError(
            f"contour radius {c.radius} too small: need ||A|| <= radius - 1, "
            f"got ||A||_2 = {nrm:.6g}"
        )
    zs, Rs = _contour_resolvents(A, c)
    return DenseOperator(_dunford_from_nodes(zs, Rs, t, c.radius))


def dunford_semigroup(A: DenseOperator, M: float, omega: float,
                      c: ContourSpec | None = None) -> OperatorFamilyLimit:
    """The map t -> T(t) evaluated entirely through the Dunford contour.

    Contour resolvents are factored once and reused across times, so this
    is the natural input for quadratures over many t values.
    """
    if c is None:
        c = default_contour(A)
    nrm = op_norm(A, 2.0).value
    if nrm > c.radius - 1.0 + 1e-6:
        raise LinalgError("contour radius too small for ||A|| + 1")
    zs, Rs = _contour_resolvents(A, c)

    def eval_at(t: float) -> DenseOperator:
        if t < 0:
            raise LinalgError("t >= 0 required")
        return DenseOperator(_dunford_from_nodes(zs, Rs, t, c.radius))

    return OperatorFamilyLimit(eval_at, label="dunford-reconstructed")


def resolvent_power_via_dunford(
    A: DenseOperator,
    lam: complex,
    k: int,
    M: float,
    omega: float,
    q: QuadratureSpec | None = None,
    c: ContourSpec | None = None,
) -> DenseOperator:
    """Third route: Laplace quadrature over the Dunford-reconstructed semigroup."""
    lam = complex(lam)
    if q is None:
        q = default_quadrature(lam, M, omega, k)
    reconstructed = dunford_semigroup(A, M, omega, c)
    ts, ws = q.points()
    value = _laplace_sum(reconstructed.at, lam, k, ts, ws, A.dim)
    return DenseOperator(value)

"""Semigroup families T(t) = e^{tA} and their defining properties.

A ``SemigroupFamily`` pairs a bounded generator with an evaluation strategy
and growth-bound metadata (M, omega) such that ||T(t)|| <= M e^{omega t}.
Strategies:

* ``numeric-exp``: scaling-and-squaring matrix exponential of the generator;
* ``closed-form-swap(n)``: cosh(t) I + sinh(t) S_n for an involution S_n
  (the even/odd split of the exponential series);
* ``closed-form-rescaled-swap(n)``: e^{-t} (cosh(t) I + sinh(t) S_n), the
  semigroup of S_n - I;
* ``scalar(c)``: e^{ct} I.

``OperatorFamilyLimit`` is deliberately a separate type: pointwise limits
of semigroups need not satisfy the semigroup law (the weak limit
cosh(t) I of the swap semigroups is the canonical example), so they must
be representable without weakening SemigroupFamily's invariants.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .linalg import DenseOperator, LinalgError, identity, matrix_exp, op_norm
from .operators import block_swap, rescaled_generator

__all__ = [
    "SemigroupFamily",
    "OperatorFamilyLimit",
    "GrowthBoundReport",
    "evaluate",
    "semigroup_law_residual",
    "growth_bound_check",
    "swap_semigroup",
    "rescaled_swap_semigroup",
    "scalar_semigroup",
    "numeric_semigroup",
    "cosh_identity_limit",
    "rescaled_cosh_limit",
]

STRATEGIES = ("numeric-exp", "closed-form-swap", "closed-form-rescaled-swap", "scalar")


@dataclass(frozen=True)
class SemigroupFamily:
    generator: DenseOperator
    strategy: str
    M: float = 1.0
    omega: float = 0.0
    swap_n: int | None = None
    scalar_c: complex | None = None
    exp_tol: float = 1e-12
    label: str = ""

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise LinalgError(f"unknown strategy {self.strategy!r}")
        if self.M < 1.0:
            raise LinalgError("growth constant M must be >= 1")
        if self.strategy in ("closed-form-swap", "closed-form-rescaled-swap"):
            if self.swap_n is None:
                raise LinalgError(f"{self.strategy} needs the block length")
        if self.strategy == "scalar" and self.scalar_c is None:
            raise LinalgError("scalar strategy needs the scalar c")

    @property
    def dim(self) -> int:
        return self.generator.dim

    def at(self, t: float) -> DenseOperator:
        return evaluate(self, t)


@dataclass(frozen=True)
class OperatorFamilyLimit:
    """A candidate pointwise limit t -> E(t), not necessarily a semigroup."""

    evaluation: Callable[[float], DenseOperator]
    label: str = ""

    def at(self, t: float) -> DenseOperator:
        return self.evaluation(t)


def swap_semigroup(n: int, D: int) -> SemigroupFamily:
    """T(t) = e^{t S_n} = cosh(t) I + sinh(t) S_n; ||T(t)|| = e^t."""
    return SemigroupFamily(
        generator=block_swap(n, D),
        strategy="closed-form-swap",
        M=1.0,
        omega=1.0,
        swap_n=n,
        label=f"swap(n={n})",
    )


def rescaled_swap_semigroup(n: int, D: int) -> SemigroupFamily:
    """Contraction semigroup of S_n - I: e^{-t}(cosh t I + sinh t S_n)."""
    return SemigroupFamily(
        generator=rescaled_generator(n, D),
        strategy="closed-form-rescaled-swap",
        M=1.0,
        omega=0.0,
        swap_n=n,
        label=f"rescaled-swap(n={n})",
    )


def scalar_semigroup(c: complex, D: int) -> SemigroupFamily:
    return SemigroupFamily(
        generator=complex(c) * identity(D),
        strategy="scalar",
        M=1.0,
        omega=max(0.0, float(np.real(c))),
        scalar_c=complex(c),
        label=f"scalar(c={c})",
    )


def numeric_semigroup(A: DenseOperator, M: float, omega: float, tol: float = 1e-12,
                      label: str = "") -> SemigroupFamily:
    return SemigroupFamily(A, "numeric-exp", M=M, omega=omega, exp_tol=tol, label=label)


def cosh_identity_limit(D: int) -> OperatorFamilyLimit:
    """t -> cosh(t) I, the weak limit of the swap semigroups."""
    return OperatorFamilyLimit(
        lambda t: math.cosh(t) * identity(D), label="cosh(t) I"
    )


def rescaled_cosh_limit(D: int) -> OperatorFamilyLimit:
    """t -> e^{-t} cosh(t) I, the weak limit of the rescaled swap semigroups."""
    return OperatorFamilyLimit(
        lambda t: (math.exp(-t) * math.cosh(t)) * identity(D),
        label="exp(-t) cosh(t) I",
    )


def evaluate(family: SemigroupFamily, t: float) -> DenseOperator:
    """T(t) for t >= 0 (semigroups, not groups; negative t is rejected)."""
    if t < 0:
        raise LinalgError(f"semigroup evaluation needs t >= 0, got {t}")
    s = family.strategy
    if s == "numeric-exp":
        return matrix_exp(family.generator, t, family.exp_tol)
    if s == "closed-form-swap":
        swap = block_swap(family.swap_n, family.dim)
        return math.cosh(t) * identity(family.dim) + math.sinh(t) * swap
    if s == "closed-form-rescaled-swap":
        swap = block_swap(family.swap_n, family.dim)
        ch = math.exp(-t) * math.cosh(t)
        sh = math.exp(-t) * math.sinh(t)
        return ch * identity(family.dim) + sh * swap
    # scalar
    return cmath.exp(family.scalar_c * t) * identity(family.dim)


def _eval(family: Union[SemigroupFamily, OperatorFamilyLimit], t: float) -> DenseOperator:
    return family.at(t)


def semigroup_law_residual(
    family: Union[SemigroupFamily, OperatorFamilyLimit], s: float, t: float
) -> float:
    """||E(s+t) - E(s) E(t)||_2 for the family's evaluation E.

    Zero (to tolerance) exactly when the family satisfies the semigroup
    law at (s, t); the weak limit cosh(t) I violates it with residual
    sinh(s) sinh(t).
    """
    if s < 0 or t < 0:
        raise LinalgError("law residual needs s, t >= 0")
    lhs = _eval(family, s + t)
    rhs = _eval(family, s) @ _eval(family, t)
    return op_norm(lhs - rhs, 2.0).value


@dataclass(frozen=True)
class GrowthBoundReport:
    M: float
    omega: float
    t_grid: tuple[float, ...]
    margins: tuple[float, ...]
    passed: bool


def growth_bound_check(
    family: Union[SemigroupFamily, OperatorFamilyLimit],
    M: float,
    omega: float,
    grid,
    slack: float = 1e-8,
) -> GrowthBoundReport:
    """Check ||T(t)||_2 <= M e^{omega t} on a time grid.

    Margins are M e^{omega t} - ||T(t)||_2; pass means every margin is
    >= -slack.
    """
    grid = tuple(float(t) for t in grid)
    if not grid:
        raise LinalgError("growth bound check needs a nonempty grid")
    if any(t < 0 for t in grid):
        raise LinalgError("growth bound grid must have t >= 0")
    margins = []
    for t in grid:
        nrm = op_norm(_eval(family, t), 2.0).value
        margins.append(M * math.exp(omega * t) - nrm)
    passed = all(m >= -slack for m in margins)
    return GrowthBoundReport(M, omega, grid, tuple(margins), passed)

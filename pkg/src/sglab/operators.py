"""The block-swap operator family and its derived generators.

``block_swap(n, D)`` realizes the coordinate permutation S_n that exchanges
the first n coordinates of a vector with the next n and fixes the rest:

    S_n (x_1 .. x_n, x_{n+1} .. x_{2n}, x_{2n+1} ..)
        = (x_{n+1} .. x_{2n}, x_1 .. x_n, x_{2n+1} ..).

On the truncation C^D with D >= 2n this matrix IS the full operator
restricted to the first D coordinates (the swap acts as the identity
beyond coordinate 2n), so the algebraic identities hold exactly:

    S_n^2 = I,     S_n = S_n^T,     ||S_n x||_p = ||x||_p,
    <S_n x, y> = 0  whenever x, y are supported in coordinates <= s <= n.

The last line is the finite-truncation form of "S_n tends weakly to zero":
once the swap moves the support of x past the support of y, the pairing
vanishes exactly, with no limit process involved.

Derived families:

* ``rescaled_generator(n, D)`` = S_n - I, which generates the contraction
  semigroup e^{-t}(cosh t I + sinh t S_n).
* ``contraction_v(n, D)``      = (1 - 1/n) S_n, a strict contraction with
  operator norm exactly 1 - 1/n.
* ``cayley_generator(spec)``   = (I + V)(V - I)^{-1}, the Cayley transform
  mapping a strict contraction V to the bounded generator B of a
  contraction semigroup, with R(1, B) = (I - V)/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DenseOperator,
    LinalgError,
    SingularOperatorError,
    identity,
    solve_matrix,
)

__all__ = [
    "BlockSwapSpec",
    "CogeneratorSpec",
    "block_swap",
    "rescaled_generator",
    "contraction_v",
    "cayley_generator",
]


@dataclass(frozen=True)
class BlockSwapSpec:
    """Block length n and truncation dimension D of a swap operator."""

    n: int
    D: int

    def __post_init__(self):
        if self.n < 1:
            raise LinalgError(f"block length must be positive, got {self.n}")
        if self.D < 2 * self.n:
            raise LinalgError(
                f"truncation D={self.D} cannot represent the swap of blocks "
                f"of length n={self.n}; D >= 2n required"
            )


@dataclass(frozen=True)
class CogeneratorSpec:
    """A contraction V together with its analytic norm bound.

    ``norm_bound < 1`` certifies that 1 lies outside the spectrum of V,
    which is the precondition of the Cayley transform.
    """

    operator: DenseOperator
    norm_bound: float


def block_swap(n: int, D: int) -> DenseOperator:
    """Permutation matrix exchanging coordinates 1..n with n+1..2n."""
    BlockSwapSpec(n, D)
    perm = np.arange(D)
    perm[:n] = np.arange(n, 2 * n)
    perm[n : 2 * n] = np.arange(n)
    mat = np.zeros((D, D), dtype=np.complex128)
    mat[np.arange(D), perm] = 1.0
    return DenseOperator(mat)


def rescaled_generator(n: int, D: int) -> DenseOperator:
    """S_n - I: the swap shifted to generate a contraction semigroup."""
    return block_swap(n, D) - identity(D)


def contraction_v(n: int, D: int) -> CogeneratorSpec:
    """(1 - 1/n) S_n with operator norm exactly 1 - 1/n.

    n = 1 gives the zero operator, a degenerate but valid contraction.
    """
    c = 1.0 - 1.0 / n
    return CogeneratorSpec(c * block_swap(n, D), c)


def cayley_generator(spec: CogeneratorSpec) -> DenseOperator:
    """B = (I + V)(V - I)^{-1} for a contraction V with 1 not in sigma(V).

    This is the Cayley transform that recovers the generator of a
    contraction semigroup from its cogenerator: for ||V|| < 1 the spectrum
    of B lies in the open left half plane, and the defining identity
    (V - I) B = I + V gives R(1, B) = (I - V)/2 directly.

    Scalar model: v maps to (1 + v)/(v - 1), so V = 0 gives B = -I and
    V = I/2 gives B = -3I.
    """
    V = spec.operator
    I = identity(V.dim)
    try:
        return solve_matrix(V - I, I + V)
    except SingularOperatorError as exc:
        raise SingularOperatorError(
            "Cayley transform needs 1 outside the spectrum of the cogenerator",
            exc.rcond,
        ) from exc

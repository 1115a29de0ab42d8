"""Dense complex linear algebra on truncated sequence spaces.

Vectors live in the truncation C^D of a sequence space with an attached
norm exponent p in [1, inf); operators are D x D complex matrices.  All
values are immutable and all operations are pure functions, so grids of
evaluations can run concurrently without coordination.

Exactness conventions that the rest of the package relies on:

* ``p_norm`` sums ``|x_i|**p`` with ``math.fsum``, so the norm is exactly
  invariant under any permutation of the entries (the summands form the
  same multiset and fsum returns the correctly rounded sum).
* Vectors built from integer or dyadic-rational literals keep exact zeros;
  no thresholding is ever applied, which lets weak pairings of vectors
  with disjoint supports come out as exact 0.0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SequenceVector",
    "DenseOperator",
    "NormEstimate",
    "LinalgError",
    "SingularOperatorError",
    "vector",
    "basis_vector",
    "zero_vector",
    "p_norm",
    "dual_exponent",
    "vector_q_norm",
    "apply",
    "solve",
    "matrix_exp",
    "op_norm",
    "identity",
    "zero_operator",
]

RCOND_MIN = 1e-12
TOL_SOLVE = 1e-10
POWER_ITER_RTOL = 1e-8


class LinalgError(ValueError):
    """Invalid argument to a linear-algebra operation."""


class SingularOperatorError(LinalgError):
    """Matrix is singular to working tolerance.

    Carries ``rcond``, the reciprocal condition estimate that triggered
    the rejection.
    """

    def __init__(self, message: str, rcond: float):
        super().__init__(f"{message} (reciprocal condition estimate {rcond:.3e})")
        self.rcond = rcond


@dataclass(frozen=True, eq=False)
class SequenceVector:
    """A vector in the truncation C^D, tagged with its norm exponent p."""

    entries: np.ndarray
    p: float = 2.0

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.complex128, copy=True).reshape(-1)
        if arr.size < 1:
            raise LinalgError("vector must have dimension D >= 1")
        if not (1.0 <= self.p < math.inf):
            raise LinalgError(f"norm exponent p must lie in [1, inf), got {self.p!r}")
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.size

    def norm(self) -> float:
        return p_norm(self)

    def support(self) -> tuple[int, ...]:
        """0-based indices of exactly nonzero entries."""
        return tuple(int(i) for i in np.nonzero(self.entries)[0])

    def support_bound(self) -> int:
        """1-based index of the last nonzero entry (0 for the zero vector)."""
        sup = self.support()
        return (sup[-1] + 1) if sup else 0

    def with_p(self, p: float) -> "SequenceVector":
        return SequenceVector(self.entries, p)

    def __add__(self, other: "SequenceVector") -> "SequenceVector":
        _check_same_dim(self.dim, other.dim)
        return SequenceVector(self.entries + other.entries, self.p)

    def __sub__(self, other: "SequenceVector") -> "SequenceVector":
        _check_same_dim(self.dim, other.dim)
        return SequenceVector(self.entries - other.entries, self.p)

    def __mul__(self, c: complex) -> "SequenceVector":
        return SequenceVector(self.entries * c, self.p)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """A bounded operator on the truncation, stored as a dense D x D matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=np.complex128, copy=True)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 1:
            raise LinalgError(f"operator matrix must be square, got shape {mat.shape}")
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        _check_same_dim(self.dim, other.dim)
        return DenseOperator(self.matrix @ other.matrix)

    def __add__(self, other: "DenseOperator") -> "DenseOperator":
        _check_same_dim(self.dim, other.dim)
        return DenseOperator(self.matrix + other.matrix)

    def __sub__(self, other: "DenseOperator") -> "DenseOperator":
        _check_same_dim(self.dim, other.dim)
        return DenseOperator(self.matrix - other.matrix)

    def __mul__(self, c: complex) -> "DenseOperator":
        return DenseOperator(self.matrix * c)

    __rmul__ = __mul__

    def __neg__(self) -> "DenseOperator":
        return DenseOperator(-self.matrix)

    def transpose(self) -> "DenseOperator":
        return DenseOperator(self.matrix.T)

    def adjoint(self) -> "DenseOperator":
        return DenseOperator(self.matrix.conj().T)


def identity(D: int) -> DenseOperator:
    return DenseOperator(np.eye(D, dtype=np.complex128))


def zero_operator(D: int) -> DenseOperator:
    return DenseOperator(np.zeros((D, D), dtype=np.complex128))


def vector(entries, p: float = 2.0) -> SequenceVector:
    return SequenceVector(np.asarray(entries), p)


def basis_vector(D: int, j: int, p: float = 2.0) -> SequenceVector:
    """Canonical basis vector e_j, 1-based index j."""
    if not 1 <= j <= D:
        raise LinalgError(f"basis index {j} outside 1..{D}")
    e = np.zeros(D, dtype=np.complex128)
    e[j - 1] = 1.0
    return SequenceVector(e, p)


def zero_vector(D: int, p: float = 2.0) -> SequenceVector:
    return SequenceVector(np.zeros(D, dtype=np.complex128), p)


def _check_same_dim(a: int, b: int):
    if a != b:
        raise LinalgError(f"dimension mismatch: {a} vs {b}")


def p_norm(x: SequenceVector) -> float:
    """(sum |x_i|^p)^(1/p).

    fsum makes the sum independent of entry order, so permutations of the
    coordinates preserve the computed norm exactly.
    """
    total = math.fsum(abs(z) ** x.p for z in x.entries)
    return total ** (1.0 / x.p)


def dual_exponent(p: float) -> float:
    """q with 1/p + 1/q = 1; q = inf for p = 1."""
    if p == 1.0:
        return math.inf
    return p / (p - 1.0)


def vector_q_norm(entries: np.ndarray, q: float) -> float:
    """q-norm of a raw entry array; q = inf means max modulus."""
    if q == math.inf:
        return max((abs(z) for z in entries), default=0.0)
    return math.fsum(abs(z) ** q for z in entries) ** (1.0 / q)


def apply(A: DenseOperator, x: SequenceVector) -> SequenceVector:
    """Matrix-vector product A x, keeping x's norm exponent."""
    _check_same_dim(A.dim, x.dim)
    return SequenceVector(A.matrix @ x.entries, x.p)


def _rcond_estimate(mat: np.ndarray) -> float:
    s = np.linalg.svd(mat, compute_uv=False)
    smax = float(s[0])
    if smax == 0.0:
        return 0.0
    return float(s[-1]) / smax


def solve(A: DenseOperator, b: SequenceVector, tol_solve: float = TOL_SOLVE) -> SequenceVector:
    """Solve A x = b for a well-conditioned A.

    Rejects matrices whose reciprocal condition estimate falls below
    ``RCOND_MIN``; validates the residual ||Ax - b||_2 <= tol_solve ||b||_2.
    """
    _check_same_dim(A.dim, b.dim)
    rcond = _rcond_estimate(A.matrix)
    if rcond < RCOND_MIN:
        raise SingularOperatorError("matrix is singular to tolerance", rcond)
    x = np.linalg.solve(A.matrix, b.entries)
    resid = float(np.linalg.norm(A.matrix @ x - b.entries))
    bound = tol_solve * max(float(np.linalg.norm(b.entries)), 1e-300)
    if resid > bound:
        raise SingularOperatorError(
            f"solve residual {resid:.3e} exceeds {bound:.3e}", rcond
        )
    return SequenceVector(x, b.p)


def solve_matrix(A: DenseOperator, B: DenseOperator) -> DenseOperator:
    """Solve A X = B columnwise with the same conditioning guard as solve."""
    _check_same_dim(A.dim, B.dim)
    rcond = _rcond_estimate(A.matrix)
    if rcond < RCOND_MIN:
        raise SingularOperatorError("matrix is singular to tolerance", rcond)
    return DenseOperator(np.linalg.solve(A.matrix, B.matrix))


def matrix_exp(A: DenseOperator, t: float = 1.0, tol: float = 1e-12) -> DenseOperator:
    """e^(tA) by scaling and squaring over a truncated Taylor series.

    Scales so ||tA/2^s||_1 <= 0.5, sums the series until the rigorous
    next-term tail bound drops below the (scaled) tolerance, then squares
    s times.  tol below machine precision is clamped.
    """
    if t < 0:
        raise LinalgError(f"matrix_exp requires t >= 0, got {t}")
    if tol <= 0:
        raise LinalgError("tol must be positive")
    tol = max(tol, 4.0 * np.finfo(np.float64).eps)
    D = A.dim
    B = t * A.matrix
    nrm = float(np.linalg.norm(B, 1))
    s = 0
    if nrm > 0.5:
        s = int(math.ceil(math.log2(nrm / 0.5)))
    C = B / (2.0**s)
    cnrm = nrm / (2.0**s)

    E = np.eye(D, dtype=np.complex128)
    term = np.eye(D, dtype=np.complex128)
    term_nrm = 1.0
    k = 0
    # With ||C|| <= 1/2 the series tail after term k is below
    # ||term_k|| * ||C||/(k+1) / (1 - ||C||/(k+2)); 2x margin on the stop test.
    tail_target = tol * 2.0 ** (-s) / 2.0
    while True:
        k += 1
        term = term @ C / k
        E = E + term
        term_nrm = term_nrm * cnrm / k
        tail_bound = term_nrm * cnrm / (k + 1) * 2.0
        if tail_bound <= tail_target or k > 60:
            break
    for _ in range(s):
        E = E @ E
    return DenseOperator(E)


@dataclass(frozen=True)
class NormEstimate:
    """Operator p-norm estimate; ``exact`` is False for sampled lower bounds."""

    value: float
    p: float
    exact: bool


def _spectral_norm(mat: np.ndarray, rtol: float = POWER_ITER_RTOL) -> float:
    """Largest singular value via power iteration on A* A."""
    D = mat.shape[0]
    # Deterministic start with a mild ramp so it is not orthogonal to the
    # dominant singular subspace of the structured matrices used here.
    x = np.ones(D, dtype=np.complex128) + 1e-3 * np.arange(D)
    x /= np.linalg.norm(x)
    gram = mat.conj().T @ mat
    lam = 0.0
    for _ in range(10_000):
        y = gram @ x
        ny = float(np.linalg.norm(y))
        if ny == 0.0:
            return 0.0
        lam_new = float(np.real(np.vdot(x, y)))
        x = y / ny
        if abs(lam_new - lam) <= rtol * max(lam_new, 1e-300):
            lam = lam_new
            break
        lam = lam_new
    return math.sqrt(max(lam, 0.0))


def op_norm(A: DenseOperator, p: float = 2.0, seed: int = 0, samples: int = 64) -> NormEstimate:
    """Operator p-norm.

    Exact for p in {1, 2, inf} (column sums, power iteration on A*A, row
    sums).  For other p the value is a sampled lower bound over seeded
    random unit vectors plus the canonical basis, and is flagged as such.
    """
    mat = A.matrix
    if p == 1.0:
        return NormEstimate(float(np.max(np.sum(np.abs(mat), axis=0))), p, True)
    if p == math.inf:
        return NormEstimate(float(np.max(np.sum(np.abs(mat), axis=1))), p, True)
    if p == 2.0:
        return NormEstimate(_spectral_norm(mat), p, True)
    if p < 1.0:
        raise LinalgError(f"operator norm needs p >= 1, got {p}")
    rng = np.random.Generator(np.random.PCG64(seed))
    D = A.dim
    best = 0.0
    candidates = [np.eye(D, dtype=np.complex128)[j] for j in range(D)]
    for _ in range(samples):
        v = rng.standard_normal(D) + 1j * rng.standard_normal(D)
        candidates.append(v)
    for v in candidates:
        x = SequenceVector(v, p)
        nx = p_norm(x)
        if nx == 0.0:
            continue
        best = max(best, p_norm(apply(A, x)) / nx)
    return NormEstimate(best, p, False)

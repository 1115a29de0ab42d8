"""Convergence measurement in the norm, strong, and weak operator topologies.

For a sequence A_n and a limit candidate L, the per-n discrepancy is

* norm:   ||A_n - L||_2;
* strong: max over test vectors x of ||(A_n - L) x||_p / max(1, ||x||_p);
* weak:   max over pairs (x, y) of |<(A_n - L) x, y>| / max(1, ||x||_p ||y||_q),

with 1/p + 1/q = 1 (q = inf handled as max modulus).  The difference
operator A_n - L is formed first, so equal entries cancel exactly and
pairings of finite-support vectors with disjoint supports evaluate to an
exact 0.0: the sharp "exactly zero beyond n0" verdicts never depend on a
tolerance.

Test sets mix two kinds of vectors with different jobs.  Finite-support
vectors (canonical basis plus integer/dyadic vectors) drive the verdict,
since the phenomena of interest are exact at finite truncation.  Dense
seeded vectors model fixed sequence-space elements (their entries decay
geometrically, as summable tails must) and feed a separate decay
diagnostic that never touches the verdict when finite-support vectors are
present.

At finite truncation the dual pairing against the q-side is the whole
story: no weak-* distinction exists at finite D.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .linalg import (
    DenseOperator,
    LinalgError,
    SequenceVector,
    basis_vector,
    dual_exponent,
    op_norm,
    p_norm,
    vector,
    vector_q_norm,
)

__all__ = [
    "TestVector",
    "TestVectorSet",
    "Witness",
    "Verdict",
    "ConvergenceReport",
    "default_test_set",
    "weak_pairing",
    "measure_convergence",
    "measure_convergence_on_grid",
    "measure_vector_convergence",
    "classify_deltas",
]

CONVERGED_TOL = 1e-6
DIVERGED_TOL = 1e-3


@dataclass(frozen=True)
class TestVector:
    vec: SequenceVector
    kind: str  # "canonical-basis" | "finite-support-rational" | "random-dense"
    label: str

    __test__ = False  # domain type, not a pytest class

    @property
    def finite_support(self) -> bool:
        return self.kind != "random-dense"


@dataclass(frozen=True, eq=False)
class TestVectorSet:
    vectors: tuple[TestVector, ...]
    p: float
    seed: int | None = None

    __test__ = False  # domain type, not a pytest class

    def __post_init__(self):
        if not self.vectors:
            raise LinalgError("test vector set must be nonempty")
        dims = {tv.vec.dim for tv in self.vectors}
        if len(dims) != 1:
            raise LinalgError("test vectors must share one dimension")
        q = dual_exponent(self.p)
        stack = np.column_stack([tv.vec.entries for tv in self.vectors])
        stack.flags.writeable = False
        object.__setattr__(self, "_stack", stack)
        object.__setattr__(
            self,
            "_norm_p",
            np.array([p_norm(tv.vec.with_p(self.p)) for tv in self.vectors]),
        )
        object.__setattr__(
            self,
            "_norm_q",
            np.array([vector_q_norm(tv.vec.entries, q) for tv in self.vectors]),
        )
        object.__setattr__(
            self, "_finite", np.array([tv.finite_support for tv in self.vectors])
        )

    @property
    def dim(self) -> int:
        return self.vectors[0].vec.dim

    @property
    def support_bound(self) -> int:
        """Largest 1-based support index over the finite-support members."""
        bounds = [tv.vec.support_bound() for tv in self.vectors if tv.finite_support]
        return max(bounds, default=0)

    @property
    def q(self) -> float:
        return dual_exponent(self.p)

    def finite(self) -> tuple[TestVector, ...]:
        return tuple(tv for tv in self.vectors if tv.finite_support)

    def dense(self) -> tuple[TestVector, ...]:
        return tuple(tv for tv in self.vectors if not tv.finite_support)

    def labels(self) -> tuple[str, ...]:
        return tuple(tv.label for tv in self.vectors)


def default_test_set(D: int, p: float = 2.0, seed: int = 0,
                     n_basis: int = 8, n_dense: int = 4) -> TestVectorSet:
    """Canonical basis e_1..e_8, three integer/dyadic vectors with support
    <= 8, and seeded dense vectors with geometrically decaying entries.

    Every member has max modulus >= 1, hence r-norm >= 1 for every r >= 1;
    with the max(1, .) normalizations this makes the Hoelder chain
    delta_weak <= delta_strong rigorous (and <= delta_norm at p = 2).
    """
    if D < 8:
        raise LinalgError("default test set needs D >= 8")
    tvs: list[TestVector] = []
    for j in range(1, n_basis + 1):
        tvs.append(TestVector(basis_vector(D, j, p), "canonical-basis", f"e{j}"))
    rationals = [
        ("rat1", {1: 1.0, 2: -1.0}),
        ("rat2", {1: 0.5, 3: -2.0, 5: 1.0}),
        ("rat3", {1: 1.0, 8: 2.0}),
    ]
    for label, entries in rationals:
        arr = np.zeros(D, dtype=np.complex128)
        for idx, val in entries.items():
            arr[idx - 1] = val
        tvs.append(TestVector(vector(arr, p), "finite-support-rational", label))
    for i in range(n_dense):
        rng = np.random.Generator(np.random.PCG64(seed * 1000 + i))
        raw = rng.standard_normal(D) + 1j * rng.standard_normal(D)
        envelope = 0.8 ** np.arange(D)
        arr = raw * envelope
        arr /= np.max(np.abs(arr))
        tvs.append(
            TestVector(vector(arr, p), "random-dense", f"dense{i}[seed={seed}]")
        )
    return TestVectorSet(tuple(tvs), p, seed)


def weak_pairing(A: DenseOperator, x: SequenceVector, y: SequenceVector) -> complex:
    """<A x, y> = sum_i (A x)_i conj(y_i)."""
    if A.dim != x.dim or A.dim != y.dim:
        raise LinalgError("dimension mismatch in weak pairing")
    return complex(np.vdot(y.entries, A.matrix @ x.entries))


@dataclass(frozen=True)
class Witness:
    """Concrete maximizer of a discrepancy: which n, grid point, and pair."""

    n: int
    param: float | complex | None
    x_label: str
    y_label: str | None
    magnitude: float


@dataclass(frozen=True)
class Verdict:
    kind: str  # "exact-beyond" | "converges-to-limit" | "no-convergence" | "inconclusive"
    n0: int | None = None

    def __str__(self) -> str:
        if self.kind == "exact-beyond":
            return f"exact-beyond({self.n0})"
        return self.kind


@dataclass(frozen=True)
class ConvergenceReport:
    topology: str
    n_grid: tuple[int, ...]
    delta: tuple[float, ...]
    verdict: Verdict
    witness: Witness | None
    dense_delta: tuple[float, ...] | None = None
    dense_decay_rate: float | None = None
    grid: tuple[float | complex, ...] | None = None
    argmax_param: tuple[float | complex, ...] | None = None  # per-n sup location
    test_labels: tuple[str, ...] = ()

    def final_delta(self) -> float:
        return self.delta[-1]


def classify_deltas(n_grid: Sequence[int], deltas: Sequence[float]) -> Verdict:
    """Verdict rules.

    exact-beyond(n0): delta is exactly 0.0 from some tested n0 on;
    converges-to-limit: final delta < 1e-6, with the tail half either
    non-increasing (head wiggles are irrelevant to the limit) or already
    uniformly below 1e-6 (absorbs machine-noise wiggles at the floor);
    no-convergence: tail average above 1e-3;
    otherwise inconclusive (the deliberate dead zone between the two
    thresholds guards against misclassifying slow decay as failure).
    """
    deltas = list(deltas)
    n_grid = list(n_grid)
    if deltas[-1] == 0.0:
        i0 = len(deltas) - 1
        while i0 > 0 and deltas[i0 - 1] == 0.0:
            i0 -= 1
        return Verdict("exact-beyond", n_grid[i0])
    tail = deltas[len(deltas) // 2 :]
    tail_non_increasing = all(b <= a + 1e-15 for a, b in zip(tail, tail[1:]))
    if deltas[-1] < CONVERGED_TOL and (tail_non_increasing or max(tail) < CONVERGED_TOL):
        return Verdict("converges-to-limit")
    if sum(tail) / len(tail) > DIVERGED_TOL:
        return Verdict("no-convergence")
    return Verdict("inconclusive")


def _strong_values(diff: DenseOperator, tests: TestVectorSet) -> np.ndarray:
    """||diff x||_p / max(1, ||x||_p) per test vector, fsum-exact norms."""
    images = diff.matrix @ tests._stack
    vals = np.empty(images.shape[1])
    for i in range(images.shape[1]):
        nrm = math.fsum(abs(z) ** tests.p for z in images[:, i]) ** (1.0 / tests.p)
        vals[i] = nrm / max(1.0, tests._norm_p[i])
    return vals


def _weak_values(diff: DenseOperator, tests: TestVectorSet) -> np.ndarray:
    """|<diff x_i, y_j>| / max(1, ||x_i||_p ||y_j||_q) as a (j, i) matrix."""
    images = diff.matrix @ tests._stack
    pairings = tests._stack.conj().T @ images
    denom = np.maximum(1.0, np.outer(tests._norm_q, tests._norm_p))
    return np.abs(pairings) / denom


def _channel_max(values: np.ndarray, tests: TestVectorSet, topology: str,
                 channel: str) -> tuple[float, tuple[str, str | None]] | None:
    """Max over one channel with its maximizing pair; None if channel empty."""
    labels = tests.labels()
    fin = tests._finite
    if topology == "strong":
        mask = fin if channel == "exact" else ~fin
        if not mask.any():
            return None
        masked = np.where(mask, values, -1.0)
        i = int(np.argmax(masked))
        return float(masked[i]), (labels[i], None)
    pair_exact = np.outer(fin, fin)
    mask = pair_exact if channel == "exact" else ~pair_exact
    if not mask.any():
        return None
    masked = np.where(mask, values, -1.0)
    j, i = np.unravel_index(int(np.argmax(masked)), masked.shape)
    return float(masked[j, i]), (labels[i], labels[j])


def _channel_values(
    diff: DenseOperator, tests: TestVectorSet, topology: str
) -> tuple[float, tuple[str, str | None], float | None]:
    """(verdict-channel value, maximizing pair, dense-channel value)."""
    if topology == "norm":
        return op_norm(diff, 2.0).value, ("", None), None
    values = (
        _strong_values(diff, tests)
        if topology == "strong"
        else _weak_values(diff, tests)
    )
    exact = _channel_max(values, tests, topology, "exact")
    dense = _channel_max(values, tests, topology, "dense")
    if exact is None:
        # No finite-support members: the dense channel carries the verdict.
        return dense[0], dense[1], None
    return exact[0], exact[1], (dense[0] if dense is not None else None)


def _decay_rate(n_grid: Sequence[int], deltas: Sequence[float]) -> float | None:
    """Least-squares slope of log delta against n (negative means decay)."""
    pts = [(n, d) for n, d in zip(n_grid, deltas) if d is not None and d > 0.0]
    if len(pts) < 2:
        return None
    ns = np.array([n for n, _ in pts], dtype=float)
    ls = np.log([d for _, d in pts])
    slope = float(np.polyfit(ns, ls, 1)[0])
    return slope


def measure_convergence(
    seq: Mapping[int, DenseOperator],
    limit: DenseOperator,
    topology: str,
    tests: TestVectorSet,
) -> ConvergenceReport:
    """Measure A_n -> L in the requested topology over a test set."""
    _check_topology(topology)
    n_grid = sorted(seq)
    if not n_grid:
        raise LinalgError("empty n grid")
    deltas, dense_deltas = [], []
    witness = None
    best = -1.0
    for n in n_grid:
        diff = seq[n] - limit
        val, pair, dval = _channel_values(diff, tests, topology)
        deltas.append(val)
        dense_deltas.append(dval)
        if val > best:
            best = val
            witness = Witness(n, None, pair[0], pair[1], val)
    has_dense = any(d is not None for d in dense_deltas)
    dense_tuple = tuple(dense_deltas) if has_dense else None
    return ConvergenceReport(
        topology=topology,
        n_grid=tuple(n_grid),
        delta=tuple(deltas),
        verdict=classify_deltas(n_grid, deltas),
        witness=witness,
        dense_delta=dense_tuple,
        dense_decay_rate=_decay_rate(n_grid, dense_tuple) if has_dense else None,
        test_labels=tests.labels(),
    )


def measure_convergence_on_grid(
    seq: Callable[[int, float | complex], DenseOperator],
    limit: Callable[[float | complex], DenseOperator],
    topology: str,
    tests: TestVectorSet,
    grid: Sequence[float | complex],
    n_grid: Sequence[int],
) -> ConvergenceReport:
    """Like measure_convergence, with delta_n the sup over a parameter grid.

    The grid realizes "uniformly on compact intervals": the reported
    delta_n is the largest single-parameter discrepancy over the grid,
    and the witness records the maximizing grid point.
    """
    _check_topology(topology)
    grid = list(grid)
    n_grid = sorted(n_grid)
    if not grid or not n_grid:
        raise LinalgError("grids must be nonempty")
    deltas, dense_deltas, params = [], [], []
    witness = None
    best = -1.0
    for n in n_grid:
        sup_val, sup_dense = -1.0, None
        sup_pair, sup_param = ("", None), None
        for s in grid:
            diff = seq(n, s) - limit(s)
            val, pair, dval = _channel_values(diff, tests, topology)
            if val > sup_val:
                sup_val, sup_pair, sup_param = val, pair, s
            if dval is not None:
                sup_dense = dval if sup_dense is None else max(sup_dense, dval)
        deltas.append(sup_val)
        dense_deltas.append(sup_dense)
        params.append(sup_param)
        if sup_val > best:
            best = sup_val
            witness = Witness(n, sup_param, sup_pair[0], sup_pair[1], sup_val)
    has_dense = any(d is not None for d in dense_deltas)
    dense_tuple = tuple(dense_deltas) if has_dense else None
    return ConvergenceReport(
        topology=topology,
        n_grid=tuple(n_grid),
        delta=tuple(deltas),
        verdict=classify_deltas(n_grid, deltas),
        witness=witness,
        dense_delta=dense_tuple,
        dense_decay_rate=_decay_rate(n_grid, dense_tuple) if has_dense else None,
        grid=tuple(grid),
        argmax_param=tuple(params),
        test_labels=tests.labels(),
    )


def measure_vector_convergence(
    seq: Mapping[int, SequenceVector],
    limit: SequenceVector,
    topology: str,
    tests: TestVectorSet,
) -> ConvergenceReport:
    """Measure a vector sequence v_n -> v (strong: p-norm; weak: pairings).

    Used for witness sequences x_n -> x; the finite-support members of the
    test set act as the dual vectors of the weak pairings.
    """
    _check_topology(topology, allow_norm=False)
    n_grid = sorted(seq)
    q = tests.q
    deltas = []
    witness = None
    best = -1.0
    finite = tests.finite()
    limit_norm = p_norm(limit.with_p(tests.p))
    for n in n_grid:
        diff = seq[n].entries - limit.entries
        if topology == "strong":
            val = p_norm(SequenceVector(diff, tests.p)) / max(1.0, limit_norm)
            pair = ("", None)
        else:
            val, pair = 0.0, ("", None)
            for ty in finite:
                ny = vector_q_norm(ty.vec.entries, q)
                v = abs(complex(np.vdot(ty.vec.entries, diff))) / max(
                    1.0, limit_norm * ny
                )
                if v > val:
                    val, pair = v, ("", ty.label)
        deltas.append(val)
        if val > best:
            best = val
            witness = Witness(n, None, pair[0], pair[1], val)
    return ConvergenceReport(
        topology=topology,
        n_grid=tuple(n_grid),
        delta=tuple(deltas),
        verdict=classify_deltas(n_grid, deltas),
        witness=witness,
        test_labels=tests.labels(),
    )


def _check_topology(topology: str, allow_norm: bool = True):
    allowed = ("norm", "strong", "weak") if allow_norm else ("strong", "weak")
    if topology not in allowed:
        raise LinalgError(f"topology must be one of {allowed}, got {topology!r}")

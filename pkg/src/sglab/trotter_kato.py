"""Approximation-theorem condition checks and the implication matrix.

For a generator sequence A_n with limit candidate A, uniform growth bound
||T_n(t)|| <= M e^{omega t}, and a fixed lambda with Re lambda > omega,
four conditions are measured in a chosen operator topology (strong or
weak):

  (a) A_n x -> A x for every core vector x;
  (b) for every core x there are x_n with x_n -> x and A_n x_n -> A x;
  (c) R(lambda, A_n) x -> R(lambda, A) x for every x;
  (d) T_n(t) x -> T(t) x for every x, uniformly in t on compact intervals.

In finite dimension every operator is everywhere defined and bounded, so
the domain inclusions behind (a) and (b) are automatic; each report
records this collapse instead of simulating unbounded domains.  (b) is
existential: the default witnesses are x_n = x, and instances may supply
their own witness construction, which is verified, never searched for.

The implication matrix marks, for each ordered pair of conditions P, Q,
whether an instance realizes "P holds and Q fails" (a counterexample to
P implies Q) or only "P holds and Q holds" (consistent).  The shipped
suite reproduces the asymmetric weak-topology pattern: (d) implies (c)
implies (b), (a) implies (b), while (a), (b), (c) each fail to imply (d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .linalg import (
    DenseOperator,
    LinalgError,
    SequenceVector,
    apply,
    identity,
    p_norm,
)
from .operators import cayley_generator, contraction_v, rescaled_generator
from .resolvent import (
    QuadratureSpec,
    default_quadrature,
    laplace_tail_bound,
    resolvent_direct,
)
from .semigroup import (
    SemigroupFamily,
    evaluate,
    growth_bound_check,
    rescaled_swap_semigroup,
    scalar_semigroup,
    numeric_semigroup,
)
from .topology import (
    ConvergenceReport,
    TestVectorSet,
    Witness,
    default_test_set,
    measure_convergence,
    measure_convergence_on_grid,
    measure_vector_convergence,
    weak_pairing,
)

__all__ = [
    "TKInstance",
    "ConditionResult",
    "TKReport",
    "SuiteReport",
    "check_condition_a",
    "check_condition_b",
    "check_condition_c",
    "check_condition_d",
    "implication_matrix",
    "run_suite",
    "default_suite",
    "example_2_1_instance",
    "example_2_3_instance",
    "scalar_instance",
    "laplace_transfer_bound",
]

CONDITIONS = ("a", "b", "c", "d")


@dataclass(frozen=True)
class TKInstance:
    """One generator-sequence approximation problem, ready to measure."""

    name: str
    generators: Mapping[int, DenseOperator]
    limit_generator: DenseOperator
    semigroups: Mapping[int, SemigroupFamily]
    limit_semigroup: SemigroupFamily
    core: TestVectorSet
    M: float
    omega: float
    lam: complex
    mode: str  # "strong" | "weak"
    t_grid: tuple[float, ...]
    lambda_grid: tuple[complex, ...] = (1.0 + 0j,)
    b_witness: Callable[[SequenceVector, int], SequenceVector] | None = None
    b_witness_label: str = "x_n = x (default)"

    def __post_init__(self):
        if self.mode not in ("strong", "weak"):
            raise LinalgError(f"mode must be strong or weak, got {self.mode!r}")
        if self.lam.real <= self.omega:
            raise LinalgError(
                f"instance lambda must satisfy Re lambda > omega, got "
                f"{self.lam} with omega = {self.omega}"
            )
        if not self.t_grid:
            raise LinalgError("t grid must be nonempty")

    @property
    def n_grid(self) -> tuple[int, ...]:
        return tuple(sorted(self.generators))

    def check_growth_bounds(self, probe_points: int | None = None) -> bool:
        """Growth bound for every semigroup in play, on the full evaluation
        grid by default (probe_points thins the grid for quick scans)."""
        grid = self.t_grid
        if probe_points is not None:
            stride = max(1, len(self.t_grid) // probe_points)
            grid = self.t_grid[::stride]
        for fam in list(self.semigroups.values()) + [self.limit_semigroup]:
            if not growth_bound_check(fam, self.M, self.omega, grid).passed:
                return False
        return True


@dataclass(frozen=True)
class ConditionResult:
    condition: str
    verdict: str  # "holds" | "fails" | "inconclusive"
    measurement: ConvergenceReport | None
    witness: Witness | None
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class TKReport:
    instance: str
    mode: str
    conditions: dict[str, ConditionResult]
    matrix: dict[str, str]  # "p=>q" -> consistent | counterexample-found | untested
    lambda_uniformity: ConvergenceReport | None = None
    growth_bound_ok: bool = True
    domain_note: str = (
        "finite dimension: every operator is everywhere defined, the core "
        "inclusion is automatic"
    )


def _verdict_of(report: ConvergenceReport) -> str:
    if report.verdict.kind in ("exact-beyond", "converges-to-limit"):
        return "holds"
    if report.verdict.kind == "no-convergence":
        return "fails"
    return "inconclusive"


def check_condition_a(inst: TKInstance) -> ConditionResult:
    """Generator convergence A_n x -> A x over the core, in the instance mode."""
    report = measure_convergence(
        dict(inst.generators), inst.limit_generator, inst.mode, inst.core
    )
    return ConditionResult("a", _verdict_of(report), report, report.witness)


def check_condition_b(inst: TKInstance) -> ConditionResult:
    """Witnessed convergence: x_n -> x and A_n x_n -> A x for each core x.

    Both limits are measured for every finite-support core vector (the
    verdict channel, consistent with the other checks); the verdict is the
    worst outcome over vectors and over the two limits.
    """
    witness_fn = inst.b_witness or (lambda x, n: x)
    worst: ConditionResult | None = None
    notes = (f"witnesses: {inst.b_witness_label}",)
    for tv in inst.core.finite():
        x = tv.vec
        xs = {n: witness_fn(x, n) for n in inst.n_grid}
        for n, xn in xs.items():
            if xn.dim != x.dim:
                raise LinalgError(
                    f"witness sequence for {tv.label} has wrong dimension at n={n}"
                )
        rep_x = measure_vector_convergence(xs, x, inst.mode, inst.core)
        images = {n: apply(inst.generators[n], xs[n]) for n in inst.n_grid}
        target = apply(inst.limit_generator, x)
        rep_ax = measure_vector_convergence(images, target, inst.mode, inst.core)
        for rep in (rep_x, rep_ax):
            verdict = _verdict_of(rep)
            cand = ConditionResult("b", verdict, rep, rep.witness, notes)
            if worst is None or _severity(verdict) > _severity(worst.verdict):
                worst = cand
    return worst


def _severity(verdict: str) -> int:
    return {"holds": 0, "inconclusive": 1, "fails": 2}[verdict]


def check_condition_c(inst: TKInstance) -> tuple[ConditionResult, ConvergenceReport]:
    """Resolvent convergence at the instance lambda, plus the lambda-grid
    uniformity diagnostic (reported separately, never folded into the
    verdict)."""
    resolvents = {n: resolvent_direct(A, inst.lam) for n, A in inst.generators.items()}
    limit_res = resolvent_direct(inst.limit_generator, inst.lam)
    report = measure_convergence(resolvents, limit_res, inst.mode, inst.core)

    lam_report = measure_convergence_on_grid(
        lambda n, lam: resolvent_direct(inst.generators[n], lam),
        lambda lam: resolvent_direct(inst.limit_generator, lam),
        inst.mode,
        inst.core,
        list(inst.lambda_grid),
        inst.n_grid,
    )
    return (
        ConditionResult("c", _verdict_of(report), report, report.witness),
        lam_report,
    )


def check_condition_d(inst: TKInstance) -> ConditionResult:
    """Semigroup convergence, uniform over the instance's time grid."""
    report = measure_convergence_on_grid(
        lambda n, t: evaluate(inst.semigroups[n], t),
        lambda t: evaluate(inst.limit_semigroup, t),
        inst.mode,
        inst.core,
        list(inst.t_grid),
        inst.n_grid,
    )
    return ConditionResult("d", _verdict_of(report), report, report.witness)


def implication_matrix(inst: TKInstance) -> TKReport:
    """Run all four checks on one instance and fill its implication matrix."""
    growth_ok = inst.check_growth_bounds()
    res_a = check_condition_a(inst)
    res_b = check_condition_b(inst)
    res_c, lam_report = check_condition_c(inst)
    res_d = check_condition_d(inst)
    conditions = {"a": res_a, "b": res_b, "c": res_c, "d": res_d}
    matrix: dict[str, str] = {}
    for p in CONDITIONS:
        for q in CONDITIONS:
            if p == q:
                continue
            key = f"{p}=>{q}"
            if conditions[p].verdict != "holds":
                matrix[key] = "untested"
            elif conditions[q].verdict == "fails":
                matrix[key] = "counterexample-found"
            elif conditions[q].verdict == "holds":
                matrix[key] = "consistent"
            else:
                matrix[key] = "untested"
    return TKReport(
        instance=inst.name,
        mode=inst.mode,
        conditions=conditions,
        matrix=matrix,
        lambda_uniformity=lam_report,
        growth_bound_ok=growth_ok,
    )


@dataclass(frozen=True)
class SuiteReport:
    reports: tuple[TKReport, ...]
    matrix: dict[str, str]
    counterexample_instances: dict[str, tuple[str, ...]]
    pattern: dict[str, bool]

    def pattern_ok(self) -> bool:
        return all(self.pattern.values())


# The target pattern: these implications stay consistent everywhere, those
# fail with a named counterexample instance.
CONSISTENT_REQUIRED = ("d=>c", "c=>b", "a=>b")
COUNTEREXAMPLE_REQUIRED = ("a=>d", "b=>d", "c=>d")


def run_suite(instances: Sequence[TKInstance]) -> SuiteReport:
    """Aggregate per-instance matrices into the suite implication matrix."""
    reports = tuple(implication_matrix(inst) for inst in instances)
    matrix: dict[str, str] = {}
    counterexamples: dict[str, list[str]] = {}
    for p in CONDITIONS:
        for q in CONDITIONS:
            if p == q:
                continue
            key = f"{p}=>{q}"
            statuses = [r.matrix[key] for r in reports]
            if "counterexample-found" in statuses:
                matrix[key] = "counterexample-found"
                counterexamples[key] = [
                    r.instance
                    for r in reports
                    if r.matrix[key] == "counterexample-found"
                ]
            elif "consistent" in statuses:
                matrix[key] = "consistent"
            else:
                matrix[key] = "untested"
    pattern = {}
    for key in CONSISTENT_REQUIRED:
        pattern[f"consistent:{key}"] = matrix.get(key) == "consistent"
    for key in COUNTEREXAMPLE_REQUIRED:
        pattern[f"counterexample:{key}"] = matrix.get(key) == "counterexample-found"
    return SuiteReport(
        reports=reports,
        matrix=matrix,
        counterexample_instances={k: tuple(v) for k, v in counterexamples.items()},
        pattern=pattern,
    )


def laplace_transfer_bound(
    inst: TKInstance, n: int, x_label: str = "e1", y_label: str = "e1",
    quad: QuadratureSpec | None = None,
) -> dict[str, float]:
    """Quantitative form of (d) implies (c) through the Laplace transform:

        |<(R(lam, A_n) - R(lam, A)) x, y>|
            <= integral_0^inf e^{-Re lam t} |<(T_n(t) - T(t)) x, y>| dt,

    checked by quadrature with the growth-bound tail added to the right
    side.  Returns both sides; lhs <= rhs (+ tolerance) is the bound.
    """
    lam = inst.lam
    if quad is None:
        quad = default_quadrature(lam, inst.M, inst.omega, 1)
    lookup = {tv.label: tv.vec for tv in inst.core.vectors}
    x, y = lookup[x_label], lookup[y_label]
    Rn = resolvent_direct(inst.generators[n], lam)
    R = resolvent_direct(inst.limit_generator, lam)
    lhs = abs(weak_pairing(Rn - R, x, y))
    ts, ws = quad.points()
    total = 0.0
    for t, w in zip(ts, ws):
        gap = abs(
            weak_pairing(
                evaluate(inst.semigroups[n], float(t))
                - evaluate(inst.limit_semigroup, float(t)),
                x,
                y,
            )
        )
        total += float(w) * math.exp(-lam.real * float(t)) * gap
    # Tail: both semigroups obey the growth bound, so the integrand tail is
    # at most 2 M ||x|| ||y|| e^{(omega - Re lam) t}.
    tail = 2.0 * inst.M * p_norm(x) * p_norm(y) * laplace_tail_bound(
        1.0, lam.real - inst.omega, quad.t_max, 1
    )
    return {"lhs": lhs, "rhs": total + tail}


# ---------------------------------------------------------------------------
# Shipped instances
# ---------------------------------------------------------------------------

DEFAULT_T_GRID = tuple(5.0 * i / 100.0 for i in range(101))
DEFAULT_N_GRID = (2, 4, 8, 16)
DEEP_N_GRID = tuple(2**k for k in range(1, 21))


def example_2_1_instance(
    mode: str = "weak",
    n_grid: Sequence[int] = DEFAULT_N_GRID,
    D: int | None = None,
    p: float = 2.0,
    seed: int = 0,
    t_grid: Sequence[float] = DEFAULT_T_GRID,
) -> TKInstance:
    """Block-swap family: A_n = S_n - I with limit -I.

    Generators converge weakly (exactly, beyond the test-set support) but
    the contraction semigroups do not converge weakly to e^{-t} I: the
    pointwise weak limit is e^{-t} cosh(t) I, which is not a semigroup.
    """
    n_grid = tuple(sorted(n_grid))
    if D is None:
        D = 2 * max(n_grid)
    gens = {n: rescaled_generator(n, D) for n in n_grid}
    semis = {n: rescaled_swap_semigroup(n, D) for n in n_grid}
    return TKInstance(
        name=f"block-swap-rescaled[{mode}]",
        generators=gens,
        limit_generator=-1.0 * identity(D),
        semigroups=semis,
        limit_semigroup=scalar_semigroup(-1.0, D),
        core=default_test_set(D, p, seed),
        M=1.0,
        omega=0.0,
        lam=1.0 + 0j,
        mode=mode,
        t_grid=tuple(t_grid),
        lambda_grid=(1.0 + 0j, 1.5 + 0j, 2.0 + 0j),
    )


def example_2_3_instance(
    mode: str = "weak",
    n_grid: Sequence[int] = DEFAULT_N_GRID,
    D: int | None = None,
    p: float = 2.0,
    seed: int = 0,
    t_grid: Sequence[float] = DEFAULT_T_GRID,
) -> TKInstance:
    """Cayley family: B_n from the contraction V_n = (1 - 1/n) S_n.

    R(1, B_n) = (I - V_n)/2 converges weakly to I/2 = R(1, -I) exactly
    beyond the test-set support, yet the semigroups do not converge to
    e^{-t} I: condition (c) holds while (d) fails.

    The shipped witness sequence for (b) is x_n = (I - V_n) x
    = 2 R(1, B_n) x, the standard resolvent-smoothing construction; the
    default x_n = x would diverge because ||B_n|| grows with n.
    """
    n_grid = tuple(sorted(n_grid))
    if D is None:
        D = 2 * max(n_grid)
    vs = {n: contraction_v(n, D) for n in n_grid}
    gens = {n: cayley_generator(vs[n]) for n in n_grid}
    semis = {
        n: numeric_semigroup(gens[n], M=1.0, omega=0.0, label=f"cayley(n={n})")
        for n in n_grid
    }
    idty = identity(D)

    def witness(x: SequenceVector, n: int) -> SequenceVector:
        return apply(idty - vs[n].operator, x)

    return TKInstance(
        name=f"cayley-contraction[{mode}]",
        generators=gens,
        limit_generator=-1.0 * identity(D),
        semigroups=semis,
        limit_semigroup=scalar_semigroup(-1.0, D),
        core=default_test_set(D, p, seed),
        M=1.0,
        omega=0.0,
        lam=1.0 + 0j,
        mode=mode,
        t_grid=tuple(t_grid),
        lambda_grid=(1.0 + 0j, 1.5 + 0j, 2.0 + 0j),
        b_witness=witness,
        b_witness_label="x_n = (I - V_n) x (resolvent smoothing)",
    )


def scalar_instance(
    mode: str = "strong",
    n_grid: Sequence[int] = DEEP_N_GRID,
    D: int = 8,
    p: float = 2.0,
    seed: int = 0,
    t_grid: Sequence[float] = DEFAULT_T_GRID,
) -> TKInstance:
    """Fully convergent control family A_n = -(1 + 1/n) I with limit -I.

    The n-grid reaches 2^20 so the 1/n rates actually cross the
    converges-to-limit threshold instead of stalling in the dead zone.
    """
    n_grid = tuple(sorted(n_grid))
    gens = {n: (-(1.0 + 1.0 / n)) * identity(D) for n in n_grid}
    semis = {n: scalar_semigroup(-(1.0 + 1.0 / n), D) for n in n_grid}
    return TKInstance(
        name=f"scalar-perturbation[{mode}]",
        generators=gens,
        limit_generator=-1.0 * identity(D),
        semigroups=semis,
        limit_semigroup=scalar_semigroup(-1.0, D),
        core=default_test_set(D, p, seed),
        M=1.0,
        omega=0.0,
        lam=1.0 + 0j,
        mode=mode,
        t_grid=tuple(t_grid),
        lambda_grid=(1.0 + 0j, 1.5 + 0j, 2.0 + 0j),
    )


def default_suite(p: float = 2.0, seed: int = 0,
                  n_grid: Sequence[int] = DEFAULT_N_GRID) -> list[TKInstance]:
    """The shipped instance suite behind the tk-matrix subcommand."""
    return [
        example_2_1_instance("weak", n_grid=n_grid, p=p, seed=seed),
        example_2_1_instance("strong", n_grid=n_grid, p=p, seed=seed),
        example_2_3_instance("weak", n_grid=n_grid, p=p, seed=seed),
        scalar_instance("strong", p=p, seed=seed),
        scalar_instance("weak", p=p, seed=seed),
    ]

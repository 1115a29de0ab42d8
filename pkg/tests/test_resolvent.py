import math

import numpy as np
import pytest

from sglab.linalg import (
    DenseOperator,
    LinalgError,
    identity,
    matrix_exp,
    op_norm,
)
from sglab.operators import block_swap, cayley_generator, contraction_v, rescaled_generator
from sglab.resolvent import (
    ContourSpec,
    QuadratureSpec,
    SpectrumError,
    default_contour,
    default_quadrature,
    dunford_evaluate,
    laplace_tail_bound,
    resolvent_direct,
    resolvent_power_direct,
    resolvent_power_laplace,
    resolvent_power_via_dunford,
)
from sglab.semigroup import (
    numeric_semigroup,
    rescaled_swap_semigroup,
    scalar_semigroup,
)


def b_family(n, D):
    return cayley_generator(contraction_v(n, D))


def test_resolvent_of_minus_identity():
    R = resolvent_direct(-1.0 * identity(4), 1.0)
    assert np.abs(R.matrix - 0.5 * np.eye(4)).max() < 1e-14


def test_resolvent_closed_form_for_cayley():
    for n in (2, 4, 8, 16):
        V = contraction_v(n, 32)
        R = resolvent_direct(b_family(n, 32), 1.0)
        expect = 0.5 * (np.eye(32) - V.operator.matrix)
        assert np.abs(R.matrix - expect).max() < 1e-10


def test_resolvent_inside_spectrum_raises():
    # +1 is an eigenvalue of every block swap (symmetric block vectors).
    with pytest.raises(SpectrumError):
        resolvent_direct(block_swap(2, 4), 1.0)


def test_resolvent_power_scalar():
    R2 = resolvent_power_direct(-1.0 * identity(3), 1.0, 2)
    assert np.abs(R2.matrix - 0.25 * np.eye(3)).max() < 1e-14


def test_resolvent_power_cayley_closed_form():
    for n in (2, 4, 8, 16):
        c = 1.0 - 1.0 / n
        V = contraction_v(n, 32)
        R2 = resolvent_power_direct(b_family(n, 32), 1.0, 2)
        expect = 0.25 * ((1.0 + c * c) * np.eye(32) - 2.0 * V.operator.matrix)
        assert np.abs(R2.matrix - expect).max() < 1e-10


def test_resolvent_power_one_equals_direct():
    A = rescaled_generator(2, 4)
    assert np.array_equal(
        resolvent_power_direct(A, 2.0, 1).matrix, resolvent_direct(A, 2.0).matrix
    )


def test_resolvent_identity():
    # R(lam) - R(mu) = (mu - lam) R(lam) R(mu)
    for A in (rescaled_generator(4, 8), b_family(4, 8)):
        for lam, mu in ((1.0, 2.0), (1.0 + 1.0j, 1.5), (2.0, 1.5 - 0.5j)):
            Rl = resolvent_direct(A, lam)
            Rm = resolvent_direct(A, mu)
            lhs = Rl - Rm
            rhs = (mu - lam) * (Rl @ Rm)
            assert op_norm(lhs - rhs, 2.0).value < 1e-9


def test_derivative_identity_centered_difference():
    h = 1e-5
    for n in (2, 8):
        B = b_family(n, 2 * n)
        fd = (-1.0 / (2 * h)) * (
            resolvent_direct(B, 1.0 + h) - resolvent_direct(B, 1.0 - h)
        )
        R2 = resolvent_power_direct(B, 1.0, 2)
        assert op_norm(fd - R2, 2.0).value < 1e-6


def test_quadrature_spec_validation():
    with pytest.raises(LinalgError):
        QuadratureSpec(t_max=0.0)
    with pytest.raises(LinalgError):
        QuadratureSpec(t_max=10.0, nodes=8)
    with pytest.raises(LinalgError):
        QuadratureSpec(t_max=10.0, rule="simpson")


def test_quadrature_points_integrate_smooth_functions():
    # Composite Gauss-Legendre on [0, T]: check against antiderivatives.
    spec = QuadratureSpec(t_max=2.0, nodes=64)
    ts, ws = spec.points()
    assert float(np.sum(ws * ts**3)) == pytest.approx(2.0**4 / 4, abs=1e-12)
    assert float(np.sum(ws * np.exp(-ts))) == pytest.approx(
        1.0 - math.exp(-2.0), abs=1e-12
    )
    trap = QuadratureSpec(t_max=2.0, nodes=4097, rule="composite-trapezoid")
    ts, ws = trap.points()
    assert float(np.sum(ws * np.exp(-ts))) == pytest.approx(
        1.0 - math.exp(-2.0), abs=1e-7
    )


def test_tail_bound_formula():
    # k = 1: M e^{-aT}/a exactly.
    assert laplace_tail_bound(2.0, 1.0, 10.0, 1) == pytest.approx(
        2.0 * math.exp(-10.0), rel=1e-12
    )
    # monotone in T and increasing in k
    assert laplace_tail_bound(1.0, 1.0, 20.0, 2) < laplace_tail_bound(1.0, 1.0, 10.0, 2)
    assert laplace_tail_bound(1.0, 1.0, 10.0, 3) > laplace_tail_bound(1.0, 1.0, 10.0, 1)


def test_default_quadrature_hits_tail_target():
    q = default_quadrature(1.0 + 0j, 1.0, 0.0, 3)
    assert laplace_tail_bound(1.0, 1.0, q.t_max, 3) <= 1e-10


def test_laplace_scalar_family():
    # integral_0^inf e^{-2t} dt = 1/2, computed against the scalar family.
    fam = scalar_semigroup(-1.0, 3)
    res = resolvent_power_laplace(fam, 1.0, 1)
    assert np.abs(res.operator.matrix - 0.5 * np.eye(3)).max() < 1e-8
    assert res.tail_bound <= 1e-10
    assert res.rule_estimate < 1e-8


def test_laplace_requires_abscissa_above_omega():
    fam = scalar_semigroup(0.5, 2)  # omega = 0.5
    with pytest.raises(LinalgError):
        resolvent_power_laplace(fam, 0.4, 1)


def test_laplace_matches_direct_for_cayley_square():
    for n in (2, 4):
        D = 2 * n
        B = b_family(n, D)
        fam = numeric_semigroup(B, M=1.0, omega=0.0)
        got = resolvent_power_laplace(fam, 1.0, 2).operator
        expect = resolvent_power_direct(B, 1.0, 2)
        assert op_norm(got - expect, 2.0).value < 1e-6


def test_laplace_matches_direct_for_rescaled_swap():
    fam = rescaled_swap_semigroup(4, 8)
    got = resolvent_power_laplace(fam, 1.0, 1).operator
    direct = resolvent_direct(rescaled_generator(4, 8), 1.0)
    # and the algebraic closed form (2I + S)/3 from S^2 = I
    closed = (2.0 * np.eye(8) + block_swap(4, 8).matrix) / 3.0
    assert np.abs(direct.matrix - closed).max() < 1e-12
    assert op_norm(got - direct, 2.0).value < 1e-6


def test_contour_spec_validation():
    with pytest.raises(LinalgError):
        ContourSpec(radius=0.0)
    with pytest.raises(LinalgError):
        ContourSpec(radius=2.0, nodes=32)


def test_dunford_zero_operator():
    A = DenseOperator(np.zeros((4, 4)))
    E = dunford_evaluate(A, 1.7, ContourSpec(radius=1.0))
    assert np.abs(E.matrix - np.eye(4)).max() < 1e-12


def test_dunford_matches_closed_form_swap():
    A = rescaled_generator(4, 8)
    E = dunford_evaluate(A, 1.0, ContourSpec(radius=3.0))
    S = block_swap(4, 8).matrix
    expect = math.exp(-1.0) * (math.cosh(1.0) * np.eye(8) + math.sinh(1.0) * S)
    assert np.abs(E.matrix - expect).max() < 1e-8


def test_dunford_matches_matrix_exp_cayley():
    B = b_family(4, 8)
    E = dunford_evaluate(B, 2.0, default_contour(B))
    ref = matrix_exp(B, 2.0, 1e-12)
    assert op_norm(E - ref, 2.0).value < 1e-8


def test_dunford_accurate_at_large_times():
    # Dyadic splitting keeps the contour sum conditioned at large t.
    A = rescaled_generator(2, 4)
    for t in (5.0, 10.0, 20.0):
        E = dunford_evaluate(A, t)
        ref = matrix_exp(A, t, 1e-13)
        assert op_norm(E - ref, 2.0).value < 1e-8


def test_dunford_radius_guard():
    A = rescaled_generator(2, 4)  # norm 2
    with pytest.raises(LinalgError):
        dunford_evaluate(A, 1.0, ContourSpec(radius=2.5))


def test_three_route_agreement_spot():
    B = b_family(2, 4)
    lam, k = 1.0 + 1.0j, 2
    direct = resolvent_power_direct(B, lam, k)
    lap = resolvent_power_laplace(
        numeric_semigroup(B, 1.0, 0.0), lam, k
    ).operator
    dun = resolvent_power_via_dunford(B, lam, k, 1.0, 0.0)
    assert op_norm(direct - lap, 2.0).value < 1e-6
    assert op_norm(direct - dun, 2.0).value < 1e-6
    assert op_norm(lap - dun, 2.0).value < 1e-6

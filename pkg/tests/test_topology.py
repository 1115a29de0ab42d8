import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sglab.linalg import (
    DenseOperator,
    basis_vector,
    identity,
    vector,
    zero_operator,
)
from sglab.operators import block_swap, cayley_generator, contraction_v
from sglab.resolvent import resolvent_direct
from sglab.semigroup import cosh_identity_limit, evaluate, rescaled_swap_semigroup, swap_semigroup
from sglab.topology import (
    TestVector,
    TestVectorSet,
    classify_deltas,
    default_test_set,
    measure_convergence,
    measure_convergence_on_grid,
    weak_pairing,
)


def test_weak_pairing_identity():
    assert weak_pairing(identity(4), basis_vector(4, 1), basis_vector(4, 1)) == 1.0


def test_weak_pairing_swap_exactly_zero():
    for n in (1, 2, 5):
        D = 2 * n
        S = block_swap(n, D)
        assert weak_pairing(S, basis_vector(D, 1), basis_vector(D, 1)) == 0j


def test_weak_pairing_closed_form_is_cosh():
    # The swap part pairs to an exact zero, leaving the cosh(t) diagonal.
    for t in (0.0, 0.7, 2.0):
        T = evaluate(swap_semigroup(4, 8), t)
        got = weak_pairing(T, basis_vector(8, 1), basis_vector(8, 1))
        assert got == math.cosh(t)


def test_weak_pairing_conjugates_dual_side():
    A = identity(2)
    x = vector([1.0 + 1.0j, 0.0])
    y = vector([0.0 + 1.0j, 0.0])
    assert weak_pairing(A, x, y) == (1.0 + 1.0j) * np.conj(1.0j)


def test_default_test_set_shape():
    tests = default_test_set(32, seed=5)
    kinds = [tv.kind for tv in tests.vectors]
    assert kinds.count("canonical-basis") == 8
    assert kinds.count("finite-support-rational") == 3
    assert kinds.count("random-dense") == 4
    assert tests.support_bound == 8
    # every member has max modulus >= 1 so all r-norms are >= 1
    for tv in tests.vectors:
        assert np.max(np.abs(tv.vec.entries)) >= 1.0 - 1e-12


def test_default_test_set_deterministic():
    a = default_test_set(16, seed=42)
    b = default_test_set(16, seed=42)
    for ta, tb in zip(a.vectors, b.vectors):
        assert np.array_equal(ta.vec.entries, tb.vec.entries)


def test_measure_weak_exact_beyond_with_basis_tests():
    D = 32
    tvs = tuple(
        TestVector(basis_vector(D, j), "canonical-basis", f"e{j}")
        for j in range(1, 5)
    )
    tests = TestVectorSet(tvs, p=2.0)
    seq = {n: block_swap(n, D) for n in (2, 4, 8, 16)}
    rep = measure_convergence(seq, zero_operator(D), "weak", tests)
    assert str(rep.verdict) == "exact-beyond(4)"
    assert rep.delta == (1.0, 0.0, 0.0, 0.0)


def test_measure_strong_swap_stays_at_one():
    D = 32
    tests = default_test_set(D, seed=0)
    seq = {n: block_swap(n, D) for n in (2, 4, 8, 16)}
    rep = measure_convergence(seq, zero_operator(D), "strong", tests)
    assert rep.delta == (1.0, 1.0, 1.0, 1.0)
    assert str(rep.verdict) == "no-convergence"


def test_measure_weak_default_set_exact_beyond_8():
    D = 32
    tests = default_test_set(D, seed=0)
    seq = {n: block_swap(n, D) for n in (2, 4, 8, 16)}
    rep = measure_convergence(seq, zero_operator(D), "weak", tests)
    assert str(rep.verdict) == "exact-beyond(8)"
    # dense channel decays but never blocks the exact verdict
    assert rep.dense_delta is not None
    assert rep.dense_decay_rate < 0


def test_measure_norm_scalar_sequence():
    D = 8
    n_grid = [2**k for k in range(1, 22)]
    seq = {n: (1.0 / n) * identity(D) for n in n_grid}
    rep = measure_convergence(seq, zero_operator(D), "norm", tests=default_test_set(D))
    assert str(rep.verdict) == "converges-to-limit"
    for n, d in zip(rep.n_grid, rep.delta):
        assert d == pytest.approx(1.0 / n, rel=1e-9)


def test_measure_on_grid_swap_semigroups_vs_cosh():
    D = 32
    tests = default_test_set(D, seed=0)
    grid = [5.0 * i / 100.0 for i in range(101)]
    rep = measure_convergence_on_grid(
        lambda n, t: evaluate(swap_semigroup(n, D), t),
        cosh_identity_limit(D).evaluation,
        "weak",
        tests,
        grid,
        (2, 4, 8, 16),
    )
    assert str(rep.verdict) == "exact-beyond(8)"
    assert rep.delta[-1] == 0.0
    assert rep.delta[-2] == 0.0


def test_measure_on_grid_rescaled_gap_value():
    # sup over [0, 2] of e^{-t}(cosh t - 1) sits at t = 2 once every test
    # vector lies inside the swapped range.
    D = 32
    tvs = tuple(
        TestVector(basis_vector(D, j), "canonical-basis", f"e{j}")
        for j in range(1, 9)
    )
    tests = TestVectorSet(tvs, p=2.0)
    grid = [2.0 * i / 50.0 for i in range(51)]
    expected_gap = math.exp(-2.0) * (math.cosh(2.0) - 1.0)
    rep = measure_convergence_on_grid(
        lambda n, t: evaluate(rescaled_swap_semigroup(n, D), t),
        lambda t: (math.exp(-t)) * identity(D),
        "weak",
        tests,
        grid,
        (8, 16),
    )
    assert str(rep.verdict) == "no-convergence"
    for d in rep.delta:
        assert d == pytest.approx(expected_gap, abs=1e-12)
    assert expected_gap == pytest.approx(0.3738225362077544, abs=1e-15)
    assert rep.witness.param == 2.0


def test_measure_on_grid_resolvents_lambda_sweep():
    # Exact agreement at lambda = 1; at lambda = 2 the pairing is the
    # derived rational value 11/35 for n = 2.
    D = 32
    tests = default_test_set(D, seed=0)
    bs = {n: cayley_generator(contraction_v(n, D)) for n in (2, 4, 8, 16)}
    at_one = measure_convergence(
        {n: resolvent_direct(B, 1.0) for n, B in bs.items()},
        resolvent_direct(-1.0 * identity(D), 1.0),
        "weak",
        tests,
    )
    assert str(at_one.verdict) == "exact-beyond(8)"
    got = weak_pairing(resolvent_direct(bs[2], 2.0), basis_vector(D, 1), basis_vector(D, 1))
    assert got.real == pytest.approx(11.0 / 35.0, abs=1e-12)
    assert abs(got.imag) < 1e-15


def test_topology_ordering_chain():
    # weak <= strong for every p; strong <= norm at p = 2 where the norm
    # route is exact.
    rng = np.random.Generator(np.random.PCG64(21))
    D = 16
    for p in (1.0, 2.0, 3.0):
        tests = default_test_set(D, p=p, seed=3)
        seq = {
            n: DenseOperator(rng.standard_normal((D, D)) / n)
            for n in (2, 4, 8)
        }
        limit = zero_operator(D)
        weak = measure_convergence(seq, limit, "weak", tests)
        strong = measure_convergence(seq, limit, "strong", tests)
        for dw, ds in zip(weak.delta, strong.delta):
            assert dw <= ds + 1e-12
        if p == 2.0:
            norm = measure_convergence(seq, limit, "norm", tests)
            for ds, dn in zip(strong.delta, norm.delta):
                assert ds <= dn + 1e-7


def test_classify_exact_beyond_minimal_index():
    v = classify_deltas([2, 4, 8, 16], [1.0, 0.0, 0.0, 0.0])
    assert v.kind == "exact-beyond" and v.n0 == 4
    v = classify_deltas([2, 4], [0.0, 0.0])
    assert v.n0 == 2


def test_classify_dead_zone():
    v = classify_deltas([2, 4, 8, 16], [1e-4, 1e-4, 1e-4, 1e-4])
    assert v.kind == "inconclusive"


def test_classify_no_convergence():
    v = classify_deltas([2, 4, 8, 16], [0.5, 0.5, 0.5, 0.5])
    assert v.kind == "no-convergence"


def test_classify_converges():
    deltas = [1.0 / n for n in [2**k for k in range(1, 22)]]
    v = classify_deltas([2**k for k in range(1, 22)], deltas)
    assert v.kind == "converges-to-limit"


def test_classify_noise_floor_tail():
    v = classify_deltas([2, 4, 8, 16], [0.5, 0.75, 2e-16, 9e-16])
    assert v.kind == "converges-to-limit"


def test_witness_is_reproducible():
    D = 16
    tests = default_test_set(D, seed=9)
    seq = {n: block_swap(n, D) for n in (2, 4, 8)}
    r1 = measure_convergence(seq, zero_operator(D), "weak", tests)
    r2 = measure_convergence(seq, zero_operator(D), "weak", default_test_set(D, seed=9))
    assert r1.witness == r2.witness
    assert r1.delta == r2.delta
    assert r1.dense_delta == r2.dense_delta


@given(st.integers(1, 6))
@settings(max_examples=20)
def test_dual_exponent_pairs(k):
    from sglab.linalg import dual_exponent

    p = 1.0 + k * 0.5
    q = dual_exponent(p)
    assert 1.0 / p + 1.0 / q == pytest.approx(1.0, abs=1e-12)
    assert dual_exponent(1.0) == math.inf

import math

import numpy as np
import pytest

from sglab.linalg import vector
from sglab.trotter_kato import (
    TKInstance,
    check_condition_a,
    check_condition_b,
    check_condition_c,
    check_condition_d,
    example_2_1_instance,
    example_2_3_instance,
    implication_matrix,
    laplace_transfer_bound,
    run_suite,
    scalar_instance,
)

T_GRID = tuple(5.0 * i / 20.0 for i in range(21))  # coarser grid for speed


def small_2_1(mode):
    return example_2_1_instance(mode, t_grid=T_GRID)


def small_2_3(mode):
    return example_2_3_instance(mode, t_grid=T_GRID)


def small_scalar(mode):
    return scalar_instance(mode, t_grid=T_GRID)


def test_condition_a_weak_holds_for_block_swap():
    res = check_condition_a(small_2_1("weak"))
    assert res.verdict == "holds"
    assert str(res.measurement.verdict) == "exact-beyond(8)"


def test_condition_a_strong_fails_by_isometry():
    res = check_condition_a(small_2_1("strong"))
    assert res.verdict == "fails"
    assert all(d == 1.0 for d in res.measurement.delta)


def test_condition_a_scalar_holds_strongly():
    res = check_condition_a(small_scalar("strong"))
    assert res.verdict == "holds"


def test_condition_b_defaults_reduce_to_a():
    inst = small_2_1("weak")
    res = check_condition_b(inst)
    assert res.verdict == "holds"
    assert "default" in res.notes[0]


def test_condition_b_scalar_witnesses():
    base = small_scalar("strong")
    inst = TKInstance(
        name="scalar-shrunk-witnesses",
        generators=base.generators,
        limit_generator=base.limit_generator,
        semigroups=base.semigroups,
        limit_semigroup=base.limit_semigroup,
        core=base.core,
        M=base.M,
        omega=base.omega,
        lam=base.lam,
        mode="strong",
        t_grid=base.t_grid,
        b_witness=lambda x, n: (1.0 - 1.0 / n) * x,
        b_witness_label="x_n = (1 - 1/n) x",
    )
    assert check_condition_b(inst).verdict == "holds"


def test_condition_b_adversarial_witness_measured_not_assumed():
    # x_n = x + e_n: weakly null shift (the bump leaves the dual support
    # once n > 8), so weak mode still holds while strong mode fails on
    # ||e_n|| = 1.  D = 32 leaves room for the bump to escape.
    def shifted(x, n):
        D = x.dim
        bump = np.zeros(D, dtype=complex)
        bump[min(n, D) - 1] = 1.0
        return vector(x.entries + bump, x.p)

    base = scalar_instance("weak", D=32, t_grid=T_GRID)
    kw = dict(
        generators=base.generators,
        limit_generator=base.limit_generator,
        semigroups=base.semigroups,
        limit_semigroup=base.limit_semigroup,
        core=base.core,
        M=base.M,
        omega=base.omega,
        lam=base.lam,
        t_grid=base.t_grid,
        b_witness=shifted,
        b_witness_label="x_n = x + e_n",
    )
    weak = TKInstance(name="shifted-weak", mode="weak", **kw)
    strong = TKInstance(name="shifted-strong", mode="strong", **kw)
    assert check_condition_b(weak).verdict == "holds"
    assert check_condition_b(strong).verdict == "fails"


def test_condition_c_cayley_exact():
    res, lam_rep = check_condition_c(small_2_3("weak"))
    assert res.verdict == "holds"
    assert str(res.measurement.verdict) == "exact-beyond(8)"
    # the lambda-grid diagnostic records the non-uniformity without
    # touching the verdict
    assert str(lam_rep.verdict) == "no-convergence"


def test_condition_c_block_swap_fails_weakly():
    # R(1, S_n - I) = (2I + S_n)/3 pairs to 2/3 against (e1, e1) while
    # R(1, -I) pairs to 1/2: the gap 1/6 persists for every n.
    res, _ = check_condition_c(small_2_1("weak"))
    assert res.verdict == "fails"
    assert res.measurement.delta[-1] >= 1.0 / 6.0 - 1e-12


def test_condition_c_scalar_rate():
    res, _ = check_condition_c(small_scalar("strong"))
    assert res.verdict == "holds"
    # delta_n ~ (1/n)/(2(2 + 1/n)) ~ 1/(4n)
    d = dict(zip(res.measurement.n_grid, res.measurement.delta))
    assert d[1024] == pytest.approx(1.0 / (4.0 * 1024.0), rel=0.01)


def test_condition_d_block_swap_fails_with_gap():
    res = check_condition_d(small_2_1("weak"))
    assert res.verdict == "fails"
    w = res.witness
    assert w is not None and w.magnitude > 0.19
    # the t = 1 diagonal gap is e^{-1}(cosh 1 - 1)
    gap_t1 = math.exp(-1.0) * (math.cosh(1.0) - 1.0)
    assert gap_t1 == pytest.approx(0.19978820044686402, abs=1e-15)


def test_condition_d_cayley_fails():
    assert check_condition_d(small_2_3("weak")).verdict == "fails"


def test_condition_d_scalar_holds():
    assert check_condition_d(small_scalar("strong")).verdict == "holds"


def test_growth_bounds_hold_across_suite():
    for inst in (small_2_1("weak"), small_2_3("weak"), small_scalar("weak")):
        assert inst.check_growth_bounds()


def test_instance_rejects_bad_lambda():
    base = small_scalar("strong")
    with pytest.raises(Exception):
        TKInstance(
            name="bad",
            generators=base.generators,
            limit_generator=base.limit_generator,
            semigroups=base.semigroups,
            limit_semigroup=base.limit_semigroup,
            core=base.core,
            M=1.0,
            omega=0.0,
            lam=-1.0 + 0j,
            mode="strong",
            t_grid=base.t_grid,
        )


def test_implication_matrix_example_2_1():
    rep = implication_matrix(small_2_1("weak"))
    assert rep.matrix["a=>d"] == "counterexample-found"
    assert rep.matrix["b=>d"] == "counterexample-found"
    assert rep.matrix["a=>b"] == "consistent"
    assert rep.matrix["d=>c"] == "untested"


def test_implication_matrix_example_2_3():
    rep = implication_matrix(small_2_3("weak"))
    assert rep.matrix["c=>d"] == "counterexample-found"
    assert rep.matrix["c=>b"] == "consistent"


def test_implication_matrix_scalar_all_consistent():
    rep = implication_matrix(small_scalar("strong"))
    assert all(v == "consistent" for v in rep.matrix.values())


def test_suite_reproduces_pattern():
    suite = [
        small_2_1("weak"),
        small_2_1("strong"),
        small_2_3("weak"),
        small_scalar("strong"),
        small_scalar("weak"),
    ]
    result = run_suite(suite)
    assert result.pattern_ok()
    assert "block-swap-rescaled[weak]" in result.counterexample_instances["a=>d"]
    assert "block-swap-rescaled[weak]" in result.counterexample_instances["b=>d"]
    assert "cayley-contraction[weak]" in result.counterexample_instances["c=>d"]


def test_mode_monotonicity():
    # Conditions that hold in strong mode hold in weak mode on the same
    # family (norm convergence implies strong implies weak).
    for build in (small_2_1, small_2_3, small_scalar):
        strong = implication_matrix(build("strong"))
        weak = implication_matrix(build("weak"))
        for c in "abcd":
            if strong.conditions[c].verdict == "holds":
                assert weak.conditions[c].verdict == "holds"


def test_failure_witnesses_are_reproducible():
    r1 = implication_matrix(small_2_1("weak"))
    r2 = implication_matrix(small_2_1("weak"))
    for c in "abcd":
        assert r1.conditions[c].witness == r2.conditions[c].witness


def test_laplace_transfer_bound_quantitative():
    # |<(R(1,A_n) - R(1,A)) e1, e1>| is exactly the exponentially weighted
    # time integral of the semigroup pairing gaps; for the block-swap
    # family both sides equal 1/6.
    inst = small_2_1("weak")
    res = laplace_transfer_bound(inst, 16)
    assert res["lhs"] <= res["rhs"] + 1e-9
    assert res["lhs"] == pytest.approx(1.0 / 6.0, abs=1e-10)
    assert res["rhs"] == pytest.approx(1.0 / 6.0, abs=1e-6)


def test_transfer_bound_on_convergent_family():
    inst = small_scalar("strong")
    res = laplace_transfer_bound(inst, 1024)
    assert res["lhs"] <= res["rhs"] + 1e-9

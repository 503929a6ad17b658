import dataclasses

import numpy as np
import pytest

from basingen import (
    ClassParams,
    ErrorCode,
    ParameterError,
    default_params,
    function_seed,
    generate,
    ground_truth_problems,
)
from basingen.generator import (
    GLOBAL_ROW,
    VERTEX_ROW,
    _reflect_into_domain,
    _spherical_offset,
    compute_minima_values,
    compute_radii,
    identify_globals,
    place_local_minimizers,
    place_vertex_and_global,
)
from basingen.rng import LaggedFibonacci


def small_class(dim=2, num_minima=2, **kw):
    base = dict(
        dim=dim,
        num_minima=num_minima,
        global_value=-1.0,
        global_dist=2.0 / 3.0,
        global_radius=1.0 / 3.0,
        domain_left=(-1.0,) * dim,
        domain_right=(1.0,) * dim,
    )
    base.update(kw)
    return ClassParams(**base)


def records_equal(a, b):
    return (
        a.params == b.params
        and a.nf == b.nf
        and a.delta == b.delta
        and np.array_equal(a.minima.local_min, b.minima.local_min)
        and np.array_equal(a.minima.f, b.minima.f)
        and np.array_equal(a.minima.rho, b.minima.rho)
        and np.array_equal(a.minima.peak, b.minima.peak)
        and np.array_equal(a.minima.w_rho, b.minima.w_rho)
        and a.glob.num_global_minima == b.glob.num_global_minima
        and np.array_equal(a.glob.gm_index, b.glob.gm_index)
    )


# --------------------------------------------------------------------------
# generate


def test_generate_is_deterministic(params2, func9):
    assert records_equal(func9, generate(params2, 9))


def test_function_number_bounds(params2):
    for nf in (0, 101, -3):
        with pytest.raises(ParameterError) as exc:
            generate(params2, nf)
        assert exc.value.codes == [ErrorCode.FUNC_NUMBER]


def test_invalid_params_rejected():
    bad = dataclasses.replace(default_params(2), global_radius=0.4)
    with pytest.raises(ParameterError) as exc:
        generate(bad, 1)
    assert ErrorCode.GLOBAL_RADIUS in exc.value.codes


def test_seed_formula():
    p = default_params(2)
    assert function_seed(p, 1) == (10 - 1) * 100 + 1_000_000
    assert function_seed(p, 9) == 8 + 900 + 1_000_000
    p5 = small_class(dim=5, num_minima=30)
    assert function_seed(p5, 1) == 29 * 100 + 4 * 1_000_000
    # distinct across the class
    seeds = {function_seed(p, nf) for nf in range(1, 101)}
    assert len(seeds) == 100


def test_distinct_functions_within_class(params2, default_class):
    vertices = {tuple(f.vertex) for f in default_class}
    assert len(vertices) == 100


def test_generated_record_is_frozen(func9):
    with pytest.raises(dataclasses.FrozenInstanceError):
        func9.delta = 1.0
    with pytest.raises(ValueError):
        func9.minima.f[0] = 5.0
    with pytest.raises(ValueError):
        func9.glob.gm_index[0] = 7


# --------------------------------------------------------------------------
# placement


def test_spherical_offset_zero_angle():
    offset = _spherical_offset(2.0 / 3.0, [0.0])
    assert offset == pytest.approx([2.0 / 3.0, 0.0])


def test_spherical_offset_norm_many_dims():
    rng = np.random.default_rng(4)
    for dim in (2, 3, 5, 9):
        for _ in range(200):
            angles = [np.pi * rng.random()] + list(
                2.0 * np.pi * rng.random(dim - 2)
            )
            offset = _spherical_offset(0.37, angles)
            assert np.linalg.norm(offset) == pytest.approx(0.37, abs=1e-12)


def test_reflection_preserves_distance():
    center = np.array([0.9, 0.0])
    raw = np.array([1.1, 0.0])
    lower = np.array([-1.0, -1.0])
    upper = np.array([1.0, 1.0])
    reflected = _reflect_into_domain(raw, center, lower, upper)
    assert reflected == pytest.approx([0.7, 0.0])
    assert abs(np.linalg.norm(reflected - center) - 0.2) < 1e-15


def test_vertex_and_global_distance():
    p = small_class(dim=3, num_minima=10)
    for seed in range(1000):
        rng = LaggedFibonacci(seed)
        vertex, gmin = place_vertex_and_global(p, rng)
        assert np.linalg.norm(gmin - vertex) == pytest.approx(p.global_dist, abs=1e-12)
        assert np.all(gmin > -1.0) and np.all(gmin < 1.0)
        assert np.all(vertex > -1.0) and np.all(vertex < 1.0)


def test_m2_has_no_extra_minimizers():
    p = small_class(num_minima=2)
    rng = LaggedFibonacci(0)
    vertex, gmin = place_vertex_and_global(p, rng)
    others = place_local_minimizers(p, vertex, gmin, rng)
    assert others.shape == (0, 2)
    func = generate(p, 1)
    assert func.minima.local_min.shape == (2, 2)


def test_gap_condition_enforced(default_class):
    p = default_class[0].params
    least = p.global_radius + p.gap
    for func in default_class:
        gaps = np.linalg.norm(
            func.minima.local_min[2:] - func.global_minimizer, axis=1
        )
        assert np.all(gaps >= least)


def test_infeasible_gap_fails_not_hangs():
    # a clearance larger than the domain diameter leaves nowhere to place
    p = small_class(num_minima=3, gap=3.0)
    with pytest.raises(ParameterError) as exc:
        generate(p, 1)
    assert exc.value.codes == [ErrorCode.NUM_MINIMA]
    assert "cannot place minimizers" in exc.value.errors[0].detail


# --------------------------------------------------------------------------
# radii


def test_radii_hand_trace_tight():
    # two minimizers at distance 2/3 with global radius 1/3: the vertex
    # ball starts at 1/3, cannot expand, and is weighted to 0.33
    p = small_class(num_minima=2)
    points = np.array([[0.0, 0.0], [2.0 / 3.0, 0.0]])
    rho = compute_radii(points, p)
    assert rho[VERTEX_ROW] == pytest.approx(0.33)
    assert rho[GLOBAL_ROW] == pytest.approx(1.0 / 3.0)


def test_radii_hand_trace_expanding():
    # with global radius 0.2 the vertex ball expands from 1/3 to
    # 2/3 - 0.2 = 7/15 before weighting
    p = small_class(num_minima=2, global_radius=0.2)
    points = np.array([[0.0, 0.0], [2.0 / 3.0, 0.0]])
    rho = compute_radii(points, p)
    assert rho[VERTEX_ROW] == pytest.approx(0.99 * 7.0 / 15.0)
    assert rho[GLOBAL_ROW] == pytest.approx(0.2)


def test_balls_disjoint_across_class(default_class):
    for func in default_class:
        lm = func.minima.local_min
        rho = func.minima.rho
        for i in range(len(lm)):
            diffs = lm[i + 1 :] - lm[i]
            dists = np.sqrt(np.einsum("ij,ij->i", diffs, diffs))
            assert np.all(dists >= rho[i] + rho[i + 1 :] - 1e-12)


def test_global_radius_kept(default_class):
    for func in default_class:
        assert func.minima.rho[GLOBAL_ROW] == func.params.global_radius


# --------------------------------------------------------------------------
# minima values


def test_boundary_minimum_closed_form():
    p = small_class(num_minima=3, gap=0.05, global_radius=0.1, global_dist=0.5)
    points = np.array([[0.0, 0.0], [0.5, 0.0], [0.8, 0.0]])
    rho = np.array([0.1, 0.1, 0.2])
    values, peaks = compute_minima_values(points, rho, p, LaggedFibonacci(1))
    # minimum of the paraboloid over the third ball boundary: (0.8 - 0.2)^2
    assert values[2] + peaks[2] == pytest.approx(0.36)


def test_value_ordering(default_class):
    for func in default_class:
        f = func.minima.f
        assert f[VERTEX_ROW] == func.params.paraboloid_min
        assert f[GLOBAL_ROW] == func.params.global_value
        assert f.min() == func.params.global_value
        assert np.all(f >= func.params.global_value)


def test_values_below_boundary_minimum(default_class):
    for func in default_class:
        lm = func.minima.local_min
        rho = func.minima.rho
        dists = np.linalg.norm(lm[2:] - func.vertex, axis=1)
        boundary_min = (dists - rho[2:]) ** 2 + func.params.paraboloid_min
        assert np.all(func.minima.f[2:] < boundary_min)
        assert np.all(func.minima.peak[2:] > 0.0)


def test_delta_within_bounds(default_class):
    for func in default_class:
        assert 0.0 < func.delta < func.params.delta_max


# --------------------------------------------------------------------------
# global bookkeeping


def test_identify_globals_unique():
    info = identify_globals(np.array([0.0, -1.0, -0.4, -0.7]), 1e-10)
    assert info.num_global_minima == 1
    assert info.gm_index.tolist() == [2, 1, 3, 4]


def test_identify_globals_tie():
    info = identify_globals(np.array([0.0, -1.0, -1.0, -0.5]), 1e-10)
    assert info.num_global_minima == 2
    assert info.gm_index.tolist() == [2, 3, 1, 4]


def test_single_global_in_practice(default_class):
    # continuous depth draws make value ties measure-zero
    assert all(f.glob.num_global_minima == 1 for f in default_class)
    assert all(f.glob.gm_index[0] == 2 for f in default_class)


def test_ground_truth_audit_accepts_generated(default_class):
    for func in default_class:
        assert ground_truth_problems(func) == []

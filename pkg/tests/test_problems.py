import numpy as np
import pytest

from mixde.problems import (CONTINUOUS, INTEGER, FUNCTION_IDS,
                            FeasibilityError, domain_arrays,
                            make_domain_layout, make_problem)
from mixde.stream import RunStream


def feasible_sample(problem, rng, count):
    lo, hi = problem.bounds()
    int_mask = problem.integer_mask
    pts = lo + (hi - lo) * rng.uniforms(count * problem.n).reshape(count, problem.n)
    pts[:, int_mask] = np.floor(pts[:, int_mask] + 0.5)
    np.clip(pts, lo, hi, out=pts)
    return pts


class TestDomainLayout:
    def test_five_blocks_n5(self):
        domains = make_domain_layout(5)
        assert [(d.kind, d.lo, d.hi) for d in domains] == [
            (INTEGER, 0, 1), (INTEGER, 0, 3), (INTEGER, 0, 7),
            (INTEGER, 0, 15), (CONTINUOUS, -5.0, 5.0)]

    def test_block_sizes_n10(self):
        domains = make_domain_layout(10)
        assert len(domains) == 10
        assert sum(d.kind == INTEGER for d in domains) == 8
        assert sum(d.kind == CONTINUOUS for d in domains) == 2
        assert [d.hi for d in domains] == [1, 1, 3, 3, 7, 7, 15, 15, 5.0, 5.0]

    @pytest.mark.parametrize("n", [7, 0, -5, 4, 101])
    def test_rejects_bad_dimension(self, n):
        with pytest.raises(ValueError, match="multiple of 5"):
            make_domain_layout(n)

    def test_domain_arrays(self):
        lo, hi, int_mask = domain_arrays(make_domain_layout(5))
        assert lo.tolist() == [0, 0, 0, 0, -5]
        assert hi.tolist() == [1, 3, 7, 15, 5]
        assert int_mask.tolist() == [True, True, True, True, False]


class TestMakeProblem:
    def test_optimum_evaluates_to_f_opt(self):
        for kind in FUNCTION_IDS:
            for seed in (1, 2, 7):
                spec = make_problem(kind, 10, seed)
                assert spec.evaluate(spec.x_opt) == spec.f_opt == 0.0

    def test_deterministic_in_inputs(self):
        a = make_problem("rastrigin-rot", 10, 5)
        b = make_problem("rastrigin-rot", 10, 5)
        assert np.array_equal(a.x_opt, b.x_opt)
        pt = np.array(a.x_opt)
        pt[-1] = 0.25
        assert a.evaluate(pt) == b.evaluate(pt)

    def test_instances_differ_across_seeds(self):
        opts = {tuple(make_problem("sphere", 5, s).x_opt) for s in range(1, 101)}
        assert len(opts) > 1

    def test_x_opt_feasible(self):
        for kind in FUNCTION_IDS:
            spec = make_problem(kind, 15, 3)
            lo, hi = spec.bounds()
            assert np.all(spec.x_opt >= lo) and np.all(spec.x_opt <= hi)
            ints = spec.x_opt[spec.integer_mask]
            assert np.all(ints == np.floor(ints))

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown function"):
            make_problem("himmelblau", 5, 1)


class TestEvaluate:
    def test_sphere_single_offset(self):
        spec = make_problem("sphere", 5, 1)
        genome = np.array(spec.x_opt)
        j = 1  # Int[0,3] slot: one of x_opt +/- 2 stays in bounds
        step = 2.0 if genome[j] + 2 <= 3 else -2.0
        genome[j] += step
        assert spec.evaluate(genome) == 4.0

    def test_rastrigin_unit_integer_step(self):
        spec = make_problem("rastrigin-sep", 10, 3)
        genome = np.array(spec.x_opt)
        j = 4  # Int[0,7] block for n=10
        genome[j] += 1.0 if genome[j] + 1 <= 7 else -1.0
        value = spec.evaluate(genome)
        assert value > 0
        # single scaled coordinate at w = lam_j: w^2 + 10(1 - cos(2 pi w))
        lam = 10.0 ** (0.5 * j / 9)
        expected = lam * lam + 10.0 * (1.0 - np.cos(2 * np.pi * lam))
        assert value == pytest.approx(expected, rel=1e-12)

    def test_non_integral_integer_coordinate_rejected(self):
        spec = make_problem("sphere", 5, 1)
        genome = np.array(spec.x_opt)
        genome[0] = 0.5
        with pytest.raises(FeasibilityError, match="non-integral"):
            spec.evaluate(genome)

    def test_out_of_bounds_rejected(self):
        spec = make_problem("sphere", 5, 1)
        genome = np.array(spec.x_opt)
        genome[-1] = 5.5
        with pytest.raises(FeasibilityError, match="bounds"):
            spec.evaluate(genome)

    def test_evaluation_pure(self):
        spec = make_problem("step-ellipsoid", 10, 2)
        rng = RunStream([5])
        pts = feasible_sample(spec, rng, 50)
        first = spec.evaluate_many(pts)
        second = spec.evaluate_many(pts)
        assert np.array_equal(first, second)
        assert spec.evaluate(pts[0]) == first[0]

    def test_bounded_below_by_f_opt(self):
        rng = RunStream([17])
        for kind in FUNCTION_IDS:
            spec = make_problem(kind, 5, 4)
            pts = feasible_sample(spec, rng, 10_000)
            values = spec.evaluate_many(pts)
            assert np.all(np.isfinite(values))
            assert np.all(values >= spec.f_opt)

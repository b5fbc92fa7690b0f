import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from evenpowers import series, special
from evenpowers.core import DivergenceError, DomainError, EvalOptions, PowerParams
from evenpowers.representation import r_convolution

PI_COTH_PI = math.pi / math.tanh(math.pi)


class TestSLower:
    def test_examples(self):
        for m, k, a in ((1, 1, 0.3), (3, 5, 7.0), (2, 9, 1.0)):
            assert series.s_lower(PowerParams(m, k, a), 0) == pytest.approx(1 / a)
        assert series.s_lower(PowerParams(1, 1, 1.0), 4) == pytest.approx(2.4)
        assert series.s_lower(PowerParams(2, 2, 1.0), 2) == pytest.approx(1 + 2 + 4 / 3)

    def test_monotone(self):
        p = PowerParams(2, 3, 0.5)
        vals = [series.s_lower(p, N) for N in (0, 1, 10, 100, 1000)]
        assert all(b >= a for a, b in zip(vals, vals[1:]))


class TestMajorants:
    @pytest.mark.parametrize("m,k", [(1, 1), (1, 2), (2, 3), (3, 5)])
    def test_sandwich_counts(self, m, k):
        N = 3000
        A = r_convolution(PowerParams(m, k), N).cumulative().astype(float)
        n = np.arange(N + 1)
        assert np.all(series.cumulative_minorant(m, k, n) <= A)
        assert np.all(A <= series.cumulative_majorant(m, k, n))

    def test_ball_volume(self):
        assert series.ball_volume(1, 2) == pytest.approx(math.pi)
        assert series.ball_volume(1, 3) == pytest.approx(4 * math.pi / 3)
        assert series.ball_volume(5, 1) == pytest.approx(2.0)


class TestTailBounds:
    def test_ordered_and_sound(self):
        # the exact tail over (N, M] is a lower bound for the true tail
        p = PowerParams(2, 2, 1.0)
        N, M = 1000, 200_000
        r = r_convolution(p, M).counts.astype(float)
        mid = float(np.sum(r[N + 1:] / (np.arange(N + 1, M + 1) + p.a)))
        lo, hi = series.tail_bounds(p, N, int(r[: N + 1].sum()))
        assert 0 <= lo <= hi
        assert mid <= hi

    def test_divergent_rejected(self):
        with pytest.raises(DivergenceError):
            series.tail_bounds(PowerParams(1, 2), 10, 5)


class TestBracket:
    def test_k1_contains_closed_form(self):
        br = series.s_bracket(PowerParams(1, 1, 1.0))
        assert br.contains(PI_COTH_PI)
        assert br.lower <= br.upper and br.converged

    def test_nested_refinement(self):
        p = PowerParams(2, 3, 1.0)
        coarse = series.s_bracket(p, EvalOptions(abs_tol=1e-1))
        fine = series.s_bracket(p, EvalOptions(abs_tol=1e-2))
        assert coarse.lower <= fine.lower <= fine.upper <= coarse.upper

    def test_unconverged_flag(self):
        br = series.s_bracket(PowerParams(3, 5, 1.0), EvalOptions(abs_tol=1e-9, max_terms=4096))
        assert not br.converged and br.terms == 4096 and br.width > 1e-9

    def test_divergent(self):
        with pytest.raises(DivergenceError, match="k < 2m"):
            series.s_bracket(PowerParams(2, 4, 1.0))

    @pytest.mark.parametrize("m", [1, 2, 3])
    @pytest.mark.parametrize("a", [0.1, 1.0, 10.0])
    def test_k1_scaling_identity(self, m, a):
        br = series.s_bracket(PowerParams(m, 1, a), EvalOptions(abs_tol=1e-6))
        u = special.u_direct(m, a ** (1 / (2 * m)), EvalOptions(abs_tol=1e-6, max_terms=10**7))
        assert br.contains(u.value, u.error_bound)

    def test_decreasing_in_a(self):
        p = PowerParams(2, 2, 1.0)
        b1 = series.s_bracket(p, EvalOptions(abs_tol=1e-3))
        b2 = series.s_bracket(p.with_a(2.0), EvalOptions(abs_tol=1e-3))
        assert b2.upper < b1.lower

    @settings(max_examples=15, deadline=None)
    @given(m=st.integers(1, 3), data=st.data(), a=st.floats(0.05, 50.0))
    def test_lower_routes_below_upper(self, m, data, a):
        k = data.draw(st.integers(1, 2 * m - 1))
        p = PowerParams(m, k, a)
        br = series.s_bracket(p, EvalOptions(abs_tol=1e-2, max_terms=1 << 16))
        assert series.s_lower(p, br.terms) <= br.upper
        M = 6 if k >= 4 else 30
        assert series.s_lattice(p, M) <= br.upper


class TestLattice:
    def test_examples(self):
        assert series.s_lattice(PowerParams(3, 4, 2.5), 0) == pytest.approx(0.4)
        assert series.s_lattice(PowerParams(2, 2, 1.0), 1) == pytest.approx(1 + 2 + 4 / 3)

    def test_limit(self):
        assert abs(series.s_lattice(PowerParams(1, 1, 1.0), 10**4) - PI_COTH_PI) < 2e-4

    def test_matches_box_scan(self):
        p = PowerParams(1, 3, 0.7)
        t = np.arange(-4, 5)
        g = t[:, None, None] ** 2 + t[None, :, None] ** 2 + t[None, None, :] ** 2
        assert series.s_lattice(p, 4) == pytest.approx(float(np.sum(1 / (g + 0.7))), rel=1e-13)

    def test_within_bracket(self):
        p = PowerParams(2, 3, 1.0)
        br = series.s_bracket(p, EvalOptions(abs_tol=1e-2))
        assert series.s_lattice(p, 20) <= br.upper

    def test_domain(self):
        with pytest.raises(DomainError):
            series.s_lattice(PowerParams(1, 1), -1)


class TestIntegral:
    def test_closed_form(self):
        iv = series.integral_s(PowerParams(1, 1, 1.0))
        assert abs(iv.value - PI_COTH_PI) < 1e-6
        assert not iv.rigorous and iv.converged

    def test_calibration(self):
        # k = 0 means Theta is replaced by 1
        for a in (0.3, 1.0, 4.0):
            assert series._q_integral(2, 0, a, EvalOptions()).value == pytest.approx(1 / a, rel=1e-10)

    def test_inside_bracket(self):
        p = PowerParams(2, 2, 1.0)
        br = series.s_bracket(p, EvalOptions(abs_tol=1e-4))
        assert br.contains(series.integral_s(p).value, 1e-4)

    def test_singular_endpoints(self):
        # a < 1 and k close to 2m stress both substitutions
        p = PowerParams(3, 5, 0.1)
        br = series.s_bracket(p, EvalOptions(abs_tol=1e-1, max_terms=1 << 22))
        assert br.contains(series.integral_s(p).value, 1e-4)

    def test_divergent(self):
        with pytest.raises(DivergenceError):
            series.integral_s(PowerParams(1, 2, 1.0))

    def test_node_cap(self):
        iv = series.integral_s(PowerParams(2, 3, 1.0), EvalOptions(abs_tol=1e-15, quad_points=64))
        assert not iv.converged

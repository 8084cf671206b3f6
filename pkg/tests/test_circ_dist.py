import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy.integrate import quad

from circcopula import (
    TWO_PI,
    CardioidCdf,
    EmpiricalCircularCdf,
    ShiftedCdf,
    UniformCdf,
    shift_origin,
    wrap_angle,
)
from circcopula.circ_dist import QUASI_INVERSE_XTOL

from .conftest import cardioid_density

angles = st.floats(min_value=0.0, max_value=TWO_PI, exclude_max=True)
units = st.floats(min_value=0.0, max_value=1.0)


class TestWrapAngle:
    def test_reduces_into_range(self):
        assert wrap_angle(-math.pi / 2) == pytest.approx(1.5 * math.pi)
        assert wrap_angle(5 * math.pi) == pytest.approx(math.pi)

    def test_snaps_near_two_pi(self):
        assert wrap_angle(TWO_PI) == 0.0
        assert wrap_angle(-1e-17) == 0.0
        assert wrap_angle(TWO_PI - 1e-16) == 0.0

    @given(st.floats(min_value=-1e6, max_value=1e6))
    def test_always_in_range(self, x):
        w = wrap_angle(x)
        assert 0.0 <= w < TWO_PI


class TestCardioid:
    def test_rejects_large_rho(self):
        with pytest.raises(ValueError):
            CardioidCdf(0.6, 0.0)
        CardioidCdf(-0.5, 1.0)

    def test_origin(self, F):
        assert F(0.0) == 0.0

    def test_half_at_pi(self, F):
        assert F(math.pi) == pytest.approx(0.5, abs=1e-15)

    def test_value_at_mean(self, G):
        expected = 1 / 6 + (0.3 / math.pi) * math.sin(math.pi / 3)
        assert G(math.pi / 3) == pytest.approx(expected, abs=1e-15)
        assert G(math.pi / 3) == pytest.approx(0.24937, abs=1e-5)

    @pytest.mark.parametrize("rho,mu", [(0.1, math.pi), (0.3, math.pi / 3), (0.5, 4.0), (-0.2, 1.0)])
    def test_matches_integrated_density(self, rho, mu):
        F = CardioidCdf(rho, mu)
        for theta in np.linspace(0.0, TWO_PI, 17):
            integral, _ = quad(cardioid_density, 0.0, theta, args=(rho, mu), epsabs=1e-14)
            assert F(theta) == pytest.approx(integral, abs=1e-12)

    def test_left_limit_at_two_pi(self, F):
        assert F(TWO_PI) == 1.0
        assert F(TWO_PI - 1e-9) == pytest.approx(1.0, abs=1e-9)

    def test_domain(self, F):
        with pytest.raises(ValueError):
            F(-0.1)
        with pytest.raises(ValueError):
            F(7.0)

    @given(st.lists(angles, min_size=2, max_size=50))
    def test_monotone(self, thetas):
        F = CardioidCdf(0.3, math.pi / 3)
        thetas = np.sort(thetas)
        assert np.all(np.diff(F(thetas)) >= -1e-15)


class TestExtend:
    def test_two_pi_is_one(self, F, G):
        assert F.extend(TWO_PI) == 1.0
        assert G.extend(TWO_PI) == 1.0

    def test_upper_branch(self, F, G):
        assert F.extend(3 * math.pi) == pytest.approx(1.5, abs=1e-15)
        assert G.extend(TWO_PI + math.pi / 3) == pytest.approx(G(math.pi / 3) + 1.0, abs=1e-15)
        assert G.extend(TWO_PI + math.pi / 3) == pytest.approx(1.24937, abs=1e-5)

    def test_continuous_at_two_pi(self, G):
        assert G.extend(TWO_PI - 1e-10) == pytest.approx(1.0, abs=1e-9)

    def test_nondecreasing(self, G):
        grid = np.linspace(0.0, 2 * TWO_PI, 2001, endpoint=False)
        assert np.all(np.diff(G.extend(grid)) >= -1e-15)

    @pytest.mark.parametrize("bad", [-1e-9, 2 * TWO_PI, 20.0])
    def test_domain_error(self, F, bad):
        with pytest.raises(ValueError):
            F.extend(bad)


class TestShiftOrigin:
    def test_zero_shift_is_identity(self, F):
        assert shift_origin(F, 0.0) is F
        grid = np.linspace(0, TWO_PI, 50)
        assert_allclose(ShiftedCdf(F, 0.0)(grid), F(grid), atol=1e-15)

    def test_uniform_invariant(self):
        U = UniformCdf()
        grid = np.linspace(0, TWO_PI, 50)
        for alpha in (0.3, 2.0, 5.9):
            assert_allclose(ShiftedCdf(U, alpha)(grid), U(grid), atol=1e-14)

    def test_marginal_shift_by_pi(self, F):
        F_pi = shift_origin(F, math.pi)
        assert F_pi(math.pi / 2) == pytest.approx(F(1.5 * math.pi) - 0.5, abs=1e-15)
        assert F_pi(TWO_PI - 1e-12) == pytest.approx(1.0, abs=1e-11)

    @pytest.mark.parametrize("alpha", [0.4, 2.5, 5.0])
    def test_is_valid_cdf(self, G, alpha):
        Ga = shift_origin(G, alpha)
        grid = np.linspace(0.0, TWO_PI, 1001)
        vals = Ga(grid)
        assert vals[0] == 0.0 and vals[-1] == 1.0
        assert np.all(np.diff(vals) >= -1e-15)

    @pytest.mark.parametrize("alpha", [0.4, 2.5, 5.0])
    def test_cardioid_shift_is_cardioid(self, alpha):
        # Rotating a cardioid moves its mean: independent closed form.
        G = CardioidCdf(0.3, math.pi / 3)
        grid = np.linspace(0.0, TWO_PI, 257)
        assert_allclose(shift_origin(G, alpha)(grid), CardioidCdf(0.3, math.pi / 3 - alpha)(grid), atol=1e-14)

    @settings(max_examples=50)
    @given(angles, angles)
    def test_composition(self, a1, a2):
        G = CardioidCdf(0.3, math.pi / 3)
        grid = np.linspace(0.0, TWO_PI, 65)
        nested = ShiftedCdf(ShiftedCdf(G, a1), a2)  # no structural collapse
        direct = shift_origin(G, (a1 + a2) % TWO_PI)
        assert_allclose(nested(grid), direct(grid), atol=1e-12)


class TestQuasiInverse:
    def test_uniform(self):
        assert UniformCdf().quasi_inverse(0.25) == pytest.approx(math.pi / 2)

    def test_zero(self, F, G):
        assert F.quasi_inverse(0.0) == 0.0
        assert G.quasi_inverse(0.0) == 0.0

    def test_cardioid_at_mean(self, G):
        u = G(math.pi / 3)
        theta = G.quasi_inverse(u)
        assert theta == pytest.approx(math.pi / 3, abs=1e-11)
        assert abs(G(theta) - u) < 1e-10

    def test_rounded_value(self, G):
        theta = G.quasi_inverse(0.24937)
        assert abs(G(theta) - 0.24937) < 1e-10
        assert theta == pytest.approx(math.pi / 3, abs=1e-4)

    def test_one(self, F):
        assert F.quasi_inverse(1.0) == pytest.approx(TWO_PI, abs=1e-9)

    def test_rejects_out_of_range(self, F):
        with pytest.raises(ValueError):
            F.quasi_inverse(1.5)

    def test_vectorised_monotone(self, G):
        u = np.linspace(0, 1, 501)
        theta = G.quasi_inverse(u)
        assert np.all(np.diff(theta) >= 0)
        assert_allclose(G(theta), u, atol=1e-10)

    @settings(max_examples=200)
    @given(angles, units)
    def test_galois(self, theta, u):
        G = CardioidCdf(0.3, math.pi / 3)
        q = G.quasi_inverse(u)
        if abs(theta - q) <= 10 * QUASI_INVERSE_XTOL:
            return
        assert (G(theta) >= u) == (theta >= q)

    @settings(max_examples=100)
    @given(angles, units)
    def test_galois_shifted(self, alpha, u):
        Ga = shift_origin(CardioidCdf(0.1, math.pi), alpha)
        q = Ga.quasi_inverse(u)
        assert Ga(q) >= u
        if q > 1e-9:
            assert Ga(q - 1e-9) < u


class TestEmpirical:
    def test_validation(self):
        with pytest.raises(ValueError):
            EmpiricalCircularCdf([1.0, 2.0], [0.5, 0.6])
        with pytest.raises(ValueError):
            EmpiricalCircularCdf([1.0, 1.0], [0.5, 0.5])
        with pytest.raises(ValueError):
            EmpiricalCircularCdf([1.0, 2.0], [1.0, 0.0])

    def test_step_function(self):
        E = EmpiricalCircularCdf([1.0, 2.0, 4.0], [0.2, 0.3, 0.5])
        assert E(0.0) == 0.0
        assert E(0.99) == 0.0
        assert E(1.0) == pytest.approx(0.2)
        assert E(3.0) == pytest.approx(0.5)
        assert E(4.0) == 1.0
        assert E(TWO_PI) == 1.0

    def test_quasi_inverse_hits_atoms(self):
        atoms = np.array([0.5, 1.5, 3.0, 5.5])
        E = EmpiricalCircularCdf(atoms, [0.1, 0.4, 0.3, 0.2])
        u = np.linspace(1e-9, 1.0, 1000)
        q = E.quasi_inverse(u)
        assert np.all(np.isin(q, atoms))
        assert E.quasi_inverse(0.1) == 0.5
        assert E.quasi_inverse(0.1 + 1e-12) == 1.5

    def test_flat_region_takes_left_end(self):
        E = EmpiricalCircularCdf([1.0, 4.0])
        assert E.quasi_inverse(0.5) == 1.0

    def test_atom_at_origin_counts_at_end(self):
        E = EmpiricalCircularCdf([0.0, 2.0], [0.25, 0.75])
        assert E(0.0) == 0.0
        assert E(3.0) == pytest.approx(0.75)
        assert E(TWO_PI) == 1.0
        assert wrap_angle(E.quasi_inverse(0.9)) == 0.0

    def test_shift_moves_atoms(self):
        E = EmpiricalCircularCdf([1.0, 2.0, 4.0], [0.2, 0.3, 0.5])
        for alpha in (0.5, 1.0, 3.0, 5.0):
            Ea = shift_origin(E, alpha)
            generic = ShiftedCdf(E, alpha)
            grid = np.linspace(0.0, TWO_PI, 400)
            assert_allclose(Ea(grid), generic(grid), atol=1e-12)

    def test_range_values(self):
        E = EmpiricalCircularCdf([1.0, 2.0, 4.0], [0.25, 0.25, 0.5])
        assert_allclose(E.range_values(), [0.0, 0.25, 0.5, 1.0])

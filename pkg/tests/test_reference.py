"""Numerov shooting oracle and the textbook step comparator."""

import math

import numpy as np
import pytest

from turnpoint import reference
from turnpoint.errors import InvalidInput
from turnpoint.potentials import (
    HarmonicOscillator,
    InfiniteSquareWell,
    UnitSystem,
    VWell,
)

U = UnitSystem()


class TestConfig:
    def test_defaults_valid(self):
        cfg = reference.NumerovConfig()
        assert cfg.n_points % 2 == 1

    @pytest.mark.parametrize("kwargs", [{"n_points": 100}, {"n_points": 50}, {"box_padding": -1.0}, {"energy_tol": 0.0}])
    def test_invalid_config(self, kwargs):
        with pytest.raises(InvalidInput):
            reference.NumerovConfig(**kwargs)


class TestNumerovIntegration:
    def test_free_particle_sine(self):
        # U = 0 inside the box: psi proportional to sin(k x)
        spec = InfiniteSquareWell(L=1.0)
        k = math.pi
        grid = np.linspace(0.0, 1.0, 1001)
        psi = reference.numerov_integrate(spec, k * k / 2.0, grid, U)
        psi = psi / np.max(np.abs(psi))
        expected = np.sin(k * grid)
        assert float(np.max(np.abs(psi - expected))) < 1e-8

    def test_starts_at_zero(self):
        grid = np.linspace(0.0, 1.0, 101)
        psi = reference.numerov_integrate(InfiniteSquareWell(L=1.0), 1.0, grid, U)
        assert psi[0] == 0.0


class TestBoundStates:
    def test_isw_spectrum(self):
        levels = reference.shoot_bound_states(InfiniteSquareWell(L=1.0), 3, units=U)
        for k, lv in enumerate(levels):
            exact = (k + 1) ** 2 * math.pi ** 2 / 2.0
            assert lv.energy == pytest.approx(exact, rel=1e-7)
            assert lv.node_count == k == lv.n_index

    def test_sho_half_integer_ladder(self):
        levels = reference.shoot_bound_states(HarmonicOscillator(omega=1.0), 3, units=U)
        for k, lv in enumerate(levels):
            assert lv.energy == pytest.approx(k + 0.5, abs=1e-6)

    def test_vwell_airy_ground_state(self):
        # lowest eigenvalue of U = |x| sits at (a1/2^(1/3)) with Airy zero a1
        (lv,) = reference.shoot_bound_states(VWell(u0=1.0), 1, units=U)
        assert lv.energy == pytest.approx(0.8086165174655018, abs=1e-5)

    def test_energies_strictly_increasing(self):
        levels = reference.shoot_bound_states(HarmonicOscillator(omega=1.0), 4, units=U)
        energies = [lv.energy for lv in levels]
        assert energies == sorted(energies)
        assert len(set(energies)) == len(energies)

    def test_invalid_n_max(self):
        with pytest.raises(InvalidInput):
            reference.shoot_bound_states(InfiniteSquareWell(L=1.0), 0, units=U)


class TestStandardStep:
    def test_total_reflection_at_and_below(self):
        assert reference.standard_step_R(1.0, 1.0, U) == 1.0
        assert reference.standard_step_R(0.5, 1.0, U) == 1.0

    def test_above_barrier_value(self):
        # E = 2 U0: R = ((sqrt(2)-1)/(sqrt(2)+1))^2
        expected = ((math.sqrt(2.0) - 1.0) / (math.sqrt(2.0) + 1.0)) ** 2
        assert reference.standard_step_R(2.0, 1.0, U) == pytest.approx(expected, rel=1e-14)

    def test_vanishes_at_high_energy(self):
        assert reference.standard_step_R(1e6, 1.0, U) < 1e-12

    def test_invalid_inputs(self):
        with pytest.raises(InvalidInput):
            reference.standard_step_R(-1.0, 1.0, U)
        with pytest.raises(InvalidInput):
            reference.standard_step_R(1.0, 0.0, U)

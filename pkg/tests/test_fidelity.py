import math

import numpy as np
import pytest

from holonoise import (NoiseChannel, NoiseSpec, bloch_sample, dynamical_pi_pulse,
                       evolve, gate_fidelity, mixing_loop, state_fidelity)
from holonoise.fidelity import sample_for
from holonoise.model import E_PLUS, E_MINUS, G
from holonoise.propagate import basis_state

OMEGA = 0.02
T_AD_QUICK = 2500.0


def quick_spec(channel, sigma, n_r, seed=42):
    return NoiseSpec.from_extractions(channel, sigma, n_r, T_AD_QUICK, seed)


class TestBlochSample:
    def test_grid_layout(self):
        sample = bloch_sample()
        assert len(sample) == 18
        assert np.array_equal(sample.states[0], basis_state(E_PLUS))
        assert np.array_equal(sample.states[1], basis_state(E_MINUS))

    def test_normalized_and_distinct(self):
        sample = bloch_sample()
        for psi in sample.states:
            assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)
        for i in range(18):
            for j in range(i + 1, 18):
                overlap = abs(np.vdot(sample.states[i], sample.states[j]))
                assert overlap < 1.0 - 1e-9

    def test_dynamical_sample_spans_ground_pair(self):
        sample = sample_for(dynamical_pi_pulse(OMEGA))
        assert np.array_equal(sample.states[0], basis_state(G))
        assert np.array_equal(sample.states[1], basis_state(E_PLUS))


class TestStateFidelity:
    def test_identical_states(self):
        psi = basis_state(E_PLUS)
        assert state_fidelity(psi, psi) == 1.0

    def test_orthogonal_states(self):
        assert state_fidelity(basis_state(E_PLUS), basis_state(E_MINUS)) == 0.0

    def test_equal_superposition(self):
        half = (basis_state(E_PLUS) + basis_state(E_MINUS)) / math.sqrt(2.0)
        assert state_fidelity(basis_state(E_PLUS), half) == pytest.approx(
            1.0 / math.sqrt(2.0), abs=1e-12)

    def test_symmetric(self, rng):
        a = rng.normal(size=4) + 1j * rng.normal(size=4)
        b = rng.normal(size=4) + 1j * rng.normal(size=4)
        a /= np.linalg.norm(a)
        b /= np.linalg.norm(b)
        assert state_fidelity(a, b) == pytest.approx(state_fidelity(b, a),
                                                     abs=1e-15)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            state_fidelity(basis_state(E_PLUS), np.array([1.0, 1.0, 0.0, 0.0]))


class TestGateFidelity:
    def test_disabled_channel_is_exactly_one(self, quick_mixing):
        spec = quick_spec(NoiseChannel.NONE, 0.0, 5)
        record = gate_fidelity(quick_mixing, spec, realizations=2)
        assert np.all(record.per_state == 1.0)
        assert record.mean_fidelity == 1.0

    def test_zero_sigma_matches_reference_bitwise(self, quick_mixing):
        # a sigma = 0 intensity run produces the identical field grid, so
        # the evolved states coincide exactly
        quiet = quick_spec(NoiseChannel.INTENSITY, 0.0, 5)
        none = quick_spec(NoiseChannel.NONE, 0.0, 5)
        psi_quiet, _ = evolve(quick_mixing, quiet, basis_state(E_PLUS))
        psi_none, _ = evolve(quick_mixing, none, basis_state(E_PLUS))
        assert np.array_equal(psi_quiet, psi_none)
        record = gate_fidelity(quick_mixing, quiet, realizations=2)
        assert np.all(np.abs(record.per_state - 1.0) <= 1e-10)

    def test_record_shape_and_bounds(self, quick_mixing):
        spec = quick_spec(NoiseChannel.INTENSITY, 0.1, 5)
        record = gate_fidelity(quick_mixing, spec, realizations=2)
        assert record.per_state.shape == (18,)
        assert record.per_state_std.shape == (18,)
        assert np.all((record.per_state >= 0.0) & (record.per_state <= 1.0))
        assert 0.0 <= record.leakage_g <= 1.0
        assert 0.0 <= record.leakage_e0 <= 1.0
        assert record.mean_fidelity == pytest.approx(record.per_state.mean())
        assert record.n_extractions == 5
        assert record.base_seed == 42
        assert record.channel is NoiseChannel.INTENSITY

    def test_deterministic_given_seed(self, quick_mixing):
        spec = quick_spec(NoiseChannel.INTENSITY, 0.1, 5)
        a = gate_fidelity(quick_mixing, spec, realizations=2)
        b = gate_fidelity(quick_mixing, spec, realizations=2)
        assert np.array_equal(a.per_state, b.per_state)
        assert a.mean_fidelity == b.mean_fidelity
        assert a.leakage_g == b.leakage_g

    def test_different_seed_changes_result(self, quick_mixing):
        a = gate_fidelity(quick_mixing, quick_spec(NoiseChannel.INTENSITY, 0.1, 5, seed=1),
                          realizations=2)
        b = gate_fidelity(quick_mixing, quick_spec(NoiseChannel.INTENSITY, 0.1, 5, seed=2),
                          realizations=2)
        assert a.mean_fidelity != b.mean_fidelity

    def test_noiseless_leakage_reported(self, standard_mixing):
        # the <= 0.01 adiabaticity bound holds at omega * t_ad = 150
        spec = NoiseSpec.from_extractions(NoiseChannel.INTENSITY, 0.1, 5,
                                          standard_mixing.t_ad, 42)
        record = gate_fidelity(standard_mixing, spec, realizations=1)
        assert record.noiseless_leakage_g + record.noiseless_leakage_e0 <= 0.01

    def test_phase_channel_gentler_than_intensity(self, quick_mixing):
        phase = gate_fidelity(quick_mixing,
                              quick_spec(NoiseChannel.PHASE, 0.1, 10),
                              realizations=2)
        intensity = gate_fidelity(quick_mixing,
                                  quick_spec(NoiseChannel.INTENSITY, 0.1, 10),
                                  realizations=2)
        assert phase.mean_fidelity >= intensity.mean_fidelity

    def test_realizations_validated(self, quick_mixing):
        with pytest.raises(ValueError):
            gate_fidelity(quick_mixing, quick_spec(NoiseChannel.INTENSITY, 0.1, 5),
                          realizations=0)

    def test_seed_list_reproducible(self, quick_mixing):
        from holonoise import derive_seed
        record = gate_fidelity(quick_mixing,
                               quick_spec(NoiseChannel.INTENSITY, 0.1, 5),
                               realizations=2)
        seeds = record.seeds()
        assert len(seeds) == 18 * 2
        assert seeds[0] == derive_seed(42, 0, 0)
        assert seeds[-1] == derive_seed(42, 17, 1)

"""Acceptance-scale runs against known entanglement results.

These tests diagonalize chains of several hundred sites or sparse spin
matrices of dimension 2^14 and take minutes in total.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from quasient.analysis import (
    LOG2,
    ScanRow,
    band_interior,
    degeneracy_profile,
    in_peak_region,
    nearest_to_phase,
    pairing_mismatch,
    scan_correction_scaling,
    scan_ed_excess,
    scan_multi_particle,
    scan_single_particle,
    scan_three_particle,
    three_particle_fixed_modes,
)
from quasient.ed import compare_quasiparticle_states
from quasient.freefermion import (
    ExcitationSpec,
    QuasiparticleBasis,
    diagonalize,
    half_chain_mode_weight,
)
from quasient.model import XY, SpinChainModel, TiltedIsing, build_xy_majorana
from quasient.mpsx import (
    block_window_spectrum,
    doubling_mismatch,
    excitation_spectrum,
    ground_spectrum,
    random_excitation,
    random_uniform_mps,
)

pytestmark = [pytest.mark.integration, pytest.mark.slow]

SCALING_SIZES = [128, 256, 512, 1024]


def _sweep_index(row: ScanRow) -> int:
    """The occupied mode that is not a spectator."""
    fixed = three_particle_fixed_modes(row.n)
    return next(int(k) for k in row.modes.split(";") if int(k) not in fixed)


@pytest.fixture(scope="module")
def plateau_rows() -> list[ScanRow]:
    """Interior single excitations of XY(0.5, 0.9) at n = 512."""
    model = SpinChainModel(kind=XY(gamma=0.5, h=0.9), n=512)
    return scan_single_particle(model, [512], band_interior(512, 0.1))


@pytest.fixture(scope="module")
def three_particle_rows() -> list[ScanRow]:
    """b†_i b†_{3n/4} b†_{n/4}|Ω⟩ for the Ising chain at h = 2, n = 512."""
    model = SpinChainModel(kind=XY(gamma=1.0, h=2.0), n=512)
    return scan_three_particle(model, [512], band_interior(512, 0.1))


@pytest.fixture(scope="module")
def xy_basis() -> QuasiparticleBasis:
    """Quasiparticle basis of XY(0.5, 0.9) at n = 512."""
    return diagonalize(build_xy_majorana(SpinChainModel(kind=XY(gamma=0.5, h=0.9), n=512)))


@pytest.fixture(scope="module")
def tilted_excess() -> dict[int, list[float]]:
    """ΔS of the two lowest excited states of the tilted Ising chain per size."""
    excess = {}
    for n in (10, 12, 14):
        model = SpinChainModel(kind=TiltedIsing(J=1.0, hz=1.0, hx=1.0), n=n)
        rows = scan_ed_excess(model, 4)
        excess[n] = [rows[1].dS, rows[2].dS]
    return excess


class TestOracleGrid:
    """Free fermions against explicit spin states over a parameter grid."""

    @pytest.mark.parametrize("gamma", [0.25, 0.5, 1.0])
    @pytest.mark.parametrize("h", [0.5, 0.9, 2.0])
    @pytest.mark.parametrize("n", [6, 8, 10, 12])
    def test_ground_and_single_excitations(self, gamma: float, h: float, n: int) -> None:
        """Test entropies of the vacuum and all single excitations."""
        model = SpinChainModel(kind=XY(gamma=gamma, h=h), n=n)
        report = compare_quasiparticle_states(model)
        assert report.states_compared == n + 1
        assert report.max_entropy_error < 1e-9
        assert report.max_energy_error < 1e-8
        assert report.label_mismatches == 0


class TestSingleParticlePlateau:
    """Single excitations of XY(0.5, 0.9) at n = 512."""

    def test_below_log2(self, plateau_rows: list[ScanRow]) -> None:
        """Test ΔS ≤ log 2 for every interior mode."""
        assert max(r.dS for r in plateau_rows) <= LOG2 + 1e-9

    def test_close_to_log2(self, plateau_rows: list[ScanRow]) -> None:
        """Test log 2 − ΔS ≤ 0.02 away from the band edges."""
        assert max(LOG2 - r.dS for r in plateau_rows) <= 0.02

    def test_both_reflection_classes(self, plateau_rows: list[ScanRow]) -> None:
        """Test that the interior holds both reflection bands."""
        assert {r.reflection for r in plateau_rows} == {1, -1}
        assert all(r.k_class == 1 and r.is_regular for r in plateau_rows)

    @pytest.mark.parametrize("reflection", [1, -1])
    def test_bands_monotone(self, plateau_rows: list[ScanRow], reflection: int) -> None:
        """Test ΔS monotone in energy over the lower half of each reflection band."""
        band = [
            r.dS for r in plateau_rows if r.reflection == reflection and int(r.modes) < 256
        ]
        steps = np.diff(band)
        assert len(band) > 10
        assert np.all(steps >= -1e-12) or np.all(steps <= 1e-12)


class TestCorrectionScaling:
    """log 2 − ΔS ∝ n^-1 for the mode nearest π/2."""

    @pytest.mark.parametrize("reflection", [1, -1])
    def test_exponent(self, reflection: int) -> None:
        """Test the fitted exponent in each reflection class."""
        model = SpinChainModel(kind=XY(gamma=0.5, h=0.9), n=SCALING_SIZES[0])
        rows, fit = scan_correction_scaling(model, SCALING_SIZES, reflection=reflection)
        assert all(r.reflection == reflection for r in rows)
        assert all(r.dS <= LOG2 + 1e-9 for r in rows)
        assert not fit.excluded
        assert fit.exponent == pytest.approx(-1.0, abs=0.15)


class TestThreeParticlePlateau:
    """b†_i b†_{3n/4} b†_{n/4}|Ω⟩ for the Ising chain at h = 2."""

    def test_plateau(self, three_particle_rows: list[ScanRow]) -> None:
        """Test ΔS ≈ 3 log 2 outside the peak regions."""
        outside = [r for r in three_particle_rows if not in_peak_region(_sweep_index(r), 512)]
        assert outside
        assert max(abs(r.dS - 3 * LOG2) for r in outside) <= 0.05

    def test_peaks_above_two_particles(self, three_particle_rows: list[ScanRow]) -> None:
        """Test ΔS > 2 log 2 next to a spectator mode."""
        inside = [r for r in three_particle_rows if in_peak_region(_sweep_index(r), 512)]
        assert inside
        assert min(r.dS for r in inside) > 2 * LOG2


class TestDegeneracy:
    """Schmidt spectra of excitations on XY(0.5, 0.9) at n = 512."""

    @pytest.mark.parametrize("reflection", [1, -1])
    def test_single_excitation_pairs(self, xy_basis: QuasiparticleBasis, reflection: int) -> None:
        """Test that the top 64 probabilities come in equal pairs."""
        k = nearest_to_phase(xy_basis, math.pi / 2, reflection)
        probs = degeneracy_profile(xy_basis, ExcitationSpec.of(k), top=64)
        assert probs.size == 64
        assert pairing_mismatch(probs, 2) <= 1e-3

    def test_two_excitations_group_in_fours(self, xy_basis: QuasiparticleBasis) -> None:
        """Test fourfold groups for two same-class excitations."""
        modes = [nearest_to_phase(xy_basis, phase, 1) for phase in (math.pi / 3, 2 * math.pi / 3)]
        probs = degeneracy_profile(xy_basis, ExcitationSpec.of(*modes), top=64)
        assert probs.size == 64
        assert pairing_mismatch(probs, 4) <= 1e-2


class TestAdditivity:
    """ΔS ≈ k log 2 for k well-separated quasiparticles."""

    def test_k_particles(self) -> None:
        """Test one, two and three same-class modes at n = 1024."""
        model = SpinChainModel(kind=XY(gamma=0.5, h=0.9), n=1024)
        basis = diagonalize(build_xy_majorana(model))
        phases = (math.pi / 4, math.pi / 2, 3 * math.pi / 4)
        modes = [nearest_to_phase(basis, phase, 1) for phase in phases]
        assert len(set(modes)) == 3
        rows = scan_multi_particle(model, [modes[:1], modes[:2], modes])
        for k, row in enumerate(rows, start=1):
            assert abs(row.dS - k * LOG2) <= 0.05
            assert row.k_class == k


class TestModeWeightDecay:
    """Half-chain weight of a single mode shrinks with n."""

    def test_inverse_n(self) -> None:
        """Test n times the half-chain weight of the mode nearest π/2 constant within 25%."""
        scaled = []
        for n in (128, 256, 512):
            basis = diagonalize(build_xy_majorana(SpinChainModel(kind=XY(0.5, 0.9), n=n)))
            k = nearest_to_phase(basis, math.pi / 2)
            scaled.append(n * half_chain_mode_weight(basis, k, n // 2))
        mean = float(np.mean(scaled))
        assert mean > 0
        assert all(abs(value / mean - 1) <= 0.25 for value in scaled)


class TestTiltedIsingTrend:
    """Lowest excitations of the non-integrable chain."""

    def test_bounded(self, tilted_excess: dict[int, list[float]]) -> None:
        """Test 0 < ΔS ≤ log 2 + 0.02 for both states at every size."""
        assert all(0 < dS <= LOG2 + 0.02 for pair in tilted_excess.values() for dS in pair)

    def test_band_grows_toward_log2(self, tilted_excess: dict[int, list[float]]) -> None:
        """Test that the band mean and the second state increase with n."""
        means = [np.mean(tilted_excess[n]) for n in (10, 12, 14)]
        second = [tilted_excess[n][1] for n in (10, 12, 14)]
        assert means[0] < means[1] < means[2]
        assert second[0] < second[1] < second[2]

    def test_single_quasiparticles_at_14(self, tilted_excess: dict[int, list[float]]) -> None:
        """Test that both lowest states classify as one quasiparticle under a 0.35 threshold."""
        assert all(abs(dS / LOG2 - 1) < 0.35 for dS in tilted_excess[14])


class TestMPSIdentity:
    """S[Φ] − S[Ω] = log 2 for random uniform MPS."""

    @pytest.mark.parametrize("D", [2, 4, 8])
    @pytest.mark.parametrize("momentum", [0.0, np.pi / 2, np.pi])
    def test_random_draws(self, D: int, momentum: float) -> None:
        """Test twenty draws per bond dimension and momentum."""
        rng = np.random.default_rng(D)
        for _ in range(20):
            ump = random_uniform_mps(D, rng=rng)
            spectrum = excitation_spectrum(ump, random_excitation(ump, momentum, rng))
            assert abs(spectrum.entropy - spectrum.ground_entropy - LOG2) <= 1e-8
            assert doubling_mismatch(ground_spectrum(ump).eigenvalues, spectrum.eigenvalues) <= 1e-8

    @pytest.mark.parametrize("D", [2, 4])
    @pytest.mark.parametrize("momentum", [0.0, np.pi / 2])
    def test_block_window_approaches_two_copies(self, D: int, momentum: float) -> None:
        """Test the block-MPS window against the windowed spectrum and its infinite limit."""
        rng = np.random.default_rng(100 + D)
        ump = random_uniform_mps(D, rng=rng)
        exc = random_excitation(ump, momentum, rng)
        ground = ground_spectrum(ump).eigenvalues
        mismatches = []
        for W in (40, 400, 4000):
            oracle = block_window_spectrum(ump, exc, W)
            windowed = excitation_spectrum(ump, exc, window=W).eigenvalues
            assert np.allclose(windowed, oracle, atol=1e-10)
            mismatches.append(doubling_mismatch(ground, oracle))
        assert mismatches[0] > mismatches[1] > mismatches[2]
        assert mismatches[2] < 0.05

"""Tests for uniform MPS fixed points and momentum-excitation entanglement."""

from __future__ import annotations

import math

import numpy as np
import pytest

from quasient.exceptions import (
    DegenerateInputError,
    InputError,
    NonInjectiveError,
    SizeCapError,
)
from quasient.mpsx import (
    LOG2,
    ExcitationTensor,
    UniformMPS,
    apply_left,
    apply_right,
    block_window_spectrum,
    conjugate_gauge,
    doubling_mismatch,
    excitation_environments,
    excitation_norm,
    excitation_spectrum,
    finite_window_state,
    fixed_points,
    gauge_fix,
    gauge_residual,
    ground_spectrum,
    random_excitation,
    random_uniform_mps,
    spectrum_entropy,
    transfer_matrix,
    window_blocks,
    window_schmidt_spectrum,
)


def _product_mps() -> UniformMPS:
    """D = 1 tensor a = (1, 0): the all-zero product state."""
    return fixed_points(np.array([1.0, 0.0]).reshape(2, 1, 1))


class TestFixedPoints:
    """Tests for transfer maps and fixed points."""

    @pytest.mark.parametrize("D", [1, 2, 4, 6])
    def test_fixed_point_equations(self, D: int, rng: np.random.Generator) -> None:
        """Test E(r) = r, E†(l) = l and tr(l r) = 1."""
        ump = random_uniform_mps(D, rng=rng)
        assert np.allclose(apply_right(ump.A, ump.r), ump.r, atol=1e-10)
        assert np.allclose(apply_left(ump.A, ump.l), ump.l, atol=1e-10)
        assert ump.normalized
        assert np.trace(ump.r).real == pytest.approx(1.0)

    def test_positive_definite(self, rng: np.random.Generator) -> None:
        """Test Hermitian positive definite fixed points."""
        ump = random_uniform_mps(4, rng=rng)
        for X in (ump.l, ump.r):
            assert np.allclose(X, X.conj().T)
            assert np.linalg.eigvalsh(X)[0] > 0

    def test_transfer_matrix_matches_map(self, rng: np.random.Generator) -> None:
        """Test the dense matrix against the contraction on row-major vectors."""
        ump = random_uniform_mps(3, rng=rng)
        X = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert np.allclose(
            transfer_matrix(ump.A) @ X.reshape(-1), apply_right(ump.A, X).reshape(-1)
        )
        assert np.allclose(
            transfer_matrix(ump.A, left=True) @ X.reshape(-1), apply_left(ump.A, X).reshape(-1)
        )

    def test_spectral_radius_one(self, rng: np.random.Generator) -> None:
        """Test the normalization of A."""
        ump = random_uniform_mps(3, rng=rng)
        moduli = np.abs(np.linalg.eigvals(transfer_matrix(ump.A)))
        assert moduli.max() == pytest.approx(1.0)
        assert 0 < ump.transfer_gap <= 1

    def test_non_injective(self) -> None:
        """Test that a degenerate leading eigenvalue is rejected."""
        A = np.eye(2).reshape(1, 2, 2)
        with pytest.raises(NonInjectiveError) as exc_info:
            fixed_points(A)
        assert exc_info.value.gap == pytest.approx(0.0)

    def test_bad_shape(self) -> None:
        """Test rejection of non-square bond legs."""
        with pytest.raises(InputError):
            fixed_points(np.zeros((2, 3, 4)))

    def test_bond_cap(self) -> None:
        """Test the bond-dimension cap."""
        with pytest.raises(SizeCapError):
            fixed_points(np.zeros((2, 17, 17)))


class TestGroundSpectrum:
    """Tests for the half-infinite ground-state spectrum."""

    def test_normalized(self, rng: np.random.Generator) -> None:
        """Test eigenvalues in [0, 1] summing to one."""
        spectrum = ground_spectrum(random_uniform_mps(5, rng=rng))
        assert spectrum.eigenvalues.sum() == pytest.approx(1.0)
        assert np.all(spectrum.eigenvalues > -1e-12)
        assert np.all(np.diff(spectrum.eigenvalues) <= 1e-14)
        assert 0 <= spectrum.entropy <= math.log(5) + 1e-12

    def test_product_state(self) -> None:
        """Test zero entropy for D = 1."""
        spectrum = ground_spectrum(_product_mps())
        assert spectrum.eigenvalues.tolist() == pytest.approx([1.0])
        assert spectrum.entropy == pytest.approx(0.0)

    def test_gauge_invariant(self, rng: np.random.Generator) -> None:
        """Test that A ↦ X⁻¹AX leaves the spectrum unchanged."""
        ump = random_uniform_mps(4, rng=rng)
        X = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)) + 4 * np.eye(4)
        gauged = fixed_points(conjugate_gauge(ump.A, X))
        assert np.allclose(
            ground_spectrum(gauged).eigenvalues, ground_spectrum(ump).eigenvalues, atol=1e-9
        )

    def test_singular_gauge(self) -> None:
        """Test rejection of a singular gauge transformation."""
        with pytest.raises(InputError):
            conjugate_gauge(np.ones((2, 2, 2)), np.zeros((2, 2)))

    def test_spectrum_entropy_clips(self) -> None:
        """Test that tiny negative eigenvalues contribute nothing."""
        assert spectrum_entropy(np.array([0.5, 0.5, -1e-17])) == pytest.approx(LOG2)


class TestExcitations:
    """Tests for gauge fixing and the excited spectrum."""

    def test_gauge_fix(self, rng: np.random.Generator) -> None:
        """Test the left gauge condition and unit norm."""
        ump = random_uniform_mps(4, rng=rng)
        exc = random_excitation(ump, 1.0, rng)
        assert gauge_residual(ump, exc) < 1e-10
        assert excitation_norm(ump, exc.B) == pytest.approx(1.0)
        assert exc.momentum == 1.0

    def test_momentum_wrapped(self, rng: np.random.Generator) -> None:
        """Test κ taken modulo 2π."""
        ump = random_uniform_mps(2, rng=rng)
        exc = random_excitation(ump, 2 * np.pi + 0.5, rng)
        assert exc.momentum == pytest.approx(0.5)

    def test_pure_gauge_rejected(self, rng: np.random.Generator) -> None:
        """Test that B = A projects to zero."""
        ump = random_uniform_mps(3, rng=rng)
        with pytest.raises(DegenerateInputError):
            gauge_fix(ump, ump.A)

    def test_shape_mismatch(self, rng: np.random.Generator) -> None:
        """Test rejection of a B with the wrong shape."""
        ump = random_uniform_mps(3, rng=rng)
        with pytest.raises(InputError):
            gauge_fix(ump, np.zeros((2, 2, 2)))

    def test_ungauged_rejected(self, rng: np.random.Generator) -> None:
        """Test that the spectrum requires a gauge-fixed B."""
        ump = random_uniform_mps(3, rng=rng)
        B = rng.standard_normal(ump.A.shape) + 1j * rng.standard_normal(ump.A.shape)
        with pytest.raises(InputError, match="gauge"):
            excitation_spectrum(ump, ExcitationTensor(B=B))

    def test_hand_gauge_fix(self) -> None:
        """Test b = (0, 1) from a = (1, 0) and B = (0.3, 1)."""
        exc = gauge_fix(_product_mps(), np.array([0.3, 1.0]).reshape(2, 1, 1))
        assert np.allclose(exc.B.reshape(-1), [0.0, 1.0])

    @pytest.mark.parametrize("D", [1, 2, 3, 5, 8])
    @pytest.mark.parametrize("momentum", [0.0, 0.7, np.pi])
    def test_excess_is_log2(self, D: int, momentum: float) -> None:
        """Test S[Φ] − S[Ω] = log 2 and the doubled spectrum."""
        rng = np.random.default_rng(D * 100 + int(10 * momentum))
        ump = random_uniform_mps(D, rng=rng)
        spectrum = excitation_spectrum(ump, random_excitation(ump, momentum, rng))
        assert spectrum.deviation < 1e-10
        assert spectrum.eigenvalues.sum() == pytest.approx(1.0)
        ground = ground_spectrum(ump)
        assert doubling_mismatch(ground.eigenvalues, spectrum.eigenvalues) < 1e-10

    def test_doubling_mismatch_size(self) -> None:
        """Test infinite mismatch for spectra of the wrong length."""
        assert doubling_mismatch(np.array([1.0]), np.array([1.0])) == float("inf")

    def test_spectrum_to_dict(self, rng: np.random.Generator) -> None:
        """Test dictionary form of the excited spectrum."""
        ump = random_uniform_mps(2, rng=rng)
        d = excitation_spectrum(ump, random_excitation(ump, 0.0, rng)).to_dict()
        assert d["excess"] == pytest.approx(LOG2)
        assert len(d["eigenvalues"]) == 4


class TestFiniteWindow:
    """Tests for explicit finite windows."""

    def test_ground_window_exact(self, rng: np.random.Generator) -> None:
        """Test that the ground window reproduces the infinite spectrum at any W."""
        ump = random_uniform_mps(3, rng=rng)
        expected = ground_spectrum(ump).eigenvalues
        for W in (2, 5):
            probs = window_schmidt_spectrum(finite_window_state(ump, None, W))
            assert probs.sum() == pytest.approx(1.0)
            assert np.allclose(probs[:3], expected, atol=1e-10)

    def test_hand_window(self) -> None:
        """Test ψ = (e^{iκ}|1,0⟩ + e^{2iκ}|0,1⟩)/√2 for D = 1, W = 2."""
        ump = _product_mps()
        kappa = 0.4
        exc = gauge_fix(ump, np.array([0.3, 1.0]).reshape(2, 1, 1), kappa)
        amplitudes = finite_window_state(ump, exc, 2)
        assert amplitudes.shape == (1, 2, 2, 1)
        assert amplitudes[0, 1, 0, 0] == pytest.approx(np.exp(1j * kappa) / np.sqrt(2))
        assert amplitudes[0, 0, 1, 0] == pytest.approx(np.exp(2j * kappa) / np.sqrt(2))
        assert np.allclose(window_schmidt_spectrum(amplitudes, 1), [0.5, 0.5])

    def test_window_converges(self) -> None:
        """Test the window spectrum approaching two halved copies as W grows."""
        for seed in range(4):
            rng = np.random.default_rng(seed)
            ump = random_uniform_mps(2, rng=rng)
            exc = random_excitation(ump, 0.3, rng)
            ground = ground_spectrum(ump).eigenvalues
            short = excitation_spectrum(ump, exc, window=40).eigenvalues
            long = excitation_spectrum(ump, exc, window=4000).eigenvalues
            assert doubling_mismatch(ground, long) < 0.3 * doubling_mismatch(ground, short)

    def test_window_limits(self, rng: np.random.Generator) -> None:
        """Test window length validation and the amplitude cap."""
        ump = random_uniform_mps(2, rng=rng)
        with pytest.raises(InputError):
            finite_window_state(ump, None, 0)
        with pytest.raises(SizeCapError):
            finite_window_state(ump, None, 21)
        with pytest.raises(InputError):
            window_schmidt_spectrum(finite_window_state(ump, None, 2), 3)
        exc = random_excitation(ump, 0.0, rng)
        with pytest.raises(InputError):
            block_window_spectrum(ump, exc, 0)
        with pytest.raises(InputError):
            window_blocks(ump, exc, 4, 5)


class TestBlockWindow:
    """Tests against the bond-2D block tensor [[e^{iκ}A, B], [0, A]]."""

    @pytest.mark.parametrize("momentum", [0.0, 1.1, np.pi])
    def test_matches_amplitudes(self, momentum: float, rng: np.random.Generator) -> None:
        """Test the contracted block window against explicit amplitudes at W = 10."""
        ump = random_uniform_mps(2, rng=rng)
        exc = random_excitation(ump, momentum, rng)
        explicit = window_schmidt_spectrum(finite_window_state(ump, exc, 10))
        block = block_window_spectrum(ump, exc, 10)
        assert np.allclose(explicit[: block.size], block, atol=1e-10)
        assert explicit[block.size :].sum() < 1e-10

    @pytest.mark.parametrize("D", [2, 3, 4])
    @pytest.mark.parametrize("momentum", [0.0, 2.0])
    def test_window_spectrum_matches(self, D: int, momentum: float) -> None:
        """Test the environment iteration against the block window at W = 40 and 41."""
        rng = np.random.default_rng(10 * D)
        ump = random_uniform_mps(D, rng=rng)
        exc = random_excitation(ump, momentum, rng)
        for W, cut in ((40, None), (41, 13)):
            expected = block_window_spectrum(ump, exc, W, cut)
            actual = excitation_spectrum(ump, exc, window=W, cut=cut).eigenvalues
            assert np.allclose(actual, expected, atol=1e-10)

    def test_window_depends_on_B(self, rng: np.random.Generator) -> None:
        """Test that two excitations differ at finite W and agree in the limit."""
        ump = random_uniform_mps(3, rng=rng)
        first = random_excitation(ump, 0.5, rng)
        second = random_excitation(ump, 0.5, rng)
        finite = [block_window_spectrum(ump, exc, 40) for exc in (first, second)]
        assert np.abs(finite[0] - finite[1]).max() > 1e-6
        limits = [excitation_spectrum(ump, exc).eigenvalues for exc in (first, second)]
        assert np.allclose(limits[0], limits[1], atol=1e-12)


class TestEnvironments:
    """Tests for the geometric sums behind the infinite-chain spectrum."""

    @pytest.mark.parametrize("momentum", [0.0, 0.8, np.pi])
    def test_right_boundary_matches_iteration(
        self, momentum: float, rng: np.random.Generator
    ) -> None:
        """Test the solved overlap ⟨φ|β⟩ against a long iterated right half."""
        ump = random_uniform_mps(3, rng=rng)
        exc = random_excitation(ump, momentum, rng)
        env = excitation_environments(ump, exc)
        _, right = window_blocks(ump, exc, 300, 0)
        iterated = right[:3, 3:] * np.exp(-1j * momentum)
        assert np.allclose(iterated, env.right_boundary, atol=1e-9)

    def test_left_boundary_vanishes(self, rng: np.random.Generator) -> None:
        """Test ⟨α|θ⟩ = 0 in the left gauge."""
        ump = random_uniform_mps(4, rng=rng)
        env = excitation_environments(ump, random_excitation(ump, 1.3, rng))
        assert np.abs(env.left_boundary).max() < 1e-10

    @pytest.mark.parametrize("momentum", [0.0, 2.5])
    def test_densities_match_growth(self, momentum: float, rng: np.random.Generator) -> None:
        """Test the per-site growth of the B-carrying Gram blocks."""
        ump = random_uniform_mps(3, rng=rng)
        exc = random_excitation(ump, momentum, rng)
        env = excitation_environments(ump, exc)
        short_left, short_right = window_blocks(ump, exc, 200, 100)
        long_left, long_right = window_blocks(ump, exc, 400, 200)
        left_growth = (long_left[3:, 3:] - short_left[3:, 3:]) / 100
        right_growth = (long_right[:3, :3] - short_right[:3, :3]) / 100
        assert np.allclose(left_growth, env.left_density, atol=1e-9)
        assert np.allclose(right_growth, env.right_density, atol=1e-9)

    def test_densities_carry_norm(self, rng: np.random.Generator) -> None:
        """Test that both densities are the fixed points scaled by the norm per site."""
        ump = random_uniform_mps(4, rng=rng)
        exc = random_excitation(ump, 0.9, rng)
        env = excitation_environments(ump, exc)
        w = excitation_norm(ump, exc.B)
        assert np.allclose(env.left_density, w * ump.l, atol=1e-10)
        assert np.allclose(env.right_density, w * ump.r, atol=1e-10)
        assert env.boundary_coupling > 0

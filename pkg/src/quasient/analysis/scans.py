"""Entanglement scans over system sizes and quasiparticle excitations."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from functools import partial

import numpy as np

from quasient.analysis.fitting import classify_quasiparticles, fit_correction
from quasient.analysis.models import DEFAULT_CLASSIFY_THRESHOLD, LOG2, ScalingFit, ScanRow
from quasient.analysis.runner import ScanRunner
from quasient.ed.eigensolver import DEFAULT_SEED
from quasient.ed.excess import excess_table
from quasient.exceptions import InputError
from quasient.freefermion.correlations import correlation_excited
from quasient.freefermion.entropy import entanglement_entropy, spectrum_from_gamma
from quasient.freefermion.models import (
    DEFAULT_TOLERANCES,
    ExcitationSpec,
    QuasiparticleBasis,
    Tolerances,
)
from quasient.freefermion.solver import diagonalize
from quasient.model.hamiltonians import build_xy_majorana
from quasient.model.models import SpinChainModel

logger = logging.getLogger(__name__)

# Fraction of modes dropped at each band edge by default
BAND_EDGE_FRACTION = 0.05
# Half-width of the three-particle peak regions, in units of n
PEAK_HALF_WIDTH = 1 / 16


def make_row(
    model: SpinChainModel,
    basis: QuasiparticleBasis,
    spec: ExcitationSpec,
    L: int,
    S_ground: float,
    S_excited: float,
    threshold: float = DEFAULT_CLASSIFY_THRESHOLD,
) -> ScanRow:
    """Row for b†_K|Ω⟩ with labels and classification filled in."""
    dS = 0.0 if spec.is_ground else S_excited - S_ground
    k, regular = classify_quasiparticles(max(dS, 0.0), threshold)
    return ScanRow(
        model=model.describe(),
        n=model.n,
        L=L,
        boundary=model.boundary.value,
        modes=spec.describe(),
        reflection=basis.reflection_label(spec.occupied),
        parity=basis.parity_label(spec.occupied),
        momentum=tuple(float(basis.momentum_label[k]) for k in spec.occupied),
        S_ground=S_ground,
        S_excited=S_excited,
        dS=dS,
        dS_over_log2=dS / LOG2,
        k_class=k,
        is_regular=regular,
    )


def _subsystem(n: int, L: int | None) -> int:
    return n // 2 if L is None else L


def _excited_row(
    model: SpinChainModel,
    basis: QuasiparticleBasis,
    L: int,
    S_ground: float,
    threshold: float,
    tolerances: Tolerances,
    spec: ExcitationSpec,
) -> ScanRow:
    spec.validate(basis.n)
    corr = correlation_excited(basis, spec, L)
    S_excited = spectrum_from_gamma(corr, tolerances).entropy
    return make_row(model, basis, spec, L, S_ground, S_excited, threshold)


def _rows_for_specs(
    model: SpinChainModel,
    specs: Sequence[ExcitationSpec],
    *,
    L: int | None,
    threshold: float,
    tolerances: Tolerances,
    runner: ScanRunner | None,
    basis: QuasiparticleBasis | None = None,
) -> list[ScanRow]:
    if not specs:
        return []
    basis = basis if basis is not None else diagonalize(build_xy_majorana(model), tolerances)
    L = _subsystem(model.n, L)
    S_ground = entanglement_entropy(basis, None, L, tolerances)
    work = partial(_excited_row, model, basis, L, S_ground, threshold, tolerances)
    return (runner or ScanRunner(1)).map(work, specs)


def scan_single_particle(
    model: SpinChainModel,
    sizes: Iterable[int],
    modes: Iterable[int] | None = None,
    *,
    L: int | None = None,
    threshold: float = DEFAULT_CLASSIFY_THRESHOLD,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    runner: ScanRunner | None = None,
) -> list[ScanRow]:
    """One row per (n, mode) for the single excitations b†_κ|Ω⟩.

    Args:
        model: Quadratic model; its size is replaced by each entry of ``sizes``
        sizes: Chain lengths
        modes: Mode indices, all modes when None
        L: Subsystem size, n/2 when None
        threshold: Classification threshold
        tolerances: Numerical tolerances
        runner: Executor for the per-mode work
    """
    selected = None if modes is None else list(modes)
    rows: list[ScanRow] = []
    for n in sizes:
        sized = model.with_size(n)
        indices = range(n) if selected is None else selected
        specs = [ExcitationSpec.of(k) for k in indices]
        rows.extend(
            _rows_for_specs(
                sized, specs, L=L, threshold=threshold, tolerances=tolerances, runner=runner
            )
        )
    return rows


def scan_multi_particle(
    model: SpinChainModel,
    mode_sets: Iterable[Sequence[int]],
    *,
    L: int | None = None,
    threshold: float = DEFAULT_CLASSIFY_THRESHOLD,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    runner: ScanRunner | None = None,
) -> list[ScanRow]:
    """One row per occupied mode set at the model's own size."""
    specs = [ExcitationSpec(occupied=tuple(modes)) for modes in mode_sets]
    return _rows_for_specs(
        model, specs, L=L, threshold=threshold, tolerances=tolerances, runner=runner
    )


def three_particle_fixed_modes(n: int) -> tuple[int, int]:
    """The two spectator modes (3n/4, n/4)."""
    return 3 * n // 4, n // 4


def in_peak_region(i: int, n: int, half_width: float = PEAK_HALF_WIDTH) -> bool:
    """Whether sweep index i lies within n·half_width of a spectator mode."""
    return any(abs(i - m) <= half_width * n for m in three_particle_fixed_modes(n))


def scan_three_particle(
    model: SpinChainModel,
    sizes: Iterable[int],
    sweep: Iterable[int] | None = None,
    *,
    L: int | None = None,
    threshold: float = DEFAULT_CLASSIFY_THRESHOLD,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    runner: ScanRunner | None = None,
) -> list[ScanRow]:
    """Rows for b†_i b†_{3n/4} b†_{n/4}|Ω⟩ over the sweep index i (all modes when None).

    Indices that collide with a spectator mode are skipped.
    """
    selected = None if sweep is None else list(sweep)
    rows: list[ScanRow] = []
    for n in sizes:
        fixed = three_particle_fixed_modes(n)
        indices = range(n) if selected is None else selected
        specs = []
        for i in indices:
            if i in fixed:
                logger.info("n=%d: sweep index %d coincides with a spectator mode; skipped", n, i)
                continue
            specs.append(ExcitationSpec.of(i, *fixed))
        rows.extend(
            _rows_for_specs(
                model.with_size(n),
                specs,
                L=L,
                threshold=threshold,
                tolerances=tolerances,
                runner=runner,
            )
        )
    return rows


def band_interior(n: int, fraction: float = BAND_EDGE_FRACTION) -> list[int]:
    """Mode indices left after dropping ``fraction`` of the band at each edge."""
    if not 0 <= fraction < 0.5:
        raise InputError(f"Band-edge fraction must be in [0, 0.5), got {fraction}")
    cut = math.ceil(fraction * n)
    return list(range(cut, n - cut))


def nearest_to_phase(
    basis: QuasiparticleBasis, phase: float, reflection: int | None = None
) -> int:
    """Mode whose momentum label is closest to ``phase``, optionally within one reflection class.

    The class is that of the single-excitation state b†_κ|Ω⟩.
    """
    candidates = [
        k
        for k in range(basis.n)
        if reflection is None or basis.reflection_label([k]) == reflection
    ]
    if not candidates:
        raise InputError(f"No mode with reflection label {reflection:+d}")
    distances = np.abs(basis.momentum_label[candidates] - phase)
    return candidates[int(np.argmin(distances))]


def degeneracy_profile(
    basis: QuasiparticleBasis,
    spec: ExcitationSpec,
    L: int | None = None,
    *,
    top: int = 64,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """The ``top`` largest Schmidt probabilities of b†_K|Ω⟩, descending."""
    corr = correlation_excited(basis, spec, _subsystem(basis.n, L))
    spectrum = spectrum_from_gamma(corr, tolerances, with_schmidt=True, max_count=top)
    return np.asarray(spectrum.schmidt_probs)[:top]


def pairing_mismatch(probabilities: np.ndarray, group: int) -> float:
    """Largest relative spread inside consecutive groups of ``group`` probabilities.

    Incomplete trailing groups are ignored.
    """
    probs = np.asarray(probabilities, dtype=float)
    complete = probs.size - probs.size % group
    if complete == 0:
        return 0.0
    blocks = probs[:complete].reshape(-1, group)
    spread = (blocks.max(axis=1) - blocks.min(axis=1)) / blocks.max(axis=1)
    return float(spread.max())


def scan_correction_scaling(
    model: SpinChainModel,
    sizes: Iterable[int],
    *,
    phase: float = math.pi / 2,
    reflection: int | None = None,
    L: int | None = None,
    threshold: float = DEFAULT_CLASSIFY_THRESHOLD,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[list[ScanRow], ScalingFit]:
    """Fit log 2 − ΔS against n for the mode nearest ``phase`` in a reflection class."""
    rows: list[ScanRow] = []
    for n in sizes:
        sized = model.with_size(n)
        basis = diagonalize(build_xy_majorana(sized), tolerances)
        k = nearest_to_phase(basis, phase, reflection)
        rows.extend(
            _rows_for_specs(
                sized,
                [ExcitationSpec.of(k)],
                L=L,
                threshold=threshold,
                tolerances=tolerances,
                runner=None,
                basis=basis,
            )
        )
    fit = fit_correction([(row.n, LOG2 - row.dS) for row in rows])
    return rows, fit


def scan_ed_excess(
    model: SpinChainModel,
    M: int,
    *,
    cut: int | None = None,
    threshold: float = DEFAULT_CLASSIFY_THRESHOLD,
    seed: int = DEFAULT_SEED,
) -> list[ScanRow]:
    """Rows for the M lowest exact eigenstates, labelled "ed:<index>"."""
    L = _subsystem(model.n, cut)
    table = excess_table(model, M, cut=L, seed=seed)
    ground = table[0].entropy
    rows = []
    for entry in table:
        k, regular = classify_quasiparticles(max(entry.dS, 0.0), threshold)
        rows.append(
            ScanRow(
                model=model.describe(),
                n=model.n,
                L=L,
                boundary=model.boundary.value,
                modes=f"ed:{entry.index}",
                reflection=entry.reflection or 0,
                parity=entry.parity or 0,
                S_ground=ground,
                S_excited=entry.entropy,
                dS=entry.dS,
                dS_over_log2=entry.dS / LOG2,
                k_class=k,
                is_regular=regular,
            )
        )
    return rows

"""Pytest fixtures for quasient tests."""

from __future__ import annotations

import numpy as np
import pytest

from quasient.freefermion.models import QuasiparticleBasis
from quasient.freefermion.solver import diagonalize
from quasient.model.hamiltonians import build_xy_majorana
from quasient.model.models import XY, SpinChainModel, TiltedIsing


@pytest.fixture
def ising_model() -> SpinChainModel:
    """Paramagnetic transverse-field Ising chain, gapped with a unique ground state."""
    return SpinChainModel(kind=XY(gamma=1.0, h=2.0), n=8)


@pytest.fixture
def xy_model() -> SpinChainModel:
    """Anisotropic XY chain in the ordered phase."""
    return SpinChainModel(kind=XY(gamma=0.5, h=0.9), n=64)


@pytest.fixture
def decoupled_model() -> SpinChainModel:
    """J = 0: independent spins in a field."""
    return SpinChainModel(kind=XY(gamma=0.5, h=1.0, J=0.0), n=8)


@pytest.fixture
def tilted_model() -> SpinChainModel:
    """Non-integrable Ising chain with transverse and longitudinal fields."""
    return SpinChainModel(kind=TiltedIsing(J=1.0, hz=1.0, hx=1.0), n=8)


@pytest.fixture
def ising_basis(ising_model: SpinChainModel) -> QuasiparticleBasis:
    """Quasiparticle basis of the paramagnetic Ising chain."""
    return diagonalize(build_xy_majorana(ising_model))


@pytest.fixture
def xy_basis(xy_model: SpinChainModel) -> QuasiparticleBasis:
    """Quasiparticle basis of the ordered XY chain."""
    return diagonalize(build_xy_majorana(xy_model))


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator."""
    return np.random.default_rng(1234)

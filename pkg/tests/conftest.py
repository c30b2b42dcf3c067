"""Shared fixtures for the blockdfe test suite."""

import os
import sys

import numpy as np
import pytest

# Make the project root importable so main.py can be loaded by the server tests
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from blockdfe.channel import ChannelModel  # noqa: E402


def complex_gaussian(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_unitary(rng, n):
    q, r = np.linalg.qr(complex_gaussian(rng, n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))[np.newaxis, :]


def random_precoder(rng, K, M, p0):
    F = complex_gaussian(rng, K, M)
    return F * np.sqrt(p0 / np.real(np.trace(F @ F.conj().T)))


@pytest.fixture
def rng():
    return np.random.default_rng(20250101)


@pytest.fixture
def make_channel():
    """Factory for random white-noise channels."""
    def _make(rng, P, K, sigma2=1.0):
        return ChannelModel(H=complex_gaussian(rng, P, K)).with_noise_variance(sigma2)
    return _make


@pytest.fixture
def diag_channel():
    """Channel whose whitened Gram matrix is diag(4, 1)."""
    return ChannelModel(H=np.diag([2.0, 1.0]).astype(complex))

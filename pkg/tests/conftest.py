"""Shared fixtures and independent oracles for the test suite.

The oracles deliberately avoid the library's fast paths: quadrature sums
are plain Riemann sums over oversampled circle points, and the tuple
distance oracle enumerates permutations.
"""

import itertools

import numpy as np
import pytest

from blaschke import Signal, Spectrum, inverse_spectrum


def random_smooth_signal(rng, n_samples=64, decay=0.5):
    """Random analytic signal with geometrically decaying coefficients."""
    k = np.arange(n_samples)
    coeffs = (rng.standard_normal(n_samples) + 1j * rng.standard_normal(n_samples))
    coeffs = coeffs * decay**k
    return inverse_spectrum(Spectrum(coeffs))


def quadrature_kernel_inner(coeffs, z, oversample=4096):
    """Trapezoid quadrature of <f, e_z> on an oversampled circle.

    f is given by its truncated power-series coefficients; e_z is evaluated
    in closed form.  On the circle the trapezoid rule is the plain mean, so
    this is (1/Nq) * sum_j f(w_j) * conj(e_z(w_j)).
    """
    w = np.exp(2j * np.pi * np.arange(oversample) / oversample)
    fvals = np.polynomial.polynomial.polyval(w, coeffs)
    ez = np.sqrt(1.0 - abs(z) ** 2) / (1.0 - np.conj(z) * w)
    return complex(np.mean(fvals * np.conj(ez)))


def quadrature_kernel_inner_many(coeffs, zs, oversample=4096):
    """Vectorized form of quadrature_kernel_inner over an array of points."""
    w = np.exp(2j * np.pi * np.arange(oversample) / oversample)
    fvals = np.polynomial.polynomial.polyval(w, coeffs)
    zs = np.asarray(zs, dtype=complex).ravel()
    ez = np.sqrt(1.0 - np.abs(zs) ** 2)[:, None] / (
        1.0 - np.conj(zs)[:, None] * w[None, :]
    )
    return np.mean(fvals[None, :] * np.conj(ez), axis=1)


def quadrature_inner(f, g):
    """Sample-domain inner product (1/N) sum f_j conj(g_j) of two Signals."""
    return complex(np.mean(f.samples * np.conj(g.samples)))


def brute_tuple_distance(u, v):
    """min over permutations of ||P u - v|| by exhaustive enumeration."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    best = np.inf
    for perm in itertools.permutations(range(u.size)):
        best = min(best, float(np.linalg.norm(u[list(perm)] - v)))
    return best


def monomial_signal(k, n_samples):
    """Samples of tau^k on the unit circle."""
    tau = np.exp(2j * np.pi * np.arange(n_samples) / n_samples)
    return Signal(tau**k)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

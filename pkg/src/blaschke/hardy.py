"""Circle-sampled Hardy-space functions and the Takenaka-Malmquist system.

A function f in H^2 on the unit disk is represented by its N samples at the
equidistant circle points tau_j = exp(2*pi*i*j/N).  The discrete inner
product is defined spectrally, so the discrete Parseval identity holds by
construction and agrees with the trapezoid quadrature of the circle
integral.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "Signal",
    "Spectrum",
    "PoleTuple",
    "BlaschkeModel",
    "circle_points",
    "make_signal",
    "spectrum",
    "inverse_spectrum",
    "inner_product",
    "norm_sq",
    "szego_kernel",
    "szego_signal",
    "tm_basis",
    "project",
    "synthesize",
]


def _is_power_of_two(n):
    return n >= 2 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Signal:
    """N equidistant complex samples on the unit circle, sample j at angle 2*pi*j/N."""

    samples: np.ndarray

    def __post_init__(self):
        samples = np.array(self.samples, dtype=complex)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1 or not _is_power_of_two(samples.size):
            raise ValueError(
                f"sample count must be a power of two >= 2, got {samples.size}"
            )
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples must be finite")
        samples.setflags(write=False)

    @property
    def n_samples(self):
        return self.samples.size


@dataclass(frozen=True)
class Spectrum:
    """Nonnegative-frequency Fourier coefficients; index k holds f_hat(k)."""

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex)
        object.__setattr__(self, "coeffs", coeffs)
        if coeffs.ndim != 1 or not _is_power_of_two(coeffs.size):
            raise ValueError(
                f"coefficient count must be a power of two >= 2, got {coeffs.size}"
            )
        coeffs.setflags(write=False)

    @property
    def n_coeffs(self):
        return self.coeffs.size


@dataclass(frozen=True)
class PoleTuple:
    """Ordered tuple of distinct points strictly inside the unit disk."""

    poles: np.ndarray

    def __post_init__(self):
        poles = np.atleast_1d(np.array(self.poles, dtype=complex))
        object.__setattr__(self, "poles", poles)
        if poles.size < 1:
            raise ValueError("pole tuple must be non-empty")
        mags = np.abs(poles)
        if np.any(mags >= 1.0):
            raise ValueError(f"all poles must satisfy |a| < 1, max |a| = {mags.max()}")
        if poles.size > 1:
            diff = poles[:, None] - poles[None, :]
            np.fill_diagonal(diff, np.inf)
            if np.min(np.abs(diff)) == 0.0:
                raise ValueError("poles must be pairwise distinct")
        poles.setflags(write=False)

    @property
    def degree(self):
        return self.poles.size

    def __len__(self):
        return self.poles.size


@dataclass(frozen=True)
class BlaschkeModel:
    """A pole tuple with the coefficients of the n-Blaschke form sum c_k B_k."""

    tuple: PoleTuple
    coeffs: np.ndarray
    residual_error: float = 0.0

    def __post_init__(self):
        coeffs = np.atleast_1d(np.array(self.coeffs, dtype=complex))
        object.__setattr__(self, "coeffs", coeffs)
        if coeffs.size != self.tuple.degree:
            raise ValueError("coefficient count must equal the tuple degree")
        if self.residual_error < 0.0:
            raise ValueError("residual_error must be nonnegative")
        coeffs.setflags(write=False)

    @property
    def degree(self):
        return self.tuple.degree


@lru_cache(maxsize=32)
def _circle_points_cached(n):
    pts = np.exp(2j * np.pi * np.arange(n) / n)
    pts.setflags(write=False)
    return pts


def circle_points(n):
    """The n equidistant points exp(2*pi*i*j/n), j = 0..n-1 (cached, read-only)."""
    return _circle_points_cached(int(n))


def make_signal(values):
    """Wrap sample values into a Signal, validating length and finiteness."""
    return Signal(np.asarray(values, dtype=complex))


def spectrum(f):
    """Fourier coefficients with the mean-value normalization (constant 1 -> (1,0,...)).

    The result is memoized on the (immutable) Signal.
    """
    cached = getattr(f, "_spectrum_cache", None)
    if cached is None:
        cached = Spectrum(np.fft.fft(f.samples) / f.n_samples)
        object.__setattr__(f, "_spectrum_cache", cached)
    return cached


def inverse_spectrum(s):
    """Signal whose samples are sum_k coeffs[k] * tau^k at the circle points."""
    return Signal(np.fft.ifft(s.coeffs) * s.n_coeffs)


def inner_product(f, g):
    """Discrete H^2 inner product sum_k f_hat(k) * conj(g_hat(k))."""
    if f.n_samples != g.n_samples:
        raise ValueError(
            f"sample counts differ: {f.n_samples} != {g.n_samples}"
        )
    return complex(np.sum(spectrum(f).coeffs * np.conj(spectrum(g).coeffs)))


def norm_sq(f):
    """Squared discrete H^2 norm of a Signal."""
    return float(np.sum(np.abs(f.samples) ** 2) / f.n_samples)


def szego_kernel(a, points):
    """Normalized Szego kernel e_a(z) = sqrt(1-|a|^2) / (1 - conj(a) z)."""
    a = complex(a)
    if abs(a) >= 1.0:
        raise ValueError(f"kernel parameter must satisfy |a| < 1, got |a| = {abs(a)}")
    z = np.asarray(points, dtype=complex)
    return np.sqrt(1.0 - abs(a) ** 2) / (1.0 - np.conj(a) * z)


def szego_signal(a, n_samples):
    """Szego kernel e_a sampled at the n equidistant circle points."""
    return Signal(szego_kernel(a, circle_points(n_samples)))


def tm_basis(tup, k, points):
    """Takenaka-Malmquist basis function B_k at the given points (k is 1-based).

    B_k(z) = e_{a_k}(z) * prod_{j<k} (z - a_j) / (1 - conj(a_j) z).
    """
    if not 1 <= k <= tup.degree:
        raise IndexError(f"basis index {k} out of range 1..{tup.degree}")
    z = np.asarray(points, dtype=complex)
    out = szego_kernel(tup.poles[k - 1], z)
    for a in tup.poles[: k - 1]:
        out = out * (z - a) / (1.0 - np.conj(a) * z)
    return out


def project(f, tup):
    """Orthogonal projection of f onto the span of the TM system of the tuple.

    The residual is the squared H^2 error ||f||^2 - sum |c_k|^2, clamped at
    zero when numerical error drives it slightly negative.  The sampled TM
    system is orthonormal only up to O(max|a|^N) aliasing, so the clamp
    guard widens accordingly for near-boundary tuples; with |a| <= 0.9 and
    N >= 1024 it stays at the 1e-12 round-off scale.
    """
    z = circle_points(f.n_samples)
    coeffs = np.empty(tup.degree, dtype=complex)
    for k in range(1, tup.degree + 1):
        coeffs[k - 1] = inner_product(f, Signal(tm_basis(tup, k, z)))
    total = norm_sq(f)
    residual = total - float(np.sum(np.abs(coeffs) ** 2))
    alias = float(np.max(np.abs(tup.poles))) ** f.n_samples
    guard = 1e-12 + 4.0 * alias * max(1.0, total)
    if residual < -guard:
        raise ArithmeticError(
            f"projection residual {residual} below numerical guard {-guard}"
        )
    return BlaschkeModel(tup, coeffs, max(residual, 0.0))


def synthesize(model, n_samples):
    """Samples of the Blaschke form sum_k c_k B_k at n equidistant circle points."""
    z = circle_points(n_samples)
    out = np.zeros(n_samples, dtype=complex)
    for k in range(1, model.degree + 1):
        out += model.coeffs[k - 1] * tm_basis(model.tuple, k, z)
    return Signal(out)

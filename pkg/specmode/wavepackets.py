"""
Continuous spectral distribution functions and their decomposition onto a
Hermite-Gauss function basis.

Wavepackets are Gaussian in frequency,

    psi(w) = (2 pi sigma^2)^(-1/4) exp(-(w - w0)^2 / (4 sigma^2)) exp(-i w tau)

so |psi|^2 is a normal density with standard deviation sigma (the bandwidth)
and the temporal delay tau appears as a linear spectral phase. The basis
function of order zero, centred on w0 with scale s, is exactly the wavepacket
with sigma = s and no delay.

Integrals run over the real line around the centres rather than (0, inf).
Constructors reject centres below 8 bandwidths, which keeps the weight below
zero frequency negligible.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from specmode.errors import NormalizationError, QuadratureError, TruncationError
from specmode.spectral import SpectralAmplitudes

logger = logging.getLogger(__name__)

ABSOLUTE_TOLERANCE = 1e-10
# Largest acceptable error estimate from a single integral
MAX_QUADRATURE_ERROR = 1e-8
# Spectral weight allowed outside a truncated basis
RESIDUAL_THRESHOLD = 1e-6
# Support is the centre plus or minus this many bandwidths
SUPPORT_WIDTHS = 12
MIN_CENTER_WIDTHS = 8
# Largest basis tried when looking for the size a decomposition needs
MAX_SEARCH_SIZE = 64

SHAPES = ("gaussian",)
FAMILIES = ("hermite_gauss",)


@dataclass(frozen=True)
class WavepacketSpec:
    center_frequency: float
    bandwidth: float
    temporal_delay: float = 0.0
    shape: str = "gaussian"

    def __post_init__(self):
        if self.shape.lower() not in SHAPES:
            raise NormalizationError("Unsupported wavepacket shape '{}'".format(self.shape))
        if not self.bandwidth > 0:
            raise NormalizationError("Bandwidth must be positive")
        if self.center_frequency < MIN_CENTER_WIDTHS * self.bandwidth:
            raise NormalizationError(
                "Center frequency {} is closer than {} bandwidths to zero".format(
                    self.center_frequency, MIN_CENTER_WIDTHS
                )
            )

    def amplitude(self, omega):
        """psi(omega), delay phase included."""
        return self.envelope(omega) * np.exp(-1j * omega * self.temporal_delay)

    def envelope(self, omega):
        sigma = self.bandwidth
        return (2 * math.pi * sigma**2) ** -0.25 * np.exp(
            -((omega - self.center_frequency) ** 2) / (4 * sigma**2)
        )

    @classmethod
    def from_dict(cls, data):
        return cls(
            center_frequency=float(data["center_frequency"]),
            bandwidth=float(data["bandwidth"]),
            temporal_delay=float(data.get("temporal_delay", 0.0)),
            shape=data.get("shape", "gaussian"),
        )


@dataclass(frozen=True)
class FunctionBasis:
    center_frequency: float
    scale: float
    size: int
    family: str = "hermite_gauss"

    def __post_init__(self):
        if self.family.lower().replace("-", "_") not in FAMILIES:
            raise NormalizationError("Unsupported basis family '{}'".format(self.family))
        if not self.scale > 0:
            raise NormalizationError("Basis scale must be positive")
        if int(self.size) < 1:
            raise NormalizationError("Basis needs at least one function")
        object.__setattr__(self, "size", int(self.size))

    def functions(self, omega, size=None):
        """
        Values of xi_0 .. xi_{size-1} at omega, as an array of shape
        (size, len(omega)). Uses the normalised Hermite function recurrence,
        which stays finite for orders where 2^k k! would overflow.
        """
        if size is None:
            size = self.size
        omega = np.atleast_1d(np.asarray(omega, dtype=float))
        width = self.scale * math.sqrt(2)
        x = (omega - self.center_frequency) / width
        values = np.zeros((size, x.size))
        values[0] = math.pi**-0.25 * np.exp(-(x**2) / 2)
        if size > 1:
            values[1] = math.sqrt(2) * x * values[0]
        for k in range(1, size - 1):
            values[k + 1] = (
                math.sqrt(2 / (k + 1)) * x * values[k]
                - math.sqrt(k / (k + 1)) * values[k - 1]
            )
        return values / math.sqrt(width)

    def support(self, size=None):
        if size is None:
            size = self.size
        # Order k Hermite functions turn around near x = sqrt(2k + 1)
        half = SUPPORT_WIDTHS * self.scale + self.scale * math.sqrt(2) * math.sqrt(
            2 * size + 1
        )
        return self.center_frequency - half, self.center_frequency + half

    @classmethod
    def from_dict(cls, data):
        return cls(
            center_frequency=float(data["center_frequency"]),
            scale=float(data["scale"]),
            size=int(data["size"]),
            family=data.get("family", "hermite_gauss"),
        )


def _complex_quad(func, lo, hi):
    """Adaptive quadrature of a complex integrand, real and imaginary parts
    separately. Raises when either error estimate is too large."""
    result = []
    for part in (np.real, np.imag):
        value, error = integrate.quad(
            lambda w: float(part(func(w))),
            lo,
            hi,
            epsabs=ABSOLUTE_TOLERANCE,
            epsrel=0,
            limit=400,
        )
        if error > MAX_QUADRATURE_ERROR:
            raise QuadratureError(
                "Quadrature did not converge on [{}, {}], error estimate {}".format(
                    lo, hi, error
                )
            )
        result.append(value)
    return complex(result[0], result[1])


def continuous_overlap(p, q):
    """
    Integral of conj(psi_p) psi_q over frequency.

    The delay phases are written relative to a reference frequency so the
    integrand only oscillates on the bandwidth scale. The constant phase that
    this pulls out is applied after integrating.
    """
    reference = (p.center_frequency + q.center_frequency) / 2
    dtau = q.temporal_delay - p.temporal_delay
    width = max(p.bandwidth, q.bandwidth)
    lo = min(p.center_frequency, q.center_frequency) - SUPPORT_WIDTHS * width
    hi = max(p.center_frequency, q.center_frequency) + SUPPORT_WIDTHS * width

    def integrand(w):
        return p.envelope(w) * q.envelope(w) * np.exp(-1j * (w - reference) * dtau)

    value = _complex_quad(integrand, lo, hi)
    return value * complex(np.exp(-1j * reference * dtau))


def _coefficients(p, basis, size):
    reference = basis.center_frequency
    lo, hi = basis.support(size)
    lo = min(lo, p.center_frequency - SUPPORT_WIDTHS * p.bandwidth)
    hi = max(hi, p.center_frequency + SUPPORT_WIDTHS * p.bandwidth)
    phase = complex(np.exp(-1j * reference * p.temporal_delay))
    coeffs = np.zeros(size, dtype=complex)
    for k in range(size):

        def integrand(w, k=k):
            xi = basis.functions(w, k + 1)[k, 0]
            return xi * p.envelope(w) * np.exp(-1j * (w - reference) * p.temporal_delay)

        coeffs[k] = _complex_quad(integrand, lo, hi) * phase
    return coeffs


def _required_size(p, basis):
    size = basis.size
    while size < MAX_SEARCH_SIZE:
        size = min(2 * size, MAX_SEARCH_SIZE)
        coeffs = _coefficients(p, basis, size)
        if 1 - np.sum(np.abs(coeffs) ** 2) < RESIDUAL_THRESHOLD:
            # Trim to the smallest prefix that captures enough weight
            captured = np.cumsum(np.abs(coeffs) ** 2)
            return int(np.argmax(1 - captured < RESIDUAL_THRESHOLD)) + 1
    return None


def decompose(p, basis):
    """
    Coefficients lambda_i = <xi_i|psi> for i < basis.size, returned together
    with the residual weight 1 - sum |lambda_i|^2 as a (SpectralAmplitudes,
    residual) pair. The amplitudes are renormalised, which is only allowed
    when the residual is below RESIDUAL_THRESHOLD; otherwise TruncationError
    reports the basis size that would have been needed.
    """
    coeffs = _coefficients(p, basis, basis.size)
    residual = float(1 - np.sum(np.abs(coeffs) ** 2))
    logger.debug("Decomposed %s onto %d functions, residual %g", p, basis.size, residual)
    if residual >= RESIDUAL_THRESHOLD:
        required = _required_size(p, basis)
        if required is None:
            message = "Residual {:.3g} with {} functions, more than {} needed".format(
                residual, basis.size, MAX_SEARCH_SIZE
            )
        else:
            message = "Residual {:.3g} with {} functions, need a basis of size {}".format(
                residual, basis.size, required
            )
        raise TruncationError(message, residual, required)
    return SpectralAmplitudes(coeffs / np.linalg.norm(coeffs)), residual


def basis_gram(basis):
    """Matrix of pairwise inner products of the basis functions, by quadrature."""
    lo, hi = basis.support()
    b = basis.size
    gram = np.zeros((b, b))
    for i in range(b):
        for j in range(i, b):

            def integrand(w, i=i, j=j):
                values = basis.functions(w, max(i, j) + 1)
                return values[i, 0] * values[j, 0]

            value = _complex_quad(integrand, lo, hi).real
            gram[i, j] = gram[j, i] = value
    return gram

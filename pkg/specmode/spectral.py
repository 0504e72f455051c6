"""
Single photon spectral structure over an abstract orthonormal basis.

A photon's spectrum is only ever described here through its coefficients on
some basis {xi_i}: complex amplitudes lambda_i for a pure photon, or diagonal
mixture weights gamma_i for a spectrally mixed one. Evaluating the basis
functions themselves is the job of specmode.wavepackets.

All the types are immutable, so they can be shared freely between threads.
"""

from dataclasses import dataclass

import numpy as np

from specmode.errors import NormalizationError

# Allowed deviation from unit norm when constructing amplitudes or weights
NORM_TOLERANCE = 1e-9


def _pad(a, b):
    # Appending unused basis functions is always legitimate, so shorter vectors
    # are zero padded rather than rejected
    size = max(len(a), len(b))
    return (np.pad(a, (0, size - len(a))), np.pad(b, (0, size - len(b))))


@dataclass(frozen=True)
class SpectralAmplitudes:
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        if not coeffs:
            raise NormalizationError("Amplitude vector needs at least one entry")
        norm = sum(abs(c) ** 2 for c in coeffs)
        if abs(norm - 1) > NORM_TOLERANCE:
            raise NormalizationError(
                "Amplitudes have squared norm {}, expected 1".format(norm)
            )
        object.__setattr__(self, "coeffs", coeffs)

    def __len__(self):
        return len(self.coeffs)

    @property
    def array(self):
        return np.array(self.coeffs, dtype=complex)

    @property
    def size(self):
        return len(self.coeffs)


@dataclass(frozen=True)
class MixtureWeights:
    weights: tuple

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        if not weights:
            raise NormalizationError("Mixture needs at least one weight")
        if any(w < 0 or w > 1 for w in weights):
            raise NormalizationError("Mixture weights must lie in [0, 1]")
        total = sum(weights)
        if abs(total - 1) > NORM_TOLERANCE:
            raise NormalizationError(
                "Mixture weights sum to {}, expected 1".format(total)
            )
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.weights)

    @property
    def array(self):
        return np.array(self.weights, dtype=float)

    @property
    def size(self):
        return len(self.weights)

    @classmethod
    def uniform(cls, b):
        return cls((1 / b,) * b)


class PhotonSource:
    """
    Common handle for the two kinds of photon. Use Pure or Mixed; the base
    class only fixes the interface the hardness and simulation code rely on.
    """

    kind = None

    @property
    def basis_size(self):
        raise NotImplementedError

    def label_probabilities(self):
        """Probability of finding the photon in each basis function."""
        raise NotImplementedError

    def purity(self):
        raise NotImplementedError

    def to_dict(self):
        raise NotImplementedError

    @staticmethod
    def from_dict(data):
        try:
            kind = data["type"]
        except (KeyError, TypeError):
            raise NormalizationError("Photon source needs a 'type' field")
        try:
            if kind == "pure":
                coeffs = [complex(re, im) for re, im in data["coeffs"]]
                return Pure(SpectralAmplitudes(coeffs))
            elif kind == "mixed":
                return Mixed(MixtureWeights(data["weights"]))
        except NormalizationError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise NormalizationError("Malformed {} photon source: {!r}".format(kind, e))
        raise NormalizationError("Unknown photon source type '{}'".format(kind))


@dataclass(frozen=True)
class Pure(PhotonSource):
    amplitudes: SpectralAmplitudes

    kind = "pure"

    @property
    def basis_size(self):
        return self.amplitudes.size

    def label_probabilities(self):
        return np.abs(self.amplitudes.array) ** 2

    def purity(self):
        return 1.0

    def to_dict(self):
        return {
            "type": "pure",
            "coeffs": [[c.real, c.imag] for c in self.amplitudes.coeffs],
        }


@dataclass(frozen=True)
class Mixed(PhotonSource):
    weights: MixtureWeights

    kind = "mixed"

    @property
    def basis_size(self):
        return self.weights.size

    def label_probabilities(self):
        return self.weights.array

    def purity(self):
        return purity(self.weights)

    def to_dict(self):
        return {"type": "mixed", "weights": list(self.weights.weights)}


def overlap(a, b):
    """Sum of conj(lambda_a) * lambda_b over the shared basis."""
    x, y = _pad(a.array, b.array)
    return complex(np.vdot(x, y))


def fidelity(a, b):
    return abs(overlap(a, b)) ** 2


def purity(w):
    """tr(rho^2) of a diagonal mixture, which lies in [1/b, 1]."""
    return float(np.sum(w.array**2))


def normalize(coeffs):
    coeffs = np.asarray(coeffs, dtype=complex)
    norm = np.linalg.norm(coeffs)
    if coeffs.size == 0 or norm == 0:
        raise NormalizationError("Zero norm amplitudes describe no photon")
    return SpectralAmplitudes(coeffs / norm)


def pure_source(coeffs):
    return Pure(SpectralAmplitudes(coeffs))


def mixed_source(weights):
    return Mixed(MixtureWeights(weights))

"""
Exact Boson-sampling in the occupation number picture.

The network maps creation operators as a_i^dag -> sum_j U_ij a_j^dag. For input
occupations T and output occupations S the amplitude is

    chi_S = Per(U[rows of T, columns of S]) / sqrt(prod T_i! prod S_j!)

where mode i appears T_i times among the rows and mode j appears S_j times
among the columns.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from specmode import parallel
from specmode.errors import BudgetExceeded, UnitarityError
from specmode.photonics.permanent import permanent

logger = logging.getLogger(__name__)

UNITARY_TOLERANCE = 1e-9
DISTRIBUTION_TOLERANCE = 1e-9
CONFIGURATION_BUDGET = 10**7
MAX_PHOTONS = 7
# Output configurations evaluated per parallel chunk
CHUNK_SIZE = 512


class UnitaryMatrix:
    """An m x m unitary, checked on construction and read-only afterwards."""

    def __init__(self, entries):
        entries = np.array(entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise UnitarityError("Unitary must be square, got shape {}".format(entries.shape))
        deviation = np.max(np.abs(entries.conj().T @ entries - np.eye(entries.shape[0])))
        if deviation > UNITARY_TOLERANCE:
            raise UnitarityError("U^dag U deviates from identity by {}".format(deviation))
        entries.setflags(write=False)
        self.entries = entries

    @property
    def m(self):
        return self.entries.shape[0]

    def __repr__(self):
        return "UnitaryMatrix(m={})".format(self.m)

    def to_dict(self):
        return {"entries": [[[z.real, z.imag] for z in row] for row in self.entries]}

    @classmethod
    def from_dict(cls, data):
        try:
            rows = data["entries"]
        except (KeyError, TypeError):
            raise UnitarityError("Unitary JSON needs an 'entries' field")
        return cls([[complex(re, im) for re, im in row] for row in rows])


def haar_random_unitary(m, seed):
    """
    Haar distributed unitary: QR of a complex Ginibre matrix, with the phases
    of R's diagonal moved into Q so the distribution is invariant.
    """
    if m < 1:
        raise ValueError("Need at least one mode")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / math.sqrt(2)
    q, r = linalg.qr(z)
    d = np.diag(r)
    return UnitaryMatrix(q * (d / np.abs(d)))


def beamsplitter():
    """Balanced beamsplitter, [[1, 1], [1, -1]] / sqrt(2)."""
    return UnitaryMatrix(np.array([[1, 1], [1, -1]]) / math.sqrt(2))


def identity_unitary(m):
    return UnitaryMatrix(np.eye(m))


def permutation_unitary(perm):
    """Sends input mode i to output mode perm[i]."""
    m = len(perm)
    entries = np.zeros((m, m))
    entries[np.arange(m), list(perm)] = 1
    return UnitaryMatrix(entries)


class OutputConfiguration(tuple):
    """Photon counts per mode."""

    def __new__(cls, counts):
        counts = tuple(int(c) for c in counts)
        if any(c < 0 for c in counts):
            raise ValueError("Photon counts can't be negative")
        return super().__new__(cls, counts)

    @property
    def n(self):
        return sum(self)

    @property
    def m(self):
        return len(self)


def configuration_count(m, n):
    return math.comb(m + n - 1, n)


def _configurations(m, n):
    # Successor in descending lexicographic order: move one photon out of the
    # last occupied mode before the final one, and gather everything behind
    # it into the next mode
    counts = [n] + [0] * (m - 1)
    while True:
        yield tuple(counts)
        j = m - 2
        while j >= 0 and counts[j] == 0:
            j -= 1
        if j < 0:
            return
        tail = sum(counts[j + 1 :])
        counts[j] -= 1
        counts[j + 1 :] = [tail + 1] + [0] * (m - j - 2)


def enumerate_configurations(m, n, budget=CONFIGURATION_BUDGET):
    """All ways to place n photons in m modes, lexicographically from (n, 0, ..)."""
    if m < 1:
        raise ValueError("Need at least one mode")
    count = configuration_count(m, n)
    if count > budget:
        raise BudgetExceeded(
            "{} configurations of {} photons in {} modes exceed budget {}".format(
                count, n, m, budget
            ),
            count,
            budget,
        )
    return [OutputConfiguration(c) for c in _configurations(m, n)]


def occupied_modes(counts):
    """Mode indices repeated by occupation, e.g. (2, 0, 1) -> [0, 0, 2]."""
    return [i for i, c in enumerate(counts) for _ in range(c)]


def factorial_norm(counts):
    return math.sqrt(math.prod(math.factorial(c) for c in counts))


@dataclass(frozen=True)
class OutputDistribution:
    m: int
    n: int
    configurations: tuple
    probabilities: tuple

    def __post_init__(self):
        configurations = tuple(OutputConfiguration(c) for c in self.configurations)
        probabilities = tuple(float(p) for p in self.probabilities)
        if len(configurations) != len(probabilities):
            raise ValueError("Each configuration needs exactly one probability")
        if len(configurations) != configuration_count(self.m, self.n):
            raise ValueError("Distribution doesn't cover every configuration")
        if min(probabilities) < -DISTRIBUTION_TOLERANCE:
            raise ValueError("Negative probability in output distribution")
        total = math.fsum(probabilities)
        if abs(total - 1) > DISTRIBUTION_TOLERANCE:
            raise ValueError("Output distribution sums to {}".format(total))
        object.__setattr__(self, "configurations", configurations)
        object.__setattr__(self, "probabilities", probabilities)
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(configurations)})

    def __len__(self):
        return len(self.configurations)

    def items(self):
        return zip(self.configurations, self.probabilities)

    def probability(self, counts):
        return self.probabilities[self._index[tuple(counts)]]

    def as_array(self):
        return np.array(self.probabilities)

    def max_abs_deviation(self, other):
        if self.configurations != other.configurations:
            raise ValueError("Distributions are over different configurations")
        return float(np.max(np.abs(self.as_array() - other.as_array())))

    @classmethod
    def from_mapping(cls, m, n, probabilities, budget=CONFIGURATION_BUDGET):
        """Build from {counts: probability}, missing configurations are zero."""
        configurations = enumerate_configurations(m, n, budget)
        return cls(
            m,
            n,
            configurations,
            [probabilities.get(tuple(c), 0.0) for c in configurations],
        )


def _chunks(items, size=CHUNK_SIZE):
    return [items[i : i + size] for i in range(0, len(items), size)]


def output_distribution(U, input_counts, budget=CONFIGURATION_BUDGET):
    """Exact output statistics for indistinguishable photons in `input_counts`."""
    input_counts = OutputConfiguration(input_counts)
    m = U.m
    if input_counts.m != m:
        raise ValueError("Input has {} modes, network has {}".format(input_counts.m, m))
    n = input_counts.n
    if n > MAX_PHOTONS:
        raise BudgetExceeded(
            "{} photons is over the {} photon limit".format(n, MAX_PHOTONS), n, MAX_PHOTONS
        )
    configurations = enumerate_configurations(m, n, budget)
    logger.info("Evaluating %d output configurations, %d photons", len(configurations), n)

    rows = U.entries[occupied_modes(input_counts)]
    input_norm = factorial_norm(input_counts)

    def chunk(configs):
        out = []
        for config in configs:
            sub = rows[:, occupied_modes(config)]
            amplitude = permanent(sub) / (input_norm * factorial_norm(config))
            out.append(abs(amplitude) ** 2)
        return out

    probabilities = [p for part in parallel.ordered_map(chunk, _chunks(configurations)) for p in part]
    return OutputDistribution(m, n, configurations, probabilities)

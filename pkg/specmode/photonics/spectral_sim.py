"""
Boson-sampling with spectrally structured photons.

Two independent pictures of the same physics:

* Enlarged space. Every (spatial mode, spectral label) pair is its own mode,
  combined index spatial * b + label, and the network acts as U (x) I_b.
  Photon j enters spatial mode j. Pure photons are a coherent superposition
  over instance vectors; mixed photons are an incoherent mixture of them. The
  spectral labels are traced out at the detectors.
* Instance mixture (mixed photons only). For each instance vector v the
  photons sharing a label interfere through U on their own, groups with
  different labels are independent, and their count distributions convolve.

Agreement between the two for mixed photons is the check that the instance
expansion behind p_hard describes the device correctly.
"""

import itertools
import logging
import math
from collections import defaultdict

import numpy as np

from specmode.errors import BudgetExceeded, HybridPhotonsError
from specmode.photonics.fock import (
    CONFIGURATION_BUDGET,
    OutputConfiguration,
    OutputDistribution,
    beamsplitter,
    configuration_count,
    enumerate_configurations,
    factorial_norm,
    occupied_modes,
    output_distribution,
)
from specmode.photonics.permanent import permanent
from specmode.spectral import Mixed, Pure, SpectralAmplitudes

logger = logging.getLogger(__name__)

MAX_PHOTONS = 5
MAX_BASIS = 4
ENLARGED_BUDGET = 10**8


def enlarged_cost(m, n, b):
    """Enlarged output configurations times instance vectors, a rough bound on
    the number of permanents evaluated."""
    return configuration_count(m * b, n) * b**n


def _check_inputs(U, photons, kind):
    photons = list(photons)
    if not photons:
        raise ValueError("Need at least one photon")
    if not all(isinstance(p, kind) for p in photons):
        raise HybridPhotonsError("Expected only {} photons".format(kind.__name__))
    n = len(photons)
    if n > U.m:
        raise ValueError("{} photons don't fit into {} modes".format(n, U.m))
    b = max(p.basis_size for p in photons)
    if n > MAX_PHOTONS or b > MAX_BASIS:
        raise BudgetExceeded(
            "Enlarged simulation supports n <= {} and b <= {}, got n={} b={}".format(
                MAX_PHOTONS, MAX_BASIS, n, b
            ),
            enlarged_cost(U.m, n, b),
            ENLARGED_BUDGET,
        )
    cost = enlarged_cost(U.m, n, b)
    logger.info("Enlarged space: %d modes, %d photons, cost estimate %d", U.m * b, n, cost)
    if cost > ENLARGED_BUDGET:
        raise BudgetExceeded(
            "Enlarged simulation cost {} exceeds budget {}".format(cost, ENLARGED_BUDGET),
            cost,
            ENLARGED_BUDGET,
        )
    return photons, n, b


def _label_matrix(photons, b):
    """Row j: the amplitudes (pure) or weights (mixed) of photon j, padded to b."""
    dtype = complex if isinstance(photons[0], Pure) else float
    matrix = np.zeros((len(photons), b), dtype=dtype)
    for j, photon in enumerate(photons):
        if isinstance(photon, Pure):
            values = photon.amplitudes.array
        else:
            values = photon.weights.array
        matrix[j, : len(values)] = values
    return matrix


def _instances(matrix):
    """Instance vectors with nonzero coefficient, and that coefficient."""
    n, b = matrix.shape
    for v in itertools.product(range(b), repeat=n):
        coefficient = np.prod(matrix[np.arange(n), list(v)])
        if coefficient != 0:
            yield v, coefficient


def _signature(labels, b):
    counts = [0] * b
    for label in labels:
        counts[label] += 1
    return tuple(counts)


def _enlarged_probabilities(U, b, terms, n):
    """
    Spatial count probabilities for the coherent superposition
    sum_t coefficient_t |modes_t> in the enlarged space. Each term places one
    photon in each listed enlarged mode.
    """
    m = U.m
    network = np.kron(U.entries, np.eye(b))
    outputs = enumerate_configurations(m * b, n, CONFIGURATION_BUDGET)
    # Terms with a different label count can't reach the same enlarged output
    prepared = [
        (coefficient, network[list(modes)], _signature([k % b for k in modes], b))
        for coefficient, modes in terms
    ]
    spatial = defaultdict(list)
    for config in outputs:
        columns = occupied_modes(config)
        signature = _signature([k % b for k in columns], b)
        amplitude = 0j
        for coefficient, rows, term_signature in prepared:
            if term_signature == signature:
                amplitude += coefficient * permanent(rows[:, columns])
        if amplitude == 0:
            continue
        counts = tuple(sum(config[i * b : (i + 1) * b]) for i in range(m))
        spatial[counts].append(abs(amplitude / factorial_norm(config)) ** 2)
    return {counts: math.fsum(values) for counts, values in spatial.items()}


def spatial_distribution_pure(U, photons):
    """
    Spatial photon counts for pure photons with arbitrary spectra. Photon j
    enters spatial mode j as sum_i lambda_ij a^dag_(j, i); cross terms between
    instance vectors are kept, so this is the true output statistics.
    """
    photons, n, b = _check_inputs(U, photons, Pure)
    matrix = _label_matrix(photons, b)
    terms = [
        (coefficient, [j * b + label for j, label in enumerate(v)])
        for v, coefficient in _instances(matrix)
    ]
    probabilities = _enlarged_probabilities(U, b, terms, n)
    return OutputDistribution.from_mapping(U.m, n, probabilities)


def spatial_distribution_dephased(U, photons):
    """
    Spatial photon counts for mixed photons from the enlarged-space density
    operator: each instance vector is a separate pure input, weighted by p(v).
    """
    photons, n, b = _check_inputs(U, photons, Mixed)
    matrix = _label_matrix(photons, b)
    totals = defaultdict(list)
    for v, weight in _instances(matrix):
        modes = [j * b + label for j, label in enumerate(v)]
        for counts, p in _enlarged_probabilities(U, b, [(1.0, modes)], n).items():
            totals[counts].append(weight * p)
    return OutputDistribution.from_mapping(
        U.m, n, {counts: math.fsum(values) for counts, values in totals.items()}
    )


def _convolve(first, second):
    combined = defaultdict(float)
    for c1, p1 in first.items():
        for c2, p2 in second.items():
            combined[tuple(a + b for a, b in zip(c1, c2))] += p1 * p2
    return combined


def spatial_distribution_mixed(U, photons):
    """
    Spatial photon counts for mixed photons as a mixture over instance
    vectors: sum_v p(v) D_v, where D_v convolves the independent output
    distributions of the groups of photons sharing a label.
    """
    photons, n, b = _check_inputs(U, photons, Mixed)
    m = U.m
    matrix = _label_matrix(photons, b)
    cache = {}

    def group_distribution(spatial_modes):
        counts = [0] * m
        for j in spatial_modes:
            counts[j] += 1
        key = tuple(counts)
        if key not in cache:
            cache[key] = dict(output_distribution(U, OutputConfiguration(key)).items())
        return cache[key]

    totals = defaultdict(list)
    for v, weight in _instances(matrix):
        groups = defaultdict(list)
        for j, label in enumerate(v):
            groups[label].append(j)
        distribution = {tuple([0] * m): 1.0}
        for label in sorted(groups):
            distribution = _convolve(distribution, group_distribution(groups[label]))
        for counts, p in distribution.items():
            totals[counts].append(weight * p)
    return OutputDistribution.from_mapping(
        m, n, {counts: math.fsum(values) for counts, values in totals.items()}
    )


def default_input(m, n):
    """One photon in each of the first n modes."""
    return OutputConfiguration([1] * n + [0] * (m - n))


def hom_coincidence(f):
    """
    Coincidence probability P(1, 1) for two pure photons of fidelity f on a
    balanced beamsplitter; (1 - f) / 2 in theory.
    """
    photons = [
        Pure(SpectralAmplitudes([1.0, 0.0])),
        Pure(SpectralAmplitudes([math.sqrt(f), math.sqrt(1 - f)])),
    ]
    return spatial_distribution_pure(beamsplitter(), photons).probability((1, 1))


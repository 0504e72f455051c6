"""
The probability p_hard that a spectrally imperfect Boson-sampling device is
running a hard instance, i.e. total p(v) over instances with #(v) >= n_hard.

Three ways to get it:

* p_hard_exact enumerates every instance vector (any photons, small b^n).
* p_hard_iid_exact handles identical mixed photons of any size through the
  occupancy distribution of n categorical draws.
* p_hard_monte_carlo samples instance vectors, which is valid because p(v) is
  a product of independent per-photon categorical distributions.

None of these says the device is provably hard to simulate. p_hard > epsilon
is only a necessary condition, see DISCLAIMER.
"""

import logging
import math
from collections import namedtuple

import numpy as np
from scipy import stats

from specmode import parallel
from specmode.hardness.instances import DEFAULT_BUDGET, largest_group_distribution
from specmode.spectral import MixtureWeights

logger = logging.getLogger(__name__)

EXACT_ENUMERATION = "ExactEnumeration"
CLOSED_FORM_IID = "ClosedFormIID"
MONTE_CARLO = "MonteCarlo"
METHODS = (EXACT_ENUMERATION, CLOSED_FORM_IID, MONTE_CARLO)

DISCLAIMER = (
    "p_hard > epsilon is a necessary, not sufficient, condition for hardness: "
    "interference between terms or an easy unitary (e.g. a permutation) can "
    "still make the device classically simulable."
)

# Largest photon number the closed-form iid path accepts
MAX_IID_PHOTONS = 10**4
# Monte-Carlo samples drawn per generator; batch i uses its own stream
MC_BATCH_SIZE = 2**16

HardnessResult = namedtuple(
    "HardnessResult", "p_hard, method, std_error, seed", defaults=(None, None)
)


def _clip(p):
    # Rounding can push sums a hair outside [0, 1]
    return min(1.0, max(0.0, float(p)))


def p_hard_exact(q, budget=DEFAULT_BUDGET):
    """
    Sum p(v) over every instance with #(v) >= q.n_hard. Raises BudgetExceeded
    if b^n instance vectors is more than `budget`.
    """
    if q.n_hard > q.n:
        return HardnessResult(0.0, EXACT_ENUMERATION)
    distribution = largest_group_distribution(q, budget)
    return HardnessResult(_clip(math.fsum(distribution[q.n_hard :])), EXACT_ENUMERATION)


def p_hard_iid_exact(b, n, n_hard, weights):
    """
    p_hard for n photons that all share the mixture `weights` over b labels.

    p_hard = 1 - P(every label count < n_hard). The multinomial counts are
    built up one label at a time: given r draws still unassigned and the
    remaining labels' weight, the count on the next label is binomial. That is
    the truncated exponential generating function convolution
    n! [x^n] prod_i sum_{c < n_hard} (gamma_i x)^c / c!, kept in normalised
    probabilities so nothing overflows for large n.
    """
    if not isinstance(weights, MixtureWeights):
        weights = MixtureWeights(weights)
    if weights.size != b:
        raise ValueError("Got {} weights for {} labels".format(weights.size, b))
    if n > MAX_IID_PHOTONS:
        raise ValueError("At most {} photons supported".format(MAX_IID_PHOTONS))
    if n_hard < 1:
        raise ValueError("n_hard must be at least 1")
    if n_hard > n:
        return HardnessResult(0.0, CLOSED_FORM_IID)

    gamma = weights.array
    remaining_mass = np.array([math.fsum(gamma[i:]) for i in range(b)])
    limit = n_hard - 1
    remaining = np.arange(n + 1)
    # below[r]: probability that the labels seen so far took n - r draws, each
    # with fewer than n_hard
    below = np.zeros(n + 1)
    below[n] = 1.0
    for i in range(b):
        share = 0.0 if remaining_mass[i] <= 0 else min(1.0, gamma[i] / remaining_mass[i])
        updated = np.zeros(n + 1)
        for c in range(min(limit, n) + 1):
            pmf = stats.binom.pmf(c, remaining, share)
            updated[: n + 1 - c] += (below * pmf)[c:]
        below = updated
    return HardnessResult(_clip(1 - below[0]), CLOSED_FORM_IID)


def _cumulative(probs):
    cdf = np.cumsum(probs, axis=1)
    # The last nonzero label must catch every draw below 1
    for j, row in enumerate(probs):
        last = np.flatnonzero(row > 0)[-1]
        cdf[j, last:] = 1.0
    return cdf


def _batch_hits(cdf, n_hard, seed, index, size):
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))
    n, b = cdf.shape
    uniforms = rng.random((size, n))
    labels = np.empty((size, n), dtype=np.intp)
    for j in range(n):
        labels[:, j] = np.searchsorted(cdf[j], uniforms[:, j], side="right")
    largest = np.zeros(size, dtype=np.intp)
    for label in range(b):
        np.maximum(largest, np.sum(labels == label, axis=1), out=largest)
    return int(np.sum(largest >= n_hard))


def p_hard_monte_carlo(q, samples, seed):
    """
    Estimate p_hard from `samples` instance vectors drawn by inverse CDF.

    Batches of MC_BATCH_SIZE draws each get their own Philox stream derived
    from (seed, batch index), so the estimate is reproducible bit for bit and
    independent of the thread count.
    """
    samples = int(samples)
    if samples < 1:
        raise ValueError("Need at least one sample")
    seed = int(seed)
    cdf = _cumulative(q.probability_matrix())
    sizes = [MC_BATCH_SIZE] * (samples // MC_BATCH_SIZE)
    if samples % MC_BATCH_SIZE:
        sizes.append(samples % MC_BATCH_SIZE)
    logger.info("Drawing %d instance vectors in %d batches, seed %d", samples, len(sizes), seed)

    hits = parallel.ordered_map(
        lambda batch: _batch_hits(cdf, q.n_hard, seed, batch[0], batch[1]),
        enumerate(sizes),
    )
    estimate = sum(hits) / samples
    std_error = math.sqrt(estimate * (1 - estimate) / samples)
    return HardnessResult(estimate, MONTE_CARLO, std_error, seed)

"""
Instance vectors and the exact enumeration over them.

Expanding the n photon input state over the spectral basis gives one term per
instance vector v, v_j being the basis function photon j occupies. Photons
sharing a label interfere, the others evolve independently, so the term for v
is a Boson-sampling computer on #(v) photons (plus smaller independent ones),
selected with probability

    p(v) = prod_j gamma_{v_j, j}          mixed photons
    p(v) = |prod_j lambda_{v_j, j}|^2     pure photons

Both are products of per-photon label probabilities, which is what all the
p_hard code works from.
"""

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from specmode import parallel
from specmode.errors import BudgetExceeded, HybridPhotonsError, NormalizationError
from specmode.spectral import PhotonSource

logger = logging.getLogger(__name__)

# Largest number of instance vectors exact enumeration will visit
DEFAULT_BUDGET = 10**8
# Instance vectors handled per vectorised block
BLOCK_SIZE = 2**14


@dataclass(frozen=True)
class InstanceVector:
    labels: tuple

    def __post_init__(self):
        labels = tuple(int(v) for v in self.labels)
        if not labels:
            raise ValueError("Instance vector needs at least one photon")
        if any(v < 0 for v in labels):
            raise ValueError("Labels are basis indices and can't be negative")
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)


def _labels(v):
    if isinstance(v, InstanceVector):
        return v.labels
    return InstanceVector(v).labels


def max_repetition(v):
    """#(v): the largest number of photons sharing one basis label."""
    return max(Counter(_labels(v)).values())


def group_sizes(v):
    """Sizes of every interfering group in the instance, largest first."""
    return tuple(sorted(Counter(_labels(v)).values(), reverse=True))


@dataclass(frozen=True)
class HardnessQuery:
    photons: tuple
    n_hard: int
    epsilon: float

    def __post_init__(self):
        photons = tuple(self.photons)
        if not photons:
            raise NormalizationError("A query needs at least one photon")
        if not all(isinstance(p, PhotonSource) for p in photons):
            raise TypeError("Photons must be PhotonSource instances")
        kinds = {p.kind for p in photons}
        if len(kinds) > 1:
            raise HybridPhotonsError(
                "Photon lists must be all pure or all mixed, got both"
            )
        if int(self.n_hard) < 1:
            raise ValueError("n_hard must be at least 1")
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        object.__setattr__(self, "photons", photons)
        object.__setattr__(self, "n_hard", int(self.n_hard))
        object.__setattr__(self, "epsilon", float(self.epsilon))

    @property
    def n(self):
        return len(self.photons)

    @property
    def basis_size(self):
        return max(p.basis_size for p in self.photons)

    @property
    def kind(self):
        return self.photons[0].kind

    def probability_matrix(self):
        """
        n x b array whose row j holds the label probabilities of photon j,
        zero padded to the largest basis in the query.
        """
        b = self.basis_size
        matrix = np.zeros((self.n, b))
        for j, photon in enumerate(self.photons):
            probs = photon.label_probabilities()
            matrix[j, : len(probs)] = probs
        return matrix


def instance_probability(q, v):
    labels = _labels(v)
    if len(labels) != q.n:
        raise ValueError(
            "Instance has {} labels for {} photons".format(len(labels), q.n)
        )
    result = 1.0
    for photon, label in zip(q.photons, labels):
        probs = photon.label_probabilities()
        if label >= len(probs):
            return 0.0
        result *= float(probs[label])
    return result


def enumeration_size(q):
    return q.basis_size**q.n


def check_budget(q, budget=DEFAULT_BUDGET):
    cost = enumeration_size(q)
    logger.info(
        "Enumerating %d instance vectors (%d photons, %d labels)",
        cost,
        q.n,
        q.basis_size,
    )
    if cost > budget:
        logger.warning("Enumeration of %d vectors exceeds budget %d", cost, budget)
        raise BudgetExceeded(
            "{} instance vectors exceed the enumeration budget of {}; "
            "use the Monte-Carlo estimator instead".format(cost, budget),
            cost,
            budget,
        )
    return cost


def _block(probs, b):
    """
    All label assignments of the trailing photons, in odometer order, with
    their probabilities and per-label counts.
    """
    r = probs.shape[0]
    labels = np.array(list(itertools.product(range(b), repeat=r)), dtype=np.intp)
    if r == 0:
        labels = labels.reshape(1, 0)
    weights = np.prod(probs[np.arange(r), labels], axis=1) if r else np.ones(1)
    counts = np.zeros((labels.shape[0], b), dtype=np.intp)
    for label in range(b):
        counts[:, label] = np.sum(labels == label, axis=1)
    return weights, counts


def largest_group_distribution(q, budget=DEFAULT_BUDGET):
    """
    Exact distribution of #(v) under p(v), as an array indexed by k = 0..n.

    The leading photons are enumerated one prefix at a time and the trailing
    ones as a single vectorised block. Prefixes are fixed by the query alone,
    and the per-prefix partial sums are combined with math.fsum in prefix
    order, so the result doesn't depend on the thread count.
    """
    check_budget(q, budget)
    probs = q.probability_matrix()
    n, b = probs.shape

    trailing = 0
    while trailing < n and b ** (trailing + 1) <= BLOCK_SIZE:
        trailing += 1
    leading = n - trailing
    weights, counts = _block(probs[leading:], b)

    def chunk(prefix):
        weight = 1.0
        prefix_counts = np.zeros(b, dtype=np.intp)
        for j, label in enumerate(prefix):
            weight *= probs[j, label]
            prefix_counts[label] += 1
        if weight == 0:
            return np.zeros(n + 1)
        largest = np.max(counts + prefix_counts, axis=1)
        return np.bincount(largest, weights=weight * weights, minlength=n + 1)

    prefixes = itertools.product(range(b), repeat=leading)
    partials = parallel.ordered_map(chunk, prefixes)
    return np.array([math.fsum(p[k] for p in partials) for k in range(n + 1)])


def total_probability(q, budget=DEFAULT_BUDGET):
    """Sum of p(v) over every instance vector; 1 for any valid query."""
    return math.fsum(largest_group_distribution(q, budget))

"""
Analytic bounds on p_hard and the photon constructions behind them.

Both bounds are the binomial tail

    sum_{k=n_hard}^{n} C(n, k) p^k (1 - p)^(n - k)

with p the single photon purity (identical, maximally mixed photons) or the
worst-case fidelity F_min (pure photons). The tail is evaluated in log space,
C(n, k) alone overflows a double near n = 170.
"""

import logging
import math
import warnings
from collections import namedtuple

import numpy as np
from scipy import optimize, special

from specmode.errors import HardnessThresholdWarning
from specmode.spectral import Mixed, MixtureWeights, Pure, SpectralAmplitudes

logger = logging.getLogger(__name__)

RegionPoint = namedtuple("RegionPoint", "f_min, n, n_hard, lower_bound, upper_bound, in_region")


def binomial_tail(p, n, k_min):
    """P(X >= k_min) for X ~ Binomial(n, p)."""
    if not 0 <= p <= 1:
        raise ValueError("Success probability {} outside [0, 1]".format(p))
    if k_min <= 0:
        return 1.0
    if k_min > n:
        return 0.0
    if p == 0:
        return 0.0
    if p == 1:
        return 1.0
    k = np.arange(k_min, n + 1)
    log_terms = (
        special.gammaln(n + 1)
        - special.gammaln(k + 1)
        - special.gammaln(n - k + 1)
        + k * math.log(p)
        + (n - k) * math.log1p(-p)
    )
    top = float(np.max(log_terms))
    total = math.fsum(np.exp(log_terms - top)) * math.exp(top)
    return min(1.0, total)


def _tail_bound(p, n, n_hard):
    if n_hard > n:
        message = "n_hard={} exceeds n={}, no instance can be hard".format(n_hard, n)
        logger.warning(message)
        warnings.warn(message, HardnessThresholdWarning, stacklevel=3)
        return 0.0
    return binomial_tail(p, n, n_hard)


def p_hard_lower_bound_mixed(purity, n, n_hard):
    """Lower bound on p_hard for identical, maximally mixed photons of the given purity."""
    if not 0 <= purity <= 1:
        raise ValueError("Purity must lie in [0, 1]")
    return _tail_bound(purity, n, n_hard)


def p_hard_lower_bound_fidelity(f_min, n, n_hard):
    """Lower bound on p_hard for pure photons with worst pairwise fidelity f_min."""
    if not 0 <= f_min <= 1:
        raise ValueError("F_min must lie in [0, 1]")
    return _tail_bound(f_min, n, n_hard)


def inequality_region(f_min_grid, n, n_hard, epsilon):
    """
    Evaluate lower_bound <= p_hard <= 1 over a grid of F_min. The upper bound
    only holds for n_hard < n. A point is in the region when the lower bound
    clears epsilon.
    """
    if n_hard >= n:
        raise ValueError("The upper bound p_hard <= 1 needs n_hard < n")
    rows = []
    for f_min in f_min_grid:
        bound = p_hard_lower_bound_fidelity(float(f_min), n, n_hard)
        rows.append(RegionPoint(float(f_min), n, n_hard, bound, 1.0, bound > epsilon))
    return rows


def bound_threshold(n, n_hard, epsilon):
    """
    The purity or F_min at which the binomial-tail bound reaches epsilon. Below
    it the bound says nothing, above it p_hard > epsilon is guaranteed.
    """
    if n_hard > n:
        raise ValueError("n_hard={} exceeds n={}".format(n_hard, n))
    if n_hard < 1:
        raise ValueError("n_hard must be at least 1")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    return optimize.brentq(
        lambda p: binomial_tail(p, n, n_hard) - epsilon, 0.0, 1.0, xtol=1e-14
    )


def photons_required(p, n_hard, target, n_max=10**4):
    """Smallest n for which the bound at purity or fidelity p reaches target,
    or None when no n up to n_max does."""
    if binomial_tail(p, n_max, n_hard) < target:
        return None
    lo, hi = max(1, n_hard), n_max
    while lo < hi:
        mid = (lo + hi) // 2
        if binomial_tail(p, mid, n_hard) >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def worst_case_pure_sources(f_min, n):
    """
    Every photon has amplitude sqrt(F_min) on the shared basis function 0 and
    the rest on a private function i + 1, so any two photons have overlap
    F_min and fidelity F_min**2. F_min here is the pairwise overlap, matching
    the probability of a photon landing on the shared function.
    Instances are hard exactly when enough photons land on the shared
    function, which makes p_hard equal to the fidelity bound for n_hard >= 2.
    """
    if not 0 <= f_min <= 1:
        raise ValueError("F_min must lie in [0, 1]")
    alpha = math.sqrt(f_min)
    sources = []
    for i in range(n):
        coeffs = [0.0] * (n + 1)
        coeffs[0] = alpha
        coeffs[i + 1] = math.sqrt(1 - f_min)
        sources.append(Pure(SpectralAmplitudes(coeffs)))
    return sources


def best_case_pure_sources(f_min, n):
    """All photons identical except the first, which has fidelity F_min with the others."""
    if not 0 <= f_min <= 1:
        raise ValueError("F_min must lie in [0, 1]")
    first = Pure(SpectralAmplitudes([math.sqrt(f_min), math.sqrt(1 - f_min)]))
    rest = [Pure(SpectralAmplitudes([1.0, 0.0])) for _ in range(n - 1)]
    return [first] + rest


def iid_mixed_sources(weights, n):
    if not isinstance(weights, MixtureWeights):
        weights = MixtureWeights(weights)
    return [Mixed(weights) for _ in range(n)]


def maximally_mixed_sources(b, n):
    return iid_mixed_sources(MixtureWeights.uniform(b), n)

"""
Matrix permanents by Ryser's inclusion-exclusion formula,

    Per(M) = (-1)^k sum_{S subset of columns} (-1)^|S| prod_i sum_{j in S} M_ij

visiting the subsets in Gray code order so each step adds or removes a single
column from the running row sums. O(2^k k) time.
"""

import itertools
import math

import numpy as np

from specmode.errors import BudgetExceeded

MAX_SIZE = 16


def _gray_steps(k):
    """Column toggled and whether it is added, for Gray code steps 1 .. 2^k - 1."""
    t = np.arange(1, 2**k, dtype=np.int64)
    gray = t ^ (t >> 1)
    lowest = t & -t
    column = np.log2(lowest).round().astype(np.intp)
    added = ((gray >> column) & 1).astype(bool)
    return column, added


_STEPS = {}


def permanent(matrix):
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("Permanent needs a square matrix, got shape {}".format(m.shape))
    k = m.shape[0]
    if k > MAX_SIZE:
        raise BudgetExceeded(
            "A {0}x{0} permanent is over the {1}x{1} budget".format(k, MAX_SIZE),
            2**k * k,
            2**MAX_SIZE * MAX_SIZE,
        )
    if k == 0:
        return 1 + 0j
    if k not in _STEPS:
        _STEPS[k] = _gray_steps(k)
    column, added = _STEPS[k]

    deltas = m[:, column].T * np.where(added, 1, -1)[:, None]
    row_sums = np.cumsum(deltas, axis=0)
    products = np.prod(row_sums, axis=1)
    # Subset size changes by one every step, so it is odd exactly when t is
    products[0::2] *= -1
    total = complex(math.fsum(products.real), math.fsum(products.imag))
    return total if k % 2 == 0 else -total


def naive_permanent(matrix):
    """Sum over permutations. Only for checking small cases."""
    m = np.asarray(matrix, dtype=complex)
    k = m.shape[0]
    total = 0j
    for perm in itertools.permutations(range(k)):
        term = 1 + 0j
        for i, j in enumerate(perm):
            term *= m[i, j]
        total += term
    return total

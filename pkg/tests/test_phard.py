import numpy as np
import pytest

from specmode.hardness.bounds import (
    best_case_pure_sources,
    iid_mixed_sources,
    maximally_mixed_sources,
)
from specmode.hardness.instances import HardnessQuery
from specmode.hardness.phard import (
    CLOSED_FORM_IID,
    DISCLAIMER,
    EXACT_ENUMERATION,
    MONTE_CARLO,
    p_hard_exact,
    p_hard_iid_exact,
    p_hard_monte_carlo,
)
from specmode.spectral import MixtureWeights, pure_source


def distinguishable(n):
    sources = []
    for j in range(n):
        coeffs = [0] * n
        coeffs[j] = 1
        sources.append(pure_source(coeffs))
    return sources


def iid_cases():
    rng = np.random.default_rng(2024)
    cases = []
    for b in range(1, 5):
        for n in range(1, 9):
            cases.append((b, n, [1 / b] * b))
            cases.append((b, n, list(rng.dirichlet(np.ones(b)))))
    return cases


def test_disclaimer():
    assert "necessary, not sufficient" in DISCLAIMER


class TestExact:
    @pytest.mark.parametrize("n", [1, 3, 6])
    def test_pure_identical(self, n):
        q = HardnessQuery([pure_source([1])] * n, n, 0.1)
        result = p_hard_exact(q)
        assert result.p_hard == pytest.approx(1, abs=1e-12)
        assert result.method == EXACT_ENUMERATION
        assert result.std_error is None

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_distinguishable(self, n):
        q = HardnessQuery(distinguishable(n), 2, 0.1)
        assert p_hard_exact(q).p_hard == pytest.approx(0, abs=1e-12)

    def test_maximally_mixed_pair(self):
        q = HardnessQuery(maximally_mixed_sources(2, 2), 2, 0.1)
        assert p_hard_exact(q).p_hard == pytest.approx(0.5)

    def test_n_hard_above_n(self):
        q = HardnessQuery(maximally_mixed_sources(2, 3), 4, 0.1)
        assert p_hard_exact(q).p_hard == 0

    def test_best_case(self):
        assert p_hard_exact(HardnessQuery(best_case_pure_sources(0.7, 4), 3, 0.1)).p_hard == pytest.approx(1)
        assert p_hard_exact(HardnessQuery(best_case_pure_sources(0.7, 2), 2, 0.1)).p_hard == pytest.approx(0.7)

    def test_monotone_in_n_hard(self):
        photons = iid_mixed_sources([0.5, 0.3, 0.2], 7)
        values = [p_hard_exact(HardnessQuery(photons, k, 0.1)).p_hard for k in range(1, 9)]
        assert all(a >= b for a, b in zip(values, values[1:]))
        assert values[0] == pytest.approx(1)
        assert values[-1] == 0


class TestClosedForm:
    def test_uniform_pair(self):
        result = p_hard_iid_exact(2, 2, 2, [0.5, 0.5])
        assert result.p_hard == pytest.approx(0.5)
        assert result.method == CLOSED_FORM_IID

    def test_constant_vectors_only(self):
        assert p_hard_iid_exact(3, 3, 3, [1 / 3] * 3).p_hard == pytest.approx(1 / 9)

    @pytest.mark.parametrize("weights", [[1.0], [0.5, 0.5], [0.1, 0.2, 0.7]])
    def test_n_hard_one(self, weights):
        assert p_hard_iid_exact(len(weights), 5, 1, weights).p_hard == pytest.approx(1)

    def test_weights_length(self):
        with pytest.raises(ValueError):
            p_hard_iid_exact(3, 4, 2, MixtureWeights([0.5, 0.5]))

    def test_large_n(self):
        # Beyond anything enumeration could do; the pigeonhole makes it certain
        assert p_hard_iid_exact(10, 5000, 500, [0.1] * 10).p_hard == pytest.approx(1)

    @pytest.mark.parametrize("b, n, weights", iid_cases())
    def test_matches_exact(self, b, n, weights):
        photons = iid_mixed_sources(weights, n)
        for n_hard in range(1, n + 2):
            exact = p_hard_exact(HardnessQuery(photons, n_hard, 0.1)).p_hard
            closed = p_hard_iid_exact(b, n, n_hard, weights).p_hard
            assert closed == pytest.approx(exact, abs=1e-10)


class TestMonteCarlo:
    def test_degenerate(self):
        q = HardnessQuery([pure_source([1])] * 4, 4, 0.1)
        result = p_hard_monte_carlo(q, 1000, 3)
        assert result.p_hard == 1.0
        assert result.std_error == 0
        assert result.method == MONTE_CARLO
        assert result.seed == 3

    def test_reproducible(self):
        q = HardnessQuery(iid_mixed_sources([0.2, 0.3, 0.5], 6), 3, 0.1)
        assert p_hard_monte_carlo(q, 100_000, 11) == p_hard_monte_carlo(q, 100_000, 11)

    def test_independent_of_threads(self, monkeypatch):
        q = HardnessQuery(iid_mixed_sources([0.2, 0.3, 0.5], 6), 3, 0.1)
        monkeypatch.setenv("SPECMODE_THREADS", "1")
        single = p_hard_monte_carlo(q, 300_000, 5)
        monkeypatch.setenv("SPECMODE_THREADS", "3")
        assert p_hard_monte_carlo(q, 300_000, 5) == single

    @pytest.mark.parametrize("seed", [0, 1, 2])
    @pytest.mark.parametrize(
        "photons, n_hard",
        [
            (maximally_mixed_sources(2, 2), 2),
            (iid_mixed_sources([0.1, 0.6, 0.3], 5), 3),
            (best_case_pure_sources(0.6, 3), 3),
            ([pure_source([0.6, 0.8]), pure_source([0.8, 0.6]), pure_source([1, 0]), pure_source([0, 1])], 3),
        ],
    )
    def test_within_standard_errors(self, photons, n_hard, seed):
        q = HardnessQuery(photons, n_hard, 0.1)
        exact = p_hard_exact(q).p_hard
        estimate = p_hard_monte_carlo(q, 10**6, seed)
        assert abs(estimate.p_hard - exact) <= 5 * estimate.std_error

    def test_against_closed_form(self):
        q = HardnessQuery(maximally_mixed_sources(4, 12), 6, 0.1)
        closed = p_hard_iid_exact(4, 12, 6, [0.25] * 4).p_hard
        estimate = p_hard_monte_carlo(q, 10**6, 42)
        assert abs(estimate.p_hard - closed) <= 5 * estimate.std_error

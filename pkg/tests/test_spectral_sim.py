import numpy as np
import pytest

from specmode.errors import BudgetExceeded, HybridPhotonsError
from specmode.hardness.bounds import maximally_mixed_sources
from specmode.photonics.fock import beamsplitter, haar_random_unitary, output_distribution
from specmode.photonics.spectral_sim import (
    default_input,
    enlarged_cost,
    hom_coincidence,
    spatial_distribution_dephased,
    spatial_distribution_mixed,
    spatial_distribution_pure,
)
from specmode.spectral import Mixed, MixtureWeights, mixed_source, pure_source


def random_mixed(n, b, rng):
    return [Mixed(MixtureWeights(rng.dirichlet(np.ones(b)))) for _ in range(n)]


@pytest.mark.parametrize("f", [0, 0.25, 0.5, 0.75, 1])
def test_hom_coincidence(f):
    assert hom_coincidence(f) == pytest.approx((1 - f) / 2, abs=1e-9)


def test_maximally_mixed_pair_on_beamsplitter():
    photons = maximally_mixed_sources(2, 2)
    assert spatial_distribution_mixed(beamsplitter(), photons).probability((1, 1)) == pytest.approx(0.25, abs=1e-9)
    assert spatial_distribution_dephased(beamsplitter(), photons).probability((1, 1)) == pytest.approx(0.25, abs=1e-9)


@pytest.mark.parametrize("n, b", [(2, 2), (2, 3), (3, 2)])
def test_instance_mixture_matches_enlarged_space(n, b):
    rng = np.random.default_rng(100 * n + b)
    for trial in range(10):
        U = haar_random_unitary(3, seed=1000 * n + 10 * b + trial)
        photons = random_mixed(n, b, rng)
        mixture = spatial_distribution_mixed(U, photons)
        dephased = spatial_distribution_dephased(U, photons)
        assert mixture.max_abs_deviation(dephased) <= 1e-9


def test_pure_identical_matches_ideal():
    U = haar_random_unitary(4, 5)
    photons = [pure_source([1, 0])] * 3
    ideal = output_distribution(U, default_input(4, 3))
    np.testing.assert_allclose(spatial_distribution_pure(U, photons).as_array(), ideal.as_array(), atol=1e-12)


def test_pure_orthogonal_matches_distinguishable():
    U = haar_random_unitary(3, 2)
    pure = [pure_source([1, 0, 0]), pure_source([0, 1, 0]), pure_source([0, 0, 1])]
    mixed = [mixed_source([1, 0, 0]), mixed_source([0, 1, 0]), mixed_source([0, 0, 1])]
    assert spatial_distribution_pure(U, pure).max_abs_deviation(spatial_distribution_mixed(U, mixed)) <= 1e-12


def test_pure_partial_overlap_sums_to_one():
    U = haar_random_unitary(4, 9)
    photons = [pure_source([0.6, 0.8j]), pure_source([0.8, -0.6]), pure_source([1, 0])]
    d = spatial_distribution_pure(U, photons)
    assert sum(d.probabilities) == pytest.approx(1, abs=1e-9)


def test_rejects_hybrid():
    with pytest.raises(HybridPhotonsError):
        spatial_distribution_pure(beamsplitter(), [pure_source([1]), mixed_source([1])])
    with pytest.raises(HybridPhotonsError):
        spatial_distribution_mixed(beamsplitter(), [pure_source([1]), pure_source([1])])


def test_too_many_photons():
    U = haar_random_unitary(6, 0)
    with pytest.raises(BudgetExceeded):
        spatial_distribution_mixed(U, maximally_mixed_sources(2, 6))


def test_photons_exceed_modes():
    with pytest.raises(ValueError):
        spatial_distribution_mixed(beamsplitter(), maximally_mixed_sources(2, 3))


def test_enlarged_cost():
    assert enlarged_cost(2, 2, 2) == 10 * 4


def test_default_input():
    assert default_input(5, 3) == (1, 1, 1, 0, 0)

import math

import numpy as np
import pytest

from specmode.errors import NormalizationError, TruncationError
from specmode.wavepackets import (
    FunctionBasis,
    WavepacketSpec,
    basis_gram,
    continuous_overlap,
    decompose,
)

CENTER = 100.0
SIGMA = 1.0


class TestWavepacketSpec:
    def test_rejects_bad_bandwidth(self):
        with pytest.raises(NormalizationError):
            WavepacketSpec(CENTER, 0)

    def test_rejects_center_near_zero(self):
        with pytest.raises(NormalizationError):
            WavepacketSpec(2.0, 1.0)

    def test_rejects_unknown_shape(self):
        with pytest.raises(NormalizationError):
            WavepacketSpec(CENTER, SIGMA, shape="sech")

    def test_from_dict(self):
        p = WavepacketSpec.from_dict({"center_frequency": 100, "bandwidth": 2, "temporal_delay": 0.5})
        assert p == WavepacketSpec(100.0, 2.0, 0.5)


class TestContinuousOverlap:
    def test_identical(self):
        p = WavepacketSpec(CENTER, SIGMA)
        assert continuous_overlap(p, p) == pytest.approx(1, abs=1e-9)

    @pytest.mark.parametrize("tau", [0.3, 1.0, 2.0])
    def test_delay(self, tau):
        p = WavepacketSpec(CENTER, SIGMA)
        q = WavepacketSpec(CENTER, SIGMA, temporal_delay=tau)
        assert abs(continuous_overlap(p, q)) == pytest.approx(math.exp(-(SIGMA**2) * tau**2 / 2), abs=1e-9)

    @pytest.mark.parametrize("delta", [0.5, 1.0, 3.0])
    def test_frequency_offset(self, delta):
        p = WavepacketSpec(CENTER, SIGMA)
        q = WavepacketSpec(CENTER + delta, SIGMA)
        assert abs(continuous_overlap(p, q)) == pytest.approx(math.exp(-(delta**2) / (8 * SIGMA**2)), abs=1e-9)

    def test_hermitian(self):
        p = WavepacketSpec(CENTER, SIGMA, temporal_delay=0.2)
        q = WavepacketSpec(CENTER + 0.5, 1.5, temporal_delay=0.7)
        assert continuous_overlap(p, q) == pytest.approx(continuous_overlap(q, p).conjugate(), abs=1e-9)


class TestDecompose:
    def test_matched_single(self):
        amplitudes, residual = decompose(WavepacketSpec(CENTER, SIGMA), FunctionBasis(CENTER, SIGMA, 1))
        np.testing.assert_allclose(amplitudes.array, [1], atol=1e-8)
        assert residual < 1e-6

    def test_matched_three(self):
        amplitudes, _ = decompose(WavepacketSpec(CENTER, SIGMA), FunctionBasis(CENTER, SIGMA, 3))
        np.testing.assert_allclose(amplitudes.array, [1, 0, 0], atol=1e-8)

    def test_parseval(self):
        basis = FunctionBasis(CENTER, SIGMA, 8)
        p = WavepacketSpec(CENTER, SIGMA, temporal_delay=0.1)
        q = WavepacketSpec(CENTER, SIGMA, temporal_delay=0.3)
        lp, _ = decompose(p, basis)
        lq, _ = decompose(q, basis)
        assert np.vdot(lp.array, lq.array) == pytest.approx(continuous_overlap(p, q), abs=1e-6)

    def test_truncation(self):
        with pytest.raises(TruncationError) as e:
            decompose(WavepacketSpec(CENTER, SIGMA, temporal_delay=1.5), FunctionBasis(CENTER, SIGMA, 1))
        assert e.value.residual > 1e-6
        assert e.value.required_size is not None
        assert e.value.required_size > 1


class TestBasisGram:
    @pytest.mark.parametrize("size", [1, 2, 5, 10])
    def test_orthonormal(self, size):
        gram = basis_gram(FunctionBasis(CENTER, SIGMA, size))
        np.testing.assert_allclose(gram, np.eye(size), atol=1e-8)

    def test_functions_shape(self):
        basis = FunctionBasis(CENTER, SIGMA, 4)
        assert basis.functions(np.linspace(95, 105, 11)).shape == (4, 11)

    def test_rejects_unknown_family(self):
        with pytest.raises(NormalizationError):
            FunctionBasis(CENTER, SIGMA, 2, family="laguerre_gauss")

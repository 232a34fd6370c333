from sc_analysis.bench import (
    BenchSample, FitShape, NaiveDftPlan, OpCounter, Radix2Plan,
    calibrate_processor, dft_naive, fft_radix2, fit_growth,
    max_relative_deviation, measure, measure_all, random_vector
)
from sc_analysis.errors import (
    BenchError, DomainError, FitError, UnknownModelError
)
from sc_analysis.growth import N_LOG_N, QUADRATIC, scale
from sc_analysis.scmetrics import sc_throughput

import numpy as np
import pytest

TOLERANCE = 1e-9
ORACLE_SIZES = [2 ** k for k in range(1, 13)]
ORACLE_VECTORS = 100
FIT_SIZES = [64, 128, 256, 512]


def _extended_dft(x):
    """
    Direct DFT summation in extended precision.
    """
    n = len(x)
    pi = np.arctan(np.longdouble(1)) * 4
    k = np.arange(n).astype(np.longdouble)
    phase = -2 * pi * np.outer(k, k) / n
    matrix = np.cos(phase) + 1j * np.sin(phase)
    return matrix.astype(np.clongdouble) @ np.asarray(x, dtype=np.clongdouble)


def test_naive_dft_examples():
    assert np.allclose(dft_naive([1, 0, 0, 0]), [1, 1, 1, 1])
    assert np.allclose(dft_naive([1, 1, 1, 1]), [4, 0, 0, 0])

    x = random_vector(16, seed=3)
    expected = _extended_dft(x)
    assert max_relative_deviation(dft_naive(x), expected) < 1e-10


def test_naive_dft_counts():
    for n in (1, 4, 64, 300):
        counter = OpCounter()
        dft_naive(random_vector(n), counter)
        assert counter.mul == n * n
        assert counter.add == n * (n - 1)


def test_naive_dft_blocked_matches_cached():
    """
    Lengths above the cached-matrix threshold are summed block by block.
    """
    x = random_vector(600, seed=9)
    assert NaiveDftPlan(600).matrix is None
    assert max_relative_deviation(dft_naive(x), np.fft.fft(x)) < TOLERANCE


def test_naive_dft_stays_off_blas(monkeypatch):
    """
    Matrix-vector products of the naive DFT go through plain einsum, one
    call per block of rows, never through an optimized (BLAS) contraction.
    """
    calls = []
    einsum = np.einsum

    def recording_einsum(*operands, **kwargs):
        calls.append(kwargs)
        return einsum(*operands, **kwargs)

    monkeypatch.setattr(np, 'einsum', recording_einsum)
    x = random_vector(600, seed=2)
    dft_naive(random_vector(64))
    assert len(calls) == 1
    result = dft_naive(x)
    assert len(calls) == 4
    assert all(not kwargs.get('optimize') for kwargs in calls)
    assert max_relative_deviation(result, np.fft.fft(x)) < TOLERANCE


def test_radix2_examples():
    counter = OpCounter()
    impulse = np.zeros(8)
    impulse[0] = 1
    assert np.allclose(fft_radix2(impulse, counter), np.ones(8))
    assert counter.mul == 12
    assert counter.add == 24
    assert counter.total == 36

    x = random_vector(512, seed=1)
    assert max_relative_deviation(fft_radix2(x), dft_naive(x)) < TOLERANCE

    with pytest.raises(DomainError,
                       match='radix-2 requires power-of-two length'):
        fft_radix2(np.ones(6))


def test_radix2_counts():
    for n in ORACLE_SIZES:
        counter = OpCounter()
        fft_radix2(random_vector(n), counter)
        log_n = n.bit_length() - 1
        assert counter.mul == n // 2 * log_n
        assert counter.add == n * log_n


def test_plan_rejects_wrong_length():
    with pytest.raises(DomainError):
        Radix2Plan(8).execute(np.ones(16))
    with pytest.raises(DomainError):
        NaiveDftPlan(8).execute(np.ones(4))
    with pytest.raises(DomainError):
        dft_naive([])


def _seeded_vectors(n, count, seed):
    rng = np.random.default_rng([seed, n])
    return [rng.standard_normal(n) + 1j * rng.standard_normal(n)
            for _ in range(count)]


def test_radix2_matches_naive_dft():
    """
    The radix-2 FFT and the naive DFT agree on 100 seeded random vectors at
    every power-of-two length up to 4096, and both conserve energy.
    """
    for n in ORACLE_SIZES:
        fast = Radix2Plan(n)
        slow = NaiveDftPlan(n)
        for x in _seeded_vectors(n, ORACLE_VECTORS, seed=12):
            fast_spectrum = fast.execute(x)
            slow_spectrum = slow.execute(x)
            assert max_relative_deviation(fast_spectrum,
                                          slow_spectrum) < TOLERANCE
            energy = np.sum(np.abs(x) ** 2)
            for spectrum in (fast_spectrum, slow_spectrum):
                assert np.sum(np.abs(spectrum) ** 2) / n == pytest.approx(
                    energy, rel=TOLERANCE
                )


def test_linearity():
    """
    T(a x + b y) = a T(x) + b T(y) over the same lengths, on every seeded
    pair for the FFT and on the first few pairs for the quadratic DFT.
    """
    a, b = 2.5 - 1j, -0.75 + 3j
    for n in ORACLE_SIZES:
        vectors = _seeded_vectors(n, ORACLE_VECTORS, seed=13)
        pairs = list(zip(vectors[::2], vectors[1::2]))
        for plan, checked in ((Radix2Plan(n), pairs),
                              (NaiveDftPlan(n), pairs[:5])):
            for x, y in checked:
                combined = plan.execute(a * x + b * y)
                expected = a * plan.execute(x) + b * plan.execute(y)
                assert max_relative_deviation(combined, expected) < TOLERANCE


def test_random_vector_is_reproducible():
    assert np.array_equal(random_vector(64, seed=5), random_vector(64, seed=5))
    assert not np.array_equal(random_vector(64, seed=5),
                              random_vector(64, seed=6))


def test_measure():
    sample = measure('dft_naive', 64, repetitions=3)
    assert sample.op_count_mul == 4096
    assert sample.wall_time_s > 0
    assert sample.repetitions == 3

    sample = measure('fft_radix2', 64, repetitions=3)
    assert (sample.op_count_mul, sample.op_count_add) == (192, 384)
    assert sample.op_count == 576

    ratio = (measure('dft_naive', 128, repetitions=3).op_count_mul /
             measure('dft_naive', 64, repetitions=3).op_count_mul)
    assert ratio == 4.0


def test_measure_is_deterministic():
    first = measure('fft_radix2', 256, repetitions=3, seed=1)
    second = measure('fft_radix2', 256, repetitions=3, seed=2)
    assert first.op_count_mul == second.op_count_mul
    assert first.op_count_add == second.op_count_add


def test_measure_errors():
    with pytest.raises(UnknownModelError):
        measure('fft_radix4', 64)
    with pytest.raises(DomainError):
        measure('fft_radix2', 100)
    with pytest.raises(BenchError):
        measure('fft_radix2', 64, repetitions=2)
    with pytest.raises(BenchError):
        BenchSample('x', 4, 1, 1, 1.0).count('flops')


def test_fit_measured_counts():
    naive = measure_all('dft_naive', FIT_SIZES, repetitions=3)
    result = fit_growth(naive, counter='mul')
    assert result.best_model is FitShape.QUADRATIC
    assert result.fitted_coeff == pytest.approx(1.0, abs=1e-9)
    assert result.loglog_slope == pytest.approx(2.0, abs=1e-9)
    assert result.as_growth() == scale(QUADRATIC, result.fitted_coeff)

    fft = measure_all('fft_radix2', FIT_SIZES, repetitions=3)
    result = fit_growth(fft, counter='mul')
    assert result.best_model is FitShape.N_LOG_N
    assert result.fitted_coeff == pytest.approx(0.5, abs=1e-9)
    assert fit_growth(fft, counter='add').fitted_coeff == pytest.approx(
        1.0, abs=1e-9
    )
    assert fit_growth(fft, counter='total').best_model is FitShape.N_LOG_N


def _synthetic(shape, coeff, sizes=FIT_SIZES):
    return [
        BenchSample('synthetic', n,
                    coeff * float(np.exp(shape.log_values(n))), 0, 1e-6)
        for n in sizes
    ]


def test_fit_synthetic_counts():
    result = fit_growth([BenchSample('synthetic', n, 3 * n, 0, 1e-6)
                         for n in FIT_SIZES])
    assert result.best_model is FitShape.LINEAR
    assert result.fitted_coeff == pytest.approx(3.0)

    rng = np.random.default_rng(14)
    for shape in FitShape:
        for _ in range(20):
            coeff = float(rng.uniform(0.1, 10))
            result = fit_growth(_synthetic(shape, coeff))
            assert result.best_model is shape
            assert result.fitted_coeff == pytest.approx(coeff, rel=1e-9)
            assert result.residual == pytest.approx(0, abs=1e-12)


def test_fit_errors():
    with pytest.raises(FitError, match='range too narrow'):
        fit_growth(_synthetic(FitShape.LINEAR, 1, [64, 96, 128, 256]))
    with pytest.raises(FitError):
        fit_growth(_synthetic(FitShape.LINEAR, 1, [64, 128, 512]))


def test_fit_shape_growth():
    assert FitShape.N_LOG_N.growth == N_LOG_N
    assert FitShape.QUADRATIC.growth == QUADRATIC


def test_calibrate_processor():
    samples = [BenchSample('synthetic', n, 1000, 0, 1e-6) for n in (1, 2, 3)]
    assert calibrate_processor(samples) == pytest.approx(1e9)

    with pytest.raises(BenchError):
        calibrate_processor(samples[:2])
    with pytest.raises(BenchError):
        calibrate_processor(samples + [BenchSample('other', 4, 1, 0, 1.0)])


def test_calibrated_sc_throughput():
    """
    A calibrated rate plugs straight into the SC throughput formula.
    """
    samples = measure_all('fft_radix2', [256, 512, 1024], repetitions=3)
    rate = calibrate_processor(samples)
    assert rate > 0
    at_512 = samples[1]
    empirical = at_512.n / (at_512.op_count / rate + 3.2e-6)
    assert sc_throughput(512, at_512.op_count, rate, 3.2e-6) == \
        pytest.approx(empirical, rel=1e-12)

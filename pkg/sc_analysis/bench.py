"""
Instrumented DFT implementations and a small benchmark harness.

An "instruction" here is one counted complex multiplication or addition
performed by the transform itself. Twiddle factors and permutations are
computed when a plan is built, outside the timed and counted region. Each
transform call gets its own OpCounter, so nothing is shared between calls.

Measured operation counts are fitted against the linear, N log2 N and
quadratic growth shapes, and measured runtimes calibrate the processor
rate I used by the SC formulas.
"""
import enum
import logging
import math
import time
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from tqdm import tqdm

from .errors import BenchError, DomainError, FitError, UnknownModelError
from .growth import LINEAR, N_LOG_N, QUADRATIC, scale
from .waveform import is_power_of_two

logger = logging.getLogger(__name__)

# Rows of the DFT matrix materialized at once by the naive transform.
# Transforms no longer than this keep the whole matrix in their plan.
NAIVE_BLOCK_ROWS = 256
MIN_REPETITIONS = 3
MIN_FIT_SAMPLES = 4
MIN_FIT_SPREAD = 8


def as_complex_vec(x):
    """
    Convert `x` to a one-dimensional complex128 array. Its memory holds
    interleaved (re, im) double pairs.
    """
    vec = np.asarray(x, dtype=np.complex128)
    if vec.ndim != 1 or vec.size < 1:
        raise DomainError('expected a non-empty one-dimensional vector')
    return vec


def max_relative_deviation(a, b):
    """
    The largest bin-wise deviation of `a` from `b`, relative to the largest
    magnitude in `b`.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    scale_ = np.max(np.abs(b))
    if scale_ == 0:
        return float(np.max(np.abs(a)))
    return float(np.max(np.abs(a - b)) / scale_)


@dataclass
class OpCounter:
    mul: int = 0
    add: int = 0

    @property
    def total(self):
        return self.mul + self.add


def _mat_vec(matrix, x):
    # Not `matrix @ x`: einsum without `optimize` stays off BLAS and its
    # thread pool.
    return np.einsum('kn,n->k', matrix, x)


class NaiveDftPlan:
    """
    Direct DFT summation X[k] = sum_n x[n] exp(-2 pi i k n / N), costing N^2
    complex multiplications and N (N - 1) additions.
    """
    name = 'dft_naive'

    def __init__(self, n):
        if not isinstance(n, int) or n < 1:
            raise DomainError('DFT length must be a positive integer, got %r'
                              % (n,))
        self.n = n
        # Indexing a table of the N roots of unity by (k * n) mod N keeps
        # the phase exact for every matrix entry.
        self.roots = np.exp(-2j * np.pi * np.arange(n) / n)
        self.indices = np.arange(n)
        self.matrix = None
        if n <= NAIVE_BLOCK_ROWS:
            self.matrix = self.roots[np.outer(self.indices, self.indices) % n]

    def execute(self, x, counter: Optional[OpCounter] = None):
        x = as_complex_vec(x)
        n = self.n
        if x.size != n:
            raise DomainError('plan is for length %d, got %d' % (n, x.size))
        result = np.empty(n, dtype=np.complex128)
        if self.matrix is not None:
            result[:] = _mat_vec(self.matrix, x)
            if counter is not None:
                counter.mul += n * n
                counter.add += n * (n - 1)
            return result
        for start in range(0, n, NAIVE_BLOCK_ROWS):
            rows = self.indices[start:start + NAIVE_BLOCK_ROWS]
            block = self.roots[np.outer(rows, self.indices) % n]
            result[start:start + rows.size] = _mat_vec(block, x)
            if counter is not None:
                counter.mul += rows.size * n
                counter.add += rows.size * (n - 1)
        return result


class Radix2Plan:
    """
    Iterative decimation-in-time radix-2 FFT. Each of the log2 N stages does
    N/2 butterflies, one twiddle multiplication and two additions each, so
    a transform costs (N/2) log2 N multiplications and N log2 N additions.
    """
    name = 'fft_radix2'

    def __init__(self, n):
        if not is_power_of_two(n):
            raise DomainError('radix-2 requires power-of-two length, got %r'
                              % (n,))
        self.n = n
        bits = n.bit_length() - 1
        indices = np.arange(n)
        reversed_ = np.zeros(n, dtype=np.intp)
        for bit in range(bits):
            reversed_ |= ((indices >> bit) & 1) << (bits - 1 - bit)
        self.permutation = reversed_
        roots = np.exp(-2j * np.pi * np.arange(n // 2) / n)
        self.twiddles = []
        size = 2
        while size <= n:
            self.twiddles.append(roots[::n // size][:size // 2])
            size *= 2

    def execute(self, x, counter: Optional[OpCounter] = None):
        x = as_complex_vec(x)
        n = self.n
        if x.size != n:
            raise DomainError('plan is for length %d, got %d' % (n, x.size))
        x = x[self.permutation]
        for twiddle in self.twiddles:
            half = twiddle.size
            blocks = x.reshape(-1, 2 * half)
            upper = blocks[:, :half]
            lower = blocks[:, half:] * twiddle
            x = np.concatenate((upper + lower, upper - lower), axis=1).ravel()
            if counter is not None:
                counter.mul += n // 2
                counter.add += n
        return x


IMPLEMENTATIONS = {
    NaiveDftPlan.name: NaiveDftPlan,
    Radix2Plan.name: Radix2Plan,
}


def make_plan(impl_name, n):
    try:
        plan_class = IMPLEMENTATIONS[impl_name]
    except KeyError:
        raise UnknownModelError('unknown implementation %r; known: %s'
                                % (impl_name, ', '.join(IMPLEMENTATIONS)))
    return plan_class(n)


def dft_naive(x, counter: Optional[OpCounter] = None):
    x = as_complex_vec(x)
    return NaiveDftPlan(x.size).execute(x, counter)


def fft_radix2(x, counter: Optional[OpCounter] = None):
    x = as_complex_vec(x)
    return Radix2Plan(x.size).execute(x, counter)


def random_vector(n, seed=0):
    """
    A reproducible complex Gaussian test vector.
    """
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


@dataclass(frozen=True)
class BenchSample:
    impl_name: str
    n: int
    op_count_mul: int
    op_count_add: int
    wall_time_s: float
    repetitions: int = 1

    @property
    def op_count(self):
        return self.op_count_mul + self.op_count_add

    def count(self, counter='total'):
        if counter == 'mul':
            return self.op_count_mul
        if counter == 'add':
            return self.op_count_add
        if counter == 'total':
            return self.op_count
        raise BenchError('unknown counter %r; use mul, add or total'
                         % (counter,))


def measure(impl_name, n, repetitions=5, seed=0) -> BenchSample:
    """
    Run one implementation `repetitions` times on a seeded random vector of
    length `n`. The wall time is the median over repetitions of the
    transform alone. Both transforms run in the calling thread only, so
    nothing inside the timed region starts other threads.
    """
    if repetitions < MIN_REPETITIONS:
        raise BenchError('at least %d repetitions are required, got %d'
                         % (MIN_REPETITIONS, repetitions))
    plan = make_plan(impl_name, n)
    x = random_vector(n, seed)
    resolution = time.get_clock_info('perf_counter').resolution
    timings = []
    counts = set()
    for _ in range(repetitions):
        counter = OpCounter()
        start = time.perf_counter()
        plan.execute(x, counter)
        timings.append(max(time.perf_counter() - start, resolution))
        counts.add((counter.mul, counter.add))
    if len(counts) != 1:
        raise BenchError('%s at N=%d produced varying operation counts: %s'
                         % (impl_name, n, sorted(counts)))
    (mul, add), = counts
    wall_time = float(np.median(timings))
    if max(timings) > 10 * wall_time:
        logger.warning('%s at N=%d: slowest repetition took %.3g s against a'
                       ' median of %.3g s', impl_name, n, max(timings),
                       wall_time)
    logger.debug('%s N=%d: %d mul, %d add, %.3g s', impl_name, n, mul, add,
                 wall_time)
    return BenchSample(impl_name, n, mul, add, wall_time, repetitions)


def measure_all(impl_name, sizes, repetitions=5, seed=0, progress=False):
    """
    Measure every size in turn, showing a progress bar if progress=True.
    """
    samples = []
    for n in tqdm(sizes, desc='Benchmarking %s' % impl_name,
                  disable=not progress):
        samples.append(measure(impl_name, n, repetitions, seed))
    return samples


class FitShape(enum.Enum):
    LINEAR = 'Linear'
    N_LOG_N = 'NLogN'
    QUADRATIC = 'Quadratic'

    @property
    def growth(self):
        return _SHAPE_GROWTH[self]

    def log_values(self, n):
        n = np.asarray(n, dtype=float)
        if self is FitShape.LINEAR:
            return np.log(n)
        if self is FitShape.N_LOG_N:
            return np.log(n) + np.log(np.log2(n))
        return 2 * np.log(n)


_SHAPE_GROWTH = {
    FitShape.LINEAR: LINEAR,
    FitShape.N_LOG_N: N_LOG_N,
    FitShape.QUADRATIC: QUADRATIC,
}


@dataclass(frozen=True)
class FitResult:
    best_model: FitShape
    fitted_coeff: float
    residual: float
    loglog_slope: float

    def as_growth(self):
        return scale(self.best_model.growth, self.fitted_coeff)


def fit_growth(samples: List[BenchSample], counter='mul') -> FitResult:
    """
    Choose among the linear, N log2 N and quadratic shapes by least squared
    residual of the logarithms of the counts. The coefficient of each shape
    is its least-squares fit in log space. The free log-log slope is
    reported as a diagnostic only.
    """
    sizes = sorted({sample.n for sample in samples})
    if len(samples) < MIN_FIT_SAMPLES or len(sizes) < MIN_FIT_SAMPLES:
        raise FitError('at least %d samples with distinct sizes are required'
                       % MIN_FIT_SAMPLES)
    if sizes[0] < 2 or sizes[-1] < MIN_FIT_SPREAD * sizes[0]:
        raise FitError('range too narrow to discriminate models')
    n = np.array([sample.n for sample in samples], dtype=float)
    counts = np.array([sample.count(counter) for sample in samples],
                      dtype=float)
    if np.any(counts <= 0):
        raise FitError('operation counts must be positive to fit')
    log_counts = np.log(counts)

    fits = []
    for shape in FitShape:
        offsets = log_counts - shape.log_values(n)
        log_coeff = np.mean(offsets)
        residual = float(np.sum((offsets - log_coeff) ** 2))
        fits.append((residual, shape, math.exp(log_coeff)))
    residual, shape, coeff = min(fits, key=lambda fit: fit[0])
    slope = float(np.polyfit(np.log(n), log_counts, 1)[0])
    logger.info('best fit %s with coefficient %.6g (residual %.3g, log-log'
                ' slope %.3f)', shape.value, coeff, residual, slope)
    return FitResult(shape, coeff, residual, slope)


def calibrate_processor(samples: List[BenchSample]) -> float:
    """
    Estimate the processor rate I as the median of counted operations per
    second over samples of one implementation.
    """
    if len(samples) < MIN_REPETITIONS:
        raise BenchError('at least %d samples are required to calibrate'
                         % MIN_REPETITIONS)
    if len({sample.impl_name for sample in samples}) != 1:
        raise BenchError('calibration samples must come from one'
                         ' implementation')
    rates = [sample.op_count / sample.wall_time_s for sample in samples]
    return float(np.median(rates))

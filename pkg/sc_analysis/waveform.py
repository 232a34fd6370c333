"""
Waveform, channel, processor and complexity models: the quantities (bits
per frame, symbol period, bandwidth, instruction counts, processor rate)
that the spectro-computational formulas in `scmetrics` consume.

All quantities are in SI units: seconds, hertz, watts, instructions per
second.
"""
import logging
import math
from dataclasses import dataclass, field, replace
from functools import partial
from typing import Callable, List, Optional

from .errors import DomainError, UnknownModelError
from .growth import GrowthFn, evaluate, parse_growth

logger = logging.getLogger(__name__)

# Relative tolerance of the OFDM constraint T_sym = 1 / delta_f
RECIPROCITY_TOLERANCE = 1e-9


def is_power_of_two(n):
    return isinstance(n, int) and n >= 1 and n & (n - 1) == 0


def _require_positive(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value)
            and value > 0):
        raise DomainError('%s must be a positive number, got %r'
                          % (name, value))
    return value


def ofdm_bits(n, m):
    """
    Bits carried by one OFDM symbol of `n` subcarriers with an `m`-point
    constellation: n * log2(m).
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError('the number of subcarriers must be a positive'
                          ' integer, got %r' % (n,))
    if not is_power_of_two(m) or m < 2:
        raise DomainError('the constellation order must be a power of two'
                          ' >= 2, got %r' % (m,))
    return n * (m.bit_length() - 1)


def ofdm_bandwidth(n, delta_f):
    """
    The OFDM bandwidth W = n * delta_f, in Hz.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError('the number of subcarriers must be a positive'
                          ' integer, got %r' % (n,))
    _require_positive('subcarrier spacing', delta_f)
    return n * delta_f


def min_processor_rate(instructions, symbol_period):
    """
    The smallest processor rate (instructions per second) that finishes
    `instructions` within one symbol period.
    """
    _require_positive('instruction count', instructions)
    _require_positive('symbol period', symbol_period)
    return instructions / symbol_period


@dataclass(frozen=True)
class WaveformModel:
    """
    An OFDM-style waveform. The symbol period defaults to 1 / spacing and
    must agree with it when given.
    """
    name: str
    n_subcarriers: int
    subcarrier_spacing_hz: float
    constellation_order: int = 2
    symbol_period_s: Optional[float] = None

    def __post_init__(self):
        _require_positive('subcarrier spacing', self.subcarrier_spacing_hz)
        # Validates n_subcarriers and constellation_order
        ofdm_bits(self.n_subcarriers, self.constellation_order)
        expected = 1.0 / self.subcarrier_spacing_hz
        if self.symbol_period_s is None:
            object.__setattr__(self, 'symbol_period_s', expected)
        else:
            _require_positive('symbol period', self.symbol_period_s)
            if abs(self.symbol_period_s - expected) > \
                    RECIPROCITY_TOLERANCE * expected:
                raise DomainError(
                    'symbol period %r s does not match 1/spacing = %r s'
                    % (self.symbol_period_s, expected)
                )

    @property
    def bits_per_frame(self):
        return ofdm_bits(self.n_subcarriers, self.constellation_order)

    @property
    def bandwidth_hz(self):
        return ofdm_bandwidth(self.n_subcarriers, self.subcarrier_spacing_hz)

    def with_subcarriers(self, n):
        return replace(self, n_subcarriers=n, symbol_period_s=None)


@dataclass(frozen=True)
class ChannelModel:
    bandwidth_hz: float
    rx_power_w: float
    noise_psd_w_per_hz: float

    def __post_init__(self):
        _require_positive('bandwidth', self.bandwidth_hz)
        _require_positive('received power', self.rx_power_w)
        _require_positive('noise power spectral density',
                          self.noise_psd_w_per_hz)

    @property
    def snr(self):
        return self.rx_power_w / (self.bandwidth_hz * self.noise_psd_w_per_hz)

    def scaled(self, factor):
        """
        Grow bandwidth and received power together, which keeps the SNR
        fixed.
        """
        _require_positive('scale factor', factor)
        return replace(self, bandwidth_hz=self.bandwidth_hz * factor,
                       rx_power_w=self.rx_power_w * factor)


@dataclass(frozen=True)
class BasebandProcessor:
    instr_per_s: float

    def __post_init__(self):
        _require_positive('processor rate', self.instr_per_s)

    @classmethod
    def from_instr_per_us(cls, instr_per_us):
        return cls(instr_per_us * 1e6)

    @property
    def instr_per_us(self):
        return self.instr_per_s / 1e6

    @property
    def seconds_per_instruction(self):
        return 1.0 / self.instr_per_s


@dataclass(frozen=True)
class ComplexityModel:
    """
    The instruction count of a baseband algorithm as a function of the
    number of subcarriers N, both as a symbolic GrowthFn and as an exact
    closed form.
    """
    name: str
    symbolic: GrowthFn
    exact_eval: Callable[[int], float] = field(compare=False, repr=False)
    power_of_two_only: bool = False
    description: str = field(default='', compare=False)

    def check_domain(self, n):
        if not isinstance(n, int) or n < 1:
            raise DomainError('N must be a positive integer, got %r' % (n,))
        if self.power_of_two_only and not is_power_of_two(n):
            raise DomainError('%s requires a power-of-two N, got %d'
                              % (self.name, n))

    def instructions(self, n):
        self.check_domain(n)
        return self.exact_eval(n)

    def symbolic_instructions(self, n):
        self.check_domain(n)
        return evaluate(self.symbolic, n)


def _naive_count(n):
    return n * n


def _radix2_count(n):
    return n * (n.bit_length() - 1)


def _linear_count(c, n):
    return c * n


def _identity_count(n):
    return n


def _ofdm_uncoded_count(n):
    return _radix2_count(n) + 3 * n


def complexity_catalog(linear_c=1.0) -> List[ComplexityModel]:
    """
    The built-in complexity models. `linear_c` is the constant of the
    hypothetical linear-time DFT.
    """
    _require_positive('linear complexity constant', linear_c)
    linear_c = float(linear_c)
    return [
        ComplexityModel(
            'dft_naive', parse_growth('N^2'), _naive_count,
            description='direct DFT summation, N^2 instructions',
        ),
        ComplexityModel(
            'fft_radix2', parse_growth('N*log'), _radix2_count,
            power_of_two_only=True,
            description='radix-2 FFT, N log2 N instructions',
        ),
        ComplexityModel(
            'dft_linear_conjecture', GrowthFn.monomial(linear_c, 1, 0),
            partial(_linear_count, linear_c),
            description='hypothetical DFT in c*N instructions',
        ),
        ComplexityModel(
            'ls_detector', parse_growth('N'), _identity_count,
            description='least-squares detection, linear in N',
        ),
        ComplexityModel(
            'ofdm_uncoded', parse_growth('N*log + 3*N'), _ofdm_uncoded_count,
            power_of_two_only=True,
            description='uncoded OFDM receiver: radix-2 DFT, demapping,'
                        ' LS detection and equalization',
        ),
    ]


def get_complexity_model(name, linear_c=1.0) -> ComplexityModel:
    for model in complexity_catalog(linear_c):
        if model.name == name:
            logger.debug('using complexity model %s = %s', name,
                         model.symbolic)
            return model
    raise UnknownModelError(
        'unknown complexity model %r; known models: %s'
        % (name, ', '.join(m.name for m in complexity_catalog()))
    )


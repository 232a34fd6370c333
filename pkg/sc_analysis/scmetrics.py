"""
Throughput, efficiency and capacity formulas, classic and
spectro-computational (SC).

The SC throughput of a B-bit symbol is

    SC_R = B / (T / I + T_sym)

where T is the number of baseband instructions per symbol, I the processor
rate in instructions per second and T_sym the symbol period. It reduces to
the classic rate B / T_sym when T vanishes and to the algorithmic
throughput I * B / T when T_sym vanishes.

Rates are in bits/s, efficiencies in bits/s/Hz and times in seconds.
"""
import enum
import logging
import math
import numbers
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional

from .errors import DomainError
from .waveform import (
    BasebandProcessor, ChannelModel, ComplexityModel, WaveformModel,
    min_processor_rate, ofdm_bandwidth, ofdm_bits
)

logger = logging.getLogger(__name__)

# Relative slack when checking that a processor finishes within one symbol
# period; T / I and T_sym are both rounded floats.
PACE_TOLERANCE = 1e-9


def _positive(name, value):
    if not (isinstance(value, numbers.Real) and math.isfinite(value)
            and value > 0):
        raise DomainError('%s must be positive, got %r' % (name, value))


def _non_negative(name, value):
    if not (isinstance(value, numbers.Real) and math.isfinite(value)
            and value >= 0):
        raise DomainError('%s must be non-negative, got %r' % (name, value))


def shannon_capacity(bandwidth, snr):
    """
    AWGN channel capacity W log2(1 + SNR). An SNR of zero is accepted and
    gives zero capacity.
    """
    _positive('bandwidth', bandwidth)
    _non_negative('SNR', snr)
    return bandwidth * math.log2(1.0 + snr)


def snr(power_w, bandwidth, n0):
    _positive('received power', power_w)
    _positive('bandwidth', bandwidth)
    _positive('noise power spectral density', n0)
    return power_w / (bandwidth * n0)


def power_limited_capacity(power_w, n0):
    """
    P / N0 * log2(e), the limit of Shannon capacity at fixed power as the
    bandwidth grows without bound.
    """
    _positive('received power', power_w)
    _positive('noise power spectral density', n0)
    return power_w / n0 * math.log2(math.e)


class CapacityRegime(enum.Enum):
    POWER_LIMITED = 'power-limited'
    TRANSITIONAL = 'transitional'
    BANDWIDTH_LIMITED = 'bandwidth-limited'


def capacity_regime(snr_value, low=0.1, high=10.0):
    """
    Classify an operating point: SNR below `low` is power-limited (capacity
    is nearly linear in power), SNR above `high` is bandwidth-limited
    (capacity is nearly linear in bandwidth).
    """
    _non_negative('SNR', snr_value)
    if not 0 < low < high:
        raise DomainError('regime thresholds must satisfy 0 < low < high')
    if snr_value < low:
        return CapacityRegime.POWER_LIMITED
    if snr_value > high:
        return CapacityRegime.BANDWIDTH_LIMITED
    return CapacityRegime.TRANSITIONAL


def classic_rate(bits, symbol_period):
    _positive('bits', bits)
    _positive('symbol period', symbol_period)
    return bits / symbol_period


def classic_se(rate, bandwidth):
    _positive('rate', rate)
    _positive('bandwidth', bandwidth)
    return rate / bandwidth


def t_comp(instructions, instr_per_s):
    """
    Baseband processing time T / I, in seconds.
    """
    _positive('instruction count', instructions)
    _positive('processor rate', instr_per_s)
    return instructions / instr_per_s


def alg_throughput(bits, instructions, instr_per_s):
    """
    Bits per second of computation alone, I * B / T.
    """
    _positive('bits', bits)
    _positive('instruction count', instructions)
    _positive('processor rate', instr_per_s)
    return instr_per_s * bits / instructions


def sc_throughput(bits, instructions, instr_per_s, symbol_period):
    """
    SC_R = B / (T / I + T_sym). A zero symbol period reduces it to the
    algorithmic throughput.
    """
    _positive('bits', bits)
    _non_negative('symbol period', symbol_period)
    return bits / (t_comp(instructions, instr_per_s) + symbol_period)


def r_comp(bits, seconds_per_instruction, instructions, symbol_period):
    """
    The complexity-constrained data rate B / (t T + T_sym), with t the
    runtime of one instruction. Equal to `sc_throughput` with I = 1 / t.
    """
    _positive('bits', bits)
    _positive('instruction runtime', seconds_per_instruction)
    _positive('instruction count', instructions)
    _non_negative('symbol period', symbol_period)
    return bits / (seconds_per_instruction * instructions + symbol_period)


def sc_efficiency(sc_rate, bandwidth):
    _positive('SC throughput', sc_rate)
    _positive('bandwidth', bandwidth)
    return sc_rate / bandwidth


def keeps_pace(t_comp_s, symbol_period):
    """
    Whether the processor finishes a symbol within one symbol period. When
    it does not, idle periods appear between consecutive symbols.
    """
    return t_comp_s <= symbol_period * (1 + PACE_TOLERANCE)


def idle_time(t_comp_s, symbol_period):
    if keeps_pace(t_comp_s, symbol_period):
        return 0.0
    return t_comp_s - symbol_period


def fft_peak_subcarriers(instr_per_s, symbol_period):
    """
    The N that maximizes N / (N log2 N / I + T_sym), namely I T_sym ln 2.
    Beyond it the SC throughput of the radix-2 model falls as N grows.
    """
    _positive('processor rate', instr_per_s)
    _positive('symbol period', symbol_period)
    return instr_per_s * symbol_period * math.log(2)


@dataclass(frozen=True)
class ScReport:
    """
    Every metric of one scenario. Rates in bits/s, efficiencies in
    bits/s/Hz.
    """
    t_comp_s: float
    alg_throughput_bps: float
    sc_throughput_bps: float
    sc_efficiency_bps_hz: float
    classic_rate_bps: float
    classic_se_bps_hz: float
    shannon_capacity_bps: Optional[float]
    r_comp_bps: float
    symbol_period_s: float
    bandwidth_hz: float
    instr_per_s: float
    min_instr_per_s: float
    snr: Optional[float] = None

    @property
    def keeps_pace(self):
        return keeps_pace(self.t_comp_s, self.symbol_period_s)

    @property
    def idle_time_s(self):
        return idle_time(self.t_comp_s, self.symbol_period_s)

    @property
    def bits_per_instruction(self):
        return self.sc_throughput_bps / self.instr_per_s

    @property
    def capacity_regime(self):
        if self.snr is None:
            return None
        return capacity_regime(self.snr)


def full_report(waveform: WaveformModel, channel: Optional[ChannelModel],
                processor: BasebandProcessor,
                complexity: ComplexityModel) -> ScReport:
    """
    Compute every metric for a waveform processed by `processor` running the
    algorithm `complexity`. Without a channel the Shannon capacity is left
    out.
    """
    n = waveform.n_subcarriers
    bits = waveform.bits_per_frame
    instructions = complexity.instructions(n)
    t_sym = waveform.symbol_period_s
    bandwidth = waveform.bandwidth_hz
    rate = processor.instr_per_s

    sc_rate = sc_throughput(bits, instructions, rate, t_sym)
    classic = classic_rate(bits, t_sym)
    capacity = channel_snr = None
    if channel is not None:
        channel_snr = channel.snr
        capacity = shannon_capacity(channel.bandwidth_hz, channel_snr)

    report = ScReport(
        t_comp_s=t_comp(instructions, rate),
        alg_throughput_bps=alg_throughput(bits, instructions, rate),
        sc_throughput_bps=sc_rate,
        sc_efficiency_bps_hz=sc_efficiency(sc_rate, bandwidth),
        classic_rate_bps=classic,
        classic_se_bps_hz=classic_se(classic, bandwidth),
        shannon_capacity_bps=capacity,
        r_comp_bps=r_comp(bits, processor.seconds_per_instruction,
                          instructions, t_sym),
        symbol_period_s=t_sym,
        bandwidth_hz=bandwidth,
        instr_per_s=rate,
        min_instr_per_s=min_processor_rate(instructions, t_sym),
        snr=channel_snr,
    )
    if not report.keeps_pace:
        logger.warning(
            '%s: processing takes %.4g us per symbol but the symbol period is'
            ' %.4g us; at least %.6g instr/us are needed to keep pace',
            waveform.name, report.t_comp_s * 1e6, t_sym * 1e6,
            report.min_instr_per_s / 1e6
        )
    return report


class SweepRow(NamedTuple):
    n: int
    sc_throughput_bps: float
    sc_efficiency_bps_hz: float


def powers_of_two(n_min, n_max):
    """
    The powers of two (as multiples of n_min) from n_min up to n_max.
    """
    if not isinstance(n_min, int) or not isinstance(n_max, int):
        raise DomainError('sweep bounds must be integers')
    if n_min < 1:
        raise DomainError('sweep lower bound must be positive, got %d'
                          % n_min)
    if n_min > n_max:
        raise DomainError('sweep lower bound %d exceeds upper bound %d'
                          % (n_min, n_max))
    result = []
    n = n_min
    while n <= n_max:
        result.append(n)
        n *= 2
    return result


def sweep_sc_throughput(m, delta_f, instr_per_s, complexity: ComplexityModel,
                        n_range: Iterable[int]) -> List[SweepRow]:
    """
    SC throughput and efficiency of an OFDM waveform with `m`-point
    constellation and spacing `delta_f`, for each number of subcarriers in
    `n_range`.
    """
    _positive('subcarrier spacing', delta_f)
    t_sym = 1.0 / delta_f
    rows = []
    for n in n_range:
        complexity.check_domain(n)
        bits = ofdm_bits(n, m)
        rate = sc_throughput(bits, complexity.instructions(n), instr_per_s,
                             t_sym)
        rows.append(SweepRow(n, rate,
                             sc_efficiency(rate, ofdm_bandwidth(n, delta_f))))
        logger.debug('N=%d: SC_R=%.6g bits/s', n, rate)
    return rows

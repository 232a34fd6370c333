"""
Scenario files: one waveform, processor, complexity model and optional
channel, written as `key = value` lines.

    # IEEE 802.11ac-like symbol
    scenario.name = 80211ac
    waveform.n = 512
    waveform.delta_f_hz = 312500.0
    processor.instr_per_s = 1440000000.0
    complexity.model = fft_radix2

Values are in SI units. Unknown or repeated keys are errors, so a typo
never silently falls back to a default.
"""
import logging
import os
import re
from dataclasses import dataclass
from typing import Optional

from .errors import ScenarioError, ScError
from .scmetrics import ScReport, full_report
from .waveform import (
    BasebandProcessor, ChannelModel, ComplexityModel, WaveformModel,
    complexity_catalog, get_complexity_model, ofdm_bandwidth, ofdm_bits
)

logger = logging.getLogger(__name__)

SCENARIO_DIR = os.path.join(os.path.dirname(__file__), 'scenarios')
SCENARIO_SUFFIX = '.scn'

# A comment starts with '#' at the start of a line or after whitespace
COMMENT_RE = re.compile(r'(?:^|\s)#.*$')


def _parse_int(text):
    return int(text)


def _parse_float(text):
    return float(text)


def _parse_name(text):
    if not text:
        raise ValueError('empty name')
    return text


# The allowed keys, in the order dump_scenario writes them
KEY_PARSERS = {
    'scenario.name': _parse_name,
    'waveform.name': _parse_name,
    'waveform.n': _parse_int,
    'waveform.delta_f_hz': _parse_float,
    'waveform.m': _parse_int,
    'processor.instr_per_s': _parse_float,
    'complexity.model': _parse_name,
    'complexity.linear_c': _parse_float,
    'channel.power_w': _parse_float,
    'channel.n0_w_per_hz': _parse_float,
}
REQUIRED_KEYS = ('waveform.n', 'waveform.delta_f_hz', 'processor.instr_per_s',
                 'complexity.model')
CHANNEL_KEYS = ('channel.power_w', 'channel.n0_w_per_hz')

# Column order of report CSV rows
REPORT_COLUMNS = [
    'scenario', 'n', 'm', 'delta_f_hz', 'instr_per_s', 'model',
    't_comp_s', 'alg_throughput_bps', 'sc_throughput_bps',
    'sc_efficiency_bps_hz', 'classic_rate_bps', 'classic_se_bps_hz',
    'shannon_capacity_bps',
]


@dataclass(frozen=True)
class Scenario:
    name: str
    waveform: WaveformModel
    processor: BasebandProcessor
    complexity: ComplexityModel
    channel: Optional[ChannelModel] = None
    linear_c: float = 1.0

    def __post_init__(self):
        try:
            self.complexity.check_domain(self.waveform.n_subcarriers)
        except ScError as e:
            raise ScenarioError('waveform.n: %s' % e)

    def report(self) -> ScReport:
        return full_report(self.waveform, self.channel, self.processor,
                           self.complexity)


def _read_values(text, source):
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = COMMENT_RE.sub('', line).strip()
        if not line:
            continue
        if '=' not in line:
            raise ScenarioError('%s line %d: expected key = value, got %r'
                                % (source, lineno, line))
        key, value = (part.strip() for part in line.split('=', 1))
        if key not in KEY_PARSERS:
            raise ScenarioError('%s line %d: unknown key %r'
                                % (source, lineno, key))
        if key in values:
            raise ScenarioError('%s line %d: duplicate key %r'
                                % (source, lineno, key))
        try:
            values[key] = KEY_PARSERS[key](value)
        except ValueError:
            raise ScenarioError('%s line %d: invalid value %r for key %s'
                                % (source, lineno, value, key))
    return values


def _build(values, default_name, source):
    missing = [key for key in REQUIRED_KEYS if key not in values]
    if missing:
        raise ScenarioError('%s: missing required key %s'
                            % (source, ', '.join(missing)))
    given_channel = [key for key in CHANNEL_KEYS if key in values]
    if given_channel and len(given_channel) != len(CHANNEL_KEYS):
        raise ScenarioError('%s: channel keys must be given together: %s'
                            % (source, ', '.join(CHANNEL_KEYS)))

    name = values.get('scenario.name', default_name)
    linear_c = values.get('complexity.linear_c', 1.0)
    # Validate key by key first so that errors name the offending key
    checks = [
        ('waveform.n', lambda: ofdm_bits(values['waveform.n'], 2)),
        ('waveform.delta_f_hz',
         lambda: ofdm_bandwidth(1, values['waveform.delta_f_hz'])),
        ('waveform.m', lambda: ofdm_bits(1, values.get('waveform.m', 2))),
        ('complexity.linear_c', lambda: complexity_catalog(linear_c)),
    ]
    current_key = None
    try:
        for current_key, check in checks:
            check()
        current_key = 'waveform'
        waveform = WaveformModel(
            name=values.get('waveform.name', name),
            n_subcarriers=values['waveform.n'],
            subcarrier_spacing_hz=values['waveform.delta_f_hz'],
            constellation_order=values.get('waveform.m', 2),
        )
        current_key = 'processor.instr_per_s'
        processor = BasebandProcessor(values['processor.instr_per_s'])
        current_key = 'complexity.model'
        complexity = get_complexity_model(values['complexity.model'],
                                          linear_c)
        channel = None
        if given_channel:
            current_key = 'channel'
            channel = ChannelModel(waveform.bandwidth_hz,
                                   values['channel.power_w'],
                                   values['channel.n0_w_per_hz'])
    except ScenarioError:
        raise
    except ScError as e:
        raise ScenarioError('%s: %s: %s' % (source, current_key, e))
    return Scenario(name, waveform, processor, complexity, channel, linear_c)


def parse_scenario(text, default_name='scenario', source='<scenario>'):
    """
    Build a Scenario from the text of a scenario file.
    """
    try:
        return _build(_read_values(text, source), default_name, source)
    except ScenarioError as e:
        if str(e).startswith(source):
            raise
        raise ScenarioError('%s: %s' % (source, e))


def bundled_scenarios():
    return sorted(
        filename[:-len(SCENARIO_SUFFIX)]
        for filename in os.listdir(SCENARIO_DIR)
        if filename.endswith(SCENARIO_SUFFIX)
    )


def find_scenario_file(path_or_name):
    """
    Resolve a file path, or the name of a bundled scenario such as
    `80211ac`.
    """
    if os.path.isfile(path_or_name):
        return path_or_name
    bundled = os.path.join(SCENARIO_DIR, path_or_name)
    if not bundled.endswith(SCENARIO_SUFFIX):
        bundled += SCENARIO_SUFFIX
    if os.path.isfile(bundled):
        return bundled
    raise ScenarioError('no scenario file %r (bundled scenarios: %s)'
                        % (path_or_name, ', '.join(bundled_scenarios())))


def load_scenario(path_or_name) -> Scenario:
    path = find_scenario_file(path_or_name)
    default_name = os.path.splitext(os.path.basename(path))[0]
    with open(path, encoding='utf-8') as f:
        text = f.read()
    scenario = parse_scenario(text, default_name, source=path)
    logger.debug('loaded scenario %s from %s', scenario.name, path)
    return scenario


def _check_writable(key, value):
    """
    Reject names that would not read back unchanged from a scenario file.
    """
    if (not value or value != value.strip() or '\n' in value
            or '\r' in value or COMMENT_RE.search(value)):
        raise ScenarioError('%s %r cannot be written to a scenario file'
                            % (key, value))


def dump_scenario(scenario: Scenario) -> str:
    """
    The canonical file form of a scenario; parse_scenario reads it back to
    an equal Scenario.
    """
    values = {
        'scenario.name': scenario.name,
        'waveform.name': scenario.waveform.name,
        'waveform.n': scenario.waveform.n_subcarriers,
        'waveform.delta_f_hz': scenario.waveform.subcarrier_spacing_hz,
        'waveform.m': scenario.waveform.constellation_order,
        'processor.instr_per_s': scenario.processor.instr_per_s,
        'complexity.model': scenario.complexity.name,
        'complexity.linear_c': scenario.linear_c,
    }
    if scenario.channel is not None:
        values['channel.power_w'] = scenario.channel.rx_power_w
        values['channel.n0_w_per_hz'] = scenario.channel.noise_psd_w_per_hz
    lines = []
    for key in KEY_PARSERS:
        if key in values:
            value = values[key]
            if isinstance(value, float):
                value = repr(value)
            elif isinstance(value, str):
                _check_writable(key, value)
            lines.append('%s = %s' % (key, value))
    return '\n'.join(lines) + '\n'


def _significant(value):
    if value is None:
        return ''
    return '%.6g' % value


def report_row(scenario: Scenario, report: ScReport):
    """
    One CSV row, in REPORT_COLUMNS order, numbers to 6 significant digits.
    """
    return [
        scenario.name,
        scenario.waveform.n_subcarriers,
        scenario.waveform.constellation_order,
        _significant(scenario.waveform.subcarrier_spacing_hz),
        _significant(scenario.processor.instr_per_s),
        scenario.complexity.name,
        _significant(report.t_comp_s),
        _significant(report.alg_throughput_bps),
        _significant(report.sc_throughput_bps),
        _significant(report.sc_efficiency_bps_hz),
        _significant(report.classic_rate_bps),
        _significant(report.classic_se_bps_hz),
        _significant(report.shannon_capacity_bps),
    ]

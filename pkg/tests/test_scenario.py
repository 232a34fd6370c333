from sc_analysis.scenario import (
    REPORT_COLUMNS, Scenario, bundled_scenarios, dump_scenario,
    find_scenario_file, load_scenario, parse_scenario, report_row
)
from sc_analysis.waveform import (
    BasebandProcessor, ChannelModel, WaveformModel, get_complexity_model
)
from sc_analysis.errors import ScenarioError

from dataclasses import replace

import pytest

MINIMAL = """
waveform.n = 64
waveform.delta_f_hz = 312500
processor.instr_per_s = 1.2e8
complexity.model = fft_radix2
"""


def test_bundled_scenarios():
    assert bundled_scenarios() == ['80211a', '80211a_equal_resources',
                                   '80211ac']

    ac = load_scenario('80211ac')
    assert ac.name == '80211ac'
    assert ac.waveform.n_subcarriers == 512
    assert ac.processor.instr_per_us == 1440
    assert ac.complexity.name == 'fft_radix2'
    assert ac.channel.snr == pytest.approx(1000)
    assert ac.report().sc_throughput_bps == pytest.approx(80e6, rel=1e-9)

    equal = load_scenario('80211a_equal_resources')
    assert equal.report().sc_throughput_bps == pytest.approx(18.46e6,
                                                             abs=0.005e6)
    legacy = load_scenario('80211a')
    assert legacy.report().sc_throughput_bps == pytest.approx(10e6,
                                                              rel=1e-12)


def test_parse_minimal():
    scenario = parse_scenario(MINIMAL, default_name='mini')
    assert scenario.name == 'mini'
    assert scenario.waveform.name == 'mini'
    assert scenario.waveform.constellation_order == 2
    assert scenario.linear_c == 1.0
    assert scenario.channel is None
    assert scenario.report().shannon_capacity_bps is None


def test_comments_and_optional_keys():
    text = MINIMAL + """
# comment lines and trailing comments are ignored
waveform.m = 16   # 4 bits per subcarrier

complexity.linear_c = 2.5
channel.power_w = 8e-11
channel.n0_w_per_hz = 4e-21
"""
    scenario = parse_scenario(text)
    assert scenario.waveform.bits_per_frame == 256
    assert scenario.linear_c == 2.5
    assert scenario.channel.bandwidth_hz == 2e7


@pytest.mark.parametrize('text, message', [
    (MINIMAL + 'waveform.nn = 64\n', 'unknown key'),
    (MINIMAL + 'waveform.n = 128\n', 'duplicate key'),
    (MINIMAL.replace('complexity.model = fft_radix2', ''),
     'missing required key complexity.model'),
    (MINIMAL.replace('64', 'sixty-four'), 'invalid value'),
    (MINIMAL + 'channel.power_w = 1e-10\n', 'channel keys'),
    (MINIMAL + 'this line has no equals sign\n', 'expected key = value'),
    (MINIMAL.replace('fft_radix2', 'fft_radix4'), 'complexity.model'),
    (MINIMAL.replace('= 64', '= 100'), 'waveform.n'),
    (MINIMAL + 'waveform.m = 3\n', 'waveform.m'),
    (MINIMAL.replace('1.2e8', '-1'), 'processor.instr_per_s'),
    (MINIMAL.replace('312500', '0'), 'waveform.delta_f_hz'),
    (MINIMAL + 'complexity.linear_c = 0\n', 'complexity.linear_c'),
])
def test_parse_errors(text, message):
    with pytest.raises(ScenarioError, match=message):
        parse_scenario(text, source='test.scn')


def test_error_names_source_and_line():
    with pytest.raises(ScenarioError) as excinfo:
        parse_scenario(MINIMAL + 'waveform.nn = 64\n', source='test.scn')
    assert str(excinfo.value).startswith('test.scn line 6:')


def test_dump_round_trip():
    for name in bundled_scenarios():
        scenario = load_scenario(name)
        assert parse_scenario(dump_scenario(scenario)) == scenario

    custom = Scenario(
        'custom',
        WaveformModel('custom', 48, 15000.0, constellation_order=64),
        BasebandProcessor(3.3e8),
        get_complexity_model('dft_linear_conjecture', 0.7),
        ChannelModel(48 * 15000.0, 1.5e-13, 4e-21),
        linear_c=0.7,
    )
    text = dump_scenario(custom)
    assert 'complexity.linear_c = 0.7' in text
    assert parse_scenario(text) == custom


def test_dump_round_trip_keeps_unusual_names():
    """
    A '#' inside a name is not a comment; names that a scenario file cannot
    carry are refused when dumping.
    """
    ac = load_scenario('80211ac')
    for name in ('run#1', 'my run', 'a=b'):
        scenario = replace(ac, name=name,
                           waveform=replace(ac.waveform, name=name + '#w'))
        assert parse_scenario(dump_scenario(scenario)) == scenario

    for name in (' padded', 'padded ', 'run #1', '#1', '', 'two\nlines'):
        with pytest.raises(ScenarioError, match='cannot be written'):
            dump_scenario(replace(ac, name=name))


def test_load_by_path(tmp_path):
    path = tmp_path / 'mine.scn'
    path.write_text(MINIMAL)
    scenario = load_scenario(str(path))
    assert scenario.name == 'mine'
    assert find_scenario_file(str(path)) == str(path)

    with pytest.raises(ScenarioError, match='no scenario file'):
        load_scenario(str(tmp_path / 'missing.scn'))


def test_scenario_checks_complexity_domain():
    with pytest.raises(ScenarioError, match='waveform.n'):
        Scenario('odd', WaveformModel('odd', 100, 312500.0),
                 BasebandProcessor(1e9), get_complexity_model('fft_radix2'))


def test_report_row():
    scenario = load_scenario('80211ac')
    row = dict(zip(REPORT_COLUMNS, report_row(scenario, scenario.report())))
    assert row['scenario'] == '80211ac'
    assert row['n'] == 512
    assert row['model'] == 'fft_radix2'
    assert row['instr_per_s'] == '1.44e+09'
    assert row['t_comp_s'] == '3.2e-06'
    assert row['sc_throughput_bps'] == '8e+07'
    assert row['sc_efficiency_bps_hz'] == '0.5'
    assert row['classic_rate_bps'] == '1.6e+08'
    assert float(row['shannon_capacity_bps']) == pytest.approx(1.59476e9,
                                                               rel=1e-4)

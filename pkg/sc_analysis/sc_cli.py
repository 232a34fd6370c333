import argparse
import csv
import logging
import sys
from contextlib import contextmanager
from dataclasses import replace
from signal import signal, SIGPIPE, SIG_DFL

from .bench import calibrate_processor, fit_growth, make_plan, measure_all
from .classifier import (
    CapacityQuery, DftConjecture, classify_ofdm, comp_limited
)
from .errors import ScError
from .growth import parse_growth
from .scenario import (
    REPORT_COLUMNS, dump_scenario, load_scenario, report_row
)
from .scmetrics import (
    fft_peak_subcarriers, powers_of_two, sweep_sc_throughput
)
from .waveform import BasebandProcessor

logger = logging.getLogger(__name__)

PROG = 'sc-analysis'

DESCRIPTION = "Spectro-computational analysis of waveforms."

USAGE = """
Scenarios are given as a path to a scenario file or as the name of a bundled
scenario: 80211a, 80211a_equal_resources, 80211ac.

Examples:
    sc-analysis analyze 80211ac
    sc-analysis compare 80211ac 80211a_equal_resources
    sc-analysis classify --ofdm --conjecture nlogn
    sc-analysis classify --b 'N' --t 'N^2'
    sc-analysis sweep 80211ac --n-min 64 --n-max 65536
    sc-analysis bench --impl fft_radix2 --n-list 64,512 --fit

Rates are shown in bits/us and processor rates in instr/us; scenario files
and CSV output use SI units (bits/s, Hz, instr/s).

Exit codes: 0 on success, 2 for usage or configuration errors, 1 for
internal errors.
"""

BENCH_COLUMNS = ['impl', 'n', 'op_count_mul', 'op_count_add', 'wall_time_s',
                 'reps']
SWEEP_COLUMNS = ['n', 'sc_throughput_bps', 'sc_efficiency_bps_hz']
VERDICT_COLUMNS = ['relation', 'limit', 'scalable', 'comp_limited',
                   'rationale']


@contextmanager
def _csv_output(path):
    """Yield a file for CSV output: `path`, or stdout if it is None."""
    if path is None:
        yield sys.stdout
        return
    with open(path, 'w', newline='', encoding='utf-8') as f:
        yield f
    logger.info('wrote %s', path)


def _write_csv(path, fieldnames, rows):
    with _csv_output(path) as f:
        w = csv.DictWriter(f, fieldnames=fieldnames, lineterminator='\n')
        w.writeheader()
        for row in rows:
            w.writerow(row)


def _per_us(value):
    return '%.6g' % (value / 1e6)


def _load(path_or_name, instr_per_us=None):
    scenario = load_scenario(path_or_name)
    if instr_per_us is not None:
        processor = BasebandProcessor.from_instr_per_us(instr_per_us)
        scenario = replace(scenario, processor=processor)
    return scenario


def _print_report(scenario, report):
    waveform = scenario.waveform
    print('Scenario %s: N=%d, M=%d, delta_f=%s MHz, W=%s MHz, T_sym=%s us'
          % (scenario.name, waveform.n_subcarriers,
             waveform.constellation_order,
             _per_us(waveform.subcarrier_spacing_hz),
             _per_us(report.bandwidth_hz),
             '%.6g' % (report.symbol_period_s * 1e6)))
    print('Processor: %s instr/us running %s (%s = %.6g instructions)'
          % ('%.6g' % scenario.processor.instr_per_us,
             scenario.complexity.name, scenario.complexity.symbolic,
             scenario.complexity.instructions(waveform.n_subcarriers)))
    print('  T_comp           %.6g us' % (report.t_comp_s * 1e6))
    print('  min processor    %s instr/us' % _per_us(report.min_instr_per_s))
    print('  A(W)             %s bits/us' % _per_us(report.alg_throughput_bps))
    print('  SC_R             %s bits/us' % _per_us(report.sc_throughput_bps))
    print('  SC_SE            %.6g bits/s/Hz' % report.sc_efficiency_bps_hz)
    print('  R                %s bits/us' % _per_us(report.classic_rate_bps))
    print('  SE               %.6g bits/s/Hz' % report.classic_se_bps_hz)
    print('  bits/instr       %.6g' % report.bits_per_instruction)
    if report.shannon_capacity_bps is not None:
        print('  C                %s bits/us (SNR %.6g, %s)'
              % (_per_us(report.shannon_capacity_bps), report.snr,
                 report.capacity_regime.value))
    if report.keeps_pace:
        print('  keeps pace: yes')
    else:
        print('  keeps pace: no (idle %.6g us per symbol)'
              % (report.idle_time_s * 1e6))


def _report_dict(scenario, report):
    return dict(zip(REPORT_COLUMNS, report_row(scenario, report)))


def cmd_analyze(args):
    scenario = _load(args.scenario, args.instr_per_us)
    report = scenario.report()
    _print_report(scenario, report)
    if args.csv:
        _write_csv(args.csv, REPORT_COLUMNS,
                   [_report_dict(scenario, report)])


def cmd_compare(args):
    scenario_a = _load(args.scenario_a)
    scenario_b = _load(args.scenario_b)
    report_a = scenario_a.report()
    report_b = scenario_b.report()
    classic_gain = report_a.classic_rate_bps / report_b.classic_rate_bps
    sc_gain = report_a.sc_throughput_bps / report_b.sc_throughput_bps

    width = max(len(scenario_a.name), len(scenario_b.name), 12)
    print('%-16s %*s %*s' % ('', width, scenario_a.name,
                             width, scenario_b.name))
    for label, attr in (('R (bits/us)', 'classic_rate_bps'),
                        ('SC_R (bits/us)', 'sc_throughput_bps'),
                        ('A(W) (bits/us)', 'alg_throughput_bps')):
        print('%-16s %*s %*s' % (label, width,
                                 _per_us(getattr(report_a, attr)),
                                 width, _per_us(getattr(report_b, attr))))
    print('classic gain: %.2f' % classic_gain)
    print('SC gain: %.2f' % sc_gain)
    print('SC gain / classic gain: %.2f' % (sc_gain / classic_gain))
    if args.csv:
        _write_csv(args.csv, REPORT_COLUMNS,
                   [_report_dict(scenario_a, report_a),
                    _report_dict(scenario_b, report_b)])


def cmd_classify(args):
    if args.ofdm:
        if args.b is not None or args.t is not None:
            raise ScError('--ofdm cannot be combined with --b/--t')
        if args.conjecture is None:
            raise ScError('--ofdm needs a DFT lower-bound conjecture:'
                          ' --conjecture nlogn|linear[:c]')
        procedures = [parse_growth(text) for text in args.procedure]
        verdict = classify_ofdm(DftConjecture.parse(args.conjecture),
                                procedures)
    else:
        if args.b is None or args.t is None:
            raise ScError('classify needs --b and --t, or --ofdm')
        if args.conjecture is not None or args.procedure:
            raise ScError('--conjecture and --procedure apply to --ofdm only')
        # T is read as the complexity lower bound of the problem
        verdict = comp_limited(CapacityQuery(parse_growth(args.b),
                                             parse_growth(args.t)))
    if args.record:
        sys.stdout.write(verdict.to_record())
    else:
        print(verdict.to_text())
    if args.csv:
        record = dict(line.split(' = ', 1)
                      for line in verdict.to_record().splitlines())
        _write_csv(args.csv, VERDICT_COLUMNS, [record])


def cmd_sweep(args):
    scenario = _load(args.scenario, args.instr_per_us)
    n_range = powers_of_two(args.n_min, args.n_max)
    waveform = scenario.waveform
    rows = sweep_sc_throughput(
        waveform.constellation_order, waveform.subcarrier_spacing_hz,
        scenario.processor.instr_per_s, scenario.complexity, n_range
    )
    peak = max(rows, key=lambda row: row.sc_throughput_bps)
    logger.info('peak SC throughput %s bits/us at N=%d',
                _per_us(peak.sc_throughput_bps), peak.n)
    if scenario.complexity.name == 'fft_radix2':
        logger.info('radix-2 SC throughput is maximal near N=%.0f',
                    fft_peak_subcarriers(scenario.processor.instr_per_s,
                                         waveform.symbol_period_s))
    _write_csv(args.csv, SWEEP_COLUMNS, (
        {'n': row.n,
         'sc_throughput_bps': '%.6g' % row.sc_throughput_bps,
         'sc_efficiency_bps_hz': '%.6g' % row.sc_efficiency_bps_hz}
        for row in rows
    ))


def _parse_n_list(text):
    try:
        sizes = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise ScError('--n-list must be comma-separated integers, got %r'
                      % text)
    if not sizes:
        raise ScError('--n-list is empty')
    return sizes


def cmd_bench(args):
    sizes = _parse_n_list(args.n_list)
    # Reject invalid implementations and lengths before timing anything
    for n in sizes:
        make_plan(args.impl, n)
    samples = measure_all(args.impl, sizes, repetitions=args.reps,
                          seed=args.seed, progress=not args.quiet)
    _write_csv(args.csv, BENCH_COLUMNS, (
        {'impl': sample.impl_name, 'n': sample.n,
         'op_count_mul': sample.op_count_mul,
         'op_count_add': sample.op_count_add,
         'wall_time_s': '%.6g' % sample.wall_time_s,
         'reps': sample.repetitions}
        for sample in samples
    ))
    if args.fit:
        result = fit_growth(samples, counter=args.counter)
        print('fit (%s): %s, %s (residual %.3g, log-log slope %.3f)'
              % (args.counter, result.best_model.value, result.as_growth(),
                 result.residual, result.loglog_slope))
    if args.calibrate:
        rate = calibrate_processor(samples)
        print('calibrated processor rate: %s instr/us' % _per_us(rate))


def cmd_dump(args):
    text = dump_scenario(_load(args.scenario))
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info('wrote %s', args.output)
    else:
        sys.stdout.write(text)


def _build_parser():
    # Global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--csv', metavar='PATH', default=argparse.SUPPRESS,
                        help="also write the results as CSV to PATH")
    common.add_argument('-q', '--quiet', action='store_true',
                        default=argparse.SUPPRESS,
                        help="only log warnings and hide progress bars")

    parser = argparse.ArgumentParser(
        prog=PROG, description=DESCRIPTION, epilog=USAGE,
        formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument('--csv', metavar='PATH',
                        help="also write the results as CSV to PATH")
    parser.add_argument('-q', '--quiet', action='store_true',
                        help="only log warnings and hide progress bars")
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True

    analyze = subparsers.add_parser(
        'analyze', parents=[common], help="report every metric of a scenario"
    )
    analyze.add_argument('scenario', help="scenario file or bundled name")
    analyze.add_argument('--instr-per-us', type=float,
                         help="override the processor rate, in instr/us")
    analyze.set_defaults(func=cmd_analyze)

    compare = subparsers.add_parser(
        'compare', parents=[common],
        help="gains of scenario A over scenario B, classic and SC"
    )
    compare.add_argument('scenario_a')
    compare.add_argument('scenario_b')
    compare.set_defaults(func=cmd_compare)

    classify = subparsers.add_parser(
        'classify', parents=[common],
        help="decide scalability and the comp-limited regime"
    )
    classify.add_argument('--b', help="bits growth function, such as 'N'")
    classify.add_argument('--t', help="complexity growth function,"
                                      " such as 'N*log'")
    classify.add_argument('--ofdm', action='store_true',
                          help="classify uncoded OFDM")
    classify.add_argument('--conjecture',
                          help="DFT lower bound: nlogn, linear or linear:c")
    classify.add_argument('--procedure', action='append', default=[],
                          help="extra per-symbol procedure cost for --ofdm")
    classify.add_argument('--record', action='store_true',
                          help="print a key = value record")
    classify.set_defaults(func=cmd_classify)

    sweep = subparsers.add_parser(
        'sweep', parents=[common],
        help="SC throughput over powers of two of N, as CSV"
    )
    sweep.add_argument('scenario')
    sweep.add_argument('--n-min', type=int, default=64)
    sweep.add_argument('--n-max', type=int, default=65536)
    sweep.add_argument('--instr-per-us', type=float,
                       help="override the processor rate, in instr/us")
    sweep.set_defaults(func=cmd_sweep)

    bench = subparsers.add_parser(
        'bench', parents=[common],
        help="count and time instrumented DFT implementations, as CSV"
    )
    bench.add_argument('--impl', required=True,
                       help="dft_naive or fft_radix2")
    bench.add_argument('--n-list', default='64,128,256,512,1024',
                       help="comma-separated transform lengths")
    bench.add_argument('--reps', type=int, default=5,
                       help="repetitions per length (at least 3)")
    bench.add_argument('--seed', type=int, default=0,
                       help="seed of the input vectors")
    bench.add_argument('--fit', action='store_true',
                       help="fit the operation counts to a growth model")
    bench.add_argument('--counter', choices=['mul', 'add', 'total'],
                       default='mul', help="counter used by --fit")
    bench.add_argument('--calibrate', action='store_true',
                       help="estimate the processor rate from the timings")
    bench.set_defaults(func=cmd_bench)

    dump = subparsers.add_parser(
        'dump', parents=[common],
        help="write a scenario in canonical file form"
    )
    dump.add_argument('scenario')
    dump.add_argument('-o', '--output', help="file to write instead of stdout")
    dump.set_defaults(func=cmd_dump)
    return parser


def _main(*vargs):
    args = _build_parser().parse_args(vargs)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format='%(levelname)s %(name)s: %(message)s'
    )
    args.func(args)


def main(argv=None):
    # Exit quietly when a reader such as `head` closes the pipe early
    signal(SIGPIPE, SIG_DFL)
    if argv is None:
        argv = sys.argv[1:]
    try:
        _main(*argv)
    except ScError as e:
        print("%s: %s" % (PROG, e), file=sys.stderr)
        sys.exit(2)
    except Exception as e:
        logger.debug('internal error', exc_info=True)
        print("%s: internal error: %s" % (PROG, e), file=sys.stderr)
        sys.exit(1)

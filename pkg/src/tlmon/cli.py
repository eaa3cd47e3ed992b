"""Command-line NDJSON stream monitor.

    tlmon run -s '(always[0:5]{open} and not {suppr}) -> {warn}' trace.jsonl
    tlmon bench --generate absentaq --bound 100 --count 1000000
    tlmon dump-graph -s '{p} since {q}'
"""

import argparse
import json
import random
import sys
import time

from .errors import MonitorError
from .messages import decode_message, iter_ndjson
from .monitor import make_monitor
from .options import MonitorOptions

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2

BENCH_SHAPES = {
    # Timescales-style property shapes, parameterized by the bound
    "absentaq": "(once[0:{b}]{{q}}) -> (not {{p}})",
    "alwaysbr": "{{r}} -> always[0:{b}]{{b}}",
    "recurbqr": "{{r}} -> once[0:{b}]{{q}}",
}


def build_arg_parser():
    parser = argparse.ArgumentParser(prog="tlmon",
                                     description="stream temporal logic monitor")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spec_flags(p):
        group = p.add_mutually_exclusive_group()
        group.add_argument("--spec", "-s", help="specification text")
        group.add_argument("--spec-file", help="file containing the specification")

    def add_option_flags(p):
        model = p.add_mutually_exclusive_group()
        model.add_argument("--discrete", action="store_true", default=True)
        model.add_argument("--dense", action="store_true")
        p.add_argument("--semantics", choices=["bool", "robust"], default="bool")
        p.add_argument("--timefield", default="time", metavar="NAME")
        cond = p.add_mutually_exclusive_group()
        cond.add_argument("--condense", dest="condense", action="store_true",
                          default=True)
        cond.add_argument("--no-condense", dest="condense", action="store_false")
        p.add_argument("--bits", type=int, default=16, metavar="K")

    run = sub.add_parser("run", help="stream a log through a monitor")
    add_spec_flags(run)
    add_option_flags(run)
    run.add_argument("input", nargs="?", help="NDJSON log (default stdin)")
    run.add_argument("--output", metavar="PATH", help="verdict output (default stdout)")
    run.add_argument("--fail-fast", action="store_true",
                     help="stop at the first violation")
    run.add_argument("--dump-graph", action="store_true",
                     help="print the compiled network to stderr before running")

    bench = sub.add_parser("bench", help="measure per-message processing time")
    add_spec_flags(bench)
    add_option_flags(bench)
    bench.add_argument("input", nargs="?", help="NDJSON log to replay")
    bench.add_argument("--generate", choices=sorted(BENCH_SHAPES),
                       help="generate a synthetic trace for a property shape")
    bench.add_argument("--bound", type=int, default=10)
    bench.add_argument("--count", type=int, default=1_000_000)
    bench.add_argument("--seed", type=int, default=7)
    bench.add_argument("--output", metavar="PATH")

    dump = sub.add_parser("dump-graph", help="print the compiled network")
    add_spec_flags(dump)
    add_option_flags(dump)
    return parser


def load_options(args):
    return MonitorOptions(
        time_model="dense" if args.dense else "discrete",
        semantics="robust" if args.semantics == "robust" else "boolean",
        condense=args.condense,
        time_field=args.timefield,
        bits=args.bits,
    )


def load_spec(args):
    if args.spec is not None:
        return args.spec
    if args.spec_file is not None:
        with open(args.spec_file, encoding="utf-8") as handle:
            return handle.read()
    raise MonitorError("one of --spec/--spec-file is required")


def is_violation(value, robust):
    if robust:
        return value < 0
    return value is False


def run_command(args, stdin, stdout, stderr):
    try:
        options = load_options(args)
        monitor = make_monitor(load_spec(args), options)
    except MonitorError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_ERROR
    if args.dump_graph:
        print(monitor.network.describe(), file=stderr)
    robust = options.semantics == "robust"
    violated = False

    def handle(lines, out):
        nonlocal violated
        for line_number, line in iter_ndjson(lines):
            try:
                msg = decode_message(line, options)
                verdict = monitor.update(msg)
            except MonitorError as exc:
                raise MonitorError(f"line {line_number}: {exc}") from None
            verdicts = verdict if isinstance(verdict, list) else \
                [] if verdict is None else [verdict]
            for entry in verdicts:
                out.write(json.dumps(entry) + "\n")
                if is_violation(entry["value"], robust):
                    violated = True
                    if args.fail_fast:
                        return

    try:
        out = open(args.output, "w", encoding="utf-8") if args.output else stdout
        try:
            if args.input:
                with open(args.input, encoding="utf-8") as lines:
                    handle(lines, out)
            else:
                handle(stdin, out)
        finally:
            if args.output:
                out.close()
    except (OSError, MonitorError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_ERROR
    return EXIT_VIOLATION if violated else EXIT_OK


def generate_trace(shape, bound, count, seed):
    """Synthetic Timescales-style NDJSON lines for a property shape."""
    rng = random.Random(seed)
    lines = []
    if shape == "absentaq":
        # q fires rarely; p mostly absent afterwards
        for _ in range(count):
            q = rng.random() < 0.01
            p = rng.random() < 0.001
            lines.append('{"p": %s, "q": %s}' % (_js(p), _js(q)))
    elif shape == "alwaysbr":
        for _ in range(count):
            r = rng.random() < 0.005
            b = rng.random() < 0.98
            lines.append('{"b": %s, "r": %s}' % (_js(b), _js(r)))
    else:
        for _ in range(count):
            r = rng.random() < 0.005
            q = rng.random() < 0.3
            lines.append('{"q": %s, "r": %s}' % (_js(q), _js(r)))
    return lines


def _js(flag):
    return "true" if flag else "false"


def bench_spec(shape, bound):
    return BENCH_SHAPES[shape].format(b=bound)


def run_bench(spec, lines, options):
    """Replay lines through a fresh monitor; returns the timing report."""
    monitor = make_monitor(spec, options)
    decode_ns = 0
    engine_ns = 0
    count = 0
    clock = time.perf_counter_ns
    wall_start = clock()
    for line in lines:
        t0 = clock()
        msg = decode_message(line, options)
        t1 = clock()
        monitor.update(msg)
        t2 = clock()
        decode_ns += t1 - t0
        engine_ns += t2 - t1
        count += 1
    wall_ns = clock() - wall_start
    if count == 0:
        raise MonitorError("no messages")
    return {
        "messages": count,
        "wall_ns": wall_ns,
        "ns_per_message": wall_ns / count,
        "decode_ns": decode_ns,
        "engine_ns": engine_ns,
    }


def bench_command(args, stdout, stderr):
    try:
        options = load_options(args)
        if args.generate:
            spec = args.spec if args.spec else bench_spec(args.generate, args.bound)
            lines = generate_trace(args.generate, args.bound, args.count, args.seed)
        else:
            spec = load_spec(args)
            if not args.input:
                raise MonitorError("bench needs an input file or --generate")
            with open(args.input, encoding="utf-8") as handle:
                lines = [line for _n, line in iter_ndjson(handle)]
        report = run_bench(spec, lines, options)
    except MonitorError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_ERROR
    text = json.dumps(report, indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text, file=stdout)
    return EXIT_OK


def dump_command(args, stdout, stderr):
    try:
        monitor = make_monitor(load_spec(args), load_options(args))
    except MonitorError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_ERROR
    print(monitor.network.describe(), file=stdout)
    return EXIT_OK


def main(argv=None, stdin=None, stdout=None, stderr=None):
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    if args.command == "run":
        return run_command(args, stdin, stdout, stderr)
    if args.command == "bench":
        return bench_command(args, stdout, stderr)
    return dump_command(args, stdout, stderr)


if __name__ == "__main__":
    sys.exit(main())

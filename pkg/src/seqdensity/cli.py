"""Command-line interface: estimate from data, simulate sources, run the adversary.

Data goes to stdout (or --out); diagnostics go to stderr, so pipelines
compose.  Exit codes: 0 success, 1 input/runtime error, 2 usage error,
3 empty input, 4 estimate is the zero function (all levels rejected;
the density is still emitted), 5 adversary step budget exhausted
(partial transcript still emitted).
"""

import argparse
import sys

from .adversary import (
    AdversaryError,
    adversarial_sequence,
    fixed_level_scheme,
    oscillation_table,
    phi_star_scheme,
)
from .budget import VariationBudget
from .densities import exponential_density, normal_density, uniform_density
from .empirical import SampleBuffer
from .estimator import EstimatorConfig, default_depth, estimate
from .evaluation import convergence_report
from .generators import (
    iid_source,
    markov_source,
    rademacher_density,
    van_der_corput_source,
)
from .validation import SampleRangeError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_EMPTY_INPUT = 3
EXIT_ZERO_ESTIMATE = 4
EXIT_BUDGET_EXHAUSTED = 5

_STOCHASTIC_SOURCES = ("uniform", "normal", "exponential", "rademacher", "ar1")


class _CliError(Exception):
    def __init__(self, message, code=EXIT_ERROR):
        super().__init__(message)
        self.code = code


def _read_config(path):
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise _CliError(f"{path}:{lineno}: expected key=value", EXIT_USAGE)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(args, argv, subparser):
    """Merge --config file entries into parsed args; explicit flags win."""
    entries = _read_config(args.config)
    actions = {a.dest: a for a in subparser._actions}
    given = {tok.split("=", 1)[0] for tok in argv if tok.startswith("--")}
    for key, raw in entries.items():
        action = actions.get(key)
        if action is None or not action.option_strings:
            raise _CliError(f"unknown config key {key!r}", EXIT_USAGE)
        if any(opt in given for opt in action.option_strings):
            continue
        value = action.type(raw) if action.type else raw
        if action.choices and value not in action.choices:
            raise _CliError(
                f"config key {key!r}: {value!r} not one of {sorted(action.choices)}", EXIT_USAGE
            )
        setattr(args, key, value)


def _depth_schedule(spec):
    if spec == "auto":
        return default_depth
    try:
        fixed = int(spec)
    except ValueError:
        raise _CliError(f"--depth must be 'auto' or an integer, got {spec!r}", EXIT_USAGE)
    if fixed < 1:
        raise _CliError("--depth must be >= 1", EXIT_USAGE)
    return lambda n: fixed


def _build_config(alpha_spec, depth_spec) -> EstimatorConfig:
    try:
        budget = VariationBudget.parse(alpha_spec)
    except (ValueError, OSError) as exc:
        raise _CliError(f"bad --alpha {alpha_spec!r}: {exc}", EXIT_USAGE)
    return EstimatorConfig(budget=budget, depth_schedule=_depth_schedule(depth_spec))


def _write_output(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_samples(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _CliError(str(exc))
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for token in line.split(","):
            token = token.strip()
            if not token:
                continue
            try:
                values.append(float(token))
            except ValueError:
                raise _CliError(f"line {lineno}: could not parse {token!r} as a number")
    return values


# -- estimate -------------------------------------------------------------------


def _cmd_estimate(args):
    values = _read_samples(args.input)
    if not values:
        raise _CliError("no input samples", EXIT_EMPTY_INPUT)
    buffer = SampleBuffer()
    try:
        buffer.extend(values)
    except SampleRangeError as exc:
        raise _CliError(str(exc))
    config = _build_config(args.alpha, args.depth)
    report = estimate(buffer, config)
    text = report.density.to_json() + "\n" if args.format == "json" else report.density.to_csv()
    _write_output(text, args.out)

    print(f"n={report.n} b_n={report.depth} k_n={report.level}", file=sys.stderr)
    for k in sorted(report.variation_table, reverse=True):
        profile = report.variation_table[k]
        cols = " ".join(
            f"V[-{i},{i})={profile[i - 1]:g}" for i in range(1, min(len(profile), args.window) + 1)
        )
        print(f"level {k}: {cols}", file=sys.stderr)
    return EXIT_OK if report.level is not None else EXIT_ZERO_ESTIMATE


# -- simulate -------------------------------------------------------------------


def _make_source(spec, seed):
    kind, _, rest = spec.partition(":")
    if kind in _STOCHASTIC_SOURCES and seed is None:
        raise _CliError(f"--seed is required for stochastic source {spec!r}", EXIT_USAGE)
    if kind == "uniform":
        return iid_source(uniform_density(0.0, 1.0), seed)
    if kind == "normal":
        return iid_source(normal_density(0.0, 1.0), seed)
    if kind == "exponential":
        return iid_source(exponential_density(1.0), seed)
    if kind == "rademacher":
        try:
            level = int(rest)
        except ValueError:
            raise _CliError("use rademacher:K with an integer K", EXIT_USAGE)
        return iid_source(rademacher_density(level), seed)
    if kind == "ar1":
        try:
            rho_s, sd_s = rest.split(",")
            return markov_source("ar1", seed, rho=float(rho_s), sd=float(sd_s))
        except ValueError as exc:
            raise _CliError(f"use ar1:RHO,SD ({exc})", EXIT_USAGE)
    if kind == "vdc":
        return van_der_corput_source()
    raise _CliError(f"unknown source {spec!r}", EXIT_USAGE)


def _cmd_simulate(args):
    source = _make_source(args.source, args.seed)
    try:
        checkpoints = [int(tok) for tok in args.n.split(",") if tok.strip()]
    except ValueError:
        raise _CliError(f"bad --n {args.n!r}: expected comma-separated integers", EXIT_USAGE)
    config = _build_config(args.alpha, args.depth)
    try:
        report = convergence_report(source, config, checkpoints)
    except ValueError as exc:
        raise _CliError(str(exc), EXIT_USAGE)
    text = report.to_json() + "\n" if args.format == "json" else report.to_csv()
    _write_output(text, args.out)
    return EXIT_OK


# -- adversary ------------------------------------------------------------------


def _make_scheme(spec):
    kind, _, rest = spec.partition(":")
    if kind == "phi-star":
        try:
            return phi_star_scheme(VariationBudget.parse(rest))
        except (ValueError, OSError) as exc:
            raise _CliError(f"bad scheme {spec!r}: {exc}", EXIT_USAGE)
    if kind == "fixed-k":
        try:
            return fixed_level_scheme(int(rest))
        except ValueError:
            raise _CliError("use fixed-k:K with an integer K", EXIT_USAGE)
    raise _CliError(f"unknown scheme {spec!r}", EXIT_USAGE)


def _cmd_adversary(args):
    if args.levels < 2:
        raise _CliError("--levels must be at least 2", EXIT_USAGE)
    scheme = _make_scheme(args.scheme)
    try:
        transcript = adversarial_sequence(scheme, args.levels, step_budget=args.budget)
    except AdversaryError as exc:
        _write_output(exc.transcript.to_json(sequence_cap=args.sequence_cap) + "\n", args.out)
        print(f"adversary aborted: {exc}", file=sys.stderr)
        return EXIT_BUDGET_EXHAUSTED
    _write_output(transcript.to_json(sequence_cap=args.sequence_cap) + "\n", args.out)
    for k1, k2, value in oscillation_table(transcript, scheme):
        print(f"oscillation level {k1} -> {k2}: {value:.6f}", file=sys.stderr)
    return EXIT_OK


# -- entry point ----------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="seqdensity",
        description="Adaptive dyadic-histogram density estimation for numerical sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {}

    p_est = sub.add_parser("estimate", help="estimate a density from a stream of numbers")
    p_est.add_argument("input", nargs="?", default="-", help="input file, or - for stdin")
    p_est.add_argument("--alpha", default="const:3", help="budget spec: const:V | linear:A,B | exp:A,R | table:PATH")
    p_est.add_argument("--depth", default="auto", help="depth schedule: auto (floor log2 n) or a fixed integer")
    p_est.add_argument("--format", choices=("json", "csv"), default="json")
    p_est.add_argument("--window", type=int, default=4, help="widest window shown in diagnostics")
    p_est.add_argument("--seed", type=int, default=None, help="accepted for interface uniformity; unused")
    p_est.add_argument("--config", help="flat key=value defaults file (flags win)")
    p_est.add_argument("--out", help="write the density here instead of stdout")
    p_est.set_defaults(func=_cmd_estimate)

    p_sim = sub.add_parser("simulate", help="run the estimator along a generated sequence")
    p_sim.add_argument("--source", required=True, help="uniform | normal | exponential | rademacher:K | ar1:RHO,SD | vdc")
    p_sim.add_argument("--n", required=True, help="comma-separated checkpoint sample counts")
    p_sim.add_argument("--seed", type=int, default=None, help="seed (required for stochastic sources)")
    p_sim.add_argument("--alpha", default="const:3")
    p_sim.add_argument("--depth", default="auto")
    p_sim.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sim.add_argument("--config", help="flat key=value defaults file (flags win)")
    p_sim.add_argument("--out")
    p_sim.set_defaults(func=_cmd_simulate)

    p_adv = sub.add_parser("adversary", help="construct a sequence defeating a scheme")
    p_adv.add_argument("--scheme", required=True, help="phi-star:<alpha spec> | fixed-k:K")
    p_adv.add_argument("--levels", type=int, required=True, help="number of target levels (>= 2)")
    p_adv.add_argument("--budget", type=int, default=10**6, help="appended terms allowed per level")
    p_adv.add_argument("--sequence-cap", type=int, default=None, help="elide the sequence from JSON above this length")
    p_adv.add_argument("--config", help="flat key=value defaults file (flags win)")
    p_adv.add_argument("--out")
    p_adv.set_defaults(func=_cmd_adversary)

    commands["estimate"] = p_est
    commands["simulate"] = p_sim
    commands["adversary"] = p_adv
    return parser, commands


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser, commands = _build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "config", None):
            _apply_config(args, argv, commands[args.command])
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except SampleRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

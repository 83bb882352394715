"""Command-line interface.

Subcommands: sample, exact, oracle, sweep, graphs.  Every run resolves its
configuration (rational p, prime-certified moduli, seed) and logs it in the
output header.  Exit codes: 0 success, 1 parameter error, 2 assertion or
acceptance failure, 3 resource limit.

A key=value config file (--config) supplies defaults; explicit flags win.
The default seed comes from the MODSETLAB_SEED environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import exact, experiments, graphs
from .errors import ParameterError, ResourceLimitError
from .experiments import RegimeSpec, is_prime, next_prime, realized_p, run_sweep

EXIT_OK = 0
EXIT_PARAMETER = 1
EXIT_ASSERTION = 2
EXIT_RESOURCE = 3

EXACT_FORMULAS = ("path", "cycle", "lucas", "F", "ESc", "PdiffMissing",
                  "PdiffComposite", "PbothSums", "EDc", "gauges", "targets")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 by default; we reserve 2 for assertions
        raise ParameterError(message)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ParameterError(f"cannot parse probability {text!r}: {e}") from e


def _default_seed() -> int:
    return int(os.environ.get("MODSETLAB_SEED", "0"))


def _rational_json(name: str, value: Fraction, params: dict) -> dict:
    return {
        "formula": name,
        "params": params,
        "numerator": str(value.numerator),
        "denominator": str(value.denominator),
        "value": float(value),
    }


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def build_parser() -> _Parser:
    parser = _Parser(prog="modsetlab",
                     description="sumset/difference-set experiments on random subsets of Z/nZ")
    parser.add_argument("--config", help="key=value file with default flag values")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common_sampling(sp):
        sp.add_argument("--p", type=_fraction, help="probability as NUM/DEN or decimal")
        sp.add_argument("--regime", choices=experiments.REGIMES)
        sp.add_argument("--delta", type=float)
        sp.add_argument("--c", type=float)
        sp.add_argument("--gamma", type=float)
        sp.add_argument("--trials", type=int, default=100)
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: available parallelism)")
        sp.add_argument("--kmax", type=int, nargs="?", const=5, default=0,
                        help="collect x_k/y_k up to this k (bare flag: 5; absent: off)")
        sp.add_argument("--require-prime", action="store_true",
                        help="advance each n to the next prime and certify it")
        sp.add_argument("--out", help="CSV output path (default: stdout)")

    sp = sub.add_parser("sample", help="sample trials at a single modulus")
    sp.add_argument("--n", type=int, required=True)
    add_common_sampling(sp)

    sp = sub.add_parser("sweep", help="Monte Carlo sweep over moduli with a report")
    sp.add_argument("--n", type=int, nargs="+", required=True)
    add_common_sampling(sp)
    sp.add_argument("--report", help="JSON report path (default: stdout)")

    sp = sub.add_parser("exact", help="evaluate one closed form exactly")
    sp.add_argument("formula", choices=EXACT_FORMULAS)
    sp.add_argument("--n", type=int)
    sp.add_argument("--p", type=_fraction)
    sp.add_argument("--k", type=int)
    sp.add_argument("--regime", choices=("fast", "critical", "slow"))
    sp.add_argument("--delta", type=float)
    sp.add_argument("--c", type=float)

    sp = sub.add_parser("oracle", help="compare closed forms against 2^n enumeration")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=_fraction, required=True)
    sp.add_argument("--event", choices=("diff-missing", "sum-missing", "both-sums-missing"))
    sp.add_argument("--moments", action="store_true")
    sp.add_argument("--k", type=int)
    sp.add_argument("--i", type=int)
    sp.add_argument("--j", type=int)
    sp.add_argument("--include-empty", action="store_true",
                    help="include A = empty set in the event probability")

    sp = sub.add_parser("graphs", help="build and classify a pair graph")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--mode", choices=("sum", "diff"), required=True)
    sp.add_argument("--i", type=int)
    sp.add_argument("--j", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--dot", action="store_true", help="emit DOT instead of plain text")

    return parser


def _load_config_argv(argv: list[str]) -> list[str]:
    """Turn a --config file into leading flags so explicit flags override them."""
    if "--config" not in argv:
        return argv
    at = argv.index("--config")
    if at + 1 >= len(argv):
        raise ParameterError("--config needs a path")
    path = argv[at + 1]
    extra: list[str] = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParameterError(f"config line is not key=value: {line!r}")
            key, _, value = line.partition("=")
            key = key.strip().replace("_", "-")
            value = value.strip()
            flag = f"--{key}"
            if value.lower() in ("true", "yes", "on"):
                extra.append(flag)
            elif value.lower() in ("false", "no", "off"):
                continue
            else:
                extra.extend([flag] + value.split())
    rest = argv[:at] + argv[at + 2:]
    # subcommand must stay first; config flags go right after it so that
    # explicitly passed flags (later in argv) take precedence
    if rest and not rest[0].startswith("-"):
        return [rest[0]] + extra + rest[1:]
    return extra + rest


def _build_regime_spec(args, n_values: list[int]) -> tuple[RegimeSpec, dict]:
    seed = args.seed if args.seed is not None else _default_seed()
    workers = args.workers if args.workers is not None else (os.cpu_count() or 1)
    if args.require_prime:
        n_values = [next_prime(n) for n in n_values]
    regime = args.regime
    p_fixed = None
    if regime is None:
        if args.p is None:
            raise ParameterError("need either --p or --regime")
        regime = "fixed"
        p_fixed = args.p
    elif regime == "fixed":
        if args.p is None:
            raise ParameterError("fixed regime needs --p")
        p_fixed = args.p
    spec = RegimeSpec(
        regime=regime, n_values=tuple(n_values), trials=args.trials, base_seed=seed,
        delta=args.delta, c=args.c, gamma=args.gamma, p_fixed=p_fixed,
        require_prime=args.require_prime, k_max=args.kmax, workers=workers,
    )
    config = {
        "command": args.command,
        "regime": spec.regime,
        "n_values": list(spec.n_values),
        "p": {str(n): _frac_str(realized_p(spec, n)) for n in spec.n_values},
        "trials": spec.trials,
        "seed": spec.base_seed,
        "workers": spec.workers,
        "k_max": spec.k_max,
        "require_prime": spec.require_prime,
        "prime_certified": {str(n): is_prime(n) for n in spec.n_values},
        "delta": spec.delta, "c": spec.c, "gamma": spec.gamma,
        "schema": experiments.SCHEMA_VERSION,
    }
    return spec, config


def _write_csv(result, config, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            experiments.write_trials_csv(result.records, fh, config)
    else:
        experiments.write_trials_csv(result.records, sys.stdout, config)


def cmd_sample(args) -> int:
    spec, config = _build_regime_spec(args, [args.n])
    result = run_sweep(spec)
    _write_csv(result, config, args.out)
    agg = result.aggregates[0]
    print(f"n={agg.n} trials={agg.trials} mean|A|={agg.mean_card:.2f} "
          f"mean S={agg.mean_S:.2f} mean D={agg.mean_D:.2f} "
          f"mean ratio={agg.mean_ratio if agg.mean_ratio is None else round(agg.mean_ratio, 6)}",
          file=sys.stderr)
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec, config = _build_regime_spec(args, list(args.n))
    result = run_sweep(spec)
    if args.out:
        _write_csv(result, config, args.out)
    report = experiments.report_as_dict(result, spec, config)
    text = json.dumps(report, indent=2)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _need(args, *names):
    missing = [f"--{x}" for x in names if getattr(args, x) is None]
    if missing:
        raise ParameterError(f"formula {args.formula!r} needs {', '.join(missing)}")


def cmd_exact(args) -> int:
    f = args.formula
    if f == "path":
        _need(args, "n", "k")
        out = _rational_json(f, Fraction(exact.path_count(args.n, args.k)),
                             {"m": args.n, "r": args.k})
    elif f == "cycle":
        _need(args, "n", "k")
        out = _rational_json(f, Fraction(exact.cycle_count(args.n, args.k)),
                             {"n": args.n, "k": args.k})
    elif f == "lucas":
        _need(args, "n")
        out = _rational_json(f, Fraction(exact.lucas(args.n)), {"n": args.n})
    elif f == "F":
        _need(args, "n", "p")
        out = _rational_json(f, exact.f_series(args.n, args.p),
                             {"n": args.n, "p": _frac_str(args.p)})
    elif f == "ESc":
        _need(args, "n", "p")
        out = _rational_json(f, exact.expected_missing_sums(args.n, args.p),
                             {"n": args.n, "p": _frac_str(args.p)})
        asym = exact.expected_missing_sums_asymptotic(args.n, args.p)
        out["asymptotic_form"] = _frac_str(asym)
    elif f == "PdiffMissing":
        _need(args, "n", "p")
        out = _rational_json(f, exact.prob_diff_missing(args.n, args.p),
                             {"n": args.n, "p": _frac_str(args.p)})
    elif f == "PdiffComposite":
        _need(args, "n", "k", "p")
        out = _rational_json(f, exact.prob_diff_missing_composite(args.n, args.k, args.p),
                             {"n": args.n, "k": args.k, "p": _frac_str(args.p)})
    elif f == "PbothSums":
        _need(args, "n", "p")
        out = _rational_json(f, exact.prob_both_sums_missing(args.n, args.p),
                             {"n": args.n, "p": _frac_str(args.p)})
    elif f == "EDc":
        _need(args, "n", "p")
        rec = exact.expected_missing_diffs(args.n, args.p)
        out = _rational_json(f, rec.value, {"n": args.n, "p": _frac_str(args.p)})
        out["bound_2nF"] = _frac_str(rec.bound)
    elif f == "gauges":
        _need(args, "n", "p")
        g = exact.gauge_functions(args.n, args.p)
        out = {"formula": f, "params": {"n": args.n, "p": str(args.p)},
               "G": g.G, "h": g.h, "log_G": g.log_G, "log_h": g.log_h}
    elif f == "targets":
        _need(args, "n", "regime")
        tg = exact.theoretical_targets(args.regime, args.n, c=args.c, delta=args.delta)
        out = {"formula": f,
               "params": {"n": args.n, "regime": args.regime, "c": args.c,
                          "delta": args.delta},
               "S_target": tg.S_target, "D_target": tg.D_target,
               "ratio_target": tg.ratio_target}
    else:  # pragma: no cover - choices guard this
        raise ParameterError(f"unknown formula {f!r}")
    print(json.dumps(out, indent=2))
    return EXIT_OK


def _comparison(name: str, oracle_value: Fraction, closed: Fraction,
                asserted: bool) -> dict:
    return {
        "comparison": name,
        "oracle": _frac_str(oracle_value),
        "closed_form": _frac_str(closed),
        "equal": oracle_value == closed,
        "delta": _frac_str(oracle_value - closed),
        "asserted": asserted,
    }


def cmd_oracle(args) -> int:
    n, p = args.n, args.p
    q = 1 - p
    comparisons: list[dict] = []
    if args.moments:
        mom = graphs.oracle_moments(n, p)
        if n % 2 == 1:
            comparisons.append(_comparison(
                "E_Sc", mom.E_Sc, exact.expected_missing_sums(n, p), asserted=True))
        if is_prime(n):
            closed_dc = (n - 1) * exact.prob_diff_missing(n, p) + n * q ** n
            comparisons.append(_comparison("E_Dc", mom.E_Dc, closed_dc, asserted=True))
        out = {"n": n, "p": _frac_str(p), "moments": {
            "E_Sc": _frac_str(mom.E_Sc), "E_Dc": _frac_str(mom.E_Dc),
            "Var_Sc": _frac_str(mom.Var_Sc), "Var_Dc": _frac_str(mom.Var_Dc)},
            "comparisons": comparisons}
    elif args.event:
        include_empty = bool(args.include_empty)
        if args.event == "diff-missing":
            if args.k is None:
                raise ParameterError("diff-missing needs --k")
            value = graphs.oracle_event_probability(
                n, p, graphs.event_diff_missing(args.k), include_empty_set=include_empty)
            if is_prime(n):
                closed = exact.prob_diff_missing(n, p)
                if include_empty:
                    closed += q ** n  # empty-set bridge
                comparisons.append(_comparison("P(k not in A-A)", value, closed, True))
            else:
                closed = exact.prob_diff_missing_composite(n, args.k, p)
                comparisons.append(_comparison(
                    "P(k not in A-A) [per-cycle-nonempty form; not asserted]",
                    value, closed, False))
        elif args.event == "sum-missing":
            if args.i is None:
                raise ParameterError("sum-missing needs --i")
            value = graphs.oracle_event_probability(
                n, p, graphs.event_sum_missing(args.i), include_empty_set=include_empty)
            if n % 2 == 1:
                closed = exact.expected_missing_sums(n, p) / n
                comparisons.append(_comparison("P(i not in A+A)", value, closed, True))
        else:
            if args.i is None or args.j is None:
                raise ParameterError("both-sums-missing needs --i and --j")
            value = graphs.oracle_event_probability(
                n, p, graphs.event_sums_missing(args.i, args.j),
                include_empty_set=include_empty)
            if is_prime(n):
                closed = exact.prob_both_sums_missing(n, p)
                comparisons.append(_comparison(
                    "P(i,j not in A+A)", value, closed, True))
        out = {"n": n, "p": _frac_str(p), "event": args.event,
               "include_empty_set": include_empty,
               "oracle": _frac_str(value), "comparisons": comparisons}
    else:
        raise ParameterError("oracle needs --moments or --event")
    print(json.dumps(out, indent=2))
    failed = [c for c in comparisons if c["asserted"] and not c["equal"]]
    return EXIT_ASSERTION if failed else EXIT_OK


def cmd_graphs(args) -> int:
    if args.mode == "sum":
        if args.i is None or args.j is None:
            raise ParameterError("sum mode needs --i and --j")
        g = graphs.build_sum_graph(args.n, args.i, args.j)
        title = f"sum graph n={args.n} targets=({args.i},{args.j})"
    else:
        if args.k is None:
            raise ParameterError("diff mode needs --k")
        g = graphs.build_diff_graph(args.n, args.k)
        title = f"difference graph n={args.n} k={args.k}"
    kind = g.kind
    if args.dot:
        lines = [f"graph modset {{  // {title}; kind={kind.kind}"]
        lines += [f"  {a} -- {b};" for a, b in g.edges]
        lines.append("}")
        print("\n".join(lines))
    else:
        print(title)
        desc = kind.kind
        if kind.kind == "path_with_end_loops":
            desc += f", loops at {list(kind.loop_vertices)}"
        elif kind.kind in ("single_cycle", "disjoint_cycles"):
            desc += f", {kind.cycle_count} cycle(s) of length {kind.cycle_length}"
        print(f"classification: {desc}")
        print(f"edges: {list(g.edges)}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _load_config_argv(argv)
        parser = build_parser()
        args = parser.parse_args(argv)
        handler = {"sample": cmd_sample, "sweep": cmd_sweep, "exact": cmd_exact,
                   "oracle": cmd_oracle, "graphs": cmd_graphs}[args.command]
        return handler(args)
    except ParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAMETER
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except AssertionError as e:
        print(f"assertion failed: {e}", file=sys.stderr)
        return EXIT_ASSERTION


if __name__ == "__main__":
    sys.exit(main())

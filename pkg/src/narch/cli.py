"""Command-line harness: compare, witness, measure, bandit.

Every value printed or written is exact text (series grammar or num/den
rationals); nothing is ever formatted through floating point, so outputs
are platform-independent and reruns with identical inputs are
byte-identical. Exit codes: 0 success, 2 invalid input, 3 output I/O
failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Iterable, Optional

from .bandit import (
    Arm,
    MODE_EGREEDY,
    MODE_SCRIPTED,
    RewardScheme,
    RunConfig,
    epsilon_greedy_run,
    exact_mean,
    reward_text,
    scripted_eval,
)
from .laurent import Ordering, SeriesParseError, as_rational, compare, format_series, parse
from .measurement import (
    assignment_from_json,
    diminishing_returns_index,
    is_accurate_measurement,
    min_feasible_top,
    structure_from_json,
)
from .sig_order import laurent_nonarch_witness, verify_nonarch_prefix

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IO = 3

CSV_HEADER = ["step", "arm", "reward", "red_mean", "blue_mean", "preferred"]


class InputError(Exception):
    pass


class OutputError(Exception):
    pass


def _load_json_file(path: str) -> object:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from exc


def _write_text(path: Optional[str], content: str) -> None:
    if path is None:
        sys.stdout.write(content)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(content)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc


def _rational_text(value: Fraction) -> str:
    return str(value)


def _cmd_compare(args: argparse.Namespace) -> int:
    lhs = parse(args.lhs)
    rhs = parse(args.rhs)
    print(compare(lhs, rhs).value)
    return EXIT_OK


def _cmd_witness(args: argparse.Namespace) -> int:
    r = as_rational(args.r)
    chain, y = laurent_nonarch_witness(r, args.n)
    verified = verify_nonarch_prefix(chain, y, r)
    payload = {
        "r": _rational_text(r),
        "n": args.n,
        "chain": [format_series(x) for x in chain],
        "y": format_series(y),
        "verified": verified,
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_measure_check(args: argparse.Namespace) -> int:
    obj = _load_json_file(args.input)
    if not isinstance(obj, dict) or "structure" not in obj or "assignment" not in obj:
        raise InputError("measure input must have 'structure' and 'assignment' objects")
    structure = structure_from_json(obj["structure"])
    assignment = assignment_from_json(obj["assignment"])
    accurate = is_accurate_measurement(structure, assignment)
    print(json.dumps({"accurate": accurate}))
    return EXIT_OK


def _cmd_measure_feasible_top(args: argparse.Namespace) -> int:
    r = as_rational(args.r)
    if args.n_min < 0 or args.n_max < args.n_min:
        raise InputError("need 0 <= n-min <= n-max")
    lines = ["n,min_top"]
    for n in range(args.n_min, args.n_max + 1):
        lines.append(f"{n},{_rational_text(min_feasible_top(n, r))}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_measure_plateau(args: argparse.Namespace) -> int:
    try:
        with open(args.seq, "r", encoding="utf-8") as handle:
            raw_lines = [line.strip() for line in handle]
    except OSError as exc:
        raise InputError(f"cannot read {args.seq}: {exc}") from exc
    seq = [as_rational(line) for line in raw_lines if line]
    index = diminishing_returns_index(seq, as_rational(args.tol))
    print(json.dumps({"index": index}))
    return EXIT_OK


def _bandit_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config is not None:
        obj = _load_json_file(args.config)
        if not isinstance(obj, dict):
            raise InputError("bandit config JSON must be an object")
        values.update(obj)
    for key in ("scheme", "mode", "steps", "epsilon", "seed", "discount"):
        flag = getattr(args, key)
        if flag is not None:
            values[key] = flag
    for key in ("scheme", "mode", "steps"):
        if key not in values:
            raise InputError(f"missing required bandit option '{key}'")
    scheme = RewardScheme.parse(str(values["scheme"]))
    return RunConfig(
        scheme=scheme,
        mode=str(values["mode"]),
        steps=int(values["steps"]),
        epsilon=as_rational(values.get("epsilon", 0)),
        seed=int(values.get("seed", 0)),
        discount=None if values.get("discount") is None else as_rational(values["discount"]),
    )


def _mean_text(value) -> str:
    return "" if value is None else reward_text(value)


def _scripted_rows(config: RunConfig) -> tuple[list[list[str]], Optional[int], str]:
    rows = []
    flip_step = None
    preferred = Arm.RED
    for round_ in scripted_eval(config.steps, config.scheme):
        preferred = Arm.BLUE if round_.blue_vs_red is Ordering.GREATER else Arm.RED
        if flip_step is None and round_.blue_vs_red is Ordering.LESS:
            flip_step = round_.step
        rows.append(
            [
                str(round_.step),
                Arm.BLUE.value,
                reward_text(round_.blue_reward),
                _mean_text(exact_mean(round_.red_sum, round_.step)),
                _mean_text(exact_mean(round_.blue_sum, round_.step)),
                preferred.value,
            ]
        )
    return rows, flip_step, preferred.value


def _egreedy_rows(config: RunConfig) -> tuple[list[list[str]], Optional[int], str]:
    result = epsilon_greedy_run(config)
    rows = []
    flip_step = None
    previous = None
    for pull in result.trace:
        if previous is Arm.BLUE and pull.preferred is Arm.RED and flip_step is None:
            flip_step = pull.step
        previous = pull.preferred
        rows.append(
            [
                str(pull.step),
                pull.arm.value,
                reward_text(pull.reward),
                _mean_text(pull.red_mean),
                _mean_text(pull.blue_mean),
                pull.preferred.value,
            ]
        )
    return rows, flip_step, result.final_greedy.value


def _cmd_bandit(args: argparse.Namespace) -> int:
    config = _bandit_config(args)
    if config.mode == MODE_SCRIPTED:
        rows, flip_step, final_preference = _scripted_rows(config)
    else:
        rows, flip_step, final_preference = _egreedy_rows(config)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            writer.writerows(rows)
    except OSError as exc:
        raise OutputError(f"cannot write {args.out}: {exc}") from exc
    summary = {
        "scheme": config.scheme.text(),
        "mode": config.mode,
        "steps": config.steps,
        "flip_step": flip_step,
        "final_preference": final_preference,
    }
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="narch",
        description="Exact Laurent-series comparisons, trapped-chain witnesses, "
        "measurement analysis, and delayed-gratification bandit runs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compare = sub.add_parser("compare", help="compare two series given as text")
    p_compare.add_argument("--lhs", required=True, help="left series, e.g. '5 eps^-1 + 2 eps^3'")
    p_compare.add_argument("--rhs", required=True, help="right series")
    p_compare.set_defaults(handler=_cmd_compare)

    p_witness = sub.add_parser(
        "witness", help="emit and verify a trapped-chain witness prefix"
    )
    p_witness.add_argument("--r", required=True, help="positive rational threshold")
    p_witness.add_argument("--n", required=True, type=int, help="prefix length")
    p_witness.set_defaults(handler=_cmd_witness)

    p_measure = sub.add_parser("measure", help="measurement accuracy analyses")
    measure_sub = p_measure.add_subparsers(dest="measure_command", required=True)

    p_check = measure_sub.add_parser("check", help="check a structure/assignment JSON file")
    p_check.add_argument("--input", required=True, help="JSON file with structure and assignment")
    p_check.set_defaults(handler=_cmd_measure_check)

    p_feasible = measure_sub.add_parser(
        "feasible-top", help="CSV of minimum feasible top values over a chain-length range"
    )
    p_feasible.add_argument("--n-min", type=int, default=0)
    p_feasible.add_argument("--n-max", type=int, required=True)
    p_feasible.add_argument("--r", required=True, help="positive rational threshold")
    p_feasible.add_argument("--out", default=None, help="output file (default stdout)")
    p_feasible.set_defaults(handler=_cmd_measure_feasible_top)

    p_plateau = measure_sub.add_parser(
        "plateau", help="first index where a monotone sequence's growth drops below tol"
    )
    p_plateau.add_argument("--seq", required=True, help="file with one rational per line")
    p_plateau.add_argument("--tol", required=True, help="positive rational tolerance")
    p_plateau.set_defaults(handler=_cmd_measure_plateau)

    p_bandit = sub.add_parser("bandit", help="run the delayed-gratification environment")
    p_bandit.add_argument("--scheme", default=None, help="laurent | approx:<M> | dynamic:<M>")
    p_bandit.add_argument("--mode", default=None, choices=[MODE_SCRIPTED, MODE_EGREEDY])
    p_bandit.add_argument("--steps", type=int, default=None)
    p_bandit.add_argument("--epsilon", default=None, help="exploration probability (rational)")
    p_bandit.add_argument("--seed", type=int, default=None, help="64-bit generator seed")
    p_bandit.add_argument("--discount", default=None, help="optional discount in (0, 1)")
    p_bandit.add_argument("--config", default=None, help="JSON file providing the options above")
    p_bandit.add_argument("--out", required=True, help="trace CSV output path")
    p_bandit.set_defaults(handler=_cmd_bandit)

    return parser


def main(argv: Optional[Iterable[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    try:
        return args.handler(args)
    except OutputError as exc:
        print(f"narch: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InputError, SeriesParseError, ValueError, TypeError) as exc:
        print(f"narch: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

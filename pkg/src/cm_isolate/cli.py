"""Command-line interface.

One command per invocation; reports go to stdout (or --output) as markdown,
csv or json.  Exit codes: 0 success, 2 invalid configuration, 3 field
validation failure, 4 search exhaustion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import (
    FieldConstructionError,
    NoPrimeIndexError,
    SearchExhaustedError,
)
from .exactfield import CyclicCMField, make_cyclic_field
from .numutil import sieve_primes
from .heuristic import (
    PredictionConfig,
    PredictionMode,
    correction_constant,
    predict_counts,
)
from .search import (
    count_prime_pairs,
    counts_by_bound,
    elliptic_analogue_search,
    empirical_frequency,
    find_isolated,
)
from .splitting import local_data
from .weilnum import index_from_CD, p_from_CD

PRESETS = {"zeta5": (5, 2, 1), "f29": (29, 2, 5), "f37": (37, 6, 1)}
PRESET_CLASS_NUMBERS = {"zeta5": 1}

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_FIELD = 3
EXIT_EXHAUSTED = 4


class ConfigError(ValueError):
    pass


def _add_field_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", choices=sorted(PRESETS))
    parser.add_argument("--d", type=int)
    parser.add_argument("--b", type=int)
    parser.add_argument("--c", type=int)
    parser.add_argument("--class-number", type=int, default=None)


def _add_output_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("markdown", "csv", "json"), default="markdown"
    )
    parser.add_argument("--output", default=None, help="write report to this path")
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker count (default: CM_ISOLATE_THREADS or 1)",
    )


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="cm-isolate")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    p_field = sub.add_parser("field", help="field-level commands")
    field_sub = p_field.add_subparsers(dest="subcommand", required=True)
    p_validate = field_sub.add_parser("validate", help="validate a field spec")
    _add_field_args(p_validate)
    _add_output_args(p_validate)
    p_validate.add_argument("--l-max", type=int, default=100)

    p_search = sub.add_parser("search", help="count prime (p, I) pairs")
    _add_field_args(p_search)
    _add_output_args(p_search)
    p_search.add_argument("--bound", type=int, nargs="+", required=True)

    p_freq = sub.add_parser("frequency", help="empirical vs predicted frequency")
    _add_field_args(p_freq)
    _add_output_args(p_freq)
    p_freq.add_argument("--l", type=int, nargs="+", required=True)
    p_freq.add_argument("--lo", type=int, default=3)
    p_freq.add_argument("--hi", type=int, default=2001)

    p_const = sub.add_parser("constant", help="correction constant up to z")
    _add_field_args(p_const)
    _add_output_args(p_const)
    p_const.add_argument("--z", type=int, required=True)
    p_const.add_argument("--restricted", action="store_true")

    p_pred = sub.add_parser("predict", help="predicted prime-pair counts")
    _add_field_args(p_pred)
    _add_output_args(p_pred)
    p_pred.add_argument("--bound", type=int, nargs="+", required=True)
    p_pred.add_argument(
        "--mode", choices=[m.value for m in PredictionMode], default="constant"
    )
    p_pred.add_argument("--z-max", type=int, default=10**6)
    p_pred.add_argument("--min-p", type=int, default=7)
    p_pred.add_argument("--min-i", type=int, default=2)
    p_pred.add_argument(
        "--with-actual", action="store_true", help="also count and show discrepancy"
    )

    p_find = sub.add_parser("find", help="find an isolated candidate")
    _add_field_args(p_find)
    _add_output_args(p_find)
    p_find.add_argument("--bits", type=int, required=True)
    p_find.add_argument("--large-prime-bits", type=int, default=80)
    p_find.add_argument("--seed", type=int, default=0)
    p_find.add_argument("--max-attempts", type=int, default=10**6)

    p_ell = sub.add_parser("elliptic", help="elliptic analogue search")
    _add_output_args(p_ell)
    p_ell.add_argument("--d", type=int, default=1)
    p_ell.add_argument("--k", type=int, required=True)
    p_ell.add_argument("--seed", type=int, default=None)
    p_ell.add_argument("--experimental", action="store_true")
    p_ell.add_argument("--max-attempts", type=int, default=10**6)
    return top


def _resolve_field(args) -> CyclicCMField:
    if args.preset:
        if args.d or args.b or args.c:
            raise ConfigError("give either --preset or --d/--b/--c, not both")
        d, b, c = PRESETS[args.preset]
        h = args.class_number
        if h is None:
            h = PRESET_CLASS_NUMBERS.get(args.preset)
        return make_cyclic_field(d, b, c, class_number=h)
    if args.d is None or args.b is None or args.c is None:
        raise ConfigError("a field requires --preset or all of --d, --b, --c")
    return make_cyclic_field(args.d, args.b, args.c, class_number=args.class_number)


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("CM_ISOLATE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ConfigError(f"CM_ISOLATE_THREADS = {env!r} is not an integer") from exc
    return 1


def _fmt6(x: float) -> str:
    return f"{x:.6f}"


def _fmt9(q: Fraction) -> str:
    # round half up at the 9th decimal, formatted without float detours
    scaled = q * 10**9
    n = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    return f"{n // 10**9}.{n % 10**9:09d}"


class Report:
    def __init__(self, field, command, params, rows, meta):
        self.field = field
        self.command = command
        self.params = params
        self.rows = rows
        self.meta = meta

    def to_json(self) -> str:
        return json.dumps(
            {
                "field": self.field,
                "command": self.command,
                "params": self.params,
                "rows": self.rows,
                "meta": self.meta,
            },
            indent=2,
            sort_keys=False,
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.rows:
            writer = csv.DictWriter(buf, fieldnames=list(self.rows[0]))
            writer.writeheader()
            writer.writerows(self.rows)
        return buf.getvalue()

    def to_markdown(self) -> str:
        lines = [f"# {self.command}"]
        if self.field:
            lines.append(
                f"field: d={self.field['d']} b={self.field['b']} c={self.field['c']}"
            )
        if self.params:
            lines.append(
                "params: " + " ".join(f"{k}={v}" for k, v in self.params.items())
            )
        if self.rows:
            cols = list(self.rows[0])
            lines.append("")
            lines.append("| " + " | ".join(cols) + " |")
            lines.append("|" + "|".join("---" for _ in cols) + "|")
            for row in self.rows:
                lines.append("| " + " | ".join(str(row[k]) for k in cols) + " |")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_markdown()


def _emit(report: Report, args) -> None:
    text = report.render(args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _field_dict(field: CyclicCMField) -> dict:
    return {"d": field.d, "b": field.b, "c": field.c}


def _meta(args, start: float, seed=None) -> dict:
    return {
        "version": __version__,
        "seed": seed,
        "threads": _threads(args),
        "wall_ms": round((time.perf_counter() - start) * 1000.0, 3),
    }


def _cmd_field_validate(args) -> int:
    start = time.perf_counter()
    field = _resolve_field(args)
    flags = ["no prime index (3|c)"] if field.no_prime_index else []
    rows = []
    for l in sieve_primes(max(2, args.l_max - 1)):
        data = local_data(field, l)
        rows.append(
            {
                "l": l,
                "class": data.cls.value if data.cls else "(l=2)",
                "c(l)": f"{data.c_l.numerator}/{data.c_l.denominator}",
                "c_p(l)": f"{data.c_p_l.numerator}/{data.c_p_l.denominator}",
            }
        )
    report = Report(
        field=_field_dict(field),
        command="field validate",
        params={
            "disc": field.disc,
            "eps_basis": field.eps_basis,
            "class_number": field.class_number,
            "flags": flags,
            "l_max": args.l_max,
        },
        rows=rows,
        meta=_meta(args, start),
    )
    _emit(report, args)
    return EXIT_OK


def _cmd_search(args) -> int:
    start = time.perf_counter()
    field = _resolve_field(args)
    bounds = sorted(set(args.bound))
    rep = count_prime_pairs(field, bounds[-1], workers=_threads(args))
    counts = counts_by_bound(rep, bounds)
    rows = [{"Bound": b, "Actual Number": counts[b]} for b in bounds]
    report = Report(
        field=_field_dict(field),
        command="search",
        params={"bounds": bounds, "convention": rep.convention},
        rows=rows,
        meta=_meta(args, start),
    )
    _emit(report, args)
    return EXIT_OK


def _cmd_frequency(args) -> int:
    start = time.perf_counter()
    field = _resolve_field(args)
    from .splitting import prob_neither_divides

    rows = []
    for l in sorted(set(args.l)):
        actual = empirical_frequency(field, l, args.lo, args.hi)
        predicted = prob_neither_divides(field, l)
        rows.append(
            {
                "Prime l": l,
                "Actual Frequency": _fmt6(actual),
                "Predicted Frequency": _fmt9(predicted),
                "predicted_num": str(predicted.numerator),
                "predicted_den": str(predicted.denominator),
            }
        )
    report = Report(
        field=_field_dict(field),
        command="frequency",
        params={"lo": args.lo, "hi": args.hi},
        rows=rows,
        meta=_meta(args, start),
    )
    _emit(report, args)
    return EXIT_OK


def _cmd_constant(args) -> int:
    start = time.perf_counter()
    field = _resolve_field(args)
    const = correction_constant(field, args.z, restricted=args.restricted)
    rows = [
        {
            "z": args.z,
            "C(z)": f"{const.value:.14f}",
            "restricted": const.restricted,
            "diverges": const.diverges,
        }
    ]
    report = Report(
        field=_field_dict(field),
        command="constant",
        params={"z": args.z, "restricted": args.restricted},
        rows=rows,
        meta=_meta(args, start),
    )
    _emit(report, args)
    return EXIT_OK


def _cmd_predict(args) -> int:
    start = time.perf_counter()
    field = _resolve_field(args)
    bounds = sorted(set(args.bound))
    cfg = PredictionConfig(
        mode=PredictionMode(args.mode),
        z_max=args.z_max,
        min_p=args.min_p,
        min_I=args.min_i,
    )
    predicted = predict_counts(field, bounds, cfg)
    actual = None
    if args.with_actual:
        rep = count_prime_pairs(field, bounds[-1], workers=_threads(args))
        actual = counts_by_bound(rep, bounds)
    rows = []
    for b in bounds:
        row = {"Bound": b}
        if actual is not None:
            row["Actual Number"] = actual[b]
        row["Predicted Number"] = predicted[b].count
        if actual is not None:
            row["Discrepancy"] = f"{predicted[b].count / actual[b] - 1:.5f}"
        rows.append(row)
    report = Report(
        field=_field_dict(field),
        command="predict",
        params={"bounds": bounds, "mode": args.mode, "z_max": args.z_max},
        rows=rows,
        meta=_meta(args, start),
    )
    _emit(report, args)
    return EXIT_OK


def _cmd_find(args) -> int:
    start = time.perf_counter()
    field = _resolve_field(args)
    result = find_isolated(
        field,
        target_p_bits=args.bits,
        large_prime_bits=args.large_prime_bits,
        seed=args.seed,
        max_attempts=args.max_attempts,
    )
    cand = result.candidate
    rows = [
        {
            "C": cand.C,
            "D": cand.D,
            "p": str(cand.p),
            "I": str(cand.I),
            "p_bits": cand.p.bit_length(),
            "I_bits": cand.I.bit_length(),
            "classification": result.isolation.tag.value,
            "attempts": result.attempts,
        }
    ]
    report = Report(
        field=_field_dict(field),
        command="find",
        params={
            "bits": args.bits,
            "large_prime_bits": args.large_prime_bits,
        },
        rows=rows,
        meta=_meta(args, start, seed=args.seed),
    )
    _emit(report, args)
    return EXIT_OK


def _cmd_elliptic(args) -> int:
    start = time.perf_counter()
    hit = elliptic_analogue_search(
        args.d,
        args.k,
        seed=args.seed,
        experimental=args.experimental,
        max_attempts=args.max_attempts,
    )
    rows = [
        {
            "d": hit.d,
            "k": hit.k,
            "B": str(hit.B),
            "A": str(hit.A),
            "p": str(hit.p),
            "n": str(hit.n),
            "sign": hit.sign,
            "attempts": hit.attempts,
        }
    ]
    report = Report(
        field=None,
        command="elliptic",
        params={"d": args.d, "k": args.k, "experimental": args.experimental},
        rows=rows,
        meta=_meta(args, start, seed=args.seed),
    )
    _emit(report, args)
    return EXIT_OK


_HANDLERS = {
    "search": _cmd_search,
    "frequency": _cmd_frequency,
    "constant": _cmd_constant,
    "predict": _cmd_predict,
    "find": _cmd_find,
    "elliptic": _cmd_elliptic,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "field":
            return _cmd_field_validate(args)
        return _HANDLERS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FieldConstructionError, NoPrimeIndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIELD
    except SearchExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

"""Command line front-end.

    lowering [--config FILE] classify  --p 2 --lambda 2,1,0 --mu 1,1 --i 1 --j 3 --A 2
    lowering enumerate --p 2 --lambda 2,1,0 --mu 1,1 --i 1 --j 3 --format csv
    lowering exists    --p 3 --lambda 4,2,0 --mu 4,1 --i 1 --j 2
    lowering verify    --mode all --p 2,3 --n 3,4
    lowering sweep     --mode oracle --p 2,3 --n 3 --out grid.csv --format csv

Exit status: 0 ok, 1 verification failure, 2 usage or domain error.
A config file is INI with a ``[lowering]`` section (and optionally one
section per subcommand) whose keys mirror the long flags; flags win.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import logging
import sys
import time
from typing import Sequence

from . import criteria
from .errors import ConsistencyError, LoweringError
from .records import ResultRecord, dumps_csv, dumps_json
from .sweep import GroupResult, grid, identity_suite, run_grid, structural_checks, symbolic_suite
from .weights import BranchingPair

log = logging.getLogger("lowering")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

VERIFY_MODES = ("grid", "symbolic", "identities", "structural", "all")
SWEEP_MODES = ("criteria", "oracle", "full")

# builtin defaults, used when neither a flag nor the config file sets a key
DEFAULTS = {
    "A": "",
    "format": "json",
    "workers": "1",
    "n": "3,4",
    "max_first": "3",
    "max_size": "6",
    "max_span": "6",
}


class UsageError(LoweringError, ValueError):
    pass


def parse_ints(text: str, name: str) -> tuple[int, ...]:
    text = text.strip().strip("(){}[]")
    if text.lower() in ("", "none", "empty"):
        return ()
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"--{name} expects comma-separated integers, got {text!r}") from None


def parse_int(text: str, name: str) -> int:
    try:
        return int(str(text).strip())
    except ValueError:
        raise UsageError(f"--{name} expects an integer, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lowering",
        description="Decide and verify vanishing and high-weight properties of lowering operators.",
    )
    parser.add_argument("--config", help="INI file whose keys mirror the flags")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, single=True, with_A=False):
        p.add_argument("--p", help="prime (comma list for grids)")
        if single:
            p.add_argument("--lambda", dest="lambda_", metavar="LAMBDA", help="e.g. 2,1,0")
            p.add_argument("--mu", help="e.g. 1,1")
            p.add_argument("--i", help="left index")
            p.add_argument("--j", help="right index")
        if with_A:
            p.add_argument("--A", help="subset of (i..j), e.g. 2,3 (empty for none)")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--format", choices=("json", "csv"))
        p.add_argument("--mode", help=argparse.SUPPRESS if single else None)
        p.add_argument("--workers", help="worker processes")

    common(sub.add_parser("classify", help="classify S_{i,j}(A) f_{mu,lam}"), with_A=True)
    common(sub.add_parser("enumerate", help="classify every A in (i..j)"))
    common(sub.add_parser("exists", help="find a good A, if any"))
    for name, modes, text in (
        ("verify", VERIFY_MODES, "run the cross-check suites and report"),
        ("sweep", SWEEP_MODES, "classify the whole grid and emit records"),
    ):
        p = sub.add_parser(name, help=text)
        common(p, single=False)
        p.set_defaults(modes=modes)
        p.add_argument("--n", help="comma list of n values")
        p.add_argument("--max-first", dest="max_first", help="bound on lambda_1")
        p.add_argument("--max-size", dest="max_size", help="bound on |lambda|")
        if name == "verify":
            p.add_argument("--max-span", dest="max_span", help="bound on j-i in the symbolic suite")
    return parser


def resolve(args: argparse.Namespace) -> dict[str, str]:
    """Merge builtin defaults, config file and flags (flags win)."""
    settings = dict(DEFAULTS)
    if args.config:
        cp = configparser.ConfigParser()
        cp.optionxform = str
        if not cp.read(args.config):
            raise UsageError(f"cannot read config file {args.config}")
        for section in ("lowering", args.command):
            if cp.has_section(section):
                for key, value in cp.items(section):
                    settings[key.replace("-", "_")] = value
    if "lambda" in settings:
        settings["lambda_"] = settings.pop("lambda")
    for key, value in vars(args).items():
        if value is not None and key not in ("config", "verbose", "command", "modes"):
            settings[key] = value
    return settings


def _need(settings, key, flag=None):
    if settings.get(key) in (None, ""):
        raise UsageError(f"--{flag or key} is required")
    return settings[key]


def _pair(settings) -> BranchingPair:
    return BranchingPair(
        parse_int(_need(settings, "p"), "p"),
        parse_ints(_need(settings, "lambda_", "lambda"), "lambda"),
        parse_ints(_need(settings, "mu"), "mu"),
    )


def _indices(settings) -> tuple[int, int]:
    return parse_int(_need(settings, "i"), "i"), parse_int(_need(settings, "j"), "j")


def _emit(settings, text: str) -> None:
    out = settings.get("out")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_records(settings, records, extra=None) -> None:
    fmt = settings.get("format", "json")
    if fmt not in ("json", "csv"):
        raise UsageError(f"--format must be json or csv, got {fmt!r}")
    _emit(settings, dumps_csv(records) if fmt == "csv" else dumps_json(records, extra))


def cmd_classify(settings) -> int:
    pair = _pair(settings)
    i, j = _indices(settings)
    A = parse_ints(settings.get("A", ""), "A")
    found = criteria.classify(pair, i, j, A)
    _emit_records(settings, [ResultRecord.from_classification(pair, i, j, A, found)])
    return EXIT_OK


def cmd_enumerate(settings) -> int:
    pair = _pair(settings)
    i, j = _indices(settings)
    records = [
        ResultRecord.from_classification(pair, i, j, A, found)
        for A, found in criteria.enumerate_good_A(pair, i, j)
    ]
    _emit_records(settings, records)
    return EXIT_OK


def cmd_exists(settings) -> int:
    pair = _pair(settings)
    i, j = _indices(settings)
    good = criteria.exists(pair, i, j)
    records = []
    if good is not None:
        records.append(
            ResultRecord.from_classification(pair, i, j, good.A, good.classification, good))
    _emit_records(settings, records, {"exists": good is not None})
    return EXIT_OK


def _grid_groups(settings):
    ps = parse_ints(settings.get("p") or "2,3", "p")
    ns = parse_ints(settings["n"], "n")
    max_first = parse_int(settings["max_first"], "max-first")
    max_size = parse_int(settings["max_size"], "max-size")
    if not ps or not ns:
        raise UsageError("--p and --n must be non-empty")
    if any(n < 2 for n in ns):
        raise UsageError("every n must be at least 2")
    for p in ps:
        BranchingPair(p, (0, 0), (0,))  # validates p
    groups = grid(ps, ns, max_first, max_size)
    if not groups:
        raise UsageError("the generator ranges produce no weights")
    return groups


def _mode(settings, modes, default):
    mode = settings.get("mode") or default
    if mode not in modes:
        raise UsageError(f"--mode must be one of {', '.join(modes)}, got {mode!r}")
    return mode


def _suite_rows(name: str, result: GroupResult) -> list[dict]:
    return [
        {"suite": name, "check": check, "checked": result.checked[check], "failed": result.failed[check]}
        for check in sorted(result.checked)
    ]


def cmd_verify(settings) -> int:
    mode = _mode(settings, VERIFY_MODES, "grid")
    workers = parse_int(settings["workers"], "workers")
    groups = _grid_groups(settings)
    rows: list[dict] = []
    counterexamples: list[dict] = []
    lines: list[str] = []
    start = time.perf_counter()

    def take(name, result: GroupResult):
        rows.extend(_suite_rows(name, result))
        counterexamples.extend(result.counterexamples)
        for row in _suite_rows(name, result):
            status = "pass" if not row["failed"] else "FAIL"
            lines.append(f"{name}: {row['check']}: {status} ({row['checked']} checked, {row['failed']} failed)")

    if mode in ("grid", "all"):
        result = run_grid(groups, use_oracle=True, all_sequences_vs_operator=True, workers=workers)
        take("grid", result)
        lines.append(f"grid: {result.disagreements} disagreements over {len(result.records)} cases")
    if mode in ("symbolic", "all"):
        result = symbolic_suite(parse_int(settings["max_span"], "max-span"))
        take("symbolic", result)
        status = "pass" if not result.failed["k_def_eq_rec"] else "FAIL"
        lines.append(f"k_poly_def==k_poly_rec: {status}")
    if mode in ("structural", "all"):
        result = GroupResult()
        for p, lam in groups:
            result.merge(structural_checks(p, lam))
        take("structural", result)
    if mode in ("identities", "all"):
        for report in identity_suite(groups, workers=workers):
            rows.append({"suite": "identities", "check": report.name, "checked": report.checked,
                         "failed": len(report.failures), "skipped": report.skipped})
            counterexamples.extend(report.failures)
            lines.append(f"identities: {report.line()}")
    failed = sum(row["failed"] for row in rows)
    lines.append(f"total: {failed} failures ({time.perf_counter() - start:.1f}s)")
    print("\n".join(lines))
    if counterexamples:
        print(json.dumps({"counterexample": counterexamples[0]}, sort_keys=True))
    if settings.get("out"):
        if settings.get("format") == "csv":
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=["suite", "check", "checked", "failed", "skipped"],
                                    lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({"skipped": 0, **row})
            _emit(settings, buf.getvalue())
        else:
            _emit(settings, json.dumps({"mode": mode, "checks": rows, "failures": failed,
                                        "counterexamples": counterexamples}, indent=2, sort_keys=True) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_sweep(settings) -> int:
    mode = _mode(settings, SWEEP_MODES, "oracle")
    result = run_grid(
        _grid_groups(settings),
        use_oracle=mode != "criteria",
        all_sequences_vs_operator=mode == "full",
        workers=parse_int(settings["workers"], "workers"),
    )
    _emit_records(settings, result.records, {"summary": result.summary()})
    log.info("sweep: %d cases, %d disagreements", len(result.records), result.disagreements)
    if result.disagreements:
        print(json.dumps({"counterexample": result.counterexamples[0]}, sort_keys=True),
              file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "enumerate": cmd_enumerate,
    "exists": cmd_exists,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        settings = resolve(args)
        return COMMANDS[args.command](settings)
    except ConsistencyError as exc:
        print(f"lowering: verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (LoweringError, ValueError) as exc:
        print(f"lowering: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"lowering: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: ``section`` (one section value), ``limit`` (the n -> infinity
value with its breakdown), ``scan`` (a sweep over n written as CSV or
JSON), ``lambda0`` (the crossing of the limit with the two-coordinate
value), and ``verify`` (the full verification suite).

Exit codes: 0 success, 1 verification failure, 2 usage, 3 quadrature
non-convergence, 4 I/O, 5 bracketing.

Every numeric printed carries its error estimate.  CSV output is
byte-identical across runs with identical flags; timestamps appear only in
JSON metadata.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from . import asymptotics, sections, verification
from .errors import (
    BracketError,
    CubesecError,
    DivergenceError,
    DomainError,
    NonConvergenceError,
)
from .kernel import ConcentrationParam
from .quadrature import QuadratureConfig
from .sections import Direction, SectionQuery

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NONCONVERGENCE = 3
EXIT_IO = 4
EXIT_BRACKET = 5

_ENV_TOL = "CUBESEC_TOL"
_CONFIG_KEYS = ("rel_tol", "abs_tol", "n_min", "n_max")


@dataclass
class OutputRecord:
    """Serializable record of one command invocation."""

    command: str
    parameters: dict
    results: list = field(default_factory=list)
    timestamp: str = ""

    def add(self, label: str, value: float, error_estimate: float):
        self.results.append(
            {"label": label, "value": value, "error_estimate": error_estimate}
        )

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "timestamp": self.timestamp,
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def _now() -> str:
    return datetime.now(tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _fmt(value: float) -> str:
    return format(value, ".17g")


def _load_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for line_no, raw in enumerate(handle, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise DomainError(f"{path}:{line_no}: expected 'key = value'")
                key, _, text = line.partition("=")
                key = key.strip()
                if key not in _CONFIG_KEYS:
                    raise DomainError(
                        f"{path}:{line_no}: unknown key {key!r} "
                        f"(allowed: {', '.join(_CONFIG_KEYS)})"
                    )
                values[key] = text.strip()
    except OSError as exc:
        raise OSError(f"cannot read config file {path}: {exc}") from exc
    return values


def _resolve_tolerances(ns) -> QuadratureConfig:
    """Precedence: flags > config file > CUBESEC_TOL env > built-in defaults."""
    rel_tol = 1e-12
    abs_tol = 1e-14
    env = os.environ.get(_ENV_TOL)
    if env is not None:
        rel_tol = float(env)
    config = getattr(ns, "_config_values", {})
    if "rel_tol" in config:
        rel_tol = float(config["rel_tol"])
    if "abs_tol" in config:
        abs_tol = float(config["abs_tol"])
    if getattr(ns, "tol", None) is not None:
        rel_tol = ns.tol
    return QuadratureConfig(rel_tol=rel_tol, abs_tol=abs_tol)


def _section_config(ns, n: int, b: float) -> QuadratureConfig:
    base = _resolve_tolerances(ns)
    return QuadratureConfig(
        rel_tol=base.rel_tol,
        abs_tol=base.abs_tol,
        initial_truncation_radius=max(64.0, 8.0 * math.sqrt(b * n)),
    )


def _print_record(record: OutputRecord, as_json: bool):
    if as_json:
        print(record.to_json())
        return
    params = " ".join(f"{k}={v}" for k, v in record.parameters.items())
    print(f"{record.command} {params}")
    for row in record.results:
        print(f"  {row['label']} = {_fmt(row['value'])} +/- {row['error_estimate']:.3e}")


def _cmd_section(ns) -> int:
    n = ns.n
    b = ns.b
    if b < 0.0:
        raise DomainError("--b must be >= 0")
    direction_name = ns.dir
    if direction_name == "axis":
        if n < 1:
            raise DomainError("--n must be >= 1 for the axis direction")
        direction = Direction.axis(n)
    elif direction_name == "diagonal":
        if n < 2:
            raise DomainError("--n must be >= 2 for the diagonal direction")
        direction = Direction.diagonal(n)
    elif direction_name == "two_coord":
        if n < 2:
            raise DomainError("--n must be >= 2 for the two_coord direction")
        direction = Direction.two_coord(n)
    else:
        raise DomainError(f"unknown direction {direction_name!r}")
    query = SectionQuery(
        n=n,
        b=ConcentrationParam(b),
        direction=direction,
        quadrature=_section_config(ns, n, b),
    )
    result = sections.direction_section(query)
    record = OutputRecord(
        command="section",
        parameters={"n": n, "b": b, "dir": direction_name},
        timestamp=_now(),
    )
    record.add("A", result.value, result.error_estimate)
    _print_record(record, ns.json)
    return EXIT_OK


def _cmd_limit(ns) -> int:
    if ns.b <= 0.0:
        raise DomainError("--b must be > 0 for the limit")
    breakdown = asymptotics.limit_value(ns.b)
    record = OutputRecord(
        command="limit", parameters={"b": ns.b}, timestamp=_now()
    )
    eps = 2.22e-16
    record.add("g", breakdown.g_value, 4.0 * eps * abs(breakdown.g_value))
    record.add("one_minus_4g", breakdown.one_minus_4g, 4.0 * eps * breakdown.one_minus_4g)
    record.add("limit", breakdown.limit, 8.0 * eps * breakdown.limit)
    record.add(
        "series_partial",
        breakdown.series_partial,
        abs(breakdown.limit - breakdown.series_partial),
    )
    record.parameters["series_terms_used"] = breakdown.series_terms_used
    _print_record(record, ns.json)
    return EXIT_OK


def _scan_csv_lines(table, limit_value: float, limit_error: float, b: float) -> list:
    lines = ["n,b,A,err"]
    for row in table:
        lines.append(
            f"{row.n},{_fmt(row.b)},{_fmt(row.value)},{_fmt(row.error_estimate)}"
        )
    lines.append(f"inf,{_fmt(b)},{_fmt(limit_value)},{_fmt(limit_error)}")
    return lines


def _cmd_scan(ns) -> int:
    if ns.b < 0.0:
        raise DomainError("--b must be >= 0")
    config = getattr(ns, "_config_values", {})
    n_min = ns.n_min if ns.n_min is not None else int(config.get("n_min", 2))
    n_max = ns.n_max if ns.n_max is not None else int(config.get("n_max", 50))
    if not (2 <= n_min <= n_max <= 10 ** 6):
        raise DomainError("need 2 <= --n-min <= --n-max <= 1e6")
    table = sections.scan(n_min, n_max, ns.b)
    eps = 2.22e-16
    if ns.b > 0.0:
        limit = asymptotics.limit_value(ns.b).limit
    else:
        limit = asymptotics.LEBESGUE_LIMIT
    limit_err = 8.0 * eps * limit
    if ns.format == "csv":
        text = "\n".join(_scan_csv_lines(table, limit, limit_err, ns.b)) + "\n"
    else:
        payload = {
            "command": "scan",
            "parameters": {"b": ns.b, "n_min": n_min, "n_max": n_max},
            "rows": [
                {"n": row.n, "b": row.b, "A": row.value, "err": row.error_estimate}
                for row in table
            ]
            + [{"n": "inf", "b": ns.b, "A": limit, "err": limit_err}],
            "timestamp": _now(),
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if ns.out is None or ns.out == "-":
        sys.stdout.write(text)
    else:
        try:
            with open(ns.out, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(text)
        except OSError as exc:
            print(f"error: cannot write {ns.out}: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"wrote {ns.out} ({len(table)} rows + limit row)")
    return EXIT_OK


def _cmd_lambda0(ns) -> int:
    root, f_lo, f_hi = verification.lambda0_root(ns.bracket_lo, ns.bracket_hi, ns.tol or 1e-5)
    record = OutputRecord(
        command="lambda0",
        parameters={
            "bracket_lo": ns.bracket_lo,
            "bracket_hi": ns.bracket_hi,
            "tol": ns.tol or 1e-5,
            "note": "exploratory: root of limit minus two-coordinate value",
        },
        timestamp=_now(),
    )
    record.add("root", root, ns.tol or 1e-5)
    record.add("bracket_lo_difference", f_lo, 1e-9)
    record.add("bracket_hi_difference", f_hi, 1e-9)
    record.add(
        "distance_to_reference",
        abs(root - verification.LAMBDA0_REFERENCE),
        ns.tol or 1e-5,
    )
    _print_record(record, ns.json)
    return EXIT_OK


def _cmd_verify(ns) -> int:
    results = verification.run_checks(only=ns.only)
    record = OutputRecord(
        command="verify",
        parameters={"only": ns.only or "all"},
        timestamp=_now(),
    )
    failed = False
    for result in results:
        if not ns.json:
            print(result.summary_line())
            for line in result.details:
                print(f"    {line}")
        if not result.passed and not result.exploratory:
            failed = True
        record.results.append(
            {
                "check": result.check_id,
                "title": result.title,
                "passed": result.passed,
                "exploratory": result.exploratory,
                "duration_s": result.duration_s,
                "details": result.details,
            }
        )
    if ns.json:
        print(record.to_json())
    else:
        total = len(results)
        good = sum(1 for r in results if r.passed or r.exploratory)
        print(f"{good}/{total} checks passed (exploratory checks never fail the run)")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubesec",
        description=(
            "Gaussian-weighted central sections of the cube [-1,1]^n: "
            "section values, sweeps, the large-n limit, and verification."
        ),
    )
    parser.add_argument("--config", metavar="PATH", help="key = value file with quadrature tolerances and scan ranges")
    sub = parser.add_subparsers(dest="command", required=True)

    p_section = sub.add_parser("section", help="one section value A(u)")
    p_section.add_argument("--n", type=int, required=True, help="ambient dimension")
    p_section.add_argument("--b", type=float, required=True, help="Gaussian weight, >= 0")
    p_section.add_argument(
        "--dir", choices=("diagonal", "axis", "two_coord"), default="diagonal"
    )
    p_section.add_argument("--tol", type=float, help="relative quadrature tolerance")
    p_section.add_argument("--json", action="store_true", help="machine-readable output")

    p_limit = sub.add_parser("limit", help="the n -> infinity value with its breakdown")
    p_limit.add_argument("--b", type=float, required=True, help="Gaussian weight, > 0")
    p_limit.add_argument("--json", action="store_true")

    p_scan = sub.add_parser("scan", help="sweep A(diagonal) over a range of n")
    p_scan.add_argument("--b", type=float, required=True)
    p_scan.add_argument("--n-min", type=int, default=None, dest="n_min")
    p_scan.add_argument("--n-max", type=int, default=None, dest="n_max")
    p_scan.add_argument("--format", choices=("csv", "json"), default="csv")
    p_scan.add_argument("--out", metavar="PATH", help="output path ('-' for stdout)")
    p_scan.add_argument("--tol", type=float)

    p_lambda = sub.add_parser(
        "lambda0", help="exploratory: crossing of the limit vs the two-coordinate value"
    )
    p_lambda.add_argument("--bracket-lo", type=float, default=0.1, dest="bracket_lo")
    p_lambda.add_argument("--bracket-hi", type=float, default=0.3, dest="bracket_hi")
    p_lambda.add_argument("--tol", type=float, default=1e-5)
    p_lambda.add_argument("--json", action="store_true")

    p_verify = sub.add_parser("verify", help="run the verification suite")
    p_verify.add_argument("--only", metavar="NAME", help="run a single check by id")
    p_verify.add_argument("--json", action="store_true")

    return parser


_COMMANDS = {
    "section": _cmd_section,
    "limit": _cmd_limit,
    "scan": _cmd_scan,
    "lambda0": _cmd_lambda0,
    "verify": _cmd_verify,
}


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        ns._config_values = _load_config_file(ns.config) if ns.config else {}
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        return _COMMANDS[ns.command](ns)
    except BracketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BRACKET
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.result is not None:
            print(
                f"  best estimate {_fmt(exc.result.value)} "
                f"+/- {exc.result.error_estimate:.3e}",
                file=sys.stderr,
            )
        return EXIT_NONCONVERGENCE
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (DomainError, CubesecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands expose every computation and verification suite with
machine-readable output (json, csv, text).  Exit codes: 0 all checks
passed, 2 at least one inconclusive, 3 at least one failure or domain
error, 64 usage error.  High-precision values always serialize as
decimal strings with an explicit radius field.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import re
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .ball import DomainError, PiMultiple
from .bounds import subadditivity_bound, superadditivity_bound
from .derivatives import deriv
from .identities import pi_series
from .numbers import bernoulli, euler
from .reports import GridReport, ball_json, canonical_json
from . import suites

ENV_PRECISION = "VERSINE_PRECISION_BITS"

USAGE_EXIT = 64


@dataclass
class RunConfig:
    precision_bits: int = 128
    grid_density: int = 100
    max_order: int = 20
    output_format: str = "text"
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.precision_bits < 53:
            raise DomainError("precision_bits must be >= 53")
        if self.grid_density < 2:
            raise DomainError("grid_density must be >= 2")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(USAGE_EXIT)


_PI_FORM = re.compile(r"^(-?\d+)?pi(?:/(\d+))?$")


def parse_point(text: str):
    """Accepts 'pi', '2pi/3', '-pi/4', 'pi/2' or a plain decimal string."""
    s = text.strip().replace(" ", "").replace("*", "")
    m = _PI_FORM.match(s)
    if m:
        num = int(m.group(1)) if m.group(1) else 1
        den = int(m.group(2)) if m.group(2) else 1
        return PiMultiple(Fraction(num, den))
    try:
        float(s)
    except ValueError:
        raise DomainError(f"cannot parse point {text!r}: use e.g. 1.25, pi/2, 2pi/3")
    return s


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--precision-bits", type=int, default=None,
                   help=f"working precision request (default 128, env {ENV_PRECISION})")
    p.add_argument("--grid-density", type=int, default=None,
                   help="grid density for sweeps (default 100, or the suite default)")
    p.add_argument("--max-order", type=int, default=None,
                   help="maximum derivative order for sweeps (default 20)")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text",
                   dest="output_format", help="output format")
    p.add_argument("--output", dest="output_path", default=None,
                   help="write the report to this path (atomically) instead of stdout")


def build_parser() -> _Parser:
    root = _Parser(prog="versine", description=__doc__.splitlines()[0])
    sub = root.add_subparsers(dest="command", required=True)

    numbers = sub.add_parser("numbers", help="exact Bernoulli / Euler numbers")
    nsub = numbers.add_subparsers(dest="which", required=True)
    for which in ("bernoulli", "euler"):
        p = nsub.add_parser(which)
        p.add_argument("--n", type=int, required=True)
        _add_common(p)

    p = sub.add_parser("deriv", help="enclosure of a derivative of 1/(1-cos x)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=str, required=True, help="point: decimal, pi/2, 2pi/3, ...")
    p.add_argument("--method", choices=("series", "symbolic", "jet"), default="series")
    _add_common(p)

    p = sub.add_parser("bounds", help="sharp additivity bound for order n")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("pi", help="enclosure of pi from the rational series")
    p.add_argument("--terms", type=int, required=True)
    _add_common(p)

    verify = sub.add_parser("verify", help="verification suites")
    vsub = verify.add_subparsers(dest="suite", required=True)

    p = vsub.add_parser("subadd", help="sharp sub/superadditivity on the simplex")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)

    p = vsub.add_parser("monotone", help="complete/absolute monotonicity sweep")
    p.add_argument("--fn", type=str, required=True,
                   help="function id, e.g. recip_versine, exp_cot, cosecant")
    _add_common(p)

    p = vsub.add_parser("identity", help="series identity checks")
    p.add_argument("--which", choices=("h", "lampret", "kolbig", "pi"), required=True)
    _add_common(p)

    p = vsub.add_parser("all", help="the full battery (CI entry point)")
    _add_common(p)

    return root


def _config(args) -> RunConfig:
    prec = args.precision_bits
    if prec is None:
        prec = int(os.environ.get(ENV_PRECISION, "128"))
    return RunConfig(
        precision_bits=prec,
        grid_density=args.grid_density if args.grid_density is not None else 100,
        max_order=args.max_order if args.max_order is not None else 20,
        output_format=args.output_format,
        output_path=args.output_path,
    )


def _write_out(cfg: RunConfig, text: str) -> None:
    if cfg.output_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    directory = os.path.dirname(os.path.abspath(cfg.output_path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".versine-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
        os.replace(tmp, cfg.output_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit_scalar(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.output_format == "json":
        _write_out(cfg, canonical_json(payload))
    elif cfg.output_format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=sorted(payload))
        writer.writeheader()
        writer.writerow(payload)
        _write_out(cfg, buf.getvalue())
    else:
        _write_out(cfg, text)


def _emit_reports(cfg: RunConfig, reports: list[GridReport]) -> int:
    status = max((r.status() for r in reports), default=0)
    if cfg.output_format == "json":
        payload = {
            "all_passed": all(r.all_passed for r in reports),
            "suites": [r.to_json_dict() for r in reports],
        }
        _write_out(cfg, canonical_json(payload))
    elif cfg.output_format == "csv":
        buf = io.StringIO()
        rows = [row for r in reports for row in r.csv_rows()]
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
        _write_out(cfg, buf.getvalue())
    else:
        blocks = [r.to_text() for r in reports]
        verdict = "ALL PASSED" if status == 0 else ("INCONCLUSIVE" if status == 2 else "FAILED")
        _write_out(cfg, ("\n\n".join(blocks)) + f"\n\noverall: {verdict}\n")
    return status


def _cmd_numbers(args, cfg: RunConfig) -> int:
    if args.which == "bernoulli":
        value = bernoulli(args.n)
        text = str(value)
        payload = {"kind": "bernoulli", "n": args.n, "value": text}
    else:
        value = euler(args.n)
        text = str(value)
        payload = {"kind": "euler", "n": args.n, "value": text}
    _emit_scalar(cfg, payload, text)
    return 0


def _cmd_deriv(args, cfg: RunConfig) -> int:
    x = parse_point(args.x)
    val = deriv(args.n, x, cfg.precision_bits, method=args.method)
    payload = {"n": args.n, "x": args.x, "method": args.method, **ball_json(val)}
    _emit_scalar(cfg, payload, f"{val.mid_str(36)} +/- {val.rad_str(8)}")
    return 0


def _cmd_bounds(args, cfg: RunConfig) -> int:
    if args.n % 2 == 0:
        value = subadditivity_bound(args.n)
        kind = "subadditivity_lower_bound"
    else:
        value = superadditivity_bound(args.n)
        kind = "superadditivity_lower_bound"
    _emit_scalar(cfg, {"kind": kind, "n": args.n, "value": str(value)}, str(value))
    return 0


def _cmd_pi(args, cfg: RunConfig) -> int:
    se = pi_series(args.terms, cfg.precision_bits)
    payload = {"terms": args.terms, "tail_bound": repr(se.tail_bound),
               **ball_json(se.value)}
    _emit_scalar(cfg, payload, f"{se.value.mid_str(36)} +/- {se.value.rad_str(8)}")
    return 0


def _cmd_verify(args, cfg: RunConfig) -> int:
    if args.suite == "subadd":
        reports = [suites.subadditivity_report(args.n, cfg.grid_density, cfg.precision_bits)]
    elif args.suite == "monotone":
        reports = suites.monotonicity_reports(args.fn, cfg.precision_bits,
                                              grid_density=args.grid_density)
    elif args.suite == "identity":
        which = args.which
        if which == "h":
            reports = [suites.blend_identity_report(prec=cfg.precision_bits)]
        elif which == "lampret":
            reports = [suites.halfpi_gap_report(prec=cfg.precision_bits)]
        elif which == "kolbig":
            reports = [suites.quarter_gap_report(prec=cfg.precision_bits)]
        else:
            reports = [suites.pi_series_report(prec=cfg.precision_bits)]
    else:  # all
        reports = suites.run_all(prec=cfg.precision_bits,
                                 grid_density=cfg.grid_density,
                                 max_order=cfg.max_order)
    return _emit_reports(cfg, reports)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "numbers":
            return _cmd_numbers(args, cfg)
        if args.command == "deriv":
            return _cmd_deriv(args, cfg)
        if args.command == "bounds":
            return _cmd_bounds(args, cfg)
        if args.command == "pi":
            return _cmd_pi(args, cfg)
        if args.command == "verify":
            return _cmd_verify(args, cfg)
        parser.error(f"unknown command {args.command!r}")
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end: ``ordlaw <command> ...``.

Exit status 0 on success, 1 on usage errors, 2 when a computation or an
input file fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from typing import Optional, Sequence

from .checks import run_checks
from .config import FORMATS, Config, load_config
from .counting import count_series, matula_census, radius_estimate
from .ordinals import format_ordinal, format_segment, matula_decode, matula_encode, parse_ordinal, parse_segment
from .recognizer import Recognizer, asymptotic_probability, builtin, eval_recognizer, load_recognizer, spectrum
from .semilinear import LinearSet, load_set
from .tauberian import closed_form_limit, density_series, semilinear_limit


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc.strerror}") from None


def _recognizer(spec: str) -> Recognizer:
    if spec.startswith("builtin:"):
        try:
            return builtin(spec.split(":", 1)[1])
        except KeyError as exc:
            raise ValueError(exc.args[0]) from None
    try:
        return load_recognizer(_read(spec))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{spec}: not valid JSON ({exc.msg})") from None


def _set(path: str):
    try:
        return load_set(_read(path))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc.msg})") from None


def _rows(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(cfg: Config, payload: dict, header: Sequence[str], rows) -> str:
    if cfg.format == "json":
        return json.dumps(payload, indent=2) + "\n"
    return _rows(header, rows)


def _truncation(cfg: Config, n: int) -> int:
    if n > cfg.truncation:
        raise ValueError(f"truncation {n} exceeds the cap {cfg.truncation}")
    return n


# ---------------------------------------------------------------- commands

def cmd_count(args, cfg: Config) -> str:
    cs = count_series(parse_segment(args.segment), _truncation(cfg, args.n), cfg.truncation)
    if cfg.format == "json":
        return cs.to_json() + "\n"
    return cs.to_csv()


def cmd_rho(args, cfg: Config) -> str:
    cs = count_series(parse_segment(args.segment), _truncation(cfg, args.n), cfg.truncation)
    est = radius_estimate(cs, cfg.ratio_window)
    payload = {"segment": format_segment(cs.segment), "n": args.n, "rho": float(f"{est.rho:.10g}"),
               "spread": float(f"{est.spread:.10g}"), "window": [float(f"{v:.10g}") for v in est.window]}
    rows = [("rho", f"{est.rho:.10g}"), ("spread", f"{est.spread:.10g}")]
    return _emit(cfg, payload, ("key", "value"), rows)


def _report(report, cfg: Config) -> str:
    return report.to_json() + "\n" if cfg.format == "json" else report.to_csv()


def cmd_density(args, cfg: Config) -> str:
    S = _set(args.set)
    return _report(density_series(S, _truncation(cfg, args.n), cfg.truncation, cfg.piece_cap), cfg)


def cmd_limit(args, cfg: Config) -> str:
    S = _set(args.set)
    if isinstance(S, LinearSet):
        report = closed_form_limit(S, window=cfg.ratio_window)
    else:
        report = semilinear_limit(S, window=cfg.ratio_window, piece_cap=cfg.piece_cap)
    return _report(report, cfg)


def cmd_spectrum(args, cfg: Config) -> str:
    S = spectrum(_recognizer(args.rec), parse_segment(args.segment))
    rows = [(p.tail, " ".join(map(str, p.a)), " ".join(map(str, p.b))) for p in S.parts]
    return _emit(cfg, S.to_dict(), ("tail", "a", "b"), rows)


def cmd_prob(args, cfg: Config) -> str:
    R = _recognizer(args.rec)
    n = None if args.n is None else _truncation(cfg, args.n)
    report = asymptotic_probability(R, parse_segment(args.segment), n,
                                    cfg.truncation, window=cfg.ratio_window,
                                    piece_cap=cfg.piece_cap)
    return _report(report, cfg)


def cmd_matula(args, cfg: Config) -> str:
    if args.action == "encode":
        x = parse_ordinal(args.value)
        return _emit(cfg, {"ordinal": format_ordinal(x), "code": matula_encode(x)},
                     ("ordinal", "code"), [(format_ordinal(x), matula_encode(x))])
    if args.action == "decode":
        try:
            m = int(args.value)
        except ValueError:
            raise UsageError(f"matula decode: expected a positive integer, got {args.value!r}") from None
        x = matula_decode(m)
        return _emit(cfg, {"code": m, "ordinal": format_ordinal(x)},
                     ("code", "ordinal"), [(m, format_ordinal(x))])
    beta = parse_segment(args.value)
    pred = None
    if args.rec:
        R = _recognizer(args.rec)
        pred = lambda x: eval_recognizer(R, x)  # noqa: E731
    census = matula_census(beta, args.n, pred, cfg.matula_cap)
    if args.every > 1:
        census_rows = [(n, c, h) for n, (c, h) in enumerate(census, 1) if n % args.every == 0 or n == args.n]
    else:
        census_rows = [(n, c, h) for n, (c, h) in enumerate(census, 1)]
    payload = {"segment": format_segment(beta), "rows": [list(r) for r in census_rows]}
    return _emit(cfg, payload, ("n", "count", "hits"), census_rows)


def cmd_check(args, cfg: Config) -> str:
    results = run_checks(cfg)
    args.failed = any(not r.passed for r in results)
    if cfg.format == "json":
        return json.dumps([{"check": r.name, "passed": r.passed, "detail": r.detail} for r in results],
                          indent=2) + "\n"
    width = max(len(r.name) for r in results)
    lines = [f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL'}  {r.detail}" for r in results]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    # global options are accepted before or after the command name
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS,
                        help="output format (default from config: csv)")
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="JSON config file (default: $ORDLAW_CONFIG)")
    p = _Parser(prog="ordlaw", description="Exact norm censuses and limit laws for ordinals.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    add = sub.add_parser
    sub.add_parser = lambda *a, **kw: add(*a, parents=[common], **kw)

    s = sub.add_parser("count", help="counting series c(0..N) of a segment")
    s.add_argument("segment")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("rho", help="radius of convergence from coefficient ratios")
    s.add_argument("segment")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_rho)

    s = sub.add_parser("density", help="exact densities D(0..N) of a set")
    s.add_argument("--set", required=True, help="linear or semilinear set (JSON)")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("limit", help="closed-form limit density of a set")
    s.add_argument("--set", required=True, help="linear or semilinear set (JSON)")
    s.set_defaults(func=cmd_limit)

    rec_help = "recognizer JSON file or builtin:<name>"
    s = sub.add_parser("spectrum", help="spectrum of a recognizer as a semilinear set")
    s.add_argument("--rec", required=True, help=rec_help)
    s.add_argument("--segment", required=True)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("prob", help="asymptotic probability of a recognizer")
    s.add_argument("--rec", required=True, help=rec_help)
    s.add_argument("--segment", required=True)
    s.add_argument("--n", type=int, help="also list exact probabilities up to N")
    s.set_defaults(func=cmd_prob)

    s = sub.add_parser("matula", help="Matula codes of ordinals")
    s.add_argument("action", choices=("encode", "decode", "census"))
    s.add_argument("value", help="ordinal (encode), code (decode) or segment (census)")
    s.add_argument("--n", type=int, default=1000, help="census size")
    s.add_argument("--rec", help=f"census predicate, {rec_help}")
    s.add_argument("--every", type=int, default=1, help="census: print every k-th row")
    s.set_defaults(func=cmd_matula)

    s = sub.add_parser("check", help="run the oracle cross-validation suite")
    s.set_defaults(func=cmd_check)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(exc, file=sys.stderr)
        return 1
    try:
        cfg = load_config(getattr(args, "config", None))
        if getattr(args, "format", None):
            cfg = replace(cfg, format=args.format)
        out = args.func(args, cfg)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: config is not valid JSON ({exc.msg})", file=sys.stderr)
        return 2
    except (ValueError, KeyError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return 2 if getattr(args, "failed", False) else 0


if __name__ == "__main__":
    sys.exit(main())

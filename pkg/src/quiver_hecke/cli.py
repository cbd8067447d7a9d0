"""The ``klr`` command line: multiply, compute Lambda, run verification suites."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional

import pandas as pd
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from quiver_hecke.cache import load_json, save_json
from quiver_hecke.cartan import (
    PRESETS,
    CartanDatum,
    associator_by_name,
    extend_cartan,
    preset,
)
from quiver_hecke.catalogue import module_from_spec
from quiver_hecke.config import Config, set_config
from quiver_hecke.errors import (
    KLRError,
    NotLambdaDefinable,
    ParseError,
    TruncationExhausted,
)
from quiver_hecke.models import Report
from quiver_hecke.parser import element_from_text
from quiver_hecke.qha import KLRAlgebra, render
from quiver_hecke.reflect import generator_report, psi_isometry, verify_bos
from quiver_hecke.rmat import delta, lambda_tilde, rmatrix
from quiver_hecke.suites import ALIASES, SUITES, SuiteContext, build_cases, run_case, run_suite

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNDEFINED = 3
EXIT_TRUNCATION = 4

ASSOCIATORS = ("canonical", "lambda+", "lambda-")

console = Console()
logger = logging.getLogger("quiver_hecke")


class UsageError(Exception):
    """Bad flags or arguments; reported with exit code 2."""


def _common(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--type", default=None, choices=sorted(PRESETS),
                        help="Named Cartan type (default: A2)")
    source.add_argument("--cartan", type=Path, help="Cartan datum as a JSON file")
    parser.add_argument("--i", dest="i", help="Index to extend at / reflect along")
    parser.add_argument("--assoc", choices=ASSOCIATORS, default="canonical",
                        help="Grade associator (default: canonical)")
    parser.add_argument("--field", help="Base field: Q or Fp:<p> (default: KLR_FIELD or Q)")
    parser.add_argument("--trunc", type=int, help="Truncation depth N of k[z]/z^N")
    parser.add_argument("--seed", type=int, help="Seed for randomized spot checks (default: 0)")
    parser.add_argument("--workers", type=int, help="Concurrent workers for suites")
    parser.add_argument("--data-dir", type=Path, help="Data directory (default: data/)")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klr",
        description="Exact computations in quiver Hecke algebras",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Normal form of a product
  klr mul --type A2 --beta 1,1 "tau(1)*tau(1)*e(1,2)"

  # Lambda, Lambda-tilde and delta of two simple modules
  klr lambda --type A2 "<1>" "<2>"
  klr lambda --type A2 --i 1 --assoc lambda+ C+ "<2>"

  # Run a verification suite
  klr verify thJ --type A2 --ht 4
  klr verify lasw --type B2 --i 1
  klr verify all --type A1 --out report.json --csv report.csv

  # Generator classes and braid-symmetry relations
  klr reflect-check --type A2 --i 1
""",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    mul = sub.add_parser("mul", help="Print the normal form of an element")
    _common(mul)
    mul.add_argument("expr", help="Element, e.g. 'tau(1)*x(2)^3*e(1,2)'")
    mul.add_argument("--beta", required=True, help="Weight as coefficients, e.g. 1,1")

    lam = sub.add_parser("lambda", help="Lambda, Lambda-tilde and delta of two modules")
    _common(lam)
    lam.add_argument("M", help="Module spec: 1, <1|2>, hd<12>, 1^3, det<1,2>, C+, C-")
    lam.add_argument("N", help="Module spec")

    verify = sub.add_parser("verify", help="Run a named verification suite")
    _common(verify)
    verify.add_argument("suite", choices=SUITES + tuple(ALIASES) + ("all",))
    verify.add_argument("--ht", type=int, default=4, help="Height bound (default: 4)")
    verify.add_argument("--out", type=Path, help="JSON report path")
    verify.add_argument("--csv", type=Path, help="Also export the case table as CSV")
    verify.add_argument("--all-rows", action="store_true",
                        help="List passing cases in the summary table too")

    reflect = sub.add_parser("reflect-check", help="Generator images and braid relations")
    _common(reflect)
    reflect.add_argument("--out", type=Path, help="JSON output path")
    return parser


# ----- setup -----


def _config(args) -> Config:
    config = Config(
        field=args.field,
        trunc=args.trunc,
        workers=args.workers,
        seed=args.seed,
        data_dir=None if args.data_dir is None else str(args.data_dir),
        log_level=args.log_level,
    )
    config.validate()
    return config


def _setup_logging(level: str) -> None:
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, show_path=False, rich_tracebacks=True)],
        force=True,
    )


def _datum(args) -> tuple[CartanDatum, str]:
    if args.cartan is not None:
        data = load_json(args.cartan)
        if data is None:
            raise UsageError(f"Cartan file not found: {args.cartan}")
        return CartanDatum.from_dict(data), args.cartan.stem
    name = args.type or "A2"
    return preset(name), name


def _check_index(datum: CartanDatum, i: Optional[str]) -> None:
    if i is not None and i not in datum.index_set:
        raise UsageError(f"--i {i} is not an index of {datum.index_set}")


def _algebra(args, config: Config, datum: CartanDatum, wants: Optional[str] = None) -> KLRAlgebra:
    """
    The algebra the command works over: the base datum, or its extension at --i
    when a lambda+- associator is chosen or a module needs C+-.
    """
    sign = args.assoc[-1] if args.assoc in ("lambda+", "lambda-") else wants
    if sign is not None:
        if args.i is None:
            raise UsageError("an extended algebra needs --i")
        _check_index(datum, args.i)
        datum = extend_cartan(datum, args.i, sign)
    return KLRAlgebra(datum, associator_by_name(datum, args.assoc),
                      domain=config.domain(), fuel=config.fuel)


def _beta(datum: CartanDatum, text: str):
    try:
        coeffs = [int(part) for part in text.split(",")]
    except ValueError as e:
        raise ParseError(f"--beta must be comma separated integers, got {text!r}") from e
    if len(coeffs) != datum.rank:
        raise ParseError(f"--beta needs {datum.rank} coefficients, got {len(coeffs)}")
    if any(c < 0 for c in coeffs):
        raise ParseError("--beta must be in the positive cone")
    return datum.root_from_labels(dict(zip(datum.index_set, coeffs)))


# ----- commands -----


def cmd_mul(args, config: Config) -> int:
    datum, _ = _datum(args)
    alg = _algebra(args, config, datum)
    beta = _beta(alg.datum, args.beta)
    element = element_from_text(args.expr, beta, alg)
    console.print(render(element))
    return EXIT_PASS


def _wanted_sign(*specs: str) -> Optional[str]:
    for spec in specs:
        s = spec.strip()
        if s in ("C+", "C-"):
            return s[1]
    return None


def cmd_lambda(args, config: Config) -> int:
    datum, _ = _datum(args)
    alg = _algebra(args, config, datum, wants=_wanted_sign(args.M, args.N))
    M = module_from_spec(alg, args.M)
    N = module_from_spec(alg, args.N)
    r = rmatrix(M, N)
    out = {
        "M": M.name,
        "N": N.name,
        "Lambda": str(r.Lambda),
        "Lambda_tilde": str(lambda_tilde(M, N)),
        "delta": str(delta(M, N)),
        "method": r.method,
    }
    console.print_json(json.dumps(out))
    return EXIT_PASS


def _summary(report: Report, all_rows: bool) -> None:
    rows = report.cases if all_rows else [c for c in report.cases if not c.passed]
    if rows:
        table = Table(title=f"{report.suite} on {report.cartan}")
        table.add_column("Case", style="cyan")
        table.add_column("Expected")
        table.add_column("Computed")
        table.add_column("Status")
        styles = {"pass": "green", "fail": "red", "error": "yellow"}
        for c in rows:
            computed = c.computed if c.status != "error" else f"{c.error_type}: {c.error}"
            table.add_row(f"{c.suite}/{c.key}", c.expected or "", computed or "",
                          f"[{styles[c.status]}]{c.status}[/{styles[c.status]}]")
        console.print(table)
    counts = report.counts()
    console.print(f"\n[green]✓ Passed: {counts['pass']}[/green]")
    if counts["fail"]:
        console.print(f"[red]✗ Failed: {counts['fail']}[/red]")
    if counts["error"]:
        console.print(f"[yellow]! Errors: {counts['error']}[/yellow]")


def cmd_verify(args, config: Config) -> int:
    datum, name = _datum(args)
    _check_index(datum, args.i)
    ctx = SuiteContext(datum, config, i=args.i, ht=args.ht)
    report = run_suite(args.suite, ctx, name, console=console)
    out = args.out or config.reports_dir / f"{name}-{args.suite}.json"
    save_json(out, report.to_dict())
    console.print(f"[dim]Report: {out}[/dim]")
    if args.csv is not None:
        args.csv.parent.mkdir(parents=True, exist_ok=True)
        pd.DataFrame(report.rows()).to_csv(args.csv, index=False)
        console.print(f"[dim]Table: {args.csv}[/dim]")
    _summary(report, args.all_rows)
    if report.errors_of(TruncationExhausted.__name__):
        console.print("[yellow]A z-adic order reached the truncation depth; "
                      "rerun with a larger --trunc.[/yellow]")
        return EXIT_TRUNCATION
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_reflect_check(args, config: Config) -> int:
    datum, name = _datum(args)
    if args.i is None:
        raise UsageError("reflect-check needs --i")
    _check_index(datum, args.i)
    ctx = SuiteContext(datum, config, i=args.i)
    diei = [run_case(case) for case in build_cases("diei", ctx)]
    out = {
        "cartan": name,
        "i": args.i,
        "generators": generator_report(datum, args.i),
        "bos": verify_bos(datum, args.i, config.seed),
        "psi_isometry": psi_isometry(datum, args.i),
        "diei": [c.to_dict() for c in diei],
    }
    out["pass"] = (all(r["pass"] for r in out["generators"]) and out["bos"]["pass"]
                   and out["psi_isometry"]["pass"] and all(c.passed for c in diei))
    if args.out is not None:
        save_json(args.out, out)
        console.print(f"[dim]Saved to {args.out}[/dim]")
    else:
        console.print_json(json.dumps(out, default=str))
    if any(c.error_type == TruncationExhausted.__name__ for c in diei):
        return EXIT_TRUNCATION
    return EXIT_PASS if out["pass"] else EXIT_FAIL


COMMANDS = {
    "mul": cmd_mul,
    "lambda": cmd_lambda,
    "verify": cmd_verify,
    "reflect-check": cmd_reflect_check,
}


def main(argv: Optional[list[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = _config(args)
    except ValueError as e:
        console.print(f"[red]Error: {e}[/red]")
        return EXIT_USAGE
    set_config(config)
    _setup_logging(config.log_level)

    try:
        return COMMANDS[args.command](args, config)
    except (UsageError, ParseError, ValueError) as e:
        console.print(f"[red]Error: {e}[/red]")
        return EXIT_USAGE
    except NotLambdaDefinable as e:
        console.print(f"[red]Lambda is not defined: {e}[/red]")
        return EXIT_UNDEFINED
    except TruncationExhausted as e:
        console.print(f"[yellow]{e}; rerun with a larger --trunc.[/yellow]")
        return EXIT_TRUNCATION
    except KLRError as e:
        console.print(f"[red]{type(e).__name__}: {e}[/red]")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface: audits, characterization demos, decompositions.

Exit codes: 0 all expectations met, 1 a law failed unexpectedly (or a demo
failed to falsify), 2 usage/config error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__, serialize
from .algebra import parse_algebra, trace
from .auditor import (
    ALL_LAWS,
    AuditReport,
    LawId,
    SuiteConfig,
    SuiteRow,
    default_config,
    demo_characterizations,
    run_full_suite,
)
from .errors import (
    CapabilityError,
    ConfigError,
    NumericalFailureError,
    PreconditionError,
    SeqprodError,
)
from .spectral import spectral_decompose

_EXIT_MISMATCH = 1
_EXIT_USAGE = 2
_EXIT_NUMERICAL = 3


def _default_seed() -> int:
    env = os.environ.get("SEQPROD_SEED")
    if env is None:
        return 42
    try:
        return int(env)
    except ValueError:
        raise ConfigError(f"SEQPROD_SEED must be an integer, got {env!r}") from None


def _print_report(report: AuditReport, out=None):
    out = out if out is not None else sys.stdout
    header = f"{'law':<20} {'product':<12} {'algebra':<22} {'trials':>6} {'verdict':<8} {'expected':<9} {'residual':>12} {'ms':>9}"
    print(header, file=out)
    print("-" * len(header), file=out)
    for e in report.entries:
        mark = "" if e.as_expected else "  <-- MISMATCH"
        detail = f"{e.max_residual:>12.3e}" if e.error is None else "           -"
        print(f"{e.law:<20} {e.product:<12} {e.algebra:<22} {e.trials:>6} "
              f"{e.verdict:<8} {e.expected:<9} {detail} {e.elapsed_ms:>9.1f}{mark}",
              file=out)
        if e.error is not None:
            print(f"    error: {e.error}", file=out)
    print(f"overall: {report.status} ({len(report.entries)} rows, seed {report.seed})",
          file=out)


def _write_json(path: str, payload: dict):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _print_witness_block(entry, out=None):
    out = out if out is not None else sys.stdout
    print(f"witness {entry.law} on {entry.algebra} with {entry.product}:", file=out)
    w = entry.witness
    print(f"  trial {w['trial']}, residual {w['residual']:.6e}", file=out)
    for name, value in w["inputs"].items():
        if isinstance(value, dict) and value.get("__type__") == "element":
            elem = serialize.element_from_json(value)
            data = elem.data
            if isinstance(data, np.ndarray):
                body = np.array2string(data, precision=5, suppress_small=True)
            else:
                body = repr(data)
            print(f"  {name} =\n    " + body.replace("\n", "\n    "), file=out)
        elif isinstance(value, dict) and value.get("__type__") == "linear_map":
            print(f"  {name} = order isomorphism {value.get('label', '')!r}", file=out)
        else:
            print(f"  {name} = {value}", file=out)


def _cmd_audit(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.config and args.algebra:
        raise ConfigError("pass either --config or --algebra, not both")
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            config = SuiteConfig.from_json(json.load(fh))
        if args.seed is not None:
            config.seed = args.seed
    elif args.algebra:
        alg = parse_algebra(args.algebra)  # raises ConfigError on bad shorthand
        if args.laws == "all":
            laws = [law.value for law in ALL_LAWS]
        else:
            laws = [name.strip() for name in args.laws.split(",") if name.strip()]
            for name in laws:
                if name not in LawId._value2member_map_:
                    raise ConfigError(f"unknown law {name!r}")
        # twisted products are expected to break these three laws
        expected_fail = {LawId.INVARIANCE.value, LawId.SYMMETRY.value,
                         LawId.INVERTIBILITY_PRES.value}
        twisted = args.product.startswith("twisted:") and not args.product.endswith(":0.0")
        if twisted and not alg.is_complex_kind():
            raise CapabilityError(
                f"twisted products need a complex Hermitian algebra, not {alg}")
        rows = []
        for name in laws:
            expect = "fail" if twisted and name in expected_fail else "pass"
            tol = 1e-3 if expect == "fail" else args.tol
            trials = 10 if expect == "fail" else args.trials
            rows.append(SuiteRow(name, args.product, args.algebra,
                                 trials=trials, tol=tol, expect=expect))
        config = SuiteConfig(rows=rows, seed=seed)
    else:
        config = default_config(seed)
    report = run_full_suite(config)
    _print_report(report)
    if args.out:
        _write_json(args.out, report.to_json())
    return 0 if report.status == "pass" else _EXIT_MISMATCH


def _cmd_demo(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    report = demo_characterizations(seed)
    _print_report(report)
    print()
    found = [e for e in report.entries if e.witness is not None]
    for entry in found:
        _print_witness_block(entry)
        print()
    if args.out:
        _write_json(args.out, report.to_json())
    return 0 if report.status == "pass" else _EXIT_MISMATCH


def _cmd_decompose(args) -> int:
    with open(args.infile, encoding="utf-8") as fh:
        element = serialize.element_from_json(json.load(fh))
    dec = spectral_decompose(element, gap=args.gap)
    print(f"algebra: {element.algebra.shorthand()}  ({len(dec.pairs)} distinct eigenvalues)")
    for lam, proj in dec.pairs:
        print(f"  eigenvalue {lam: .12g}   multiplicity {trace(proj):.6g}")
    if args.out:
        _write_json(args.out, serialize.decomposition_to_json(dec))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqprod",
        description="Audit sequential-product laws on Euclidean Jordan algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_audit = sub.add_parser("audit", help="run a law suite")
    p_audit.add_argument("--config", help="suite config JSON file")
    p_audit.add_argument("--algebra", help="algebra shorthand for an ad-hoc row set")
    p_audit.add_argument("--product", default="standard",
                         help="standard or twisted:<t> (default standard)")
    p_audit.add_argument("--laws", default="all", help="comma-separated law names or 'all'")
    p_audit.add_argument("--trials", type=int, default=None,
                         help="trials per ad-hoc row (default: per-law defaults)")
    p_audit.add_argument("--seed", type=int, default=None,
                         help="seed (default: SEQPROD_SEED or 42)")
    p_audit.add_argument("--tol", type=float, default=None,
                         help="tolerance override for ad-hoc rows")
    p_audit.add_argument("--out", help="write the JSON report here")

    p_demo = sub.add_parser("demo", help="run the uniqueness falsification demos")
    p_demo.add_argument("what", choices=["characterizations"])
    p_demo.add_argument("--seed", type=int, default=None)
    p_demo.add_argument("--out", help="write the JSON report here")

    p_dec = sub.add_parser("decompose", help="spectrally decompose an element")
    p_dec.add_argument("--in", dest="infile", required=True, help="element JSON file")
    p_dec.add_argument("--gap", type=float, default=1e-8, help="eigenvalue clustering gap")
    p_dec.add_argument("--out", help="write the decomposition JSON here")

    sub.add_parser("version", help="print the package version")
    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        if args.command == "audit":
            return _cmd_audit(args)
        if args.command == "demo":
            return _cmd_demo(args)
        if args.command == "decompose":
            return _cmd_decompose(args)
        print(f"seqprod {__version__}")
        return 0
    except (ConfigError, CapabilityError, PreconditionError, FileNotFoundError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except NumericalFailureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return _EXIT_NUMERICAL
    except SeqprodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())

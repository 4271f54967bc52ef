#!/usr/bin/env python3
"""Run the full default law suite and write the JSON report.

Covers every law for the standard product on the five reference algebras,
the twisted products' axiom rows, and the three falsification demos.
"""

import argparse
import sys

from seqprod.cli import _print_report, _write_json
from seqprod.auditor import default_config, run_full_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--out", default="audit_report.json")
    args = parser.parse_args()
    report = run_full_suite(default_config(args.seed))
    _print_report(report)
    _write_json(args.out, report.to_json())
    print(f"report written to {args.out}")
    return 0 if report.status == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())

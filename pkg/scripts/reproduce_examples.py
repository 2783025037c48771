"""Run every verification suite and print a one-line verdict per check.

    python3 scripts/reproduce_examples.py [--suite NAME] [--json]
"""
from __future__ import annotations

import argparse
import sys

from fusionforge.serialize import canonical_dumps
from fusionforge.suites import SUITES, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suite", choices=SUITES, action="append", help="restrict to these suites")
    ap.add_argument("--json", action="store_true", help="dump canonical JSON instead of text")
    args = ap.parse_args()

    results = [run_suite(name) for name in args.suite or SUITES]
    if args.json:
        print(canonical_dumps([r.to_dict() for r in results]))
    else:
        for r in results:
            print(f"== {r.name}: {'PASS' if r.passed else 'FAIL'} ({len(r.checks)} checks)")
            for w in r.warnings:
                print(f"   warning: {w}")
            for c in r.checks:
                print(f"   {'ok  ' if c.passed else 'FAIL'} {c.name}  [{c.residual:.2g}]")
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())

"""Run the acceptance criteria and print one PASS/FAIL line per criterion.

Usage: python scripts/run_acceptance.py [criterion numbers...]
"""

import argparse
import sys

from qsmanin.acceptance import CRITERIA, run_criterion


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("numbers", nargs="*", type=int,
                        help="criteria to run (default: all)")
    args = parser.parse_args(argv)
    numbers = args.numbers or [c.number for c in CRITERIA]
    ok = True
    for k in numbers:
        if not 1 <= k <= len(CRITERIA):
            parser.error(f"no criterion {k}")
        verdict = run_criterion(k)
        print(verdict.line(), flush=True)
        ok &= verdict.ok
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

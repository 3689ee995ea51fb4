"""Run the acceptance checks and print one line per check."""
import argparse
import sys

from twistorlines.acceptance import CHECKS, run_checks


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--level", choices=("quick", "full"), default="full")
    p.add_argument("--only", type=int, nargs="*", choices=sorted(CHECKS))
    args = p.parse_args()
    results = run_checks(args.level, args.only or None)
    print(f"{sum(r.passed for r in results)}/{len(results)} passed")
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())

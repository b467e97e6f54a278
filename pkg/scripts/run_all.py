"""Run every verification scenario and write the JSON report.

    python scripts/run_all.py [--out report.json] [--timing]
"""

import argparse
import sys

from amalgam_cgt.scenarios import VerifyConfig, results_to_json, results_to_text, run_all


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="verification_report.json")
    ap.add_argument("--timing", action="store_true")
    args = ap.parse_args()
    results = run_all(VerifyConfig(timing=args.timing))
    with open(args.out, "w") as fh:
        fh.write(results_to_json(results) + "\n")
    print(results_to_text(results), end="")
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())

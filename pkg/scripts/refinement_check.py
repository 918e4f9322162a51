"""Run the selfcheck at two precisions and list every report entry that fails to refine."""

import argparse
import sys

from ellreg.selfcheck import compare_refinement, run_selfcheck


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--high", type=int, default=16)
    p.add_argument("--low", type=int, default=12)
    p.add_argument("--slack", type=int, default=2)
    args = p.parse_args()
    hi = run_selfcheck(args.high, args.slack)
    lo = run_selfcheck(args.low, args.slack)
    for doc in (hi, lo):
        print(f"N={doc['N']}: {len(doc['identities'])} identities, {doc['failures']} failed")
    diffs = compare_refinement(hi["reports"], lo["reports"])
    for d in diffs:
        print("mismatch:", d)
    print("refinement clean" if not diffs else f"{len(diffs)} mismatches")
    return 0 if hi["all_passed"] and lo["all_passed"] and not diffs else 1


if __name__ == "__main__":
    sys.exit(main())

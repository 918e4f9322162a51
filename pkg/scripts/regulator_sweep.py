"""Classical and new regulators of every bundled field over a range of precisions."""

import argparse

from ellreg.padic import PrecisionContext
from ellreg.reports import FieldSession, regulator_report
from ellreg.specfile import bundled_fields, load_field


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--precisions", default="4,8,12,16,24")
    p.add_argument("--slack", type=int, default=2)
    args = p.parse_args()
    print(f"{'field':<14}{'N':>4}  {'kind':<10}{'val':>5}{'loss':>6}  verdict")
    for name in bundled_fields():
        spec = load_field(name)
        for N in map(int, args.precisions.split(",")):
            s = FieldSession(spec, PrecisionContext(spec.ell, N, args.slack))
            for kind in ("classical", "new"):
                try:
                    d = regulator_report(s, kind)
                except ArithmeticError as exc:
                    print(f"{spec.name:<14}{N:>4}  {kind:<10}  precision insufficient: {exc}")
                    continue
                val = "-" if d["valuation"] is None else d["valuation"]
                print(f"{spec.name:<14}{N:>4}  {kind:<10}{val:>5}{d['precision_loss']:>6}  "
                      f"{d['verdict'] or '; '.join(d['diagnostics'])}")


if __name__ == "__main__":
    main()

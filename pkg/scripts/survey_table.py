"""Tabulate primes ell = -1 (mod m) that split completely in a polynomial, with the criterion verdict."""

import argparse

from ellreg.criteria import survey_primes, zeta_conjugacy


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--poly", default="-1,1", help="ascending coefficients (default x - 1)")
    p.add_argument("--m-max", type=int, default=24)
    p.add_argument("--bound", type=int, default=200)
    args = p.parse_args()
    f = tuple(int(c) for c in args.poly.split(","))
    print(f"{'m':>4}  {'count':>5}  primes")
    for m in range(1, args.m_max + 1):
        primes = survey_primes(f, m, args.bound)
        assert all(zeta_conjugacy(q, m).answer for q in primes)
        shown = ", ".join(map(str, primes[:10])) + (" ..." if len(primes) > 10 else "")
        print(f"{m:>4}  {len(primes):>5}  {shown}")


if __name__ == "__main__":
    main()

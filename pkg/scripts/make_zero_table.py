"""Write a zero-ordinate table (one ordinate per line) using mpmath.zetazero.

Usage: python scripts/make_zero_table.py N OUT [--start K]

Generation is slow (roughly 0.3 s per zero near n=1000, 1.5 s near n=10000);
the bundled fixtures were produced with this script once and committed.
"""
import argparse
import sys

import mpmath


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("count", type=int)
    ap.add_argument("out")
    ap.add_argument("--start", type=int, default=1)
    ap.add_argument("--dps", type=int, default=25)
    args = ap.parse_args(argv)
    mpmath.mp.dps = args.dps
    mode = "a" if args.start > 1 else "w"
    with open(args.out, mode) as fh:
        if mode == "w":
            fh.write("# Imaginary parts of the first %d nontrivial zeros of zeta(s)\n" % args.count)
            fh.write("# source: mpmath %s zetazero(n), mp.dps=%d, printed to 15 decimals\n"
                     % (mpmath.__version__, args.dps))
        for n in range(args.start, args.count + 1):
            gamma = mpmath.zetazero(n).imag
            fh.write(mpmath.nstr(gamma, 15 + len(str(int(gamma))), strip_zeros=False) + "\n")
            if n % 100 == 0:
                fh.flush()
                print(n, file=sys.stderr)


if __name__ == "__main__":
    main()

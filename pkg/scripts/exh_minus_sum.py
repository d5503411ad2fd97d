"""Partial sums and tails along the Exh-minus-Sum witness of sub-block variant (b)."""
import argparse
import time

from submeasures.core import sum_exh_diagnostics
from submeasures.extended import format_ext
from submeasures.ideals import ejemadecuada_generator
from submeasures.streams import SetStream


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prefix", type=int, default=10_000)
    ap.add_argument("--block", type=int, default=0, help="which block the witness runs through")
    args = ap.parse_args()
    b = ejemadecuada_generator("b")
    n = args.block
    X = SetStream.from_function(lambda k: b.sub.first_of(n, k), name="witness")
    t0 = time.perf_counter()
    rep = sum_exh_diagnostics(b.spec, X, args.prefix)
    elapsed = time.perf_counter() - t0
    tails = dict(rep.tails)
    print(f"{'count':>8}  {'partial sum':>12}  tail")
    for c, s in rep.partial_sums:
        tail = tails.get(c)
        print(f"{c:>8}  {float(s):>12.4f}  {format_ext(tail) if tail is not None else '-'}")
    print(f"{rep.length} points in {elapsed:.2f}s")


if __name__ == "__main__":
    main()

"""Print the first members of the blocks B_0..B_4 of a named partition scheme."""
import argparse

from submeasures.ideals import scheme_by_name


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scheme", default="arith-v1", choices=("arith-v1", "segments-v1"))
    ap.add_argument("--blocks", type=int, default=5)
    ap.add_argument("--count", type=int, default=50)
    args = ap.parse_args()
    s = scheme_by_name(args.scheme)
    for n in range(args.blocks):
        members = s.block_prefix(n, args.count)
        print(f"B_{n}: " + ", ".join(map(str, members)))


if __name__ == "__main__":
    main()

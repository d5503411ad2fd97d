"""Distribution of exact pathology degrees over random weighted-cover tables.

Weighted cover functions are submeasures; most turn out non-pathological,
and the script counts how often the degree exceeds 1.
"""
import argparse
import random
import sys
from collections import Counter
from pathlib import Path

from submeasures.core import validate_table
from submeasures.extended import format_ext
from submeasures.pathology import pathology_degree

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from oracles import random_lscsm_table  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--universe", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    degrees = Counter()
    worst = None
    for _ in range(args.samples):
        t = random_lscsm_table(rng, args.universe)
        assert not validate_table(t)
        rep = pathology_degree(t, args.universe, args.universe)
        degrees[rep.degree] += 1
        if worst is None or rep.degree > worst[0]:
            worst = (rep.degree, rep.witness_set)
    for d, count in sorted(degrees.items()):
        print(f"{format_ext(d):>8}  {count}")
    print(f"largest degree {format_ext(worst[0])} at {list(worst[1])}")


if __name__ == "__main__":
    main()

"""Dimension, Loewy layers and stabilization length of q1e:r, with the grading rank."""

import argparse
import time

from qga.algebra import build_quotient, radical_series
from qga.gradings import grading_lattice
from qga.presentation import builtin


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rmax", type=int, default=6)
    args = ap.parse_args()
    print(f"{'r':>3} {'dim':>5} {'4r':>5} {'L':>4} {'rank':>5} {'sec':>7}  layers")
    for r in range(2, args.rmax + 1):
        p = builtin("q1e", [r])
        t = time.perf_counter()
        A = build_quotient(p)
        dt = time.perf_counter() - t
        rank = grading_lattice(p).rank
        print(f"{r:>3} {A.dimension:>5} {4 * r:>5} {A.certificate.stabilized_at:>4} {rank:>5} {dt:>7.2f}  "
              f"{radical_series(A)}")


if __name__ == "__main__":
    main()

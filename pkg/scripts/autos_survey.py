"""Automorphism counts and unipotence over small fields for the builtin families."""

import argparse
import time

from qga.algebra import build_quotient
from qga.autos import SearchSpaceExceeded, enumerate_automorphisms
from qga.presentation import builtin

CASES = [("truncated_poly", 2), ("truncated_poly", 3), ("two_loop", 1), ("two_loop", 2),
         ("linear_an", 3), ("q1e", 2)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fields", default="F2,F3,F4")
    ap.add_argument("--cap", type=int, default=2 ** 20)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    for name, r in CASES:
        for f in args.fields.split(","):
            A = build_quotient(builtin(name, [r]).with_field(f))
            t = time.perf_counter()
            try:
                cands, rep = enumerate_automorphisms(A, cap=args.cap, jobs=args.jobs)
            except SearchSpaceExceeded as exc:
                print(f"{name}:{r:<3} {f}  skipped (search space {exc.estimate})")
                continue
            dt = time.perf_counter() - t
            print(f"{name}:{r:<3} {f}  count={len(cands):<6} unipotent={rep.all_unipotent!s:<5}  {dt:.2f}s")


if __name__ == "__main__":
    main()

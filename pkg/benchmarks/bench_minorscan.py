#!/usr/bin/env python3
"""Benchmark: compiled minor-scan kernel vs the pure-Python twin.

Runs the full NVM decision on representative matrices with each kernel
and prints a comparison table.  Use --full to include the order-11 DFT
on the pure path (about half a minute).
"""

import argparse
import time

import cfmkit.minorscan as minorscan
from cfmkit.cfm import build_matrix, check_nvm, classical_dft
from cfmkit.chars import SubgroupChar
from cfmkit.field import construct_field


def _cases(full: bool):
    yield "dft-7 (3.4e3 minors)", classical_dft(7)
    yield "dft-9 (zero found)", classical_dft(9)
    f25 = construct_field(5, 2)
    yield "gf25 index-2 trivial", build_matrix(SubgroupChar(f25.subgroup_of_index(2), 0)).matrix
    if full:
        yield "dft-11 (7.1e5 minors)", classical_dft(11)


def _time(matrix, force_pure: bool, threads: int) -> tuple:
    minorscan._FORCE_PURE = force_pure
    t0 = time.perf_counter()
    report = check_nvm(matrix, threads=threads)
    return time.perf_counter() - t0, report


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--full", action="store_true", help="include dft-11 on both kernels")
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    if not minorscan.HAVE_COMPILED:
        print("note: compiled kernel unavailable; both columns run the pure twin")

    print(f"{'case':<26} {'compiled':>10} {'pure':>10} {'speedup':>8}  verdict")
    saved = minorscan._FORCE_PURE
    try:
        for name, matrix in _cases(args.full):
            t_c, rep_c = _time(matrix, False, args.threads)
            t_p, rep_p = _time(matrix, True, args.threads)
            assert rep_c.verdict == rep_p.verdict and rep_c.witness == rep_p.witness
            speed = t_p / t_c if t_c > 0 else float("inf")
            print(f"{name:<26} {t_c:>9.3f}s {t_p:>9.3f}s {speed:>7.1f}x  {rep_c.verdict}")
        if not args.full:
            minorscan._FORCE_PURE = False
            t0 = time.perf_counter()
            rep = check_nvm(classical_dft(11), threads=args.threads)
            print(f"{'dft-11 (compiled only)':<26} {time.perf_counter() - t0:>9.3f}s "
                  f"{'-':>10} {'-':>8}  {rep.verdict}")
    finally:
        minorscan._FORCE_PURE = saved


if __name__ == "__main__":
    main()

"""Print energies of T*(n,3) next to the published five-decimal values."""

import argparse
import time

from hypotree import constructions as con
from hypotree import spectral
from hypotree.reference_values import TABLE_TOL, TSTAR3_TABLE


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tol", type=float, default=1e-12)
    ap.add_argument("--extra", type=int, default=0, help="also list n up to this order")
    args = ap.parse_args()

    orders = sorted(set(TSTAR3_TABLE) | set(range(5, args.extra + 1)))
    print(f"{'n':>4} {'E(T*)':>12} {'published':>10} {'n-1':>4} {'strong':>6}")
    start = time.perf_counter()
    for n in orders:
        res = spectral.energy(con.tstar(n, 3), args.tol)
        pub = TSTAR3_TABLE.get(n)
        mark = ""
        if pub is not None:
            mark = " ok" if abs(res.energy - pub) <= TABLE_TOL else " MISMATCH"
        pub_s = f"{pub:.5f}" if pub is not None else "-"
        strong = "yes" if res.energy + res.error_bound < n - 1 else "no"
        print(f"{n:>4} {res.energy:>12.7f} {pub_s:>10} {n - 1:>4} {strong:>6}{mark}")
    print(f"# {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()

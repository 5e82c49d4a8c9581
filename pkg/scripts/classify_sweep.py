"""Grid of verdicts with witness margins, optionally checked against enumeration."""

import argparse
import csv
import sys

from hypotree import classify as cl
from hypotree import constructions as con
from hypotree.enumeration import MAX_N, exhaustive_verdict


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=30)
    ap.add_argument("--max-delta", type=int, default=10)
    ap.add_argument("--brute", type=int, default=12,
                    help="compare with exhaustive search up to this order")
    args = ap.parse_args()

    out = csv.writer(sys.stdout)
    out.writerow(["n", "delta", "kind", "verdict", "witness", "energy", "margin", "brute"])
    disagreements = 0
    for n in range(1, args.max_n + 1):
        for delta in range(min(n, args.max_delta + 1)):
            if not con.feasible(n, delta):
                continue
            for strong in (False, True):
                v = (cl.strong_exists if strong else cl.hypo_exists)(n, delta)
                brute = ""
                if n <= min(args.brute, MAX_N):
                    b = exhaustive_verdict(n, delta, strong)
                    brute = "agree" if b == v.exists else "DISAGREE"
                    disagreements += b != v.exists
                label = cl.witness_label(n, delta, strong) if v.exists else ""
                energy = f"{v.certificate.energy:.6f}" if v.certificate else ""
                margin = f"{v.margin:.6f}" if v.certificate else ""
                out.writerow([n, delta, "strong" if strong else "hypo",
                              "yes" if v.exists else "no", label, energy, margin, brute])
    print(f"# disagreements: {disagreements}", file=sys.stderr)
    return 1 if disagreements else 0


if __name__ == "__main__":
    sys.exit(main())

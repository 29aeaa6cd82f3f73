#!/usr/bin/env python3
"""Scan even targets w through realize_f_upper and log the overhead r - w/q.

Writes CSV rows q,w,r,size,M,r1,k,attempts,overhead,status,detail.
Targets the pipeline cannot reach get status=fail and the reason in detail.
"""

import argparse
import csv
import sys

from pgodd.constructions import ConstructionError, realize_f_upper
from pgodd.plane import get_plane


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[25, 27, 31])
    ap.add_argument("--lo", type=float, default=0.3, help="w from lo*q^2")
    ap.add_argument("--hi", type=float, default=0.8, help="w up to hi*q^2")
    ap.add_argument("--step", type=int, default=2)
    args = ap.parse_args()
    out = csv.writer(sys.stdout)
    out.writerow(["q", "w", "r", "size", "M", "r1", "k", "attempts", "overhead", "status", "detail"])
    for q in args.q:
        P = get_plane(q)
        start = int(args.lo * q * q) // 2 * 2
        for w in range(max(2, start), int(args.hi * q * q) + 1, args.step):
            try:
                res = realize_f_upper(P, w)
            except ConstructionError as exc:
                out.writerow([q, w, "", "", "", "", "", "", "", "fail", str(exc)])
                continue
            p = res.params
            out.writerow([q, w, p["r"], res.size, p["M"], p["r1"], p["k"], p["attempts"],
                          round(p["overhead"], 3), "ok", ""])
    return 0


if __name__ == "__main__":
    sys.exit(main())

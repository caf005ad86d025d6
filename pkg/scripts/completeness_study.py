"""Partial sums of the slowly converging expansions, as functions of the cutoff.

Tabulates, for growing n_max:
  * the expansion of the constant 1 in ξ_{n,0} at several u;
  * the Gegenbauer-pair series for the Legendre-Q ratio (relative error);
  * the orthogonal-basis series with a vanishing third vector, compared with
    the exact two-vector value.
The fitted slope of log error vs log n_max estimates the algebraic rate.
"""

import argparse
import csv
import math
import sys

import numpy as np

from vecpow.expand import ExpansionParams, Truncation, direct_eval, theorem2_series
from vecpow.radial import completeness_partial_sum
from vecpow.special import legendre_q_ratio
from vecpow.verify import qcc_series


def slope(ns, errs):
    ns, errs = np.asarray(ns, float), np.asarray(errs, float)
    keep = errs > 0
    return float(np.polyfit(np.log(ns[keep]), np.log(errs[keep]), 1)[0])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--with-limit", action="store_true", help="include the slow three-vector study")
    args = ap.parse_args()
    w = csv.writer(sys.stdout, lineterminator="\n")

    w.writerow(["study", "param", "n_max", "value", "abs_err"])
    for u in (0.25, 1.0, 3.0):
        ns, errs = [10, 20, 40, 80], []
        for n in ns:
            v = completeness_partial_sum(n, 3, 1.0, u)
            errs.append(abs(v - 1))
            w.writerow(["completeness", f"u={u}", n, v, errs[-1]])
        w.writerow(["completeness_slope", f"u={u}", "", slope(ns, errs), ""])

    r1, r2 = 0.6, 0.9
    ref = legendre_q_ratio(1.5, -0.5, (r1 * r1 + r2 * r2) / (2 * r1 * r2))
    ns, errs = [30, 60, 120, 240, 480], []
    for n in ns:
        v = qcc_series(1.5, -0.5, r1, r2, n)
        errs.append(abs(v / ref - 1))
        w.writerow(["qcc", "v=1.5,mu=-0.5", n, v, errs[-1]])
    w.writerow(["qcc_slope", "v=1.5,mu=-0.5", "", slope(ns, errs), ""])

    if args.with_limit:
        p = ExpansionParams(3, 3, 1.0)
        ref = direct_eval([[0.2, 0, 0], [0, 0.25, 0]], 1.0)
        for k in (2, 4, 6, 8):
            ev = theorem2_series([[0.2, 0, 0], [0, 0.25, 0], [1e-6, 0, 0]], p, Truncation(k, 0, k))
            w.writerow(["limit_reduction", "r3=1e-6", k, ev.value, abs(ev.value - ref)])


if __name__ == "__main__":
    main()

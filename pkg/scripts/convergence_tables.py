"""Convergence of both series against the direct value.

Writes comma-separated tables to stdout:
  * rational lattice series, N = 2 and N = 3 (M = 3, ν = 1), error vs cutoff;
  * orthogonal-basis pair series on the r1/r2 × angle grid, error vs cutoff.
"""

import argparse
import csv
import math
import sys

import numpy as np

from vecpow.expand import ExpansionParams, Truncation, direct_eval, theorem1_series, theorem2_pair
from vecpow.numerics import McSpec


def planar(r, theta):
    return np.array([r * math.cos(theta), r * math.sin(theta), 0.0])


def lattice_table(w, samples):
    w.writerow(["series", "N", "cutoff", "value", "abs_err", "tail_estimate", "mc_stderr"])
    pair = [planar(0.5, 0.0), planar(1.0, math.pi / 3)]
    for k in (2, 4, 8, 16, 24, 30):
        ev = theorem1_series(pair, ExpansionParams(3, 2, 1.0), Truncation(k, k))
        w.writerow(["lattice", 2, k, ev.value, abs(ev.value - direct_eval(pair, 1.0)), ev.tail_estimate, ""])
    triple = [[0.2, 0, 0], [0, 0.25, 0], [0, 0, 1.0]]
    for k in (2, 4, 6, 8):
        ev = theorem1_series(triple, ExpansionParams(3, 3, 1.0), Truncation(k, k), McSpec(samples, 42, 20))
        w.writerow(["lattice", 3, k, ev.value, abs(ev.value - direct_eval(triple, 1.0)), ev.tail_estimate,
                    ev.mc_stderr])


def pair_table(w, cutoffs):
    w.writerow(["series", "r1_over_r2", "omega", "cutoff", "value", "abs_err", "tail_estimate"])
    p = ExpansionParams(3, 2, 1.0)
    for ratio in (0.2, 0.5, 0.9):
        for omega in (0.0, math.pi / 3, math.pi / 2):
            vs = [planar(ratio, 0.0), planar(1.0, omega)]
            ref = direct_eval(vs, 1.0)
            for k in cutoffs:
                ev = theorem2_pair(vs[0], vs[1], p, Truncation(k, 0, k))
                w.writerow(["pair", ratio, round(omega, 6), k, ev.value, abs(ev.value - ref), ev.tail_estimate])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--cutoffs", default="5,10,20,40,80")
    args = ap.parse_args()
    w = csv.writer(sys.stdout, lineterminator="\n")
    lattice_table(w, args.samples)
    sys.stdout.write("\n")
    pair_table(w, [int(x) for x in args.cutoffs.split(",")])


if __name__ == "__main__":
    main()

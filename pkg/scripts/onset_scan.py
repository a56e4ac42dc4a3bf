#!/usr/bin/env python3
"""Compare local vs global backflow onsets across the built-in scenarios.

Prints, for each frequency-continuum preset, when each factor modulus first
starts to grow and how the global onset orders against the local ones.
"""

import argparse

from dephasim.analysis import Grid, compare_onsets, detect_backflow
from dephasim.freqkernel import scan_factors, scenario_preset


def fmt(onset):
    return "never" if onset is None else f"{onset:.3f}"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dt", type=float, default=2e-3)
    ap.add_argument("--t-max", type=float, default=3.0)
    args = ap.parse_args()
    grid = Grid(0.0, args.dt, args.t_max)

    print(f"{'scenario':<10}{'k1':>8}{'k2':>8}{'k12':>8}{'l12':>8}  ordering")
    for name, g in (("eq5", 1.0), ("eq7", 1.0), ("eq9", 1.0),
                    ("eq10", None), ("eq11", None)):
        traces = scan_factors(scenario_preset(name, g), grid)
        reports = {k: detect_backflow(ts) for k, ts in traces.items()}
        cmp = compare_onsets(reports["k1"], reports["k2"], reports["l12"])
        row = "".join(f"{fmt(reports[k].onset):>8}" for k in ("k1", "k2", "k12", "l12"))
        print(f"{name:<10}{row}  {cmp.classification}")


if __name__ == "__main__":
    main()

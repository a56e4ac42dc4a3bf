#!/usr/bin/env python3
"""Regenerate all eight canonical datasets (CSV + metadata sidecars).

Usage: python scripts/reproduce_figures.py [--out DIR] [--quick]

--quick coarsens the grid to dt=0.01 for a fast smoke run; the emitted
files land in DIR (default ./figures) as figN.csv and figN.meta.
"""

import argparse
import time
from pathlib import Path

from dephasim import cli


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="figures")
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    out = Path(args.out)

    for n in range(1, 9):
        t0 = time.perf_counter()
        if args.quick:
            config, columns, scales = cli._fig_config(n)
            config = cli.RunConfig(config.scenario, config.params,
                                   cli.Grid(config.grid.t0, 0.01, config.grid.t_max),
                                   config.mode, config.output)
            ms = cli.build_scenario(config)
            traces = cli.scan_scenario(ms, config.grid)
            cli._write_text(out / f"fig{n}.csv", cli.csv_text(traces, columns, scales))
            paths = [out / f"fig{n}.csv"]
        else:
            paths = cli.fig_command(n, out)
        dt = time.perf_counter() - t0
        print(f"fig{n}: {', '.join(p.name for p in paths)}  ({dt:.1f}s)")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Render the benchmark resource table for the bundled challenging set.

The package ships the size triples (customers, vehicles, capacity) of 23
hard benchmark instances.  This script prints the per-instance resource
table: qubit counts under both encodings, then depth, quantum volume, and
the tolerable error rate for the compact encoding.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from qcvrp import SizeConvention, bundled_params, load_params_csv, render_resource_table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("params", nargs="?", help="CSV of name,n,vehicles,capacity")
    parser.add_argument("--csv", action="store_true", help="emit CSV instead of aligned text")
    parser.add_argument("--out", help="write to a file instead of stdout")
    args = parser.parse_args()

    if args.params:
        params = load_params_csv(Path(args.params).read_text(encoding="utf-8"))
    else:
        params = bundled_params()

    table = render_resource_table(
        params,
        convention=SizeConvention.COMPAT,
        fmt="csv" if args.csv else "text",
    )
    if args.out:
        Path(args.out).write_text(table, encoding="utf-8")
        print(f"wrote {args.out} ({len(params)} instances)")
    else:
        print(table, end="")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Run the full check battery over every catalog tower and time it.

    python3 scripts/verify_catalog.py [--seed N]

For each tower this runs the per-level certificates, the tower relation
checks, and the seeded random probes — the same work as
`orefield verify --scenario <name>` — and prints one summary line per
tower plus any failing rows.
"""

import argparse
import io
import json
import time
from contextlib import redirect_stdout

from orefield.catalog import tower_names
from orefield.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    worst = 0
    for name in tower_names():
        t0 = time.perf_counter()
        buffer = io.StringIO()
        with redirect_stdout(buffer):
            code = cli_main(
                ["verify", "--scenario", name, "--seed", str(args.seed), "--format", "json"]
            )
        elapsed = time.perf_counter() - t0
        rows = json.loads(buffer.getvalue())
        bad = [r for r in rows if r["status"] == "fail"]
        print(
            f"{name}: exit {code}, {len(rows)} checks, "
            f"{len(bad)} failing, {elapsed:.1f}s"
        )
        for row in bad:
            print(f"  [fail] {row['check-name']}: {row['details']}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())

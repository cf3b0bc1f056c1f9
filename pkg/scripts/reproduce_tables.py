#!/usr/bin/env python3
"""Regenerate all four reference tables and write CSV + markdown artifacts.

Usage: python scripts/reproduce_tables.py [outdir]
"""

import pathlib
import sys
import time

from gcrit import reproduce_table


def main() -> int:
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "out")
    outdir.mkdir(parents=True, exist_ok=True)
    all_ok = True
    for table_id in (1, 2, 3, 4):
        t0 = time.perf_counter()
        art = reproduce_table(table_id)
        elapsed = time.perf_counter() - t0
        (outdir / f"table{table_id}.csv").write_text(art.to_csv())
        (outdir / f"table{table_id}.md").write_text(art.to_markdown())
        status = "PASS" if art.passed else "FAIL"
        print(f"table {table_id} ({art.title}): {status}  "
              f"max rel deviation {art.max_deviation:.2e}  [{elapsed:.1f}s]")
        all_ok &= art.passed
    print(f"artifacts written to {outdir}/")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())

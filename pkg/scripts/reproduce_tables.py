#!/usr/bin/env python3
"""Write every known-value table to a directory, one TSV per family.

Usage: python3 scripts/reproduce_tables.py [OUTDIR]   (default: tables/)
"""

import sys
from pathlib import Path

from pdacache import tables


def main(outdir: str = "tables") -> None:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name in tables.FAMILIES:
        path = out / f"table_{name}.tsv"
        path.write_text(tables.render(name))
        print(path)


if __name__ == "__main__":
    main(*sys.argv[1:2])

#!/usr/bin/env python3
"""Run every packaged experiment and the implication-matrix suite, writing
JSON reports to out/ and exiting nonzero if any claim row fails."""

import pathlib
import sys

from sglab.cli import main

OUT = pathlib.Path(__file__).resolve().parent.parent / "out"


def run() -> int:
    OUT.mkdir(exist_ok=True)
    worst = 0
    for sub in ("example-2-1", "example-2-3", "remark", "tk-matrix"):
        dest = OUT / f"{sub}.json"
        code = main([sub, "--dest", str(dest)])
        print(f"{sub:12s} -> {dest}  (exit {code})")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(run())

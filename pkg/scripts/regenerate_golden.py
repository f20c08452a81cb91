"""Rewrite tests/golden/*.out from the current CLI (data format).

Each fixture stores the exit code on the first line, then stdout for a
successful run or stderr otherwise.
"""
from __future__ import annotations

import io
import json
import os
from pathlib import Path

from ihtools.cli import run

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "golden"


def render(argv: list[str]) -> str:
    out, err = io.StringIO(), io.StringIO()
    code = run(["--format", "data", *argv], out=out, err=err)
    return f"exit {code}\n" + (out.getvalue() if code == 0 else err.getvalue())


def main() -> None:
    os.chdir(ROOT)
    cases = json.loads((GOLDEN / "cases.json").read_text())
    for case in cases:
        (GOLDEN / f"{case['name']}.out").write_text(render(case["argv"]))
    print(f"wrote {len(cases)} fixtures")


if __name__ == "__main__":
    main()

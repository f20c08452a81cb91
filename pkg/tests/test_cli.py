import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from ihtools.cli import run

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"
CASES = json.loads((GOLDEN / "cases.json").read_text())


def render(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(["--format", "data", *argv], out=out, err=err)
    return code, f"exit {code}\n" + (out.getvalue() if code == 0 else err.getvalue())


def human(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def _at_root(monkeypatch):
    monkeypatch.chdir(ROOT)


@pytest.mark.parametrize("case", CASES, ids=lambda c: c["name"])
def test_golden_fixture(case):
    _, text = render(case["argv"])
    assert text == (GOLDEN / f"{case['name']}.out").read_text()


def test_every_verb_has_a_golden_case():
    verbs = {c["argv"][0] for c in CASES}
    assert verbs == {
        "validate", "betti", "cone", "suspend", "link", "linkmap", "surgery", "lift",
        "flag", "cone-formula", "table", "gysin", "chase", "hl", "chern",
    }


@pytest.mark.parametrize(
    "argv, code",
    [
        (["validate", "data/torus.json"], 0),
        (["validate", "data/bad_dangling.json"], 2),
        (["validate", "data/bad_unknown_vertex.json"], 1),
        (["betti", "data/no_such_file.json"], 1),
        (["betti", "data/torus.json", "--perversity", "sideways"], 1),
        (["table", "data/bad_table.json", "--n", "1"], 2),
        (["flag", "data/susp_torus.json", "data/susp_factor_circle.json"], 2),
    ],
)
def test_exit_codes(argv, code):
    assert human(argv)[0] == code


def test_format_may_follow_the_verb():
    a = render(["betti", "data/torus.json"])[1]
    out = io.StringIO()
    assert run(["betti", "data/torus.json", "--format", "data"], out=out) == 0
    assert a == "exit 0\n" + out.getvalue()


def test_human_betti_mentions_dimensions():
    code, out, _ = human(["betti", "data/susp_torus.json", "--perversity", "top"])
    assert code == 0
    assert [line.strip() for line in out.splitlines()[2:]] == ["degree 0: 1", "degree 1: 0", "degree 2: 2", "degree 3: 1"]


def test_human_linkmap_verdicts():
    _, ok, _ = human(["linkmap", "data/susp_equator.json", "data/susp_sphere.json", "--vertex", "N"])
    _, bad, _ = human(["linkmap", "data/susp_factor_circle.json", "data/susp_torus.json", "--vertex", "N"])
    assert "zero, extension permitted" in ok
    assert "nonzero, extension obstructed" in bad


def test_errors_go_to_stderr_only():
    code, out, err = human(["table", "data/bad_table.json", "--n", "1"])
    assert code == 2 and out == ""
    assert err.startswith("precondition violated: Hard Lefschetz precondition fails")


def test_rationals_are_printed_exactly():
    _, text = render(["chase", "data/elliptic_in_quadric.json", "--k", "2"])
    body = json.loads(text.split("\n", 1)[1])
    assert all(isinstance(v, str) for row in body["matrix"]["rows"] for v in row)


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "ihtools.cli", "--format", "data", "cone-formula", "--dims", "1,0,1", "--cone-dim", "3"],
        cwd=ROOT, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "exit 0\n" + proc.stdout == (GOLDEN / "cone_formula_dims.out").read_text()

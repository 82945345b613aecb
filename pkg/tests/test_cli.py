import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from cellular.cli import run

FIXTURES = Path(__file__).parent / "fixtures" / "cli"
CASES = json.loads((FIXTURES / "cases.json").read_text())


def run_case(args, capsys):
    cwd = os.getcwd()
    os.chdir(FIXTURES)
    try:
        code = run(args)
    finally:
        os.chdir(cwd)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("case", CASES, ids=[c["name"] for c in CASES])
def test_golden(case, capsys):
    code, out, err = run_case(case["args"], capsys)
    assert code == case["exit"], err
    expected = (FIXTURES / "expected" / f"{case['name']}.json").read_text()
    assert out == expected
    if code >= 3:
        assert out == "" and json.loads(err)["error"]
    elif out:
        doc = json.loads(out)
        verdict = doc.get("verdict", doc.get("equal", doc.get("member", doc.get("valid"))))
        if verdict is not None:
            assert code == {"yes": 0, True: 0, "no": 1, False: 1, "unknown": 2}[verdict]


def test_output_flag(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run_case(["support", "--x", "inputs/zmod6.json", "--output", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text() == '{"supp":[2,3]}\n'


def test_ring_flag(capsys):
    code, _, err = run_case(["support", "--x", "inputs/zmod6.json", "--ring", "Z/4"], capsys)
    assert code == 3 and "RingMismatch" in err
    code, out, _ = run_case(["support", "--x", "inputs/zmod6.json", "--ring", "Z"], capsys)
    assert code == 0


def test_usage_errors(capsys):
    assert run_case([], capsys)[0] == 3
    assert run_case(["decide-cellular", "--y", "inputs/zmod2.json"], capsys)[0] == 3
    assert run_case(["op", "cone"], capsys)[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cellular", "support", "--x", "inputs/zmod6.json"],
                          cwd=FIXTURES, capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == '{"supp":[2,3]}\n'
    assert proc.stderr == ""

import json
import os
import subprocess
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

ROOT = Path(__file__).resolve().parents[2]
INSTANCES = Path(os.environ.get("WMP_INSTANCES", ROOT / "instances"))
CLI = os.environ.get("WMP_CLI")


def run(*args):
    out = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


@pytest.fixture(scope="module")
def validator():
    schema = json.loads((ROOT / "docs" / "report-schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


@pytest.mark.skipif(not CLI, reason="WMP_CLI not set")
def test_reports_match_schema(validator, tmp_path):
    f1 = INSTANCES / "fig1_naive.mdp"
    f5 = INSTANCES / "fig5_memory_fwmp.mdp"
    strat = tmp_path / "s.json"
    strat.write_text(json.dumps(run("synthesize", f5, "--obj", "sas-fwmp", "--l", 2, "--alpha", 0, "--beta", 5, "--start", "v3")))
    reports = [
        run("solve", f1, "--obj", "sas-fwmp", "--l", 2, "--alpha", 1, "--beta", 2),
        run("solve", f1, "--obj", "bwmp", "--lambda", 1, "--timings"),
        run("solve", INSTANCES / "fig4_posreach.mdp", "--obj", "sdpr", "--l", 3, "--alpha", 0, "--target", "v4"),
        run("solve", f1, "--obj", "mec"),
        json.loads(strat.read_text()),
        run("validate", f5, "--strategy", strat, "--start", "v3", "--claim", "sure-dir-fwmp", "--l", 2, "--lambda", 5),
        run("validate", f1, "--lasso", "|v1,v2", "--obj", "fwmp", "--l", 2, "--lambda", 1),
        run("oracle-check", "--count", 5),
        run("simulate", f5, "--strategy", strat, "--start", "v3", "--steps", 50, "--l", 2, "--alpha", 0, "--beta", 5),
        run("bench", "--sizes", 2, "--lengths", 2),
    ]
    for r in reports:
        errors = list(validator.iter_errors(r))
        assert not errors, (r, errors[0].message)


@pytest.mark.skipif(not CLI, reason="WMP_CLI not set")
def test_reports_are_byte_stable():
    args = [CLI, "solve", str(INSTANCES / "fig1_naive.mdp"), "--obj", "sas-fwmp", "--l", "2", "--alpha", "1", "--beta", "2"]
    outs = {subprocess.run(args, capture_output=True, text=True).stdout for _ in range(3)}
    assert len(outs) == 1

import json
import re
import subprocess
import sys

import pytest

from powerwlp.cli import main, render_human


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(argv, capsys):
    code, out, _ = run(argv + ["--format", "json"], capsys)
    assert out.count("\n") == 1
    return code, json.loads(out)


def _ints(obj):
    if isinstance(obj, bool) or obj is None:
        return set()
    if isinstance(obj, int):
        return {obj}
    if isinstance(obj, str):
        return {int(x) for x in re.findall(r"-?\d+", obj)}
    if isinstance(obj, dict):
        return set().union(*(_ints(v) for k, v in obj.items() if k != "elapsed")) if obj else set()
    if isinstance(obj, list):
        return set().union(*(_ints(v) for v in obj)) if obj else set()
    return set()


def _strip_elapsed(text):
    return re.sub(r", [0-9.]+s$", "", text.strip())


def test_classify_example(capsys):
    code, doc = run_json(["classify", "--vars", "4", "--powers", "5,7,8,10,10"], capsys)
    assert code == 0
    assert doc["result"]["status"] == "Fails" and doc["result"]["failure_degree"] == 13
    assert doc["certificate"]["gap"] >= 1
    assert (doc["prime"], doc["seed"], doc["retries"]) == (2**31 - 1, 0, 3)


def test_classify_uniform_six_vars(capsys):
    code, doc = run_json(["classify", "--vars", "6", "--powers", "2,2,2,2,2,2,2"], capsys)
    assert doc["result"]["status"] == "Fails" and doc["result"]["failure_degree"] == 3


def test_classify_square_generator_holds(capsys):
    code, doc = run_json(["classify", "--vars", "4", "--powers", "2,9,9,9,9", "--assert-holds"], capsys)
    assert code == 0 and doc["result"]["status"] == "Holds"


def test_assert_flags(capsys):
    assert run(["classify", "--vars", "4", "--powers", "2,9,9,9,9", "--assert-fails"], capsys)[0] == 1
    assert run(["classify", "--vars", "4", "--powers", "3,3,3,3,3", "--assert-fails"], capsys)[0] == 0
    assert run(["classify", "--vars", "4", "--powers", "3,3,3,3,3", "--assert-holds"], capsys)[0] == 1
    assert run(["oracle", "--vars", "3", "--powers", "2,3,3,3", "--assert-holds"], capsys)[0] == 0


def test_undetermined_runs_oracle(capsys):
    code, doc = run_json(["classify", "--vars", "4", "--powers", "4,5,5,6,6"], capsys)
    if doc["result"]["status"] == "Undetermined":
        assert "oracle" in doc and doc["result"]["hint"]


def test_usage_errors(capsys):
    assert run(["classify", "--vars", "4", "--powers", "3,3,3"], capsys)[0] == 2
    assert run(["classify", "--vars", "4", "--powers", "0,3,3,3,3"], capsys)[0] == 2
    assert run(["classify", "--vars", "4", "--powers", "3,3,3,3,3", "--prime", "100"], capsys)[0] == 2
    assert run(["reproduce", "no-such-target"], capsys)[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["classify", "--vars", "4", "--powers", "a,b"])
    assert info.value.code == 2


def test_linsys_examples(capsys):
    code, doc = run_json(["linsys", "--pdim", "3", "--deg", "9", "--mults", "5,5,5,5,5,5"], capsys)
    assert code == 0 and doc["result"]["dimension"] == 14
    assert sum("Cremona" in t or "cremona" in t for t in doc["trace"]) == 3
    code, doc = run_json(["linsys", "--pdim", "2", "--deg", "13", "--mults", "9,7,6,4,4", "--method", "peel"],
                         capsys)
    assert doc["result"]["dimension"] == 1 and doc["trace"]
    code, doc = run_json(["linsys", "--pdim", "5", "--deg", "1", "--mults", "0,0,0,0,0,0,0,0"], capsys)
    assert doc["result"]["dimension"] == 6


def test_linsys_unknown_exits_3(capsys):
    code, out, _ = run(["linsys", "--pdim", "5", "--deg", "3", "--mults", "2,2,2,2,2,2,2,2"], capsys)
    assert code == 3 and "Unknown" in out and "bruteforce" in out


def test_linsys_bruteforce(capsys):
    code, doc = run_json(["linsys", "--pdim", "2", "--deg", "4", "--mults", "2,2,2,2,2", "--method", "bruteforce"],
                         capsys)
    assert code == 0 and doc["result"]["dimension"] == 1


def test_certificate_no_oracle_exits_3(capsys):
    code, _, err = run(["certificate", "--vars", "7", "--powers", "3,3,3,3,3,3,3,3", "--degree", "6",
                        "--no-oracle"], capsys)
    assert code == 3 and "unknown" in err


def test_hilbert(capsys):
    code, doc = run_json(["hilbert", "--vars", "4", "--powers", "2,2,2,2,2", "--oracle"], capsys)
    assert doc["result"]["values"] == [1, 4, 5]
    assert doc["oracle"]["values"][:3] == [1, 4, 5]


def test_oracle_single_degree(capsys):
    code, doc = run_json(["oracle", "--vars", "4", "--powers", "5,7,8,10,10", "--degree", "13"], capsys)
    (rep,) = doc["result"]["reports"]
    assert (rep["dim_rj"], rep["dim_rj_minus"], rep["map_rank"]) == (220, 225, 219)
    assert code == 0 and not doc["result"]["holds"]


def test_environment_overrides(capsys, monkeypatch):
    monkeypatch.setenv("WLP_PRIME", "2147483629")
    monkeypatch.setenv("WLP_SEED", "5")
    monkeypatch.setenv("WLP_RETRIES", "1")
    _, doc = run_json(["hilbert", "--vars", "3", "--powers", "2,2,2,2"], capsys)
    assert (doc["prime"], doc["seed"], doc["retries"]) == (2147483629, 5, 1)
    _, doc = run_json(["hilbert", "--vars", "3", "--powers", "2,2,2,2", "--seed", "9"], capsys)
    assert doc["seed"] == 9
    monkeypatch.setenv("WLP_SEED", "x")
    assert run(["hilbert", "--vars", "3", "--powers", "2,2,2,2"], capsys)[0] == 2


ROUND_TRIP = [
    ["classify", "--vars", "4", "--powers", "5,7,8,10,10"],
    ["classify", "--vars", "5", "--powers", "4,4,4,4,4,4"],
    ["hilbert", "--vars", "4", "--powers", "3,3,3,3,3"],
    ["linsys", "--pdim", "3", "--deg", "7", "--mults", "4,4,4,4,4,4"],
    ["oracle", "--vars", "3", "--powers", "3,3,3,3", "--power-k", "3"],
    ["certificate", "--vars", "5", "--powers", "4,4,4,4,4,4", "--degree", "7"],
    ["reproduce", "coefficient-growth", "--n", "3..4", "--d", "1..3"],
]


@pytest.mark.parametrize("argv", ROUND_TRIP, ids=lambda a: a[0])
def test_json_round_trip_matches_human(argv, capsys):
    _, human, _ = run(argv, capsys)
    _, doc = run_json(argv, capsys)
    again = json.loads(json.dumps(doc, sort_keys=True))
    assert again == doc
    assert _strip_elapsed(render_human(doc)) == _strip_elapsed(human)
    # every number shown to a human is in the document, and vice versa for the result
    human_ints = {int(x) for x in re.findall(r"-?\d+", _strip_elapsed(human))}
    assert human_ints <= _ints(doc)
    for key in ("failure_degree", "dimension", "values", "passed", "total"):
        if isinstance(doc["result"], dict) and doc["result"].get(key) is not None:
            assert _ints(doc["result"][key]) <= human_ints


def test_reproduce_exit_codes(capsys):
    code, doc = run_json(["reproduce", "five-vars-uniform-gap", "--d", "4..5"], capsys)
    assert code == 0 and doc["result"]["passed"] == doc["result"]["total"] > 0


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "powerwlp", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip().startswith("powerwlp")

import json
import os

from ydweyl.cli import main

SESSION = os.path.join(os.path.dirname(__file__), "..", "sessions", "z2cubed.json")
GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "--session", SESSION, "validate")
    assert code == 0
    assert "all checks passed" in out
    assert "pentagon over 4096 quadruples: pass" in out


def test_nichols_table(capsys):
    code, out, _ = run(capsys, "--session", SESSION, "nichols", "W1",
                       "--max-degree", "3")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[2:6]]
    assert [r[1] for r in rows] == ["1", "2", "1", "0"]


def test_nichols_json(capsys):
    code, out, _ = run(capsys, "--session", SESSION, "nichols", "W12",
                       "--max-degree", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["dims"] == [1, 4, 8]
    assert payload["multidegree_dims"]["1 1"] == 6


def test_cartan_output(capsys):
    code, out, _ = run(capsys, "--session", SESSION, "cartan", "W")
    assert code == 0
    assert out.splitlines()[1:] == ["  [ 2, -1, -1]",
                                    "  [-1,  2, -1]",
                                    "  [-1, -1,  2]"]


def test_ad_output(capsys):
    code, out, _ = run(capsys, "--session", SESSION, "ad", "W", "1", "2")
    assert code == 0
    assert "level 0: dim 2" in out
    assert "level 1: dim 2" in out
    assert "m = 1" in out


def test_certify_w(capsys):
    code, out, _ = run(capsys, "--session", SESSION, "certify", "W")
    assert code == 0
    assert out.splitlines()[0] == "verdict: infinite-dimensional"
    assert "standard: yes" in out


def test_certify_pair_no_conclusion(capsys):
    code, out, _ = run(capsys, "--session", SESSION, "certify", "W12")
    assert code == 0
    assert "no conclusion" in out
    assert "Cartan type: A2" in out


def test_roots_pair(capsys):
    code, out, _ = run(capsys, "--session", SESSION, "roots", "W12")
    assert code == 0
    assert out.count("6 roots") == 6
    assert "finiteness: finite" in out


def test_graph_dot(capsys):
    code, out, _ = run(capsys, "--session", SESSION, "graph", "W12")
    assert code == 0
    assert out.startswith("graph semicartan {")
    assert "// axioms: pass" in out


def test_byte_identical_reruns(capsys):
    _, out1, _ = run(capsys, "--session", SESSION, "certify", "W")
    _, out2, _ = run(capsys, "--session", SESSION, "certify", "W")
    assert out1 == out2
    _, dot1, _ = run(capsys, "--session", SESSION, "graph", "W")
    _, dot2, _ = run(capsys, "--session", SESSION, "graph", "W")
    assert dot1 == dot2


def test_reflect_emission_reingests(capsys, tmp_path):
    code, out, _ = run(capsys, "--session", SESSION, "reflect", "W", "1")
    assert code == 0
    stanzas = json.loads(out)["modules"]
    with open(SESSION) as fh:
        session_data = json.load(fh)
    session_data["modules"].update(stanzas)
    names = sorted(stanzas)
    session_data["tuples"]["RW"] = names
    path = tmp_path / "session.json"
    path.write_text(json.dumps(session_data))
    code, out, _ = run(capsys, "--session", str(path), "validate")
    assert code == 0
    code, out, _ = run(capsys, "--session", str(path), "cartan", "RW")
    assert code == 0
    assert "[ 2, -1, -1]" in out


def test_golden_match(capsys):
    code, _, _ = run(capsys, "--session", SESSION, "--golden", GOLDEN,
                     "certify", "W")
    assert code == 0
    code, _, _ = run(capsys, "--session", SESSION, "--golden", GOLDEN,
                     "cartan", "W")
    assert code == 0
    code, _, _ = run(capsys, "--session", SESSION, "--golden", GOLDEN,
                     "nichols", "W1", "--max-degree", "3")
    assert code == 0
    code, _, _ = run(capsys, "--session", SESSION, "--golden", GOLDEN,
                     "roots", "W12")
    assert code == 0
    code, _, _ = run(capsys, "--session", SESSION, "--golden", GOLDEN,
                     "graph", "W12")
    assert code == 0


def test_golden_mismatch_and_missing(capsys, tmp_path):
    golden = tmp_path / "golden"
    golden.mkdir()
    (golden / "cartan_W.txt").write_text("corrupted\n")
    code, _, err = run(capsys, "--session", SESSION, "--golden", str(golden),
                       "cartan", "W")
    assert code == 1 and "mismatch" in err
    code, _, err = run(capsys, "--session", SESSION, "--golden", str(golden),
                       "certify", "W")
    assert code == 1 and "missing" in err


def test_cyclotomic_table_session(capsys):
    # A zeta-valued cocycle table and a zeta(9)-acting module stanza must
    # round-trip through the session format.
    session = os.path.join(os.path.dirname(__file__), "..", "sessions",
                           "z3twisted.json")
    code, out, _ = run(capsys, "--session", session, "validate")
    assert code == 0
    assert "pentagon over 81 quadruples: pass" in out
    code, out, _ = run(capsys, "--session", session, "nichols", "L",
                       "--max-degree", "10", "--json")
    assert code == 0
    assert json.loads(out)["dims"] == [1] * 9 + [0, 0]


def test_exit_code_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "--session", str(bad), "validate")
    assert code == 2 and "JSON" in err
    missing = tmp_path / "missing_tuple.json"
    with open(SESSION) as fh:
        data = json.load(fh)
    data["tuples"]["T"] = ["nope"]
    missing.write_text(json.dumps(data))
    code, _, err = run(capsys, "--session", str(missing), "validate")
    assert code == 2 and "unknown module" in err
    with open(SESSION) as fh:
        data = json.load(fh)
    data["modules"]["M"] = {"degrees": [1, 2], "action": {"0": [["1", "0"]]}}
    ragged = tmp_path / "ragged.json"
    ragged.write_text(json.dumps(data))
    code, _, err = run(capsys, "--session", str(ragged), "validate")
    assert code == 2 and "malformed module stanza" in err


def test_exit_code_validation_failure(capsys, tmp_path):
    with open(SESSION) as fh:
        data = json.load(fh)
    # A table cocycle violating the pentagon: normalized but corrupted inside.
    n = 8
    table = [["1"] * n for _ in range(n * n)]
    flat = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                flat.append("-1" if (a, b, c) == (3, 5, 6) else "1")
    data["cocycle"] = {"table": flat}
    data["modules"] = {}
    data["tuples"] = {}
    path = tmp_path / "bad_cocycle.json"
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "--session", str(path), "validate")
    assert code == 3 and "pentagon" in err


def test_exit_code_undecided(capsys, tmp_path):
    with open(SESSION) as fh:
        data = json.load(fh)
    data["cutoffs"]["ad_cutoff"] = 0
    path = tmp_path / "cut.json"
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "--session", str(path), "ad", "W", "1", "2")
    assert code == 4 and "undecided" in err.lower()


def test_exit_code_resource_bound(capsys, tmp_path):
    with open(SESSION) as fh:
        data = json.load(fh)
    data["cutoffs"]["vertex_bound"] = 3
    path = tmp_path / "small.json"
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "--session", str(path), "graph", "W")
    assert code == 5 and "vertex bound" in err

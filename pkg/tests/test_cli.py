import json

from affine_biclosed.cli import main

A2_SEVEN = [{"dir": [1, 0], "level": 0}, {"dir": [0, 1], "level": 0},
            {"dir": [1, 1], "level": 1}, {"dir": [1, 0], "level": 1},
            {"dir": [-1, 0], "level": 1}, {"dir": [0, -1], "level": 1},
            {"dir": [-1, -1], "level": 1}]


def order(*idx):
    return [A2_SEVEN[i] for i in idx]


ORDER_1 = order(0, 1, 2, 3, 4, 5, 6)
ORDER_2 = order(1, 4, 2, 3, 6, 5, 0)


def run(capsys, tmp_path, argv, payload=None):
    if payload is not None:
        src = tmp_path / "in.json"
        src.write_text(payload if isinstance(payload, str) else json.dumps(payload))
        argv = argv + ["--in", str(src)]
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_word_maximal_lists_six(capsys, tmp_path):
    code, out = run(capsys, tmp_path, ["word", "maximal", "--type", "A2"])
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert len(doc["maximal"]) == 6
    assert all(isinstance(m["word"], dict) for m in doc["maximal"])


def test_closure_of_opposite_pair_has_two_rays(capsys, tmp_path):
    gens = {"gens": [{"dir": [1, 0], "level": 0}, {"dir": [-1, 0], "level": 1}]}
    code, out = run(capsys, tmp_path, ["closure", "--type", "A2", "--window", "10"], gens)
    doc = json.loads(out)
    assert code == 0
    assert doc["rays"] == [[-1, 0], [1, 0]]
    assert doc["window_check"] == {"window": 10, "agrees": True}


def test_braid_connect_on_the_worked_example(capsys, tmp_path):
    code, out = run(capsys, tmp_path, ["braid", "connect", "--type", "A2"],
                    {"from": ORDER_1, "to": ORDER_2})
    doc = json.loads(out)
    assert code == 0 and doc["verified"]
    assert doc["start"] == ORDER_1
    assert doc["steps"][-1]["order"] == ORDER_2
    assert all({"move", "order", "witness"} <= set(s) for s in doc["steps"])


def test_braid_graph_dot_and_json(capsys, tmp_path):
    roots = {"roots": order(0, 1)}
    code, out = run(capsys, tmp_path, ["braid", "graph", "--format", "dot"], roots)
    assert code == 0 and out.startswith("graph braid {")
    code, out = run(capsys, tmp_path, ["braid", "graph"], roots)
    assert json.loads(out)["components"] == [[0, 1]]


def test_braid_realize_reports_status(capsys, tmp_path):
    bad = [{"dir": [1, 0], "level": 0}, {"dir": [0, 1], "level": 0}, {"dir": [1, 1], "level": 0}]
    code, out = run(capsys, tmp_path, ["braid", "realize"], {"order": bad})
    assert code == 0 and json.loads(out)["status"] == "not_realizable"
    code, out = run(capsys, tmp_path, ["braid", "realize"], {"order": ORDER_1})
    doc = json.loads(out)
    assert doc["status"] == "realizable" and len(doc["chain"]) == 7


def test_biclosed_verbs(capsys, tmp_path):
    form = {"w": [0, 2, 1], "L": [0, 1], "K": []}
    code, out = run(capsys, tmp_path, ["biclosed", "generators"], form)
    assert code == 0 and json.loads(out)["closure_matches"]
    code, out = run(capsys, tmp_path, ["biclosed", "canonicalize"], form)
    assert code == 0 and json.loads(out)["canonical"]["L"] == [0, 1]
    code, out = run(capsys, tmp_path, ["biclosed", "membership"],
                    {"set": form, "root": {"dir": [1, 0], "level": 0}})
    assert code == 0 and json.loads(out)["member"] is True


def test_generators_of_an_infinitely_generated_set_is_a_domain_error(capsys, tmp_path):
    code, out = run(capsys, tmp_path, ["biclosed", "generators"], {"w": [], "L": [0], "K": []})
    doc = json.loads(out)
    assert code == 1 and doc["error"]["kind"] == "precondition"
    assert "finitely generated" in doc["error"]["message"]


def test_word_and_lattice_verbs(capsys, tmp_path):
    code, out = run(capsys, tmp_path, ["word", "join"], [[0], [1]])
    assert code == 0 and json.loads(out)["word"] == [0, 1, 0]
    code, out = run(capsys, tmp_path, ["word", "meet"], [[0, 1], [0, 2]])
    assert code == 0 and json.loads(out)["word"] == [0]
    code, out = run(capsys, tmp_path, ["word", "inversions"], {"prefix": [], "period": [0, 1, 2]})
    assert code == 0 and json.loads(out)["word"] == {"w": [], "L": [1]}
    code, out = run(capsys, tmp_path, ["lattice", "complement"], {"kind": "inv", "word": [0]})
    assert code == 0 and json.loads(out)["element"] == {"kind": "coinv", "word": [0]}
    code, out = run(capsys, tmp_path, ["lattice", "join"],
                    [{"kind": "inv", "word": [0]}, {"kind": "inv", "word": [1]}])
    assert code == 0 and json.loads(out)["element"]["word"] == [0, 1, 0]


def test_unbounded_word_join_is_a_domain_error(capsys, tmp_path):
    from affine_biclosed import words
    payload = [words.to_json(x) for x in words.maximal_elements("A2")[:2]]
    code, out = run(capsys, tmp_path, ["word", "join"], payload)
    assert code == 1 and "error" in json.loads(out)


def test_malformed_json_reports_position(capsys, tmp_path):
    code, out = run(capsys, tmp_path, ["closure"], '{"gens": [1,\n  ')
    err = json.loads(out)["error"]
    assert code == 1 and err["kind"] == "malformed_json"
    assert err["line"] == 2 and err["column"] >= 1


def test_negative_generator_names_the_precondition(capsys, tmp_path):
    code, out = run(capsys, tmp_path, ["closure"], {"gens": [{"dir": [1, 0], "level": -1}]})
    err = json.loads(out)["error"]
    assert code == 1 and "positive" in err["message"]


def test_usage_errors_exit_one_with_json(capsys, tmp_path):
    code, out = run(capsys, tmp_path, ["frobnicate"])
    assert code == 1 and json.loads(out)["error"]["kind"] == "usage"
    code, out = run(capsys, tmp_path, ["roots", "--format", "dot"])
    assert code == 1


def test_verify_runs_suites_and_fails_with_exit_two(capsys, tmp_path, monkeypatch):
    code, out = run(capsys, tmp_path, ["verify", "d_equals_h", "--type", "G2"])
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["reports"][0]["cases"] == 24
    from affine_biclosed import roots as R
    monkeypatch.setattr(type(R.get("A2")), "h", lambda self, root, L: 0)
    code, out = run(capsys, tmp_path, ["verify", "d_equals_h", "--type", "A2"])
    assert code == 2 and json.loads(out)["verification_failed"]


def test_output_file_and_determinism(capsys, tmp_path):
    dest = tmp_path / "out.json"
    assert main(["roots", "--type", "G2", "--out", str(dest)]) == 0
    first = dest.read_text()
    assert main(["roots", "--type", "G2", "--out", str(dest)]) == 0
    assert dest.read_text() == first
    assert json.loads(first)["highest"] == [3, 2]

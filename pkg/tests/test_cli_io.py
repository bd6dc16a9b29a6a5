import io
import json

import numpy as np
import pytest

from sms_forge import cli
from sms_forge import okuyama_tilt as ok
from sms_forge.docs import (
    DocError,
    algebra_to_doc,
    chain_map_to_doc,
    complex_to_doc,
    load_algebra_doc,
    load_complex_doc,
    load_module_doc,
    module_to_doc,
)
from sms_forge.fixtures import builtin_algebra, builtin_module
from sms_forge.rep_mod import is_isomorphic

A2 = {
    "field": {"char": 2},
    "vertices": ["1", "2"],
    "arrows": [{"name": "a", "from": "1", "to": "2"}],
    "relations": [],
}


def run(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), out=buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--format", "json", "--no-timing")
    return code, json.loads(text)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_algebra_check_builtin():
    code, rep = run_json("algebra-check", "--algebra", "example5")
    assert code == 0 and rep["verdict"] == "SelfInjective"
    assert rep["certificates"]["dim"] == int(np.sum(rep["certificates"]["cartan"])) == 36


def test_not_self_injective_exit(tmp_path):
    path = write(tmp_path, "a2.json", json.dumps(A2))
    code, rep = run_json("algebra-check", "--algebra", path)
    assert code == 2 and rep["verdict"] == "NotSelfInjective"


def test_bad_json_reports_position(tmp_path, capsys):
    path = write(tmp_path, "bad.json", '{"field": {"char": 2},\n  "vertices": [1, 2,]\n}')
    code, _ = run("algebra-check", "--algebra", path)
    err = capsys.readouterr().err
    assert code == 1 and "line 2" in err and "column" in err


def test_unknown_key_rejected(tmp_path, capsys):
    path = write(tmp_path, "x.json", json.dumps({**A2, "colour": "red"}))
    code, _ = run("algebra-check", "--algebra", path)
    assert code == 1 and "colour" in capsys.readouterr().err


def test_unknown_algebra_and_module(capsys):
    assert run("algebra-check", "--algebra", "nowhere")[0] == 1
    assert run("sms", "verify", "--algebra", "example5", "--sms", "Q_9")[0] == 1


def test_dot_only_for_orbit():
    assert run("algebra-check", "--algebra", "example3", "--format", "dot")[0] == 1


def test_verify_sms():
    code, rep = run_json("sms", "verify", "--algebra", "example5", "--sms", "Z_0,Z_1,Z_2,Z_3")
    assert code == 0 and rep["verdict"] == "SMS"
    assert [t["length"] for t in rep["certificates"]["strip_traces"]] == [1, 3, 4, 3]
    assert rep["certificates"]["stable_hom_dims"] == np.eye(4, dtype=int).tolist()


def test_verify_strict_negative():
    args = ("sms", "verify", "--algebra", "example5", "--sms", "Z_0,Z_2")
    assert run_json(*args)[0] == 0
    code, rep = run_json(*args, "--strict")
    assert code == 2 and rep["verdict"] == "NotSMS"


def test_verify_small_cap_inconclusive():
    code, rep = run_json("sms", "verify", "--algebra", "example5", "--sms", "Z_0,Z_1,Z_2,Z_3", "--cap", "1")
    assert code == 3 and rep["verdict"] == "Inconclusive"


def test_verify_not_orthogonal_is_negative():
    code, rep = run_json("sms", "verify", "--algebra", "example5", "--sms", "S_k,Z_0")
    assert code == 0 and rep["verdict"] == "NotSMS" and rep["certificates"]["reason"]
    assert run_json("sms", "verify", "--algebra", "example5", "--sms", "S_k,Z_0", "--strict")[0] == 2
    assert run("sms", "mutate", "--algebra", "example5", "--sms", "S_k,Z_0", "--at", "S_k")[0] == 1


def test_mutate_chain():
    code, rep = run_json("sms", "mutate", "--algebra", "example5", "--sms", "Z_0,Z_1,Z_2,Z_3",
                         "--at", "Z_0,Z_2", "--at", "Z_0,S_1,S_3")
    assert code == 0
    steps = rep["certificates"]["steps"]
    assert steps[0]["at"] == ["Z_0", "Z_2"]
    assert sorted(steps[0]["members"][1]["iso_labels"]) == ["S_1"]
    final = {m["name"]: m["dims"] for m in steps[-1]["members"]}
    assert sorted(final.values()) == sorted(np.eye(4, dtype=int).tolist())


def test_mutate_needs_subset():
    assert run("sms", "mutate", "--algebra", "example5", "--sms", "Z_0,Z_1,Z_2,Z_3")[0] == 1


def test_orbit_dot_single_node():
    code, text = run("sms", "orbit", "--algebra", "example4", "--sms", "L", "--format", "dot", "--no-timing")
    assert code == 0 and text.startswith("digraph sms_orbit {")
    nodes = [l for l in text.splitlines() if "[label=" in l and "->" not in l]
    edges = [l for l in text.splitlines() if "->" in l]
    assert len(nodes) == 1 and edges and all(l.strip().startswith("n0 -> n0") for l in edges)


def test_orbit_truncates(tmp_path):
    code, rep = run_json("sms", "orbit", "--algebra", "example3", "--sms", "S_1,S_2,S_3", "--max-nodes", "2")
    assert code == 0 and len(rep["certificates"]["nodes"]) <= 2


def test_deterministic_without_timing():
    argv = ("sms", "verify", "--algebra", "example5", "--sms", "Z_0,Z_1,Z_2,Z_3", "--format", "json", "--no-timing")
    assert run(*argv) == run(*argv)
    code, text = run("algebra-check", "--algebra", "example3", "--format", "json")
    assert "timing" in json.loads(text)


def test_sms_file_input(tmp_path):
    A = builtin_algebra("example5")
    doc = {f"Z_{i}": module_to_doc(builtin_module("example5", f"Z_{i}"), "example5") for i in range(4)}
    path = write(tmp_path, "z.json", json.dumps(doc))
    code, rep = run_json("sms", "verify", "--algebra", "example5", "--sms", path)
    assert code == 0 and rep["verdict"] == "SMS" and A.n == 4


def test_okuyama_commands():
    code, rep = run_json("okuyama", "check", "--algebra", "example5", "--at", "k,1,3")
    assert code == 0 and rep["verdict"] == "Tilting" and rep["certificates"]["end_dim"] == 36
    code, rep = run_json("okuyama", "mutate-eq", "--algebra", "example5", "--at", "k,1,3")
    assert code == 0 and rep["verdict"] == "HomotopyEquivalent"
    assert set(rep["certificates"]["witness"]) == {"f", "g"}
    code, rep = run_json("okuyama", "build", "--algebra", "example3", "--at", "none")
    assert code == 0 and rep["certificates"]["complex"]["deg0"] == []
    assert run("okuyama", "build", "--algebra", "example3", "--at", "9")[0] == 1


def test_algebra_doc_round_trip():
    for name in ("example3", "example4", "example5"):
        A = builtin_algebra(name)
        B = load_algebra_doc(json.loads(json.dumps(algebra_to_doc(A))))
        assert B.dim == A.dim and np.array_equal(B.table, A.table)


def test_module_doc_round_trip():
    A = builtin_algebra("example5")
    for i in range(4):
        M = builtin_module("example5", f"Z_{i}")
        N = load_module_doc(json.loads(json.dumps(module_to_doc(M, "example5"))), A)
        assert is_isomorphic(M, N) is not None


def test_module_doc_errors():
    A = builtin_algebra("example3")
    with pytest.raises(DocError):
        load_module_doc({"dims": {"9": 1}}, A)
    with pytest.raises(DocError):
        load_module_doc({"dims": {"1": 1, "2": 1}, "matrices": {"a": [[1, 1]]}}, A)
    with pytest.raises(DocError):
        load_module_doc({"dims": {"1": 1}, "shape": 2}, A)


def test_complex_doc_round_trip():
    A = builtin_algebra("example5")
    for U in ([0, 1, 3], [0, 2], []):
        T = ok.build_okuyama(A, U)
        back = load_complex_doc(json.loads(json.dumps(complex_to_doc(T, "example5"))), A)
        assert back.deg0 == T.deg0 and back.deg1 == T.deg1
        assert np.array_equal(back.d % A.p, T.d % A.p)
        assert ok.homotopy_iso(T, back) is not None


def test_chain_map_doc_shape():
    A = builtin_algebra("example3")
    T = ok.regular_complex(A)
    doc = chain_map_to_doc(T, T, ok.identity_maps(T))
    assert json.loads(json.dumps(doc)) == doc

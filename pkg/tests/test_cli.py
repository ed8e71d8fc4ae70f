import json

import pytest

from singer import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def payload(argv, capsys, expect=0):
    code, out, _ = run(argv, capsys)
    assert code == expect, out
    return json.loads(out)


def test_classical_plane(capsys):
    obj = payload(["classical", "--q", "3"], capsys)
    assert obj["perfect"] and obj["action_regular"]
    assert obj["plane_certificate"]["order"] == 3
    assert sorted(obj["difference_set"]["elements"]) == sorted(
        obj["difference_set"]["elements"])


def test_classical_higher_dimension(capsys):
    obj = payload(["classical", "--q", "2", "--m", "3"], capsys)
    assert obj["action_regular"]
    assert obj["space"]["points"] == 15
    assert obj["difference_set"]["certified"] is False


def test_classical_bad_order(capsys):
    code, _, err = run(["classical", "--q", "6"], capsys)
    assert code == 1 and "error" in err


def test_hughes_deterministic(capsys):
    args = ["hughes", "--group", "integers", "--targets", "6"]
    code1, out1, _ = run(args, capsys)
    code2, out2, _ = run(args, capsys)
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical
    obj = json.loads(out1)
    assert obj["log_hash"] == json.loads(out2)["log_hash"]
    assert obj["prefixes_certified"] >= 1


def test_hughes_free_group(capsys):
    obj = payload(["hughes", "--group", "free:2", "--targets", "4"], capsys)
    assert obj["difference_set"]["group"] == "free:2"


def test_hughes_involution_refused(capsys):
    code, _, err = run(["hughes", "--group", "cyclic:4", "--targets", "2"],
                       capsys)
    assert code == 1 and "involution" in err


def test_hughes_bounded_failure(capsys):
    code, _, err = run(["hughes", "--group", "cyclic:7", "--targets", "6",
                        "--bound", "3"], capsys)
    assert code == 3 and "bounded" in err


def test_hyper_krasner(capsys):
    obj = payload(["hyper", "krasner"], capsys)
    assert obj["axioms"]["hyperfield"] is True


def test_hyper_kalg(capsys):
    obj = payload(["hyper", "kalg", "--n", "4"], capsys)
    assert obj["classification"]["case"] == "single-line"
    # n=3 is the documented axiom failure
    code, out, _ = run(["hyper", "kalg", "--n", "3"], capsys)
    assert code == 2
    assert json.loads(out)["axioms"]["axioms"]["associativity"] is False
    code2, _, _ = run(["hyper", "kalg", "--n", "2"], capsys)
    assert code2 == 1


def test_hyper_quotient(capsys):
    obj = payload(["hyper", "quotient", "--p", "3", "--ext", "2"], capsys)
    assert obj["contains_krasner"] == obj["subfield_test"]
    # 4 nonzero classes lie on a single line
    assert obj["classification"]["case"] == "single-line"
    obj3 = payload(["hyper", "quotient", "--p", "3", "--ext", "3"], capsys)
    assert obj3["classification"] == {"case": "field-quotient",
                                      "q": 3, "m": 3}


def test_hyper_roundtrip(capsys):
    obj = payload(["hyper", "roundtrip", "--p", "3", "--ext", "3"], capsys)
    assert obj["roundtrip_exact"] is True
    assert obj["plane_certificate"]["order"] == 3


def test_hyper_classify_from_file(tmp_path, capsys):
    out = tmp_path / "table.json"
    payload(["--out", str(out), "hyper", "quotient", "--p", "3", "--ext", "3"],
            capsys)
    obj = json.loads(out.read_text())
    table_file = tmp_path / "only_table.json"
    table_file.write_text(json.dumps(obj["table"]))
    res = payload(["hyper", "classify", "--in", str(table_file)], capsys)
    assert res["classification"] == {"case": "field-quotient", "q": 3, "m": 3}


def test_f1_basic(capsys):
    obj = payload(["f1", "--m", "2", "--n", "4"], capsys)
    assert obj["order"] == 12 and obj["regular"]["regular"] is True


def test_f1_general_fiber_groups(capsys):
    obj = payload(["f1", "--m", "2", "--n", "2", "--S", "full"], capsys)
    assert obj["order"] == 6
    obj2 = payload(["f1", "--m", "6", "--n", "3", "--S", "affine:3"], capsys)
    assert obj2["order"] == 21
    code, _, err = run(["f1", "--m", "3", "--n", "2", "--S", "full"], capsys)
    assert code == 1  # stabilizer of S_4 has order 6, not 2


def test_f1_chain(capsys):
    obj = payload(["f1", "--m", "2", "--chain", "1,2,4"], capsys)
    assert obj["limit"]["coherent"] is True
    assert [s["order"] for s in obj["limit"]["stages"]] == [3, 6, 12]


def test_f1_usage(capsys):
    code, _, _ = run(["f1", "--m", "2"], capsys)
    assert code == 1


def test_lemma(capsys):
    obj = payload(["lemma", "--p", "2", "--max", "8"], capsys)
    assert obj["failures"] == []
    assert all(row["divides"] for row in obj["table"] if row["asserted"])
    assert any(not row["asserted"] for row in obj["table"])
    code, _, _ = run(["lemma", "--p", "4"], capsys)
    assert code == 1


def test_no_subcommand(capsys):
    assert cli.main([]) == 1
    capsys.readouterr()


def test_verify_only_roundtrips(tmp_path, capsys):
    ds_file = tmp_path / "ds.json"
    payload(["--out", str(ds_file), "hughes", "--group", "integers",
             "--targets", "5"], capsys)
    code, out, _ = run(["--verify-only", str(ds_file)], capsys)
    assert code == 0 and json.loads(out)["kind"] == "difference-set"

    plane_file = tmp_path / "plane.json"
    obj = payload(["classical", "--q", "2"], capsys)
    plane_file.write_text(json.dumps(obj["plane"]))
    code, out, _ = run(["--verify-only", str(plane_file)], capsys)
    assert code == 0 and json.loads(out)["kind"] == "plane"

    table_file = tmp_path / "table.json"
    obj = payload(["hyper", "quotient", "--p", "3", "--ext", "2"], capsys)
    table_file.write_text(json.dumps(obj["table"]))
    code, out, _ = run(["--verify-only", str(table_file)], capsys)
    assert code == 0 and json.loads(out)["kind"] == "hypertable"

    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert cli.main(["--verify-only", str(bad)]) == 1
    capsys.readouterr()


def test_out_flag_writes_identical_payload(tmp_path, capsys):
    out = tmp_path / "p.json"
    code, stdout, _ = run(["--out", str(out), "classical", "--q", "2"],
                          capsys)
    assert code == 0
    assert out.read_text() == stdout

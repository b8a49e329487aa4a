import json

import pytest

from lingrowth.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_counts(capsys):
    code, out, _ = run(capsys, "build", "--family", "fermat", "--alpha", "2", "--beta", "-1", "--field", "Q")
    assert code == 0 and "g=6 s=26" in out and "ok" in out
    code, out, _ = run(capsys, "build", "--family", "lech", "--prime", "7")
    assert "field=F7(x)" in out and "g=6 s=26" in out
    code, out, _ = run(capsys, "build", "--family", "from-recurrence", "--coeffs", "1,1", "--init", "1,1", "--field", "Q")
    assert "g=5 s=17" in out


def test_round_trip_and_match(capsys, tmp_path):
    pres = tmp_path / "fermat.json"
    run(capsys, "build", "--family", "fermat", "--alpha", "2", "--beta", "-1", "--out", str(pres))
    code, out, err = run(capsys, "hilbert", "--presentation", str(pres), "--method", "both", "-N", "20")
    assert code == 0 and out.strip().endswith("MATCH")
    rows = [line.split(",") for line in out.strip().splitlines()[1:-1]]
    assert rows[4] == ["4", "11", "11"]
    assert "groebner basis" in err
    # a bare presentation (no quadruple data) still works with the oracle
    obj = json.loads(pres.read_text())
    del obj["vlrs"]
    bare = tmp_path / "bare.json"
    bare.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "hilbert", "--presentation", str(bare), "--method", "groebner", "-N", "5")
    assert code == 0 and out.splitlines()[5] == "4,11,groebner"
    code, _, err = run(capsys, "hilbert", "--presentation", str(bare), "--method", "closed")
    assert code == 2 and "quadruple" in err


def test_free_presentation_column(capsys, tmp_path):
    p = tmp_path / "free.json"
    p.write_text(json.dumps({"field": "Q", "generators": [{"name": "u"}, {"name": "v"}, {"name": "w"}], "relations": []}))
    code, out, _ = run(capsys, "hilbert", "--presentation", str(p), "--method", "groebner", "-N", "5", "--format", "json")
    assert json.loads(out) == {"groebner": [3 ** d for d in range(6)]}


def test_mismatch_exit_code(capsys, tmp_path, monkeypatch):
    import lingrowth.cli as cli
    from lingrowth.presentation import HilbertData

    monkeypatch.setattr(cli, "hilbert_closed", lambda data, N: HilbertData((1,) * (N + 1), "closed"))
    code, out, _ = run(capsys, "hilbert", "--family", "fermat", "--method", "both", "-N", "6")
    assert code == 1 and out.strip().endswith("MISMATCH(1)")


def test_lech_closed_degrees(capsys):
    code, out, _ = run(capsys, "hilbert", "--family", "lech", "--prime", "7", "-N", "63", "--format", "json")
    vals = json.loads(out)["closed"]
    assert [d for d, v in enumerate(vals) if v == 11] == [4, 10, 52]


def test_cap(capsys):
    code, _, err = run(capsys, "hilbert", "--family", "fermat", "--method", "both", "-N", "30")
    assert code == 2 and "cap" in err
    code, out, _ = run(capsys, "hilbert", "--family", "fermat", "--method", "both", "-N", "30", "--cap", "30")
    assert code == 0 and "MATCH" in out


def test_automaton_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "automaton", "--family", "segment", "--rho", "3", "--alpha", "2", "--field", "F11", "-N", "40",
                       "--out", str(tmp_path / "seg"))
    assert code == 0 and out.strip().endswith("CERTIFIED")
    series = json.loads((tmp_path / "seg" / "series.json").read_text())
    assert series["den"] == [1] + [0] * 9 + [-1]
    auto = json.loads((tmp_path / "seg" / "automaton.json").read_text())
    assert set(auto) == {"states", "initial", "accepting", "transitions"}
    assert (tmp_path / "seg" / "automaton.dot").read_text().startswith("digraph")
    code, out, _ = run(capsys, "automaton", "--family", "fermat", "-N", "30")
    assert code == 0 and out.strip().endswith("CERTIFIED")
    code, out, _ = run(capsys, "automaton", "--family", "lech", "--prime", "7", "-N", "30")
    assert code == 0 and out.strip().endswith("UNDETERMINED") and "exponent prefix [1, 7]" in out


def test_recurrence_commands(capsys):
    code, out, _ = run(capsys, "recurrence", "zeros", "--coeffs", "2,1,-2", "--init", "1,0,4", "--n", "40")
    assert code == 0 and json.loads(out) == [1]
    code, out, _ = run(capsys, "recurrence", "fit", "--prefix", "1,1,2,3,5,8")
    obj = json.loads(out)
    assert obj["order"] == 2 and obj["coeffs"] == ["1", "1"]
    code, out, _ = run(capsys, "recurrence", "terms", "--coeffs", "1,1", "--init", "1,1", "-N", "6")
    assert out.splitlines()[-1] == "6,13"
    code, out, _ = run(capsys, "recurrence", "orbit", "--u", "1,0", "--M", "0,1;1,1", "--v", "0,1", "-N", "6")
    assert json.loads(out)["terms"] == ["0", "1", "1", "2", "3", "5", "8"]
    code, _, err = run(capsys, "recurrence", "terms", "--field", "F11(x)…", "--coeffs", "1", "--init", "1")
    assert code == 2 and "unsupported field descriptor" in err
    code, _, err = run(capsys, "recurrence", "terms", "--coeffs", "1,1")
    assert code == 2 and "--init" in err


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--family", "fermat", "--c", "10", "--n0", "3", "-N", "30")
    assert json.loads(out.splitlines()[-1]) == [4] and "bounded" in out
    code, out, _ = run(capsys, "search", "--family", "lech", "--prime", "7", "--c", "10", "--n0", "3", "-N", "60")
    assert json.loads(out.splitlines()[-1]) == [4, 10, 52]
    code, out, _ = run(capsys, "search", "--family", "fermat", "--c", "0", "--n0", "0", "-N", "10")
    assert json.loads(out.splitlines()[-1]) == list(range(11))


def test_bad_parameters(capsys):
    code, _, err = run(capsys, "build", "--family", "fermat", "--alpha", "0")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "build", "--family", "lech")
    assert code == 2 and "--prime" in err
    code, _, err = run(capsys, "hilbert")
    assert code == 2
    with pytest.raises(SystemExit):
        main(["build", "--family", "nope"])


def test_determinism(capsys, tmp_path):
    outs = []
    for k in range(2):
        d = tmp_path / f"run{k}"
        run(capsys, "automaton", "--family", "fermat", "-N", "20", "--out", str(d))
        run(capsys, "build", "--family", "segment", "--field", "F11", "--out", str(d / "p.json"))
        outs.append({f.name: f.read_bytes() for f in sorted(d.iterdir())})
    assert outs[0] == outs[1] and len(outs[0]) == 5


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1,8")
    assert code == 0 and "2/2 criteria passed" in out and "seed" in out

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import pytest

from koszul_resonance import cli
from koszul_resonance.io import InstanceFormatError, parse_component_arg, parse_instance

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hilbert_p4(capsys):
    code, out, _ = run(capsys, "hilbert", "--input", DATA / "p4.json", "--qmax", 2, "--json")
    assert code == 0
    rows = json.loads(out)["tables"][0]["rows"]
    assert rows[0][:3] == [0, 3, 3]


def test_hilbert_free_and_zero(capsys):
    code, out, _ = run(capsys, "hilbert", "--input", DATA / "free_n2.json", "--qmax", 4, "--json")
    assert code == 0
    assert [r[1] for r in json.loads(out)["tables"][0]["rows"]] == [1, 2, 3, 4, 5]
    code, out, _ = run(capsys, "hilbert", "--input", DATA / "zero_module.json", "--qmax", 3, "--json")
    assert [r[1] for r in json.loads(out)["tables"][0]["rows"]] == [0, 0, 0, 0]


def test_modes_agree(capsys):
    for name, q in [("p4.json", 4), ("c4.json", 6), ("ccml.json", 3), ("surface_g2.json", 4)]:
        _, a, _ = run(capsys, "hilbert", "--input", DATA / name, "--qmax", q, "--csv", "--exact")
        _, b, _ = run(capsys, "hilbert", "--input", DATA / name, "--qmax", q, "--csv", "--modular")
        assert a == b


def test_output_is_deterministic(capsys, monkeypatch):
    argv = ["raag", "--graph", DATA / "p4_graph.json", "--qmax", 3]
    _, first, _ = run(capsys, *argv)
    monkeypatch.setenv("RESONANCE_THREADS", "1")
    _, second, _ = run(capsys, *argv)
    monkeypatch.setenv("RESONANCE_THREADS", "3")
    _, third, _ = run(capsys, "hilbert", "--input", DATA / "surface_g2.json", "--qmax", 5)
    monkeypatch.delenv("RESONANCE_THREADS")
    _, fourth, _ = run(capsys, "hilbert", "--input", DATA / "surface_g2.json", "--qmax", 5)
    assert first == second
    assert third == fourth


def test_check_components(capsys):
    code, out, _ = run(capsys, "check", "--input", DATA / "non_separable.json", "--component", "1,0,0,0;0,1,0,0", "--json")
    assert code == 0
    s = json.loads(out)["summary"]
    assert s["separable"] is False and s["separable (p_M route)"] is False
    assert "separability witness" in s
    code, out, _ = run(
        capsys, "check", "--input", DATA / "ccml.json", "--component", "1,0,0,0,0,0;0,1,0,0,0,0;0,0,1,0,0,0;0,0,0,1,0,0", "--json"
    )
    s = json.loads(out)["summary"]
    assert s["isotropic"] is False and s["separable"] is True and s["dim Kbar"] == 1
    code, out, _ = run(capsys, "check", "--input", DATA / "isotropic_plane.json", "--component", "1,0,0,0;0,1,0,0", "--json")
    assert json.loads(out)["summary"]["strongly isotropic"] is True


def test_check_dependent_vectors(capsys):
    code, _, err = run(capsys, "check", "--input", DATA / "p4.json", "--component", "1,0,0,0;2,0,0,0")
    assert code == 64
    assert "dependent" in err


def test_raag_examples(capsys):
    code, out, _ = run(capsys, "raag", "--graph", DATA / "p4_graph.json", "--qmax", 2, "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["summary"]["components"] == ["{1,2,4}", "{1,3,4}"]
    assert all(r[4] is False for r in rep["tables"][0]["rows"])
    code, out, _ = run(capsys, "raag", "--graph", DATA / "c4_graph.json", "--qmax", 4, "--json")
    rep = json.loads(out)
    assert rep["summary"]["first agreement q"] == 0
    code, out, _ = run(capsys, "raag", "--graph", DATA / "k5_graph.json", "--qmax", 2, "--json")
    rep = json.loads(out)
    assert code == 0
    assert [r[1] for r in rep["tables"][1]["rows"]] == [0, 0, 0]


def test_ann_examples(capsys):
    code, out, _ = run(capsys, "ann", "--input", DATA / "p4.json", "--dmax", 2, "--fitting", "--json")
    rep = json.loads(out)
    assert code == 0
    assert [r[2] for r in rep["tables"][0]["rows"]] == ["{}", "{}", "{x2*x3}"]
    assert len(rep["summary"]["Fitting generators"]) == 4
    code, out, _ = run(capsys, "ann", "--input", DATA / "zero_module.json", "--dmax", 0, "--json")
    assert json.loads(out)["tables"][0]["rows"][0][2] == "{1}"


def test_identities(capsys):
    code, out, _ = run(capsys, "identities", "--gmax", 2, "--csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[2][:4] == ["1", "2", "2", "yes"]
    assert rows[3][:4] == ["2", "5", "5", "yes"]
    code, out, _ = run(capsys, "identities", "--gmax", 30, "--json")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "ok"
    assert rep["tables"][0]["rows"][4][4] == 32


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "hilbert", "--qmax", 2)[0] == 64
    assert run(capsys, "bogus")[0] == 64
    assert run(capsys, "hilbert", "--input", DATA / "p4.json", "--qmax", 9)[0] == 65
    assert run(capsys, "hilbert", "--input", DATA / "p4.json", "--qmax", 9, "--force")[0] == 0
    assert run(capsys, "hilbert", "--input", DATA / "surface_g3.json", "--qmax", 7)[0] == 65
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 3, "K": [[[2, 1, "1"]]]}')
    assert run(capsys, "hilbert", "--input", bad, "--qmax", 1)[0] == 64
    bad.write_text("{not json")
    assert run(capsys, "hilbert", "--input", bad, "--qmax", 1)[0] == 64
    assert run(capsys, "hilbert", "--input", tmp_path / "missing.json", "--qmax", 1)[0] == 64


def test_cross_check_failure_exit(capsys, monkeypatch):
    import koszul_resonance.koszul as koszul

    real = koszul.wq_dim_cokernel
    monkeypatch.setattr(koszul, "wq_dim_cokernel", lambda spec, q, *a, **k: real(spec, q, *a, **k) + (q == 1))
    code, out, _ = run(capsys, "hilbert", "--input", DATA / "p4.json", "--qmax", 2)
    assert code == 2
    assert "cross-check failure" in out


def test_validate_flag(capsys, tmp_path):
    bad = tmp_path / "inst.json"
    bad.write_text(json.dumps({"dim": 4, "Kperp": [[[1, 2, "1"], [3, 4, "1"]]], "components": [[["1", "0", "0", "0"]]]}))
    assert run(capsys, "hilbert", "--input", bad, "--qmax", 1)[0] == 0
    assert run(capsys, "hilbert", "--input", bad, "--qmax", 1, "--validate")[0] == 64
    assert run(capsys, "hilbert", "--input", DATA / "p4.json", "--qmax", 1, "--validate")[0] == 0


def test_instance_schema():
    inst = parse_instance({"dim": 3, "K": [[[1, 2, "1/2"], [2, 3, -1]]]})
    assert inst.spec.dim_k == 1 and inst.given == "K"
    same = parse_instance({"dim": 3, "K": [[[1, 2, "2/4"], [2, 3, "-1"]]]})
    assert same.digest == inst.digest
    for bad in [
        {"dim": 3},
        {"dim": 3, "K": [], "Kperp": []},
        {"dim": 0, "K": []},
        {"dim": 3, "K": [[[1, 2, 0.5]]]},
        {"dim": 3, "K": [[[1, 5, "1"]]]},
        {"dim": 3, "K": [[[1, 2]]]},
        {"dim": 3, "K": [], "components": [[["1", "0"]]]},
    ]:
        with pytest.raises(InstanceFormatError):
            parse_instance(bad)


def test_component_argument():
    comp = parse_component_arg(3, "1,0,1/2; 0,1,0")
    assert comp.dim == 2
    with pytest.raises(InstanceFormatError):
        parse_component_arg(3, "1,0")

import json

import pytest

from dualcx.cli import main
from dualcx.curves import Entry


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def inst_dir(tmp_path, capsys):
    d = tmp_path / "a"
    assert main(["generate", "--seed", "1", "--out", str(d)]) == 0
    capsys.readouterr()
    return d


def files(d):
    return ["--complex", d / "complex.json", "--labeling", d / "labeling.json", "--config", d / "config.json"]


def test_generate_is_deterministic(tmp_path, capsys):
    for name in ("x", "y"):
        assert main(["generate", "--seed", "42", "--family", "b", "--mutation", "non-collapsible", "--out", str(tmp_path / name)]) == 0
    for f in ("complex.json", "labeling.json", "config.json", "meta.json"):
        assert (tmp_path / "x" / f).read_bytes() == (tmp_path / "y" / f).read_bytes()
    meta = json.loads((tmp_path / "x" / "meta.json").read_text())
    assert meta["expected_violation"] == "collapsibility"


def test_validate_and_certify(inst_dir, capsys, tmp_path):
    code, out, _ = run(capsys, "validate", *files(inst_dir))
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    cert = tmp_path / "cert.json"
    code, _, _ = run(capsys, "certify", *files(inst_dir), "--out", cert)
    assert code == 0 and json.loads(cert.read_text())["verdict"] == "pass"
    code, out, _ = run(capsys, "replay", "--certificate", cert, *files(inst_dir))
    assert code == 0 and json.loads(out)["replayed"]


def test_certify_family_b_exit_code(tmp_path, capsys):
    d = tmp_path / "b"
    main(["generate", "--seed", "1", "--family", "b", "--mutation", "two-islands", "--out", str(d)])
    capsys.readouterr()
    code, out, _ = run(capsys, "certify", *files(d))
    assert code == 1 and json.loads(out)["violation"] == "g-prime-connectivity"


def test_certify_unknown_exit_code(inst_dir, capsys):
    code, out, _ = run(capsys, "certify", *files(inst_dir), "--budget", "0")
    assert code == 3 and json.loads(out)["verdict"] == "unknown"


def test_parse_error_has_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"simplices": [\n  {"id": 0,, "dim": 0}]}')
    code, _, err = run(capsys, "betti", "--complex", bad)
    assert code == 2 and "bad.json:2:" in err


def test_dangling_id_fails_validation(tmp_path, capsys):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"simplices": [{"id": 0, "dim": 0, "faces": []}, {"id": 1, "dim": 1, "faces": [0, 7]}]}))
    code, out, _ = run(capsys, "validate", "--complex", f)
    assert code == 1
    assert any(v["kind"] == "dangling-face" and v["simplex"] == 1 for v in json.loads(out)["complex"]["violations"])


def test_wrappers(inst_dir, tmp_path, capsys):
    code, out, _ = run(capsys, "betti", "--complex", inst_dir / "complex.json")
    assert code == 0 and json.loads(out)["betti"][:2] == [1, 0]
    code, out, _ = run(capsys, "collapse", "--complex", inst_dir / "complex.json")
    assert code == 0 and json.loads(out)["collapsible"]
    code, out, _ = run(capsys, "cone", "--complex", inst_dir / "complex.json")
    assert code == 0 and json.loads(out)["simplices"]
    code, out, _ = run(capsys, "tree", "--config", inst_dir / "config.json")
    assert code == 0 and json.loads(out)["is_tree"]
    code, out, _ = run(capsys, "cycfind", "--config", inst_dir / "config.json")
    assert code == 0 and json.loads(out)["cycle_sequence"] is None
    cfg = json.loads((inst_dir / "config.json").read_text())
    code, out, _ = run(capsys, "pairgraph", *files(inst_dir), "--component", cfg["components"][0])
    assert code == 0 and all(g["connected"] for g in json.loads(out)["graphs"])


def test_reduce_command(tmp_path, capsys):
    seq = [Entry.point(n).to_dict() if n.startswith("P") else Entry.component(n).to_dict()
           for n in "P1 C1 P2 C2 P3 C3 P3 C4 P4 C5 P5 C3 P3 C2 P2 C1".split()]
    f = tmp_path / "q1.json"
    f.write_text(json.dumps(seq))
    code, out, _ = run(capsys, "reduce", "--sequence", f, "--mode", "ab")
    names = [e["name"] for e in json.loads(out)["reduction"]]
    assert code == 0 and names == ["C3", "P3", "C4", "P4", "C5", "P5"]
    code, out, _ = run(capsys, "reduce", "--sequence", f, "--mode", "a")
    assert len(json.loads(out)["reduction"]) == 16


def test_loop_commands(tmp_path, capsys, triangle_boundary, filled_triangle):
    hollow = tmp_path / "hollow.json"
    hollow.write_text(triangle_boundary.to_json())
    disk = tmp_path / "disk.json"
    disk.write_text(filled_triangle.to_json())
    loop = tmp_path / "loop.json"
    loop.write_text(json.dumps({"vertices": [0, 1, 2, 0], "edges": [3, 5, 4]}))
    code, out, _ = run(capsys, "loop-reduce", "--complex", hollow, "--loop", loop)
    assert code == 1 and json.loads(out)["essential"]
    code, out, _ = run(capsys, "loop-reduce", "--complex", disk, "--loop", loop)
    assert code == 0 and json.loads(out)["moves"]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({"vertices": [0, 2, 0], "edges": [3, 3]}))
    code, _, err = run(capsys, "loop-reduce", "--complex", disk, "--loop", broken)
    assert code == 2


def test_loop_image_command(tmp_path, capsys, banana):
    (tmp_path / "c.json").write_text(banana.to_json())
    (tmp_path / "k.json").write_text(json.dumps({"components": ["C1", "C2"], "points": [
        {"name": "P", "on": ["C1", "C2"]}, {"name": "Q", "on": ["C1", "C2"]}]}))
    (tmp_path / "l.json").write_text(json.dumps({"labels": {
        "0": {"kind": "component", "name": "C1"}, "1": {"kind": "component", "name": "C2"},
        "2": {"kind": "point", "name": "P"}, "3": {"kind": "point", "name": "Q"}}}))
    (tmp_path / "loop.json").write_text(json.dumps({"vertices": [0, 1, 0], "edges": [2, 3]}))
    code, out, _ = run(capsys, "loop-image", "--complex", tmp_path / "c.json", "--labeling", tmp_path / "l.json",
                       "--config", tmp_path / "k.json", "--loop", tmp_path / "loop.json")
    res = json.loads(out)
    assert code == 0 and res["is_cycle_sequence"]
    assert [e["name"] for e in res["image"]] == ["C1", "P", "C2", "Q"]


def test_dual_command(tmp_path, capsys):
    f = tmp_path / "s.json"
    f.write_text(json.dumps({"components": ["E0", "E1"], "strata": [
        {"id": "s1", "support": [0, 1], "parents": {"0": "E1", "1": "E0"}}]}))
    code, out, _ = run(capsys, "dual", "--strata", f)
    assert code == 0 and len(json.loads(out)["simplices"]) == 3
    code, out, _ = run(capsys, "validate", "--strata", f)
    assert code == 0 and json.loads(out)["strata"]["regular"]


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "tree", "--config", tmp_path / "nope.json")
    assert code == 2 and "nope.json" in err

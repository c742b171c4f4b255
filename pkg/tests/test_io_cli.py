import json

import pytest

from ppaq import generate as G, io
from ppaq.cli import main
from ppaq.reductions import REGISTRY, get_reduction
from ppaq.suites import SUITE_GENERATORS

SERIALIZABLE = [rid for rid in sorted(REGISTRY) if not rid.startswith("5.3")]


@pytest.mark.parametrize("rid", SERIALIZABLE)
def test_instance_roundtrip_preserves_solutions(rid):
    for i in range(3):
        src = SUITE_GENERATORS[rid](G.rng_for(f"t-io:{rid}:{i}"))
        back = io.loads(io.dumps(src))
        assert back.problem == src.problem
        assert io.dumps(back) == io.dumps(src)
        if src.problem not in ("chevsym",):
            sols = src.all_solutions()
            assert back.all_solutions() == sols


def test_reduction_target_serializes():
    src = G.random_lonely(G.rng_for(2), 3)
    red = get_reduction("A.3b:lonely->leaf").build(src)
    tgt = io.loads(io.dumps(red.target))
    assert tgt.all_solutions() == red.target.all_solutions()


def test_format_version_checked():
    d = io.instance_to_dict(G.random_lonely(G.rng_for(0), 2))
    d["format"] = 99
    with pytest.raises(ValueError):
        io.instance_from_dict(d)


def run(capsys, *argv):
    code = main(list(map(str, argv)))
    return code, capsys.readouterr().out


def test_gen_solve_verify(tmp_path, capsys):
    inst, sol = tmp_path / "l.json", tmp_path / "s.json"
    assert run(capsys, "gen", "lonely", "--p", 3, "--n", 2, "--seed", 4, "--out", inst)[0] == 0
    assert run(capsys, "solve", "--in", inst, "--out", sol)[0] == 0
    code, out = run(capsys, "verify", "--in", inst, "--solution", sol)
    assert code == 0 and out.startswith("valid")
    sol.write_text("[9, 9, 9]")
    assert run(capsys, "verify", "--in", inst, "--solution", sol)[0] == 1


def test_gen_is_byte_deterministic(capsys):
    a = run(capsys, "gen", "sis", "--q", 6, "--m", 2, "--seed", 1)[1]
    b = run(capsys, "gen", "sis", "--q", 6, "--m", 2, "--seed", 1)[1]
    assert a == b
    inst = io.loads(a)
    assert inst.problem == "sis" and len(inst.A) == 2


def test_verify_rejects_zero_root(tmp_path, capsys):
    inst, z = tmp_path / "c.json", tmp_path / "z.json"
    run(capsys, "gen", "chevalley", "--p", 3, "--n", 4, "--m", 2, "--out", inst)
    z.write_text(json.dumps({"kind": "root", "value": [0, 0, 0, 0]}))
    code, out = run(capsys, "verify", "--in", inst, "--solution", z)
    assert code == 1 and "INVALID" in out


def test_cw_check_example(capsys):
    code, out = run(capsys, "cw-check", "--poly", "x1 + x2", "--poly", "x1^2", "--p", 3, "--n", 2)
    assert code == 0
    assert "|V|=1 |M|=4" in out and "[6, 3]" in out


def test_reduce_and_backmap(tmp_path, capsys):
    src, tgt, ts = tmp_path / "l.json", tmp_path / "t.json", tmp_path / "ts.json"
    rid = "A.3b:lonely->leaf"
    run(capsys, "gen", "lonely", "--p", 3, "--n", 2, "--seed", 4, "--out", src)
    assert run(capsys, "reduce", "--id", rid, "--in", src, "--out", tgt)[0] == 0
    run(capsys, "solve", "--in", tgt, "--out", ts)
    code, out = run(capsys, "backmap", "--id", rid, "--in", src, "--solution", ts)
    assert code == 0 and "valid on the source" in out


def test_roundtrip_report(tmp_path, capsys):
    rep = tmp_path / "r.json"
    code, out = run(capsys, "roundtrip", "--id", "3.2:lonely_pk->lonely_p", "--count", 30, "--report", rep)
    assert code == 0 and out.startswith("PASS") and "30/30" in out
    data = json.loads(rep.read_text())
    assert data["prng"] and data["results"][0]["failed"] == 0
    _, j1 = run(capsys, "roundtrip", "--id", "3.2:lonely_pk->lonely_p", "--count", 30, "--format", "json")
    _, j2 = run(capsys, "roundtrip", "--id", "3.2:lonely_pk->lonely_p", "--count", 30, "--format", "json",
                "--jobs", 2)
    assert j1 == j2


@pytest.mark.parametrize("cmd,header,row,q", [
    ("bis", "1 12 4", "1 " * 12, 4),
    ("sis", "1 5 6", "1 2 3 4 5", 6),
    ("sis", "1 11 12", "1 2 3 4 5 6 7 8 9 10 11", 12),
    ("bis", "1 8 5", "1 2 3 4 1 2 3 4", 5),
])
def test_linear_solvers(tmp_path, capsys, cmd, header, row, q):
    f = tmp_path / "A.txt"
    f.write_text(f"{header}\n{row}\n")
    code, out = run(capsys, cmd, "solve", "--q", q, "--in", f)
    vec, line = out.splitlines()
    assert code == 0 and line.startswith("verified")
    x = list(map(int, vec.split()))
    A = list(map(int, row.split()))
    assert any(x) and sum(a * b for a, b in zip(A, x)) % q == 0


def test_sis_below_bound_is_an_error(tmp_path, capsys):
    f = tmp_path / "A.txt"
    f.write_text("1 3 12\n1 2 3\n")
    assert run(capsys, "sis", "solve", "--in", f)[0] == 2


def test_list(capsys):
    code, out = run(capsys, "list", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["reductions"]) == len(REGISTRY)

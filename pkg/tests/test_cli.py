import json
import subprocess
import sys

import numpy as np
import pytest

from hereditex import io
from hereditex.cli import main
from hereditex.regdiag import DeltaFunction, TotalColor

from .helpers import bi_clique, complete, k3_family, random_bound_graph
from .test_regdiag import parity_triangle_ground, three_quarter_ground


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else io.dumps(obj))
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ex_command(files, capsys):
    fam = files("fam.json", io.family_to_json(k3_family()))
    code, out, _ = run(capsys, "ex", "--family", fam, "--n", "4")
    assert code == 0
    assert "bestProduct: 16" in out and "ex: 4/6" in out and "witness:" in out
    code, out, _ = run(capsys, "ex", "--family", fam, "--n", "4", "--format", "json")
    rec = json.loads(out)
    assert rec["bestProduct"] == "16" and rec["exact"] is True
    assert io.choice_from_json(rec["witness"]).product == 16


def test_count_and_trend(files, capsys):
    fam = files("fam.json", io.family_to_json(k3_family()))
    assert run(capsys, "count", "--family", fam, "--n", "3")[1].strip() == "count: 7"
    code, out, _ = run(capsys, "trend", "--family", fam, "--n-range", "3..5")
    assert code == 0 and len(out.strip().splitlines()) == 5


def test_monotone_and_erdos_stone(files, capsys):
    fam = files("bi.json", io.bi_family_to_json(bi_clique(4)))
    code, out, _ = run(capsys, "monotone-ex", "--family", fam, "--n", "6")
    assert code == 0 and "maxBlack: 12" in out
    code, out, _ = run(capsys, "erdos-stone", "--family", fam)
    assert out.startswith("erdosStone: 2/3")
    code, out, _ = run(capsys, "expand-bi", "--family", fam)
    assert io.family_from_json(json.loads(out)).members == (complete(2, 4, bi_clique(4).colors),)


def test_member_and_good(files, capsys):
    fam = files("fam.json", io.family_to_json(k3_family()))
    g = files("g.json", io.graph_to_json(complete(2, 3)))
    code, out, _ = run(capsys, "member", "--family", fam, "--graph", g)
    assert code == 1 and "false" in out
    choice = {"k": 2, "colors": ["black", "white"], "n": 3,
              "edges": {"1,2": ["black", "white"], "1,3": ["black", "white"], "2,3": ["white"]}}
    code, out, _ = run(capsys, "good", "--family", fam, "--graph", files("c.json", choice))
    assert code == 0 and "good: true" in out
    choice["edges"]["2,3"] = ["black"]
    code, out, _ = run(capsys, "good", "--family", fam, "--graph", files("c2.json", choice))
    assert code == 1 and "witness map: 1->1 2->2 3->3" in out


def test_regdiag_commands(files, capsys):
    g = files("g.json", io.bound_graph_to_json(three_quarter_ground()))
    code, out, _ = run(capsys, "regcheck", "--graph", g, "--eps", "0.04", "--h", "1", "--mode", "exact")
    assert code == 0 and out.strip().endswith("verdict: PASS")
    code, out, _ = run(capsys, "regcheck", "--graph", g, "--eps", "0.04", "--h", "2")
    assert code == 1 and "verdict: FAIL" in out
    code, out, _ = run(capsys, "fit-delta", "--graph", g, "--eps", "1", "--h", "2", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["verdict"] is True and rec["delta"]
    d = files("d.json", rec["delta"])
    assert run(capsys, "regcheck", "--graph", g, "--delta", d, "--eps", "1", "--h", "2")[0] == 0
    code, out, _ = run(capsys, "exceptional", "--graph", g, "--eps", "0.04")
    assert code == 0 and "exceptional total colors: 0" in out
    code, out, _ = run(capsys, "goodify", "--graph", g, "--eps", "0.04", "--format", "json")
    assert json.loads(out)["edges"]["1,2"]["v2|v2"] == ["black", "white"]


def test_single_color_regcheck_pass(files, capsys):
    G = random_bound_graph(np.random.default_rng(0), 2, 2, (3, 3), 1, 1)
    g = files("g.json", io.bound_graph_to_json(G))
    code, out, _ = run(capsys, "regcheck", "--graph", g, "--eps", "0.04", "--h", "1", "--mode", "exact")
    assert code == 0 and "verdict: PASS" in out


def test_supplied_complexes(files, capsys):
    G = parity_triangle_ground()
    from hereditex.regdiag import enumerate_complexes

    cs = [io.complex_to_json(S, G) for S in list(enumerate_complexes(G, 1))[-3:]]
    g = files("g.json", io.bound_graph_to_json(G))
    c = files("c.json", cs)
    code, out, _ = run(capsys, "regcheck", "--graph", g, "--eps", "1", "--complexes", c)
    assert "complexes checked: 3" in out


def test_sampled_requires_seed_and_is_deterministic(files, capsys):
    g = files("g.json", io.bound_graph_to_json(parity_triangle_ground()))
    code, _, err = run(capsys, "regcheck", "--graph", g, "--eps", "0.04", "--mode", "sampled")
    assert code == 2 and "--seed" in err
    args = ("regcheck", "--graph", g, "--eps", "0.04", "--mode", "sampled", "--seed", "5", "--samples", "3000")
    a = run(capsys, *args)
    b = run(capsys, *args)
    assert a == b and a[0] == 1


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["ex", "--n", "3"], "--family"),
        (["ex", "--family", "FAM", "--n", "-1"], "must be >= 0"),
        (["trend", "--family", "FAM", "--n-range", "5..3"], "empty"),
        (["regcheck", "--graph", "BAD", "--eps", "0.1"], "missing field 'k'"),
        (["regcheck", "--graph", "NOPE", "--eps", "0.1"], "cannot read"),
        (["ex", "--family", "BADFAM", "--n", "3"], "graphs[0].edges['1,2']"),
        (["verify", "--suite", "nope"], "invalid choice"),
    ],
)
def test_input_errors_exit_2(files, capsys, argv, needle):
    subst = {
        "FAM": files("fam.json", io.family_to_json(k3_family())),
        "BAD": files("bad.json", '{"r": 2}'),
        "NOPE": "/nonexistent/x.json",
        "BADFAM": files("badfam.json", {"k": 2, "colors": ["black"], "graphs": [{"n": 2, "edges": {"1,2": 7}}]}),
    }
    code, _, err = run(capsys, *[subst.get(a, a) for a in argv])
    assert code == 2
    assert needle in err


def test_budget_exit_3(files, capsys):
    fam = files("fam.json", io.family_to_json(k3_family()))
    code, out, _ = run(capsys, "ex", "--family", fam, "--n", "7", "--max-nodes", "20")
    assert code == 3 and "lower bound" in out
    code, _, err = run(capsys, "count", "--family", fam, "--n", "6", "--max-nodes", "20")
    assert code == 3 and "budget" in err


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lowerbound")
    assert code == 0 and "checks passed" in out
    code, out, _ = run(capsys, "verify", "--suite", "monotonicity", "--n-max", "4", "--format", "json")
    assert code == 0 and json.loads(out)["ok"] is True


def test_module_entry_point_is_byte_identical(tmp_path):
    g = tmp_path / "g.json"
    g.write_text(io.dumps(io.bound_graph_to_json(parity_triangle_ground())))
    cmd = [sys.executable, "-m", "hereditex", "regcheck", "--graph", str(g), "--eps", "0.04",
           "--mode", "sampled", "--seed", "3", "--samples", "2000", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == b.returncode == 1
    assert a.stdout == b.stdout and a.stdout


def test_delta_file_with_foreign_total_color(files, capsys):
    G = three_quarter_ground()
    g = files("g.json", io.bound_graph_to_json(G))
    bogus = io.delta_to_json(DeltaFunction({TotalColor((0, 1), ("a", "a", "black")): 0}))
    bogus[0]["components"]["1,2"] = "purple"
    d = files("d.json", bogus)
    code, _, err = run(capsys, "exceptional", "--graph", g, "--delta", d, "--eps", "0.04")
    assert code == 2 and "purple" in err

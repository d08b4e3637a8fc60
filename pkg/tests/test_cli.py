import json
import subprocess
import sys

import pytest

from conftest import sample
from segrekit import cli
from segrekit.chow import ChowClass, parse_class
from segrekit.errors import GenericityError

CFG = cli.JobConfig()
JSON = cli.JobConfig(format="json")


def run(command, path, cfg=CFG, expr=None):
    return cli.run(command, path, cfg, expr)


def test_segre_text():
    code, out, err = run("segre", sample("three_lines.txt"))
    assert code == 0 and err == ""
    assert out.splitlines()[0] == "segre: 3 [P^1] - 10 [P^0]"
    assert "segre vector: [-10, 3, 0, 0]" in out


def test_arrangement_report():
    code, out, _ = run("arrangement", sample("weighted_planes.txt"), JSON)
    doc = cli.parse_json(out)
    res = doc["result"]
    assert code == 0 and doc["degree"] == 10
    assert res["poincare"] == res["betti_via_segre"] == (1, 2, 1, 0)
    assert res["routes_agree"] and res["sja_closed_form"] is None


@pytest.mark.parametrize("command, path, key, expected", [
    ("milnor-class", "nodal_cubic.txt", "milnor_class", ChowClass(2, (1,))),
    ("milnor-number", "nodal_cubic.txt", "parusinski", 1),
    ("milnor-number", "cuspidal_cubic.txt", "milnor_sum", 2),
    ("polar", "nodal_cubic.txt", "gamma", (3, 2, 1)),
    ("polar-degree", "nodal_cubic.txt", "polar_degree", 3),
    ("discriminant", "nodal_cubic.txt", "multiplicity", 1),
    ("le", "nodal_cubic.txt", "lambda", (1, 0, 0)),
    ("csm", "nodal_cubic.txt", "csm", ChowClass(2, (1, 3))),
    ("euler", "nodal_cubic.txt", "euler", 1),
])
def test_commands_json(command, path, key, expected):
    code, out, err = run(command, sample(path), JSON)
    assert code == 0, err
    doc = cli.parse_json(out)
    assert list(doc) == ["command", "ambient", "degree", "result", "seed", "prime"]
    assert doc["command"] == command and doc["prime"] == 32749 and doc["seed"] == 0
    assert doc["result"][key] == expected


def test_segre_of_hypersurface_file():
    # the monomial itself is a divisor of degree 10
    code, out, _ = run("segre", sample("weighted_monomial.txt"), JSON)
    assert cli.parse_json(out)["result"]["segre"] == ChowClass(3, (1000, -100, 10, 0))


def test_json_roundtrip_every_command():
    jobs = [("segre", "three_lines.txt"), ("csm", "nodal_cubic.txt"), ("euler", "nodal_cubic.txt"),
            ("milnor-class", "nodal_cubic.txt"), ("milnor-number", "nodal_cubic.txt"),
            ("le", "nodal_cubic.txt"), ("polar", "nodal_cubic.txt"),
            ("polar-degree", "nodal_cubic.txt"), ("discriminant", "cuspidal_cubic.txt"),
            ("arrangement", "braid.txt"), ("chow-calc", "calc.txt")]
    for command, path in jobs:
        cfg = cli.JobConfig()
        report = cli.COMMANDS[command](sample(path), cfg)
        text = cli.render_json(report, cfg)
        assert cli.parse_json(text)["result"] == cli.decode(cli.encode(report.result))
        assert cli.decode(json.loads(text)["result"]) == cli.decode(cli.encode(report.result))
        # text rendering of every class parses back to the same class
        for line in cli.render_text(report).splitlines():
            key, _, value = line.partition(": ")
            if "[P^" in value or (value == "0" and key.endswith("class")):
                parse_class(value, report.ambient)


def test_chow_calc_inline():
    code, out, _ = run("chow-calc", None, CFG, "integral(cap(ci_segre(3,[2,2,2]), series((1+2H)^3)))")
    assert code == 0 and out == "value: 8\n"


def test_parse_error_exit_code():
    code, out, err = run("chow-calc", None, CFG, "dual(")
    assert code == 2 and "col" in err and out == ""


def test_bad_polynomial_file(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("vars x0..x2;\nx0 + \n")
    code, _, err = run("segre", str(p))
    assert code == 2 and "line 2" in err
    p.write_text("x0*x1\n")
    assert run("segre", str(p))[0] == 2
    p.write_text("vars x0..x2;\nx0^2 + x1\n")
    assert run("csm", str(p))[0] == 2
    assert run("segre", str(tmp_path / "missing.txt"))[0] == 2


def test_unreduced_milnor_class_rejected():
    code, _, err = run("milnor-class", sample("weighted_monomial.txt"))
    assert code == 2 and "not reduced" in err


def test_budget_and_genericity_exit_codes(monkeypatch):
    tight = cli.JobConfig(max_basis=1, seed=5)
    code, _, err = run("segre", sample("three_lines.txt"), tight)
    assert code == 3 and "retry" in err

    def boom(*a, **k):
        raise GenericityError("trials disagree")

    monkeypatch.setattr(cli, "segre_with_degrees", boom)
    code, _, err = run("segre", sample("three_lines.txt"))
    assert code == 3 and "trials disagree" in err


def test_timeout_exit_code():
    cfg = cli.JobConfig(timeout_seconds=0.05, seed=77)
    code, _, err = run("csm", sample("sextic_curve.txt"), cfg)
    assert code == 3 and "time limit" in err


def test_bad_config():
    assert run("segre", sample("three_lines.txt"), cli.JobConfig(prime=32750))[0] == 2
    assert run("segre", sample("three_lines.txt"), cli.JobConfig(order="deglex"))[0] == 2


def test_lex_order_gives_same_answer():
    a = run("segre", sample("three_lines.txt"))[1]
    b = run("segre", sample("three_lines.txt"), cli.JobConfig(order="lex"))[1]
    assert a == b


def test_main_entry_point(capsys):
    code = cli.main(["segre", sample("three_lines.txt"), "--format", "json", "--seed", "3"])
    out = capsys.readouterr().out
    assert code == 0 and json.loads(out)["seed"] == 3
    with pytest.raises(SystemExit):
        cli.main(["chow-calc"])


def test_subprocess_console_script():
    proc = subprocess.run([sys.executable, "-m", "segrekit.cli", "segre", sample("three_lines.txt")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("segre: 3 [P^1] - 10 [P^0]\n")

import json

import pytest

from modhom.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def machine(capsys, *argv):
    code, out = run(capsys, "--format", "machine", *argv)
    doc = json.loads(out.out)
    assert doc["schema_version"] == 1
    return code, doc


def test_delta_order(capsys):
    code, doc = machine(capsys, "delta-order", "3")
    assert code == 0 and doc["result"]["order"] == 14 and doc["ok"]


def test_text_output(capsys):
    code, out = run(capsys, "hyperelliptic", "2")
    assert code == 0 and "status: verified" in out.out


@pytest.mark.parametrize(
    "argv",
    [
        ["chain-check", "3"],
        ["rotations", "5"],
        ["gamma4"],
        ["census", "4"],
        ["rank", "4"],
        ["certify", "5", "2"],
        ["certify-profile", "3", "--exclude-orders", "14", "--max-rank", "5"],
        ["divisibility", "9"],
        ["divisibility", "9", "--witnesses"],
        ["quotient", "1", "3", "--seed", "delta^2"],
    ],
)
def test_commands_verify(capsys, argv):
    code, doc = machine(capsys, *argv)
    assert code == 0 and doc["ok"]


def test_format_flag_after_command(capsys):
    code, out = run(capsys, "divisibility", "3", "--format", "machine")
    assert json.loads(out.out)["result"]["lcm"] == 42


def test_usage_errors(capsys):
    for argv in (["certify", "2", "3"], ["divisibility", "2"], ["rotations", "2"], ["rank"], ["delta-order", "x"], ["nope"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_bad_seed_is_usage_error(capsys):
    code, _ = run(capsys, "quotient", "1", "3", "--seed", "banana")
    assert code == 2


def test_cap_overflow_is_failure(capsys):
    code, doc = machine(capsys, "quotient", "2", "3", "--cap", "100")
    assert code == 1 and "cap" in doc["error"]


def test_fault_injection_flips_exit(capsys):
    code, doc = machine(capsys, "certify", "3", "2")
    assert code == 0
    for step in doc["result"]["steps"]:
        c, d = machine(capsys, "certify", "3", "2", "--inject-fault", step["id"])
        assert c == 1 and d["result"]["conclusion"] == "no-obstruction"


def test_abelianize_file(capsys, tmp_path):
    f = tmp_path / "sl2.pres"
    f.write_text("generators 2\n1 2 1 -2 -1 -2\n1 2 1 2 1 2 1 2 1 2 1 2\n")
    code, doc = machine(capsys, "abelianize", str(f))
    assert code == 0 and doc["result"]["torsion"] == [12]
    bad = tmp_path / "bad.pres"
    bad.write_text("generators 1\n2\n")
    assert run(capsys, "abelianize", str(bad))[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["abelianize", str(tmp_path / "missing")])
    assert exc.value.code == 2


def test_rank_system_file(capsys, tmp_path):
    f = tmp_path / "sys.txt"
    f.write_text("genus 2 count 2\na 1 0 0 0\nb 0 0 1 0\n0 0\n0 0\n")
    code, doc = machine(capsys, "rank", "--system", str(f))
    assert code == 0 and doc["result"]["twist_rank"] == 2
    f.write_text("genus 2 count 2\na 1 0 0 0\nb 0 1 0 0\n0 0\n0 0\n")
    code, doc = machine(capsys, "rank", "--system", str(f))
    assert code == 1 and doc["result"]["violations"]


def test_census_figure(capsys, tmp_path):
    path = tmp_path / "census.png"
    code, doc = machine(capsys, "census", "3", "--figure", str(path))
    assert code == 0 and path.stat().st_size > 0
    assert doc["result"]["max_order"] == 14


def test_no_obstruction_profile_exits_zero(capsys):
    code, doc = machine(capsys, "certify-profile", "5")
    assert code == 0 and doc["result"]["conclusion"] == "no-obstruction"


def test_seed_box(capsys):
    code, doc = machine(capsys, "--seed-box", "2", "delta-order", "2")
    assert code == 0 and doc["result"]["order"] == 10

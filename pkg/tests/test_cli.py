import json
import os
import shutil
from pathlib import Path

from gwverify import hodge, localization
from gwverify.cli import main


def _reset_data_caches():
    hodge.reset_tables()
    localization.reset_problems()


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_psi_command(capsys):
    code, out, _ = run(capsys, "psi", "--g", "2", "--exponents", "4")
    assert code == 0 and out.strip() == "1/1152"
    code, out, _ = run(capsys, "psi", "--g", "2", "--exponents", "3,2")
    assert code == 0 and out.strip() == "29/5760"


def test_hodge_command(capsys):
    code, out, _ = run(capsys, "hodge", "--g", "2", "--n", "1", "--psi", "3", "--lambda", "1,0")
    assert code == 0 and out.strip() == "1/480"


def test_thm1_command(capsys):
    code, out, _ = run(capsys, "thm1", "--n", "5", "--g", "7")
    assert code == 0 and out.strip() == "guaranteed"
    code, out, _ = run(capsys, "thm1", "--n", "1", "--g", "2", "--kappa", "nontrivial")
    assert code == 0 and "Example 2" in out


def test_dim_command(capsys):
    code, out, _ = run(capsys, "dim", "--n", "1", "--g", "2", "--k", "2", "--c1A", "2")
    assert code == 0 and out.strip() == "12"
    code, out, _ = run(
        capsys, "dim", "--n", "4", "--g", "3", "--k", "1", "--c1A", "5",
        "--AdotV", "3", "--s", "1,1,1",
    )
    assert code == 0 and out.strip() == "8"


def test_gw10_command(capsys):
    code, out, _ = run(capsys, "gw10", "--X", "P4", "--insertion", "j")
    assert code == 0 and out.strip() == "5/2"
    code, out, _ = run(capsys, "gw10", "--X", "P4", "--V", "1", "--insertion", "j")
    assert code == 0 and out.strip() == "1/2"


def test_chern_command(capsys):
    code, out, _ = run(capsys, "chern", "--space", "P4", "--hypersurface", "5", "--report")
    assert code == 0
    assert "chi(V5(P4))" in out and "-200" in out


def test_localize_command(capsys):
    code, out, _ = run(
        capsys, "localize", "--config", "p4-relative-delta1", "--expect=-97/193536"
    )
    assert code == 0 and "PASS" in out
    code, out, err = run(
        capsys, "localize", "--config", "fig7", "--expect", "1/2"
    )
    assert code == 1


def test_localize_eval_and_json(capsys):
    code, out, _ = run(
        capsys, "localize", "--config", "fig10", "--eval", "5,2", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "PASS"
    values = {i["label"]: i["value"] for i in payload["items"]}
    assert values["evaluation at (5,2)"] == "4"


def test_verify_commands(capsys):
    code, out, _ = run(capsys, "verify", "--example", "3", "--delta", "1")
    assert code == 0
    assert "-37/82944" in out and "-97/193536" in out and "PASS" in out
    code, out, _ = run(capsys, "verify", "--example", "2", "--symbolic")
    assert code == 0 and "1/240 - 1/1152*delta" in out
    code, out, _ = run(capsys, "verify", "--example", "1", "--delta", "3", "--n", "3")
    assert code == 0 and "PASS" in out


def test_graphs_command(capsys):
    code, out, _ = run(capsys, "graphs", "--example", "3", "--delta", "7")
    assert code == 0 and "2 of" in out.splitlines()[-1]


def test_usage_errors(capsys):
    code, _, _ = run(capsys, "psi", "--g", "notanumber", "--exponents", "1")
    assert code == 2
    code, _, _ = run(capsys, "nosuchcommand")
    assert code == 2
    code, _, err = run(capsys, "localize", "--config", "no/such/file.json")
    assert code == 2 and "diagram" in err


def test_unknown_monomial_is_an_input_error(capsys):
    # an off-table residual is reported, never silently zero
    code, _, err = run(
        capsys, "hodge", "--g", "2", "--n", "2", "--psi", "2,2", "--lambda", "1,0"
    )
    assert code == 2 and "no table entry" in err


def test_selftest_command_passes(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert out.strip().endswith("PASS")
    assert out.count("ok ") == 12


def test_selftest_json_deterministic(capsys):
    code1, out1, _ = run(capsys, "selftest", "--json")
    code2, out2, _ = run(capsys, "selftest", "--json")
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["status"] == "PASS"


def test_corrupted_table_reports_error(capsys, tmp_path):
    # a zero denominator in a data file must surface as an ERROR with location
    src = Path(hodge.__file__).parent / "data"
    data = tmp_path / "data"
    shutil.copytree(src, data)
    rubber = data / "tables" / "rubber.json"
    rubber.write_text(rubber.read_text().replace('"1/24"', '"1/0"', 1))
    old = os.environ.get("GWVERIFY_DATA_DIR")
    os.environ["GWVERIFY_DATA_DIR"] = str(data)
    _reset_data_caches()
    try:
        code, out, err = run(capsys, "selftest")
        assert code == 3
        assert "rubber.json" in out + err
    finally:
        if old is None:
            os.environ.pop("GWVERIFY_DATA_DIR", None)
        else:
            os.environ["GWVERIFY_DATA_DIR"] = old
        _reset_data_caches()

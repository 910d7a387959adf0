import json
import math
import os

import pytest

from moodkit.cli import main


VALID_MODEL = """\
class Base {
    method run;
    hidden method init;
    attribute size;
}
class Derived extends Base {
    method run overrides Base.run;
    method extra;
}
class Helper {
    uses Derived;
    hidden attribute cache;
}
"""


@pytest.fixture
def model_file(tmp_path):
    path = tmp_path / "demo.omdl"
    path.write_text(VALID_MODEL)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_metrics_json(model_file, capsys):
    code, out, err = run(capsys, "metrics", model_file, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"mhf", "ahf", "mif", "aif", "pf", "cf", "tc"}
    assert payload["tc"] == 3
    assert payload["cf"]["numerator"] == 1
    assert payload["cf"]["denominator"] == 6


def test_metrics_table_and_csv(model_file, capsys):
    code, out, _ = run(capsys, "metrics", model_file)
    assert code == 0
    assert "MHF" in out and "classes: 3" in out
    code, out, _ = run(capsys, "metrics", model_file, "--format", "csv")
    assert code == 0
    header = out.splitlines()[0]
    assert header == "metric,value,numerator,denominator,undefined_reason"


def test_metrics_missing_file_is_io_error(capsys):
    code, _, err = run(capsys, "metrics", "/no/such/file.omdl")
    assert code == 1
    assert "i/o" in err


def test_metrics_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.omdl"
    path.write_text("class A extends { }")
    code, _, err = run(capsys, "metrics", str(path))
    assert code == 2
    assert "expected identifier" in err


def test_metrics_validation_failure(tmp_path, capsys):
    path = tmp_path / "cycle.omdl"
    path.write_text("class A extends B { }\nclass B extends A { }\n")
    code, _, err = run(capsys, "metrics", str(path))
    assert code == 3
    assert "CYCLE" in err


def test_fit_builtin_table_format(capsys):
    code, out, _ = run(capsys, "fit", "builtin:table1", "--response", "NOL")
    assert code == 0
    assert "-9458.918" in out
    assert "421.994" in out
    assert "2734.947" in out
    assert "0.996" in out


def test_fit_json_golden_fields(capsys):
    code, out, _ = run(capsys, "fit", "builtin:table1", "--response", "NOC",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    betas = {c["name"]: c["beta"] for c in payload["coefficients"]}
    assert round(betas["intercept"], 3) == 24.439
    assert round(betas["NOL"], 3) == 0.002
    assert payload["anova"]["df_total"] == 32
    assert round(payload["anova"]["f_stat"], 3) == 2788.435


def test_fit_response_all(capsys):
    code, out, _ = run(capsys, "fit", "builtin:table1", "--response", "all",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert [f["spec"]["response"] for f in payload] == [
        "NOL", "NOC", "NOM", "NOA"]
    for f in payload:
        a = f["anova"]
        assert a["ss_regression"] + a["ss_residual"] == pytest.approx(
            a["ss_total"], rel=1e-9)


def test_fit_alias_response(capsys):
    code, out, _ = run(capsys, "fit", "builtin:table1", "--response", "LOC",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["spec"]["response"] == "NOL"


def test_fit_unknown_column_is_domain_error(capsys):
    code, _, err = run(capsys, "fit", "builtin:table1", "--response", "ZZZ")
    assert code == 4
    assert "UNKNOWN_COLUMN" in err


def test_fit_unknown_builtin_token(capsys):
    code, _, err = run(capsys, "fit", "builtin:zzz", "--response", "NOL")
    assert code == 2
    assert "builtin" in err


def test_fit_csv_from_file(tmp_path, capsys):
    path = tmp_path / "d.csv"
    path.write_text("x,y\n1,3\n2,5\n3,7\n4,9\n")
    code, out, _ = run(capsys, "fit", str(path), "--response", "y",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    betas = {c["name"]: c["beta"] for c in payload["coefficients"]}
    assert betas["intercept"] == pytest.approx(1.0, abs=1e-9)
    assert betas["x"] == pytest.approx(2.0, rel=1e-9)


def test_fit_malformed_csv_is_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("x,y\n1\n")
    code, _, err = run(capsys, "fit", str(path), "--response", "y")
    assert code == 2
    assert "MALFORMED_ROW" in err


def test_fit_non_numeric_csv_is_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("x,y\n1,apple\n")
    code, _, err = run(capsys, "fit", str(path), "--response", "y")
    assert code == 2
    assert "NON_NUMERIC" in err


def test_predict_golden(capsys):
    code, out, _ = run(capsys, "predict", "builtin:table1",
                       "--response", "NOL",
                       "--NOC", "65", "--NOM", "1446", "--NOA", "537")
    assert code == 0
    assert float(out.strip()) == pytest.approx(13747.81, abs=0.01)


def test_predict_equals_flag_form(capsys):
    code, out, _ = run(capsys, "predict", "builtin:table1",
                       "--response", "NOL",
                       "--NOC=65", "--NOM=1446", "--NOA=537")
    assert code == 0
    assert float(out.strip()) == pytest.approx(13747.81, abs=0.01)


def test_predict_missing_value_flag(capsys):
    code, _, err = run(capsys, "predict", "builtin:table1",
                       "--response", "NOL", "--NOC", "65", "--NOM", "1446")
    assert code == 4
    assert "NOA" in err


def test_predict_zero_inputs_give_intercept(capsys):
    code, out, _ = run(capsys, "predict", "builtin:table1",
                       "--response", "NOL",
                       "--NOC", "0", "--NOM", "0", "--NOA", "0")
    assert code == 0
    assert float(out.strip()) == pytest.approx(-9458.918, abs=1e-3)


def test_predict_bad_value_is_usage_error(capsys):
    code, _, err = run(capsys, "predict", "builtin:table1",
                       "--response", "NOL",
                       "--NOC", "sixty-five", "--NOM", "1446", "--NOA", "537")
    assert code == 2


def test_extras_rejected_outside_predict(capsys):
    code, _, err = run(capsys, "fit", "builtin:table1", "--response", "NOL",
                       "--NOC", "65")
    assert code == 2
    assert "unrecognized" in err


def test_dataset_csv_output(capsys):
    code, out, _ = run(capsys, "dataset", "builtin:table1",
                       "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "NOL,NOC,NOM,NOA"
    assert lines[1] == "15837,65,1446,537"
    assert len(lines) == 34


def test_dataset_json_output(capsys):
    code, out, _ = run(capsys, "dataset", "builtin:table1",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["columns"] == ["NOL", "NOC", "NOM", "NOA"]
    assert len(payload["rows"]) == 33


def test_output_file_option(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, "dataset", "builtin:table1",
                       "--format", "json", "-o", str(out_path))
    assert code == 0
    assert out == ""
    payload = json.loads(out_path.read_text())
    assert payload["provenance"] == "paper-table-1"


def test_plot_csv_files(tmp_path, capsys):
    out_dir = tmp_path / "plots"
    code, out, _ = run(capsys, "plot", "builtin:table1", "--x", "NOL",
                       "--y", "NOC,NOM,NOA", "--out", str(out_dir))
    assert code == 0
    for y in ("NOC", "NOM", "NOA"):
        path = out_dir / f"{y}_vs_NOL.csv"
        assert path.exists()
    lines = (out_dir / "NOC_vs_NOL.csv").read_text().splitlines()
    assert lines[0] == "NOL,NOC"
    assert len(lines) == 34
    x0, y0 = lines[1].split(",")
    assert float(x0) == 15837.0 and float(y0) == 65.0


def test_plot_log10_matches_oracle(tmp_path, capsys):
    from moodkit import builtin_table1
    out_dir = tmp_path / "plots"
    code, _, _ = run(capsys, "plot", "builtin:table1", "--x", "NOL",
                     "--y", "NOC", "--log10", "--out", str(out_dir))
    assert code == 0
    lines = (out_dir / "NOC_vs_NOL_log10.csv").read_text().splitlines()
    assert lines[0] == "NOL_log10,NOC_log10"
    data = builtin_table1()
    for line, row in zip(lines[1:], data.rows):
        x, y = (float(v) for v in line.split(","))
        assert x == pytest.approx(math.log10(row[0]), abs=1e-9)
        assert y == pytest.approx(math.log10(row[1]), abs=1e-9)


def test_plot_svg(tmp_path, capsys):
    out_dir = tmp_path / "plots"
    code, _, _ = run(capsys, "plot", "builtin:table1", "--x", "NOL",
                     "--y", "NOC", "--svg", "--out", str(out_dir))
    assert code == 0
    svg = (out_dir / "NOC_vs_NOL.svg").read_text()
    assert svg.count("<circle") == 33


def test_plot_nonpositive_under_log10(tmp_path, capsys):
    src = tmp_path / "d.csv"
    src.write_text("x,y\n1,0\n2,5\n")
    code, _, err = run(capsys, "plot", str(src), "--x", "x", "--y", "y",
                       "--log10", "--out", str(tmp_path / "p"))
    assert code == 4
    assert "NONPOSITIVE_VALUE" in err


def test_plot_bad_column(tmp_path, capsys):
    code, _, err = run(capsys, "plot", "builtin:table1", "--x", "NOL",
                       "--y", "missing", "--out", str(tmp_path / "p"))
    assert code == 4
    assert "UNKNOWN_COLUMN" in err


def test_format_env_default(model_file, capsys, monkeypatch):
    monkeypatch.setenv("MOODKIT_FORMAT", "json")
    code, out, _ = run(capsys, "metrics", model_file)
    assert code == 0
    json.loads(out)


def test_format_env_invalid(model_file, capsys, monkeypatch):
    monkeypatch.setenv("MOODKIT_FORMAT", "yaml")
    code, _, err = run(capsys, "metrics", model_file)
    assert code == 2
    assert "MOODKIT_FORMAT" in err


def test_format_flag_beats_env(model_file, capsys, monkeypatch):
    monkeypatch.setenv("MOODKIT_FORMAT", "json")
    code, out, _ = run(capsys, "metrics", model_file, "--format", "csv")
    assert code == 0
    assert out.startswith("metric,")


def test_json_output_deterministic(model_file, capsys):
    _, out1, _ = run(capsys, "metrics", model_file, "--format", "json")
    _, out2, _ = run(capsys, "metrics", model_file, "--format", "json")
    assert out1 == out2


def test_usage_error_exit_code(capsys):
    assert main(["fit", "builtin:table1"]) == 2  # missing --response
    capsys.readouterr()
    assert main(["nonsense"]) == 2
    capsys.readouterr()

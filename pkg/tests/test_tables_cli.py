import math

import pytest

from gcrit.cli import (CSV_COLUMNS, RunConfig, build_potential, expand_methods,
                       load_grid_csv, main, render_wide, run)
from gcrit.errors import ConfigurationError
from gcrit.potentials import Potential
from gcrit.tables import printed_values, reproduce_table


def test_printed_values_spot_checks():
    t1 = printed_values(1)
    assert t1[0][3] == 2.4674   # g_c column
    assert t1[5][6] == 75.114   # g_C2 column
    t4 = printed_values(4)
    assert t4[0.1][6] == 440.67
    with pytest.raises(ConfigurationError):
        printed_values(7)


@pytest.fixture(scope="module")
def table1():
    return reproduce_table(1)


def test_table1_reproduces(table1):
    assert table1.passed
    assert table1.max_deviation <= 2e-4
    assert math.isclose(table1.cell(4, "g_New"), 50.357, rel_tol=2e-4)


def test_table_artifact_rendering_deterministic(table1):
    a = table1.to_csv()
    b = table1.to_csv()
    assert a == b
    header = a.splitlines()[0].split(",")
    assert header[0] == "ell"
    assert "g_c_computed" in header
    md = table1.to_markdown()
    assert md.startswith("### Table 1")
    assert "PASS" in md


def test_run_records_square_well():
    config = RunConfig(potential=Potential.square_well(), ells=(1,),
                       methods=("all",))
    records = run(config)
    # eight bound methods apply to the square well
    assert len(records) == 8
    by_method = {r.method: r for r in records}
    assert math.isclose(by_method["bargmann_schwinger"].value, 6.0, rel_tol=1e-10)
    assert math.isclose(by_method["third_order"].value, 9.8132, rel_tol=1e-4)
    assert math.isclose(by_method["variational"].value, 9.9934, rel_tol=1e-4)
    assert math.isclose(by_method["variational_closed_form"].value,
                        1.5 * (math.sqrt(2.5) + 1.0) ** 2, rel_tol=1e-12)
    assert all(r.wall_time_s >= 0.0 for r in records)


def test_run_single_method_printed_value():
    config = RunConfig(potential=Potential.yukawa(), ells=(0,),
                       methods=("variational",))
    (rec,) = run(config)
    assert math.isclose(rec.value, 1.6826, rel_tol=2e-4)
    assert math.isclose(rec.optimal_param, 1.7217, rel_tol=1e-3)


def test_expand_methods_non_square_well():
    methods = expand_methods(("all",), Potential.yukawa())
    assert "variational_closed_form" not in methods
    assert len(methods) == 7


def test_run_config_validation():
    with pytest.raises(ConfigurationError):
        RunConfig(potential=Potential.yukawa(), ells=(), methods=("all",))
    with pytest.raises(ConfigurationError):
        RunConfig(potential=Potential.yukawa(), ells=(0,), methods=("nope",))
    with pytest.raises(ConfigurationError):
        RunConfig(potential=Potential.yukawa(), ells=(0,), methods=("all",),
                  fmt="xml")


def test_render_wide_column_contract():
    config = RunConfig(potential=Potential.square_well(), ells=(0,),
                       methods=("bargmann_schwinger", "shooting"))
    text = render_wide(run(config), "csv", 6)
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    cells = lines[1].split(",")
    assert cells[0] == "0"
    assert cells[1] == "2"            # g_BS
    assert cells[2] == ""             # g_eq2 not requested
    assert cells[5].startswith("2.4674")  # g_c_shoot


def test_cli_compute_deterministic(capsys):
    argv = ["compute", "--potential", "square_well", "--ell", "0",
            "--methods", "bargmann_schwinger", "third_order"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    assert first.splitlines()[0] == ",".join(CSV_COLUMNS)


def test_cli_records_format(capsys):
    assert main(["compute", "--potential", "square_well", "--ell", "0",
                 "--methods", "bargmann_schwinger", "--records"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("ell,method,value")
    assert "bargmann_schwinger" in out


def test_cli_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text(
        "[potential]\nkind = stis\nalpha = 1.0\n\n"
        "[run]\nell = 0\nmethods = bargmann_schwinger\nformat = csv\n\n"
        "[quadrature]\nrel_tol = 1e-9\n")
    assert main(["compute", "--config", str(cfg)]) == 0
    out = capsys.readouterr().out
    value = float(out.splitlines()[1].split(",")[1])
    assert math.isclose(value, 1.0 / (math.log(2.0) - 0.5), rel_tol=1e-6)


def test_cli_markdown_output(capsys):
    assert main(["compute", "--potential", "exponential", "--ell", "0",
                 "--methods", "bargmann_schwinger", "--format", "md"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("| ell |")


def test_cli_tabulated_grid(tmp_path, capsys):
    grid = tmp_path / "grid.csv"
    grid.write_text("radius,value\n0.5,2.0\n1.0,1.0\n2.0,0.0\n")
    assert main(["compute", "--potential", "tabulated", "--grid-csv", str(grid),
                 "--ell", "0", "--methods", "bargmann_schwinger"]) == 0
    out = capsys.readouterr().out
    assert float(out.splitlines()[1].split(",")[1]) > 0.0


def test_load_grid_csv_rejects_garbage(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("radius,value\n0.5,2.0\nnot,a,number\n")
    with pytest.raises(ConfigurationError):
        load_grid_csv(str(bad))


def test_cli_config_errors(capsys):
    assert main(["compute", "--potential", "wiggly", "--ell", "0",
                 "--methods", "all"]) == 2
    assert "configuration error" in capsys.readouterr().err
    assert main(["compute", "--potential", "stis", "--ell", "0",
                 "--methods", "all"]) == 2
    assert main(["compute", "--potential", "yukawa", "--ell", "0",
                 "--methods", "variational_closed_form"]) == 2


def test_cli_nonconvergence_exit_code(tmp_path, capsys):
    cfg = tmp_path / "starved.ini"
    cfg.write_text(
        "[potential]\nkind = yukawa\n\n"
        "[run]\nell = 0\nmethods = bargmann_schwinger\n\n"
        "[quadrature]\nmax_subdivisions = 1\n")
    assert main(["compute", "--config", str(cfg)]) == 3
    assert "numerical error" in capsys.readouterr().err


def test_build_potential_dispatch():
    assert build_potential("yukawa", R=2.0).R == 2.0
    assert build_potential("stis", alpha=3.0).alpha == 3.0
    with pytest.raises(ConfigurationError):
        build_potential("shell")


def test_cli_check_square_well(capsys):
    assert main(["check", "--potential", "square_well", "--ell", "0"]) == 0
    out = capsys.readouterr().out
    assert "ok" in out
    assert "FAIL" not in out


def test_cli_check_flags_irregular_potential(tmp_path, capsys):
    grid = tmp_path / "singular.csv"
    rows = "\n".join(f"{2.0 ** -k},{(2.0 ** -k) ** -2}" for k in range(40, -1, -1))
    grid.write_text("radius,value\n" + rows + "\n")
    assert main(["check", "--potential", "tabulated",
                 "--grid-csv", str(grid), "--ell", "0"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert "regular" in out

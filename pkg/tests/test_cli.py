import subprocess
import sys
from pathlib import Path

import pytest

from ngontower.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_tables_sets_257_golden(capsys):
    code, out = run_cli(capsys, "tables", "--n", "257", "--kind", "sets")
    assert code == 0
    assert out == (GOLDEN / "sets_257.txt").read_text()


def test_tables_sets_17(capsys):
    code, out = run_cli(capsys, "tables", "--n", "17", "--kind", "sets")
    assert code == 0
    assert out == "1 2 4 8\n3 6 5 7\n"


def test_tables_mu_golden(capsys):
    code, out = run_cli(capsys, "tables", "--n", "65537", "--kind", "mu", "--m", "3")
    assert code == 0
    assert out == (GOLDEN / "mu_65537_m3.txt").read_text()


def test_tables_ksets_golden(capsys):
    code, out = run_cli(capsys, "tables", "--n", "65537", "--kind", "ksets", "--m", "6")
    assert code == 0
    assert out == (GOLDEN / "ksets_65537_m6.txt").read_text()
    assert "K(10,64) = 26" in out


def test_tables_product_square(capsys):
    code, out = run_cli(capsys, "tables", "--n", "257", "--kind", "product", "--i", "1", "--j", "9")
    assert code == 0
    assert out.strip() == "0 + 2*G1 + 2*G3 + 1*G5 + 2*G6 + 1*G7 + 2*G9 + 2*G11 + 1*G13 + 2*G14 + 1*G15"
    code, out = run_cli(capsys, "tables", "--n", "257", "--kind", "square", "--i", "1")
    assert out.strip() == "16 + 3*G1 + 4*G2 + 2*G3 + 2*G6 + 2*G8 + 2*G9"


def test_tables_signs(capsys):
    code, out = run_cli(capsys, "tables", "--n", "257", "--kind", "signs")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "step 1: 1"
    assert lines[1] == "step 2: 1 2"
    assert lines[2] == "step 3: 1 3"


def test_tables_missing_selector(capsys):
    code, _ = run_cli(capsys, "tables", "--n", "257", "--kind", "mu")
    assert code == 2


def test_build_invalid_n(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build", "--n", "9"])
    assert exc.value.code == 2


def test_build_verify_roundtrip(tmp_path, capsys):
    tower_path = tmp_path / "t17.tower"
    code, out = run_cli(capsys, "build", "--n", "17", "--out", str(tower_path))
    assert code == 0
    assert "p1 verified" in out
    code, out = run_cli(capsys, "verify", "--tower", str(tower_path))
    assert code == 0


def test_verify_detects_corruption(tmp_path, capsys):
    tower_path = tmp_path / "t17.tower"
    run_cli(capsys, "build", "--n", "17", "--out", str(tower_path))
    lines = tower_path.read_text().splitlines()
    # Bump one product-expression coefficient by 1.
    import json

    node = json.loads(lines[2])
    node["product"]["linear"][0][0] += 1
    lines[2] = json.dumps(node)
    tower_path.write_text("\n".join(lines) + "\n")
    code = main(["verify", "--tower", str(tower_path)])
    assert code == 1


def test_build_257_report(tmp_path, capsys):
    code, out = run_cli(capsys, "build", "--n", "257")
    assert code == 0
    assert "nodes = 15" in out
    assert "reference diff" in out
    assert "known misprint" in out
    assert "p1 verified" in out


def test_compile_and_render(tmp_path, capsys):
    tower_path = tmp_path / "t17.tower"
    run_cli(capsys, "build", "--n", "17", "--out", str(tower_path))
    code, _ = run_cli(capsys, "compile", "--tower", str(tower_path), "--target", "arith",
                      "--out", str(tmp_path / "p.arith"))
    assert code == 0
    code, _ = run_cli(capsys, "compile", "--tower", str(tower_path), "--target", "geom",
                      "--out", str(tmp_path / "p.geom"))
    assert code == 0
    code, _ = run_cli(capsys, "render", "--tower", str(tower_path),
                      "--out", str(tmp_path / "p.svg"))
    assert code == 0
    svg = (tmp_path / "p.svg").read_text()
    assert svg == (GOLDEN / "polygon_17.svg").read_text()


def test_constructible(capsys):
    code, out = run_cli(capsys, "constructible", "170")
    assert code == 0 and out.startswith("yes")
    code, out = run_cli(capsys, "constructible", "9")
    assert code == 0 and out.startswith("no")
    code, out = run_cli(capsys, "constructible", "65537")
    assert code == 0 and out.startswith("yes")
    code, out = run_cli(capsys, "constructible", "257")
    assert code == 0 and out.startswith("yes")
    code, out = run_cli(capsys, "constructible", "7")
    assert code == 0 and out.startswith("no")


def test_console_script_entry():
    result = subprocess.run(
        [sys.executable, "-m", "ngontower.cli", "constructible", "12"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert result.stdout.startswith("yes")

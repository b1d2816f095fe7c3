"""
MCR CLI Test Runner
- subcommand 종료 코드와 출력 파일 확인 (임시 디렉토리 사용)

실행:
  (venv) python -m scripts.mcr_cli_test
"""

from __future__ import annotations

import contextlib
import io
import json
import tempfile
from pathlib import Path

from compiler.gatecircuit import parse_qasm, t_count
from compiler.pauli import parse_axis
from compiler.pbc import PBCCircuit, default_input, make_rotation, pbc_from_json, pbc_to_json, t_count_pbc
from compiler.tableau import CliffordTableau
from compiler.unopt import UnoptRecipe, replay
from scripts.mcr_cli import main as cli_main
from scripts.mcr_cli import (
    EXIT_NOT_EQUIVALENT,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    parse_qubit_range,
    save_circuit,
)


def _run(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = cli_main(argv)
    return code, buf.getvalue()


def test_unopt_no_swap_count():
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "u2.json"
        code, text = _run(["unopt", "--qubits", "2", "--no-swap", "--seed", "7", "--out", str(out)])
        assert code == EXIT_OK
        assert "t_unopt=33" in text
        assert t_count_pbc(pbc_from_json(out.read_text(encoding="utf-8"))) == 33

        qasm = Path(tmp) / "u2.qasm"
        assert _run(["unopt", "--qubits", "2", "--no-swap", "--seed", "7", "--out", str(qasm)])[0] == EXIT_OK
        assert t_count(parse_qasm(qasm.read_text(encoding="utf-8"))) == 33


def test_unopt_deterministic_bytes():
    with tempfile.TemporaryDirectory() as tmp:
        a, b = Path(tmp) / "a.qasm", Path(tmp) / "b.qasm"
        assert _run(["unopt", "--qubits", "2", "--seed", "7", "--out", str(a)])[0] == EXIT_OK
        assert _run(["unopt", "--qubits", "2", "--seed", "7", "--out", str(b)])[0] == EXIT_OK
        assert a.read_bytes() == b.read_bytes()


def test_usage_errors():
    assert _run(["unopt", "--qubits", "1"])[0] == EXIT_USAGE
    assert _run([])[0] == EXIT_USAGE
    assert _run(["unopt", "--qubits", "2", "--bogus"])[0] == EXIT_USAGE
    assert _run(["bench", "--qubits", "1..3"])[0] == EXIT_USAGE
    assert _run(["count-mcr", "--qubits", "3", "--enumerate"])[0] == EXIT_USAGE
    with tempfile.TemporaryDirectory() as tmp:
        assert _run(["convert", "--in", str(Path(tmp) / "missing.qasm"), "--to", "pbc-json"])[0] == EXIT_USAGE


def test_unopt_from_file_with_recipe():
    with tempfile.TemporaryDirectory() as tmp:
        src = save_circuit(default_input(3), Path(tmp) / "in.json")
        out = Path(tmp) / "out.json"
        recipe_path = Path(tmp) / "recipe.json"
        code, _ = _run(["unopt", "--in", str(src), "--seed", "3", "--out", str(out), "--recipe-out", str(recipe_path)])
        assert code == EXIT_OK

        recipe = UnoptRecipe.from_json(recipe_path.read_text(encoding="utf-8"))
        assert len(recipe.log) == 9
        assert replay(default_input(3), recipe) == pbc_from_json(out.read_text(encoding="utf-8"))


def test_verify_and_convert():
    with tempfile.TemporaryDirectory() as tmp:
        u = save_circuit(default_input(2), Path(tmp) / "u.qasm")
        v = Path(tmp) / "v.qasm"
        assert _run(["unopt", "--in", str(u), "--seed", "1", "--out", str(v)])[0] == EXIT_OK

        report_md = Path(tmp) / "reports" / "verify.md"
        code, _ = _run(["verify", "--a", str(u), "--b", str(v), "--report", str(report_md)])
        assert code == EXIT_OK
        assert "EQUIVALENT" in report_md.read_text(encoding="utf-8")

        as_json = Path(tmp) / "v_pbc.json"
        code, text = _run(["convert", "--in", str(v), "--to", "pbc-json", "--out", str(as_json)])
        assert code == EXIT_OK
        assert "clifford=" in text and "t=" in text
        back = Path(tmp) / "v_back.qasm"
        assert _run(["convert", "--in", str(as_json), "--to", "qasm", "--out", str(back)])[0] == EXIT_OK
        assert _run(["verify", "--a", str(v), "--b", str(back), "--method", "statevector"])[0] == EXIT_OK

        qc = Path(tmp) / "v.qc"
        assert _run(["convert", "--in", str(v), "--to", "qc", "--out", str(qc)])[0] == EXIT_OK
        assert qc.read_text(encoding="utf-8").startswith(".v q0 q1")


def test_verify_not_equivalent_and_parse_error():
    with tempfile.TemporaryDirectory() as tmp:
        a = Path(tmp) / "a.qasm"
        b = Path(tmp) / "b.qasm"
        bad = Path(tmp) / "bad.qasm"
        a.write_text('OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\nt q[0];\n', encoding="utf-8")
        b.write_text('OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\nt q[1];\n', encoding="utf-8")
        bad.write_text("qreg q[2];\nccx q[0],q[1];\n", encoding="utf-8")

        assert _run(["verify", "--a", str(a), "--b", str(b)])[0] == EXIT_NOT_EQUIVALENT
        assert _run(["verify", "--a", str(a), "--b", str(bad)])[0] == EXIT_PARSE

        three = save_circuit(default_input(3), Path(tmp) / "three.qasm")
        assert _run(["verify", "--a", str(a), "--b", str(three)])[0] == EXIT_USAGE


def test_optimize_swappable_circuit():
    axes = ["+XX", "+YY", "+XY", "+YX", "+XX", "+YY", "+XY", "+YX"]
    p = PBCCircuit(2, CliffordTableau.identity(2), tuple(make_rotation(parse_axis(a), 1) for a in axes))
    with tempfile.TemporaryDirectory() as tmp:
        src = Path(tmp) / "swappable.json"
        src.write_text(pbc_to_json(p), encoding="utf-8")
        report = Path(tmp) / "report.json"
        code, text = _run(["optimize", "--in", str(src), "--report", str(report)])
        assert code == EXIT_OK
        assert "8 -> 0" in text

        out = Path(tmp) / "swappable_opt.json"
        assert t_count_pbc(pbc_from_json(out.read_text(encoding="utf-8"))) == 0
        assert json.loads(report.read_text(encoding="utf-8"))["final_t"] == 0
        assert _run(["verify", "--a", str(src), "--b", str(out)])[0] == EXIT_OK


def test_optimize_pair_cap_and_rounds():
    axes = ["+XX", "+YY", "+XY", "+YX", "+XX", "+YY", "+XY", "+YX"]
    p = PBCCircuit(2, CliffordTableau.identity(2), tuple(make_rotation(parse_axis(a), 1) for a in axes))
    with tempfile.TemporaryDirectory() as tmp:
        src = Path(tmp) / "swappable.json"
        src.write_text(pbc_to_json(p), encoding="utf-8")

        # layer 크기가 2라 경계당 1쌍만 봐도 전부 상쇄된다
        code, text = _run(["optimize", "--in", str(src), "--pair-cap", "1", "--max-rounds", "5"])
        assert code == EXIT_OK
        assert "pair_cap=1" in text and "max_rounds=5" in text
        assert "8 -> 0" in text

        # swap 없이 merge만 1 round: 인접 축이 모두 달라 줄지 않는다
        code, text = _run(["optimize", "--in", str(src), "--passes", "merge", "--max-rounds", "1"])
        assert code == EXIT_OK
        assert "8 -> 8" in text

        assert _run(["optimize", "--in", str(src), "--pair-cap", "0"])[0] == EXIT_USAGE
        assert _run(["optimize", "--in", str(src), "--max-rounds", "0"])[0] == EXIT_USAGE


def test_bench_no_swap():
    with tempfile.TemporaryDirectory() as tmp:
        csv_path = Path(tmp) / "bench.csv"
        json_path = Path(tmp) / "bench.json"
        db = Path(tmp) / "bench.duckdb"
        code, text = _run([
            "bench", "--qubits", "2..3", "--samples", "2", "--no-swap",
            "--csv", str(csv_path), "--json", str(json_path), "--duckdb", str(db), "--workers", "1",
        ])
        assert code == EXIT_OK
        assert "rows=4" in text

        lines = csv_path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "n,sample,seed,t_unopt,t_opt,p"
        assert [line.split(",")[3] for line in lines[1:]] == ["33", "33", "73", "73"]

        summary = json.loads(json_path.read_text(encoding="utf-8"))
        assert [row["t_unopt_mean"] for row in summary["per_n"]] == [33.0, 73.0]
        assert all(row["p_mean"] == 0.0 for row in summary["per_n"])

        code, text = _run([
            "bench", "--qubits", "2", "--samples", "1", "--no-swap", "--max-rounds", "3", "--pair-cap", "16",
            "--csv", str(Path(tmp) / "b2.csv"), "--json", str(Path(tmp) / "b2.json"),
        ])
        assert code == EXIT_OK
        assert "max_rounds=3" in text and "pair_cap=16" in text
        assert _run(["bench", "--qubits", "2", "--samples", "1", "--pair-cap", "-1"])[0] == EXIT_USAGE


def test_count_mcr():
    code, text = _run(["count-mcr", "--qubits", "2", "--enumerate"])
    assert code == EXIT_OK
    assert text.splitlines()[0] == "360"
    code, text = _run(["count-mcr", "--qubits", "3"])
    assert code == EXIT_OK and text.strip() == "30240"


def test_parse_qubit_range():
    assert parse_qubit_range("2..6") == [2, 3, 4, 5, 6]
    assert parse_qubit_range("2,4") == [2, 4]
    assert parse_qubit_range("3") == [3]


def main() -> None:
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            print(f"\n=== {name} ===")
            fn()
            print("[PASS]")
    print("\n✅ ALL TESTS OK")


if __name__ == "__main__":
    main()

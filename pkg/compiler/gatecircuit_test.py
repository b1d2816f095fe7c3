"""
Gate Circuit IR Test Runner
- QASM 파싱/출력, qc 출력, 회전 분해 구조, T-count 확인

실행:
  (venv) python -m compiler.gatecircuit_test
"""

from __future__ import annotations

import numpy as np

from compiler.gatecircuit import (
    CircuitError,
    GateCircuit,
    QasmParseError,
    SUPPORTED_GATES,
    clifford_count,
    decompose_rotation,
    emit_qasm,
    emit_qc,
    gate_counts,
    normalize_angle_index,
    parse_qasm,
    t_count,
)
from compiler.pauli import parse_axis


def _names(c: GateCircuit) -> list[tuple]:
    return [(g.name, *g.qubits) for g in c.gates]


def test_parse_minimal():
    c = parse_qasm("qreg q[1]; t q[0];")
    assert c.n == 1
    assert _names(c) == [("t", 0)]

    c = parse_qasm("qreg q[2]; h q[0]; cx q[0],q[1];")
    assert _names(c) == [("h", 0), ("cx", 0, 1)]


def test_parse_with_header_and_comments():
    text = """OPENQASM 2.0;
include "qelib1.inc";
// 주석
qreg q[3];
sdg q[2];   // inline
tdg q[1];
"""
    c = parse_qasm(text)
    assert c.n == 3
    assert _names(c) == [("sdg", 2), ("tdg", 1)]


def _expect_parse_error(text: str, needle: str, line: int | None = None) -> None:
    try:
        parse_qasm(text)
    except QasmParseError as e:
        assert needle in str(e), str(e)
        if line is not None:
            assert e.line == line, (e.line, line)
        return
    raise AssertionError(f"막혀야 하는 QASM이 통과했습니다: {text!r}")


def test_parse_errors():
    _expect_parse_error("qreg q[3];\nccx q[0],q[1],q[2];", "ccx", line=2)
    _expect_parse_error("h q[0];", "qreg")
    _expect_parse_error("", "qreg")
    _expect_parse_error("qreg q[2];\nh q[5];", "범위", line=2)
    _expect_parse_error("qreg q[2];\ncx q[0],q[0];", "cx", line=2)
    _expect_parse_error("qreg q[2];\nh q[0]", ";", line=2)
    _expect_parse_error("qreg q[2];\nqreg r[1];", "qreg", line=2)
    _expect_parse_error("qreg q[2];\nh r[0];", "operand", line=2)


def test_emit_qasm_canonical():
    empty = GateCircuit(2)
    assert emit_qasm(empty) == 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\n'

    text = emit_qasm(GateCircuit.from_ops(1, [("t", 0)]))
    assert text.splitlines().count("t q[0];") == 1


def test_qasm_round_trip_random():
    rng = np.random.default_rng(3)
    for _ in range(200):
        n = int(rng.integers(2, 5))
        ops = []
        for _ in range(int(rng.integers(0, 30))):
            name = SUPPORTED_GATES[int(rng.integers(len(SUPPORTED_GATES)))]
            if name == "cx":
                a, b = rng.choice(n, size=2, replace=False)
                ops.append((name, int(a), int(b)))
            else:
                ops.append((name, int(rng.integers(n))))
        c = GateCircuit.from_ops(n, ops)
        assert parse_qasm(emit_qasm(c)) == c


def test_emit_qc_tokens():
    body = emit_qc(GateCircuit.from_ops(2, [("t", 0), ("cx", 0, 1), ("sdg", 1), ("tdg", 0)])).splitlines()
    assert body[0] == ".v q0 q1"
    assert "BEGIN" in body and body[-1] == "END"
    assert "T q0" in body
    assert "tof q0 q1" in body
    assert "S* q1" in body
    assert "T* q0" in body


def test_invalid_circuit_rejected():
    for ops in ([("ccx", 0)], [("h", 3)], [("cx", 1, 1)], [("h", 0, 1)]):
        try:
            GateCircuit.from_ops(2, ops)
        except CircuitError:
            continue
        raise AssertionError(f"잘못된 게이트가 통과했습니다: {ops}")


def test_normalize_angle_index():
    assert [normalize_angle_index(k) for k in range(-4, 9)] == [4, -3, -2, -1, 0, 1, 2, 3, 4, -3, -2, -1, 0]


def test_decompose_single_z():
    c = decompose_rotation(parse_axis("+Z"), 1)
    assert _names(c) == [("t", 0)]
    assert _names(decompose_rotation(parse_axis("-Z"), 1)) == [("tdg", 0)]
    assert _names(decompose_rotation(parse_axis("+Z"), 3)) == [("z", 0), ("tdg", 0)]


def test_decompose_zzzz_ladder():
    c = decompose_rotation(parse_axis("+ZZZZ"), 1)
    assert _names(c) == [
        ("cx", 0, 3), ("cx", 1, 3), ("cx", 2, 3),
        ("t", 3),
        ("cx", 2, 3), ("cx", 1, 3), ("cx", 0, 3),
    ]


def test_decompose_yxz_basis():
    c = decompose_rotation(parse_axis("+YXZ"), 1)
    assert _names(c) == [
        ("sdg", 0), ("h", 0), ("h", 1),
        ("cx", 0, 2), ("cx", 1, 2),
        ("t", 2),
        ("cx", 1, 2), ("cx", 0, 2),
        ("h", 0), ("s", 0), ("h", 1),
    ]


def test_decompose_tcount_parity():
    for k in (1, -1, 2, -2, 3, -3, 4):
        c = decompose_rotation(parse_axis("+XIY"), k)
        assert t_count(c) == (1 if k % 2 else 0), k
    try:
        decompose_rotation(parse_axis("+X"), 8)
    except CircuitError:
        return
    raise AssertionError("k ≡ 0 인데 CircuitError가 나지 않았습니다.")


def test_counts():
    c = GateCircuit.from_ops(2, [("t", 0), ("h", 0), ("cx", 0, 1), ("tdg", 1)])
    assert t_count(c) == 2
    assert clifford_count(c) == 2
    assert t_count(GateCircuit.from_ops(2, [("h", 0), ("cx", 0, 1)])) == 0
    assert t_count(decompose_rotation(parse_axis("+ZZ"), 1)) == 1
    counts = gate_counts(c)
    assert counts["t"] == 1 and counts["tdg"] == 1 and counts["s"] == 0


def main() -> None:
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            print(f"\n=== {name} ===")
            fn()
            print("[PASS]")
    print("\n✅ ALL TESTS OK")


if __name__ == "__main__":
    main()

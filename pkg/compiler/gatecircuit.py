"""
Gate-level Circuit IR (Clifford+T)

역할:
- {h, s, sdg, x, y, z, cx, t, tdg} 게이트 시퀀스 (시간 순서 = 리스트 순서)
- OpenQASM 2.0 subset 파싱/출력, .qc 포맷 출력
- Pauli 회전 R_P(kπ/4) 를 Clifford+T 게이트로 분해
- T-count / Clifford-count 집계

지원 QASM subset:
- OPENQASM 2.0; / include "qelib1.inc"; (둘 다 생략 가능)
- qreg 하나만 허용
- 위 9개 게이트만 허용, 그 외 statement는 줄 번호와 함께 QasmParseError
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from compiler.pauli import PauliAxis


class CircuitError(ValueError):
    """게이트 이름/operand가 IR 규칙을 벗어날 때 사용하는 예외"""
    pass


class QasmParseError(ValueError):
    """OpenQASM 입력이 지원 subset을 벗어날 때 사용하는 예외 (line: 1-based 줄 번호)"""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# =========================
# 정책 설정 (필요 시 조정)
# =========================

CLIFFORD_GATES = ("h", "s", "sdg", "x", "y", "z", "cx")
T_GATES = ("t", "tdg")
SUPPORTED_GATES = CLIFFORD_GATES + T_GATES

QC_TOKENS = {
    "h": "H",
    "s": "S",
    "sdg": "S*",
    "t": "T",
    "tdg": "T*",
    "x": "X",
    "y": "Y",
    "z": "Z",
    "cx": "tof",
}

# 회전 중심부 (k -> target qubit에 올릴 게이트들)
_CENTRAL_GATES = {
    1: ("t",),
    -1: ("tdg",),
    2: ("s",),
    -2: ("sdg",),
    4: ("z",),
    3: ("z", "tdg"),
    -3: ("z", "t"),
}

_HEADER_RE = re.compile(r"^OPENQASM\s+2\.0$")
_INCLUDE_RE = re.compile(r'^include\s+"[^"]+"$')
_QREG_RE = re.compile(r"^qreg\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_STMT_RE = re.compile(r"^([A-Za-z_]\w*)(?:\s+(.+))?$")
_OPERAND_RE = re.compile(r"^([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")


def normalize_angle_index(k: int) -> int:
    """회전각 kπ/4 의 k를 mod 8 대표값 {-3..4} 로 정규화"""
    return (k + 3) % 8 - 3


# =========================
# IR 타입
# =========================

@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.name} " + ",".join(f"q[{q}]" for q in self.qubits)


@dataclass(frozen=True)
class GateCircuit:
    n: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise CircuitError(f"qubit 수는 1 이상이어야 합니다: n={self.n}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            _validate_gate(g, self.n)

    @classmethod
    def from_ops(cls, n: int, ops: Iterable[Sequence]) -> GateCircuit:
        """[("h", 0), ("cx", 0, 1), ...] 형태로 간단히 생성"""
        return cls(n, tuple(Gate(op[0], tuple(int(q) for q in op[1:])) for op in ops))

    def __len__(self) -> int:
        return len(self.gates)


def _validate_gate(g: Gate, n: int) -> None:
    if g.name not in SUPPORTED_GATES:
        raise CircuitError(f"지원하지 않는 gate: {g.name}")
    arity = 2 if g.name == "cx" else 1
    if len(g.qubits) != arity:
        raise CircuitError(f"{g.name}는 operand {arity}개가 필요합니다: {g.qubits}")
    for q in g.qubits:
        if not 0 <= q < n:
            raise CircuitError(f"qubit index 범위 초과: {q} (n={n})")
    if arity == 2 and g.qubits[0] == g.qubits[1]:
        raise CircuitError(f"cx control/target이 같습니다: {g.qubits}")


def concat(n: int, parts: Iterable[GateCircuit]) -> GateCircuit:
    gates: list[Gate] = []
    for part in parts:
        if part.n != n:
            raise CircuitError(f"qubit 수가 다릅니다: {part.n} vs {n}")
        gates.extend(part.gates)
    return GateCircuit(n, tuple(gates))


def t_count(c: GateCircuit) -> int:
    return sum(1 for g in c.gates if g.name in T_GATES)


def clifford_count(c: GateCircuit) -> int:
    return sum(1 for g in c.gates if g.name in CLIFFORD_GATES)


def gate_counts(c: GateCircuit) -> dict[str, int]:
    counts = Counter(g.name for g in c.gates)
    return {name: counts.get(name, 0) for name in SUPPORTED_GATES}


# -------------------------------------------------
# OpenQASM 2.0 subset
# -------------------------------------------------

def parse_qasm(text: str) -> GateCircuit:
    reg_name: str | None = None
    n = 0
    gates: list[Gate] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line:
            continue
        parts = line.split(";")
        if parts[-1].strip():
            raise QasmParseError(f"';'로 끝나지 않는 statement: {parts[-1].strip()!r}", lineno)

        for stmt in (p.strip() for p in parts[:-1]):
            if not stmt:
                continue
            if _HEADER_RE.match(stmt) or _INCLUDE_RE.match(stmt):
                continue

            m = _QREG_RE.match(stmt)
            if m:
                if reg_name is not None:
                    raise QasmParseError("qreg는 하나만 허용됩니다", lineno)
                reg_name, n = m.group(1), int(m.group(2))
                if n < 1:
                    raise QasmParseError("qreg 크기는 1 이상이어야 합니다", lineno)
                continue

            m = _STMT_RE.match(stmt)
            if not m:
                raise QasmParseError(f"해석할 수 없는 statement: {stmt!r}", lineno)
            name, args = m.group(1), m.group(2)
            if name not in SUPPORTED_GATES:
                raise QasmParseError(f"지원하지 않는 gate: {name}", lineno)
            if reg_name is None:
                raise QasmParseError("qreg 선언 전에 gate가 나왔습니다", lineno)
            if not args:
                raise QasmParseError(f"{name}에 operand가 없습니다", lineno)

            qubits: list[int] = []
            for tok in args.split(","):
                om = _OPERAND_RE.match(tok.strip())
                if not om or om.group(1) != reg_name:
                    raise QasmParseError(f"잘못된 operand: {tok.strip()!r}", lineno)
                q = int(om.group(2))
                if q >= n:
                    raise QasmParseError(f"qubit index 범위 초과: {q} (n={n})", lineno)
                qubits.append(q)

            gate = Gate(name, tuple(qubits))
            try:
                _validate_gate(gate, n)
            except CircuitError as e:
                raise QasmParseError(str(e), lineno) from e
            gates.append(gate)

    if reg_name is None:
        raise QasmParseError("qreg 선언이 없습니다")
    return GateCircuit(n, tuple(gates))


def emit_qasm(c: GateCircuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.n}];"]
    lines.extend(f"{g};" for g in c.gates)
    return "\n".join(lines) + "\n"


def emit_qc(c: GateCircuit) -> str:
    names = " ".join(f"q{q}" for q in range(c.n))
    lines = [f".v {names}", f".i {names}", f".o {names}", "", "BEGIN"]
    for g in c.gates:
        lines.append(QC_TOKENS[g.name] + " " + " ".join(f"q{q}" for q in g.qubits))
    lines.append("END")
    return "\n".join(lines) + "\n"


# -------------------------------------------------
# Pauli 회전 분해
# -------------------------------------------------

def decompose_rotation(axis: PauliAxis, k: int) -> GateCircuit:
    """
    R_axis(kπ/4) -> basis change + CNOT ladder + 중심 게이트 + 역순 ladder + basis 복원

    - 부호는 k에 접어 넣는다: R_{-P}(θ) = R_P(-θ)
    - target = support의 최대 index
    - k ≡ 0 (mod 8) 은 identity이므로 CircuitError
    """
    k = normalize_angle_index(k * axis.sign)
    if k == 0:
        raise CircuitError("k ≡ 0 (mod 8) 회전은 분해할 게이트가 없습니다")

    word = axis.word
    support = word.support()
    target = support[-1]
    ops: list[tuple] = []

    for q in support:
        letter = word.letter(q)
        if letter == "X":
            ops.append(("h", q))
        elif letter == "Y":
            ops.extend([("sdg", q), ("h", q)])

    ladder = [("cx", q, target) for q in support if q != target]
    ops.extend(ladder)
    ops.extend((name, target) for name in _CENTRAL_GATES[k])
    ops.extend(reversed(ladder))

    for q in support:
        letter = word.letter(q)
        if letter == "X":
            ops.append(("h", q))
        elif letter == "Y":
            ops.extend([("h", q), ("s", q)])

    return GateCircuit.from_ops(word.n, ops)

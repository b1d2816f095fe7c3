"""
Equivalence Validator (ground truth)

목적:
- 모든 회로 변환(unopt / optimize / convert)이 "전역 위상을 제외하고 같은 연산자"인지
  수치적으로 확인하는 기준(oracle).
- V†U = e^{iφ} I 를 만족하면 동치로 본다.

방법:
- dense: 2^n × 2^n 유니터리를 직접 만든다 (n ≤ DENSE_QUBIT_CAP)
- statevector: 무작위 product state 여러 개에 두 회로를 적용해 fidelity 비교 (큰 n용)
- auto: n ≤ cap 이면 dense, 아니면 statevector

규약:
- qubit 0 이 가장 상위 비트 (kron 순서 q0 ⊗ q1 ⊗ …)
- R_P(θ) = cos(θ/2) I - i sin(θ/2) P,  θ = kπ/4
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from compiler.gatecircuit import GateCircuit
from compiler.pauli import PauliWord
from compiler.pbc import PBCCircuit
from compiler.tableau import synthesize


class EquivalenceError(ValueError):
    """비교 대상 크기 불일치, dense 상한 초과 등에 사용하는 예외"""
    pass


# =========================
# 정책 설정 (필요 시 조정)
# =========================

DENSE_QUBIT_CAP = 10
DEFAULT_TOL = 1e-9
DEFAULT_SAMPLES = 20

METHODS = ("dense", "statevector", "auto")

_SQRT_HALF = 1 / np.sqrt(2)
_GATE_MATRICES: dict[str, np.ndarray] = {
    "h": np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT_HALF,
    "s": np.diag([1, 1j]).astype(complex),
    "sdg": np.diag([1, -1j]).astype(complex),
    "t": np.diag([1, np.exp(1j * np.pi / 4)]),
    "tdg": np.diag([1, np.exp(-1j * np.pi / 4)]),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.diag([1, -1]).astype(complex),
}

Circuit = GateCircuit | PBCCircuit


@dataclass
class EquivalenceReport:
    method: str
    equivalent: bool
    max_deviation: float
    phase: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"


# -------------------------------------------------
# 상태(열벡터 묶음)에 회로 적용
# -------------------------------------------------

def _apply_1q(state: np.ndarray, mat: np.ndarray, q: int, n: int) -> np.ndarray:
    m = state.shape[1]
    t = state.reshape([2] * n + [m])
    t = np.tensordot(mat, t, axes=([1], [q]))
    t = np.moveaxis(t, 0, q)
    return t.reshape(1 << n, m)


def _apply_cx(state: np.ndarray, control: int, target: int, n: int) -> np.ndarray:
    m = state.shape[1]
    t = state.reshape([2] * n + [m]).copy()
    sl = [slice(None)] * (n + 1)
    sl[control] = 1
    sub = t[tuple(sl)]
    axis = target if target < control else target - 1
    t[tuple(sl)] = np.flip(sub, axis=axis).copy()
    return t.reshape(1 << n, m)


def apply_pauli(state: np.ndarray, word: PauliWord) -> np.ndarray:
    """P|b> = i^{|x&z|} (-1)^{|z&b|} |b⊕x>  (인덱스 비트는 qubit 0 이 최상위)"""
    n = word.n
    dim = 1 << n
    xmask = zmask = 0
    for q in range(n):
        bit = 1 << (n - 1 - q)
        if (word.x >> q) & 1:
            xmask |= bit
        if (word.z >> q) & 1:
            zmask |= bit

    idx = np.arange(dim)
    zb = idx & zmask
    parity = np.zeros(dim, dtype=np.int64)
    for b in range(n):
        parity ^= (zb >> b) & 1
    coef = (1j) ** ((word.x & word.z).bit_count())
    signs = np.where(parity == 1, -1.0, 1.0) * coef

    out = np.empty_like(state)
    out[idx ^ xmask] = signs[:, None] * state
    return out


def apply_rotation(state: np.ndarray, word: PauliWord, k: int) -> np.ndarray:
    theta = k * np.pi / 4
    return np.cos(theta / 2) * state - 1j * np.sin(theta / 2) * apply_pauli(state, word)


def _apply_gates(state: np.ndarray, c: GateCircuit) -> np.ndarray:
    for g in c.gates:
        if g.name == "cx":
            state = _apply_cx(state, g.qubits[0], g.qubits[1], c.n)
        else:
            state = _apply_1q(state, _GATE_MATRICES[g.name], g.qubits[0], c.n)
    return state


def apply_circuit(state: np.ndarray, c: Circuit) -> np.ndarray:
    """state: (2^n,) 또는 (2^n, m). 반환 shape는 입력과 같다."""
    flat = state.ndim == 1
    cur = state.reshape(-1, 1) if flat else state
    cur = cur.astype(complex, copy=True)
    if cur.shape[0] != 1 << c.n:
        raise EquivalenceError(f"상태 차원이 2^{c.n}과 맞지 않습니다: {cur.shape}")

    if isinstance(c, PBCCircuit):
        cur = _apply_gates(cur, synthesize(c.prefix))
        for r in c.rotations:
            cur = apply_rotation(cur, r.axis.word, r.k)
    else:
        cur = _apply_gates(cur, c)
    return cur.reshape(-1) if flat else cur


def dense_unitary(c: Circuit, cap: int = DENSE_QUBIT_CAP) -> np.ndarray:
    if c.n > cap:
        raise EquivalenceError(f"dense 유니터리는 n ≤ {cap} 까지만 지원합니다: n={c.n}")
    return apply_circuit(np.eye(1 << c.n, dtype=complex), c)


def pauli_matrix(word: PauliWord) -> np.ndarray:
    return apply_pauli(np.eye(1 << word.n, dtype=complex), word)


def rotation_matrix(word: PauliWord, k: int) -> np.ndarray:
    return apply_rotation(np.eye(1 << word.n, dtype=complex), word, k)


# -------------------------------------------------
# 동치 판정
# -------------------------------------------------

def _product_states(n: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    cols = []
    for _ in range(samples):
        vec = np.ones(1, dtype=complex)
        for _ in range(n):
            a = rng.normal(size=2) + 1j * rng.normal(size=2)
            vec = np.kron(vec, a / np.linalg.norm(a))
        cols.append(vec)
    return np.stack(cols, axis=1)


def check_equiv(
    u: Circuit,
    v: Circuit,
    tol: float = DEFAULT_TOL,
    method: str = "auto",
    *,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    cap: int = DENSE_QUBIT_CAP,
) -> EquivalenceReport:
    if u.n != v.n:
        raise EquivalenceError(f"qubit 수가 다릅니다: {u.n} vs {v.n}")
    if method not in METHODS:
        raise EquivalenceError(f"지원하지 않는 method: {method}")
    if method == "auto":
        method = "dense" if u.n <= cap else "statevector"

    if method == "dense":
        w = dense_unitary(v, cap).conj().T @ dense_unitary(u, cap)
        diag = np.diag(w)
        j = int(np.argmax(np.abs(diag)))
        phi = float(np.angle(diag[j]))
        dev = float(np.max(np.abs(w - np.exp(1j * phi) * np.eye(w.shape[0]))))
    else:
        rng = np.random.default_rng(seed)
        states = _product_states(u.n, samples, rng)
        overlaps = np.sum(apply_circuit(states, v).conj() * apply_circuit(states, u), axis=0)
        dev = float(max(0.0, 1.0 - np.min(np.abs(overlaps) ** 2)))
        phi = float(np.angle(overlaps[0]))

    ok = dev < tol
    return EquivalenceReport(method=method, equivalent=ok, max_deviation=dev, phase=phi if ok else None)


def render_report_md(report: EquivalenceReport, label_a: str, label_b: str) -> str:
    """verify 결과를 운영 리포트(markdown)로 남길 때 사용"""
    status = "✅ EQUIVALENT" if report.equivalent else "❌ NOT EQUIVALENT"
    lines = [
        "# Equivalence Report",
        "",
        f"- a: `{label_a}`",
        f"- b: `{label_b}`",
        f"- method: `{report.method}`",
        f"- result: **{status}**",
        f"- max_deviation: `{report.max_deviation:.3e}`",
    ]
    if report.phase is not None:
        lines.append(f"- phase φ: `{report.phase:.6f}` rad")
    return "\n".join(lines) + "\n"

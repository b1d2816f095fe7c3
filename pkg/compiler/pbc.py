"""
Sequential PBC IR

역할:
- "Clifford prefix + ±π/4 다중 Pauli 회전 시퀀스" 형태의 회로 표현
- GateCircuit <-> PBCCircuit 변환 (T 게이트를 회로 뒤쪽으로 전파)
- T-count, T layer 분할
- PBC JSON 저장/로드 (jsonschema 검증)

규약:
- 회전 R_P(kπ/4) = exp(-i·kπ/8·P), k는 ℤ8 대표값 {-3..4}로 정규화
- 회전축 부호는 k에 접어 넣는다: R_{-P}(θ) = R_P(-θ) -> Rotation.axis.sign 은 항상 +1
- 시간 순서: prefix 먼저, 이후 rotations[0], rotations[1], ...
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from jsonschema import validate

from compiler.gatecircuit import (
    GateCircuit,
    T_GATES,
    concat,
    decompose_rotation,
    normalize_angle_index,
)
from compiler.pauli import PauliAxis, PauliError, PauliWord, commutes, parse_axis
from compiler.tableau import (
    CliffordTableau,
    TableauError,
    apply_gate,
    conjugate_by_gate,
    is_symplectic,
    synthesize,
)


# =========================
# 정책 설정 (필요 시 조정)
# =========================

PBC_JSON_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["n", "prefix", "rotations"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "prefix": {
            "type": "array",
            "items": {"type": "string", "pattern": "^[+-][IXYZ]+$"},
        },
        "rotations": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["axis", "k"],
                "additionalProperties": False,
                "properties": {
                    "axis": {"type": "string", "pattern": "^[+-]?[IXYZ]+$"},
                    "k": {"type": "integer"},
                },
            },
        },
    },
}


# =========================
# 타입
# =========================

@dataclass(frozen=True)
class Rotation:
    """R_axis(k·π/4). axis.sign == +1, k ∈ {-3..4}\\{0}"""

    axis: PauliAxis
    k: int

    def __post_init__(self) -> None:
        if self.axis.sign != 1:
            raise PauliError(f"Rotation 축은 + 부호로 정규화되어야 합니다: {self.axis}")
        if self.k != normalize_angle_index(self.k) or self.k == 0:
            raise PauliError(f"k는 {{-3..4}}\\{{0}} 범위로 정규화되어야 합니다: {self.k}")

    @property
    def word(self) -> PauliWord:
        return self.axis.word

    @property
    def n(self) -> int:
        return self.axis.n

    @property
    def is_t(self) -> bool:
        return self.k % 2 == 1

    def __str__(self) -> str:
        return f"R[{self.axis}]({self.k:+d}π/4)"


def make_rotation(axis: PauliAxis, k: int) -> Rotation | None:
    """부호를 k에 접어 Rotation 생성. k ≡ 0 (mod 8) 이면 None (identity 회전은 버림)"""
    k = normalize_angle_index(k * axis.sign)
    if k == 0:
        return None
    return Rotation(PauliAxis(axis.word, 1), k)


def signed_axis(r: Rotation) -> PauliAxis:
    """k=±1 회전을 +π/4 형태의 부호 있는 축으로: R_P(-π/4) = R_{-P}(π/4)"""
    if r.k not in (1, -1):
        raise PauliError(f"±π/4 회전만 부호 축으로 바꿀 수 있습니다: {r}")
    return PauliAxis(r.axis.word, r.k)


@dataclass(frozen=True)
class PBCCircuit:
    n: int
    prefix: CliffordTableau
    rotations: tuple[Rotation, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotations", tuple(self.rotations))
        if self.prefix.n != self.n:
            raise TableauError(f"prefix qubit 수가 다릅니다: {self.prefix.n} vs {self.n}")
        for r in self.rotations:
            if r.n != self.n:
                raise PauliError(f"회전축 qubit 수가 다릅니다: {r.axis} (n={self.n})")

    def with_rotations(self, rotations) -> PBCCircuit:
        return PBCCircuit(self.n, self.prefix, tuple(rotations))


def default_input(n: int) -> PBCCircuit:
    """benchmark 기본 입력: identity prefix + R_{Z…Z}(π/4) (T-count 1)"""
    zz = PauliAxis(PauliWord(n, 0, (1 << n) - 1), 1)
    return PBCCircuit(n, CliffordTableau.identity(n), (Rotation(zz, 1),))


# -------------------------------------------------
# 변환
# -------------------------------------------------

def gates_to_pbc(c: GateCircuit) -> PBCCircuit:
    """
    앞에서부터 읽으며
      - t/tdg on q: (+Z_q, ±1) 회전 추가
      - Clifford g: prefix에 g를 붙이고, 이미 쌓인 회전축을 전부 g로 켤레
    결과적으로 i번째 회전축 = (그 T 이후 Clifford들) · Z_q · (…)†
    """
    n = c.n
    prefix = CliffordTableau.identity(n)
    pending: list[tuple[PauliAxis, int]] = []

    for g in c.gates:
        if g.name in T_GATES:
            (q,) = g.qubits
            pending.append((PauliAxis(PauliWord(n, 0, 1 << q), 1), 1 if g.name == "t" else -1))
            continue
        prefix = apply_gate(prefix, g.name, g.qubits)
        pending = [(conjugate_by_gate(axis, g.name, g.qubits), k) for axis, k in pending]

    rotations = [make_rotation(axis, k) for axis, k in pending]
    return PBCCircuit(n, prefix, tuple(r for r in rotations if r is not None))


def pbc_to_gates(p: PBCCircuit) -> GateCircuit:
    parts = [synthesize(p.prefix)]
    parts.extend(decompose_rotation(r.axis, r.k) for r in p.rotations)
    return concat(p.n, parts)


def t_count_pbc(p: PBCCircuit) -> int:
    return sum(1 for r in p.rotations if r.is_t)


def t_layers(p: PBCCircuit) -> list[list[int]]:
    """
    greedy earliest-layer 분할.

    각 회전을 왼쪽으로 밀 수 있는 만큼 민다:
    반교환하는 회전이 있는 마지막 layer 바로 다음 layer에 합류 (없으면 layer 0).
    -> (i) layer 내부 상호 교환, (ii) layer j+1 원소는 layer j의 어떤 원소와 반교환
    """
    layers: list[list[int]] = []
    rots = p.rotations
    for idx, r in enumerate(rots):
        target = 0
        for li in range(len(layers) - 1, -1, -1):
            if any(not commutes(r.axis, rots[j].axis) for j in layers[li]):
                target = li + 1
                break
        if target == len(layers):
            layers.append([])
        layers[target].append(idx)
    return layers


# -------------------------------------------------
# PBC JSON
# -------------------------------------------------

def pbc_to_dict(p: PBCCircuit) -> dict[str, Any]:
    return {
        "n": p.n,
        "prefix": [str(img) for img in p.prefix.images()],
        "rotations": [{"axis": str(r.axis), "k": r.k} for r in p.rotations],
    }


def pbc_to_json(p: PBCCircuit) -> str:
    return json.dumps(pbc_to_dict(p), ensure_ascii=False, indent=2) + "\n"


def pbc_from_dict(obj: dict[str, Any]) -> PBCCircuit:
    """jsonschema 검증 후 PBCCircuit 복원. 회전은 make_rotation으로 정규화 (k≡0 은 버림)"""
    validate(instance=obj, schema=PBC_JSON_SCHEMA)
    n = obj["n"]

    prefix_images = [parse_axis(s) for s in obj["prefix"]]
    if not prefix_images:
        prefix = CliffordTableau.identity(n)
    else:
        if len(prefix_images) != 2 * n:
            raise TableauError(f"prefix 이미지는 2n={2 * n}개여야 합니다: {len(prefix_images)}")
        prefix = CliffordTableau(n, tuple(prefix_images[:n]), tuple(prefix_images[n:]))
        if not is_symplectic(prefix):
            raise TableauError("prefix가 symplectic 조건을 만족하지 않습니다")

    rotations: list[Rotation] = []
    for item in obj["rotations"]:
        r = make_rotation(parse_axis(item["axis"]), item["k"])
        if r is not None:
            rotations.append(r)
    return PBCCircuit(n, prefix, tuple(rotations))


def pbc_from_json(text: str) -> PBCCircuit:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise PauliError(f"PBC JSON 파싱 실패: {e}") from e
    return pbc_from_dict(obj)

"""
MCR-based Circuit Unoptimization

목적:
- T-count 최적값을 알고 있는 회로 U에 "동치를 유지하는 중복"을 주입해
  컴파일러 benchmark 용 회로 V 를 만든다.
- 기본 연산 두 가지: 항등 블록 삽입(gate insertion) + MCR 블록 교환(gate swapping)

한 step:
  1) 회전 index i 균일 선택, P_i 와 (있으면) P_{i+1} 의 부호 축
  2) {P_i,A}={P_i,B}=0, {C,P_{i+1}}={D,P_{i+1}}=0 을 만족하는 quadruple 샘플링
  3) P_i 바로 뒤에 [A,B,C,D,-A,-B,-C,-D] 삽입 (곱이 정확히 I)
  4) swap 사용 시
     - 왼쪽: P_i 앞에 [Q_l(-π/4), Q_l(+π/4)] (Q_l = -P_i·A·B) 를 넣고 (Q_l+, P_i) <-> (A, B)
     - 오른쪽(P_{i+1} 있을 때): P_{i+1} 뒤에 [Q_r(+π/4), Q_r(-π/4)] (Q_r = -C·D·P_{i+1}) 를 넣고
       (-C, -D) <-> (P_{i+1}, Q_r+)
  -> 회전 수 증가: +8 (swap 없음), +10 (마지막 회전 선택), +12 (내부 회전 선택)

재현성:
- recipe.seed 로 만든 하나의 Generator 스트림만 사용
- 매 step 선택 결과를 StepRecord 로 남기므로 replay()는 난수 없이 같은 회로를 만든다.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Any

import numpy as np
from jsonschema import validate

from compiler.mcr import McrQuadruple, complete_quadruple, sample_quadruple, swap_mcr
from compiler.pauli import PauliAxis, SamplingError, commutes, parse_axis
from compiler.pbc import PBCCircuit, Rotation, make_rotation, signed_axis


class UnoptInputError(ValueError):
    """unoptimization 입력(회전 수, ±π/4, n ≥ 2) 전제조건 위반 시 사용하는 예외"""
    pass


# =========================
# 정책 설정 (필요 시 조정)
# =========================

# quadruple 샘플링이 한도를 넘으면 index를 다시 뽑는 횟수
INDEX_RETRY_CAP = 100

RECIPE_JSON_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["seed", "iterations", "swap_enabled", "log"],
    "properties": {
        "seed": {"type": "integer", "minimum": 0},
        "iterations": {"type": ["integer", "null"], "minimum": 0},
        "swap_enabled": {"type": "boolean"},
        "log": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "quadruple", "q_left", "q_right", "edge"],
                "properties": {
                    "index": {"type": "integer", "minimum": 0},
                    "quadruple": {
                        "type": "array",
                        "items": {"type": "string"},
                        "minItems": 4,
                        "maxItems": 4,
                    },
                    "q_left": {"type": ["string", "null"]},
                    "q_right": {"type": ["string", "null"]},
                    "edge": {"type": "boolean"},
                },
            },
        },
    },
}


@dataclass
class StepRecord:
    index: int
    quadruple: tuple[str, str, str, str]
    q_left: str | None = None
    q_right: str | None = None
    edge: bool = False

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["quadruple"] = list(self.quadruple)
        return d


@dataclass
class UnoptRecipe:
    seed: int
    iterations: int | None = None  # None -> n²
    swap_enabled: bool = True
    log: list[StepRecord] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "iterations": self.iterations,
            "swap_enabled": self.swap_enabled,
            "log": [rec.to_dict() for rec in self.log],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> UnoptRecipe:
        obj = json.loads(text)
        validate(instance=obj, schema=RECIPE_JSON_SCHEMA)
        log = [
            StepRecord(
                index=item["index"],
                quadruple=tuple(item["quadruple"]),
                q_left=item["q_left"],
                q_right=item["q_right"],
                edge=item["edge"],
            )
            for item in obj["log"]
        ]
        return cls(seed=obj["seed"], iterations=obj["iterations"], swap_enabled=obj["swap_enabled"], log=log)


# -------------------------------------------------
# 항등 블록 / 단일 step
# -------------------------------------------------

def _rot(axis: PauliAxis, k: int) -> Rotation:
    r = make_rotation(axis, k)
    assert r is not None
    return r


def build_identity(q: McrQuadruple) -> list[Rotation]:
    """[A, B, C, D, -A, -B, -C, -D] (모두 π/4 크기). 연산자 곱은 정확히 I"""
    first = [_rot(ax, 1) for ax in q.axes()]
    second = [_rot(ax, -1) for ax in q.axes()]
    return first + second


def _check_unopt_input(p: PBCCircuit) -> None:
    if not p.rotations:
        raise UnoptInputError("unoptimization 입력은 회전을 1개 이상 가져야 합니다")
    if any(r.k not in (1, -1) for r in p.rotations):
        raise UnoptInputError("unoptimization 입력의 회전은 모두 ±π/4 여야 합니다")
    if p.n < 2:
        raise UnoptInputError(f"MCR unoptimization은 n ≥ 2 에서만 가능합니다: n={p.n}")


def apply_step(p: PBCCircuit, index: int, quad: McrQuadruple, swap_enabled: bool) -> tuple[PBCCircuit, StepRecord]:
    """난수 없이 한 step 적용 (index, quadruple이 정해진 상태). replay와 unopt_step이 공유"""
    rots = list(p.rotations)
    if not 0 <= index < len(rots):
        raise IndexError(f"index 범위 초과: {index} (len={len(rots)})")

    p_i = signed_axis(rots[index])
    edge = index + 1 >= len(rots)
    p_next = None if edge else signed_axis(rots[index + 1])

    rots[index + 1:index + 1] = build_identity(quad)
    out = p.with_rotations(rots)
    record = StepRecord(index=index, quadruple=tuple(str(ax) for ax in quad.axes()), edge=edge)
    if not swap_enabled:
        return out, record

    # 왼쪽: [.., Q_l-, Q_l+, P_i, A, B, ..] -> (Q_l+, P_i) <-> (A, B)
    q_left = complete_quadruple(quad.a, quad.b, p_i)
    rots = list(out.rotations)
    rots[index:index] = [_rot(q_left, -1), _rot(q_left, 1)]
    out = swap_mcr(p.with_rotations(rots), index + 1)
    record.q_left = str(q_left)

    # 현재 배치: Q_l-, A, B, Q_l+, P_i, C, D, -A, -B, -C, -D, P_{i+1} (index 기준 +0..+11)
    if p_next is not None:
        q_right = complete_quadruple(-quad.c, -quad.d, p_next)
        rots = list(out.rotations)
        rots[index + 12:index + 12] = [_rot(q_right, 1), _rot(q_right, -1)]
        out = swap_mcr(p.with_rotations(rots), index + 9)
        record.q_right = str(q_right)

    return out, record


def _anticommutes_with(ref: PauliAxis, ax: PauliAxis) -> bool:
    return not commutes(ax, ref)


def unopt_step(
    p: PBCCircuit,
    rng: np.random.Generator,
    swap_enabled: bool = True,
    *,
    log: list[StepRecord] | None = None,
    max_index_draws: int = INDEX_RETRY_CAP,
    max_quadruple_draws: int | None = None,
) -> PBCCircuit:
    _check_unopt_input(p)
    rots = p.rotations
    draw_kwargs = {} if max_quadruple_draws is None else {"max_draws": max_quadruple_draws}

    for _ in range(max_index_draws):
        index = int(rng.integers(len(rots)))
        p_i = signed_axis(rots[index])
        p_next = signed_axis(rots[index + 1]) if index + 1 < len(rots) else None

        ab_ok = partial(_anticommutes_with, p_i)
        cd_ok = partial(_anticommutes_with, p_next) if p_next is not None else None

        try:
            quad = sample_quadruple(p.n, rng, ab_ok, cd_ok, **draw_kwargs)
        except SamplingError:
            continue

        out, record = apply_step(p, index, quad, swap_enabled)
        if log is not None:
            log.append(record)
        return out

    raise SamplingError(f"unopt step 실패: index {max_index_draws}회 재선택 후에도 quadruple을 찾지 못했습니다")


def unoptimize(u: PBCCircuit, recipe: UnoptRecipe) -> PBCCircuit:
    """recipe.seed 스트림으로 unopt_step을 iterations(기본 n²)회 적용. recipe.log 를 새로 채운다."""
    _check_unopt_input(u)
    iterations = recipe.iterations if recipe.iterations is not None else u.n ** 2
    rng = np.random.default_rng(recipe.seed)
    recipe.log.clear()

    out = u
    for _ in range(iterations):
        out = unopt_step(out, rng, recipe.swap_enabled, log=recipe.log)
    return out


def replay(u: PBCCircuit, recipe: UnoptRecipe) -> PBCCircuit:
    """recipe.log 만으로 unoptimize 결과를 재현 (난수 사용 없음)"""
    out = u
    for rec in recipe.log:
        quad = McrQuadruple(*(parse_axis(s) for s in rec.quadruple))
        out, _ = apply_step(out, rec.index, quad, recipe.swap_enabled)
    return out


# -------------------------------------------------
# 기대 T-count 모델
# -------------------------------------------------

def expected_unopt_tcount(
    n: int,
    iterations: int | None = None,
    *,
    initial_rotations: int = 1,
    swap_enabled: bool = True,
) -> float:
    """
    길이 L 에서 마지막 회전이 선택될 확률 1/L (edge: +10, 내부: +12) 모델의 기대 길이.
    입력이 전부 ±π/4 회전이면 길이 = T-count.
    """
    steps = iterations if iterations is not None else n ** 2
    if not swap_enabled:
        return float(initial_rotations + 8 * steps)

    dist: dict[int, float] = {initial_rotations: 1.0}
    for _ in range(steps):
        nxt: dict[int, float] = defaultdict(float)
        for length, prob in dist.items():
            edge = 1.0 / length
            nxt[length + 10] += prob * edge
            nxt[length + 12] += prob * (1.0 - edge)
        dist = nxt
    return float(sum(length * prob for length, prob in dist.items()))

"""
MCR (multi-product commutation relation)

회전 두 쌍 (A,B), (C,D) 가 아래 조건을 모두 만족하면
R_D R_C R_B R_A = R_B R_A R_D R_C  (모두 +π/4, 시간 순서 A,B,C,D) 로 블록 교환이 가능하다.

  distinct    : 네 축의 word가 서로 다름 (부호 무시)
  condition 1 : [A,B] = 0, [C,D] = 0
  condition 2 : A, B 각각이 C, D 와 반교환
  condition 3 : [A+B, C+D] = 0  (정확한 연산자 항등식)

조건 3은 D = -ABC 와 동치이므로 (A,B,C) 가 주어지면 D 를 유일하게 완성할 수 있다.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import numpy as np

from compiler.pauli import (
    McrConditionError,
    PauliAxis,
    PhasedPauli,
    SamplingError,
    commutes,
    enumerate_axes,
    minus_abc,
    product,
    sample_axis,
)
from compiler.pbc import PBCCircuit, signed_axis


class QuadrupleRangeError(ValueError):
    """quadruple 샘플링/개수/열거에 허용되지 않는 qubit 수가 들어왔을 때 사용하는 예외"""
    pass


# =========================
# 정책 설정 (필요 시 조정)
# =========================

# 제약 조건(predicate)이 걸린 quadruple 샘플링 최대 시도 횟수
QUADRUPLE_RETRY_CAP = 10_000

# 전수 열거 허용 상한 (n=3 부터 조합 폭발)
ENUMERATE_MAX_QUBITS = 2

# ℤ4 위상 -> 가우스 정수 (re, im)
_PHASE_TO_GAUSS = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}


@dataclass(frozen=True)
class McrCheck:
    ok: bool
    failed: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class McrQuadruple:
    a: PauliAxis
    b: PauliAxis
    c: PauliAxis
    d: PauliAxis

    def __post_init__(self) -> None:
        chk = check_mcr(self.a, self.b, self.c, self.d)
        if not chk:
            raise McrConditionError(chk.detail, chk.failed or "unknown")

    @property
    def n(self) -> int:
        return self.a.n

    def axes(self) -> tuple[PauliAxis, PauliAxis, PauliAxis, PauliAxis]:
        return (self.a, self.b, self.c, self.d)

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.axes()) + ")"


# -------------------------------------------------
# 조건 판정
# -------------------------------------------------

def _commutator_vanishes(left: tuple[PauliAxis, ...], right: tuple[PauliAxis, ...]) -> bool:
    """
    [ΣL, ΣR] = Σ (uv - vu). 교환 쌍은 0, 반교환 쌍은 2uv.
    word별 가우스 정수 계수를 모아 전부 0 인지 확인 (공통 인수 2 는 생략)
    """
    terms: dict[tuple[int, int], list[int]] = {}
    for u in left:
        for v in right:
            if commutes(u, v):
                continue
            uv = product(PhasedPauli.from_axis(u), PhasedPauli.from_axis(v))
            re, im = _PHASE_TO_GAUSS[uv.phase]
            acc = terms.setdefault((uv.word.x, uv.word.z), [0, 0])
            acc[0] += re
            acc[1] += im
    return all(re == 0 and im == 0 for re, im in terms.values())


def check_mcr(a: PauliAxis, b: PauliAxis, c: PauliAxis, d: PauliAxis) -> McrCheck:
    if len({a.n, b.n, c.n, d.n}) != 1:
        return McrCheck(False, "distinct", "qubit 수가 서로 다릅니다")
    if len({a.word, b.word, c.word, d.word}) < 4:
        return McrCheck(False, "distinct", f"word가 서로 달라야 합니다: {a}, {b}, {c}, {d}")
    if not commutes(a, b) or not commutes(c, d):
        return McrCheck(False, "condition 1", "[A,B]=0, [C,D]=0 이 아닙니다")
    for x in (a, b):
        for y in (c, d):
            if commutes(x, y):
                return McrCheck(False, "condition 2", f"{x} 와 {y} 가 반교환하지 않습니다")
    if not _commutator_vanishes((a, b), (c, d)):
        return McrCheck(False, "condition 3", "[A+B, C+D] ≠ 0")
    return McrCheck(True)


def is_mcr_candidate(a: PauliAxis, b: PauliAxis, c: PauliAxis, d: PauliAxis) -> bool:
    """optimizer용 저비용 prefilter: word(D) == word(A)⊕word(B)⊕word(C)"""
    return (
        d.word.x == a.word.x ^ b.word.x ^ c.word.x
        and d.word.z == a.word.z ^ b.word.z ^ c.word.z
    )


# -------------------------------------------------
# 블록 교환 / 완성
# -------------------------------------------------

def swap_mcr(p: PBCCircuit, i: int) -> PBCCircuit:
    """rotations[i:i+4] = (A,B,C,D) -> (C,D,A,B). 네 회전 모두 k=±1 (부호는 축에 접어 판정)"""
    rots = p.rotations
    if i < 0 or i + 4 > len(rots):
        raise IndexError(f"swap 위치가 범위를 벗어났습니다: i={i}, len={len(rots)}")
    block = rots[i:i + 4]
    if any(r.k not in (1, -1) for r in block):
        raise McrConditionError("±π/4 회전만 MCR swap 대상입니다", "angle")
    chk = check_mcr(*(signed_axis(r) for r in block))
    if not chk:
        raise McrConditionError(chk.detail, chk.failed or "unknown")
    swapped = rots[:i] + (block[2], block[3], block[0], block[1]) + rots[i + 4:]
    return p.with_rotations(swapped)


def complete_quadruple(a: PauliAxis, b: PauliAxis, c: PauliAxis) -> PauliAxis:
    d = minus_abc(a, b, c)
    assert check_mcr(a, b, c, d), f"-ABC 완성 결과가 MCR을 만족하지 않습니다: {a}, {b}, {c}, {d}"
    return d


def sample_quadruple(
    n: int,
    rng: np.random.Generator,
    ab_predicate: Callable[[PauliAxis], bool] | None = None,
    cd_predicate: Callable[[PauliAxis], bool] | None = None,
    *,
    max_draws: int = QUADRUPLE_RETRY_CAP,
) -> McrQuadruple:
    """
    A ~ U(P_n*), B ~ U({[A,B]=0, word ∉ {I, A}}), C ~ U({{A,C}={B,C}=0}), D = -ABC.
    추가 predicate(A,B 각각 / C,D 각각)는 quadruple 단위 rejection으로 적용.
    """
    if n < 2:
        raise QuadrupleRangeError(f"MCR quadruple은 n ≥ 2 에서만 존재합니다: n={n}")

    for _ in range(max_draws):
        a = sample_axis(n, rng)
        b = sample_axis(n, rng, lambda x: x.word != a.word and commutes(x, a))
        c = sample_axis(n, rng, lambda x: not commutes(x, a) and not commutes(x, b))
        if ab_predicate is not None and not (ab_predicate(a) and ab_predicate(b)):
            continue
        d = complete_quadruple(a, b, c)
        if cd_predicate is not None and not (cd_predicate(c) and cd_predicate(d)):
            continue
        return McrQuadruple(a, b, c, d)
    raise SamplingError(f"제약 조건을 만족하는 MCR quadruple을 찾지 못했습니다 (n={n}, max_draws={max_draws})")


# -------------------------------------------------
# 개수 세기
# -------------------------------------------------

def count_quadruples(n: int) -> int:
    """부호/순서 중복(÷ 2·2·2)을 제거한 MCR quadruple 수: 4^n(4^n-1)(4^n-4)/8"""
    if n < 1:
        raise QuadrupleRangeError(f"n은 1 이상이어야 합니다: n={n}")
    m = 4 ** n
    return m * (m - 1) * (m - 4) // 8


def enumerate_quadruples(n: int) -> list[McrQuadruple]:
    """
    {{A,B},{C,D}} 를 전수 열거 (n ≤ 2).
    축을 문자열 순으로 정렬해 쌍/쌍의 쌍을 사전식으로 고르므로 각 quadruple은 정확히 한 번 나온다.
    """
    if n > ENUMERATE_MAX_QUBITS:
        raise QuadrupleRangeError(f"전수 열거는 n ≤ {ENUMERATE_MAX_QUBITS} 까지만 허용됩니다: n={n}")
    axes = sorted(enumerate_axes(n), key=str)
    pairs = [(x, y) for x, y in combinations(axes, 2) if x.word != y.word and commutes(x, y)]
    out: list[McrQuadruple] = []
    for (a, b), (c, d) in combinations(pairs, 2):
        if check_mcr(a, b, c, d):
            out.append(McrQuadruple(a, b, c, d))
    return out

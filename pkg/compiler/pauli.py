"""
Pauli Algebra (bit-packed)

역할:
- n-qubit Pauli word를 X/Z 비트마스크(int) 두 개로 표현한다. (qubit q <-> bit q)
- 회전축 집합 P_n* 의 원소 PauliAxis (부호 ±1 + non-identity word)
- 곱의 중간 결과용 PhasedPauli (ℤ4 위상, i^phase)
- 교환 판정, 곱, -ABC 계산, 회전축 rejection sampling

설계 메모:
- PauliAxis는 부호를 ±1로만 가진다. 허수 위상은 PhasedPauli에서만 표현 가능
  -> "허수 부호를 가진 회전축" 같은 불법 상태가 타입 수준에서 만들어지지 않는다.
- 문자열 표기는 '+XYZ' / '-XYX' 형태, 왼쪽 첫 글자가 qubit 0.
- 모든 값 타입은 frozen dataclass (스레드 간 공유/복사 안전)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np


class PauliError(ValueError):
    """Pauli 표기/연산 전제조건 위반 시 사용하는 예외"""
    pass


class McrConditionError(PauliError):
    """MCR 조건 또는 D=-ABC 전제가 깨졌을 때 사용하는 예외. condition에 실패한 조건 이름을 담는다."""

    def __init__(self, message: str, condition: str):
        super().__init__(message)
        self.condition = condition


class SamplingError(RuntimeError):
    """rejection sampling 재시도 한도를 모두 소진했을 때 사용하는 예외"""
    pass


# =========================
# 정책 설정 (필요 시 조정)
# =========================

# 회전축 rejection sampling 최대 시도 횟수
AXIS_RETRY_CAP = 10_000

_AXIS_PATTERN = re.compile(r"^\s*([+-]?)([IXYZ]+)\s*$")
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_LETTER = {bits: letter for letter, bits in _LETTER_BITS.items()}
_PHASE_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}


# =========================
# 타입
# =========================

@dataclass(frozen=True)
class PauliWord:
    """부호 없는 Pauli word. x/z는 길이 n 비트벡터를 int로 packing한 것."""

    n: int
    x: int
    z: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise PauliError(f"qubit 수는 1 이상이어야 합니다: n={self.n}")
        mask = (1 << self.n) - 1
        if self.x < 0 or self.z < 0 or self.x & ~mask or self.z & ~mask:
            raise PauliError(f"비트벡터가 n={self.n} 범위를 벗어났습니다")

    @classmethod
    def from_letters(cls, letters: str) -> PauliWord:
        x = z = 0
        for q, ch in enumerate(letters):
            if ch not in _LETTER_BITS:
                raise PauliError(f"허용되지 않은 Pauli 문자: {ch!r}")
            xb, zb = _LETTER_BITS[ch]
            x |= xb << q
            z |= zb << q
        return cls(len(letters), x, z)

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def letter(self, q: int) -> str:
        return _BITS_LETTER[((self.x >> q) & 1, (self.z >> q) & 1)]

    def support(self) -> list[int]:
        used = self.x | self.z
        return [q for q in range(self.n) if (used >> q) & 1]

    def __str__(self) -> str:
        return "".join(self.letter(q) for q in range(self.n))


@dataclass(frozen=True)
class PauliAxis:
    """P_n* 의 원소: Hermitian, non-identity, 부호 ±1"""

    word: PauliWord
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise PauliError(f"회전축 부호는 ±1만 허용됩니다: {self.sign}")
        if self.word.is_identity:
            raise PauliError("identity는 회전축이 될 수 없습니다 (±I 제외)")

    @property
    def n(self) -> int:
        return self.word.n

    def __neg__(self) -> PauliAxis:
        return PauliAxis(self.word, -self.sign)

    def __str__(self) -> str:
        return ("+" if self.sign > 0 else "-") + str(self.word)


@dataclass(frozen=True)
class PhasedPauli:
    """i^phase · word. 곱의 중간 결과(허수 위상 가능)를 담는 내부용 타입"""

    word: PauliWord
    phase: int = 0

    def __post_init__(self) -> None:
        if self.phase not in (0, 1, 2, 3):
            raise PauliError(f"phase는 ℤ4 원소(0..3)여야 합니다: {self.phase}")

    @classmethod
    def from_axis(cls, axis: PauliAxis) -> PhasedPauli:
        return cls(axis.word, 0 if axis.sign > 0 else 2)

    @classmethod
    def identity(cls, n: int) -> PhasedPauli:
        return cls(PauliWord(n, 0, 0), 0)

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    def to_axis(self) -> PauliAxis:
        if not self.is_hermitian:
            raise PauliError(f"허수 위상을 가진 Pauli는 회전축이 될 수 없습니다: {self}")
        return PauliAxis(self.word, 1 if self.phase == 0 else -1)

    def __str__(self) -> str:
        return _PHASE_PREFIX[self.phase] + str(self.word)


# =========================
# 파싱 / 열거
# =========================

def parse_axis(text: str) -> PauliAxis:
    """'+XYZ', '-XI', 'ZZ'(부호 생략 시 +) 형태를 PauliAxis로 변환"""
    m = _AXIS_PATTERN.match(text or "")
    if not m:
        raise PauliError(f"회전축 표기 형식이 아닙니다: {text!r}")
    sign = -1 if m.group(1) == "-" else 1
    return PauliAxis(PauliWord.from_letters(m.group(2)), sign)


def enumerate_axes(n: int) -> Iterator[PauliAxis]:
    """P_n* 전체 (2·(4^n - 1)개) 를 결정적 순서로 열거"""
    mask = (1 << n) - 1
    for code in range(1, 1 << (2 * n)):
        word = PauliWord(n, code & mask, code >> n)
        yield PauliAxis(word, 1)
        yield PauliAxis(word, -1)


# =========================
# 대수 연산
# =========================

def _check_same_n(a: PauliWord, b: PauliWord) -> None:
    if a.n != b.n:
        raise PauliError(f"qubit 수가 다릅니다: {a.n} vs {b.n}")


def word_commutes(a: PauliWord, b: PauliWord) -> bool:
    """symplectic inner product Σ (x_a z_b + z_a x_b) 가 짝수이면 교환"""
    _check_same_n(a, b)
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) % 2 == 0


def commutes(a: PauliAxis, b: PauliAxis) -> bool:
    return word_commutes(a.word, b.word)


def product(a: PhasedPauli, b: PhasedPauli) -> PhasedPauli:
    """
    정확한 연산자 곱 a·b (ℤ4 위상 누적 포함)

    word(x,z) = i^{|x&z|} X^x Z^z 규약에서
      a·b = i^{|x1&z1| + |x2&z2| + 2|z1&x2| - |x3&z3|} · word(x1^x2, z1^z2)
    """
    _check_same_n(a.word, b.word)
    x1, z1, x2, z2 = a.word.x, a.word.z, b.word.x, b.word.z
    x3, z3 = x1 ^ x2, z1 ^ z2
    phase = (
        a.phase
        + b.phase
        + (x1 & z1).bit_count()
        + (x2 & z2).bit_count()
        + 2 * (z1 & x2).bit_count()
        - (x3 & z3).bit_count()
    ) % 4
    return PhasedPauli(PauliWord(a.word.n, x3, z3), phase)


def multiply_axes(*axes: PauliAxis) -> PhasedPauli:
    acc = PhasedPauli.identity(axes[0].n)
    for axis in axes:
        acc = product(acc, PhasedPauli.from_axis(axis))
    return acc


def minus_abc(a: PauliAxis, b: PauliAxis, c: PauliAxis) -> PauliAxis:
    """
    D = -A·B·C (MCR 네 번째 회전축)

    전제: word가 서로 다름, [A,B]=0, {A,C}=0, {B,C}=0
    전제 하에서 결과는 항상 Hermitian (위상 실수) 이고 A, B, C와 다른 word를 가진다.
    """
    _check_same_n(a.word, b.word)
    _check_same_n(a.word, c.word)
    if len({a.word, b.word, c.word}) < 3:
        raise McrConditionError(f"회전축 word가 서로 달라야 합니다: {a}, {b}, {c}", "distinct")
    if not commutes(a, b):
        raise McrConditionError(f"[A,B]=0 이 아닙니다: {a}, {b}", "[A,B]=0")
    if commutes(a, c):
        raise McrConditionError(f"{{A,C}}=0 이 아닙니다: {a}, {c}", "{A,C}=0")
    if commutes(b, c):
        raise McrConditionError(f"{{B,C}}=0 이 아닙니다: {b}, {c}", "{B,C}=0")

    abc = multiply_axes(a, b, c)
    d = PhasedPauli(abc.word, (abc.phase + 2) % 4)
    assert d.is_hermitian, f"-ABC 위상이 허수입니다: {d}"
    return d.to_axis()


# =========================
# 샘플링
# =========================

def random_axis(n: int, rng: np.random.Generator) -> PauliAxis:
    """P_n* 에서 균일 추출 (word 균일 + 부호 균일)"""
    mask = (1 << n) - 1
    if 2 * n <= 62:
        code = int(rng.integers(1, 1 << (2 * n)))
    else:
        code = 0
        while code == 0:
            bits = rng.integers(0, 2, size=2 * n)
            code = int("".join(str(int(b)) for b in bits), 2)
    sign = 1 if int(rng.integers(0, 2)) == 0 else -1
    return PauliAxis(PauliWord(n, code & mask, code >> n), sign)


def sample_axis(
    n: int,
    rng: np.random.Generator,
    predicate: Callable[[PauliAxis], bool] | None = None,
    *,
    max_tries: int = AXIS_RETRY_CAP,
) -> PauliAxis:
    """
    predicate를 만족하는 P_n* 원소를 rejection sampling으로 균일 추출.
    max_tries 안에 못 찾으면 SamplingError (만족 불가 혹은 극히 희박한 predicate)
    """
    if n < 1:
        raise PauliError(f"qubit 수는 1 이상이어야 합니다: n={n}")
    for _ in range(max_tries):
        axis = random_axis(n, rng)
        if predicate is None or predicate(axis):
            return axis
    raise SamplingError(f"회전축 샘플링 한도 초과 (n={n}, max_tries={max_tries})")

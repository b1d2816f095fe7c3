"""
Clifford Tableau

역할:
- n-qubit Clifford 연산자 C를 "생성자 X_q, Z_q 의 켤레 이미지" 2n개로 표현
    x_images[q] = C X_q C†,  z_images[q] = C Z_q C†   (모두 부호 ±1인 PauliAxis)
- 게이트 적용(뒤에 붙이기), 임의 Pauli 켤레, 합성(compose), 게이트 합성(synthesize)

규약:
- apply_gate(t, g) 는 "t 다음에 g" (시간 순서) -> 결과 연산자 G·C
- compose(a, b) 는 "a 다음에 b" -> 결과 연산자 B·A
- 전역 위상은 추적하지 않는다.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from compiler.gatecircuit import CLIFFORD_GATES, GateCircuit, T_GATES, normalize_angle_index
from compiler.pauli import (
    PauliAxis,
    PauliWord,
    PhasedPauli,
    commutes,
    product,
    word_commutes,
)


class TableauError(ValueError):
    """Clifford 이외 게이트 적용, 잘못된 operand, 깨진 tableau 등에 사용하는 예외"""
    pass


_INVERSE = {"s": "sdg", "sdg": "s"}


@dataclass(frozen=True)
class CliffordTableau:
    n: int
    x_images: tuple[PauliAxis, ...]
    z_images: tuple[PauliAxis, ...]

    def __post_init__(self) -> None:
        if len(self.x_images) != self.n or len(self.z_images) != self.n:
            raise TableauError(f"이미지 개수가 n={self.n}과 맞지 않습니다")
        for img in (*self.x_images, *self.z_images):
            if img.n != self.n:
                raise TableauError(f"이미지 qubit 수가 다릅니다: {img}")

    @classmethod
    def identity(cls, n: int) -> CliffordTableau:
        xs = tuple(PauliAxis(PauliWord(n, 1 << q, 0)) for q in range(n))
        zs = tuple(PauliAxis(PauliWord(n, 0, 1 << q)) for q in range(n))
        return cls(n, xs, zs)

    @property
    def is_identity(self) -> bool:
        return self == CliffordTableau.identity(self.n)

    def images(self) -> list[PauliAxis]:
        """[X_0.., X_{n-1}, Z_0.., Z_{n-1}] 순서의 이미지 목록 (직렬화 순서)"""
        return [*self.x_images, *self.z_images]


# -------------------------------------------------
# 게이트 단위 켤레 (비트 연산)
# -------------------------------------------------

def _conjugate_bits(x: int, z: int, neg: int, name: str, qubits: Sequence[int]) -> tuple[int, int, int]:
    """G·P·G† 를 (x, z, 부호비트) 위에서 계산"""
    if name == "cx":
        c, t = qubits
        xc, zc = (x >> c) & 1, (z >> c) & 1
        xt, zt = (x >> t) & 1, (z >> t) & 1
        neg ^= xc & zt & (xt ^ zc ^ 1)
        x ^= xc << t
        z ^= zt << c
        return x, z, neg

    (q,) = qubits
    bit = 1 << q
    xq, zq = (x >> q) & 1, (z >> q) & 1
    if name == "h":
        neg ^= xq & zq
        x = (x & ~bit) | (zq << q)
        z = (z & ~bit) | (xq << q)
    elif name == "s":
        neg ^= xq & zq
        z ^= xq << q
    elif name == "sdg":
        neg ^= xq & (zq ^ 1)
        z ^= xq << q
    elif name == "x":
        neg ^= zq
    elif name == "y":
        neg ^= xq ^ zq
    elif name == "z":
        neg ^= xq
    else:
        raise TableauError(f"Clifford 게이트가 아닙니다: {name}")
    return x, z, neg


def _check_operands(n: int, name: str, qubits: Sequence[int]) -> None:
    if name in T_GATES:
        raise TableauError(f"{name}는 Clifford 게이트가 아니므로 tableau에 적용할 수 없습니다")
    if name not in CLIFFORD_GATES:
        raise TableauError(f"지원하지 않는 gate: {name}")
    arity = 2 if name == "cx" else 1
    if len(qubits) != arity or any(not 0 <= q < n for q in qubits):
        raise TableauError(f"잘못된 operand: {name} {tuple(qubits)} (n={n})")
    if arity == 2 and qubits[0] == qubits[1]:
        raise TableauError(f"cx control/target이 같습니다: {tuple(qubits)}")


def conjugate_by_gate(p: PauliAxis, name: str, qubits: Sequence[int]) -> PauliAxis:
    """G·p·G† (G는 단일 Clifford 게이트)"""
    _check_operands(p.n, name, qubits)
    x, z, neg = _conjugate_bits(p.word.x, p.word.z, 1 if p.sign < 0 else 0, name, qubits)
    return PauliAxis(PauliWord(p.n, x, z), -1 if neg else 1)


def apply_gate(t: CliffordTableau, name: str, qubits: Sequence[int]) -> CliffordTableau:
    qubits = tuple(qubits)
    _check_operands(t.n, name, qubits)
    return CliffordTableau(
        t.n,
        tuple(conjugate_by_gate(img, name, qubits) for img in t.x_images),
        tuple(conjugate_by_gate(img, name, qubits) for img in t.z_images),
    )


def tableau_of(c: GateCircuit) -> CliffordTableau:
    """Clifford-only GateCircuit의 tableau. t/tdg가 있으면 TableauError"""
    t = CliffordTableau.identity(c.n)
    for g in c.gates:
        t = apply_gate(t, g.name, g.qubits)
    return t


# -------------------------------------------------
# 임의 Pauli 켤레 / 합성
# -------------------------------------------------

def conjugate(t: CliffordTableau, p: PauliAxis) -> PauliAxis:
    """
    C·p·C†

    p = sign · i^{|x&z|} · Π X_q^{x_q} · Π Z_q^{z_q} 로 분해한 뒤
    각 생성자를 이미지로 치환해 곱한다. 결과 위상은 항상 실수.
    """
    if p.n != t.n:
        raise TableauError(f"qubit 수가 다릅니다: {p.n} vs {t.n}")
    x, z = p.word.x, p.word.z
    acc = PhasedPauli(PauliWord(t.n, 0, 0), ((x & z).bit_count() + (2 if p.sign < 0 else 0)) % 4)
    for q in range(t.n):
        if (x >> q) & 1:
            acc = product(acc, PhasedPauli.from_axis(t.x_images[q]))
    for q in range(t.n):
        if (z >> q) & 1:
            acc = product(acc, PhasedPauli.from_axis(t.z_images[q]))
    if not acc.is_hermitian:
        raise TableauError(f"켤레 결과 위상이 허수입니다 (깨진 tableau): {acc}")
    return acc.to_axis()


def compose(a: CliffordTableau, b: CliffordTableau) -> CliffordTableau:
    """a 다음에 b (연산자 B·A)"""
    if a.n != b.n:
        raise TableauError(f"qubit 수가 다릅니다: {a.n} vs {b.n}")
    return CliffordTableau(
        a.n,
        tuple(conjugate(b, img) for img in a.x_images),
        tuple(conjugate(b, img) for img in a.z_images),
    )


def conjugate_by_rotation(word: PauliWord, k: int, p: PauliAxis) -> PauliAxis:
    """
    R_word(kπ/4) · p · R_word(kπ/4)†   (k 짝수 = Clifford 회전만)

    - 교환하면 그대로
    - k=4 (R = -i·P): 반교환이면 -p
    - k=±2: 반교환이면 ∓i·P·p
    """
    k = normalize_angle_index(k)
    if k % 2:
        raise TableauError(f"Clifford 회전(k 짝수)만 켤레 계산이 가능합니다: k={k}")
    if k == 0 or word_commutes(word, p.word):
        return p
    if k == 4:
        return -p
    prod = product(PhasedPauli(word, 0), PhasedPauli.from_axis(p))
    return PhasedPauli(prod.word, (prod.phase + (3 if k == 2 else 1)) % 4).to_axis()


def rotation_tableau(word: PauliWord, k: int) -> CliffordTableau:
    """Clifford 회전 R_word(kπ/4) (k 짝수) 의 tableau"""
    ident = CliffordTableau.identity(word.n)
    return CliffordTableau(
        word.n,
        tuple(conjugate_by_rotation(word, k, img) for img in ident.x_images),
        tuple(conjugate_by_rotation(word, k, img) for img in ident.z_images),
    )


def is_symplectic(t: CliffordTableau) -> bool:
    """이미지들이 X_q, Z_q 의 교환 관계를 그대로 유지하는지 검사"""
    n = t.n
    for i in range(n):
        for j in range(n):
            same = i == j
            if commutes(t.x_images[i], t.z_images[j]) == same:
                return False
            if i < j:
                if not commutes(t.x_images[i], t.x_images[j]):
                    return False
                if not commutes(t.z_images[i], t.z_images[j]):
                    return False
    images = t.images()
    return len({img.word for img in images}) == len(images)


# -------------------------------------------------
# 게이트 합성 (tableau -> GateCircuit)
# -------------------------------------------------

def synthesize(t: CliffordTableau) -> GateCircuit:
    """
    tableau를 identity로 줄이는 게이트열 G를 기록한 뒤, 역순 + 각 게이트 역원으로 출력.

    qubit q 순서로:
      1) X_q 이미지 -> ±X_q  (Y/Z 를 X로 바꾸고 CNOT으로 q 하나로 모음)
      2) Z_q 이미지 -> ±Z_q  (q보다 큰 qubit의 X/Y 를 Z로 바꾸고 CNOT으로 모음, q의 Y는 H·S·H)
    마지막에 부호 보정 (X 이미지 음수 -> z, Z 이미지 음수 -> x)
    """
    if not is_symplectic(t):
        raise TableauError("symplectic 조건을 만족하지 않는 tableau입니다")

    n = t.n
    cur = t
    ops: list[tuple[str, tuple[int, ...]]] = []

    def do(name: str, *qubits: int) -> None:
        nonlocal cur
        cur = apply_gate(cur, name, qubits)
        ops.append((name, qubits))

    for q in range(n):
        # 1) X_q 이미지 정리 (q 미만 support는 없음: 앞서 정리된 생성자와 교환 관계 때문)
        row = cur.x_images[q].word
        for j in range(q, n):
            letter = row.letter(j)
            if letter == "Y":
                do("s", j)
            elif letter == "Z":
                do("h", j)
        row = cur.x_images[q].word
        if not (row.x >> q) & 1:
            j = next(j for j in range(q + 1, n) if (row.x >> j) & 1)
            do("cx", j, q)
        row = cur.x_images[q].word
        for j in range(q + 1, n):
            if (row.x >> j) & 1:
                do("cx", q, j)

        # 2) Z_q 이미지 정리
        row = cur.z_images[q].word
        for j in range(q + 1, n):
            letter = row.letter(j)
            if letter == "Y":
                do("sdg", j)
                do("h", j)
            elif letter == "X":
                do("h", j)
        row = cur.z_images[q].word
        for j in range(q + 1, n):
            if (row.z >> j) & 1:
                do("cx", j, q)
        if (cur.z_images[q].word.x >> q) & 1:
            do("h", q)
            do("s", q)
            do("h", q)

    for q in range(n):
        if cur.x_images[q].sign < 0:
            do("z", q)
        if cur.z_images[q].sign < 0:
            do("x", q)

    if not cur.is_identity:
        raise TableauError("tableau 합성 후 identity로 수렴하지 않았습니다")

    inverse = [(_INVERSE.get(name, name), *qubits) for name, qubits in reversed(ops)]
    return GateCircuit.from_ops(n, inverse)

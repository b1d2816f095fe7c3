"""
Clifford Tableau Test Runner

실행:
  (venv) python -m compiler.tableau_test
"""

from __future__ import annotations

import numpy as np

from compiler.gatecircuit import CLIFFORD_GATES, GateCircuit
from compiler.pauli import PauliWord, parse_axis
from compiler.tableau import (
    CliffordTableau,
    TableauError,
    apply_gate,
    compose,
    conjugate,
    conjugate_by_gate,
    conjugate_by_rotation,
    is_symplectic,
    rotation_tableau,
    synthesize,
    tableau_of,
)


def random_clifford_circuit(n: int, length: int, rng: np.random.Generator) -> GateCircuit:
    ops = []
    for _ in range(length):
        name = CLIFFORD_GATES[int(rng.integers(len(CLIFFORD_GATES)))]
        if name == "cx":
            if n < 2:
                continue
            a, b = rng.choice(n, size=2, replace=False)
            ops.append((name, int(a), int(b)))
        else:
            ops.append((name, int(rng.integers(n))))
    return GateCircuit.from_ops(n, ops)


def test_single_gate_rules():
    cases = [
        ("+X", "h", (0,), "+Z"),
        ("+Y", "h", (0,), "-Y"),
        ("+X", "s", (0,), "+Y"),
        ("+Y", "s", (0,), "-X"),
        ("+X", "sdg", (0,), "-Y"),
        ("+Y", "sdg", (0,), "+X"),
        ("+Z", "x", (0,), "-Z"),
        ("+X", "z", (0,), "-X"),
        ("+X", "y", (0,), "-X"),
        ("+Y", "y", (0,), "+Y"),
        ("+XI", "cx", (0, 1), "+XX"),
        ("+IZ", "cx", (0, 1), "+ZZ"),
        ("+YY", "cx", (0, 1), "-XZ"),
        ("+IX", "cx", (0, 1), "+IX"),
    ]
    for src, name, qubits, expected in cases:
        got = conjugate_by_gate(parse_axis(src), name, qubits)
        assert str(got) == expected, (src, name, str(got), expected)


def test_t_gate_rejected():
    try:
        apply_gate(CliffordTableau.identity(1), "t", (0,))
    except TableauError:
        return
    raise AssertionError("t 게이트가 tableau에 적용되었습니다.")


def test_identity_synthesizes_to_empty():
    for n in (1, 2, 4):
        assert len(synthesize(CliffordTableau.identity(n)).gates) == 0


def test_h_tableau_images():
    t = apply_gate(CliffordTableau.identity(1), "h", (0,))
    assert str(t.x_images[0]) == "+Z"
    assert str(t.z_images[0]) == "+X"


def test_conjugate_matches_gate_by_gate():
    rng = np.random.default_rng(11)
    for _ in range(30):
        n = int(rng.integers(1, 5))
        c = random_clifford_circuit(n, 25, rng)
        t = tableau_of(c)
        for _ in range(5):
            code = int(rng.integers(1, 1 << (2 * n)))
            p = parse_axis(("-" if rng.integers(2) else "+") + str(PauliWord(n, code & ((1 << n) - 1), code >> n)))
            expected = p
            for g in c.gates:
                expected = conjugate_by_gate(expected, g.name, g.qubits)
            assert conjugate(t, p) == expected


def test_synthesize_round_trip():
    rng = np.random.default_rng(5)
    for _ in range(40):
        n = int(rng.integers(1, 6))
        t = tableau_of(random_clifford_circuit(n, 40, rng))
        assert is_symplectic(t)
        assert tableau_of(synthesize(t)) == t


def test_compose_order():
    rng = np.random.default_rng(9)
    for _ in range(20):
        n = 3
        a = random_clifford_circuit(n, 15, rng)
        b = random_clifford_circuit(n, 15, rng)
        ab = GateCircuit(n, a.gates + b.gates)
        assert compose(tableau_of(a), tableau_of(b)) == tableau_of(ab)


def test_rotation_tableau_matches_gates():
    z = PauliWord.from_letters("Z")
    assert rotation_tableau(z, 2) == tableau_of(GateCircuit.from_ops(1, [("s", 0)]))
    assert rotation_tableau(z, -2) == tableau_of(GateCircuit.from_ops(1, [("sdg", 0)]))
    assert rotation_tableau(z, 4) == tableau_of(GateCircuit.from_ops(1, [("z", 0)]))
    assert conjugate_by_rotation(PauliWord.from_letters("ZZ"), 2, parse_axis("+XX")) == parse_axis("+XX")
    try:
        rotation_tableau(z, 1)
    except TableauError:
        return
    raise AssertionError("k 홀수 회전의 tableau가 만들어졌습니다.")


def test_is_symplectic_detects_broken():
    ident = CliffordTableau.identity(2)
    broken = CliffordTableau(2, ident.x_images, (ident.z_images[0], parse_axis("+ZI")))
    assert not is_symplectic(broken)
    try:
        synthesize(broken)
    except TableauError:
        return
    raise AssertionError("깨진 tableau가 합성되었습니다.")


def main() -> None:
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            print(f"\n=== {name} ===")
            fn()
            print("[PASS]")
    print("\n✅ ALL TESTS OK")


if __name__ == "__main__":
    main()

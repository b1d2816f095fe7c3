"""
Pauli Algebra Test Runner
- `compiler/pauli.py`의 곱/교환/-ABC/샘플링이 기대대로 동작하는지 확인

실행:
  (venv) python -m compiler.pauli_test
또는
  (venv) pytest compiler/pauli_test.py
"""

from __future__ import annotations

import numpy as np

from compiler.pauli import (
    McrConditionError,
    PauliError,
    PauliWord,
    PhasedPauli,
    SamplingError,
    commutes,
    enumerate_axes,
    minus_abc,
    multiply_axes,
    parse_axis,
    product,
    sample_axis,
)


def _pp(text: str, phase: int = 0) -> PhasedPauli:
    return PhasedPauli(PauliWord.from_letters(text), phase)


def test_parse_and_str():
    a = parse_axis("-XYZ")
    assert a.sign == -1
    assert str(a.word) == "XYZ"
    assert str(a) == "-XYZ"
    assert str(parse_axis("ZZ")) == "+ZZ"
    # qubit 0 = 첫 글자
    assert a.word.letter(0) == "X" and a.word.letter(2) == "Z"
    assert a.word.support() == [0, 1, 2]


def test_parse_rejects_bad_input():
    for bad in ["", "+", "XQ", "+III", "iXX"]:
        try:
            parse_axis(bad)
        except PauliError:
            continue
        raise AssertionError(f"막혀야 하는 입력이 통과했습니다: {bad!r}")


def test_single_qubit_products():
    # X·Z = -iY, Z·X = +iY, X·Y = +iZ
    assert str(product(_pp("X"), _pp("Z"))) == "-iY"
    assert str(product(_pp("Z"), _pp("X"))) == "+iY"
    assert str(product(_pp("X"), _pp("Y"))) == "+iZ"
    assert str(product(_pp("Y"), _pp("Y"))) == "+I"


def test_two_qubit_products():
    assert str(product(_pp("XY"), _pp("YX"))) == "+ZZ"
    assert str(product(_pp("XX"), _pp("ZZ"))) == "-YY"


def test_commutes():
    assert commutes(parse_axis("XX"), parse_axis("ZZ"))
    assert not commutes(parse_axis("XI"), parse_axis("ZZ"))
    # 부호는 교환성에 영향 없음
    assert commutes(parse_axis("-XY"), parse_axis("+YX"))


def test_minus_abc_examples():
    assert str(minus_abc(parse_axis("+XI"), parse_axis("+IX"), parse_axis("+ZZ"))) == "+YY"
    assert str(minus_abc(parse_axis("-XY"), parse_axis("-YX"), parse_axis("+IZ"))) == "-ZI"
    assert str(minus_abc(parse_axis("+XY"), parse_axis("+YX"), parse_axis("+XX"))) == "+YY"


def test_minus_abc_names_failed_condition():
    cases = [
        (("+XI", "+XI", "+ZZ"), "distinct"),
        (("+XI", "+ZI", "+ZZ"), "[A,B]=0"),
        (("+XI", "+IX", "+XX"), "{A,C}=0"),
        (("+XI", "+IZ", "+ZI"), "{B,C}=0"),
    ]
    for (a, b, c), expected in cases:
        try:
            minus_abc(parse_axis(a), parse_axis(b), parse_axis(c))
        except McrConditionError as e:
            assert e.condition == expected, (a, b, c, e.condition)
            continue
        raise AssertionError(f"전제 위반인데 통과했습니다: {a}, {b}, {c}")


def test_minus_abc_is_always_hermitian_for_n2():
    axes = list(enumerate_axes(2))
    checked = 0
    for a in axes[::3]:
        for b in axes:
            if b.word == a.word or not commutes(a, b):
                continue
            for c in axes[::5]:
                if commutes(a, c) or commutes(b, c):
                    continue
                d = minus_abc(a, b, c)
                assert d.word not in (a.word, b.word, c.word)
                # A·B·C·D = -I 확인
                abcd = multiply_axes(a, b, c, d)
                assert abcd.word.is_identity and abcd.phase == 2
                checked += 1
    assert checked > 0


def test_enumerate_axes_count():
    assert len(list(enumerate_axes(1))) == 6
    assert len(list(enumerate_axes(2))) == 30


def test_sample_axis_is_deterministic():
    a = [sample_axis(3, np.random.default_rng(7)) for _ in range(3)]
    assert a[0] == a[1] == a[2]
    rng = np.random.default_rng(1)
    for _ in range(200):
        ax = sample_axis(2, rng, predicate=lambda p: not commutes(p, parse_axis("ZZ")))
        assert not commutes(ax, parse_axis("ZZ"))


def test_sample_axis_cap():
    try:
        sample_axis(1, np.random.default_rng(0), predicate=lambda p: False, max_tries=50)
    except SamplingError:
        return
    raise AssertionError("만족 불가 predicate인데 SamplingError가 나지 않았습니다.")


def main() -> None:
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            print(f"\n=== {name} ===")
            fn()
            print("[PASS]")
    print("\n✅ ALL TESTS OK")


if __name__ == "__main__":
    main()

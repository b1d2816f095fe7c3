"""
T-count Optimizer (PBC passes)

passes:
- merge    : T layer 안에서 같은 word 회전을 합친다 (k 합 mod 8).
             π/2, π 로 합쳐진 Clifford 회전은 왼쪽(prefix 쪽)으로 밀어 prefix tableau에 흡수
- mcr_swap : 인접 T layer 경계에서 MCR quadruple을 찾아 블록 교환 -> merge 후 T-count가
             실제로 줄어드는 경우만 채택 (greedy first improvement)

운영 메모:
- 탐색은 결정적 순서(layer 경계 -> 왼쪽 쌍 -> 오른쪽 쌍)로 진행 -> 같은 입력이면 같은 결과
- pair_cap / max_rounds 로 탐색량 상한을 건다
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import combinations, islice

from compiler.mcr import check_mcr, is_mcr_candidate, swap_mcr
from compiler.gatecircuit import normalize_angle_index
from compiler.pauli import PauliAxis, PauliWord
from compiler.pbc import PBCCircuit, Rotation, make_rotation, signed_axis, t_count_pbc, t_layers
from compiler.tableau import compose, conjugate_by_rotation, rotation_tableau


# =========================
# 정책 설정 (필요 시 조정)
# =========================

DEFAULT_PAIR_CAP = 64
DEFAULT_MAX_ROUNDS = 32

PASS_NAMES = ("merge", "mcr_swap")


@dataclass(frozen=True)
class OptimizerConfig:
    passes: tuple[str, ...] = ("mcr_swap", "merge")
    max_rounds: int = DEFAULT_MAX_ROUNDS
    pair_cap: int = DEFAULT_PAIR_CAP

    def __post_init__(self) -> None:
        object.__setattr__(self, "passes", tuple(self.passes))
        if not self.passes:
            raise ValueError("passes가 비어 있습니다")
        unknown = [name for name in self.passes if name not in PASS_NAMES]
        if unknown:
            raise ValueError(f"알 수 없는 pass: {unknown} (허용: {PASS_NAMES})")
        if self.max_rounds < 1 or self.pair_cap < 1:
            raise ValueError("max_rounds, pair_cap 은 1 이상이어야 합니다")


@dataclass
class OptimizationReport:
    initial_t: int
    final_t: int
    rounds: int
    pass_deltas: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


# -------------------------------------------------
# merge
# -------------------------------------------------

def _split_angle(k: int) -> tuple[int, int]:
    """k -> (Clifford 부분, ±π/4 잔여). ±3 = ±2 ± 1"""
    k = normalize_angle_index(k)
    if k % 2 == 0:
        return k, 0
    if k == 3:
        return 2, 1
    if k == -3:
        return -2, -1
    return 0, k


def _merge_once(p: PBCCircuit) -> tuple[PBCCircuit, bool]:
    rots = p.rotations
    prefix = p.prefix
    done: list[Rotation] = []
    changed = False

    for layer in t_layers(p):
        totals: dict[PauliWord, int] = {}
        for idx in layer:
            r = rots[idx]
            totals[r.word] = totals.get(r.word, 0) + r.k
        if len(totals) < len(layer):
            changed = True

        cliffords: list[tuple[PauliWord, int]] = []
        residues: list[Rotation] = []
        for word, k in totals.items():
            clifford_k, residue_k = _split_angle(k)
            if clifford_k:
                cliffords.append((word, clifford_k))
            if residue_k:
                residues.append(Rotation(PauliAxis(word, 1), residue_k))
        if cliffords:
            changed = True

        # Clifford 회전은 같은 layer의 회전들과 교환하므로 앞서 처리된 회전들만 켤레
        for word, k in cliffords:
            moved = (make_rotation(conjugate_by_rotation(word, k, r.axis), r.k) for r in done)
            done = [r for r in moved if r is not None]
            prefix = compose(prefix, rotation_tableau(word, k))
        done.extend(residues)

    if not changed:
        return p, False
    return PBCCircuit(p.n, prefix, tuple(done)), True


def merge_pass(p: PBCCircuit) -> PBCCircuit:
    current = p
    while True:
        current, changed = _merge_once(current)
        if not changed:
            return current


# -------------------------------------------------
# mcr_swap
# -------------------------------------------------

def _first_improving_swap(p: PBCCircuit, cfg: OptimizerConfig) -> PBCCircuit | None:
    rots = p.rotations
    base_t = t_count_pbc(p)
    layers = t_layers(p)

    for b in range(len(layers) - 1):
        left = [i for i in layers[b] if rots[i].k in (1, -1)]
        right = [i for i in layers[b + 1] if rots[i].k in (1, -1)]
        left_pairs = list(islice(combinations(left, 2), cfg.pair_cap))
        right_pairs = list(islice(combinations(right, 2), cfg.pair_cap))

        for la, lb in left_pairs:
            for rc, rd in right_pairs:
                axes = [signed_axis(rots[j]) for j in (la, lb, rc, rd)]
                if not is_mcr_candidate(*axes) or not check_mcr(*axes):
                    continue

                # layer 내부 재배치로 (la, lb) 를 layer b 끝, (rc, rd) 를 layer b+1 앞에 둔다
                order = [j for layer in layers[:b] for j in layer]
                order += [j for j in layers[b] if j not in (la, lb)] + [la, lb]
                pos = len(order) - 2
                order += [rc, rd] + [j for j in layers[b + 1] if j not in (rc, rd)]
                order += [j for layer in layers[b + 2:] for j in layer]

                arranged = p.with_rotations(rots[j] for j in order)
                trial = merge_pass(swap_mcr(arranged, pos))
                if t_count_pbc(trial) < base_t:
                    return trial
    return None


def mcr_swap_pass(p: PBCCircuit, cfg: OptimizerConfig | None = None) -> PBCCircuit:
    cfg = cfg or OptimizerConfig()
    current = p
    for _ in range(cfg.max_rounds):
        improved = _first_improving_swap(current, cfg)
        if improved is None:
            break
        current = improved
    return current


# -------------------------------------------------
# driver
# -------------------------------------------------

def _run_pass(name: str, p: PBCCircuit, cfg: OptimizerConfig) -> PBCCircuit:
    if name == "merge":
        return merge_pass(p)
    return mcr_swap_pass(p, cfg)


def optimize(p: PBCCircuit, cfg: OptimizerConfig | None = None) -> tuple[PBCCircuit, OptimizationReport]:
    """설정된 pass들을 round-robin으로 고정점(또는 max_rounds)까지 반복"""
    cfg = cfg or OptimizerConfig()
    report = OptimizationReport(
        initial_t=t_count_pbc(p),
        final_t=t_count_pbc(p),
        rounds=0,
        pass_deltas={name: 0 for name in cfg.passes},
    )

    current = p
    for round_no in range(1, cfg.max_rounds + 1):
        report.rounds = round_no
        changed = False
        for name in cfg.passes:
            before = t_count_pbc(current)
            nxt = _run_pass(name, current, cfg)
            report.pass_deltas[name] += before - t_count_pbc(nxt)
            if nxt != current:
                changed = True
            current = nxt
        if not changed:
            break

    report.final_t = t_count_pbc(current)
    return current, report

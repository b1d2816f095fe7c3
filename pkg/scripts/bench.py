"""
Compiler Benchmark Harness

이 모듈은 unoptimization 기반 T-count 컴파일러 benchmark를 수행한다.

수행 단계 (n, sample 마다):
1) 기본 입력 U = R_{Z…Z}(π/4) 생성 (t_original = 1)
2) (seed, n, sample) 해시로 만든 seed로 unoptimize -> V, t_unopt 기록
3) 내부 optimizer 실행 -> t_opt 기록
4) reduction rate p = (t_unopt - t_opt) / (t_unopt - t_original)

설계 의도:
- sample별 seed는 해시로만 결정 -> worker 수가 달라도 결과 CSV가 같다.
- 결과는 pandas DataFrame으로 모아 CSV / JSON summary / (옵션) DuckDB 에 저장
- DuckDB 저장은 run_key 단위 DELETE → INSERT (재실행 시 중복 row 방지)
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

import duckdb
import pandas as pd

from compiler.optimizer import OptimizerConfig, optimize
from compiler.pbc import default_input, t_count_pbc
from compiler.unopt import UnoptRecipe, unoptimize


# =========================
# 정책 설정 (필요 시 조정)
# =========================

CSV_COLUMNS = ["n", "sample", "seed", "t_unopt", "t_opt", "p"]
DEFAULT_SAMPLES = 100
DEFAULT_BENCH_PASSES = ("merge",)
SEED_MODULO = 2 ** 63


# -------------------------------------------------
# seed / reduction rate
# -------------------------------------------------
def stable_seed(seed: int, n: int, sample: int, modulo: int = SEED_MODULO) -> int:
    """
    (seed, n, sample) 을 해시하여 항상 동일한 sample seed를 만든다.

    목적:
    - sample마다 서로 다른 난수 스트림
    - 병렬 실행 순서와 무관하게 동일 결과 재현
    """
    h = hashlib.sha256(f"{seed}:{n}:{sample}".encode("utf-8")).hexdigest()
    return int(h[:16], 16) % modulo


def reduction_rate(t_unopt: int, t_opt: int, t_original: int) -> float:
    """p = (t_unopt - t_opt) / (t_unopt - t_original). 1이면 원래 최적값까지 완전 복구"""
    if t_unopt == t_original:
        raise ValueError("t_unopt == t_original 이면 reduction rate가 정의되지 않습니다 (0으로 나누기)")
    return (t_unopt - t_opt) / (t_unopt - t_original)


# -------------------------------------------------
# 결과 타입
# -------------------------------------------------
@dataclass
class SampleResult:
    n: int
    sample: int
    seed: int
    t_original: int
    t_unopt: int
    t_opt: int
    p: float
    wall_time: float


@dataclass
class BenchReport:
    rows: list[SampleResult] = field(default_factory=list)
    wall_time: float = 0.0

    def to_frame(self) -> pd.DataFrame:
        cols = ["n", "sample", "seed", "t_original", "t_unopt", "t_opt", "p", "wall_time"]
        if not self.rows:
            return pd.DataFrame(columns=cols)
        df = pd.DataFrame([asdict(r) for r in self.rows], columns=cols)
        return df.sort_values(["n", "sample"]).reset_index(drop=True)

    def summary(self) -> pd.DataFrame:
        """n 별 평균/표준편차 (sample 1개면 표준편차 0)"""
        df = self.to_frame()
        if df.empty:
            return pd.DataFrame()
        g = df.groupby("n")
        out = pd.DataFrame(
            {
                "samples": g.size(),
                "t_unopt_mean": g["t_unopt"].mean(),
                "t_unopt_std": g["t_unopt"].std(),
                "t_opt_mean": g["t_opt"].mean(),
                "t_opt_std": g["t_opt"].std(),
                "p_mean": g["p"].mean(),
                "p_std": g["p"].std(),
                "wall_time_mean": g["wall_time"].mean(),
            }
        )
        return out.fillna(0.0).reset_index()

    def to_summary_dict(self) -> dict:
        return {
            "wall_time": self.wall_time,
            "per_n": self.summary().to_dict(orient="records"),
        }


# -------------------------------------------------
# 실행
# -------------------------------------------------
def run_sample(n: int, sample: int, seed: int, swap_enabled: bool, cfg: OptimizerConfig) -> SampleResult:
    started = time.perf_counter()
    u = default_input(n)
    t_original = t_count_pbc(u)
    sample_seed = stable_seed(seed, n, sample)

    v = unoptimize(u, UnoptRecipe(seed=sample_seed, swap_enabled=swap_enabled))
    t_unopt = t_count_pbc(v)
    _, report = optimize(v, cfg)

    return SampleResult(
        n=n,
        sample=sample,
        seed=sample_seed,
        t_original=t_original,
        t_unopt=t_unopt,
        t_opt=report.final_t,
        p=reduction_rate(t_unopt, report.final_t, t_original),
        wall_time=time.perf_counter() - started,
    )


def run_bench(
    qubits: list[int],
    samples: int,
    seed: int,
    swap_enabled: bool = True,
    cfg: OptimizerConfig | None = None,
    workers: int = 1,
    sink: list[SampleResult] | None = None,
    on_result: Callable[[SampleResult], None] | None = None,
) -> BenchReport:
    """
    sink: 완료된 결과가 즉시 쌓이는 리스트 (실패 시 부분 결과 flush 용)
    on_result: sample 완료 시 호출 (진행 로그 용)
    """
    cfg = cfg or OptimizerConfig(passes=DEFAULT_BENCH_PASSES)
    rows = sink if sink is not None else []
    tasks = [(n, s) for n in qubits for s in range(samples)]
    started = time.perf_counter()

    def _collect(res: SampleResult) -> None:
        rows.append(res)
        if on_result is not None:
            on_result(res)

    if workers <= 1:
        for n, s in tasks:
            _collect(run_sample(n, s, seed, swap_enabled, cfg))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_sample, n, s, seed, swap_enabled, cfg) for n, s in tasks]
            for fut in as_completed(futures):
                _collect(fut.result())

    ordered = sorted(rows, key=lambda r: (r.n, r.sample))
    return BenchReport(rows=ordered, wall_time=time.perf_counter() - started)


# -------------------------------------------------
# 저장
# -------------------------------------------------
def write_csv(report: BenchReport, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    df = report.to_frame()
    df[CSV_COLUMNS].to_csv(path, index=False)
    return path


def write_summary_json(report: BenchReport, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report.to_summary_dict(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    return path


def store_duckdb(report: BenchReport, db_path: Path, run_key: str) -> int:
    """
    bench_samples 테이블에 저장.
    - 동일 run_key 재실행 시 중복 row가 쌓이지 않게 DELETE → INSERT 수행
    """
    db_path.parent.mkdir(parents=True, exist_ok=True)
    df = report.to_frame()
    df.insert(0, "run_key", run_key)

    con = duckdb.connect(str(db_path))
    try:
        con.execute(
            """
            CREATE TABLE IF NOT EXISTS bench_samples (
              run_key    VARCHAR,
              n          INTEGER,
              sample     INTEGER,
              seed       BIGINT,
              t_original INTEGER,
              t_unopt    INTEGER,
              t_opt      INTEGER,
              p          DOUBLE,
              wall_time  DOUBLE
            )
            """
        )
        con.execute("DELETE FROM bench_samples WHERE run_key = ?", [run_key])
        con.register("bench_df", df)
        con.execute(
            """
            INSERT INTO bench_samples
            SELECT run_key, n, sample, seed, t_original, t_unopt, t_opt, p, wall_time
            FROM bench_df
            """
        )
        con.unregister("bench_df")
        return con.execute("SELECT COUNT(*) FROM bench_samples WHERE run_key = ?", [run_key]).fetchone()[0]
    finally:
        con.close()

"""
MCR Compiler CLI

subcommands:
- unopt     : 기본 입력 R_{Z…Z}(π/4) (또는 --in 회로)를 unoptimize 하여 저장
- optimize  : 회로 파일 -> 내부 optimizer -> 결과 파일 + report JSON
- convert   : qasm <-> pbc-json (qc는 출력 전용)
- verify    : 두 회로의 동치 검사 (전역 위상 무시)
- bench     : n 범위 × sample 수 만큼 unopt -> optimize -> reduction rate 집계
- count-mcr : MCR quadruple 개수 (n ≤ 2면 전수 열거로 교차 확인 가능)

종료 코드:
  0 성공/동치, 1 사용법 오류, 2 입력 파싱 오류, 3 동치 아님(또는 불일치), 4 샘플링 한도 초과

환경 변수 (.env, 프로젝트 루트):
  MCR_DATA_DIR       기본 출력 루트 (default: data)
  MCR_BENCH_WORKERS  bench 기본 worker 수 (default: 1)

예:
  python scripts/mcr_cli.py unopt --qubits 4 --seed 7 --out data/unopt/u4.qasm
  python scripts/mcr_cli.py bench --qubits 2..6 --samples 100 --no-swap
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from dotenv import load_dotenv
from jsonschema import ValidationError

# 프로젝트 루트 import 경로 확보
sys.path.append(str(Path(__file__).resolve().parent.parent))

from compiler.gatecircuit import (
    CircuitError,
    GateCircuit,
    QasmParseError,
    clifford_count,
    emit_qasm,
    emit_qc,
    gate_counts,
    parse_qasm,
    t_count,
)
from compiler.mcr import count_quadruples, enumerate_quadruples
from compiler.optimizer import DEFAULT_MAX_ROUNDS, DEFAULT_PAIR_CAP, OptimizerConfig, optimize
from compiler.pauli import PauliError, SamplingError
from compiler.pbc import PBCCircuit, default_input, gates_to_pbc, pbc_from_json, pbc_to_gates, pbc_to_json, t_count_pbc
from compiler.tableau import TableauError
from compiler.unopt import UnoptRecipe, unoptimize
from scripts.bench import (
    DEFAULT_BENCH_PASSES,
    DEFAULT_SAMPLES,
    BenchReport,
    SampleResult,
    run_bench,
    store_duckdb,
    write_csv,
    write_summary_json,
)
from validators.equivalence import DEFAULT_SAMPLES as DEFAULT_EQUIV_STATES
from validators.equivalence import DEFAULT_TOL, METHODS, EquivalenceError, check_equiv, render_report_md


# -------------------------------------------------
# 환경 설정 (.env)
# -------------------------------------------------
PROJECT_ROOT = Path(__file__).resolve().parents[1]
load_dotenv(PROJECT_ROOT / ".env")

DATA_DIR = Path(os.getenv("MCR_DATA_DIR", "data"))
BENCH_WORKERS = int(os.getenv("MCR_BENCH_WORKERS", "1"))

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_NOT_EQUIVALENT = 3
EXIT_SAMPLING = 4

FORMATS = ("qasm", "qc", "pbc-json")
_EXT_FORMAT = {".qasm": "qasm", ".qc": "qc", ".json": "pbc-json"}
_FORMAT_EXT = {"qasm": ".qasm", "qc": ".qc", "pbc-json": ".json"}

Circuit = GateCircuit | PBCCircuit


class CliUsageError(ValueError):
    """잘못된 플래그 조합 / 값"""
    pass


class CliArgumentParser(argparse.ArgumentParser):
    """argparse 기본 종료 코드(2)는 파싱 오류와 겹치므로 사용법 오류는 1로 종료"""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        print(f"[ERROR] {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# -------------------------------------------------
# 파일 입출력
# -------------------------------------------------
def resolve_format(path: Path, fmt: str | None) -> str:
    if fmt:
        return fmt
    try:
        return _EXT_FORMAT[path.suffix.lower()]
    except KeyError:
        raise CliUsageError(f"확장자로 형식을 알 수 없습니다: {path} (--format 지정 필요)") from None


def load_circuit(path: Path, fmt: str | None = None) -> Circuit:
    fmt = resolve_format(path, fmt)
    if not path.exists():
        raise CliUsageError(f"입력 파일이 없습니다: {path}")
    text = path.read_text(encoding="utf-8")
    if fmt == "qasm":
        return parse_qasm(text)
    if fmt == "pbc-json":
        return pbc_from_json(text)
    raise CliUsageError("qc 형식은 출력 전용입니다")


def as_pbc(c: Circuit) -> PBCCircuit:
    return c if isinstance(c, PBCCircuit) else gates_to_pbc(c)


def as_gates(c: Circuit) -> GateCircuit:
    return c if isinstance(c, GateCircuit) else pbc_to_gates(c)


def save_circuit(c: Circuit, path: Path, fmt: str | None = None) -> Path:
    fmt = resolve_format(path, fmt)
    if fmt == "qasm":
        text = emit_qasm(as_gates(c))
    elif fmt == "qc":
        text = emit_qc(as_gates(c))
    else:
        text = pbc_to_json(as_pbc(c))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def parse_qubit_range(text: str) -> list[int]:
    """'2..6' / '2,4,6' / '3' -> qubit 수 리스트"""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
            values = list(range(lo, hi + 1))
        else:
            values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"qubit 범위 형식 오류: {text!r}") from None
    if not values or min(values) < 2:
        raise argparse.ArgumentTypeError(f"qubit 수는 2 이상이어야 합니다: {text!r}")
    return values


def parse_passes(text: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in text.split(",") if x.strip())


def optimizer_config(args: argparse.Namespace) -> OptimizerConfig:
    """--passes / --max-rounds / --pair-cap -> OptimizerConfig (값 검증은 OptimizerConfig 가 수행)"""
    return OptimizerConfig(passes=parse_passes(args.passes), max_rounds=args.max_rounds, pair_cap=args.pair_cap)


def _add_optimizer_flags(p: argparse.ArgumentParser, default_passes: str) -> None:
    p.add_argument("--passes", default=default_passes)
    p.add_argument("--max-rounds", type=int, default=DEFAULT_MAX_ROUNDS)
    p.add_argument("--pair-cap", type=int, default=DEFAULT_PAIR_CAP, help="layer 경계당 시도할 회전 쌍 상한")


# -------------------------------------------------
# subcommands
# -------------------------------------------------
def cmd_unopt(args: argparse.Namespace) -> int:
    if args.input is not None:
        u = as_pbc(load_circuit(args.input))
        label = args.input.stem
    else:
        if args.qubits < 2:
            raise CliUsageError(f"MCR unoptimization은 n ≥ 2 가 필요합니다: --qubits {args.qubits}")
        u = default_input(args.qubits)
        label = f"n{args.qubits}"

    fmt = args.format or (resolve_format(args.out, None) if args.out else "qasm")
    out = args.out or DATA_DIR / "unopt" / f"unopt_{label}_s{args.seed}{_FORMAT_EXT[fmt]}"

    recipe = UnoptRecipe(seed=args.seed, iterations=args.iterations, swap_enabled=not args.no_swap)
    print(f"[RUN] unopt n={u.n} seed={args.seed} swap={recipe.swap_enabled}")
    v = unoptimize(u, recipe)

    save_circuit(v, out, fmt)
    print(f"[OK] wrote {out} (t_original={t_count_pbc(u)}, t_unopt={t_count_pbc(v)})")
    if args.recipe_out:
        args.recipe_out.parent.mkdir(parents=True, exist_ok=True)
        args.recipe_out.write_text(recipe.to_json(), encoding="utf-8")
        print(f"[OK] recipe log: {args.recipe_out}")
    return EXIT_OK


def cmd_optimize(args: argparse.Namespace) -> int:
    cfg = optimizer_config(args)
    p = as_pbc(load_circuit(args.input))
    print(f"[RUN] optimize passes={','.join(cfg.passes)} max_rounds={cfg.max_rounds} pair_cap={cfg.pair_cap} n={p.n}")

    out_circuit, report = optimize(p, cfg)
    out = args.out or args.input.with_name(f"{args.input.stem}_opt{args.input.suffix}")
    save_circuit(out_circuit, out, args.format)
    print(
        f"[OK] T-count {report.initial_t} -> {report.final_t} ({report.rounds} rounds, "
        f"clifford={clifford_count(as_gates(out_circuit))}): {out}"
    )

    if args.report:
        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_text(json.dumps(report.to_dict(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
        print(f"[OK] report: {args.report}")
    return EXIT_OK


def cmd_convert(args: argparse.Namespace) -> int:
    c = load_circuit(args.input, args.from_format)
    out = args.out or args.input.with_suffix(_FORMAT_EXT[args.to])
    if out.resolve() == args.input.resolve():
        raise CliUsageError(f"입력과 출력 경로가 같습니다: {out}")
    save_circuit(c, out, args.to)
    gates = as_gates(c)
    print(
        f"[OK] {args.input} -> {out} (n={c.n}, t={t_count(gates)}, clifford={clifford_count(gates)}, "
        f"gates={gate_counts(gates)})"
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    a = load_circuit(args.a)
    b = load_circuit(args.b)
    report = check_equiv(a, b, args.tol, args.method, samples=args.samples, seed=args.seed)

    if args.report:
        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_text(render_report_md(report, str(args.a), str(args.b)), encoding="utf-8")
        print(f"[OK] report: {args.report}")
    if args.json:
        args.json.parent.mkdir(parents=True, exist_ok=True)
        args.json.write_text(report.to_json(), encoding="utf-8")

    if report.equivalent:
        print(f"[OK] equivalent (method={report.method}, deviation={report.max_deviation:.3e})")
        return EXIT_OK
    print(f"[WARN] NOT equivalent (method={report.method}, deviation={report.max_deviation:.3e})")
    return EXIT_NOT_EQUIVALENT


def cmd_bench(args: argparse.Namespace) -> int:
    cfg = optimizer_config(args)
    if args.samples < 1:
        raise CliUsageError(f"--samples 는 1 이상이어야 합니다: {args.samples}")
    if args.workers < 1:
        raise CliUsageError(f"--workers 는 1 이상이어야 합니다: {args.workers}")

    csv_path = args.csv or DATA_DIR / "bench" / "bench.csv"
    json_path = args.json or csv_path.with_suffix(".json")
    swap = not args.no_swap
    print(
        f"[RUN] bench qubits={args.qubits} samples={args.samples} seed={args.seed} "
        f"swap={swap} passes={','.join(cfg.passes)} max_rounds={cfg.max_rounds} pair_cap={cfg.pair_cap} workers={args.workers}"
    )

    sink: list[SampleResult] = []
    try:
        report = run_bench(args.qubits, args.samples, args.seed, swap, cfg, workers=args.workers, sink=sink)
    except BaseException:
        partial = BenchReport(rows=sorted(sink, key=lambda r: (r.n, r.sample)))
        write_csv(partial, csv_path)
        print(f"[WARN] bench 중단: 부분 결과 {len(sink)} rows -> {csv_path}", file=sys.stderr)
        raise

    for row in report.summary().to_dict(orient="records"):
        print(
            f"[OK] n={int(row['n'])} t_unopt={row['t_unopt_mean']:.2f}±{row['t_unopt_std']:.2f} "
            f"t_opt={row['t_opt_mean']:.2f} p={row['p_mean']:.4f}"
        )

    write_csv(report, csv_path)
    write_summary_json(report, json_path)
    print(f"[OK] csv: {csv_path}")
    print(f"[OK] summary: {json_path}")

    if args.duckdb:
        run_key = args.run_key or f"seed{args.seed}_n{min(args.qubits)}-{max(args.qubits)}_{'swap' if swap else 'noswap'}"
        stored = store_duckdb(report, args.duckdb, run_key)
        print(f"[OK] duckdb {args.duckdb} run_key={run_key} rows={stored}")
    else:
        print("[SKIP] duckdb store (--duckdb 미지정)")
    return EXIT_OK


def cmd_count_mcr(args: argparse.Namespace) -> int:
    total = count_quadruples(args.qubits)
    print(total)
    if not args.enumerate:
        return EXIT_OK

    found = len(enumerate_quadruples(args.qubits))
    if found != total:
        print(f"[ERROR] 전수 열거 {found} != 공식 {total}", file=sys.stderr)
        return EXIT_NOT_EQUIVALENT
    print(f"[OK] enumeration agrees: {found}")
    return EXIT_OK


# -------------------------------------------------
# parser
# -------------------------------------------------
def build_parser() -> CliArgumentParser:
    parser = CliArgumentParser(prog="mcr_cli", description="MCR unoptimization / T-count benchmark toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("unopt", help="unoptimized benchmark 회로 생성")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--qubits", type=int)
    src.add_argument("--in", dest="input", type=Path, help="입력 회로 (qasm / pbc-json)")
    p.add_argument("--iterations", type=int, default=None, help="기본 n²")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-swap", action="store_true")
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--recipe-out", type=Path, default=None, help="step 기록 JSON (replay 용)")
    p.set_defaults(func=cmd_unopt)

    p = sub.add_parser("optimize", help="내부 T-count optimizer 실행")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--format", choices=FORMATS, default=None)
    _add_optimizer_flags(p, "mcr_swap,merge")
    p.add_argument("--report", type=Path, default=None, help="OptimizationReport JSON")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("convert", help="회로 형식 변환")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--from", dest="from_format", choices=FORMATS, default=None)
    p.add_argument("--to", choices=FORMATS, required=True)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("verify", help="두 회로의 동치 검사")
    p.add_argument("--a", type=Path, required=True)
    p.add_argument("--b", type=Path, required=True)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--samples", type=int, default=DEFAULT_EQUIV_STATES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", type=Path, default=None, help="markdown 리포트 경로")
    p.add_argument("--json", type=Path, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="unopt -> optimize benchmark")
    p.add_argument("--qubits", type=parse_qubit_range, required=True, help="예: 2..6 / 2,4 / 3")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=0)
    _add_optimizer_flags(p, ",".join(DEFAULT_BENCH_PASSES))
    p.add_argument("--no-swap", action="store_true")
    p.add_argument("--csv", type=Path, default=None)
    p.add_argument("--json", type=Path, default=None)
    p.add_argument("--duckdb", type=Path, default=None)
    p.add_argument("--run-key", default=None)
    p.add_argument("--workers", type=int, default=BENCH_WORKERS)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("count-mcr", help="MCR quadruple 개수")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--enumerate", action="store_true", help="n ≤ 2 전수 열거로 확인")
    p.set_defaults(func=cmd_count_mcr)

    return parser


# -------------------------------------------------
# 메인
# -------------------------------------------------
def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        return args.func(args)
    except (QasmParseError, PauliError, TableauError, CircuitError, ValidationError) as e:
        print(f"[ERROR] 입력 오류: {e}", file=sys.stderr)
        return EXIT_PARSE
    except EquivalenceError as e:
        # 두 파일 모두 정상 파싱됨. qubit 수 불일치 / dense 상한 초과는 사용법 오류
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_USAGE
    except SamplingError as e:
        print(f"[ERROR] 샘플링 한도 초과: {e}", file=sys.stderr)
        return EXIT_SAMPLING
    except (CliUsageError, ValueError) as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_USAGE


# -------------------------------------------------
# Entry Point
# -------------------------------------------------
if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""해상 하이브리드 마이크로그리드 사이징 메인 실행 파일"""

import os
import sys
from pathlib import Path

# 프로젝트 루트를 path에 추가
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))
sys.path.insert(0, str(project_root / "src"))

import argparse
import json
from typing import List, Optional, Tuple

from dotenv import load_dotenv

from errors import ConfigError, FormatError, OhresError
from ingest import DatasetFetcher, save_profiles
from model import (
    SizingScenario, SizingSolution, assemble_milp, describe, validate_solution,
)
from report import FORMATS, Report, ReportPublisher, diagnose_infeasibility, format_comparison
from scenario_file import ScenarioFile, build_dataset_profiles, load_scenario, to_sizing_scenario
from solver import INFEASIBLE, SolverOptions, brute_force_oracle, relative_gap, solve_milp


EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INFEASIBLE = 2
EXIT_INVALID = 3
EXIT_LIMIT = 4

DEFAULT_SCENARIO = project_root / "config" / "base_case.yaml"
ORACLE_TOLERANCE = 1e-6


def resolve_scenario_path(value: Optional[str]) -> Path:
    """--scenario > OHRES_SCENARIO > 기본 시나리오"""
    return Path(value or os.getenv("OHRES_SCENARIO") or DEFAULT_SCENARIO)


def resolve_output_dir(scenario: ScenarioFile, out: Optional[str]) -> Path:
    """--out > OHRES_OUTPUT_DIR > 시나리오 output.dir"""
    if out:
        return Path(out)
    if os.getenv("OHRES_OUTPUT_DIR"):
        return Path(os.environ["OHRES_OUTPUT_DIR"])
    return scenario.output_dir


def cmd_profiles(scenario: ScenarioFile, out: Optional[str] = None) -> int:
    """원본 데이터 → 대표일 프로파일 문서"""
    profiles = build_dataset_profiles(scenario)
    path = resolve_output_dir(scenario, out) / f"{scenario.name}.profiles.json"
    save_profiles(str(path), profiles)

    print(f"\n{'프로파일':<8} {'평균':>12} {'최대':>12} {'최소 표본':>10}")
    for name, profile in profiles.items():
        print(f"{name:<8} {profile.mean:>12,.3f} {profile.peak:>12,.3f} {min(profile.sample_counts):>10d}")
    print(f"\n[Profiles] 저장: {path}")
    return EXIT_OK


def _solve(scenario: ScenarioFile, options: SolverOptions) -> Tuple[int, SizingScenario, Optional[SizingSolution], Optional[Report]]:
    """조립 → 풀이 → 검증. (종료 코드, 시나리오, 해, 리포트)"""
    sizing = to_sizing_scenario(scenario)
    problem = assemble_milp(sizing)
    print(f"[Model] {describe(problem, sizing.horizon)}")

    result = solve_milp(problem, options)
    if result.status == INFEASIBLE:
        print("[Solve] 실행가능한 해가 없음")
        for line in diagnose_infeasibility(sizing):
            print(f"  - {line}")
        return EXIT_INFEASIBLE, sizing, None, None
    if not result.has_incumbent:
        print(f"[Solve] {result.status}: 한도 내 정수해를 찾지 못함 ({result.message})")
        return EXIT_LIMIT, sizing, None, None

    solution = SizingSolution.from_result(problem, result)
    validation = validate_solution(sizing, solution)
    print(validation.format_text())
    if not validation.ok:
        print("[Solve] 검증 실패: 리포트를 만들지 않음")
        return EXIT_INVALID, sizing, solution, None

    report = Report.build(sizing, solution, validation)
    code = EXIT_OK if result.optimal else EXIT_LIMIT
    if code != EXIT_OK:
        print(f"[Solve] {result.status}: gap {result.gap:.2e} > {options.gap:.0e}, 최선해 보고")
    return code, sizing, solution, report


def cmd_solve(scenario: ScenarioFile, out: Optional[str] = None, fmt: str = "text",
              gap: Optional[float] = None, node_limit: Optional[int] = None) -> int:
    """사이징 MILP 풀이 후 검증된 해와 리포트 저장"""
    options = scenario.solver.with_overrides(gap=gap, node_limit=node_limit)
    code, _, solution, report = _solve(scenario, options)
    if report is None:
        return code

    ReportPublisher(resolve_output_dir(scenario, out)).publish(scenario.name, report, solution, fmt)
    if fmt == "text":
        print(report.to_text())
    return code


def cmd_check(scenario: ScenarioFile, solution_path: str) -> int:
    """해 문서를 시나리오 제약으로 재검증"""
    path = Path(solution_path)
    if not path.exists():
        raise ConfigError(f"해 문서가 없음: {path}")
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except ValueError as e:
        raise FormatError(f"JSON 파싱 실패: {e}", path.name)

    sizing = to_sizing_scenario(scenario)
    solution = SizingSolution.from_dict(data)
    validation = validate_solution(sizing, solution)
    print(validation.format_text())
    for check in validation.violations():
        print(f"[Check] 위반: {check.family} ({check.worst_row}) {check.max_violation:.3e}")
    if not validation.objective_ok:
        print(f"[Check] 목적함수 불일치: {validation.objective_discrepancy:,.6f}")
    return EXIT_OK if validation.ok else EXIT_INVALID


def cmd_oracle(scenario: ScenarioFile, gap: Optional[float] = None) -> int:
    """분기한정법과 전수 열거 결과 비교"""
    options = scenario.solver.with_overrides(gap=gap)
    problem = assemble_milp(to_sizing_scenario(scenario))
    oracle = brute_force_oracle(problem, options=options)
    milp = solve_milp(problem, options)

    print(f"\n{'방법':<12} {'상태':<12} {'목적함수':>20}")
    print(f"{'B&B':<12} {milp.status:<12} {milp.objective:>20,.6f}")
    print(f"{'전수 열거':<12} {oracle.status:<12} {oracle.objective:>20,.6f}")

    if (milp.status == INFEASIBLE) != (oracle.status == INFEASIBLE):
        print("[Oracle] 실행가능성 판정 불일치")
        return EXIT_INVALID
    if oracle.status == INFEASIBLE:
        print("[Oracle] 둘 다 실행 불가")
        return EXIT_INFEASIBLE

    difference = relative_gap(max(milp.objective, oracle.objective), min(milp.objective, oracle.objective))
    print(f"상대 차이: {difference:.3e}")
    return EXIT_OK if difference <= ORACLE_TOLERANCE else EXIT_INVALID


def cmd_compare(scenarios: List[ScenarioFile], out: Optional[str] = None) -> int:
    """여러 지역 시나리오를 풀어 비교표 출력"""
    reports = []
    worst = EXIT_OK
    for scenario in scenarios:
        print(f"\n[Compare] {scenario.region or scenario.name}")
        code, _, _, report = _solve(scenario, scenario.solver)
        worst = max(worst, code)
        if report is not None:
            reports.append(report)

    table = format_comparison(reports)
    print("\n" + table)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(table, encoding='utf-8')
        print(f"[Compare] 저장: {path}")
    return worst


def cmd_fetch(args) -> int:
    """NDBC/CO-OPS 원본 파일 다운로드"""
    fetcher = DatasetFetcher()
    dest = args.dest or str(project_root / "data")
    ok = True
    if args.station:
        ok &= fetcher.fetch_ndbc(args.station, args.year, dest) is not None
    if args.currents_station:
        if not (args.begin and args.end):
            raise ConfigError("--currents-station에는 --begin, --end (YYYYMMDD)가 필요함")
        ok &= fetcher.fetch_currents(args.currents_station, args.begin, args.end, dest) is not None
    return EXIT_OK if ok else EXIT_CONFIG


class CliParser(argparse.ArgumentParser):
    """사용법 오류를 설정 오류 종료 코드(1)로 반환"""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: 오류: {message}", file=sys.stderr)
        sys.exit(EXIT_CONFIG)


def create_cli_parser() -> argparse.ArgumentParser:
    parser = CliParser(prog="ohres", description="해상 하이브리드 마이크로그리드 용량 사이징")
    sub = parser.add_subparsers(dest="command", parser_class=CliParser)
    sub.required = True

    common = CliParser(add_help=False)
    common.add_argument("--scenario", help="시나리오 파일 (YAML/JSON)")
    common.add_argument("--out", help="출력 디렉토리")

    solver = CliParser(add_help=False)
    solver.add_argument("--gap", type=float, help="상대 gap 허용치")
    solver.add_argument("--node-limit", type=int, help="노드 한도")

    sub.add_parser("profiles", parents=[common], help="원본 데이터 → 대표일 프로파일")

    solve = sub.add_parser("solve", parents=[common, solver], help="사이징 MILP 풀이")
    solve.add_argument("--format", choices=FORMATS, default="text", help="리포트 형식")

    check = sub.add_parser("check", parents=[common], help="해 문서 검증")
    check.add_argument("solution", help="해 문서 (JSON)")

    sub.add_parser("oracle", parents=[common, solver], help="전수 열거와 비교")

    compare = sub.add_parser("compare", help="지역별 시나리오 비교")
    compare.add_argument("scenarios", nargs="+", help="시나리오 파일들")
    compare.add_argument("--out", help="비교표 저장 경로")

    fetch = sub.add_parser("fetch", help="공개 데이터셋 다운로드")
    fetch.add_argument("--station", help="NDBC 관측소 (예: 46001)")
    fetch.add_argument("--year", type=int, default=2023)
    fetch.add_argument("--currents-station", help="CO-OPS 해류 관측소 (예: ACT4996)")
    fetch.add_argument("--begin", help="시작일 YYYYMMDD")
    fetch.add_argument("--end", help="종료일 YYYYMMDD")
    fetch.add_argument("--dest", help="저장 디렉토리")
    return parser


def run(args) -> int:
    if args.command == "fetch":
        return cmd_fetch(args)
    if args.command == "compare":
        return cmd_compare([load_scenario(p) for p in args.scenarios], args.out)

    scenario = load_scenario(resolve_scenario_path(args.scenario))
    print(f"[Scenario] {scenario.path} ({scenario.region or '지역 미지정'})")
    if args.command == "profiles":
        return cmd_profiles(scenario, args.out)
    if args.command == "solve":
        return cmd_solve(scenario, args.out, args.format, args.gap, args.node_limit)
    if args.command == "check":
        return cmd_check(scenario, args.solution)
    return cmd_oracle(scenario, args.gap)


def main(argv: Optional[List[str]] = None) -> int:
    """메인 실행 함수"""
    # 환경변수 로드
    load_dotenv(project_root / ".env")

    args = create_cli_parser().parse_args(argv)

    print("=" * 50)
    print(f"마이크로그리드 사이징: {args.command}")
    print("=" * 50)

    try:
        code = run(args)
    except OhresError as e:
        print(f"[오류] {e}")
        code = e.exit_code

    print("=" * 50)
    print(f"완료 (종료 코드 {code})")
    print("=" * 50)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""사이징 결과 리포트 (텍스트, JSON, 운전 계획 CSV)"""

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import pytz

from model import SizingScenario, SizingSolution, ValidationReport, cost_breakdown, total_cost
from projection import RESOURCES


FORMATS = ("text", "json", "csv")

RESOURCE_LABELS = {"wec": "WEC", "tec": "TEC", "owt": "OWT", "fpv": "FPV", "bess": "BESS"}

DAYS_PER_YEAR = 365


@dataclass
class Report:
    """수량, 비용 내역, LCOE, 시간별 운전 계획, 솔버 진단"""
    region: str
    status: str
    counts: Dict[str, int]
    e_bess: float
    breakdown: Dict[str, float]
    total: float
    lcoe_per_mwh: Optional[float]
    energy_share: Dict[str, float]
    dispatch: List[Dict[str, float]]
    diagnostics: Dict[str, float] = field(default_factory=dict)
    validation: Optional[Dict] = None

    @classmethod
    def build(cls, scenario: SizingScenario, solution: SizingSolution,
              validation: Optional[ValidationReport] = None) -> "Report":
        breakdown = cost_breakdown(scenario.costs, solution.counts, solution.e_bess)
        daily_load = math.fsum(scenario.load)
        lifetime_mwh = daily_load * DAYS_PER_YEAR * scenario.costs.lifetime_years / 1000.0
        lcoe = solution.objective / lifetime_mwh if lifetime_mwh > 0 else None

        produced = {r: solution.counts[r] * math.fsum(scenario.generation[r]) for r in RESOURCES}
        total_produced = math.fsum(produced.values())
        share = {r: (v / total_produced if total_produced > 0 else 0.0) for r, v in produced.items()}

        dispatch = []
        for t in range(scenario.horizon):
            row = {"t": t, "load": scenario.load[t]}
            for r in RESOURCES:
                row[r] = solution.counts[r] * scenario.generation[r][t]
            row.update({
                "charge": solution.p_charge[t],
                "discharge": solution.p_discharge[t],
                "curtail": solution.p_curtail[t],
                "energy": solution.energy[t],
                "soc": solution.energy[t] / solution.e_bess if solution.e_bess > 0 else 0.0,
            })
            dispatch.append(row)

        return cls(
            region=scenario.region,
            status=solution.status,
            counts=dict(solution.counts),
            e_bess=solution.e_bess,
            breakdown=breakdown,
            total=solution.objective,
            lcoe_per_mwh=lcoe,
            energy_share=share,
            dispatch=dispatch,
            diagnostics=dict(solution.diagnostics),
            validation=validation.to_dict() if validation is not None else None,
        )

    @property
    def breakdown_discrepancy(self) -> float:
        """비용 내역 합과 총비용의 상대 차이"""
        return abs(total_cost(self.breakdown) - self.total) / max(abs(self.total), 1.0)

    def to_dict(self) -> Dict:
        return {
            "region": self.region,
            "status": self.status,
            "counts": self.counts,
            "e_bess": self.e_bess,
            "total_cost": self.total,
            "breakdown": self.breakdown,
            "lcoe_per_mwh": self.lcoe_per_mwh,
            "energy_share": self.energy_share,
            "diagnostics": self.diagnostics,
            "validation": self.validation,
            "dispatch": self.dispatch,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        buffer = io.StringIO()
        columns = ["t", "load"] + list(RESOURCES) + ["charge", "discharge", "curtail", "energy", "soc"]
        writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in self.dispatch:
            writer.writerow(row)
        return buffer.getvalue()

    def to_text(self, generated_at: Optional[datetime] = None) -> str:
        now = generated_at or datetime.now(pytz.utc)
        lines = [
            "=" * 60,
            f"해상 하이브리드 마이크로그리드 사이징 리포트 | {now.strftime('%Y-%m-%d %H:%M')} UTC",
            "=" * 60,
        ]
        if self.region:
            lines.append(f"지역: {self.region}")
        lines.append(f"상태: {self.status}")
        lines.append("")
        lines.append(f"{'서브시스템':<8} {'수량':>12} {'수명주기 비용 ($)':>22}")
        for r in RESOURCES:
            lines.append(f"{RESOURCE_LABELS[r]:<8} {self.counts[r]:>12,d} {self.breakdown[r]:>22,.2f}")
        lines.append(f"{'BESS':<8} {self.e_bess:>10,.1f}kWh {self.breakdown['bess']:>22,.2f}")
        lines.append(f"{'합계':<8} {'':>12} {self.total:>22,.2f}  ({self.total / 1e6:,.1f} M$)")
        if self.lcoe_per_mwh is not None:
            lines.append(f"LCOE: {self.lcoe_per_mwh:,.2f} $/MWh")
        shares = ", ".join(f"{RESOURCE_LABELS[r]} {v:.1%}" for r, v in self.energy_share.items() if v > 0)
        if shares:
            lines.append(f"대표일 발전 비중: {shares}")

        if self.diagnostics:
            diag = self.diagnostics
            lines.append("")
            lines.append(f"솔버: 노드 {diag.get('nodes', 0)}, 피벗 {diag.get('lp_iterations', 0)}, "
                         f"gap {diag.get('gap', 0.0):.2e}, 루트 하한 {diag.get('root_bound', math.nan):,.2f}")

        lines.append("")
        header = f"{'t':>3} {'부하':>10}" + "".join(f" {RESOURCE_LABELS[r]:>10}" for r in RESOURCES) \
            + f" {'충전':>9} {'방전':>9} {'잉여':>9} {'SOC':>6}"
        lines.append(header)
        for row in self.dispatch:
            lines.append(
                f"{row['t']:>3} {row['load']:>10,.1f}"
                + "".join(f" {row[r]:>10,.1f}" for r in RESOURCES)
                + f" {row['charge']:>9,.1f} {row['discharge']:>9,.1f} {row['curtail']:>9,.1f} {row['soc']:>6.1%}"
            )
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_text()


class ReportPublisher:
    """해 문서와 리포트를 출력 디렉토리에 저장"""

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)

    def publish(self, name: str, report: Report, solution: SizingSolution, fmt: str = "text") -> Dict[str, Path]:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        written = {}

        solution_path = self.output_dir / f"{name}.solution.json"
        solution_path.write_text(solution_document(solution), encoding='utf-8')
        written["solution"] = solution_path

        suffix = {"text": "txt", "json": "json", "csv": "csv"}[fmt]
        report_path = self.output_dir / f"{name}.report.{suffix}"
        report_path.write_text(report.render(fmt), encoding='utf-8')
        written["report"] = report_path

        if fmt != "csv":
            dispatch_path = self.output_dir / f"{name}.dispatch.csv"
            dispatch_path.write_text(report.to_csv(), encoding='utf-8')
            written["dispatch"] = dispatch_path

        for label, path in written.items():
            print(f"[Publisher] {label} 저장: {path}")
        return written


def solution_document(solution: SizingSolution) -> str:
    """시각 정보 없는 해 문서 (같은 입력이면 바이트 단위로 같음)"""
    return json.dumps(solution.to_dict(), indent=2) + "\n"


def format_comparison(rows: Sequence[Report]) -> str:
    """지역별 총비용(M$)과 자원 수량 비교표"""
    header = f"{'지역':<16} {'총비용 (M$)':>12} {'WEC':>6} {'TEC':>6} {'OWT':>6} {'FPV':>10} {'BESS (kWh)':>12}"
    lines = [header, "-" * len(header)]
    for report in rows:
        lines.append(
            f"{report.region or '-':<16} {report.total / 1e6:>12,.1f} "
            f"{report.counts['wec']:>6d} {report.counts['tec']:>6d} {report.counts['owt']:>6d} "
            f"{report.counts['fpv']:>10,d} {report.e_bess:>12,.0f}"
        )
    return "\n".join(lines) + "\n"


def diagnose_infeasibility(scenario: SizingScenario) -> List[str]:
    """수량 상한에서 최대 공급으로도 부하를 못 맞추는 시간대"""
    messages = []
    bare = scenario.max_supply(with_storage=False)
    stored = scenario.max_supply(with_storage=True)
    for t, load in enumerate(scenario.load):
        if load > stored[t] + 1e-9:
            messages.append(f"t={t}: 부하 {load:,.1f} kW > 최대 공급 {stored[t]:,.1f} kW (저장 방전 포함)")
        elif load > bare[t] + 1e-9:
            messages.append(f"t={t}: 부하 {load:,.1f} kW > 발전 최대 {bare[t]:,.1f} kW (저장 방전 필요)")
    if not scenario.curtailment:
        messages.append("잉여 전력 처리(curtailment)가 꺼져 있어 발전 과잉 시간도 불능이 될 수 있음")
    return messages

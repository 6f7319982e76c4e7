"""NREL PVWatts 시간별 CSV 파서"""

import csv
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, Iterable, List, Optional

import pytz

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
from errors import ConfigError, FormatError, RowError


HOURS_PER_YEAR = 8760
RATING_TOLERANCE = 0.05

# PVWatts는 윤일 없는 대표 연도(365일)를 사용
REFERENCE_YEAR = 2019

RATING_KEY = "DC System Size (kW)"
AC_COLUMN_HINT = "ac system output"
POA_COLUMN_HINT = "plane of array irradiance"


@dataclass(frozen=True)
class PvRecord:
    """PVWatts 1시간 행 (AC 출력 kW)"""
    month: int
    day: int
    hour: int
    ac_output: float
    system_rating: float
    poa_irradiance: Optional[float] = None

    @property
    def timestamp(self) -> datetime:
        return datetime(REFERENCE_YEAR, self.month, self.day, self.hour, tzinfo=pytz.utc)


@dataclass
class PvwattsFile:
    """파싱 결과 + 메타데이터 + 비치명적 경고"""
    records: List[PvRecord]
    system_rating: float
    metadata: Dict[str, str] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)


class PvwattsParser:
    """메타데이터(key,value) 행 → 헤더 행 → 8760 데이터 행"""

    def __init__(self, system_rating: Optional[float] = None):
        self.system_rating = system_rating

    def _rating(self, metadata: Dict[str, str], source: str) -> float:
        for key, value in metadata.items():
            if key.rstrip(":").strip().lower() == RATING_KEY.lower():
                try:
                    return float(value)
                except ValueError:
                    raise FormatError(f"시스템 정격을 해석할 수 없음: {value!r}", source)
        if self.system_rating is None:
            raise ConfigError(f"{source}: 메타데이터에 시스템 정격이 없음, 설정의 datasets.pv_system_rating 필요")
        return float(self.system_rating)

    def parse(self, stream: Iterable[str], source: str = "") -> PvwattsFile:
        reader = csv.reader(stream)
        metadata: Dict[str, str] = {}
        header: Optional[List[str]] = None
        rating = 0.0
        i_ac = i_poa = None
        records: List[PvRecord] = []
        warnings: List[str] = []
        clamped = 0

        for row in reader:
            line_number = reader.line_num
            if not row or not any(cell.strip() for cell in row):
                continue

            if header is None:
                if row[0].strip().lower() == "month":
                    header = [h.strip() for h in row]
                    lowered = [h.lower() for h in header]
                    i_ac = next((i for i, h in enumerate(lowered) if AC_COLUMN_HINT in h), None)
                    if i_ac is None:
                        raise FormatError("AC 출력 컬럼(AC System Output (W))이 없음", source)
                    i_poa = next((i for i, h in enumerate(lowered) if POA_COLUMN_HINT in h), None)
                    rating = self._rating(metadata, source)
                elif len(row) >= 2:
                    metadata[row[0].strip()] = row[1].strip()
                continue

            if row[0].strip().lower().startswith("total"):
                continue
            if len(row) < len(header):
                raise RowError(f"컬럼 수 부족: {len(row)}개 (헤더 {len(header)}개)", line_number, source)

            try:
                month, day, hour = (int(row[i]) for i in range(3))
                ac_kw = float(row[i_ac]) / 1000.0
                poa = float(row[i_poa]) if i_poa is not None else None
            except ValueError:
                raise RowError(f"숫자가 아닌 값: {', '.join(row[:3])} / {row[i_ac]!r}", line_number, source)

            if ac_kw < 0:
                # 인버터 야간 소비전력
                ac_kw = 0.0
                clamped += 1
            if ac_kw > rating * (1 + RATING_TOLERANCE):
                raise RowError(f"AC 출력 {ac_kw:.3f} kW가 정격 {rating} kW를 초과", line_number, source)

            records.append(PvRecord(month=month, day=day, hour=hour, ac_output=ac_kw,
                                    system_rating=rating, poa_irradiance=poa))

        if header is None:
            raise FormatError("헤더 행(Month, Day, Hour, ...)이 없음", source)
        if clamped:
            warnings.append(f"음수 AC 출력 {clamped}행을 0으로 보정")
        if len(records) != HOURS_PER_YEAR:
            warnings.append(f"데이터 행 수 {len(records)} ≠ {HOURS_PER_YEAR}")

        return PvwattsFile(records=records, system_rating=rating, metadata=metadata, warnings=warnings)


def format_pvwatts(data: PvwattsFile) -> str:
    """PVWatts CSV 레이아웃으로 직렬화 (AC 출력은 W)"""
    lines = []
    metadata = dict(data.metadata)
    if not any(k.rstrip(":").strip().lower() == RATING_KEY.lower() for k in metadata):
        metadata[f"{RATING_KEY}:"] = repr(data.system_rating)
    for key, value in metadata.items():
        lines.append(f'"{key}","{value}"')

    with_poa = any(r.poa_irradiance is not None for r in data.records)
    header = ['"Month"', '"Day"', '"Hour"']
    if with_poa:
        header.append('"Plane of Array Irradiance (W/m^2)"')
    header.append('"AC System Output (W)"')
    lines.append(",".join(header))

    for r in data.records:
        cells = [str(r.month), str(r.day), str(r.hour)]
        if with_poa:
            cells.append(repr(r.poa_irradiance if r.poa_irradiance is not None else 0.0))
        cells.append(repr(r.ac_output * 1000.0))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def parse_pvwatts(stream: Iterable[str], system_rating: Optional[float] = None,
                  source: str = "") -> PvwattsFile:
    return PvwattsParser(system_rating).parse(stream, source)


def read_pvwatts(path: str, system_rating: Optional[float] = None) -> PvwattsFile:
    """PVWatts CSV 파일 읽기"""
    with open(path, 'r', encoding='utf-8', newline='') as f:
        data = parse_pvwatts(f, system_rating, source=os.path.basename(path))
    for warning in data.warnings:
        print(f"[PVWatts] 경고: {warning}")
    print(f"[PVWatts] {os.path.basename(path)}: {len(data.records)}개 레코드 (정격 {data.system_rating} kW)")
    return data

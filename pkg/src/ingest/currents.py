"""NOAA CO-OPS 조류(currents) CSV 파서"""

import csv
import os
import sys
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Iterable, List, Optional

import pytz

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
from errors import ConfigError, FormatError, RowError


class SpeedUnit(str, Enum):
    KNOTS = "knots"
    CM_PER_S = "cm_per_s"
    M_PER_S = "m_per_s"

    @classmethod
    def parse(cls, flag) -> "SpeedUnit":
        if isinstance(flag, SpeedUnit):
            return flag
        try:
            return cls(str(flag).strip().lower())
        except ValueError:
            choices = ", ".join(u.value for u in cls)
            raise ConfigError(f"알 수 없는 유속 단위: {flag!r} (가능: {choices})")


# 원본 단위 → m/s
TO_M_PER_S = {
    SpeedUnit.KNOTS: 0.514444,
    SpeedUnit.CM_PER_S: 0.01,
    SpeedUnit.M_PER_S: 1.0,
}

UNIT_LABELS = {
    SpeedUnit.KNOTS: "knots",
    SpeedUnit.CM_PER_S: "cm/s",
    SpeedUnit.M_PER_S: "m/s",
}

TIMESTAMP_FORMATS = ("%Y-%m-%d %H:%M", "%Y-%m-%d %H:%M:%S", "%Y/%m/%d %H:%M", "%m/%d/%Y %H:%M")


@dataclass(frozen=True)
class CurrentRecord:
    """조류 관측 1행 (유속 m/s)"""
    timestamp: datetime
    speed: float
    direction: float


def _find_column(header: List[str], keywords, source: str) -> int:
    lowered = [h.strip().lower() for h in header]
    for i, name in enumerate(lowered):
        if any(k in name for k in keywords):
            return i
    raise FormatError(f"컬럼을 찾을 수 없음: {'/'.join(keywords)} (헤더: {', '.join(header)})", source)


def _parse_timestamp(text: str, tz, line_number: int, source: str) -> datetime:
    text = text.strip()
    for fmt in TIMESTAMP_FORMATS:
        try:
            return tz.localize(datetime.strptime(text, fmt))
        except ValueError:
            continue
    raise RowError(f"날짜/시간을 해석할 수 없음: {text!r}", line_number, source)


class CurrentsParser:
    """헤더가 있는 CSV (date-time, speed, direction) 파싱"""

    def __init__(self, speed_unit="knots", timezone: str = "UTC"):
        self.unit = SpeedUnit.parse(speed_unit)
        try:
            self.tz = pytz.timezone(timezone)
        except pytz.UnknownTimeZoneError:
            raise ConfigError(f"알 수 없는 시간대: {timezone!r}")

    def parse(self, stream: Iterable[str], source: str = "") -> List[CurrentRecord]:
        reader = csv.reader(stream)
        header: Optional[List[str]] = None
        factor = TO_M_PER_S[self.unit]
        records = []

        for row in reader:
            line_number = reader.line_num
            if not row or not any(cell.strip() for cell in row):
                continue
            if header is None:
                header = row
                i_time = _find_column(header, ("date", "time"), source)
                i_speed = _find_column(header, ("speed", "spd", "velocity"), source)
                i_dir = _find_column(header, ("dir",), source)
                continue

            if len(row) < len(header):
                raise RowError(f"컬럼 수 부족: {len(row)}개 (헤더 {len(header)}개)", line_number, source)

            timestamp = _parse_timestamp(row[i_time], self.tz, line_number, source)
            try:
                speed = float(row[i_speed]) * factor
                direction = float(row[i_dir]) % 360.0
            except ValueError:
                raise RowError(f"유속/방향 값이 숫자가 아님: {row[i_speed]!r}, {row[i_dir]!r}", line_number, source)
            if speed < 0:
                raise RowError(f"유속은 음수일 수 없음: {row[i_speed]}", line_number, source)

            records.append(CurrentRecord(timestamp=timestamp, speed=speed, direction=direction))

        if header is None:
            raise FormatError("빈 파일", source)
        return records


def format_currents(records: Iterable[CurrentRecord], speed_unit="m_per_s") -> str:
    """레코드를 CO-OPS CSV 레이아웃으로 직렬화"""
    unit = SpeedUnit.parse(speed_unit)
    factor = TO_M_PER_S[unit]
    lines = [f"Date Time, Speed ({UNIT_LABELS[unit]}), Dir (true)"]
    for record in records:
        lines.append(
            f"{record.timestamp.strftime('%Y-%m-%d %H:%M')}, {record.speed / factor!r}, {record.direction!r}"
        )
    return "\n".join(lines) + "\n"


def parse_currents(stream: Iterable[str], speed_unit="knots", timezone: str = "UTC",
                   source: str = "") -> List[CurrentRecord]:
    return CurrentsParser(speed_unit, timezone).parse(stream, source)


def read_currents(path: str, speed_unit="knots", timezone: str = "UTC") -> List[CurrentRecord]:
    """조류 CSV 파일 읽기"""
    with open(path, 'r', encoding='utf-8', newline='') as f:
        records = parse_currents(f, speed_unit, timezone, source=os.path.basename(path))
    print(f"[Currents] {os.path.basename(path)}: {len(records)}개 레코드 ({SpeedUnit.parse(speed_unit).value})")
    return records

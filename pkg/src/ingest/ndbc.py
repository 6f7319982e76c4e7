"""NDBC 표준 기상(stdmet) 히스토리 파일 파서"""

import os
import sys
from dataclasses import dataclass
from datetime import datetime
from typing import Dict, Iterable, List, Optional, Tuple

import pytz

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
from errors import FormatError, ParameterError, RowError


# 헤더 이름 → (레코드 필드, 결측 센티널)
CHANNELS: Dict[str, Tuple[str, float]] = {
    "WDIR": ("wind_direction", 999.0),
    "WSPD": ("wind_speed", 99.0),
    "GST": ("gust_speed", 99.0),
    "WVHT": ("sig_wave_height", 99.0),
    "DPD": ("dominant_wave_period", 99.0),
    "APD": ("average_wave_period", 99.0),
    "MWD": ("wave_direction", 999.0),
    "PRES": ("pressure", 9999.0),
    "ATMP": ("air_temperature", 999.0),
    "WTMP": ("water_temperature", 999.0),
    "DEWP": ("dewpoint", 999.0),
    "VIS": ("visibility", 99.0),
    "PTDY": ("pressure_tendency", 99.0),
    "TIDE": ("tide", 99.0),
}

UNITS = {
    "WDIR": "degT", "WSPD": "m/s", "GST": "m/s", "WVHT": "m", "DPD": "sec",
    "APD": "sec", "MWD": "degT", "PRES": "hPa", "ATMP": "degC", "WTMP": "degC",
    "DEWP": "degC", "VIS": "nmi", "PTDY": "hPa", "TIDE": "ft",
}

# 구형 파일 헤더 별칭
ALIASES = {"WD": "WDIR", "BAR": "PRES"}
YEAR_NAMES = ("YY", "YYYY", "YEAR")

DATE_COLUMNS = ("YY", "MM", "DD", "hh")
DEFAULT_COLUMNS = list(DATE_COLUMNS) + ["mm"] + list(CHANNELS)

# 실시간 파일의 결측 표기
MISSING_TOKEN = "MM"

WAVE_PERIOD_FIELDS = {"DPD": "dominant_wave_period", "APD": "average_wave_period"}


@dataclass(frozen=True)
class MeteoRecord:
    """NDBC 관측 1행 (결측 채널은 None)"""
    timestamp: datetime
    wind_speed: Optional[float] = None
    gust_speed: Optional[float] = None
    sig_wave_height: Optional[float] = None
    dominant_wave_period: Optional[float] = None
    average_wave_period: Optional[float] = None
    wind_direction: Optional[float] = None
    wave_direction: Optional[float] = None
    pressure: Optional[float] = None
    air_temperature: Optional[float] = None
    water_temperature: Optional[float] = None
    dewpoint: Optional[float] = None
    visibility: Optional[float] = None
    pressure_tendency: Optional[float] = None
    tide: Optional[float] = None

    def __post_init__(self):
        if self.wind_speed is not None and self.wind_speed < 0:
            raise ParameterError(f"풍속은 음수일 수 없음: {self.wind_speed}")
        if self.sig_wave_height is not None and self.sig_wave_height < 0:
            raise ParameterError(f"유의파고는 음수일 수 없음: {self.sig_wave_height}")

    def channel(self, name: str) -> Optional[float]:
        """헤더 이름(WSPD 등)으로 채널 값 조회"""
        return getattr(self, CHANNELS[ALIASES.get(name, name)][0])


@dataclass(frozen=True)
class _Layout:
    columns: Tuple[str, ...]
    has_minute: bool


class NdbcParser:
    """NDBC stdmet 텍스트를 MeteoRecord 리스트로 변환"""

    REQUIRED = ("WSPD", "WVHT")

    def _read_header(self, tokens: List[str], line_number: int, source: str) -> _Layout:
        columns = []
        for token in tokens:
            name = token.lstrip("#")
            if name.upper() in YEAR_NAMES:
                name = "YY"
            columns.append(ALIASES.get(name, name))

        if tuple(columns[:4]) != DATE_COLUMNS:
            raise RowError(f"날짜 컬럼을 인식할 수 없음: {' '.join(tokens[:5])}", line_number, source)
        has_minute = len(columns) > 4 and columns[4] == "mm"

        missing = [c for c in self.REQUIRED if c not in columns]
        if "DPD" not in columns and "APD" not in columns:
            missing.append("DPD|APD")
        if missing:
            raise FormatError(f"필수 채널 누락: {', '.join(missing)}", source)
        return _Layout(tuple(columns), has_minute)

    def _parse_value(self, column: str, token: str, line_number: int, source: str) -> Optional[float]:
        if token == MISSING_TOKEN:
            return None
        try:
            value = float(token)
        except ValueError:
            raise RowError(f"{column} 값이 숫자가 아님: {token!r}", line_number, source)
        if value == CHANNELS[column][1]:
            return None
        return value

    def _parse_row(self, tokens: List[str], layout: _Layout, line_number: int, source: str) -> MeteoRecord:
        if len(tokens) != len(layout.columns):
            raise RowError(
                f"컬럼 수 불일치: {len(tokens)}개 (헤더 {len(layout.columns)}개)", line_number, source
            )

        n_date = 5 if layout.has_minute else 4
        try:
            parts = [int(t) for t in tokens[:n_date]]
        except ValueError:
            raise RowError(f"날짜 값이 정수가 아님: {' '.join(tokens[:n_date])}", line_number, source)
        year = parts[0] + 1900 if parts[0] < 100 else parts[0]
        minute = parts[4] if layout.has_minute else 0
        try:
            timestamp = datetime(year, parts[1], parts[2], parts[3], minute, tzinfo=pytz.utc)
        except ValueError as e:
            raise RowError(f"잘못된 날짜: {e}", line_number, source)

        values = {}
        for column, token in zip(layout.columns[n_date:], tokens[n_date:]):
            if column not in CHANNELS:
                continue  # 관측소별 추가 컬럼
            values[CHANNELS[column][0]] = self._parse_value(column, token, line_number, source)

        try:
            return MeteoRecord(timestamp=timestamp, **values)
        except ParameterError as e:
            raise RowError(str(e), line_number, source)

    def parse(self, stream: Iterable[str], source: str = "") -> List[MeteoRecord]:
        """헤더(최대 2줄, '#' 시작) + 공백 구분 데이터 행 파싱"""
        layout: Optional[_Layout] = None
        header_seen = False
        saw_content = False
        records = []

        for line_number, raw in enumerate(stream, 1):
            line = raw.strip()
            if not line:
                continue
            saw_content = True

            if line.startswith("#"):
                # 첫 줄은 컬럼명, 둘째 줄은 단위
                if not header_seen:
                    layout = self._read_header(line[1:].split(), line_number, source)
                    header_seen = True
                continue

            tokens = line.split()
            if layout is None and not tokens[0].lstrip("-").isdigit():
                # 주석 없는 구형 헤더
                layout = self._read_header(tokens, line_number, source)
                header_seen = True
                continue
            if layout is None:
                layout = _Layout(tuple(DEFAULT_COLUMNS), True)

            records.append(self._parse_row(tokens, layout, line_number, source))

        if not saw_content:
            raise FormatError("빈 파일", source)
        return records


def format_ndbc(records: Iterable[MeteoRecord]) -> str:
    """레코드를 NDBC stdmet 레이아웃으로 직렬화 (결측은 센티널로 기록)"""
    lines = [
        "#YY  MM DD hh mm " + " ".join(CHANNELS),
        "#yr  mo dy hr mn " + " ".join(UNITS[c] for c in CHANNELS),
    ]
    for record in records:
        ts = record.timestamp
        cells = [f"{ts.year:04d}", f"{ts.month:02d}", f"{ts.day:02d}", f"{ts.hour:02d}", f"{ts.minute:02d}"]
        for column, (field_name, sentinel) in CHANNELS.items():
            value = getattr(record, field_name)
            cells.append(repr(sentinel if value is None else float(value)))
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


def parse_ndbc(stream: Iterable[str], source: str = "") -> List[MeteoRecord]:
    return NdbcParser().parse(stream, source)


def read_ndbc(path: str) -> List[MeteoRecord]:
    """NDBC 파일 읽기"""
    with open(path, 'r', encoding='utf-8') as f:
        records = parse_ndbc(f, source=os.path.basename(path))
    print(f"[NDBC] {os.path.basename(path)}: {len(records)}개 레코드")
    return records

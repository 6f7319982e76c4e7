"""시간 단위 집계와 대표일(typical day) 프로파일

관측치 → 시간별 시계열(HourlySeries) → 시각별 평균 24값(TypicalDayProfile).
결측 시간은 값 None(갭)으로 남기며 보간하지 않는다.
"""

import json
import os
import sys
from dataclasses import dataclass
from datetime import datetime
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
from errors import ConfigError, FormatError, IncompleteProfileError


HOURS_PER_DAY = 24
AGGREGATIONS = ("mean", "last")

FieldSelector = Union[str, Callable[[object], Optional[float]]]


@dataclass(frozen=True)
class HourlySeries:
    """1시간 간격 시계열. 값이 None인 항목은 갭"""
    start: Optional[datetime]
    values: Tuple[Tuple[datetime, Optional[float]], ...] = ()

    def __post_init__(self):
        stamps = [ts for ts, _ in self.values]
        for prev, cur in zip(stamps, stamps[1:]):
            if (cur - prev).total_seconds() != 3600:
                raise ValueError(f"시간 간격이 1시간이 아님: {prev} → {cur}")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def gaps(self) -> Tuple[datetime, ...]:
        return tuple(ts for ts, v in self.values if v is None)

    def to_pandas(self) -> pd.Series:
        if not self.values:
            return pd.Series(dtype=float)
        index = pd.DatetimeIndex([ts for ts, _ in self.values])
        return pd.Series([np.nan if v is None else v for _, v in self.values], index=index, dtype=float)

    @classmethod
    def from_pandas(cls, series: pd.Series) -> "HourlySeries":
        if series.empty:
            return cls(start=None)
        values = tuple(
            (ts.to_pydatetime(), None if pd.isna(v) else float(v))
            for ts, v in series.items()
        )
        return cls(start=values[0][0], values=values)

    def map(self, fn: Callable[[float], float]) -> "HourlySeries":
        """갭은 유지하고 값마다 fn 적용"""
        return HourlySeries(
            start=self.start,
            values=tuple((ts, None if v is None else fn(v)) for ts, v in self.values),
        )


@dataclass(frozen=True)
class TypicalDayProfile:
    """24개 시각별 평균값과 평균에 쓰인 표본 수"""
    hour_values: Tuple[float, ...]
    sample_counts: Tuple[int, ...]

    def __post_init__(self):
        if len(self.hour_values) != HOURS_PER_DAY or len(self.sample_counts) != HOURS_PER_DAY:
            raise ValueError(
                f"대표일 프로파일은 24개 값이어야 함: {len(self.hour_values)}/{len(self.sample_counts)}"
            )

    @classmethod
    def from_values(cls, values: Sequence[float], samples: int = 1) -> "TypicalDayProfile":
        return cls(tuple(float(v) for v in values), tuple([samples] * len(values)))

    @property
    def is_usable(self) -> bool:
        return all(n >= 1 for n in self.sample_counts)

    @property
    def missing_hours(self) -> Tuple[int, ...]:
        return tuple(h for h, n in enumerate(self.sample_counts) if n < 1)

    @property
    def peak(self) -> float:
        return max(self.hour_values)

    @property
    def mean(self) -> float:
        return float(np.mean(self.hour_values))

    def to_dict(self) -> dict:
        return {"hours": list(self.hour_values), "samples": list(self.sample_counts)}

    @classmethod
    def from_dict(cls, data: dict) -> "TypicalDayProfile":
        hours = data["hours"]
        samples = data.get("samples", [1] * len(hours))
        return cls(tuple(float(v) for v in hours), tuple(int(n) for n in samples))


def _selector(field: FieldSelector) -> Callable[[object], Optional[float]]:
    if callable(field):
        return field
    return lambda record: getattr(record, field)


def to_hourly(records: Iterable, field: FieldSelector, aggregation: str = "mean") -> HourlySeries:
    """관측 레코드를 시계 기준 1시간 버킷으로 집계 (관측 없는 시간은 갭)"""
    if aggregation not in AGGREGATIONS:
        raise ConfigError(f"알 수 없는 집계 방식: {aggregation!r} (가능: {', '.join(AGGREGATIONS)})")

    select = _selector(field)
    stamps, values = [], []
    for record in records:
        value = select(record)
        if value is None:
            continue
        stamps.append(record.timestamp)
        values.append(float(value))

    if not stamps:
        return HourlySeries(start=None)

    observed = pd.Series(values, index=pd.DatetimeIndex(stamps), dtype=float)
    hourly = observed.resample("h").agg(aggregation)
    return HourlySeries.from_pandas(hourly)


def typical_day(series: HourlySeries, source: str = "") -> TypicalDayProfile:
    """시각(hour-of-day)별 평균 → 24값 프로파일"""
    gaps = series.gaps
    if gaps:
        print(f"[Hourly] {source or '시계열'}: 결측 {len(gaps)}시간 제외")
    present = series.to_pandas().dropna()
    if present.empty:
        raise IncompleteProfileError(range(HOURS_PER_DAY), source)

    grouped = present.groupby(present.index.hour)
    means = grouped.mean().reindex(range(HOURS_PER_DAY))
    counts = grouped.count().reindex(range(HOURS_PER_DAY), fill_value=0)

    missing = [h for h in range(HOURS_PER_DAY) if counts[h] == 0]
    if missing:
        raise IncompleteProfileError(missing, source)

    return TypicalDayProfile(
        hour_values=tuple(float(v) for v in means),
        sample_counts=tuple(int(n) for n in counts),
    )


def save_profiles(path: str, profiles: Dict[str, TypicalDayProfile]):
    """프로파일 문서 저장: {name: {hours: [...], samples: [...]}}"""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump({name: p.to_dict() for name, p in profiles.items()}, f, indent=2)
        f.write("\n")


def load_profiles(path: str) -> Dict[str, TypicalDayProfile]:
    """프로파일 문서 로드"""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
        return {name: TypicalDayProfile.from_dict(entry) for name, entry in data.items()}
    except (ValueError, KeyError, TypeError) as e:
        raise FormatError(f"프로파일 문서를 읽을 수 없음: {e}", os.path.basename(path))

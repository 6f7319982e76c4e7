"""공개 데이터셋 다운로드 (NDBC stdmet, NOAA CO-OPS currents)

편의용 스크립트. 파서는 디스크의 파일만 읽는다.
"""

import gzip
import os
from pathlib import Path
from typing import Optional

import requests


NDBC_HISTORICAL_URL = "https://www.ndbc.noaa.gov/data/historical/stdmet/{station}h{year}.txt.gz"
COOPS_API_URL = "https://api.tidesandcurrents.noaa.gov/api/prod/datagetter"


class DatasetFetcher:
    """NDBC/CO-OPS 원본 파일을 내려받아 저장"""

    def __init__(self, session: Optional[requests.Session] = None):
        self.session = session or requests.Session()
        self.session.headers.update({
            "User-Agent": "OhresSizing/1.0"
        })

    def fetch_ndbc(self, station: str, year: int, dest_dir: str) -> Optional[Path]:
        """NDBC 연간 stdmet 파일 (gzip) 다운로드 후 압축 해제"""
        url = NDBC_HISTORICAL_URL.format(station=station.lower(), year=year)
        try:
            resp = self.session.get(url, timeout=60)
            resp.raise_for_status()
        except Exception as e:
            print(f"[Fetch] NDBC {station} {year} 다운로드 실패: {e}")
            return None

        content = resp.content
        if content[:2] == b"\x1f\x8b":
            content = gzip.decompress(content)

        path = Path(dest_dir) / f"{station.lower()}h{year}.txt"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(content)
        print(f"[Fetch] NDBC 저장: {path}")
        return path

    def fetch_currents(self, station: str, begin_date: str, end_date: str, dest_dir: str,
                       bin_number: Optional[int] = None) -> Optional[Path]:
        """CO-OPS currents CSV 다운로드 (knots, GMT). 날짜 형식 YYYYMMDD, 요청당 최대 31일"""
        params = {
            "product": "currents",
            "station": station,
            "begin_date": begin_date,
            "end_date": end_date,
            "units": "english",
            "time_zone": "gmt",
            "format": "csv",
            "application": "ohres_sizing",
        }
        if bin_number is not None:
            params["bin"] = bin_number

        try:
            resp = self.session.get(COOPS_API_URL, params=params, timeout=60)
            resp.raise_for_status()
        except Exception as e:
            print(f"[Fetch] CO-OPS {station} 다운로드 실패: {e}")
            return None

        if "error" in resp.text[:200].lower():
            print(f"[Fetch] CO-OPS {station} 응답 오류: {resp.text[:200]}")
            return None

        path = Path(dest_dir) / f"{station}_{begin_date}_{end_date}_currents.csv"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(resp.text, encoding='utf-8')
        print(f"[Fetch] CO-OPS 저장: {path}")
        return path

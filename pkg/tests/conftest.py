import sys
from datetime import datetime, timedelta
from pathlib import Path

import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))
sys.path.insert(0, str(project_root / "src"))

from model import BessParams, CostBook, SizingScenario, SubsystemCost  # noqa: E402


FIXTURES = Path(__file__).parent / "fixtures"


def ndbc_text(hours=48, wspd=8.0, wvht=1.5, dpd=8.0, start=datetime(2023, 1, 1), skip=()):
    """10분이 아닌 1시간 간격 stdmet 파일 (skip 시간은 행 없음)"""
    lines = [
        "#YY  MM DD hh mm WDIR WSPD GST  WVHT   DPD   APD MWD   PRES  ATMP  WTMP  DEWP  VIS PTDY  TIDE",
        "#yr  mo dy hr mn degT m/s  m/s     m   sec   sec degT   hPa  degC  degC  degC  nmi  hPa    ft",
    ]
    for h in range(hours):
        if h in skip:
            continue
        ts = start + timedelta(hours=h)
        lines.append(
            f"{ts.year} {ts.month:02d} {ts.day:02d} {ts.hour:02d} 00 250 {wspd} {wspd + 2} "
            f"{wvht} {dpd} 6.5 240 1012.0 5.0 7.0 999.0 99.0 99.00 99.00"
        )
    return "\n".join(lines) + "\n"


def currents_text(hours=48, speed_knots=2.0, start=datetime(2023, 1, 1), skip=()):
    lines = ["Date Time, Speed (knots), Dir (true)"]
    for h in range(hours):
        if h in skip:
            continue
        ts = start + timedelta(hours=h)
        lines.append(f"{ts.strftime('%Y-%m-%d %H:%M')}, {speed_knots}, 45.0")
    return "\n".join(lines) + "\n"


def pvwatts_text(ac_watts=1000.0, rating=4.0, days=2, extra_rows=()):
    lines = [
        '"Requested Location","offshore"',
        f'"DC System Size (kW):","{rating}"',
        '"Month","Day","Hour","Plane of Array Irradiance (W/m^2)","AC System Output (W)"',
    ]
    for d in range(days):
        for h in range(24):
            lines.append(f"1,{d + 1},{h},500.0,{ac_watts}")
    lines.extend(extra_rows)
    lines.append('"Totals","","","",""')
    return "\n".join(lines) + "\n"


@pytest.fixture
def write_file(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return path
    return _write


def flat_cost(capital: float) -> SubsystemCost:
    """수명주기 비용이 capital과 같은 비용 항목"""
    return SubsystemCost(0.0, capital, 0.0, 0.0)


def toy_scenario(load, generation, unit_costs=None, bess_cost=1.0, storage=True, curtailment=True,
                 bounds=None, p_max=None):
    """소규모 검증용 시나리오 (열화 0, 비용은 capital만)"""
    unit_costs = unit_costs or {}
    costs = CostBook(
        wec=flat_cost(unit_costs.get("wec", 10.0)),
        tec=flat_cost(unit_costs.get("tec", 10.0)),
        owt=flat_cost(unit_costs.get("owt", 10.0)),
        fpv=flat_cost(unit_costs.get("fpv", 10.0)),
        bess=flat_cost(bess_cost),
        bess_degradation=0.0,
        lifetime_years=1.0,
    )
    all_bounds = {"wec": 0, "tec": 0, "owt": 0, "fpv": 0}
    all_bounds.update(bounds or {r: 5 for r in generation})
    bess = BessParams(
        capacity_limit=None if storage else 0.0,
        p_max_charge=p_max,
        p_max_discharge=p_max,
    )
    return SizingScenario(
        load=tuple(load),
        generation={r: tuple(v) for r, v in generation.items()},
        costs=costs,
        bess=bess,
        count_upper_bounds=all_bounds,
        curtailment=curtailment,
    )


@pytest.fixture
def toy_two_hour():
    """부하 100 kW 2시간, 자원 1종 60 kW/대, 저장 없음, 대당 $10"""
    return toy_scenario([100.0, 100.0], {"owt": [60.0, 60.0]}, storage=False)

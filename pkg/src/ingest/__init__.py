from .ndbc import MeteoRecord, NdbcParser, parse_ndbc, read_ndbc, format_ndbc, WAVE_PERIOD_FIELDS
from .currents import CurrentRecord, CurrentsParser, SpeedUnit, parse_currents, read_currents, format_currents
from .pvwatts import PvRecord, PvwattsFile, PvwattsParser, parse_pvwatts, read_pvwatts, format_pvwatts
from .hourly import (
    HourlySeries, TypicalDayProfile, to_hourly, typical_day, save_profiles, load_profiles,
    HOURS_PER_DAY,
)
from .fetch import DatasetFetcher

__all__ = [
    'MeteoRecord', 'NdbcParser', 'parse_ndbc', 'read_ndbc', 'format_ndbc', 'WAVE_PERIOD_FIELDS',
    'CurrentRecord', 'CurrentsParser', 'SpeedUnit', 'parse_currents', 'read_currents', 'format_currents',
    'PvRecord', 'PvwattsFile', 'PvwattsParser', 'parse_pvwatts', 'read_pvwatts', 'format_pvwatts',
    'HourlySeries', 'TypicalDayProfile', 'to_hourly', 'typical_day', 'save_profiles', 'load_profiles',
    'HOURS_PER_DAY',
    'DatasetFetcher',
]

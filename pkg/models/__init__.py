"""SnCharLab data models package."""

from models.asymptotic import AsymptoticReport, GpParams
from models.cache_header import CacheHeader
from models.character import CharColumn, CharTable, CharValue
from models.partition import HookTable, Partition, StripRemoval
from models.report import DensityReport, MomentReport, TrendRow
from models.sampler import SamplerConfig
from models.series import PSeries

__all__ = [
    "Partition",
    "HookTable",
    "StripRemoval",
    "CharValue",
    "CharColumn",
    "CharTable",
    "PSeries",
    "GpParams",
    "AsymptoticReport",
    "SamplerConfig",
    "DensityReport",
    "MomentReport",
    "TrendRow",
    "CacheHeader",
]

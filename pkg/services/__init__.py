"""
SnCharLab Services Package

Computation layer: character tables, exact series, estimators, the
sampler and the experiments built on them.
"""

from services.asymptotic_service import AsymptoticService
from services.character_service import CharacterService
from services.experiment_service import ExperimentService
from services.report_service import ReportService
from services.sampler_service import SamplerService
from services.series_service import SeriesService

__all__ = [
    "AsymptoticService",
    "CharacterService",
    "ExperimentService",
    "ReportService",
    "SamplerService",
    "SeriesService",
]

"""
SnCharLab Test Configuration

Pytest fixtures for testing SnCharLab components.
"""

import io
import shutil
import tempfile
from pathlib import Path
from typing import Generator

import pytest

from app.application import SnCharLabApp
from core.cache import TableCache
from core.config import ConfigManager, LabConfig
from services.asymptotic_service import AsymptoticService
from services.character_service import CharacterService
from services.experiment_service import ExperimentService
from services.report_service import ReportService
from services.sampler_service import SamplerService
from services.series_service import SeriesService


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for testing."""
    temp_path = Path(tempfile.mkdtemp())
    yield temp_path
    # Cleanup
    shutil.rmtree(temp_path, ignore_errors=True)


@pytest.fixture
def lab_config() -> LabConfig:
    """Single-process configuration with progress bars off."""
    return LabConfig(threads=1, show_progress=False)


@pytest.fixture
def config_manager(temp_dir: Path, monkeypatch) -> Generator[ConfigManager, None, None]:
    """Create a config manager rooted in a temporary home folder."""
    def mock_get_local_app_folder():
        return temp_dir / ".sncharlab"

    monkeypatch.delenv("SNCHARLAB_CACHE_DIR", raising=False)
    ConfigManager.reset_instance()

    manager = ConfigManager.get_instance()
    monkeypatch.setattr(ConfigManager, "get_local_app_folder", staticmethod(mock_get_local_app_folder))

    yield manager

    # Cleanup
    ConfigManager.reset_instance()


@pytest.fixture
def table_cache(temp_dir: Path) -> TableCache:
    """Table cache in a temporary folder."""
    return TableCache(temp_dir / "cache")


@pytest.fixture
def series_service() -> SeriesService:
    """Exact series service."""
    return SeriesService()


@pytest.fixture
def asymptotic_service(series_service: SeriesService) -> AsymptoticService:
    """Asymptotic estimator service."""
    return AsymptoticService(series_service)


@pytest.fixture
def character_service(lab_config: LabConfig) -> CharacterService:
    """Character service without a cache."""
    return CharacterService(lab_config)


@pytest.fixture
def sampler_service(
    lab_config: LabConfig, series_service: SeriesService, asymptotic_service: AsymptoticService
) -> SamplerService:
    """Boltzmann sampler service."""
    return SamplerService(lab_config, series_service, asymptotic_service)


@pytest.fixture
def experiment_service(
    lab_config: LabConfig,
    character_service: CharacterService,
    series_service: SeriesService,
    asymptotic_service: AsymptoticService,
    sampler_service: SamplerService,
) -> ExperimentService:
    """Experiment runner wired to the other services."""
    return ExperimentService(
        lab_config, character_service, series_service, asymptotic_service, sampler_service
    )


@pytest.fixture
def report_service() -> ReportService:
    """Report builder and writer."""
    return ReportService()


@pytest.fixture
def app(config_manager: ConfigManager) -> SnCharLabApp:
    """Command-line application writing to in-memory streams."""
    return SnCharLabApp(config_manager, stdout=io.StringIO(), stderr=io.StringIO())

"""
SnCharLab - Symmetric-group character tables and divisibility experiments

Entry point for the command-line application.

Usage:
    python main.py table --n 6
    python main.py density exact --n 10 --mod 2
    python main.py verify lemma22 --max-n 14

For development, ensure you have installed dependencies:
    pip install -r requirements.txt
"""

import logging
import sys

from app.constants import LOG_FILENAME
from core.config import ConfigManager


def setup_logging() -> None:
    """
    Configure logging for the application.

    Log records go to the log file and to stderr; stdout carries report
    data only.
    """
    handlers = [logging.StreamHandler(sys.stderr)]
    try:
        ConfigManager.get_instance().ensure_local_folders()
        log_file = ConfigManager.get_logs_folder() / LOG_FILENAME
        handlers.insert(0, logging.FileHandler(log_file, encoding="utf-8"))
    except OSError:
        # Read-only home: stderr only
        pass

    logging.basicConfig(
        level=logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
    )


def main() -> None:
    """Main entry point for SnCharLab."""
    setup_logging()
    logger = logging.getLogger(__name__)

    from app.application import run

    try:
        sys.exit(run(sys.argv[1:]))
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        sys.exit(130)


if __name__ == "__main__":
    main()

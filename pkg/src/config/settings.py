# src/config/settings.py
import os
import logging
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)


class Settings:
    """Experiment settings loaded from environment variables."""

    # Logging level
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO").upper()

    # Max points enumerated for a single exponential sum S_k
    ENUMERATION_BUDGET: int = int(os.getenv("ENUMERATION_BUDGET", "500000000"))
    WORKER_THREADS: int = int(os.getenv("WORKER_THREADS", "1"))

    # Log/exp tables are built only for fields up to this size
    ZECH_TABLE_LIMIT: int = int(os.getenv("ZECH_TABLE_LIMIT", str(2 ** 24)))

    # Combinatorial guards
    BRUTE_FORCE_LIMIT: int = int(os.getenv("BRUTE_FORCE_LIMIT", "1000000"))
    EXHAUSTIVE_ASSIGNMENT_SIZE: int = int(os.getenv("EXHAUSTIVE_ASSIGNMENT_SIZE", "7"))
    SAMPLE_RETRY_CAP: int = int(os.getenv("SAMPLE_RETRY_CAP", "1000"))

    OUTPUT_DIR: str = os.getenv("OUTPUT_DIR", "reports")
    DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", "20240601"))

    def __init__(self):
        if self.ENUMERATION_BUDGET < 1:
            logger.critical("ENUMERATION_BUDGET must be a positive integer.")
            raise ValueError("ENUMERATION_BUDGET must be a positive integer.")
        if self.WORKER_THREADS < 1:
            logger.critical("WORKER_THREADS must be at least 1.")
            raise ValueError("WORKER_THREADS must be at least 1.")
        if self.EXHAUSTIVE_ASSIGNMENT_SIZE < 1:
            logger.warning("EXHAUSTIVE_ASSIGNMENT_SIZE below 1; every layer goes to the assignment solver.")

        logger.debug("Settings loaded.")
        logger.debug(f"Enumeration budget: {self.ENUMERATION_BUDGET}")
        logger.debug(f"Worker threads: {self.WORKER_THREADS}")
        logger.debug(f"Log Level: {self.LOG_LEVEL}")


# Single instance of settings to be imported by other modules
settings = Settings()

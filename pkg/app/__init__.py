"""
Compound network analysis: service factory and version.
"""

from typing import Optional

from app.config import Config
from app.services.pipeline_service import NetworkPipelineService
from app.utils.logger import get_logger

__version__ = '1.0.0'

logger = get_logger(__name__)

# Global service instance
_pipeline_service = None


def create_service(workers: Optional[int] = None) -> NetworkPipelineService:
    """
    Validate configuration and create the pipeline service.

    Args:
        workers: Thread count; defaults to Config.THREADS

    Returns:
        Configured NetworkPipelineService
    """
    try:
        Config.validate()
        logger.debug("Configuration validated successfully")
    except ValueError as e:
        logger.error(f"Configuration validation failed: {str(e)}")
        raise

    global _pipeline_service
    _pipeline_service = NetworkPipelineService(
        workers=workers or Config.THREADS,
        crand_samples=Config.CRAND_SAMPLES,
        parse_policy=Config.PARSE_POLICY
    )
    return _pipeline_service


def get_service() -> NetworkPipelineService:
    """
    Get global service instance, creating it on first use.

    Returns:
        NetworkPipelineService instance
    """
    if _pipeline_service is None:
        return create_service()
    return _pipeline_service

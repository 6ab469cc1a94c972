"""Shared numerical settings for request handlers."""

from dataclasses import dataclass
from typing import Optional
import logging

from fastapi import Depends

from config import Settings, settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EvaluationContext:
    """Grid size and truncation tolerance applied to a request."""

    grid_k: int
    tail_tol: float
    ratio_floor: float

    def grid_for(self, requested: Optional[int]) -> int:
        """Request override, else the configured grid."""
        if requested is None:
            return self.grid_k
        logger.debug(f"Request overrides grid size {self.grid_k} -> {requested}")
        return requested


def get_settings() -> Settings:
    return settings


def get_context(config: Settings = Depends(get_settings)) -> EvaluationContext:
    """FastAPI dependency that provides the evaluation context.

    Tests override get_settings to change grids without touching the environment.
    """
    return EvaluationContext(
        grid_k=config.grid_k,
        tail_tol=config.tail_tol,
        ratio_floor=config.ratio_floor,
    )

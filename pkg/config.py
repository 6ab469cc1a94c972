"""Application configuration using Pydantic Settings."""

from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import List, Optional


class Settings(BaseSettings):
    """Numerical defaults and server settings with environment variable support."""

    # Environment
    environment: str = "development"

    # Logging
    log_level: str = "INFO"

    # Server configuration
    host: str = "0.0.0.0"
    port: int = 8000

    # CORS origins (comma-separated string or list)
    cors_origins: Optional[str] = None

    # Quadrature and truncation
    grid_k: int = 4096
    tail_tol: float = 1e-12

    # Randomized audits and sweeps
    seed: int = 0
    sweep_mu: float = 4.085
    mixed_mu: float = 4.035
    workers: int = 1

    # mu search
    mu_budget: int = 100_000
    mu_starts: int = 64
    mu_audit_samples: int = 100_000
    mu_sweep_alpha_steps: int = 181
    mu_sweep_beta_steps: int = 64
    ratio_floor: float = 1e-9

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="allow"
    )

    @property
    def cors_origins_list(self) -> List[str]:
        """Parse CORS origins into list."""
        if not self.cors_origins:
            return []
        if isinstance(self.cors_origins, str):
            return [origin.strip() for origin in self.cors_origins.split(",")]
        return self.cors_origins

    def model_post_init(self, __context) -> None:
        """Round the phase grid up to an even size and check the tail tolerance."""
        if self.grid_k % 2:
            self.grid_k += 1
        if not 0.0 < self.tail_tol <= 1e-3:
            raise ValueError(f"tail_tol must lie in (0, 1e-3], got {self.tail_tol}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


# Singleton settings instance
settings = Settings()

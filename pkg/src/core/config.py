"""
Application configuration using Pydantic Settings
"""

from typing import List, Literal, Optional
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings"""

    # Basic app settings
    APP_NAME: str = "Contest Solver"
    VERSION: str = "1.0.0"
    ENVIRONMENT: str = Field(default="development")
    DEBUG: bool = Field(default=False)
    PORT: int = Field(default=8080)
    HOST: str = Field(default="0.0.0.0")
    LOG_LEVEL: str = Field(default="INFO")

    # HTTP service
    ALLOWED_HOSTS: List[str] = Field(default=["*"])

    # Monitoring
    ENABLE_METRICS: bool = Field(default=True)

    # Root finding (threshold effort, symmetric first-order condition)
    ROOT_TOLERANCE: float = Field(default=1e-12, gt=0)
    ROOT_MAX_ITER: int = Field(default=200, gt=0)

    # Classification and comparison tolerances
    KNIFE_EDGE_TOLERANCE: float = Field(default=1e-9, gt=0)
    TIE_TOLERANCE: float = Field(default=1e-12, gt=0)
    MIXED_TOLERANCE: float = Field(default=1e-10, gt=0)
    IDENTITY_TOLERANCE: float = Field(default=1e-9, gt=0)

    # Support enumeration is skipped for larger effort lists
    MIXED_SUPPORT_LIMIT: int = Field(default=16, gt=0)

    # Brute-force oracle
    GRID_STEP: float = Field(default=1e-3, gt=0)
    ORACLE_EPS: Optional[float] = Field(default=None, ge=0)  # 2 * GRID_STEP when unset

    # Asymmetric unconstrained equilibrium iteration
    ASYMMETRIC_MAX_ITER: int = Field(default=10_000, gt=0)
    ASYMMETRIC_DAMPING: float = Field(default=0.5, gt=0, le=1)
    ASYMMETRIC_TOLERANCE: float = Field(default=1e-10, gt=0)

    # Output
    OUTPUT_FORMAT: Literal["text", "json"] = Field(default="text")

    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=True,
        extra="ignore",  # Ignore extra fields for flexibility
    )

    @property
    def oracle_eps(self) -> float:
        """Default epsilon slack for the oracle, scaled with the grid step"""
        if self.ORACLE_EPS is not None:
            return self.ORACLE_EPS
        return 2 * self.GRID_STEP


# Create global settings instance
settings = Settings()

"""Golden-shiner-style swarm navigation: 2D agent simulation plus the 1D
location-density propagator that cross-checks the model's behavior."""

from .config import ConfigError, RunConfig, format_config, parse_config
from .core import (
    NeighborGraph,
    Position,
    StepDraw,
    SwarmParams,
    build_neighborhood,
    env_speed,
    hammer,
    node_step,
    sample_u,
    sample_z,
    social_direction,
    step_displacement,
)
from .density import (
    GridPdf,
    GridSpanError,
    GridStats,
    KernelParams,
    grid_stats,
    initial_pdf,
    kernel_pdf,
    mc_sample,
    pdf_at_time,
    propagate,
)
from .engine import (
    Box,
    Metrics,
    SwarmState,
    advance_swarm,
    compute_metrics,
    default_sigma_const,
    first_passage,
    init_swarm,
    run,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "ConfigError",
    "GridPdf",
    "GridSpanError",
    "GridStats",
    "KernelParams",
    "Metrics",
    "NeighborGraph",
    "Position",
    "RunConfig",
    "StepDraw",
    "SwarmParams",
    "SwarmState",
    "advance_swarm",
    "build_neighborhood",
    "compute_metrics",
    "default_sigma_const",
    "env_speed",
    "first_passage",
    "format_config",
    "grid_stats",
    "hammer",
    "init_swarm",
    "initial_pdf",
    "kernel_pdf",
    "mc_sample",
    "node_step",
    "parse_config",
    "pdf_at_time",
    "propagate",
    "run",
    "sample_u",
    "sample_z",
    "social_direction",
    "step_displacement",
]

"""Python bindings for the crawler-fleet simulator core."""

from ._core import (
    ConfigError,
    EnvConfig,
    Environment,
    FetchError,
    GraphStats,
    PageVersion,
    Summary,
    TraceParseError,
    TraceValidationError,
    fetch_page,
    generate_environment,
    graph_stats,
    load_trace,
    rewire_environment,
    run_simulation,
    save_trace,
)

__all__ = [
    "ConfigError",
    "EnvConfig",
    "Environment",
    "FetchError",
    "GraphStats",
    "PageVersion",
    "Summary",
    "TraceParseError",
    "TraceValidationError",
    "fetch_page",
    "generate_environment",
    "graph_stats",
    "load_trace",
    "rewire_environment",
    "run_simulation",
    "save_trace",
]

"""
Wall-time and memory figures for simulation runs.
"""

import logging
import time
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

import psutil


logger = logging.getLogger(__name__)


@dataclass
class MemoryMetrics:
    """Memory usage snapshot."""

    rss_mb: float  # Resident Set Size


@dataclass
class PhaseRecord:
    """Timing and memory delta of one monitored phase."""

    label: str
    wall_time_s: float
    rss_delta_mb: float


@dataclass
class ResourceMonitor:
    """Tracks wall time and resident memory across run phases."""

    enabled: bool = True
    peak_rss_mb: float = 0.0
    phases: list[PhaseRecord] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._process = psutil.Process() if self.enabled else None

    def current_metrics(self) -> MemoryMetrics:
        """Get current memory metrics."""
        if self._process is None:
            return MemoryMetrics(0.0)

        memory_info = self._process.memory_info()
        rss_mb = memory_info.rss / 1024 / 1024
        self.peak_rss_mb = max(self.peak_rss_mb, rss_mb)
        return MemoryMetrics(rss_mb=rss_mb)

    @contextmanager
    def track(self, label: str) -> Iterator[None]:
        """Record wall time and RSS change of the enclosed block."""
        start_metrics = self.current_metrics()
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            end_metrics = self.current_metrics()
            record = PhaseRecord(
                label=label,
                wall_time_s=elapsed,
                rss_delta_mb=end_metrics.rss_mb - start_metrics.rss_mb,
            )
            self.phases.append(record)
            logger.debug(
                f"{label}: {elapsed:.3f} s, RSS delta {record.rss_delta_mb:+.1f} MB"
            )

    @property
    def wall_time_s(self) -> float:
        """Total wall time over all tracked phases."""
        return sum(phase.wall_time_s for phase in self.phases)

    def summary(self) -> dict[str, Any]:
        """Summary suitable for the run manifest."""
        return {
            "wall_time_s": self.wall_time_s,
            "peak_rss_mb": self.peak_rss_mb,
            "phases": {phase.label: phase.wall_time_s for phase in self.phases},
        }

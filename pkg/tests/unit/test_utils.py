"""
Unit tests for error handling, logging and resource monitoring helpers.
"""

import logging

import pytest

from ph_string.utils.error_handling import (
    ConfigParseError,
    ConfigurationError,
    ConvergenceError,
    ErrorCategory,
    MaterialDomainError,
    StringSimError,
    error_context,
    with_error_logging,
)
from ph_string.utils.logging_config import get_logger, log_function_call, setup_logging
from ph_string.utils.resource_monitor import ResourceMonitor


pytestmark = pytest.mark.unit



class TestErrors:
    """Exception hierarchy."""

    def test_configuration_error_lists_fields(self):
        error = ConfigurationError(["material.EA: missing value", "time.T: must be nonnegative"])
        assert error.errors == ["material.EA: missing value", "time.T: must be nonnegative"]
        assert "material.EA" in str(error)
        assert isinstance(error, ValueError)
        assert error.category is ErrorCategory.CONFIGURATION

    def test_parse_error_location(self):
        error = ConfigParseError("unexpected end", line=3, column=7)
        assert error.errors == ["parse error (line 3, column 7): unexpected end"]
        assert isinstance(error, ConfigurationError)

    def test_categories(self):
        assert MaterialDomainError("C").category is ErrorCategory.MATERIAL_DOMAIN
        assert ConvergenceError("slow", report=None).category is ErrorCategory.CONVERGENCE
        assert StringSimError("x").category is ErrorCategory.UNKNOWN

    def test_original_error_kept(self):
        cause = ZeroDivisionError("boom")
        assert StringSimError("wrapped", cause).original_error is cause


class TestErrorLogging:
    """Decorator and context manager that log before re-raising."""

    def test_decorator_logs_and_reraises(self, caplog):
        @with_error_logging(context_data={"phase": "write"})
        def failing():
            raise OSError("disk full")

        with caplog.at_level(logging.ERROR), pytest.raises(OSError):
            failing()
        assert "category=file_io" in caplog.text
        assert "phase=write" in caplog.text
        assert "function=failing" in caplog.text

    def test_decorator_passes_results(self):
        @with_error_logging(ErrorCategory.CONFIGURATION)
        def fine(value):
            return value * 2

        assert fine(21) == 42

    def test_context_manager(self, caplog):
        with caplog.at_level(logging.ERROR), pytest.raises(MaterialDomainError):
            with error_context({"element": 3}):
                raise MaterialDomainError("C must be positive")
        assert "material_domain" in caplog.text
        assert "element=3" in caplog.text


class TestLogging:
    """Logging setup and structured messages."""

    def test_setup_logging_with_file(self, temp_dir, restore_root_logger):
        log_file = temp_dir / "logs" / "run.log"
        logger = setup_logging("DEBUG", log_file)
        logger.debug("written to file")
        for handler in logging.getLogger().handlers:
            handler.flush()
        assert log_file.exists()
        assert "written to file" in log_file.read_text()
        assert logging.getLogger().level == logging.DEBUG

    def test_unknown_level_falls_back_to_info(self, restore_root_logger):
        setup_logging("chatty")
        assert logging.getLogger().level == logging.INFO

    def test_structured_context(self, caplog):
        logger = get_logger("ph_string.test", {"scheme": "dg"})
        with caplog.at_level(logging.INFO):
            logger.info("Step accepted", {"step": 3})
        assert "Step accepted | scheme=dg | step=3" in caplog.text

    def test_structured_logger_respects_level(self, caplog):
        logger = get_logger("ph_string.test")
        with caplog.at_level(logging.WARNING):
            logger.debug("hidden")
        assert "hidden" not in caplog.text

    def test_context_values_are_formatted(self, caplog):
        logger = get_logger("ph_string.test", {"t": 0.1 + 0.2})
        with caplog.at_level(logging.INFO):
            logger.info("Newton iteration", {"iteration": 2, "residual": 3.4e-09})
        assert "Newton iteration | t=0.3 | iteration=2 | residual=3.4e-09" in caplog.text

    def test_with_context_extends_a_copy(self, caplog):
        base = get_logger("ph_string.test", {"scheme": "dg"})
        scoped = base.with_context(scenario="pendulum")
        with caplog.at_level(logging.INFO):
            scoped.info("Run finished")
            base.info("Other run")
        assert "Run finished | scheme=dg | scenario=pendulum" in caplog.text
        assert "Other run | scheme=dg\n" in caplog.text

    def test_records_point_at_the_caller(self, caplog):
        with caplog.at_level(logging.INFO):
            get_logger("ph_string.test").info("where")
        assert caplog.records[-1].filename == "test_utils.py"

    @pytest.mark.parametrize("level", ["debug", "info", "warning", "error"])
    def test_every_level_points_at_the_caller(self, caplog, level):
        with caplog.at_level(logging.DEBUG):
            getattr(get_logger("ph_string.test"), level)("where", {"step": 1})
        assert caplog.records[-1].filename == "test_utils.py"
        assert caplog.records[-1].levelname == level.upper()

    def test_log_function_call(self, caplog):
        @log_function_call
        def add(a, b):
            return a + b

        with caplog.at_level(logging.DEBUG):
            assert add(1, b=2) == 3
        assert "Calling add" in caplog.text
        assert "add finished in" in caplog.text

    def test_log_function_call_reraises(self, caplog):
        @log_function_call
        def fail():
            raise RuntimeError("boom")

        with caplog.at_level(logging.DEBUG), pytest.raises(RuntimeError):
            fail()
        assert "fail raised RuntimeError: boom" in caplog.text


class TestResourceMonitor:
    """Wall time and memory figures."""

    def test_tracks_phases(self):
        monitor = ResourceMonitor()
        with monitor.track("simulate"):
            sum(range(1000))
        summary = monitor.summary()
        assert list(summary["phases"]) == ["simulate"]
        assert summary["wall_time_s"] >= 0.0
        assert summary["peak_rss_mb"] > 0.0

    def test_metrics_raise_the_peak(self):
        monitor = ResourceMonitor()
        metrics = monitor.current_metrics()
        assert metrics.rss_mb > 0.0
        assert monitor.peak_rss_mb == metrics.rss_mb

    def test_disabled_monitor_reports_zero_memory(self):
        monitor = ResourceMonitor(enabled=False)
        with monitor.track("write"):
            pass
        assert monitor.peak_rss_mb == 0.0
        assert monitor.current_metrics().rss_mb == 0.0
        assert len(monitor.phases) == 1

    def test_phase_recorded_on_error(self):
        monitor = ResourceMonitor(enabled=False)
        with pytest.raises(RuntimeError), monitor.track("simulate"):
            raise RuntimeError("stop")
        assert monitor.phases[0].label == "simulate"

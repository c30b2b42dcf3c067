"""Tests for runtime settings and logging helpers."""

import logging

from blockdfe.config import DEFAULT_CONFIG, load_config
from blockdfe.log import configure_logging, log_sweep_event


def test_missing_file_falls_back_to_defaults(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        config = load_config(str(tmp_path / "absent.yaml"))
    assert config["server_settings"] == DEFAULT_CONFIG["server_settings"]
    assert "Using defaults" in caplog.text


def test_partial_file_is_merged(tmp_path, monkeypatch):
    monkeypatch.delenv("BLOCKDFE_LOG_LEVEL", raising=False)
    monkeypatch.delenv("BLOCKDFE_WORKERS", raising=False)
    path = tmp_path / "config.yaml"
    path.write_text("runtime_settings:\n  workers: 4\n")
    config = load_config(str(path))
    assert config["runtime_settings"] == {"log_level": "INFO", "workers": 4}
    assert config["server_settings"]["max_simulation_channels"] == 50


def test_environment_overrides(tmp_path, monkeypatch):
    monkeypatch.setenv("BLOCKDFE_LOG_LEVEL", "DEBUG")
    monkeypatch.setenv("BLOCKDFE_WORKERS", "3")
    config = load_config(str(tmp_path / "absent.yaml"))
    assert config["runtime_settings"] == {"log_level": "DEBUG", "workers": 3}


def test_non_integer_workers_ignored(tmp_path, monkeypatch):
    monkeypatch.setenv("BLOCKDFE_WORKERS", "many")
    config = load_config(str(tmp_path / "absent.yaml"))
    assert config["runtime_settings"]["workers"] == 1


def test_config_path_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "alt.yaml"
    path.write_text("server_settings:\n  port: 9001\n")
    monkeypatch.setenv("BLOCKDFE_CONFIG", str(path))
    assert load_config()["server_settings"]["port"] == 9001


def test_malformed_yaml_falls_back(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("runtime_settings: [unclosed\n")
    config = load_config(str(path))
    assert config["runtime_settings"]["workers"] == DEFAULT_CONFIG["runtime_settings"]["workers"]


def test_configure_logging_accepts_names():
    configure_logging("debug")
    assert logging.getLogger().level == logging.DEBUG
    configure_logging("not-a-level")
    assert logging.getLogger().level == logging.INFO


def test_log_sweep_event():
    trace = []
    status = log_sweep_event("cell_skipped", {"scheme": "OPT_ZF_BDFD"}, trace)
    assert status == {"status": "success"}
    assert trace[0]["action"] == "cell_skipped"
    assert trace[0]["source"] == "sim"
    assert trace[0]["details"] == {"scheme": "OPT_ZF_BDFD"}
    log_sweep_event("sweep_done", {}, trace, source="cli")
    assert trace[1]["source"] == "cli"

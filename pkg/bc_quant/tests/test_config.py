"""
Тесты конфигурации приложения и файловых утилит.
"""

import json

import pytest

from bc_quant.config import AppConfig, config, load_config, replace_config
from bc_quant.utils.file_utils import (
    ensure_directory,
    load_json,
    load_structured,
    read_file,
    to_json_text,
    write_csv,
    write_file,
)


def test_default_config():
    """Тест значений по умолчанию."""
    defaults = AppConfig()
    assert defaults.precision.budget == 512
    assert defaults.precision.start == 8
    assert defaults.precision.guard_bits == 4
    assert defaults.models.count_cap == 4096
    assert defaults.runner.workers == 4
    assert defaults.debug is False


def test_load_config_from_yaml(tmp_path):
    """Тест загрузки конфигурации из YAML."""
    path = tmp_path / "settings.yaml"
    path.write_text(
        "log:\n  level: DEBUG\nprecision:\n  budget: 256\nrunner:\n  workers: 2\n",
        encoding="utf-8",
    )
    loaded = load_config(str(path))
    assert loaded.log.level == "DEBUG"
    assert loaded.precision.budget == 256
    assert loaded.runner.workers == 2


def test_load_config_from_json(tmp_path):
    """Тест загрузки конфигурации из JSON."""
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"models": {"count_cap": 64}}), encoding="utf-8")
    assert load_config(str(path)).models.count_cap == 64


def test_load_config_missing_file(tmp_path):
    """Тест отсутствующего файла: используются значения по умолчанию."""
    loaded = load_config(str(tmp_path / "missing.yaml"))
    assert loaded.precision.budget == 512


def test_env_overrides(monkeypatch):
    """Тест переопределения настроек переменными окружения."""
    monkeypatch.setenv("BCQ_PRECISION_BUDGET", "1024")
    monkeypatch.setenv("BCQ_MODELS_COUNT_CAP", "10")
    monkeypatch.setenv("BCQ_DEBUG", "true")
    loaded = load_config()
    assert loaded.precision.budget == 1024
    assert loaded.models.count_cap == 10
    assert loaded.debug is True


def test_replace_config_in_place():
    """Тест подмены глобальной конфигурации по секциям."""
    original = config
    replace_config(AppConfig(runner={"workers": 1}))
    assert config is original
    assert config.runner.workers == 1


def test_json_text_is_canonical():
    """Тест канонического JSON с сортировкой ключей."""
    assert to_json_text({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


def test_write_and_load_json(tmp_path):
    """Тест записи канонического JSON и его загрузки."""
    path = tmp_path / "nested" / "data.json"
    assert write_file(path, to_json_text({"x": "1/2"}))
    assert load_json(path) == {"x": "1/2"}
    assert read_file(path).endswith("\n")
    assert load_json(tmp_path / "missing.json") is None


def test_load_structured(tmp_path):
    """Тест загрузки JSON и YAML и отказа от прочих форматов."""
    yaml_path = tmp_path / "run.yaml"
    yaml_path.write_text("params:\n  n: 1..3\n", encoding="utf-8")
    assert load_structured(yaml_path) == {"params": {"n": "1..3"}}

    text_path = tmp_path / "run.txt"
    text_path.write_text("{}", encoding="utf-8")
    with pytest.raises(ValueError):
        load_structured(text_path)
    with pytest.raises(FileNotFoundError):
        load_structured(tmp_path / "missing.json")


def test_write_csv(tmp_path):
    """Тест записи CSV с экранированием запятых."""
    path = tmp_path / "sweep.csv"
    text = write_csv(path, ["k", "lhs"], [[2, "[1/4, 1/2]"]])
    assert text == 'k,lhs\n2,"[1/4, 1/2]"\n'
    assert read_file(path) == text
    assert write_csv(None, ["k"], [[1]]) == "k\n1\n"


def test_ensure_directory(tmp_path):
    """Тест создания директории."""
    target = tmp_path / "a" / "b"
    assert ensure_directory(target)
    assert target.is_dir()

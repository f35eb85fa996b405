"""Configuración desde el entorno y registros de error estructurados."""

from pathlib import Path

from Core.config import DEFAULT_MAX_ORDER, load_settings
from Core.errors import IndexSetViolation, KLOError, ZeroBlock


def test_environment_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv("KLO_CACHE_DIR", str(tmp_path / "cache"))
    monkeypatch.setenv("KLO_MAX_ORDER", "720")
    monkeypatch.setenv("KLO_JOBS", "0")
    monkeypatch.setenv("KLO_SEGMENT_CAP", "not-a-number")
    settings = load_settings(env_file=str(tmp_path / "missing.env"))
    assert settings.cache_dir == tmp_path / "cache"
    assert settings.max_order == 720
    assert settings.jobs == 1
    assert settings.segment_cap == 10000


def test_cli_flags_win(monkeypatch, tmp_path):
    monkeypatch.delenv("KLO_MAX_ORDER", raising=False)
    settings = load_settings(env_file=str(tmp_path / "missing.env"))
    assert settings.max_order == DEFAULT_MAX_ORDER
    changed = settings.with_overrides(cache_dir="elsewhere", max_order=24, jobs=4)
    assert changed.cache_dir == Path("elsewhere")
    assert (changed.max_order, changed.jobs) == (24, 4)
    assert settings.with_overrides() == settings


def test_error_records():
    error = ZeroBlock("Bloque cero", singular=frozenset({2, 1}), size=0)
    assert isinstance(error, KLOError)
    assert error.to_dict() == {
        "error": "ZeroBlock",
        "message": "Bloque cero",
        "context": {"singular": [1, 2], "size": 0},
    }
    assert '"IndexSetViolation"' in IndexSetViolation("fuera", element=(1, 2)).to_json()

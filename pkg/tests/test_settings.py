import pytest

from src.config.settings import Settings, settings


def test_defaults_are_usable():
    assert settings.ENUMERATION_BUDGET >= 1
    assert settings.WORKER_THREADS >= 1
    assert settings.LOG_LEVEL == settings.LOG_LEVEL.upper()


@pytest.mark.parametrize("name", ["ENUMERATION_BUDGET", "WORKER_THREADS"])
def test_invalid_limits_are_rejected(monkeypatch, name):
    monkeypatch.setattr(Settings, name, 0)
    with pytest.raises(ValueError):
        Settings()

import pytest

from chein_helper.config import DATA, Settings, load_settings


def test_defaults(tmp_path, monkeypatch):
    monkeypatch.delenv("CHEIN_WORKERS", raising=False)
    settings = load_settings(tmp_path / "chein.yml")
    assert settings == Settings()
    assert settings.golden == DATA / "golden.yml"


def test_file_and_environment(tmp_path, monkeypatch):
    monkeypatch.delenv("CHEIN_WORKERS", raising=False)
    path = tmp_path / "chein.yml"
    path.write_text("workers: 2\nlog_file: chein.log\n")
    settings = load_settings(path)
    assert settings.workers == 2
    assert settings.log_file.name == "chein.log"
    monkeypatch.setenv("CHEIN_WORKERS", "3")
    assert load_settings(path).workers == 3


@pytest.mark.parametrize("text", ["workers: 0\n", "workers: many\n", "colour: red\n", "- 1\n"])
def test_invalid_settings(tmp_path, monkeypatch, text):
    monkeypatch.delenv("CHEIN_WORKERS", raising=False)
    path = tmp_path / "chein.yml"
    path.write_text(text)
    with pytest.raises(ValueError):
        load_settings(path)

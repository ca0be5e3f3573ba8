import os
from logging import FileHandler
from pathlib import Path
from typing import NamedTuple, Optional

from yaml import Loader, load

from chein_helper.error import log

DATA = Path(__file__).parent / "data"


class Settings(NamedTuple):
    workers: int = 1
    log_file: Optional[Path] = None
    golden: Path = DATA / "golden.yml"
    battery: Path = DATA / "battery.yml"


def load_settings(path: str | Path = Path("chein.yml")) -> Settings:
    """
    Read ``chein.yml`` if it exists; ``CHEIN_WORKERS`` overrides the worker count.
    """
    path = Path(path)
    config = {}
    if path.exists():
        with open(path, "r") as f:
            config = load(f, Loader=Loader) or {}
        if not isinstance(config, dict):
            raise ValueError(f"Illegal configuration in '{path}'.")
        if not all(k in Settings._fields for k in config):
            raise ValueError(f"Invalid keys in '{path}': {sorted(config)}")
    if (workers := os.environ.get("CHEIN_WORKERS")) is not None:
        config["workers"] = workers
    settings = Settings()._replace(**config)
    try:
        workers = int(settings.workers)
    except (TypeError, ValueError):
        raise ValueError(f"Illegal argument: '{settings.workers}' for workers.")
    if workers < 1:
        raise ValueError(f"Illegal argument: '{workers}' for workers.")
    return settings._replace(
        workers=workers,
        log_file=None if settings.log_file is None else Path(settings.log_file),
        golden=Path(settings.golden),
        battery=Path(settings.battery),
    )


def configure_logging(settings: Settings) -> None:
    if settings.log_file is not None and not any(
            isinstance(h, FileHandler) for h in log.handlers
    ):
        log.addHandler(FileHandler(settings.log_file))

import os
import yaml
from pathlib import Path
from dotenv import load_dotenv

_CONFIG = None


def load_config():
    global _CONFIG
    if _CONFIG is None:
        load_dotenv(dotenv_path=Path(__file__).parents[1] / ".env")
        path = os.getenv("DLD_CONFIG") or Path(__file__).parents[1] / "config.yaml"
        with open(path) as f:
            _CONFIG = yaml.safe_load(f)
    return _CONFIG


def reset_config():
    """Drop the cached configuration so the next load_config() re-reads it."""
    global _CONFIG
    _CONFIG = None

import os
import sys
from pathlib import Path

import hypothesis
import numpy as np
import pytest

# Add engine to path for imports
engine_path = Path(__file__).parent.parent
sys.path.insert(0, str(engine_path))

from core.config_loader import reset_config
from core.langfuse_integration import reset_langfuse

np.seterr(all="warn")

hypothesis.settings.register_profile("default", deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch):
    """Every test starts from the shipped config.yaml with tracing off."""
    monkeypatch.delenv("DLD_CONFIG", raising=False)
    # empty values also keep engine/.env from supplying real keys
    monkeypatch.setenv("LANGFUSE_PUBLIC_KEY", "")
    monkeypatch.setenv("LANGFUSE_SECRET_KEY", "")
    reset_config()
    reset_langfuse()
    yield
    reset_config()
    reset_langfuse()

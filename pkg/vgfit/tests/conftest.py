import os
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long Monte Carlo reproduction (VGFIT_RUN_SLOW=1)")


def pytest_collection_modifyitems(config, items):
    if os.getenv("VGFIT_RUN_SLOW", "").strip() in ("1", "true", "yes"):
        return
    skip = pytest.mark.skip(reason="set VGFIT_RUN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def _restore_root_logging():
    import logging

    root = logging.getLogger()
    handlers = list(root.handlers)
    level = root.level
    configured = getattr(root, "_vgfit_configured", False)
    yield
    for h in root.handlers:
        if h not in handlers:
            h.close()
    root.handlers = handlers
    root.setLevel(level)
    root._vgfit_configured = configured

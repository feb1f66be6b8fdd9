import os
import sys
from pathlib import Path

import pytest

ROOT_DIR = Path(__file__).resolve().parents[1]
SRC_DIR = ROOT_DIR / "src"

if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))


@pytest.fixture(autouse=True)
def serial_workers(monkeypatch):
    """Unit tests run trials in-process; acceptance runs keep HYPERPLANT_WORKERS."""
    if os.getenv("RUN_ACCEPTANCE") != "1":
        monkeypatch.setattr("hyperplant.runner.pool.WORKERS", 1)

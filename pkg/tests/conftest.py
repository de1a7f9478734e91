import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nuflavor.qm_model import theta_from_sin2  # noqa: E402

REF_THETA = theta_from_sin2(0.314)


@pytest.fixture
def ref_theta():
    return REF_THETA


@pytest.fixture
def tau_grid():
    return np.linspace(0.0, 4 * np.pi, 200)


ACCEPTANCE_LOG: list[str] = []


def record_criterion(number: int, title: str, passed: bool, detail: str):
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title} -- {detail}"
    ACCEPTANCE_LOG.append(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LOG, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)

import math
from collections import OrderedDict

import numpy as np
import pytest

from pcdtest.geometry import STANDARD_TRIANGLE, delaunay_triangulate

SQRT3 = math.sqrt(3.0)

# ten reference points: hull of 5, so 2*10 - 2 - 5 = 13 Delaunay triangles
Y10 = np.array(
    [(0, 0), (10, -1), (13, 7), (5, 12), (-2, 8), (3, 3), (7, 2.5), (9, 6), (4, 7.5), (6.2, 5)],
    dtype=float,
)

# criterion id -> list of (label, ok, detail)
ACCEPTANCE = OrderedDict((k, []) for k in range(1, 13))


def record(criterion, label, ok, detail=""):
    ACCEPTANCE[criterion].append((label, bool(ok), detail))
    return bool(ok)


@pytest.fixture
def accept():
    return record


@pytest.fixture(scope="session")
def y10_tri():
    return delaunay_triangulate(Y10)


@pytest.fixture
def te():
    return STANDARD_TRIANGLE


def pytest_terminal_summary(terminalreporter):
    if not any(ACCEPTANCE.values()):
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k, items in ACCEPTANCE.items():
        if not items:
            tr.write_line(f"criterion {k:2d}: NOT RUN")
            continue
        bad = [i for i in items if not i[1]]
        status = "PASS" if not bad else "FAIL"
        line = f"criterion {k:2d}: {status}  ({len(items) - len(bad)}/{len(items)} checks)"
        if bad:
            line += "  failing: " + "; ".join(f"{lab} [{det}]" for lab, _, det in bad)
        tr.write_line(line)

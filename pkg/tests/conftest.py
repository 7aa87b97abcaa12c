import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from partlab import make_part_system  # noqa: E402

# k <= 5, parts <= 8; multisets, non-coprime and single-part systems included
CORPUS = [
    (1,), (3,), (1, 1), (1, 2), (2, 3), (2, 4), (1, 1, 1), (1, 2, 3), (1, 2, 4),
    (2, 2, 3), (4, 6, 8), (2, 3, 5), (1, 2, 3, 4), (1, 2, 3, 5), (2, 3, 4, 6),
    (1, 4, 6, 8), (1, 2, 2, 3, 3), (1, 1, 2, 3, 4), (1, 2, 3, 4, 5), (2, 3, 5, 7),
]


@pytest.fixture(params=CORPUS, ids=lambda p: ",".join(map(str, p)))
def corpus_system(request):
    return make_part_system(request.param)


# acceptance lines are collected here and printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

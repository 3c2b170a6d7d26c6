import pytest
from hypothesis import HealthCheck, settings

from modalagg.residue import FRAME1, FRAME2, FrameSpec

settings.register_profile(
    "default",
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# Filled by test_acceptance.py, printed once the run finishes.
ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, passed: bool, detail: str) -> str:
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])


@pytest.fixture
def spec10():
    """Frame 1 with r=10, k=3, A=[0,3]."""
    return FrameSpec(FRAME1, 10, 3, range(4))


@pytest.fixture
def spec6():
    """Frame 2 with r=6, k=1, A={0,1}."""
    return FrameSpec(FRAME2, 6, 1, [0, 1])


@pytest.fixture
def spec4():
    return FrameSpec(FRAME2, 4, 1, [0, 1])


@pytest.fixture
def spec7():
    return FrameSpec(FRAME2, 7, 2, [0, 1, 2])

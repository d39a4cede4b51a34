import subprocess
import sys
from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"


def run_cli(*args, env=None):
    return subprocess.run(
        [sys.executable, "-m", "ladderfib", *map(str, args)],
        capture_output=True,
        text=True,
        env=env,
    )


@pytest.fixture
def cli():
    return run_cli


@pytest.fixture
def golden():
    return GOLDEN


# criterion number -> (passed, [details]); filled by the acceptance tests
_ACCEPTANCE: dict[int, tuple[bool, list[str]]] = {}


@pytest.fixture
def record():
    def _record(number: int, passed: bool, detail: str) -> bool:
        ok, details = _ACCEPTANCE.get(number, (True, []))
        _ACCEPTANCE[number] = (ok and passed, details + [f"{'ok' if passed else 'FAILED'}: {detail}"])
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, details = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  " + "; ".join(details))

from pathlib import Path

import pytest

GOLDEN_DIR = Path(__file__).parent / "test_data" / "golden"


@pytest.fixture
def golden():
    """
    Compares text against a frozen file in tests/test_data/golden/.

    A missing file is written from the current output and becomes the
    reference for every later run.
    """

    def check(name: str, text: str) -> None:
        path = GOLDEN_DIR / name
        if not path.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
        assert text == path.read_text(), f"output drifted from {path}"

    return check

# harness/records.py

"""JSON-lines persistence for experiment records."""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)

# Fields that legitimately differ between two runs with the same seeds
VOLATILE_FIELDS = ("timestamps",)


@dataclass
class ExperimentRecord:
    """
    Self-contained result of one experiment.

    Re-running the `config` with the recorded `seed` reproduces every field
    except `timestamps` and the per-trial `elapsed` times.
    """

    version: str
    config: dict
    seed: dict
    status: str = "ok"
    params: dict | None = None
    g0: dict | None = None
    g0_verdict: dict | None = None
    host_stats: dict | None = None
    trials: list[dict] = field(default_factory=list)
    estimate: dict | None = None
    bounds: dict | None = None
    failures: list[dict] = field(default_factory=list)
    timestamps: dict = field(default_factory=dict)

    def add_failure(self, stage: str, error: Exception) -> None:
        self.status = "failed"
        self.failures.append(
            {"stage": stage, "error_type": type(error).__name__, "message": str(error)}
        )

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ExperimentRecord:
        return cls(**data)

    def replayable(self) -> dict:
        """The record without volatile fields and without trial timings."""
        data = self.to_dict()
        for key in VOLATILE_FIELDS:
            data.pop(key, None)
        data["trials"] = [{k: v for k, v in t.items() if k != "elapsed"} for t in data["trials"]]
        return data


def append_record(path: Path, record: ExperimentRecord) -> None:
    """Appends one record as a JSON line, creating the parent directory if needed."""
    append_json_line(path, record.to_dict())
    logger.info(f"  -> Record appended to '{path}'")


def append_json_line(path: Path, payload: dict) -> None:
    """Appends an arbitrary JSON object as one line (used by the CLI subcommands)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "a", encoding="utf-8") as f:
        f.write(json.dumps(payload, sort_keys=True) + "\n")


def read_records(path: Path) -> list[ExperimentRecord]:
    records = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                records.append(ExperimentRecord.from_dict(json.loads(line)))
            except (json.JSONDecodeError, TypeError) as e:
                raise ValueError(f"{path}:{lineno}: not an experiment record ({e})") from e
    return records

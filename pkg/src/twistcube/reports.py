"""Machine-readable check outcomes and their line/JSON renderings."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class VerificationReport:
    claim: str
    params: dict[str, Any]
    passed: bool
    witness: Any = None
    details: dict[str, Any] = field(default_factory=dict)
    elapsed_ms: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["status"] = self.status
        return d

    def to_line(self) -> str:
        parts = [f"claim={self.claim}"]
        parts += [f"{k}={_fmt(v)}" for k, v in self.params.items()]
        parts += [f"{k}={_fmt(v)}" for k, v in self.details.items()]
        parts.append(f"status={self.status}")
        parts.append(f"elapsed_ms={self.elapsed_ms:.0f}")
        if self.witness is not None and not self.passed:
            parts.append(f"witness={_fmt(self.witness)}")
        return " ".join(parts)


def _fmt(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:g}"
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v)
    return str(v).replace(" ", "_")


def dump_json(records: list[dict[str, Any]]) -> str:
    return json.dumps(records, indent=2, sort_keys=True, default=str) + "\n"

"""Structured pass/fail reports for identity checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "identity": {"type": "string"},
        "params": {"type": "object"},
        "mode": {"enum": ["symbolic", "point"]},
        "status": {"enum": ["ok", "fail"]},
        "counterexample": {"type": ["object", "null"]},
    },
    "required": ["identity", "params", "mode", "status"],
    "additionalProperties": False,
}


@dataclass
class Report:
    identity: str
    params: dict = field(default_factory=dict)
    mode: str = "symbolic"
    status: str = "ok"
    counterexample: dict | None = None

    def ok(self) -> bool:
        return self.status == "ok"

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params,
            "mode": self.mode,
            "status": self.status,
            "counterexample": self.counterexample,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def serialize_term(x) -> object:
    """JSON-friendly rendering of whatever object a check compared."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    to_json = getattr(x, "to_json", None)
    if to_json is not None:
        return to_json()
    return str(x)


def failure(identity: str, params: dict, lhs, rhs, mode: str = "symbolic") -> Report:
    return Report(
        identity,
        params,
        mode,
        "fail",
        {"lhs": serialize_term(lhs), "rhs": serialize_term(rhs)},
    )

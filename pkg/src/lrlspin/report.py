"""Check reports and the machine-readable JSON report format.

All verification entry points return a CheckReport; the CLI serializes
them with `report_json`, whose layout is fixed by SCHEMA (version 1).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1

# jsonschema document for every JSON report the CLI emits.
SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["schema_version", "config", "results"],
    "properties": {
        "schema_version": {"type": "integer"},
        "config": {"type": "object"},
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["status"],
                "properties": {
                    "identity": {"type": "string"},
                    "level": {"type": "object"},
                    "status": {"enum": ["pass", "fail", "skip"]},
                    "residual": {"type": ["string", "number", "null"]},
                    "values": {"type": "object"},
                    "witness": {"type": ["array", "string", "null"]},
                },
            },
        },
    },
}


@dataclass
class Violation:
    identity: str
    index: tuple
    residual: str
    witness: tuple | None = None

    def as_result(self) -> dict:
        out = {
            "identity": self.identity,
            "status": "fail",
            "residual": self.residual,
        }
        if self.index:
            out["identity"] += f" @ {self.index}"
        if self.witness is not None:
            out["witness"] = [str(x) for x in self.witness]
        return out


@dataclass
class CheckReport:
    """Outcome of an exhaustive identity check.

    passed is true iff violations is empty; `checked` lists the labels of
    identities that were verified (pass entries in the JSON report).
    """

    violations: list[Violation] = field(default_factory=list)
    checked: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def record_pass(self, identity: str):
        self.checked.append(identity)

    def record_fail(self, identity: str, index: tuple = (), residual: str = "nonzero",
                    witness: tuple | None = None):
        self.violations.append(Violation(identity, index, residual, witness))

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.violations.extend(other.violations)
        self.checked.extend(other.checked)
        return self

    def results(self) -> list[dict]:
        out = [{"identity": name, "status": "pass", "residual": 0}
               for name in self.checked]
        out.extend(v.as_result() for v in self.violations)
        return out

    def summary(self) -> str:
        n_ok = len(self.checked)
        n_bad = len(self.violations)
        return f"{n_ok} identities pass, {n_bad} fail"


def report_json(config: dict, results: list[dict]) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "config": config, "results": results}
    return json.dumps(doc, indent=2, default=str)

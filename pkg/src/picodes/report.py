"""Deterministic run reports for the command line."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import __version__

GOOD_VERDICTS = ("PASS", "SUPPORTED")


def fmt(x: float) -> str:
    return f"{x:.12g}"


def _clean(obj: Any) -> Any:
    """JSON-safe copy with floats rounded to 12 significant digits."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(fmt(float(obj)))
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(fmt(obj.real)), "im": float(fmt(obj.imag))}
    return obj if obj is None or isinstance(obj, str) else str(obj)


def digest(inputs: dict) -> str:
    return hashlib.sha256(json.dumps(_clean(inputs), sort_keys=True).encode()).hexdigest()


@dataclass
class RunReport:
    command: list[str]
    inputs: dict
    config: dict
    checks: list[dict] = field(default_factory=list)
    tables: dict[str, str] = field(default_factory=dict)
    verdicts: dict[str, str] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def check(self, name: str, ok: bool, **details) -> bool:
        self.checks.append({"name": name, "outcome": "PASS" if ok else "FAIL", **details})
        return ok

    def verdict(self, name: str, value: str) -> None:
        self.verdicts[name] = value

    @property
    def ok(self) -> bool:
        return all(v in GOOD_VERDICTS for v in self.verdicts.values())

    def to_dict(self) -> dict:
        return _clean(
            {
                "tool": {"name": "picodes", "version": __version__},
                "command": self.command,
                "inputs_digest": digest(self.inputs),
                "config": self.config,
                "checks": self.checks,
                "verdicts": self.verdicts,
                "notes": self.notes,
                "tables": self.tables,
            }
        )

    def render(self, style: str = "text") -> str:
        if style == "structured":
            return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
        d = self.to_dict()
        lines = [
            f"picodes {d['tool']['version']}: {' '.join(self.command)}",
            f"inputs sha256 {d['inputs_digest']}",
            "config: " + ", ".join(f"{k}={v}" for k, v in sorted(d["config"].items())),
        ]
        for c in d["checks"]:
            extra = ", ".join(f"{k}={v}" for k, v in c.items() if k not in ("name", "outcome"))
            lines.append(f"[{c['outcome']}] {c['name']}" + (f" ({extra})" if extra else ""))
        for name, table in d["tables"].items():
            lines.append(f"--- {name}")
            lines.append(table.rstrip("\n"))
        for note in d["notes"]:
            lines.append(f"note: {note}")
        for name, v in d["verdicts"].items():
            lines.append(f"VERDICT {name}: {v}")
        return "\n".join(lines) + "\n"

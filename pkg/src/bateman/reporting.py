"""Machine-readable run reports: configuration, verdicts, serialization.

Reports are deterministic: identical configuration produces byte-identical
JSON (sorted keys, repr-based floats, no timestamps).  Pass/fail status is
reserved for exact or toleranced claims; exploratory cutoff sweeps are
emitted as report-only entries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Literal, Sequence

SCHEMA_VERSION = 1

Status = Literal["pass", "fail", "report-only"]


@dataclass(frozen=True)
class VerdictReport:
    """One check: stable id, the claim it verifies, status and numeric payload."""

    check: str
    claim: str
    status: Status
    payload: dict[str, Any] = field(default_factory=dict)

    def to_jsonable(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "claim": self.claim,
            "status": self.status,
            "payload": jsonable(self.payload),
        }


@dataclass(frozen=True)
class RunConfig:
    """Resolved CLI configuration; defaults reproduce the reference setup
    (m = 1, gamma = 1/5, omega = 1, theta = 7 pi / 8, tolerance 1e-10)."""

    subcommand: str
    m: Fraction
    gamma: Fraction
    omega: Fraction | None
    k_spring: Fraction | None
    theta: float
    cutoffs: tuple[int, ...] | None
    kmax: int
    tol: float
    out: Path
    fmt: Literal["json", "csv", "both"]

    def to_jsonable(self) -> dict[str, Any]:
        return {
            "subcommand": self.subcommand,
            "m": str(self.m),
            "gamma": str(self.gamma),
            "omega": None if self.omega is None else str(self.omega),
            "k_spring": None if self.k_spring is None else str(self.k_spring),
            "theta": self.theta,
            "cutoffs": None if self.cutoffs is None else list(self.cutoffs),
            "kmax": self.kmax,
            "tol": self.tol,
            "format": self.fmt,
        }


def jsonable(value: Any) -> Any:
    """Recursively convert exact and numpy types to JSON-safe values."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "item") and callable(value.item):  # numpy scalar
        return jsonable(value.item())
    return str(value)


def render_report(config: RunConfig, verdicts: Sequence[VerdictReport]) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "config": config.to_jsonable(),
        "checks": [v.to_jsonable() for v in verdicts],
        "failures": sum(1 for v in verdicts if v.status == "fail"),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_report(path: Path, config: RunConfig, verdicts: Sequence[VerdictReport]) -> None:
    path.write_text(render_report(config, verdicts))

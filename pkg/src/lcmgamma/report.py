"""Versioned JSON report documents shared by the CLI commands."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .inequalities import InequalityCase
from .verifier import LcmReport, RegionScan

SCHEMA_VERSION = "1"


@dataclass
class ReportDocument:
    command: str
    config: dict
    results: Any
    timing: float = 0.0
    schema_version: str = SCHEMA_VERSION

    def to_dict(self, include_timing: bool = True) -> dict:
        d = {
            "schema_version": self.schema_version,
            "command": self.command,
            "config": self.config,
            "results": self.results,
        }
        if include_timing:
            d["timing"] = self.timing
        return d

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, ensure_ascii=False, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        d = json.loads(text)
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {d.get('schema_version')!r}")
        return cls(d["command"], d["config"], d["results"], d.get("timing", 0.0), d["schema_version"])

    def typed_results(self):
        """Rebuild ``results`` as an LcmReport, a RegionScan or a list of InequalityCase."""
        r = self.results
        kind = r.get("kind") if isinstance(r, dict) else None
        if kind == "lcm_report":
            return LcmReport.from_dict(r)
        if kind == "region_scan":
            return RegionScan.from_dict(r)
        if kind == "inequality_sweep":
            return [InequalityCase.from_dict(c) for c in r["cases"]]
        raise ValueError(f"unknown results kind {kind!r}")

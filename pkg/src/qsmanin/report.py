"""Check records and report assembly shared by the suites and the CLI."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = "1"
STATUSES = ("pass", "fail", "skip")


@dataclass
class CheckResult:
    """Outcome of one identity check.

    ``witness`` is a nonzero reduced element (formatted text) proving a
    failure; ``detail`` carries a short human-readable note.
    """

    name: str
    params: dict = field(default_factory=dict)
    status: str = "pass"
    witness: str | None = None
    detail: str | None = None
    time_ms: int = 0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict[str, Any]:
        out = {"name": self.name, "params": self.params, "status": self.status,
               "time_ms": self.time_ms}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail is not None:
            out["detail"] = self.detail
        return out


def passed(name: str, **params) -> CheckResult:
    return CheckResult(name, params, "pass")


def failed(name: str, witness, detail: str | None = None, **params) -> CheckResult:
    from .freesuper import NcPoly, format_expr

    w = format_expr(witness) if isinstance(witness, NcPoly) else str(witness)
    return CheckResult(name, params, "fail", witness=w, detail=detail)


def skipped(name: str, detail: str, **params) -> CheckResult:
    return CheckResult(name, params, "skip", detail=detail)


def from_residual(name: str, residual, detail: str | None = None, **params) -> CheckResult:
    """Pass iff ``residual`` (an NcPoly, a list of them, or a series) is zero."""
    from .freesuper import NcPoly

    items = residual if isinstance(residual, (list, tuple)) else [residual]
    for r in items:
        if isinstance(r, NcPoly):
            if r:
                return failed(name, r, detail, **params)
        elif hasattr(r, "first_nonzero"):
            w = r.first_nonzero()
            if w is not None:
                return failed(name, f"t^{w[0]}: {w[1]}", detail, **params)
        elif r:
            return failed(name, r, detail, **params)
    return CheckResult(name, params, "pass", detail=detail)


@contextmanager
def timed(result_holder: list):
    t0 = time.perf_counter()
    yield
    ms = int(round((time.perf_counter() - t0) * 1000))
    for r in result_holder:
        r.time_ms = ms


def summarize(checks: list[CheckResult]) -> dict:
    out = {s: 0 for s in STATUSES}
    for c in checks:
        out[c.status] += 1
    out["total"] = len(checks)
    return out


def report_schema() -> dict:
    return {
        "version": SCHEMA_VERSION,
        "fields": {
            "version": "string, schema version",
            "config": "object, echo of the run configuration",
            "checks": [{
                "suite": "string",
                "name": "string",
                "params": "object",
                "status": "one of " + ", ".join(f'"{s}"' for s in STATUSES),
                "witness": "string in the expression grammar, present on fail",
                "detail": "string, optional",
                "time_ms": "integer milliseconds (excluded from determinism)",
            }],
            "summary": {"pass": "int", "fail": "int", "skip": "int", "total": "int"},
        },
    }

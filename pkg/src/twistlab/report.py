"""Experiment reports and their byte-stable serialization.

``report.json`` is written with sorted keys, fixed 12-significant-digit
float formatting and no locale dependence, so a rerun with the same config
and seed produces identical bytes. Wall-clock timings are inherently
non-deterministic and therefore go to a separate ``timings.json`` sidecar.
"""

import math
import sys
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class CheckRecord:
    name: str
    value: float
    threshold: float | None
    passed: bool
    runtime_ms: float = 0.0


@dataclass
class Report:
    suite: str
    seed: int
    config: dict
    checks: list = field(default_factory=list)
    curves: list = field(default_factory=list)  # (dim, check, value) rows

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, record):
        if any(c.name == record.name for c in self.checks):
            raise ValueError(f"duplicate check name {record.name!r}")
        self.checks.append(record)

    def add_curve(self, dim, check, value):
        self.curves.append((int(dim), str(check), float(value)))


def _fmt_number(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if not math.isfinite(v):
        raise ValueError("reports must contain finite numbers only")
    return format(float(v), ".12g")


def stable_json(obj):
    """Deterministic JSON text: sorted object keys, .12g floats."""
    if obj is None:
        return "null"
    if isinstance(obj, bool) or isinstance(obj, (int, float)):
        return _fmt_number(obj)
    if isinstance(obj, str):
        out = ['"']
        for ch in obj:
            if ch in '"\\':
                out.append("\\" + ch)
            elif ord(ch) < 0x20:
                out.append(f"\\u{ord(ch):04x}")
            elif ord(ch) > 0x7E:
                out.append(f"\\u{ord(ch):04x}")
            else:
                out.append(ch)
        out.append('"')
        return "".join(out)
    if isinstance(obj, dict):
        items = sorted(obj.items(), key=lambda kv: kv[0])
        body = ",".join(f"{stable_json(k)}:{stable_json(v)}" for k, v in items)
        return "{" + body + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(stable_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def report_payload(report):
    return {
        "suite": report.suite,
        "seed": report.seed,
        "config": report.config,
        "passed": report.passed,
        "checks": [
            {
                "name": c.name,
                "value": c.value,
                "threshold": c.threshold,
                "passed": c.passed,
            }
            for c in report.checks
        ],
        "curves": [
            {"dim": dim, "check": check, "value": value}
            for dim, check, value in report.curves
        ],
    }


def curves_csv(report):
    lines = ["dim,check,value"]
    for dim, check, value in report.curves:
        lines.append(f"{dim},{check},{format(value, '.12g')}")
    return "\n".join(lines) + "\n"


def emit_report(report, path):
    """Write the report; "-" streams the JSON to stdout, a directory path
    receives report.json, curves.csv and the timings sidecar."""
    text = stable_json(report_payload(report)) + "\n"
    if path == "-":
        sys.stdout.write(text)
        return []
    out_dir = Path(path)
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = out_dir / "report.json"
    report_path.write_text(text)
    written = [report_path]
    curves_path = out_dir / "curves.csv"
    curves_path.write_text(curves_csv(report))
    written.append(curves_path)
    timings = {
        "suite": report.suite,
        "checks": [{"name": c.name, "runtime_ms": round(c.runtime_ms, 3)} for c in report.checks],
    }
    timings_path = out_dir / "timings.json"
    timings_path.write_text(stable_json(timings) + "\n")
    written.append(timings_path)
    return written

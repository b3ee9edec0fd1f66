"""Canonical report serialization: JSON to stdout or file, CSV side artifacts.

Reports are plain dicts; serialization sorts keys and uses the shortest
round-trip float representation, so a rerun with the same resolved config is
byte-identical (the timestamp field is suppressible for exactly this
purpose).
"""

from __future__ import annotations

import csv
import datetime
import json
import math
from typing import Mapping, Sequence


def _sanitize(obj):
    if isinstance(obj, Mapping):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, float) and not math.isfinite(obj):
        if math.isnan(obj):
            return "nan"
        return "inf" if obj > 0 else "-inf"
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        try:
            return _sanitize(obj.item())
        except (AttributeError, ValueError):
            pass
    return obj


def canonical_json(report: Mapping) -> str:
    return json.dumps(_sanitize(report), sort_keys=True, indent=2) + "\n"


def assemble_report(command: str, config: Mapping, results: Mapping,
                    flags: Sequence[str] = (), timestamp: bool = True) -> dict:
    report = {
        "command": command,
        "config": _sanitize(dict(config)),
        "results": _sanitize(dict(results)),
        "flags": sorted(flags),
    }
    if timestamp:
        report["generated_at"] = (
            datetime.datetime.now(datetime.timezone.utc).isoformat()
        )
    return report


def write_csv(path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([_csv_cell(v) for v in row])


def _csv_cell(v):
    if isinstance(v, float):
        return repr(v)
    return v

"""Structured result records for sums and experiments.

Reports are plain data with a stable dictionary form: JSON emission sorts
keys and CSV emission flattens bound_terms under dotted headers, so a
fixed configuration reproduces byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

__all__ = ["SumReport", "report_to_json", "reports_to_csv"]


@dataclass
class SumReport:
    """Computed sum vs predicted main term, with bound-chain diagnostics.

    ratio is value/main_term (None when the main term vanishes);
    measured_exponent is the -log(ratio)/log X diagnostic standing in for
    the unspecified decay exponent of the bound chains.
    """

    kind: str
    value: float
    main_term: float
    ratio: Optional[float] = None
    q_used: Optional[int] = None
    q_window: Optional[tuple] = None
    q_in_window: Optional[bool] = None
    measured_exponent: Optional[float] = None
    bound_terms: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)

    def __post_init__(self):
        if self.ratio is None and self.main_term:
            self.ratio = self.value / self.main_term

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value": self.value,
            "main_term": self.main_term,
            "ratio": self.ratio,
            "q_used": self.q_used,
            "q_window": list(self.q_window) if self.q_window else None,
            "q_in_window": self.q_in_window,
            "measured_exponent": self.measured_exponent,
            "bound_terms": dict(sorted(self.bound_terms.items())),
            "flags": list(self.flags),
        }


def report_to_json(payload, indent: int = 2) -> str:
    """Deterministic JSON: sorted keys, no whitespace drift."""
    return json.dumps(payload, indent=indent, sort_keys=True, allow_nan=True)


def _flatten(prefix: str, obj, out: dict):
    if isinstance(obj, dict):
        for key in sorted(obj):
            _flatten(f"{prefix}.{key}" if prefix else str(key), obj[key], out)
    elif isinstance(obj, (list, tuple)):
        out[prefix] = ";".join(str(v) for v in obj)
    else:
        out[prefix] = obj


def reports_to_csv(rows) -> str:
    """Flatten report dictionaries to CSV with dotted headers.

    The header is the sorted union of flattened keys across rows; missing
    cells stay empty.  bound_terms.* columns carry the chain values.
    """
    flat_rows = []
    for row in rows:
        flat: dict = {}
        _flatten("", row, flat)
        flat_rows.append(flat)
    headers = sorted({k for flat in flat_rows for k in flat})
    lines = [",".join(headers)]
    for flat in flat_rows:
        cells = []
        for h in headers:
            v = flat.get(h, "")
            text = "" if v is None else str(v)
            if "," in text or '"' in text:
                text = '"' + text.replace('"', '""') + '"'
            cells.append(text)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"

"""Ledger entries, certificate reports and their JSON form."""

from __future__ import annotations

import datetime as _dt
import json
import re
from dataclasses import dataclass, field

import mpmath
from mpmath import mpf

from .numerics import Approx, PrecisionContext

OPS = ("<", "≤", ">", "≥", "=", "→")


def compare(op: str, computed: Approx, reference, tol=0) -> bool:
    """Margin-aware comparison: inequalities must hold after moving the computed
    value by its full error budget; equalities and limits need
    ``|value - reference| <= err + tol``."""
    v, e = computed.value, computed.err
    r = mpf(reference)
    tol = mpf(tol)
    if op == "<":
        return v + e < r + tol
    if op == "≤":
        return v + e <= r + tol
    if op == ">":
        return v - e > r - tol
    if op == "≥":
        return v - e >= r - tol
    if op in ("=", "→"):
        return abs(v - r) <= e + tol
    raise ValueError(f"unknown comparison operator {op!r}")


@dataclass(frozen=True)
class BoundEntry:
    name: str
    computed: Approx
    op: str
    reference: mpf
    citation: str
    tol: mpf = mpf(0)
    passed: bool = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"unknown comparison operator {self.op!r}")
        object.__setattr__(self, "reference", mpf(self.reference))
        object.__setattr__(self, "tol", mpf(self.tol))
        if self.passed is None:
            object.__setattr__(self, "passed", compare(self.op, self.computed, self.reference, self.tol))

    @property
    def pass_(self) -> bool:
        return self.passed

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return (
            f"[{mark}] {self.name}: {mpmath.nstr(self.computed.value, 12)} "
            f"(±{mpmath.nstr(self.computed.err, 2)}) {self.op} {mpmath.nstr(self.reference, 12)}"
            f"  -- {self.citation}"
        )


@dataclass(frozen=True)
class CertificateReport:
    entries: tuple[BoundEntry, ...]
    context: PrecisionContext
    timestamp: str = field(
        default_factory=lambda: _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    )
    notes: tuple[str, ...] = ()

    @property
    def overall_pass(self) -> bool:
        return all(e.passed for e in self.entries)

    def entry(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def merged(self, other: "CertificateReport") -> "CertificateReport":
        return CertificateReport(
            self.entries + other.entries, self.context, self.timestamp, self.notes + other.notes
        )

    def to_dict(self) -> dict:
        return {
            "entries": [
                {
                    "name": e.name,
                    "value": _Num(e.computed.value),
                    "err": _Num(e.computed.err),
                    "op": e.op,
                    "reference": _Num(e.reference),
                    "citation": e.citation,
                    "pass": e.passed,
                }
                for e in self.entries
            ],
            "overall_pass": self.overall_pass,
            "precision": self.context.as_dict(),
            "timestamp": self.timestamp,
        }

    def to_json(self, extra: dict | None = None) -> str:
        doc = self.to_dict()
        if extra:
            doc.update(extra)
        return dumps(doc)

    def text(self) -> str:
        lines = [e.line() for e in self.entries]
        lines += [f"note: {n}" for n in self.notes]
        lines.append(f"overall: {'PASS' if self.overall_pass else 'FAIL'}")
        return "\n".join(lines)


class _Num:
    """Marker for a number written in scientific notation with 15 significant digits."""

    def __init__(self, x):
        self.x = mpf(x)


def format_number(x) -> str:
    return f"{float(mpf(x)):.14e}"


_NUM_RE = re.compile(r'"\x00NUM:([^"\x00]*)\x00"')


def dumps(doc) -> str:
    def default(o):
        if isinstance(o, _Num):
            return "\x00NUM:" + format_number(o.x) + "\x00"
        if isinstance(o, mpf):
            return "\x00NUM:" + format_number(o) + "\x00"
        if isinstance(o, Approx):
            return {"value": _Num(o.value), "err": _Num(o.err)}
        raise TypeError(f"cannot serialise {type(o).__name__}")

    text = json.dumps(doc, default=default, indent=2, ensure_ascii=False)
    return _NUM_RE.sub(lambda m: m.group(1), text.replace("\\u0000", "\x00"))

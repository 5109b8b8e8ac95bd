"""Curve spec files and run reports.

Spec files hold one curve per line::

    # comment
    E1: a1=0 a2=0 a3=0 a4=-1 a6=0
    T:  a4=-4 mobius=2,3,1,-5

Omitted coefficients are 0.  Values are exact: integers, ``num/den`` or
terminating decimals.

Structured reports are ``dotted.key = <json scalar>`` lines.  List indices
appear as ``#i`` segments; ``[]`` and ``{}`` mark empty containers.  Parsing
a serialised report gives back the same content.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from urllib.parse import unquote

from .algebra.finite_field import MODULI_VERSION
from .algebra.rational import format_rational, parse_rational
from .errors import CommonTorsionError, SpecError
from .projection import Mobius, StandardProjection
from .weierstrass import WeierstrassCurve

COEFF_NAMES = ("a1", "a2", "a3", "a4", "a6")
_LABEL = re.compile(r"^[A-Za-z_][\w\-]*$")


@dataclass
class CurveSpec:
    label: str
    curve: WeierstrassCurve
    twist: Mobius
    line: int

    def projection(self) -> StandardProjection:
        return StandardProjection.from_curve(self.curve, self.twist, self.label)

    def describe(self) -> dict:
        return {"label": self.label,
                **{n: format_rational(c) for n, c in zip(COEFF_NAMES, self.curve.coefficients)},
                "mobius": list(self.twist.entries)}


def _parse_value(text: str, lineno: int, name: str) -> Fraction:
    try:
        return parse_rational(text)
    except SpecError as exc:
        raise SpecError(str(exc), lineno, name) from None


def parse_spec_line(raw: str, lineno: int) -> CurveSpec | None:
    text = raw.split("#", 1)[0].strip()
    if not text:
        return None
    if ":" not in text:
        raise SpecError("expected 'label: field=value ...'", lineno, "label")
    label, rest = (s.strip() for s in text.split(":", 1))
    if not _LABEL.match(label):
        raise SpecError(f"bad label {label!r}", lineno, "label")
    values = dict.fromkeys(COEFF_NAMES, Fraction(0))
    twist = Mobius.identity()
    seen = set()
    for item in rest.split():
        if "=" not in item:
            raise SpecError(f"expected field=value, got {item!r}", lineno, item)
        key, val = item.split("=", 1)
        if key in seen:
            raise SpecError("repeated field", lineno, key)
        seen.add(key)
        if key in values:
            values[key] = _parse_value(val, lineno, key)
        elif key == "mobius":
            try:
                entries = [int(v) for v in val.split(",")]
            except ValueError:
                raise SpecError(f"bad integer in {val!r}", lineno, key) from None
            if len(entries) != 4:
                raise SpecError("mobius needs four integers", lineno, key)
            if entries[0] * entries[3] - entries[1] * entries[2] == 0:
                raise SpecError("mobius matrix is singular", lineno, key)
            twist = Mobius(*entries)
        else:
            raise SpecError(f"unknown field {key!r}", lineno, key)
    curve = WeierstrassCurve(*(values[n] for n in COEFF_NAMES))
    if curve.is_singular():
        raise SpecError("singular curve (discriminant 0)", lineno, "a1..a6")
    return CurveSpec(label, curve, twist, lineno)


def parse_spec(text: str) -> list[CurveSpec]:
    out, labels = [], set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        spec = parse_spec_line(raw, lineno)
        if spec is None:
            continue
        if spec.label in labels:
            raise SpecError(f"duplicate label {spec.label!r}", lineno, "label")
        labels.add(spec.label)
        out.append(spec)
    return out


def load_spec(path: str) -> list[CurveSpec]:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_spec(fh.read())
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}", 0, "file") from None


# --- reports ------------------------------------------------------------------

@dataclass
class RunReport:
    command: str
    inputs: dict
    results: dict
    moduli: dict = field(default_factory=lambda: {"version": MODULI_VERSION, "used": []})
    wall_ms: int = 0
    status: str = "ok"

    def as_dict(self) -> dict:
        return {"command": self.command, "status": self.status, "inputs": self.inputs,
                "results": self.results, "moduli": self.moduli, "wall_ms": self.wall_ms}

    @classmethod
    def from_dict(cls, d: dict) -> "RunReport":
        return cls(d["command"], d.get("inputs", {}), d.get("results", {}),
                   d.get("moduli", {}), d.get("wall_ms", 0), d.get("status", "ok"))

    def __eq__(self, other):
        return isinstance(other, RunReport) and self.as_dict() == other.as_dict()


def _escape(seg: str) -> str:
    return "".join("".join(f"%{b:02X}" for b in ch.encode()) if ch in ".%=#" or ch.isspace() or not ch.isprintable() else ch
                   for ch in seg)


def _unescape(seg: str) -> str:
    return unquote(seg)


def _flatten(obj, prefix, out):
    if isinstance(obj, dict):
        if not obj:
            out.append((prefix, "{}"))
        for k, v in obj.items():
            if not isinstance(k, str) or not k:
                raise TypeError(f"report keys must be non-empty strings, got {k!r}")
            _flatten(v, f"{prefix}.{_escape(k)}" if prefix else _escape(k), out)
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append((prefix, "[]"))
        for i, v in enumerate(obj):
            _flatten(v, f"{prefix}.#{i}", out)
    elif obj is None or isinstance(obj, (bool, int, str)):
        out.append((prefix, json.dumps(obj)))
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__} in a report")


def serialize(report: RunReport) -> str:
    out = []
    _flatten(report.as_dict(), "", out)
    return "".join(f"{k} = {v}\n" for k, v in out)


def _insert(root, segs, value):
    node = root
    for i, seg in enumerate(segs):
        last = i == len(segs) - 1
        key = int(seg[1:]) if seg.startswith("#") else _unescape(seg)
        nxt_is_list = not last and segs[i + 1].startswith("#")
        if isinstance(node, list):
            while len(node) <= key:
                node.append(None)
        if last:
            node[key] = value
        else:
            existing = node[key] if isinstance(node, list) else node.get(key)
            if existing is None:
                node[key] = [] if nxt_is_list else {}
            node = node[key]


def parse_report(text: str) -> RunReport:
    root: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        key, sep, raw = line.partition(" = ")
        if not sep:
            raise SpecError("expected 'key = value'", lineno, "report")
        if raw == "{}":
            value = {}
        elif raw == "[]":
            value = []
        else:
            try:
                value = json.loads(raw)
            except json.JSONDecodeError:
                raise SpecError(f"bad value {raw!r}", lineno, key) from None
        _insert(root, key.split("."), value)
    return RunReport.from_dict(root)


def _text_lines(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {_scalar(v)}"
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}-"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}- {_scalar(v)}"


def _scalar(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v == {} or v == []:
        return "(none)"
    return str(v)


def render_text(report: RunReport) -> str:
    head = [f"{report.command}: {report.status}"]
    summary = report.results.get("summary")
    if summary:
        head.append(summary if isinstance(summary, str) else "\n".join(summary))
    body = list(_text_lines({"inputs": report.inputs, "results": report.results}))
    tail = [f"moduli {report.moduli.get('version')}, {report.wall_ms} ms"]
    return "\n".join(head + body + tail) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".report-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def error_report(command: str, inputs: dict, exc: CommonTorsionError) -> RunReport:
    results = {"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
    for attr in ("line", "field"):
        if getattr(exc, attr, None) is not None:
            results[attr] = getattr(exc, attr)
    return RunReport(command, inputs, results, status="error")

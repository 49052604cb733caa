"""Serialization of polynomial tables and the on-disk result cache."""
from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .series import ChiPoly, format_poly, format_rational, parse_rational

CACHE_ENV = "DTWALL_CACHE_DIR"
#: bump when any formula feeding cached values changes
FORMULA_VERSION = "1"


def poly_to_json(p: ChiPoly) -> dict:
    return {str(d): format_rational(c) for d, c in sorted(p.coeffs.items())}


def poly_from_json(obj: dict) -> ChiPoly:
    return ChiPoly.from_mapping({int(d): parse_rational(c) for d, c in obj.items()})


def make_meta(command: str, order: int | None, **extra) -> dict:
    meta = {
        "tool": "dtwall",
        "version": __version__,
        "command": command,
        "order": order,
        "variable": "chi",
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    meta.update(extra)
    return meta


@dataclass
class OutputDocument:
    meta: dict
    payload: list = field(default_factory=list)

    def add(self, rank: int, n: int, poly: ChiPoly, **extra) -> None:
        rec = {"rank": rank, "n": n, "poly": poly}
        rec.update(extra)
        self.payload.append(rec)

    def polys(self) -> list:
        return [rec["poly"] for rec in self.payload]

    def to_json(self) -> str:
        records = []
        for rec in self.payload:
            out = dict(rec)
            out["poly"] = poly_to_json(rec["poly"])
            records.append(out)
        return json.dumps({"meta": self.meta, "payload": records}, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "OutputDocument":
        obj = json.loads(text)
        doc = cls(obj["meta"])
        for rec in obj["payload"]:
            rec = dict(rec)
            rec["poly"] = poly_from_json(rec["poly"])
            doc.payload.append(rec)
        return doc

    def payload_json(self) -> str:
        """The payload alone, for comparisons that ignore the timestamp."""
        return json.dumps(json.loads(self.to_json())["payload"], sort_keys=True)

    def to_csv(self) -> str:
        extras = [k for k in (self.payload[0] if self.payload else {})
                  if k not in ("rank", "n", "poly")]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "poly", *extras])
        for rec in self.payload:
            w.writerow([rec["n"], format_poly(rec["poly"]),
                        *[_cell(rec[k]) for k in extras]])
        return buf.getvalue()

    def to_table(self) -> str:
        extras = [k for k in (self.payload[0] if self.payload else {})
                  if k not in ("rank", "n", "poly")]
        rows = [("rank", "n", "value", *extras)]
        for rec in self.payload:
            rows.append((str(rec["rank"]), str(rec["n"]),
                         format_poly(rec["poly"], var="χ"),
                         *[_cell(rec[k]) for k in extras]))
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        lines = ["  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip()
                 for r in rows]
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_table()


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


class ResultCache:
    """Directory of JSON files, one per ``(kind, r, n)`` value."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    @classmethod
    def from_env(cls, override: str | None = None) -> "ResultCache | None":
        where = override or os.environ.get(CACHE_ENV)
        return cls(where) if where else None

    def _path(self, kind: str, r: int, n: int) -> Path:
        return self.root / f"{kind}_{r}_{n}_v{FORMULA_VERSION}.json"

    def get(self, kind: str, r: int, n: int) -> ChiPoly | None:
        path = self._path(kind, r, n)
        try:
            obj = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if obj.get("key") != [kind, r, n, FORMULA_VERSION]:
            return None
        return poly_from_json(obj["value"])

    def put(self, kind: str, r: int, n: int, value: ChiPoly) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self._path(kind, r, n)
        tmp = path.with_suffix(f".{os.getpid()}.tmp")
        tmp.write_text(json.dumps({"key": [kind, r, n, FORMULA_VERSION],
                                   "value": poly_to_json(value)}))
        os.replace(tmp, path)

    def clear(self) -> int:
        if not self.root.is_dir():
            return 0
        removed = 0
        for p in self.root.glob("*.json"):
            p.unlink()
            removed += 1
        return removed

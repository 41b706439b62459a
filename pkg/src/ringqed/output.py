"""CSV and JSON emission of sweep results.

Both formats embed the run record. CSV numbers use 17 significant digits;
JSON numbers use Python's shortest round-trip representation, so reading a
JSON file back reproduces every float bit for bit. Missing values (failed
points) are an empty CSV field or JSON ``null``.
"""
import json
import math
import sys

import numpy as np

FORMATS = ("csv", "json")


def _num(x):
    return "" if not math.isfinite(x) else format(float(x), ".17g")


def _json_num(x):
    x = float(x)
    return x if math.isfinite(x) else None


def render_csv(result, record):
    names = [a.name for a in result.spec.axes]
    lines = ["# record: " + json.dumps(record, sort_keys=True)]
    lines.append(",".join(names + list(result.columns) + ["status"]))
    for coord, vals, status in zip(result.coords, result.values, result.statuses):
        lines.append(",".join([_num(c) for c in coord] + [_num(v) for v in vals] + [status]))
    return "\n".join(lines) + "\n"


def render_json(result, record):
    doc = {
        "record": record,
        "axes": {a.name: [float(x) for x in a.values()] for a in result.spec.axes},
        "columns": list(result.columns),
        "coords": [[float(c) for c in row] for row in result.coords],
        "values": [[_json_num(v) for v in row] for row in result.values],
        "statuses": list(result.statuses),
    }
    return json.dumps(doc, sort_keys=True, indent=1, allow_nan=False) + "\n"


def render(result, record, fmt="csv"):
    if fmt == "csv":
        return render_csv(result, record)
    if fmt == "json":
        return render_json(result, record)
    raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")


def render_table(columns, rows, record, fmt="csv"):
    """Emit a plain table (rows of numbers or strings) with the record header."""
    if fmt == "json":
        doc = {"record": record, "columns": list(columns),
               "rows": [[_json_num(v) if isinstance(v, (int, float, np.floating)) else v for v in r]
                        for r in rows]}
        return json.dumps(doc, sort_keys=True, indent=1, allow_nan=False) + "\n"
    if fmt != "csv":
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    lines = ["# record: " + json.dumps(record, sort_keys=True), ",".join(columns)]
    for r in rows:
        lines.append(",".join(_num(v) if isinstance(v, (int, float, np.floating)) else str(v) for v in r))
    return "\n".join(lines) + "\n"


def write_text(text, path):
    """Write to ``path``; ``None`` or ``"-"`` means stdout."""
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def emit(result, record, fmt="csv", path=None):
    write_text(render(result, record, fmt), path)


def read_json(path):
    """Load a JSON result; values come back as a float array with NaN for null."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    doc["values"] = np.array([[math.nan if v is None else v for v in row] for row in doc["values"]],
                             dtype=float)
    return doc


def read_csv(path):
    """Load a CSV result as ``(record, header, rows)`` with rows as string lists."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    record = json.loads(lines[0][len("# record: "):])
    header = lines[1].split(",")
    rows = [ln.split(",") for ln in lines[2:]]
    return record, header, rows

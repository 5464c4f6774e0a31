"""CSV and key=value text formats shared by every module.

Floats are written with 17 significant digits so that a value read back
is bit-identical to the value written.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Iterable, Mapping, Sequence

__all__ = ["ConfigError", "format_value", "write_csv", "read_csv", "read_kv", "write_kv", "parse_kv"]


class ConfigError(ValueError):
    """Malformed key=value text."""


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    try:  # numpy scalars
        import numpy as np

        if isinstance(v, np.bool_):
            return format_value(bool(v))
        if isinstance(v, np.integer):
            return str(int(v))
        if isinstance(v, np.floating):
            return format_value(float(v))
        if isinstance(v, np.complexfloating):
            v = complex(v)
    except ImportError:  # pragma: no cover
        pass
    if isinstance(v, complex):
        return f"{format_value(v.real)}{'+' if v.imag >= 0 or math.isnan(v.imag) else '-'}{format_value(abs(v.imag))}j"
    return str(v)


def _open(target, mode):
    if hasattr(target, "write") or hasattr(target, "read"):
        return target, False
    return open(Path(target), mode, newline=""), True


def write_csv(target, header: Sequence[str], rows: Iterable[Sequence], verdict: Sequence | None = None):
    """Write a header line, the rows and an optional trailing verdict row.

    ``verdict`` is ``(check, params, passed, witness)``; it is written as
    ``verdict,<check>,<params>,PASS|FAIL,<witness>`` with ``params`` a
    mapping rendered as ``k=v;k=v``.
    """
    fh, close = _open(target, "w")
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(list(header))
        for row in rows:
            w.writerow([format_value(v) for v in row])
        if verdict is not None:
            check, params, passed, witness = verdict
            if isinstance(params, Mapping):
                params = ";".join(f"{k}={format_value(v)}" for k, v in params.items())
            w.writerow(["verdict", check, params, "PASS" if passed else "FAIL", format_value(witness)])
    finally:
        if close:
            fh.close()


def read_csv(source) -> tuple[list[str], list[list[str]]]:
    fh, close = _open(source, "r")
    try:
        rows = list(csv.reader(fh))
    finally:
        if close:
            fh.close()
    if not rows:
        return [], []
    return rows[0], rows[1:]


def parse_kv(text: str) -> dict[str, str]:
    """Parse ``key=value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = val
    return out


def read_kv(source) -> dict[str, str]:
    if isinstance(source, (str, Path)) and not str(source).count("\n"):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {source}: {exc}") from exc
    else:
        text = source.read() if hasattr(source, "read") else str(source)
    return parse_kv(text)


def write_kv(target, mapping: Mapping) -> None:
    lines = "".join(f"{k}={format_value(v)}\n" for k, v in mapping.items())
    if hasattr(target, "write"):
        target.write(lines)
    else:
        Path(target).write_text(lines)


def to_text(header, rows, verdict=None) -> str:
    buf = io.StringIO()
    write_csv(buf, header, rows, verdict)
    return buf.getvalue()

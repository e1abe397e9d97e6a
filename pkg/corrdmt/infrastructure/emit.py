"""Serialization of curve records to CSV and JSON lines."""

import csv
import io
import json
import logging
from pathlib import Path
from typing import Iterable, Literal, Optional, TextIO

from ..core.errors import ConfigFileError
from ..schemas.sweep import CurveRecord

logger = logging.getLogger(__name__)

OutputFormat = Literal["csv", "json-lines"]

FIELDS = ("quantity", "r", "eta_db", "rho", "value", "stderr", "b")


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else f"{x:.17g}"


def _fmt_b(b: Optional[tuple[float, ...]]) -> str:
    return "" if b is None else ";".join(_fmt(v) for v in b)


def _json_line(record: CurveRecord) -> str:
    """One JSON object; numbers written with 17 significant digits."""

    def num(x: Optional[float]) -> str:
        return "null" if x is None else _fmt(x)

    parts = [
        f'"quantity": {json.dumps(record.quantity)}',
        f'"r": {num(record.r)}',
        f'"eta_db": {num(record.eta_db)}',
        f'"rho": {num(record.rho)}',
        f'"value": {num(record.value)}',
        f'"stderr": {num(record.stderr)}',
        f'"b": {"null" if record.b is None else "[" + ", ".join(_fmt(v) for v in record.b) + "]"}',
    ]
    return "{" + ", ".join(parts) + "}"


def write_records(records: Iterable[CurveRecord], fmt: OutputFormat, stream: TextIO) -> None:
    """Write records to an open text stream in the given format."""
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(FIELDS)
        for rec in records:
            writer.writerow(
                [rec.quantity, _fmt(rec.r), _fmt(rec.eta_db), _fmt(rec.rho), _fmt(rec.value), _fmt(rec.stderr), _fmt_b(rec.b)]
            )
    elif fmt == "json-lines":
        for rec in records:
            stream.write(_json_line(rec) + "\n")
    else:
        raise ValueError(f"Unknown output format: '{fmt}'")


def emit(records: Iterable[CurveRecord], fmt: OutputFormat) -> str:
    """Serialize records to a string (header-only CSV for no records)."""
    buffer = io.StringIO()
    write_records(records, fmt, buffer)
    return buffer.getvalue()


def emit_to(records: Iterable[CurveRecord], fmt: OutputFormat, out: Optional[Path], stdout: TextIO) -> None:
    """Emit to a file, or to stdout when out is None.

    Raises:
        OSError: If the output path cannot be written
    """
    text = emit(records, fmt)
    if out is None:
        stdout.write(text)
        stdout.flush()
        return
    out.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {fmt} output to {out}")


def _parse_opt(text: str) -> Optional[float]:
    return None if text == "" else float(text)


def read_records(text: str, fmt: OutputFormat) -> list[CurveRecord]:
    """Parse emitted output back into records.

    Raises:
        ConfigFileError: If the text is not valid emitter output
    """
    try:
        if fmt == "csv":
            rows = list(csv.DictReader(io.StringIO(text)))
            return [
                CurveRecord(
                    quantity=row["quantity"],
                    r=_parse_opt(row["r"]),
                    eta_db=_parse_opt(row["eta_db"]),
                    rho=_parse_opt(row["rho"]),
                    value=float(row["value"]),
                    stderr=float(row["stderr"]),
                    b=tuple(float(v) for v in row["b"].split(";")) if row["b"] else None,
                )
                for row in rows
            ]
        if fmt == "json-lines":
            return [CurveRecord.model_validate(json.loads(line)) for line in text.splitlines() if line.strip()]
    except (KeyError, ValueError) as e:
        raise ConfigFileError(f"Cannot parse {fmt} records: {e}") from e
    raise ConfigFileError(f"Unknown output format: '{fmt}'")

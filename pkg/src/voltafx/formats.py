"""File formats: quote CSV, potential-table JSON documents, ledger CSV.

Quote CSV parsing is all-or-nothing: any invalid row fails the whole parse
and every problem is reported with its line number, because silently
skipping rows would skew a fit. Table documents round-trip losslessly
(floats are serialized with full round-trip precision).
"""

from __future__ import annotations

import csv
import io
import json
from importlib import resources
from pathlib import Path
from typing import Mapping

from .errors import ValidationError
from .parity import Quote
from .potentials import PotentialTable
from .simulation import ExchangeLedger

QUOTE_COLUMNS = ("base", "quote", "rate", "commission", "weight", "timestamp")
_REQUIRED_COLUMNS = ("base", "quote", "rate")
LEDGER_COLUMNS = ("step", "dissolved", "deposited", "commission", "emf_after")

# Reference potentials this close to zero are snapped to exactly zero on
# load; anything farther off means the document is not reference-pinned.
REFERENCE_ZERO_TOLERANCE = 1e-12


def parse_quotes_csv(text: str) -> list[Quote]:
    """Parse quote CSV text into a list of quotes.

    The header must name the columns base, quote, rate and optionally
    commission, weight, timestamp. Raises :class:`ValidationError` carrying
    every row error (with file line numbers) if anything is invalid.
    """
    rows = list(csv.reader(io.StringIO(text)))
    rows = [row for row in rows if row and any(cell.strip() for cell in row)]
    if not rows:
        raise ValidationError("missing header", errors=["line 1: missing header"])

    header = [cell.strip() for cell in rows[0]]
    errors: list[str] = []
    unknown = [name for name in header if name not in QUOTE_COLUMNS]
    missing = [name for name in _REQUIRED_COLUMNS if name not in header]
    if unknown:
        errors.append(f"line 1: unknown columns {unknown}")
    if missing:
        errors.append(f"line 1: missing required columns {missing}")
    if len(set(header)) != len(header):
        errors.append("line 1: duplicate column names")
    if errors:
        raise ValidationError("invalid quote CSV header", errors=errors)

    quotes: list[Quote] = []
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            errors.append(
                f"line {line_no}: expected {len(header)} fields, got {len(row)}"
            )
            continue
        record = {name: cell.strip() for name, cell in zip(header, row)}
        problems = []
        base = record.get("base", "")
        quote_code = record.get("quote", "")

        rate = _parse_float(record.get("rate", ""), "rate", problems)
        if rate is not None and rate <= 0:
            problems.append("rate must be positive")

        commission = 0.0
        if record.get("commission"):
            commission = _parse_float(record["commission"], "commission", problems)
            if commission is not None and not 0.0 <= commission < 1.0:
                problems.append("commission must lie in [0, 1)")

        weight = 1.0
        if record.get("weight"):
            weight = _parse_float(record["weight"], "weight", problems)
            if weight is not None and weight <= 0:
                problems.append("weight must be positive")

        timestamp = record.get("timestamp") or None

        if base and quote_code and base == quote_code:
            problems.append(f"base equals quote ({base})")

        if not problems:
            try:
                quotes.append(
                    Quote(
                        base=base,
                        quote=quote_code,
                        rate=rate,
                        commission=commission if commission is not None else 0.0,
                        weight=weight if weight is not None else 1.0,
                        timestamp=timestamp,
                    )
                )
            except ValueError as exc:
                problems.append(str(exc))
        errors.extend(f"line {line_no}: {problem}" for problem in problems)

    if errors:
        raise ValidationError(
            f"quote CSV has {len(errors)} invalid row(s)", errors=errors
        )
    return quotes


def _parse_float(text: str, name: str, problems: list[str]) -> float | None:
    try:
        return float(text)
    except ValueError:
        problems.append(f"{name} is not a number: {text!r}")
        return None


def quotes_to_csv(quotes: list[Quote]) -> str:
    """Serialize quotes with the full canonical header."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(QUOTE_COLUMNS)
    for q in quotes:
        writer.writerow(
            [q.base, q.quote, repr(q.rate), repr(q.commission), repr(q.weight),
             q.timestamp or ""]
        )
    return out.getvalue()


def save_table(table: PotentialTable, metadata: Mapping | None = None) -> str:
    """Serialize a table to its JSON document form.

    Entries are key-sorted and floats keep full round-trip precision, so
    ``load_table(save_table(t))`` reproduces ``t`` exactly.
    """
    document = {
        "reference": table.reference,
        "entries": {code: table.entries[code] for code in sorted(table.entries)},
        "metadata": dict(metadata) if metadata else {},
    }
    return json.dumps(document, indent=2) + "\n"


def load_table(document: str | Mapping) -> PotentialTable:
    """Parse a JSON table document into a validated PotentialTable.

    The reference entry must be present and zero (values within 1e-12 of
    zero are snapped to exactly zero; anything farther off is rejected).
    """
    if isinstance(document, str):
        try:
            payload = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"table document is not valid JSON: {exc}") from exc
    else:
        payload = document
    if not isinstance(payload, Mapping):
        raise ValidationError("table document must be a JSON object")

    reference = payload.get("reference")
    entries = payload.get("entries")
    if not isinstance(reference, str):
        raise ValidationError("table document needs a string 'reference' field")
    if not isinstance(entries, Mapping):
        raise ValidationError("table document needs an 'entries' object")

    parsed: dict[str, float] = {}
    for code, value in entries.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ValidationError(f"entry {code!r} is not a number: {value!r}")
        parsed[code] = float(value)

    if reference not in parsed:
        raise ValidationError(f"reference {reference!r} has no entry in the document")
    ref_value = parsed[reference]
    if abs(ref_value) > REFERENCE_ZERO_TOLERANCE:
        raise ValidationError(
            f"reference {reference!r} must have potential 0, got {ref_value!r}"
        )
    parsed[reference] = 0.0
    return PotentialTable(reference=reference, entries=parsed)


def load_table_file(path: str | Path) -> PotentialTable:
    return load_table(Path(path).read_text())


def save_table_file(
    table: PotentialTable, path: str | Path, metadata: Mapping | None = None
) -> None:
    Path(path).write_text(save_table(table, metadata))


def table_metadata(document: str | Mapping) -> dict:
    """Free-form metadata map of a document (empty if absent)."""
    payload = json.loads(document) if isinstance(document, str) else document
    metadata = payload.get("metadata", {})
    return dict(metadata) if isinstance(metadata, Mapping) else {}


def ledger_to_csv(ledger: ExchangeLedger) -> str:
    """Serialize a simulation ledger; integer columns sum to the final state."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(LEDGER_COLUMNS)
    for entry in ledger:
        writer.writerow(
            [entry.step, entry.dissolved, entry.deposited, entry.commission_taken,
             format(entry.emf_after, ".12g")]
        )
    return out.getvalue()


def write_ledger_csv(ledger: ExchangeLedger, path: str | Path) -> None:
    Path(path).write_text(ledger_to_csv(ledger))


def electrode_series_path() -> Path:
    """Filesystem path of the bundled electrode-series fixture table."""
    return Path(str(resources.files("voltafx.data").joinpath("electrode_series.json")))


def load_electrode_series() -> PotentialTable:
    """The bundled standard electrode-potential series as a PotentialTable."""
    return load_table(electrode_series_path().read_text())

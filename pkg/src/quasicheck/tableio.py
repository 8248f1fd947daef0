"""The Cayley-table text format.

Line 1 is the order n; the next n lines each hold n whitespace-separated
integers in {0..n-1}.  Row index = left operand, column index = right
operand.  Lines starting with '#' are comments; blank lines are ignored.
Streams of tables are separated by lines consisting of '---'.
"""

from __future__ import annotations

from pathlib import Path

from .magma import CayleyTable


class TableFormatError(ValueError):
    pass


def _payload_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((lineno, stripped))
    return out


def _parse_lines(lines: list[tuple[int, str]]) -> CayleyTable:
    if not lines:
        raise TableFormatError("empty table: missing order line")
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise TableFormatError(f"line {lineno}: order must be an integer, got {head!r}")
    if n < 1:
        raise TableFormatError(f"line {lineno}: order must be >= 1, got {n}")
    body = lines[1:]
    if len(body) != n:
        raise TableFormatError(f"expected {n} rows, found {len(body)}")
    rows = []
    for r, (lineno, line) in enumerate(body):
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise TableFormatError(f"line {lineno}: non-integer entry in row {r}")
        if len(row) != n:
            raise TableFormatError(
                f"line {lineno}: row {r} has {len(row)} entries, expected {n}"
            )
        for v in row:
            if not 0 <= v < n:
                raise TableFormatError(
                    f"line {lineno}: entry {v} out of range 0..{n - 1}"
                )
        rows.append(tuple(row))
    return CayleyTable(n, tuple(rows))


def parse_table_text(text: str) -> CayleyTable:
    return _parse_lines(_payload_lines(text))


def format_table(t: CayleyTable) -> str:
    rows = "\n".join(" ".join(str(v) for v in row) for row in t.entries)
    return f"{t.order}\n{rows}\n"


def parse_table_stream(text: str) -> list[CayleyTable]:
    chunks: list[list[tuple[int, str]]] = [[]]
    for lineno, line in _payload_lines(text):
        if line == "---":
            chunks.append([])
        else:
            chunks[-1].append((lineno, line))
    return [_parse_lines(chunk) for chunk in chunks if chunk]


def format_table_stream(tables) -> str:
    return "---\n".join(format_table(t) for t in tables)


def read_table(path) -> CayleyTable:
    return parse_table_text(Path(path).read_text())


def write_table(t: CayleyTable, path) -> None:
    Path(path).write_text(format_table(t))

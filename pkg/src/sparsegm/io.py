"""Dataset and graph serialization: CSV ingestion, canonical edge-list
files, and DOT export for external rendering."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .dataset import Dataset
from .errors import FormatError, InputError
from .graphs import AdjacencyMatrix


def read_dataset_csv(path, has_header: bool = True) -> Dataset:
    """Read a rectangular numeric CSV into a Dataset.

    With has_header=True the first row supplies the column labels;
    otherwise columns are labeled V1..Vd.  Ragged rows and non-numeric
    cells are rejected with their location.
    """
    path = Path(path)
    if not path.exists():
        raise InputError(f"no such file: {path}")
    labels: list[str] = []
    rows: list[list[float]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        width = None
        for lineno, row in enumerate(reader, start=1):
            if not row:
                continue
            if lineno == 1 and has_header:
                labels = [cell.strip() for cell in row]
                width = len(labels)
                continue
            if width is None:
                width = len(row)
            if len(row) != width:
                raise InputError(f"ragged row at line {lineno}: "
                                 f"expected {width} cells, got {len(row)}")
            parsed = []
            for colno, cell in enumerate(row, start=1):
                try:
                    parsed.append(float(cell))
                except ValueError:
                    raise InputError(
                        f"non-numeric cell at line {lineno}, column {colno}: "
                        f"{cell.strip()!r}"
                    ) from None
            rows.append(parsed)
    if len(rows) < 2 or (width or 0) < 2:
        raise InputError(
            f"need at least 2 rows and 2 columns, got {len(rows)}x{width or 0}"
        )
    return Dataset(values=np.asarray(rows), labels=labels)


def write_dataset_csv(x: Dataset, path) -> None:
    """Write a Dataset as CSV with a header row."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(x.labels)
        writer.writerows(x.values.tolist())


def write_graph_edgelist(graph: AdjacencyMatrix, path) -> None:
    """Write the canonical sparse form: a "# d=<d>" header followed by one
    "i,j" line (i < j, sorted) per edge."""
    lines = [f"# d={graph.d}"]
    lines.extend(f"{i},{j}" for i, j in graph.edges)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_graph_edgelist(path) -> AdjacencyMatrix:
    """Read a graph written by :func:`write_graph_edgelist`."""
    path = Path(path)
    if not path.exists():
        raise InputError(f"no such file: {path}")
    text = path.read_text(encoding="utf-8")
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines or not lines[0].startswith("# d="):
        raise FormatError("missing '# d=<d>' header at line 1")
    try:
        d = int(lines[0][4:])
    except ValueError:
        raise FormatError("malformed '# d=<d>' header at line 1") from None
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 2:
            raise FormatError(f"malformed edge at line {lineno}: {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(
                f"non-integer edge at line {lineno}: {line!r}"
            ) from None
        if not 0 <= i < j < d:
            raise FormatError(
                f"invalid edge ({i}, {j}) for d={d} at line {lineno}"
            )
        edges.append((i, j))
    try:
        return AdjacencyMatrix(d=d, edges=tuple(edges))
    except Exception as exc:
        raise FormatError(str(exc)) from exc


def _dot_quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(graph: AdjacencyMatrix, labels: list[str]) -> str:
    """Render a graph as DOT text, one node statement per label and one
    edge statement per edge, in canonical order.  Isolated nodes are kept
    so the rendered picture has all d vertices."""
    if len(labels) != graph.d:
        raise InputError(
            f"{len(labels)} labels for a {graph.d}-node graph"
        )
    lines = ["graph G {"]
    lines.extend(f"  {_dot_quote(lbl)};" for lbl in labels)
    lines.extend(
        f"  {_dot_quote(labels[i])} -- {_dot_quote(labels[j])};"
        for i, j in graph.edges
    )
    lines.append("}")
    return "\n".join(lines) + "\n"

"""CSV readers and writers for edge lists, adjacency grids and plain matrices.

Floats are written with ``repr`` so every value round-trips exactly and the
output never depends on locale.
"""
from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import InvalidArgument
from .graph import Graph


def _fmt(x: float) -> str:
    x = float(x)
    if x == 0.0:
        return "0.0"  # normalise -0.0
    return repr(x)


def _vertex_order(labels_seen: list[str]) -> list[str]:
    # Integer labels sort numerically so "0..n-1" files come back in index order.
    try:
        return sorted(labels_seen, key=int)
    except ValueError:
        return labels_seen


# -- edge list --------------------------------------------------------------


def edge_list_to_csv(g: Graph) -> str:
    """Edge list text: ``source,target[,weight]``.

    The weight column appears only when some weight differs from 1. Vertices
    without edges are emitted as ``label,`` rows so the vertex set survives.
    """
    weighted = g.is_weighted
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["source", "target", "weight"] if weighted else ["source", "target"])
    touched = set()
    for u, v, w in g.edges:
        touched.update((u, v))
        row = [g.label(u), g.label(v)]
        if weighted:
            row.append(_fmt(w))
        writer.writerow(row)
    for v in range(g.n):
        if v not in touched:
            writer.writerow([g.label(v), ""] + ([""] if weighted else []))
    return buf.getvalue()


def graph_from_edge_list_csv(text: str, directed: bool = False) -> Graph:
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip().lower() for h in next(reader)]
    except StopIteration:
        raise InvalidArgument("empty edge list") from None
    if header[:2] != ["source", "target"] or len(header) > 3 or (len(header) == 3 and header[2] != "weight"):
        raise InvalidArgument(f"bad edge list header {header!r}")
    seen: dict[str, None] = {}
    raw = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        src = row[0].strip()
        dst = row[1].strip() if len(row) > 1 else ""
        if not src:
            raise InvalidArgument(f"line {lineno}: missing source")
        seen.setdefault(src)
        if not dst:
            continue
        seen.setdefault(dst)
        w = 1.0
        if len(row) > 2 and row[2].strip():
            try:
                w = float(row[2])
            except ValueError:
                raise InvalidArgument(f"line {lineno}: bad weight {row[2]!r}") from None
        raw.append((src, dst, w))
    labels = _vertex_order(list(seen))
    index = {lab: i for i, lab in enumerate(labels)}
    return Graph(len(labels), directed, tuple((index[a], index[b], w) for a, b, w in raw), tuple(labels))


def write_edge_list(g: Graph, path: str | Path):
    Path(path).write_text(edge_list_to_csv(g), encoding="utf-8")


def read_edge_list(path: str | Path, directed: bool = False) -> Graph:
    return graph_from_edge_list_csv(Path(path).read_text(encoding="utf-8"), directed)


# -- matrices ---------------------------------------------------------------


def matrix_to_csv(m: np.ndarray, row_labels: Sequence[str] | None = None,
                  col_labels: Sequence[str] | None = None) -> str:
    m = np.atleast_2d(np.asarray(m, dtype=float))
    if row_labels is not None and len(row_labels) != m.shape[0]:
        raise InvalidArgument("row label count does not match matrix rows")
    if col_labels is not None and len(col_labels) != m.shape[1]:
        raise InvalidArgument("column label count does not match matrix columns")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if col_labels is not None:
        writer.writerow(([""] if row_labels is not None else []) + list(col_labels))
    for i, row in enumerate(m):
        cells = [_fmt(x) for x in row]
        writer.writerow(([row_labels[i]] if row_labels is not None else []) + cells)
    return buf.getvalue()


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def matrix_from_csv(text: str) -> tuple[np.ndarray, list[str] | None, list[str] | None]:
    """Parse a numeric grid whose first row and/or column may hold labels."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise InvalidArgument("empty matrix file")
    col_labels = None
    has_corner = not rows[0][0].strip()
    if has_corner or any(not _is_number(c) for c in rows[0]):
        col_labels = [c.strip() for c in rows[0][1:]] if has_corner else [c.strip() for c in rows[0]]
        rows = rows[1:]
    if not rows:
        raise InvalidArgument("matrix file has a header but no rows")
    row_labels = None
    if has_corner or any(not _is_number(r[0]) for r in rows):
        row_labels = [r[0].strip() for r in rows]
        rows = [r[1:] for r in rows]
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise InvalidArgument("ragged matrix rows")
    try:
        data = np.array([[float(c) for c in r] for r in rows], dtype=float)
    except ValueError as exc:
        raise InvalidArgument(f"non-numeric matrix entry: {exc}") from None
    if col_labels is not None and len(col_labels) != data.shape[1]:
        raise InvalidArgument("column label count does not match matrix columns")
    return data, row_labels, col_labels


def write_matrix(m: np.ndarray, path: str | Path, row_labels=None, col_labels=None):
    Path(path).write_text(matrix_to_csv(m, row_labels, col_labels), encoding="utf-8")


def read_matrix(path: str | Path):
    return matrix_from_csv(Path(path).read_text(encoding="utf-8"))


def adjacency_to_csv(g: Graph, labels: bool = True) -> str:
    from .matrices import adjacency_matrix

    names = [g.label(i) for i in range(g.n)] if labels else None
    return matrix_to_csv(adjacency_matrix(g), names, names)


def graph_from_adjacency_csv(text: str, directed: bool = False) -> Graph:
    from .matrices import graph_from_adjacency

    data, row_labels, col_labels = matrix_from_csv(text)
    labels = col_labels or row_labels
    return graph_from_adjacency(data, directed=directed, labels=labels)

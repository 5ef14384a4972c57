"""Plain-text file formats.

Matrix:          ``rows cols`` then ``rows`` lines of ``cols`` scalar tokens.
Graph:           ``n m`` then ``m`` lines ``u v w`` (0-indexed).
Function CSV:    header ``x,value``, one row per uniformly spaced sample.
Group:           ``n identity`` then ``n`` lines of ``n`` element indices.
Representation:  ``group <path>`` then per element
                 ``perm: p0 ... p(n-1); weights: w0 ... w(n-1)``.

Lines starting with ``#`` and blank lines are ignored everywhere.
``-inf`` (max-based) or ``inf`` (min-based) is the semiring zero; under
MaxMin ``inf`` is the unit.
"""
from __future__ import annotations

import csv
import io as _io
import math
import os
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import semiring as sr
from .errors import InputError
from .groups import FiniteGroup, validate_group
from .linalg import Matrix, WeightedGraph
from .representations import Representation
from .semiring import BOTTOM, Semiring
from .spectral import MonomialMatrix
from .transforms import SampledFunction

__all__ = [
    "ParseError", "parse_scalar", "format_scalar", "format_number",
    "read_matrix", "write_matrix", "read_graph", "write_graph",
    "read_function", "write_function", "read_group", "write_group",
    "read_representation", "write_representation",
]

REL_STEP_TOL = 1e-9


class ParseError(InputError):
    pass


def _lines(text: str):
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            yield line


def _number(tok: str):
    try:
        if "/" in tok:
            return Fraction(tok)
        if tok.lstrip("+-").isdigit():
            return int(tok)
        return float(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a number: {tok!r}") from None


def parse_scalar(tok: str, s: Semiring):
    low = tok.strip().lower()
    if low in ("-inf", "inf", "+inf", "-infinity", "infinity", "+infinity"):
        if s is sr.MAXMIN and not low.startswith("-"):
            return math.inf
        return BOTTOM
    try:
        return s.decode(s.encode(_number(low)))
    except InputError as exc:
        raise ParseError(str(exc)) from None


def format_number(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return f"{x:.12g}"


def format_scalar(x, s: Semiring) -> str:
    if x is BOTTOM:
        return "inf" if s.zero_code > 0 else "-inf"
    return format_number(x)


def _read_text(path_or_text) -> str:
    if isinstance(path_or_text, Path) or (isinstance(path_or_text, str) and os.path.exists(path_or_text)):
        return Path(path_or_text).read_text()
    raise ParseError(f"no such file: {path_or_text}")


def _ints(line: str, count: int, what: str) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise ParseError(f"{what}: expected {count} integers, got {line!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"{what}: expected integers, got {line!r}") from None


def parse_matrix(text: str, s: Semiring) -> Matrix:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty matrix file")
    rows, cols = _ints(lines[0], 2, "matrix header")
    if rows < 1 or cols < 1:
        raise ParseError("matrix dimensions must be positive")
    body = lines[1:]
    if len(body) != rows:
        raise ParseError(f"expected {rows} matrix rows, got {len(body)}")
    entries = []
    for line in body:
        toks = line.split()
        if len(toks) != cols:
            raise ParseError(f"expected {cols} entries in row {line!r}")
        entries.append([parse_scalar(t, s) for t in toks])
    return Matrix(s, entries)


def read_matrix(path, s: Semiring) -> Matrix:
    return parse_matrix(_read_text(path), s)


def format_matrix(A: Matrix, comments=()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{A.rows} {A.cols}")
    for row in A.entries():
        out.append(" ".join(format_scalar(x, A.semiring) for x in row))
    return "\n".join(out) + "\n"


def write_matrix(A: Matrix, path) -> None:
    Path(path).write_text(format_matrix(A))


def parse_graph(text: str, s: Semiring = sr.MINPLUS) -> WeightedGraph:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty graph file")
    n, m = _ints(lines[0], 2, "graph header")
    if len(lines) - 1 != m:
        raise ParseError(f"expected {m} edges, got {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"edge lines are 'u v w', got {line!r}")
        u, v = _ints(" ".join(parts[:2]), 2, "edge")
        edges.append((u, v, parse_scalar(parts[2], s)))
    return WeightedGraph(n, edges)


def read_graph(path, s: Semiring = sr.MINPLUS) -> WeightedGraph:
    return parse_graph(_read_text(path), s)


def format_graph(g: WeightedGraph, s: Semiring = sr.MINPLUS) -> str:
    out = [f"{g.node_count} {len(g.edges)}"]
    out += [f"{u} {v} {format_scalar(w, s)}" for u, v, w in g.edges]
    return "\n".join(out) + "\n"


def write_graph(g: WeightedGraph, path, s: Semiring = sr.MINPLUS) -> None:
    Path(path).write_text(format_graph(g, s))


def parse_function(text: str, s: Semiring) -> SampledFunction:
    rows = [r for r in csv.reader(_lines(text))]
    if not rows or [c.strip().lower() for c in rows[0]] != ["x", "value"]:
        raise ParseError("function CSV must start with the header 'x,value'")
    if len(rows) < 2:
        raise ParseError("function CSV has no samples")
    xs, vals = [], []
    for r in rows[1:]:
        if len(r) != 2:
            raise ParseError(f"expected 2 columns, got {r!r}")
        xs.append(_number(r[0].strip()))
        vals.append(parse_scalar(r[1], s))
    if len(xs) == 1:
        return SampledFunction(s, xs[0], 1, vals)
    step = (xs[-1] - xs[0]) / (len(xs) - 1)
    if not step > 0:
        raise ParseError("sample positions must be increasing")
    for i, x in enumerate(xs):
        if abs(x - (xs[0] + i * step)) > REL_STEP_TOL * abs(step) * max(1, i):
            raise ParseError(f"sample {i} at x={x} breaks the uniform step {step}")
    if isinstance(step, float) and step.is_integer() and all(isinstance(x, int) for x in xs):
        step = int(step)
    return SampledFunction(s, xs[0], step, vals)


def read_function(path, s: Semiring) -> SampledFunction:
    return parse_function(_read_text(path), s)


def format_function(f: SampledFunction, header=("x", "value")) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for x, v in zip(f.xs(), f.entries()):
        w.writerow([format_number(x), format_scalar(v, f.semiring)])
    return buf.getvalue()


def write_function(f: SampledFunction, path) -> None:
    Path(path).write_text(format_function(f))


def parse_group(text: str, name: str = "G") -> FiniteGroup:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty group file")
    n, identity = _ints(lines[0], 2, "group header")
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} table rows, got {len(lines) - 1}")
    table = [_ints(line, n, "table row") for line in lines[1:]]
    return validate_group(table, identity, name=name)


def read_group(path) -> FiniteGroup:
    return parse_group(_read_text(path), name=Path(path).stem)


def format_group(G: FiniteGroup) -> str:
    out = [f"{G.order} {G.identity}"]
    out += [" ".join(str(int(x)) for x in row) for row in G.table]
    return "\n".join(out) + "\n"


def write_group(G: FiniteGroup, path) -> None:
    Path(path).write_text(format_group(G))


def _parse_image(line: str) -> MonomialMatrix:
    try:
        perm_part, weight_part = line.split(";")
        pk, pv = perm_part.split(":")
        wk, wv = weight_part.split(":")
    except ValueError:
        raise ParseError(f"expected 'perm: ...; weights: ...', got {line!r}") from None
    if pk.strip() != "perm" or wk.strip() != "weights":
        raise ParseError(f"expected 'perm: ...; weights: ...', got {line!r}")
    perm = [int(p) for p in pv.split()]
    weights = [_number(w) for w in wv.split()]
    return MonomialMatrix(tuple(perm), tuple(weights))


def read_representation(path, group_path=None) -> Representation:
    """Read a representation; ``group_path`` overrides the file's own group line."""
    path = Path(path)
    lines = list(_lines(_read_text(path)))
    if not lines or not lines[0].startswith("group "):
        raise ParseError("representation file must start with 'group <path>'")
    gpath = group_path or path.parent / lines[0][len("group "):].strip()
    G = read_group(gpath)
    images = [_parse_image(line) for line in lines[1:]]
    if len(images) != G.order:
        raise ParseError(f"expected {G.order} images, got {len(images)}")
    return Representation(G, images)


def format_representation(pi: Representation, group_path: str) -> str:
    out = [f"group {group_path}"]
    for m in pi.images:
        out.append("perm: " + " ".join(map(str, m.perm)) + "; weights: "
                   + " ".join(format_number(w) for w in m.weights))
    return "\n".join(out) + "\n"


def write_representation(pi: Representation, path, group_path: str) -> None:
    Path(path).write_text(format_representation(pi, group_path))

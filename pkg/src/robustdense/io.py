"""Edge-list parsing and instance serialization.

Format: the first non-comment line is ``n m``; the next ``m``
non-comment lines describe one edge each, all with the same number of
columns:

* ``u v`` (unit weight implied)
* ``u v w``
* ``u v l r`` (interval bounds)
* ``u v l r w_true``

``#`` starts a comment, tokens are whitespace-separated, endpoints are
0-indexed integers in ``[0, n)``, and reals accept decimal or
scientific notation.
"""

from __future__ import annotations

import io as _io
import os
from typing import IO, Iterable, Union

import numpy as np

from .errors import ParseError
from .generators import UncertainInstance
from .graph import Graph, WeightSpace

__all__ = ["parse_instance", "parse_text", "write_instance", "write_graph", "ParseError"]

Source = Union[str, os.PathLike, IO[str]]


def _iter_content_lines(stream: IO[str]):
    for lineno, raw in enumerate(stream, start=1):
        text = raw.split("#", 1)[0].strip()
        if text:
            yield lineno, text


def _parse_int(token: str, what: str, path, lineno) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not an integer", path=path, line=lineno)


def _parse_real(token: str, what: str, path, lineno) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not a number", path=path, line=lineno)
    if not np.isfinite(value):
        raise ParseError(f"{what} must be finite, got {token!r}", path=path, line=lineno)
    return value


def _parse_stream(stream: IO[str], path):
    lines = _iter_content_lines(stream)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty input, expected a header line 'n m'", path=path)
    fields = header.split()
    if len(fields) != 2:
        raise ParseError(
            f"header must be 'n m', got {header!r}", path=path, line=lineno
        )
    n = _parse_int(fields[0], "vertex count", path, lineno)
    m = _parse_int(fields[1], "edge count", path, lineno)
    if n < 0 or m < 0:
        raise ParseError("header counts must be nonnegative", path=path, line=lineno)

    arity = None
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    columns: list[list[float]] = []
    for lineno, text in lines:
        fields = text.split()
        if arity is None:
            if len(fields) not in (2, 3, 4, 5):
                raise ParseError(
                    f"edge lines must have 2 to 5 columns, got {len(fields)}",
                    path=path, line=lineno,
                )
            arity = len(fields)
            columns = [[] for _ in range(arity - 2)]
        elif len(fields) != arity:
            raise ParseError(
                f"expected {arity} columns like the first edge line, got {len(fields)}",
                path=path, line=lineno,
            )
        a = _parse_int(fields[0], "endpoint", path, lineno)
        b = _parse_int(fields[1], "endpoint", path, lineno)
        if a == b:
            raise ParseError(f"self-loop at vertex {a}", path=path, line=lineno)
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(
                f"endpoint out of range: ({a}, {b}) with n={n}", path=path, line=lineno
            )
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ParseError(f"duplicate edge {key}", path=path, line=lineno)
        seen.add(key)

        values = [
            _parse_real(tok, f"column {i + 3}", path, lineno)
            for i, tok in enumerate(fields[2:])
        ]
        if arity == 3 and values[0] < 0.0:
            raise ParseError("negative edge weight", path=path, line=lineno)
        if arity >= 4:
            l, r = values[0], values[1]
            if l < 0.0:
                raise ParseError("negative interval lower bound", path=path, line=lineno)
            if l > r:
                raise ParseError(
                    f"interval lower bound {l} exceeds upper bound {r}",
                    path=path, line=lineno,
                )
            if arity == 5 and not l <= values[2] <= r:
                raise ParseError(
                    f"true weight {values[2]} outside interval [{l}, {r}]",
                    path=path, line=lineno,
                )
        pairs.append(key)
        for col, val in zip(columns, values):
            col.append(val)
        if len(pairs) > m:
            raise ParseError(
                f"more than the {m} edges announced in the header",
                path=path, line=lineno,
            )
    if len(pairs) != m:
        raise ParseError(f"expected {m} edges, found {len(pairs)}", path=path)

    graph = Graph(n, pairs)
    if arity is None or arity == 2:
        return graph, np.ones(m), None, None
    if arity == 3:
        return graph, np.asarray(columns[0], dtype=float), None, None
    space = WeightSpace(np.asarray(columns[0]), np.asarray(columns[1]))
    w_true = np.asarray(columns[2], dtype=float) if arity == 5 else None
    return graph, None, space, w_true


def parse_instance(source: Source):
    """Parse an edge-list file or text stream.

    Returns ``(Graph, weights)`` for 2- or 3-column inputs and an
    ``UncertainInstance`` (tagged ``manual``, true weights only when a
    fifth column is present) for 4- or 5-column inputs. Raises
    ``ParseError`` with the offending line number on malformed input.
    """
    if hasattr(source, "read"):
        graph, w, space, w_true = _parse_stream(source, getattr(source, "name", None))
    else:
        with open(source, "r", encoding="utf-8") as handle:
            graph, w, space, w_true = _parse_stream(handle, os.fspath(source))
    if space is None:
        return graph, w
    return UncertainInstance(
        graph=graph,
        space=space,
        w_true=w_true,
        planted_set=None,
        model_tag="manual",
        seed=None,
    )


def write_instance(inst: UncertainInstance, target: Source,
                   header_comments: Iterable[str] = ()) -> None:
    """Serialize an instance as a 4- or 5-column edge list.

    Floats are written with ``repr`` so a parse round-trips exactly.
    """
    g = inst.graph

    def _emit(handle: IO[str]) -> None:
        for comment in header_comments:
            handle.write(f"# {comment}\n")
        handle.write(f"# model={inst.model_tag} seed={inst.seed}\n")
        handle.write(f"{g.n} {g.m}\n")
        for eid, (a, b) in enumerate(g.edges):
            line = (f"{a} {b} {float(inst.space.lower[eid])!r}"
                    f" {float(inst.space.upper[eid])!r}")
            if inst.w_true is not None:
                line += f" {float(inst.w_true[eid])!r}"
            handle.write(line + "\n")

    if hasattr(target, "write"):
        _emit(target)
    else:
        with open(target, "w", encoding="utf-8") as handle:
            _emit(handle)


def write_graph(g: Graph, target: Source, weights=None,
                header_comments: Iterable[str] = ()) -> None:
    """Serialize a bare graph (optionally weighted) as an edge list."""

    def _emit(handle: IO[str]) -> None:
        for comment in header_comments:
            handle.write(f"# {comment}\n")
        handle.write(f"{g.n} {g.m}\n")
        for eid, (a, b) in enumerate(g.edges):
            if weights is None:
                handle.write(f"{a} {b}\n")
            else:
                handle.write(f"{a} {b} {float(weights[eid])!r}\n")

    if hasattr(target, "write"):
        _emit(target)
    else:
        with open(target, "w", encoding="utf-8") as handle:
            _emit(handle)


def parse_text(text: str):
    """Convenience wrapper: parse directly from a string."""
    return parse_instance(_io.StringIO(text))

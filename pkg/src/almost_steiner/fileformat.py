"""Reading and writing the plain-text design format (v1).

    # almost-steiner design v1
    n k t
    <k ascending vertex ids per line, colex-sorted>

Lines starting with ``#`` after the header are comments.
"""
from __future__ import annotations

import os
from pathlib import Path

from .core import Design
from .errors import ContractError, MalformedDesignError, ParameterError

HEADER = "# almost-steiner design v1"


def format_design(d: Design, t: int | None = None) -> str:
    t = d.t if t is None else t
    if t is None:
        raise ParameterError("a design file needs t; pass it explicitly or set Design.t")
    lines = [HEADER, f"{d.n} {d.k} {t}"]
    lines.extend(" ".join(map(str, e)) for e in d.edges)
    return "\n".join(lines) + "\n"


def parse_design(text: str) -> Design:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MalformedDesignError("empty file")
    if lines[0].rstrip("\r") != HEADER:
        raise MalformedDesignError(f"expected header {HEADER!r}", 1)
    body = [(i, ln) for i, ln in enumerate(lines[1:], start=2) if not ln.startswith("#")]
    if not body:
        raise MalformedDesignError("missing 'n k t' line", 2)
    lineno, params = body[0]
    try:
        n, k, t = (int(x) for x in params.split())
    except ValueError:
        raise MalformedDesignError(f"expected three integers 'n k t', got {params!r}", lineno) from None
    if not n > k > t >= 1:
        raise MalformedDesignError(f"need n > k > t >= 1, got {n} {k} {t}", lineno)

    edges = []
    seen = set()
    for lineno, ln in body[1:]:
        try:
            e = tuple(int(x) for x in ln.split())
        except ValueError:
            raise MalformedDesignError(f"non-integer vertex id in {ln!r}", lineno) from None
        if len(e) != k:
            raise MalformedDesignError(f"edge has {len(e)} vertices, expected {k}", lineno)
        if any(a >= b for a, b in zip(e, e[1:])):
            raise MalformedDesignError("vertex ids must be strictly ascending", lineno)
        if e[0] < 0 or e[-1] >= n:
            raise MalformedDesignError(f"vertex id outside [0, {n})", lineno)
        if e in seen:
            raise MalformedDesignError(f"duplicate edge {e}", lineno)
        seen.add(e)
        edges.append(e)
    try:
        return Design(n, k, tuple(edges), t)
    except (ContractError, ParameterError) as exc:  # pragma: no cover - checks above are stricter
        raise MalformedDesignError(str(exc)) from exc


def write_design(d: Design, path: str | os.PathLike, t: int | None = None) -> None:
    Path(path).write_bytes(format_design(d, t).encode("utf-8"))


def read_design(path: str | os.PathLike) -> Design:
    try:
        text = Path(path).read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedDesignError(f"not UTF-8: {exc}") from None
    return parse_design(text)

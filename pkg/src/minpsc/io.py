"""Plain-text instance and solution files.

Instance files::

    c optional comment
    p minpsc <n> <m>
    e <u> <v> <w>        (m lines, 0-based vertex ids)
    l <v> <value>        (optional vertex annotations)

Solution files list selected edges as ``s <u> <v>`` lines.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Mapping

from .errors import InvalidInstance, ParseError
from .graph import Instance


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {tok!r}") from None


def parse(text: str) -> tuple[Instance, dict[int, int]]:
    """Parse an instance file; returns the instance and its annotations."""
    header = None
    edges = []
    ell: dict[int, int] = {}
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("c"):
            continue
        tok = line.split()
        kind = tok[0]
        if kind == "p":
            if header is not None:
                raise ParseError(f"line {lineno}: duplicate problem line")
            if len(tok) != 4 or tok[1] != "minpsc":
                raise ParseError(f"line {lineno}: expected 'p minpsc <n> <m>'")
            header = (_int(tok[2], lineno), _int(tok[3], lineno))
        elif kind == "e":
            if header is None:
                raise ParseError(f"line {lineno}: edge before problem line")
            if len(tok) != 4:
                raise ParseError(f"line {lineno}: expected 'e <u> <v> <w>'")
            edges.append(tuple(_int(t, lineno) for t in tok[1:]))
        elif kind == "l":
            if len(tok) != 3:
                raise ParseError(f"line {lineno}: expected 'l <v> <value>'")
            v, val = _int(tok[1], lineno), _int(tok[2], lineno)
            if val < 0:
                raise ParseError(f"line {lineno}: negative annotation")
            ell[v] = val
        else:
            raise ParseError(f"line {lineno}: unknown line type {kind!r}")
    if header is None:
        raise ParseError("missing problem line")
    n, m = header
    if m != len(edges):
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    if any(not 0 <= v < n for v in ell):
        raise ParseError("annotation for a vertex out of range")
    try:
        inst = Instance(n, edges)
    except InvalidInstance as exc:
        raise ParseError(str(exc)) from exc
    return inst, ell


def render(instance: Instance, ell: Mapping[int, int] | None = None, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p minpsc {instance.n} {instance.m}")
    lines += [f"e {u} {v} {w}" for u, v, w in instance.edges]
    if ell:
        lines += [f"l {v} {ell[v]}" for v in sorted(ell)]
    return "\n".join(lines) + "\n"


def read_instance(path: str | Path) -> tuple[Instance, dict[int, int]]:
    return parse(Path(path).read_text(encoding="utf-8"))


def write_instance(path: str | Path, instance: Instance, ell=None, comments=()) -> None:
    Path(path).write_text(render(instance, ell, comments), encoding="utf-8", newline="\n")


def parse_solution(text: str) -> list[tuple[int, int]]:
    edges = []
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] != "s" or len(tok) != 3:
            raise ParseError(f"line {lineno}: expected 's <u> <v>'")
        edges.append((_int(tok[1], lineno), _int(tok[2], lineno)))
    return edges


def render_solution(edges: Iterable[tuple[int, int]]) -> str:
    return "".join(f"s {u} {v}\n" for u, v in edges)


def load_fixture(name: str) -> tuple[Instance, dict[int, int]]:
    """Read one of the bundled example instances, e.g. ``"fig1.gr"``."""
    from importlib.resources import files

    return parse(files("minpsc").joinpath("fixtures", name).read_text(encoding="utf-8"))

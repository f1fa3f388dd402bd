"""Line-oriented text formats for lattices and context hypergraphs.

Lattice document::

    # MO2
    format 1
    elements 0 a na b nb 1
    cover 0 a          # a covers 0
    ortho a na

Hypergraph document::

    format 1
    atoms a b c d e
    block a b c
    block c d e

``#`` starts a comment. Directives may repeat; declarations keep their order.
"""

from __future__ import annotations

import re
from pathlib import Path

from .catalog import catalog
from .hypergraph import ContextHypergraph, InvalidHypergraph
from .lattice import FiniteOrtholattice, LatticeError, build_from_covers, check_ortholattice

FORMAT_VERSION = 1

_TOKEN = re.compile(r"\S+")


class DocumentSyntaxError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class SemanticError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column
        self.message = message


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if tokens:
            yield lineno, tokens


def _format_line(lineno, tokens):
    if len(tokens) != 2:
        raise DocumentSyntaxError(lineno, tokens[0][1], "format takes exactly one version number")
    word, col = tokens[1]
    if word != str(FORMAT_VERSION):
        raise DocumentSyntaxError(lineno, col, f"unsupported format version {word!r}")


def parse_lattice(text: str) -> FiniteOrtholattice:
    labels: list[str] = []
    where: dict[str, tuple[int, int]] = {}
    covers = []
    orthos = []
    ortho_at: dict[str, tuple[int, int]] = {}

    def ref(lineno, token):
        name, col = token
        if name not in where:
            raise SemanticError(f"undeclared element {name!r}", lineno, col)
        return name

    for lineno, tokens in _lines(text):
        head, col = tokens[0]
        if head == "format":
            _format_line(lineno, tokens)
        elif head == "elements":
            for name, c in tokens[1:]:
                if name in where:
                    raise SemanticError(f"element {name!r} declared twice", lineno, c)
                where[name] = (lineno, c)
                labels.append(name)
        elif head in ("cover", "ortho"):
            if len(tokens) != 3:
                raise DocumentSyntaxError(lineno, col, f"{head} takes exactly two elements")
            a, b = ref(lineno, tokens[1]), ref(lineno, tokens[2])
            if head == "cover":
                covers.append((a, b))
            else:
                orthos.append((a, b))
                ortho_at.setdefault(a, (lineno, tokens[1][1]))
                ortho_at.setdefault(b, (lineno, tokens[2][1]))
        else:
            raise DocumentSyntaxError(lineno, col, f"unknown directive {head!r}")

    if not labels:
        raise SemanticError("document declares no elements")
    try:
        L = build_from_covers(covers, orthos, labels)
    except LatticeError as exc:
        raise SemanticError(str(exc)) from None
    bad = check_ortholattice(L)
    if bad is not None:
        line, column = ortho_at.get(L.labels[bad.elements[0]], (None, None))
        raise SemanticError(f"not an ortholattice: {bad.describe(L)}", line, column)
    return L


def emit_lattice(L: FiniteOrtholattice, title: str | None = None) -> str:
    out = []
    if title:
        out.append(f"# {title}")
    out.append(f"format {FORMAT_VERSION}")
    out.append("elements " + " ".join(L.labels))
    for lo, hi in L.covers:
        out.append(f"cover {L.labels[lo]} {L.labels[hi]}")
    for x in L.elements:
        if x <= L.ortho[x]:
            out.append(f"ortho {L.labels[x]} {L.labels[L.ortho[x]]}")
    return "\n".join(out) + "\n"


def parse_hypergraph(text: str) -> ContextHypergraph:
    atoms: list[str] = []
    index: dict[str, int] = {}
    blocks = []
    for lineno, tokens in _lines(text):
        head, col = tokens[0]
        if head == "format":
            _format_line(lineno, tokens)
        elif head == "atoms":
            for name, c in tokens[1:]:
                if name in index:
                    raise SemanticError(f"atom {name!r} declared twice", lineno, c)
                index[name] = len(atoms)
                atoms.append(name)
        elif head == "block":
            block = []
            for name, c in tokens[1:]:
                if name not in index:
                    raise SemanticError(f"undeclared atom {name!r}", lineno, c)
                if index[name] in block:
                    raise SemanticError(f"atom {name!r} repeated in block", lineno, c)
                block.append(index[name])
            blocks.append(tuple(block))
        else:
            raise DocumentSyntaxError(lineno, col, f"unknown directive {head!r}")
    H = ContextHypergraph(len(atoms), tuple(blocks), tuple(atoms))
    try:
        H.validate()
    except InvalidHypergraph as exc:
        raise SemanticError(str(exc)) from None
    return H


def emit_hypergraph(H: ContextHypergraph, title: str | None = None) -> str:
    out = [f"# {title}"] if title else []
    out.append(f"format {FORMAT_VERSION}")
    out.append("atoms " + " ".join(H.labels))
    for b in H.blocks:
        out.append("block " + " ".join(H.labels[a] for a in b))
    return "\n".join(out) + "\n"


def parse_document(text: str) -> FiniteOrtholattice | ContextHypergraph:
    """Parse either document kind, told apart by their declaration directive."""
    for _, tokens in _lines(text):
        head = tokens[0][0]
        if head in ("elements", "cover", "ortho"):
            return parse_lattice(text)
        if head in ("atoms", "block"):
            return parse_hypergraph(text)
    raise SemanticError("document declares neither elements nor atoms")


def load_source(source: str) -> FiniteOrtholattice | ContextHypergraph:
    """A readable file path, else a catalog fixture name."""
    path = Path(source)
    if path.is_file():
        return parse_document(path.read_text(encoding="utf-8"))
    return catalog(source)


def to_dot(L: FiniteOrtholattice, name: str = "hasse") -> str:
    """Hasse diagram in DOT; one edge per cover pair, bottom at the bottom."""
    out = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for x in L.elements:
        label = L.labels[x].replace("\\", "\\\\").replace('"', '\\"')
        out.append(f'  n{x} [label="{label}"];')
    for lo, hi in L.covers:
        out.append(f"  n{lo} -> n{hi};")
    out.append("}")
    return "\n".join(out) + "\n"

"""Decorated dual graphs: data model, text format and derived weights.

A graph file is line oriented::

    # comment
    v <id> <p> [e=<e>]
    e <id1> <id2> [m=<mult>]

Vertex lines must precede edges that reference them.  Repeated edge lines
for the same pair accumulate multiplicity.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Raised for malformed graph text or invalid graph data."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class DecoratedGraph:
    """A connected multigraph with arithmetic genera and optional weights.

    ``e`` holds the magnitudes ``-E_i^2`` and is either ``None`` or defined on
    every vertex.  Edge multiplicities are keyed by sorted vertex pairs.
    Construct through :meth:`build` (or :func:`parse_graph`) to get validation.
    """

    vertices: tuple[str, ...]
    p: Mapping[str, int]
    e: Mapping[str, int] | None = None
    edges: Mapping[tuple[str, str], int] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        p: Mapping[str, int] | Iterable[int],
        edges: Iterable[tuple[str, str]] | Mapping[tuple[str, str], int] = (),
        e: Mapping[str, int] | Iterable[int] | None = None,
    ) -> "DecoratedGraph":
        vertices = tuple(vertices)
        if not isinstance(p, Mapping):
            p = dict(zip(vertices, p, strict=True))
        if e is not None and not isinstance(e, Mapping):
            e = dict(zip(vertices, e, strict=True))
        mult: dict[tuple[str, str], int] = {}
        items = edges.items() if isinstance(edges, Mapping) else ((pair, 1) for pair in edges)
        for (a, b), m in items:
            key = _pair(a, b)
            mult[key] = mult.get(key, 0) + m
        g = cls(
            vertices=vertices,
            p=MappingProxyType({v: int(p[v]) for v in vertices}),
            e=None if e is None else MappingProxyType({v: int(e[v]) for v in vertices}),
            edges=MappingProxyType(mult),
        )
        problems = validate(g)
        if problems:
            raise GraphError("; ".join(problems))
        return g

    def __len__(self) -> int:
        return len(self.vertices)

    def mult(self, a: str, b: str) -> int:
        if a == b:
            return 0
        return self.edges.get(_pair(a, b), 0)

    def neighbors(self, v: str) -> list[str]:
        return [w for w in self.vertices if w != v and self.mult(v, w) > 0]

    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def adjacency(self) -> list[list[int]]:
        """Edge multiplicity matrix in canonical vertex order (zero diagonal)."""
        return [[self.mult(a, b) for b in self.vertices] for a in self.vertices]

    def p_vector(self) -> list[int]:
        return [self.p[v] for v in self.vertices]

    def e_vector(self) -> list[int]:
        if self.e is None:
            raise GraphError("graph carries no self-intersection weights")
        return [self.e[v] for v in self.vertices]

    def with_e(self, e: Mapping[str, int] | Iterable[int] | None) -> "DecoratedGraph":
        return DecoratedGraph.build(self.vertices, self.p, self.edges, e)

    def without_e(self) -> "DecoratedGraph":
        return self.with_e(None)


@dataclass(frozen=True)
class DerivedWeights:
    v: Mapping[str, int]
    q: Mapping[str, int]


def validate(g: DecoratedGraph) -> list[str]:
    """Return human-readable invariant violations; empty when ``g`` is valid."""
    problems = []
    seen = set()
    for v in g.vertices:
        if not v or any(c.isspace() for c in v):
            problems.append(f"invalid vertex id {v!r}")
        if v in seen:
            problems.append(f"duplicate vertex {v!r}")
        seen.add(v)
    for v in g.vertices:
        if v not in g.p:
            problems.append(f"missing genus for vertex {v!r}")
        elif g.p[v] < 0:
            problems.append(f"negative genus at vertex {v!r}")
    if g.e is not None:
        for v in g.vertices:
            if v not in g.e:
                problems.append(f"missing self-intersection weight for vertex {v!r}")
            elif g.e[v] < 1:
                problems.append(f"non-positive self-intersection weight at vertex {v!r}")
    for (a, b), m in g.edges.items():
        if a == b:
            problems.append(f"loop edge at vertex {a!r}")
        if a not in seen or b not in seen:
            problems.append(f"edge references unknown vertex ({a!r}, {b!r})")
        if m < 0:
            problems.append(f"negative edge multiplicity ({a!r}, {b!r})")
    if not g.vertices:
        problems.append("empty graph")
    elif not problems and not _connected(g):
        problems.append("disconnected graph")
    return problems


def _connected(g: DecoratedGraph) -> bool:
    adj: dict[str, list[str]] = {v: [] for v in g.vertices}
    for (a, b), m in g.edges.items():
        if m > 0:
            adj[a].append(b)
            adj[b].append(a)
    start = g.vertices[0]
    seen = {start}
    todo = deque([start])
    while todo:
        for w in adj[todo.popleft()]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(g.vertices)


def derived_weights(g: DecoratedGraph) -> DerivedWeights:
    """Valency ``v_i`` (with multiplicity) and ``q_i = v_i + 2 p_i - 2``."""
    v = {a: sum(g.mult(a, b) for b in g.vertices) for a in g.vertices}
    q = {a: v[a] + 2 * g.p[a] - 2 for a in g.vertices}
    return DerivedWeights(MappingProxyType(v), MappingProxyType(q))


def _parse_int(token: str, what: str, lineno: int, col: int, minimum: int) -> int:
    try:
        value = int(token, 10)
    except ValueError:
        raise GraphError(f"expected integer {what}, got {token!r}", lineno, col) from None
    if value < minimum:
        if what == "e":
            raise GraphError(f"self-intersection weight must be >= {minimum}, got {value}", lineno, col)
        raise GraphError(f"{what} must be >= {minimum}, got {value}", lineno, col)
    return value


def parse_graph(text: str | bytes) -> DecoratedGraph:
    """Parse the line format described in the module docstring."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    vertices: list[str] = []
    p: dict[str, int] = {}
    e: dict[str, int] = {}
    edges: dict[tuple[str, str], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = []
        pos = 0
        for tok in stripped.split():
            pos = raw.index(tok, pos)
            tokens.append((tok, pos + 1))
            pos += len(tok)
        kind, kcol = tokens[0]
        if kind == "v":
            if len(tokens) not in (3, 4):
                raise GraphError("vertex line needs 'v <id> <p> [e=<e>]'", lineno, kcol)
            name, ncol = tokens[1]
            if name in p:
                raise GraphError(f"duplicate vertex {name!r}", lineno, ncol)
            vertices.append(name)
            p[name] = _parse_int(tokens[2][0], "genus p", lineno, tokens[2][1], 0)
            if len(tokens) == 4:
                tok, col = tokens[3]
                if not tok.startswith("e="):
                    raise GraphError(f"expected 'e=<e>', got {tok!r}", lineno, col)
                e[name] = _parse_int(tok[2:], "e", lineno, col + 2, 1)
        elif kind == "e":
            if len(tokens) not in (3, 4):
                raise GraphError("edge line needs 'e <id1> <id2> [m=<mult>]'", lineno, kcol)
            (a, acol), (b, bcol) = tokens[1], tokens[2]
            for name, col in ((a, acol), (b, bcol)):
                if name not in p:
                    raise GraphError(f"edge references unknown vertex {name!r}", lineno, col)
            if a == b:
                raise GraphError(f"loop edge at vertex {a!r}", lineno, kcol)
            m = 1
            if len(tokens) == 4:
                tok, col = tokens[3]
                if not tok.startswith("m="):
                    raise GraphError(f"expected 'm=<mult>', got {tok!r}", lineno, col)
                m = _parse_int(tok[2:], "multiplicity", lineno, col + 2, 1)
            key = _pair(a, b)
            edges[key] = edges.get(key, 0) + m
        else:
            raise GraphError(f"unknown line type {kind!r}", lineno, kcol)
    if e and len(e) != len(vertices):
        missing = [v for v in vertices if v not in e]
        raise GraphError(f"e given on some but not all vertices (missing: {', '.join(missing)})")
    return DecoratedGraph.build(vertices, p, edges, e or None)


def serialize(g: DecoratedGraph) -> str:
    lines = []
    for v in g.vertices:
        line = f"v {v} {g.p[v]}"
        if g.e is not None:
            line += f" e={g.e[v]}"
        lines.append(line)
    order = g.index()
    for (a, b), m in sorted(g.edges.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])):
        if m > 0:
            lines.append(f"e {a} {b}" + (f" m={m}" if m > 1 else ""))
    return "\n".join(lines) + "\n"


def to_dot(g: DecoratedGraph, name: str = "G") -> str:
    """Graphviz rendering with ``p`` (and ``e`` when known) as vertex labels."""
    out = [f"graph {name} {{"]
    for v in g.vertices:
        label = f"{v}\\np={g.p[v]}"
        if g.e is not None:
            label += f"\\ne={g.e[v]}"
        out.append(f'  "{v}" [label="{label}"];')
    order = g.index()
    for (a, b), m in sorted(g.edges.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])):
        if m > 0:
            out.append(f'  "{a}" -- "{b}" [label="{m}"];')
    out.append("}")
    return "\n".join(out) + "\n"

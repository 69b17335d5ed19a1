"""Structural recognisers: Du Val trees, cusp cycles, minimality, zero-n cases."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

from .graph import DecoratedGraph, derived_weights


class InconsistentSolutionError(AssertionError):
    """A reported solution violates the zero-coefficient trichotomy (solver bug)."""


class ZeroCase(enum.Enum):
    CUSP_ALL_ZERO = "cusp_all_zero"
    VALENCY_ONE = "valency_one"
    ISOLATED_ELLIPTIC = "isolated_elliptic"


@dataclass(frozen=True)
class ZeroVertexCase:
    vertex: str
    case: ZeroCase


@dataclass(frozen=True)
class Classification:
    du_val: str | None
    cusp: bool
    minimal: bool | None
    shape: str | None = None


def dynkin_shape(g: DecoratedGraph) -> str | None:
    """ADE label of the underlying graph, ignoring all weights.

    Returns ``"A3"``, ``"D5"``, ``"E7"`` and so on, or ``None``.
    """
    n = len(g)
    if any(m != 1 for m in g.edges.values() if m):
        return None
    if sum(1 for m in g.edges.values() if m) != n - 1:
        return None
    deg = {v: len(g.neighbors(v)) for v in g.vertices}
    branch = [v for v in g.vertices if deg[v] >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1 or deg[branch[0]] != 3:
        return None
    center = branch[0]
    arms = []
    for start in g.neighbors(center):
        length, prev, cur = 1, center, start
        while deg[cur] == 2:
            prev, cur = cur, next(w for w in g.neighbors(cur) if w != prev)
            length += 1
        arms.append(length)
    arms.sort()
    a, b, c = arms
    if a == 1 and b == 1:
        return f"D{n}"
    if (a, b) == (1, 2) and c in (2, 3, 4):
        return f"E{n}"
    return None


def is_cusp_graph(g: DecoratedGraph) -> bool:
    """Circle-shaped (every valency 2, so a cycle of length >= 2) with all genera zero."""
    v = derived_weights(g).v
    return len(g) >= 2 and all(v[a] == 2 for a in g.vertices) and all(g.p[a] == 0 for a in g.vertices)


def is_minimal(g: DecoratedGraph) -> bool:
    return not any(g.p[v] == 0 and g.e[v] == 1 for v in g.vertices)


def classify(g: DecoratedGraph) -> Classification:
    shape = dynkin_shape(g)
    cusp = is_cusp_graph(g)
    if g.e is None:
        return Classification(du_val=None, cusp=cusp, minimal=None, shape=shape)
    du_val = None
    if shape and all(g.p[v] == 0 and g.e[v] == 2 for v in g.vertices):
        du_val = shape
    return Classification(du_val=du_val, cusp=cusp, minimal=is_minimal(g), shape=shape)


def zero_n_analysis(g: DecoratedGraph, n: Mapping[str, int] | Sequence[int]) -> list[ZeroVertexCase]:
    """Case of every vertex with ``n_i = 0``, checking the trichotomy for it.

    ``g`` must carry the solution's weights (or none); ``n`` must have zero
    adjunction residual.  Raises :class:`InconsistentSolutionError` if a case's
    conclusions fail.
    """
    if isinstance(n, Mapping):
        n = {v: n[v] for v in g.vertices}
    else:
        n = dict(zip(g.vertices, n, strict=True))
    val = derived_weights(g).v
    cases = []
    for v in g.vertices:
        if n[v] != 0:
            continue
        if val[v] > 2:
            raise InconsistentSolutionError(f"vertex {v} has n=0 but valency {val[v]} > 2")
        if val[v] == 2:
            if not is_cusp_graph(g) or any(n[w] for w in g.vertices):
                raise InconsistentSolutionError(f"vertex {v} has n=0, valency 2, outside the all-zero cusp case")
            cases.append(ZeroVertexCase(v, ZeroCase.CUSP_ALL_ZERO))
        elif val[v] == 1:
            (w,) = g.neighbors(v)
            if g.p[v] != 0 or n[w] != 1:
                raise InconsistentSolutionError(f"vertex {v} has n=0, valency 1, but p={g.p[v]}, neighbour n={n[w]}")
            cases.append(ZeroVertexCase(v, ZeroCase.VALENCY_ONE))
        else:
            if g.p[v] != 1:
                raise InconsistentSolutionError(f"isolated vertex {v} has n=0 but p={g.p[v]}")
            cases.append(ZeroVertexCase(v, ZeroCase.ISOLATED_ELLIPTIC))
    return cases

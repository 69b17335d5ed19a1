"""Brute-force reference for the enumerator.

Deliberately shares no search logic with :mod:`ngorenstein.enumeration`: the
residual is scanned over the whole ``(n, e)`` box and definiteness is decided
by plain rational Gaussian elimination instead of Bareiss minors.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .enumeration import Solution
from .graph import DecoratedGraph

DEFAULT_MAX_BOX = 2_000_000_000


class OracleBoxTooLarge(ValueError):
    pass


def naive_negative_definite(m: Sequence[Sequence[int]]) -> bool:
    """Negative definite iff elimination without pivoting meets only negative pivots."""
    a = [[Fraction(x) for x in row] for row in m]
    size = len(a)
    for k in range(size):
        pivot = a[k][k]
        if pivot >= 0:
            return False
        for i in range(k + 1, size):
            f = a[i][k] / pivot
            if f:
                for j in range(k, size):
                    a[i][j] -= f * a[k][j]
    return True


def brute_force_oracle(
    g: DecoratedGraph,
    max_n: int,
    max_e: int,
    require_minimal: bool = True,
    max_box: int = DEFAULT_MAX_BOX,
    backend: str | None = None,
) -> list[Solution]:
    """Every ``(n, e)`` in ``[0, max_n]^V x [1, max_e]^V`` with zero residual,
    negative definite form and (optionally) minimal weights, sorted."""
    size = len(g)
    box = (max_n + 1) ** size * max_e**size
    if box > max_box:
        raise OracleBoxTooLarge(f"box has {box} points, guard is {max_box}")
    adj = np.array(g.adjacency(), dtype=np.int64).reshape(size, size)
    valency = adj.sum(axis=1)
    p = np.array(g.p_vector(), dtype=np.int64)
    q = valency + 2 * p - 2
    hits_n, hits_e = _kernels.scan_residual_box(adj, q, max_n, max_e, backend=backend)
    floors = [2 if require_minimal and pi == 0 else 1 for pi in g.p_vector()]
    out = []
    adj_rows = g.adjacency()
    for n, e in zip(hits_n.tolist(), hits_e.tolist()):
        if any(ei < fl for ei, fl in zip(e, floors)):
            continue
        m = [list(row) for row in adj_rows]
        for i, ei in enumerate(e):
            m[i][i] = -ei
        if naive_negative_definite(m):
            out.append(Solution(tuple(n), tuple(e)))
    out.sort()
    return out

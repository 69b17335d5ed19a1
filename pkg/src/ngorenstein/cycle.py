"""Anti-canonical cycle, numerical Gorenstein test and adjunction checks."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .graph import DecoratedGraph, derived_weights
from .linalg import intersection_matrix, is_negative_definite, mat_vec, solve_exact


class NotNegativeDefiniteError(ValueError):
    """The intersection form is not negative definite, so Z_K is undefined."""


class LemmaWarning(UserWarning):
    """Effectivity or positivity expected of a minimal resolution fails."""


@dataclass(frozen=True)
class CycleReport:
    z: tuple[Fraction, ...]
    integral: bool
    effective: bool
    n: tuple[int, ...] | None

    @property
    def positive(self) -> bool:
        return all(zi >= 1 for zi in self.z)


def _as_vector(g: DecoratedGraph, d: Mapping[str, int] | Sequence[int]) -> list[int]:
    if isinstance(d, Mapping):
        return [int(d.get(v, 0)) for v in g.vertices]
    d = [int(x) for x in d]
    if len(d) != len(g):
        raise ValueError(f"cycle has {len(d)} coefficients, graph has {len(g)} vertices")
    return d


def canonical_rhs(g: DecoratedGraph) -> list[int]:
    """``Z_K . E_i = -K . E_i = 2 - 2 p_i - e_i``."""
    return [2 - 2 * g.p[v] - g.e[v] for v in g.vertices]


def anticanonical_cycle(g: DecoratedGraph, check_lemmas: bool = False) -> CycleReport:
    """Solve for the coefficients of Z_K exactly.

    With ``check_lemmas`` a :class:`LemmaWarning` is emitted when a minimal
    graph yields a non-effective cycle, or a non Du Val n-Gorenstein one has a
    zero coefficient.
    """
    m = intersection_matrix(g)
    if not is_negative_definite(m):
        raise NotNegativeDefiniteError("intersection form is not negative definite")
    z = tuple(solve_exact(m, canonical_rhs(g)))
    integral = all(zi.denominator == 1 for zi in z)
    effective = all(zi >= 0 for zi in z)
    n = tuple(int(zi) - 1 for zi in z) if integral and all(zi >= 1 for zi in z) else None
    report = CycleReport(z, integral, effective, n)
    if check_lemmas:
        _check_lemmas(g, report)
    return report


def _check_lemmas(g: DecoratedGraph, report: CycleReport) -> None:
    from .classify import classify

    cls = classify(g)
    if cls.minimal and not report.effective:
        warnings.warn("minimal graph with non-effective anti-canonical cycle", LemmaWarning, stacklevel=3)
    if cls.minimal and report.integral and cls.du_val is None and not report.positive:
        warnings.warn("n-Gorenstein non Du Val graph with a zero coefficient", LemmaWarning, stacklevel=3)


def is_n_gorenstein(g: DecoratedGraph) -> bool:
    return anticanonical_cycle(g).integral


def arithmetic_genus(g: DecoratedGraph, d: Mapping[str, int] | Sequence[int]) -> Fraction:
    """``1 + (D.D + K.D) / 2`` with ``K.D = -(M d) . z``."""
    dv = _as_vector(g, d)
    m = intersection_matrix(g)
    z = anticanonical_cycle(g).z
    md = mat_vec(m, dv)
    dd = sum(a * b for a, b in zip(dv, md))
    kd = -sum(a * b for a, b in zip(md, z))
    return 1 + Fraction(dd + kd) / 2


def adjunction_residual(g: DecoratedGraph, n: Mapping[str, int] | Sequence[int]) -> list[int]:
    """Per-vertex ``e_i n_i - q_i - sum_j e_ij n_j``; all zero iff ``(n, e)`` solves the system."""
    nv = _as_vector(g, n)
    q = derived_weights(g).q
    adj = g.adjacency()
    e = g.e_vector()
    return [
        e[i] * nv[i] - q[v] - sum(adj[i][j] * nv[j] for j in range(len(nv)))
        for i, v in enumerate(g.vertices)
    ]

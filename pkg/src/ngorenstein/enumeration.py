"""Enumerate the weightings ``e`` making ``(graph, p)`` numerically Gorenstein.

Unknowns are ``n_i = z_i - 1 >= 0`` and ``e_i >= 1`` with

    e_i n_i = q_i + sum_j e_ij n_j        for every vertex i

and a negative definite intersection form.  The search is exhaustive for
``n`` in ``[0, max_n]^V``; nothing beyond that bound is certified.  Vertices
with ``n_i = 0`` leave ``e_i`` unconstrained by the equations, so those
solutions come out as families described by the minimal elements of the
(upward closed) set of admissible free weights.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from .classify import InconsistentSolutionError, dynkin_shape
from .cycle import adjunction_residual
from .graph import DecoratedGraph, derived_weights, parse_graph, serialize
from .linalg import is_negative_definite, matrix_from_weights

BOUND_CAVEAT = (
    "exhaustive for n in [0, max_n]^V only; no completeness is claimed beyond the bound"
)


class StabilityWarning(UserWarning):
    """Doubling max_n produced n-vectors absent at the original bound."""


@dataclass(frozen=True)
class EnumerationConfig:
    max_n: int = 64
    max_e_probe: int = 16
    require_minimal: bool = True
    include_du_val: bool = True
    jobs: int = 1

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError("max_n must be >= 1")
        if self.max_e_probe < 3:
            raise ValueError("max_e_probe must be >= 3")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")


@dataclass(frozen=True, order=True)
class Solution:
    n: tuple[int, ...]
    e: tuple[int, ...]

    @property
    def z(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self.n)


@dataclass(frozen=True)
class SolutionFamily:
    """Solutions sharing ``n``; ``e`` is forced off ``free`` and ranges over
    the upward closure of ``minimal_elements`` on it.

    ``fixed_e`` is in canonical vertex order with ``None`` at free vertices;
    each minimal element lists values for ``free`` in that order.
    """

    n: tuple[int, ...]
    fixed_e: tuple[int | None, ...]
    free: tuple[str, ...]
    minimal_elements: tuple[tuple[int, ...], ...]
    floors: tuple[int, ...]
    truncated: bool = False

    @property
    def z(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self.n)

    def contains(self, e: Sequence[int], free_index: Sequence[int]) -> bool:
        for i, fe in enumerate(self.fixed_e):
            if fe is not None and e[i] != fe:
                return False
        sub = [e[i] for i in free_index]
        if any(a < f for a, f in zip(sub, self.floors)):
            return False
        return any(all(a >= m for a, m in zip(sub, mel)) for mel in self.minimal_elements)


@dataclass(frozen=True)
class DuValSolution:
    tag: str
    e: tuple[int, ...]

    @property
    def z(self) -> tuple[int, ...]:
        return (0,) * len(self.e)


@dataclass
class EnumerationResult:
    vertices: tuple[str, ...]
    solutions: list[Solution]
    families: list[SolutionFamily]
    du_val: list[DuValSolution]
    max_n: int
    exhaustive_up_to_bound: bool = True
    caveat: str = BOUND_CAVEAT
    config: EnumerationConfig = field(default_factory=EnumerationConfig)

    def n_vectors(self) -> set[tuple[int, ...]]:
        return {s.n for s in self.solutions} | {f.n for f in self.families}

    def box_section(self, max_e: int) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
        """All ``(n, e)`` pairs with ``e <= max_e`` described by this result.

        Du Val entries are left out; they sit outside the ``n`` parametrisation.
        """
        out = {(s.n, s.e) for s in self.solutions if max(s.e) <= max_e}
        index = {v: i for i, v in enumerate(self.vertices)}
        for fam in self.families:
            if any(fe is not None and fe > max_e for fe in fam.fixed_e):
                continue
            free_idx = [index[v] for v in fam.free]
            ranges = [range(f, max_e + 1) for f in fam.floors]
            for assign in product(*ranges):
                if any(all(a >= m for a, m in zip(assign, mel)) for mel in fam.minimal_elements):
                    e = list(fam.fixed_e)
                    for i, a in zip(free_idx, assign):
                        e[i] = a
                    out.add((fam.n, tuple(e)))
        return out


class _Problem:
    """Graph data flattened to index form for the search."""

    def __init__(self, g: DecoratedGraph, cfg: EnumerationConfig):
        self.g = g
        self.cfg = cfg
        self.size = len(g)
        self.adj = g.adjacency()
        dw = derived_weights(g)
        self.q = [dw.q[v] for v in g.vertices]
        self.valency = [dw.v[v] for v in g.vertices]
        self.floor = [
            2 if cfg.require_minimal and g.p[v] == 0 else 1 for v in g.vertices
        ]
        self.nbrs = [[j for j in range(self.size) if self.adj[i][j]] for i in range(self.size)]
        # n_i = 0 forces q_i + sum e_ij n_j = 0 with a non-negative sum
        self.zero_ok = [q <= 0 for q in self.q]
        self.order = self._order()
        pos = {v: t for t, v in enumerate(self.order)}
        close_time = [max([pos[i]] + [pos[j] for j in self.nbrs[i]]) for i in range(self.size)]
        self.closing = [[i for i in range(self.size) if close_time[i] == t] for t in range(self.size)]

    def _order(self) -> list[int]:
        if self.size == 0:
            return []
        first = max(range(self.size), key=lambda i: (self.valency[i], -i))
        order = [first]
        placed = {first}
        while len(order) < self.size:
            def score(j):
                own_closed = all(k in placed for k in self.nbrs[j])
                closes = sum(
                    1 for i in self.nbrs[j]
                    if i in placed and all(k in placed or k == j for k in self.nbrs[i])
                )
                touching = sum(1 for k in self.nbrs[j] if k in placed)
                return (own_closed, closes, touching, self.valency[j], -j)

            nxt = max((j for j in range(self.size) if j not in placed), key=score)
            order.append(nxt)
            placed.add(nxt)
        return order

    def load(self, i: int, n: list[int]) -> int:
        return self.q[i] + sum(self.adj[i][j] * n[j] for j in self.nbrs[i])

    def satisfied(self, i: int, n: list[int]) -> bool:
        s = self.load(i, n)
        if n[i] == 0:
            return s == 0
        return s % n[i] == 0 and s // n[i] >= self.floor[i]

    def candidates(self, t: int, n: list[int]) -> Iterator[int]:
        j = self.order[t]
        max_n = self.cfg.max_n
        if j in self.closing[t]:
            # every neighbour already placed: n_j must divide its load
            s = self.load(j, n)
            if s == 0 and self.zero_ok[j]:
                yield 0
            if s > 0:
                for d in _divisors(s):
                    if d > max_n:
                        break
                    if s // d >= self.floor[j]:
                        yield d
            return
        closers = [i for i in self.closing[t] if i != j]
        for i in closers:
            if n[i] == 0:
                # that neighbour's load must vanish: n_j is pinned
                base = self.load(i, n)
                a = self.adj[i][j]
                if (-base) % a == 0 and 0 <= -base // a <= max_n:
                    yield -base // a
                return
        for i in closers:
            # n_i | base + a * n_j and the quotient is at least the floor
            base = self.load(i, n)
            a = self.adj[i][j]
            g = math.gcd(a, n[i])
            if (-base) % g:
                return
            mod = n[i] // g
            x0 = ((-base // g) * pow(a // g, -1, mod)) % mod if mod > 1 else 0
            lo = max(0, -(-(self.floor[i] * n[i] - base) // a))
            yield from range(lo + (x0 - lo) % mod, max_n + 1, mod)
            return
        yield from range(0 if self.zero_ok[j] else 1, max_n + 1)

    def search(self, root_values: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
        if self.size == 0:
            return
        n = [0] * self.size

        def rec(t):
            j = self.order[t]
            cands = self.candidates(t, n)
            if t == 0 and root_values is not None:
                allowed = set(root_values)
                cands = (x for x in cands if x in allowed)
            for x in cands:
                if x == 0 and not self.zero_ok[j]:
                    continue
                n[j] = x
                if all(self.satisfied(i, n) for i in self.closing[t]):
                    if t + 1 == self.size:
                        yield tuple(n)
                    else:
                        yield from rec(t + 1)
            n[j] = 0

        yield from rec(0)


def _divisors(s: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= s:
        if s % d == 0:
            small.append(d)
            if d * d != s:
                large.append(s // d)
        d += 1
    return small + large[::-1]


def candidate_n_vectors(g: DecoratedGraph, cfg: EnumerationConfig | None = None) -> Iterator[tuple[int, ...]]:
    """Every ``n`` in ``[0, max_n]^V`` passing the per-vertex zero/divisibility screen."""
    cfg = cfg or EnumerationConfig()
    return _Problem(g, cfg).search()


def forced_weights(g: DecoratedGraph, n: Sequence[int]) -> list[int | None]:
    q = derived_weights(g).q
    adj = g.adjacency()
    out: list[int | None] = []
    for i, v in enumerate(g.vertices):
        if n[i] == 0:
            out.append(None)
        else:
            s = q[v] + sum(adj[i][j] * n[j] for j in range(len(n)))
            if s % n[i]:
                raise ValueError(f"n does not pass the divisibility screen at {v}")
            out.append(s // n[i])
    return out


def _floors(g: DecoratedGraph, cfg: EnumerationConfig) -> list[int]:
    return [2 if cfg.require_minimal and g.p[v] == 0 else 1 for v in g.vertices]


def minimal_free_weights(
    g: DecoratedGraph,
    fixed_e: Sequence[int | None],
    free: Sequence[str],
    cfg: EnumerationConfig | None = None,
) -> tuple[list[tuple[int, ...]], bool]:
    """Minimal free-weight assignments giving a negative definite form.

    Adding to any weight keeps a negative definite form negative definite, so
    the admissible set is upward closed and its minimal elements describe it.
    They are found coordinate by coordinate: at each level the value grows
    until the floor point of the remaining coordinates becomes admissible.
    Returns ``(antichain, truncated)``; ``truncated`` means some minimal
    element might have a coordinate above ``max_e_probe``.
    """
    cfg = cfg or EnumerationConfig()
    index = g.index()
    free_idx = [index[v] for v in free]
    floors_all = _floors(g, cfg)
    floors = [floors_all[i] for i in free_idx]
    adj = g.adjacency()
    cap = cfg.max_e_probe
    memo: dict[tuple[int, ...], bool] = {}

    def admissible(assign: tuple[int, ...]) -> bool:
        hit = memo.get(assign)
        if hit is None:
            e = list(fixed_e)
            for i, a in zip(free_idx, assign):
                e[i] = a
            hit = memo[assign] = is_negative_definite(matrix_from_weights(adj, e))
        return hit

    def rec(prefix: tuple[int, ...]) -> tuple[list[tuple[int, ...]], bool]:
        k = len(prefix)
        if k == len(free_idx):
            return ([()] if admissible(prefix) else []), False
        rest_floor = tuple(floors[k + 1 :])
        result: list[tuple[int, ...]] = []
        truncated = False
        prev: list[tuple[int, ...]] = []
        for val in range(floors[k], cap + 1):
            sub, t = rec(prefix + (val,))
            truncated |= t
            for b in sub:
                if not any(all(x <= y for x, y in zip(m, b)) for m in prev):
                    result.append((val,) + b)
            prev = sub
            if rest_floor in sub:
                break
        else:
            truncated = True
        return result, truncated

    antichain, truncated = rec(())
    return sorted(antichain), truncated


def solutions_for_n(
    g: DecoratedGraph, n: Sequence[int], cfg: EnumerationConfig | None = None
) -> Solution | SolutionFamily | None:
    cfg = cfg or EnumerationConfig()
    n = tuple(n)
    fixed = forced_weights(g, n)
    floors = _floors(g, cfg)
    if any(fe is not None and fe < fl for fe, fl in zip(fixed, floors)):
        return None
    adj = g.adjacency()
    if all(fe is not None for fe in fixed):
        e = tuple(fixed)
        if is_negative_definite(matrix_from_weights(adj, e)):
            return Solution(n, e)
        return None
    fixed_idx = [i for i, fe in enumerate(fixed) if fe is not None]
    # the fixed block is a principal submatrix: it must be definite on its own,
    # and when it is, large enough free weights always complete it
    if fixed_idx:
        block = [[adj[i][j] if i != j else -fixed[i] for j in fixed_idx] for i in fixed_idx]
        if not is_negative_definite(block):
            return None
    free = tuple(g.vertices[i] for i, fe in enumerate(fixed) if fe is None)
    antichain, truncated = minimal_free_weights(g, fixed, free, cfg)
    return SolutionFamily(
        n=n,
        fixed_e=tuple(fixed),
        free=free,
        minimal_elements=tuple(antichain),
        floors=tuple(floors[i] for i, fe in enumerate(fixed) if fe is None),
        truncated=truncated,
    )


def _search_chunk(text: str, cfg: EnumerationConfig, roots: list[int]) -> list[tuple[int, ...]]:
    g = parse_graph(text)
    return list(_Problem(g, cfg).search(roots))


def _all_candidates(g: DecoratedGraph, cfg: EnumerationConfig) -> list[tuple[int, ...]]:
    if cfg.jobs == 1 or len(g) == 0:
        return list(candidate_n_vectors(g, cfg))
    roots = list(range(cfg.max_n + 1))
    chunks = [roots[k :: cfg.jobs] for k in range(cfg.jobs)]
    text = serialize(g.without_e() if g.e is not None else g)
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        parts = pool.map(_search_chunk, [text] * cfg.jobs, [cfg] * cfg.jobs, chunks)
        return [n for part in parts for n in part]


def enumerate_weights(g: DecoratedGraph, cfg: EnumerationConfig | None = None) -> EnumerationResult:
    """All solutions and families with ``n <= max_n``, plus the Du Val entry if any.

    Any weights carried by ``g`` are ignored.
    """
    cfg = cfg or EnumerationConfig()
    if g.e is not None:
        g = g.without_e()
    solutions, families = [], []
    for n in sorted(set(_all_candidates(g, cfg))):
        found = solutions_for_n(g, n, cfg)
        if isinstance(found, Solution):
            if any(adjunction_residual(g.with_e(found.e), found.n)):
                raise InconsistentSolutionError(f"non-zero residual for {found}")
            solutions.append(found)
        elif found is not None:
            families.append(found)
    du_val = []
    if cfg.include_du_val and all(g.p[v] == 0 for v in g.vertices):
        tag = dynkin_shape(g)
        if tag is not None:
            du_val.append(DuValSolution(tag, (2,) * len(g)))
    solutions.sort()
    families.sort(key=lambda f: f.n)
    return EnumerationResult(
        vertices=g.vertices,
        solutions=solutions,
        families=families,
        du_val=du_val,
        max_n=cfg.max_n,
        config=cfg,
    )


def stability_check(g: DecoratedGraph, cfg: EnumerationConfig | None = None) -> list[tuple[int, ...]]:
    """Re-run with ``2 * max_n``; warn about (and return) any new ``n`` vectors."""
    cfg = cfg or EnumerationConfig()
    base = enumerate_weights(g, cfg).n_vectors()
    doubled = EnumerationConfig(
        max_n=2 * cfg.max_n,
        max_e_probe=cfg.max_e_probe,
        require_minimal=cfg.require_minimal,
        include_du_val=cfg.include_du_val,
        jobs=cfg.jobs,
    )
    new = sorted(enumerate_weights(g, doubled).n_vectors() - base)
    if new:
        warnings.warn(
            f"{len(new)} new n-vector(s) appear when max_n is doubled to {doubled.max_n}",
            StabilityWarning,
            stacklevel=2,
        )
    return new

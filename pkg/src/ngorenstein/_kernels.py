"""Residual scan over an (n, e) box: numba kernel plus numpy fallback.

Set ``NGORENSTEIN_DISABLE_JIT=1`` to force the numpy path.  The numba path is
also skipped when numba cannot be imported.  Both return identical hits.
Entries stay small (n <= max_n, e <= max_e), so int64 cannot overflow for any
box the oracle guard admits.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba as nb
except ImportError:  # pragma: no cover
    nb = None

JIT_DISABLED = nb is None or os.environ.get("NGORENSTEIN_DISABLE_JIT", "").strip().lower() in ("1", "true", "yes")
BACKEND = "numpy" if JIT_DISABLED else "numba"


def _njit(func):
    if nb is None:
        return func
    return nb.njit(cache=True)(func)


@_njit
def _scan_numba(adj, q, max_n, max_e, fill, out_n, out_e):
    # fill=False: count hits only; fill=True: write them into out_n / out_e
    nv = q.shape[0]
    n = np.zeros(nv, dtype=np.int64)
    s = np.empty(nv, dtype=np.int64)
    e = np.ones(nv, dtype=np.int64)
    total_n = (max_n + 1) ** nv
    total_e = max_e ** nv
    hits = 0
    for _ in range(total_n):
        for i in range(nv):
            acc = q[i]
            for j in range(nv):
                acc += adj[i, j] * n[j]
            s[i] = acc
        for i in range(nv):
            e[i] = 1
        for _ in range(total_e):
            ok = True
            for i in range(nv):
                if e[i] * n[i] - s[i] != 0:
                    ok = False
                    break
            if ok:
                if fill:
                    for i in range(nv):
                        out_n[hits, i] = n[i]
                        out_e[hits, i] = e[i]
                hits += 1
            # little-endian odometer over [1, max_e]^nv
            i = 0
            while i < nv:
                e[i] += 1
                if e[i] <= max_e:
                    break
                e[i] = 1
                i += 1
        i = 0
        while i < nv:
            n[i] += 1
            if n[i] <= max_n:
                break
            n[i] = 0
            i += 1
    return hits


def _box(radix: int, nv: int, offset: int) -> np.ndarray:
    """All vectors of length ``nv`` with digits ``offset .. offset+radix-1``, little endian."""
    idx = np.arange(radix**nv, dtype=np.int64)
    cols = [(idx // radix**i) % radix + offset for i in range(nv)]
    return np.stack(cols, axis=1) if cols else np.zeros((1, 0), dtype=np.int64)


def _scan_numpy(adj, q, max_n, max_e, chunk_elems=1 << 22):
    nv = q.shape[0]
    ns = _box(max_n + 1, nv, 0)
    es = _box(max_e, nv, 1)
    s_all = q[None, :] + ns @ adj.T
    step = max(1, chunk_elems // max(1, es.shape[0] * max(nv, 1)))
    found_n, found_e = [], []
    for start in range(0, ns.shape[0], step):
        n = ns[start : start + step]
        s = s_all[start : start + step]
        resid = n[:, None, :] * es[None, :, :] - s[:, None, :]
        hit_n, hit_e = np.nonzero((resid == 0).all(axis=2))
        found_n.append(n[hit_n])
        found_e.append(es[hit_e])
    return np.concatenate(found_n), np.concatenate(found_e)


def scan_residual_box(adj, q, max_n: int, max_e: int, backend: str | None = None):
    """Every ``(n, e)`` in ``[0, max_n]^V x [1, max_e]^V`` with zero residual.

    Returns two int64 arrays of shape ``(hits, V)`` ordered by ``n`` index then
    ``e`` index (little-endian mixed radix in both backends).
    """
    adj = np.ascontiguousarray(adj, dtype=np.int64)
    q = np.ascontiguousarray(q, dtype=np.int64)
    backend = backend or BACKEND
    if backend == "numpy":
        return _scan_numpy(adj, q, max_n, max_e)
    if backend != "numba" or nb is None:
        raise ValueError(f"unknown or unavailable backend {backend!r}")
    nv = q.shape[0]
    dummy = np.zeros((0, nv), dtype=np.int64)
    count = _scan_numba(adj, q, max_n, max_e, False, dummy, dummy)
    out_n = np.zeros((count, nv), dtype=np.int64)
    out_e = np.zeros((count, nv), dtype=np.int64)
    _scan_numba(adj, q, max_n, max_e, True, out_n, out_e)
    return out_n, out_e

"""Hot loops over Cayley tables and edge lists.

Every kernel exists twice: an ``_nb`` variant compiled with numba and a
``_np`` variant written with vectorised numpy.  The public wrappers pick one
at call time from :data:`ahg._accel.USE_NUMBA`, so both paths stay testable
in one process and ``benchmarks/bench_kernels.py`` can time them side by side.

Tables are ``(m, m)`` integer arrays with entry ``t[a, b] = a * b``.
"""

import numpy as np

from . import _accel
from ._accel import njit

INDEX_DTYPE = np.int64


# ---------------------------------------------------------------------------
# associating triples
# ---------------------------------------------------------------------------


@njit
def _associating_triples_nb(t):
    m = t.shape[0]
    count = 0
    for x in range(m):
        for y in range(m):
            if y == x:
                continue
            xy = t[x, y]
            for z in range(m):
                if z == x or z == y:
                    continue
                if t[xy, z] == t[x, t[y, z]]:
                    count += 1
    out = np.empty((count, 3), dtype=np.int64)
    k = 0
    for x in range(m):
        for y in range(m):
            if y == x:
                continue
            xy = t[x, y]
            for z in range(m):
                if z == x or z == y:
                    continue
                if t[xy, z] == t[x, t[y, z]]:
                    out[k, 0] = x
                    out[k, 1] = y
                    out[k, 2] = z
                    k += 1
    return out


def _association_cube_np(t):
    m = t.shape[0]
    left = t[t]  # left[x, y, z] = t[t[x, y], z]
    right = t[np.arange(m)[:, None, None], t[None, :, :]]  # t[x, t[y, z]]
    return left == right


def _associating_triples_np(t):
    m = t.shape[0]
    ok = _association_cube_np(t)
    idx = np.arange(m)
    distinct = (
        (idx[:, None, None] != idx[None, :, None])
        & (idx[:, None, None] != idx[None, None, :])
        & (idx[None, :, None] != idx[None, None, :])
    )
    # argwhere walks in C order, which is the lexicographic triple order
    return np.argwhere(ok & distinct).astype(INDEX_DTYPE)


def associating_triples(table):
    """All ordered triples of pairwise-distinct elements with ``(xy)z == x(yz)``.

    Rows come back in lexicographic order.
    """
    t = np.ascontiguousarray(table, dtype=INDEX_DTYPE)
    if _accel.USE_NUMBA:
        return _associating_triples_nb(t)
    return _associating_triples_np(t)


# ---------------------------------------------------------------------------
# first non-associating triple
# ---------------------------------------------------------------------------


@njit
def _first_nonassociative_nb(t):
    m = t.shape[0]
    for x in range(m):
        for y in range(m):
            xy = t[x, y]
            for z in range(m):
                if t[xy, z] != t[x, t[y, z]]:
                    return x, y, z
    return -1, -1, -1


def _first_nonassociative_np(t):
    bad = ~_association_cube_np(t)
    if not bad.any():
        return -1, -1, -1
    x, y, z = np.unravel_index(int(np.argmax(bad)), bad.shape)
    return int(x), int(y), int(z)


def first_nonassociative(table):
    """Lexicographically first ``(x, y, z)`` with ``(xy)z != x(yz)``, or ``None``."""
    t = np.ascontiguousarray(table, dtype=INDEX_DTYPE)
    if _accel.USE_NUMBA:
        hit = _first_nonassociative_nb(t)
    else:
        hit = _first_nonassociative_np(t)
    if hit[0] < 0:
        return None
    return tuple(int(v) for v in hit)


# ---------------------------------------------------------------------------
# Moufang identities
# ---------------------------------------------------------------------------
# 1: (x y)(z x) = (x (y z)) x
# 2: x (y (z y)) = ((x y) z) y
# 3: x (y (x z)) = ((x y) x) z


@njit
def _moufang_violation_nb(t):
    m = t.shape[0]
    for ident in range(1, 4):
        for x in range(m):
            for y in range(m):
                for z in range(m):
                    if ident == 1:
                        lhs = t[t[x, y], t[z, x]]
                        rhs = t[t[x, t[y, z]], x]
                    elif ident == 2:
                        lhs = t[x, t[y, t[z, y]]]
                        rhs = t[t[t[x, y], z], y]
                    else:
                        lhs = t[x, t[y, t[x, z]]]
                        rhs = t[t[t[x, y], x], z]
                    if lhs != rhs:
                        return ident, x, y, z
    return 0, -1, -1, -1


def _moufang_violation_np(t):
    m = t.shape[0]
    X = np.arange(m)[:, None, None]
    Y = np.arange(m)[None, :, None]
    Z = np.arange(m)[None, None, :]
    sides = (
        (t[t[X, Y], t[Z, X]], t[t[X, t[Y, Z]], X]),
        (t[X, t[Y, t[Z, Y]]], t[t[t[X, Y], Z], Y]),
        (t[X, t[Y, t[X, Z]]], t[t[t[X, Y], X], Z]),
    )
    for ident, (lhs, rhs) in enumerate(sides, start=1):
        bad = lhs != rhs
        if bad.any():
            x, y, z = np.unravel_index(int(np.argmax(bad)), bad.shape)
            return ident, int(x), int(y), int(z)
    return 0, -1, -1, -1


def moufang_violation(table):
    """First ``(identity_id, x, y, z)`` violating a Moufang identity, or ``None``.

    Identities are scanned in order 1, 2, 3; triples lexicographically.
    """
    t = np.ascontiguousarray(table, dtype=INDEX_DTYPE)
    if _accel.USE_NUMBA:
        hit = _moufang_violation_nb(t)
    else:
        hit = _moufang_violation_np(t)
    if hit[0] == 0:
        return None
    return tuple(int(v) for v in hit)


# ---------------------------------------------------------------------------
# co-occurrence (2-section) of a 3-uniform edge list
# ---------------------------------------------------------------------------


@njit
def _cooccurrence_nb(edges, m):
    adj = np.zeros((m, m), dtype=np.bool_)
    for k in range(edges.shape[0]):
        a = edges[k, 0]
        b = edges[k, 1]
        c = edges[k, 2]
        adj[a, b] = True
        adj[b, a] = True
        adj[a, c] = True
        adj[c, a] = True
        adj[b, c] = True
        adj[c, b] = True
    return adj


def _cooccurrence_np(edges, m):
    adj = np.zeros((m, m), dtype=bool)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        adj[edges[:, i], edges[:, j]] = True
        adj[edges[:, j], edges[:, i]] = True
    return adj


def cooccurrence(edges, m):
    """Boolean ``(m, m)`` matrix: ``True`` where two vertices share an edge."""
    e = np.ascontiguousarray(edges, dtype=INDEX_DTYPE).reshape(-1, 3)
    if _accel.USE_NUMBA:
        return _cooccurrence_nb(e, int(m))
    return _cooccurrence_np(e, int(m))

"""Right eigenvalues of quaternion matrices.

The eigenvalues of the complex representation ``chi(A)`` come in conjugate
pairs; the upper half-plane representatives are the standard eigenvalues of
``A``.  They are computed by Householder reduction to Hessenberg form followed
by shifted QR iteration, then grouped into clusters.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .config import DEFAULT_TOL, Tolerance
from .errors import NoConvergence
from .qmatrix import QMatrix, adjoint_complex
from .quaternion import sort_desc


class EigenPair(NamedTuple):
    value: complex
    multiplicity: int


EigenList = list[EigenPair]


def hessenberg(c: np.ndarray) -> np.ndarray:
    """Unitary similarity to upper Hessenberg form (Householder)."""
    h = np.array(c, dtype=complex)
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        h[k + 1 :, :] -= 2.0 * np.outer(v, v.conj() @ h[k + 1 :, :])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v.conj())
        h[k + 2 :, k] = 0.0
    return h


def _wilkinson_shift(a, b, c, d):
    # eigenvalue of [[a, b], [c, d]] closer to d
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c)
    mu1, mu2 = d + half + disc, d + half - disc
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def hessenberg_eigvals(h: np.ndarray, max_iter: int | None = None) -> np.ndarray:
    """Eigenvalues of an upper Hessenberg matrix by single-shift complex QR.

    Deflates on negligible subdiagonals; an exceptional shift is used after 10
    and 20 iterations without deflation.  Raises :class:`NoConvergence` once the
    total iteration count exceeds ``max_iter`` (default ``100 n``).
    """
    h = np.array(h, dtype=complex)
    n = h.shape[0]
    max_iter = 100 * max(n, 1) if max_iter is None else max_iter
    eps = np.finfo(float).eps
    out = np.empty(n, dtype=complex)
    hi = n - 1
    total = 0
    stale = 0
    while hi >= 0:
        lo = hi
        while lo > 0:
            s = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if s == 0.0:
                s = np.abs(h[: hi + 1, : hi + 1]).sum()
            if abs(h[lo, lo - 1]) <= eps * s:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            out[hi] = h[hi, hi]
            hi -= 1
            stale = 0
            continue
        total += 1
        stale += 1
        if total > max_iter:
            raise NoConvergence(f"QR iteration exceeded {max_iter} iterations")
        if stale in (10, 20):
            mu = h[hi, hi] + abs(h[hi, hi - 1]) + abs(h[hi - 1, hi - 2] if hi - 2 >= lo else 0.0)
        else:
            mu = _wilkinson_shift(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
        blk = h[lo : hi + 1, lo : hi + 1] - mu * np.eye(hi - lo + 1)
        m = blk.shape[0]
        rots = []
        for k in range(m - 1):
            x, y = blk[k, k], blk[k + 1, k]
            r = np.hypot(abs(x), abs(y))
            if r == 0.0:
                c, s = 1.0 + 0j, 0j
            else:
                c, s = x / r, y / r
            g = np.array([[np.conj(c), np.conj(s)], [-s, c]])
            blk[k : k + 2, k:] = g @ blk[k : k + 2, k:]
            rots.append(g)
        for k, g in enumerate(rots):
            top = min(k + 2, m)
            blk[:top, k : k + 2] = blk[:top, k : k + 2] @ g.conj().T
        h[lo : hi + 1, lo : hi + 1] = blk + mu * np.eye(m)
    return out


def complex_eigvals(c: np.ndarray) -> np.ndarray:
    return hessenberg_eigvals(hessenberg(c))


# clustering ----------------------------------------------------------------

# Computed eigenvalues of a Jordan block of size k scatter on a circle of
# relative radius ~ eps^(1/k).  A real eigenvalue with a quaternion block of
# size k shows up in chi(A) as two blocks of size k (2k values, exponent 1/k);
# a nonreal one as a single block (k values, exponent 1/k).
CLUSTER_SLACK = 1e-13


def _cluster_ok(vals: np.ndarray, scale: float, tol: Tolerance) -> bool:
    mu = vals.mean()
    base = tol.eps_eig * scale
    k = vals.size / 2 if abs(mu.imag) <= base else vals.size
    thr = max(base, scale * CLUSTER_SLACK ** (1.0 / max(k, 1)))
    return float(np.abs(vals - mu).max()) <= thr


def _split_largest_edge(vals: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Prim's minimum spanning tree, then cut its longest edge.
    n = vals.size
    dist = np.abs(vals[:, None] - vals[None, :])
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = dist[0].copy()
    link = np.zeros(n, dtype=int)
    edges = []
    for _ in range(n - 1):
        cand = np.where(in_tree, np.inf, best)
        j = int(np.argmin(cand))
        edges.append((cand[j], int(link[j]), j))
        in_tree[j] = True
        closer = dist[j] < best
        best = np.where(closer, dist[j], best)
        link = np.where(closer, j, link)
    cut = max(range(len(edges)), key=lambda e: edges[e][0])
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for e, (_, a, b) in enumerate(edges):
        if e != cut:
            adj[a].append(b)
            adj[b].append(a)
    side = np.zeros(n, dtype=bool)
    stack = [edges[cut][1]]
    side[stack[0]] = True
    while stack:
        for b in adj[stack.pop()]:
            if not side[b]:
                side[b] = True
                stack.append(b)
    return np.flatnonzero(side), np.flatnonzero(~side)


def cluster_eigenvalues(values, scale: float, tol: Tolerance = DEFAULT_TOL) -> list[tuple[complex, int]]:
    """Group computed eigenvalues into (mean, count) clusters.

    Divisive single linkage: a group is split at the longest edge of its
    minimum spanning tree until its spread is within the threshold for its
    size and position (real or not).
    """
    v = np.asarray(values, dtype=complex)
    if v.size == 0:
        return []
    out = []
    stack = [np.arange(v.size)]
    while stack:
        idx = stack.pop()
        if idx.size == 1 or _cluster_ok(v[idx], scale, tol):
            out.append((complex(v[idx].mean()), int(idx.size)))
            continue
        left, right = _split_largest_edge(v[idx])
        stack.extend([idx[left], idx[right]])
    return out


def right_eigenvalues(a: QMatrix, tol: Tolerance = DEFAULT_TOL) -> EigenList:
    """Standard eigenvalues of ``A`` with algebraic multiplicities, descending.

    Real clusters of ``chi(A)`` contribute half their size; clusters in the
    open upper half-plane contribute their full size.
    """
    if not a.is_square():
        raise ValueError("right eigenvalues need a square matrix")
    n = a.rows
    scale = 1.0 + a.norm()
    vals = complex_eigvals(adjoint_complex(a))
    clusters = cluster_eigenvalues(vals, scale, tol)
    snap = tol.eps_eig * scale
    out: list[EigenPair] = []
    for mu, count in clusters:
        if abs(mu.imag) <= snap:
            if count % 2:
                raise NoConvergence(f"real eigenvalue cluster at {mu.real:.6g} has odd size {count}")
            out.append(EigenPair(complex(0.0 if abs(mu.real) <= snap else mu.real, 0.0), count // 2))
        elif mu.imag > 0:
            out.append(EigenPair(complex(0.0 if abs(mu.real) <= snap else mu.real, mu.imag), count))
    if sum(p.multiplicity for p in out) != n:
        raise NoConvergence("eigenvalue clusters of chi(A) are not conjugate-paired")
    order = sort_desc([p.value for p in out], tol=snap)
    out.sort(key=lambda p: order.index(p.value))
    return out


def expand(eigs: EigenList) -> list[complex]:
    """Diagonal sequence ``lambda_1, ..., lambda_n`` with repetition."""
    return [p.value for p in eigs for _ in range(p.multiplicity)]

"""QR, rank, kernels and SVD of quaternion matrices.

Everything works directly on quaternion entries (through the complex split);
the complex representation is used only by tests as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerance
from .errors import NoConvergence, SingularInput
from .qmatrix import QMatrix

# quaternion scalars / vectors as complex pairs (z1, z2) --------------------


def _pmul(a1, a2, b1, b2):
    return a1 * b1 - a2 * np.conj(b2), a1 * b2 + a2 * np.conj(b1)


def _pinv(a1, a2):
    n2 = abs(a1) ** 2 + abs(a2) ** 2
    return np.conj(a1) / n2, -a2 / n2


def _inner(u1, u2, v1, v2):
    """Quaternion inner product ``u* v`` of two column vectors (pairs of 1-D arrays)."""
    return np.sum(np.conj(u1) * v1 + u2 * np.conj(v2)), np.sum(np.conj(u1) * v2 - u2 * np.conj(v1))


def _vnorm(v1, v2) -> float:
    return float(np.sqrt(np.sum(np.abs(v1) ** 2) + np.sum(np.abs(v2) ** 2)))


def _project_out(q1, q2, v1, v2):
    """Remove the span of the orthonormal columns ``Q`` from the vector ``v`` (two passes)."""
    if q1.shape[1] == 0:
        return v1, v2
    Q = QMatrix(q1, q2)
    for _ in range(2):
        v = QMatrix(v1[:, None], v2[:, None])
        r = Q.H @ v
        v = v - Q @ r
        v1, v2 = v.z1[:, 0].copy(), v.z2[:, 0].copy()
    return v1, v2


# QR ------------------------------------------------------------------------


@dataclass(frozen=True)
class QRResult:
    Q: QMatrix
    R: QMatrix


def gram_schmidt_qr(s: QMatrix, tol: Tolerance = DEFAULT_TOL) -> QRResult:
    """``S = Q R`` with ``Q`` unitary and ``R`` upper triangular with positive real diagonal.

    Raises :class:`SingularInput` when a column is (numerically) in the span of
    the previous ones.
    """
    m, n = s.shape
    if m < n:
        raise SingularInput(f"{m}x{n} matrix has dependent columns")
    s1, s2 = s.split()
    q1 = np.zeros((m, n), dtype=complex)
    q2 = np.zeros((m, n), dtype=complex)
    r1 = np.zeros((n, n), dtype=complex)
    r2 = np.zeros((n, n), dtype=complex)
    for k in range(n):
        v1, v2 = s1[:, k].copy(), s2[:, k].copy()
        scale = _vnorm(v1, v2)
        for _ in range(2):
            for j in range(k):
                c1, c2 = _inner(q1[:, j], q2[:, j], v1, v2)
                r1[j, k] += c1
                r2[j, k] += c2
                p1, p2 = _pmul(q1[:, j], q2[:, j], c1, c2)
                v1 = v1 - p1
                v2 = v2 - p2
        nrm = _vnorm(v1, v2)
        if scale == 0.0 or nrm <= tol.eps_rank * scale:
            raise SingularInput(f"column {k} is numerically dependent (residual {nrm:.3g}, scale {scale:.3g})")
        r1[k, k] = nrm
        q1[:, k] = v1 / nrm
        q2[:, k] = v2 / nrm
    return QRResult(QMatrix(q1, q2), QMatrix(r1, r2))


def complete_orthonormal(q: QMatrix, total: int | None = None) -> QMatrix:
    """Extend orthonormal columns ``q`` (m x k) to ``total`` orthonormal columns.

    Candidates are the standard basis vectors, taken in order of largest
    residual after projection.
    """
    m, k = q.shape
    total = m if total is None else total
    q1, q2 = q.copy_arrays()
    while q1.shape[1] < total:
        best = None
        for e in range(m):
            v1 = np.zeros(m, dtype=complex)
            v2 = np.zeros(m, dtype=complex)
            v1[e] = 1.0
            v1, v2 = _project_out(q1, q2, v1, v2)
            nrm = _vnorm(v1, v2)
            if best is None or nrm > best[0]:
                best = (nrm, v1, v2)
        nrm, v1, v2 = best
        q1 = np.column_stack([q1, v1 / nrm])
        q2 = np.column_stack([q2, v2 / nrm])
    return QMatrix(q1, q2)


def orthonormal_basis(cols: QMatrix, tol: Tolerance = DEFAULT_TOL, scale: float | None = None,
                      start: QMatrix | None = None) -> QMatrix:
    """Orthonormal basis of the span of ``cols`` (pivoted Gram-Schmidt).

    If ``start`` (orthonormal) is given, the result spans the part of
    ``span(cols)`` orthogonal to it; ``start`` itself is not included.
    Residuals below ``eps_rank * scale`` are dropped.
    """
    m, n = cols.shape
    c1, c2 = cols.copy_arrays()
    if scale is None:
        scale = max((_vnorm(c1[:, j], c2[:, j]) for j in range(n)), default=0.0)
    if start is None:
        b1 = np.zeros((m, 0), dtype=complex)
        b2 = np.zeros((m, 0), dtype=complex)
    else:
        b1, b2 = start.copy_arrays()
    k0 = b1.shape[1]
    remaining = list(range(n))
    while remaining:
        best = None
        for j in remaining:
            v1, v2 = _project_out(b1, b2, c1[:, j], c2[:, j])
            nrm = _vnorm(v1, v2)
            if best is None or nrm > best[0]:
                best = (nrm, j, v1, v2)
        nrm, j, v1, v2 = best
        if nrm <= tol.eps_rank * scale or nrm == 0.0:
            break
        b1 = np.column_stack([b1, v1 / nrm])
        b2 = np.column_stack([b2, v2 / nrm])
        remaining.remove(j)
    return QMatrix(b1[:, k0:], b2[:, k0:])


# row reduction ------------------------------------------------------------


@dataclass(frozen=True)
class RowEchelon:
    """Reduced row echelon form ``E`` of ``A`` (left operations only).

    ``pivots[i]`` is the column of the unit pivot in row ``i``; the remaining
    columns are free.
    """

    E: QMatrix
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def row_reduce(a: QMatrix, tol: Tolerance = DEFAULT_TOL, scale: float | None = None) -> RowEchelon:
    """Gauss-Jordan elimination with complete (largest-norm) pivoting.

    Pivots with norm at most ``eps_rank * scale`` count as zero; ``scale``
    defaults to ``max(1, |A|_F)``.
    """
    m, n = a.shape
    if scale is None:
        scale = max(1.0, a.norm())
    thr = tol.eps_rank * scale
    e1, e2 = a.copy_arrays()
    col_used = np.zeros(n, dtype=bool)
    pivots: list[int] = []
    row = 0
    while row < m:
        norms = np.sqrt(np.abs(e1[row:]) ** 2 + np.abs(e2[row:]) ** 2)
        norms[:, col_used] = -1.0
        i, j = np.unravel_index(np.argmax(norms), norms.shape)
        if norms[i, j] <= thr:
            break
        i += row
        if i != row:
            e1[[row, i]] = e1[[i, row]]
            e2[[row, i]] = e2[[i, row]]
        p1, p2 = _pinv(e1[row, j], e2[row, j])
        # normalize pivot row: row <- p^-1 row
        e1[row], e2[row] = _pmul(p1, p2, e1[row], e2[row])
        e1[row, j], e2[row, j] = 1.0, 0.0
        for r in range(m):
            if r == row:
                continue
            f1, f2 = e1[r, j], e2[r, j]
            if f1 == 0 and f2 == 0:
                continue
            d1, d2 = _pmul(f1, f2, e1[row], e2[row])
            e1[r] -= d1
            e2[r] -= d2
            e1[r, j], e2[r, j] = 0.0, 0.0
        col_used[j] = True
        pivots.append(int(j))
        row += 1
    e1[row:] = 0.0
    e2[row:] = 0.0
    return RowEchelon(QMatrix(e1, e2), tuple(pivots))


def rank(a: QMatrix, tol: Tolerance = DEFAULT_TOL, scale: float | None = None) -> int:
    return row_reduce(a, tol, scale).rank


def null_space(a: QMatrix, tol: Tolerance = DEFAULT_TOL, scale: float | None = None) -> QMatrix:
    """Basis (columns, not orthonormal) of ``{v : A v = 0}`` as a right H-space."""
    m, n = a.shape
    ech = row_reduce(a, tol, scale)
    free = [j for j in range(n) if j not in ech.pivots]
    e1, e2 = ech.E.split()
    b1 = np.zeros((n, len(free)), dtype=complex)
    b2 = np.zeros((n, len(free)), dtype=complex)
    for k, f in enumerate(free):
        b1[f, k] = 1.0
        for i, p in enumerate(ech.pivots):
            b1[p, k] = -e1[i, f]
            b2[p, k] = -e2[i, f]
    return QMatrix(b1, b2)


# SVD ------------------------------------------------------------------------


@dataclass(frozen=True)
class SVDResult:
    """``A = U diag(sigma) V`` with ``sigma`` descending."""

    U: QMatrix
    V: QMatrix
    sigma: tuple[float, ...]

    def sigma_matrix(self) -> QMatrix:
        m, n = self.U.rows, self.V.rows
        d = np.zeros((m, n), dtype=complex)
        for k, s in enumerate(self.sigma):
            d[k, k] = s
        return QMatrix(d)

    def reconstruct(self) -> QMatrix:
        return self.U @ self.sigma_matrix() @ self.V


MAX_SWEEPS = 60


def svd(a: QMatrix, tol: Tolerance = DEFAULT_TOL) -> SVDResult:
    """One-sided Jacobi SVD on quaternion columns.

    Each column pair is first phase-aligned by a unit quaternion so that its
    inner product is a positive real, then rotated by a real plane rotation.
    """
    m, n = a.shape
    if m < n:
        t = svd(a.H, tol)
        return SVDResult(t.V.H, t.U.H, t.sigma)

    w1, w2 = a.copy_arrays()
    v1 = np.eye(n, dtype=complex)
    v2 = np.zeros((n, n), dtype=complex)
    eps = np.finfo(float).eps
    for sweep in range(MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = float(np.sum(np.abs(w1[:, p]) ** 2 + np.abs(w2[:, p]) ** 2))
                beta = float(np.sum(np.abs(w1[:, q]) ** 2 + np.abs(w2[:, q]) ** 2))
                g1, g2 = _inner(w1[:, p], w2[:, p], w1[:, q], w2[:, q])
                g = float(np.sqrt(abs(g1) ** 2 + abs(g2) ** 2))
                if g == 0.0 or g <= 4 * eps * np.sqrt(alpha * beta):
                    continue
                rotated = True
                # phase: column q <- column q * conj(gamma)/|gamma|
                f1, f2 = np.conj(g1) / g, -g2 / g
                w1[:, q], w2[:, q] = _pmul(w1[:, q], w2[:, q], f1, f2)
                v1[:, q], v2[:, q] = _pmul(v1[:, q], v2[:, q], f1, f2)
                zeta = (beta - alpha) / (2.0 * g)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                for x1, x2 in ((w1, w2), (v1, v2)):
                    p1, p2 = x1[:, p].copy(), x2[:, p].copy()
                    x1[:, p], x2[:, p] = c * p1 - s * x1[:, q], c * p2 - s * x2[:, q]
                    x1[:, q], x2[:, q] = s * p1 + c * x1[:, q], s * p2 + c * x2[:, q]
        if not rotated:
            break
    else:
        raise NoConvergence(f"one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps")

    sig = np.sqrt(np.sum(np.abs(w1) ** 2 + np.abs(w2) ** 2, axis=0))
    order = np.argsort(-sig, kind="stable")
    sig, w1, w2, v1, v2 = sig[order], w1[:, order], w2[:, order], v1[:, order], v2[:, order]

    smax = sig[0] if n else 0.0
    keep = [k for k in range(n) if sig[k] > 0.0 and sig[k] > 1e-14 * smax]
    u1 = np.zeros((m, m), dtype=complex)
    u2 = np.zeros((m, m), dtype=complex)
    for k in keep:
        u1[:, k] = w1[:, k] / sig[k]
        u2[:, k] = w2[:, k] / sig[k]
    if len(keep) < m:
        basis = complete_orthonormal(QMatrix(u1[:, keep], u2[:, keep]), m)
        b1, b2 = basis.split()
        slots = [k for k in range(m) if k not in keep]
        u1[:, slots] = b1[:, len(keep):]
        u2[:, slots] = b2[:, len(keep):]
    V = QMatrix(v1, v2).H
    return SVDResult(QMatrix(u1, u2), V, tuple(float(s) for s in sig))

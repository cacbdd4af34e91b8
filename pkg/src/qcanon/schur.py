"""Weyr characteristics, modified Jordan matrices and the strengthened Schur form.

For a quaternion matrix with real spectrum, ``U* A U = F`` where ``F`` is block
upper triangular with scalar diagonal blocks ``lambda_i I`` and, inside each run
of equal eigenvalues, superdiagonal blocks that are upper triangular with a
positive diagonal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_TOL, Tolerance
from .decomp import gram_schmidt_qr, null_space, orthonormal_basis
from .eigen import EigenPair, right_eigenvalues
from .errors import BadShape, ChainFailure, NonRealSpectrum, NotAnEigenvalue
from .qmatrix import QMatrix


@dataclass(frozen=True)
class Partition:
    """A decreasingly ordered tuple of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise BadShape(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise BadShape(f"partition must be decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def total(self) -> int:
        return sum(self.parts)


def conjugate_partition(m: Partition | Sequence[int]) -> Partition:
    """``r_i = #{j : m_j >= i}`` for ``i = 1 .. m_1``."""
    m = m if isinstance(m, Partition) else Partition(tuple(m))
    if not m.parts:
        return Partition(())
    return Partition(tuple(sum(1 for p in m if p >= i) for i in range(1, m[0] + 1)))


def _shift(a: QMatrix, lam: float) -> QMatrix:
    return a - QMatrix.identity(a.rows) * float(lam)


def kernel_flag(n_mat: QMatrix, tol: Tolerance = DEFAULT_TOL) -> list[QMatrix]:
    """Orthonormal bases ``K_0 = {0} < K_1 < ... < K_s`` of ``ker N^l`` until they stabilize.

    ``ker N^l`` is the preimage of ``ker N^(l-1)`` under ``N``, found as the
    ``v``-part of the null space of ``[N | K_(l-1)]``; powers of ``N`` are never
    formed, so eigenvalues far from the one of interest do not swamp the rank
    decisions.
    """
    n = n_mat.rows
    scale = max(1.0, n_mat.norm())
    flag = [QMatrix.zeros(n, 0)]
    while True:
        aug = QMatrix.block([[n_mat, flag[-1]]])
        ns = null_space(aug, tol, scale=scale)
        k = orthonormal_basis(ns[:n, :], tol) if ns.cols else QMatrix.zeros(n, 0)
        if k.cols <= flag[-1].cols:
            return flag
        flag.append(k)
        if k.cols == n:
            return flag


def weyr_characteristic(a: QMatrix, lam: float, tol: Tolerance = DEFAULT_TOL) -> Partition:
    """Weyr characteristic of ``A - lam I`` on the generalized eigenspace of ``lam``.

    ``r_l = dim ker N^l - dim ker N^(l-1) = rank(N^(l-1)) - rank(N^l)``.
    """
    flag = kernel_flag(_shift(a, lam), tol)
    if len(flag) == 1:
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue (A - lambda I has full rank)")
    dims = [k.cols for k in flag]
    return Partition(tuple(dims[l] - dims[l - 1] for l in range(1, len(dims))))


def modified_jordan(eigs: Sequence, weyrs: Sequence) -> QMatrix:
    """Block matrix with diagonal ``lambda_i I_{r}`` and ``[I; 0]`` superdiagonal blocks.

    ``eigs`` holds one value per distinct eigenvalue (an :class:`EigenPair` or a
    number), ``weyrs`` the matching Weyr characteristics.
    """
    if len(eigs) != len(weyrs):
        raise BadShape("need one Weyr characteristic per eigenvalue")
    blocks = []
    for lam, w in zip(eigs, weyrs):
        lam = lam.value if isinstance(lam, EigenPair) else lam
        w = w if isinstance(w, Partition) else Partition(tuple(w))
        n = w.total
        z1 = np.zeros((n, n), dtype=complex)
        offs = np.concatenate([[0], np.cumsum(w.parts)])
        z1[np.arange(n), np.arange(n)] = complex(lam)
        for i in range(len(w) - 1):
            for k in range(w[i + 1]):
                z1[offs[i] + k, offs[i + 1] + k] = 1.0
        blocks.append(QMatrix(z1))
    return QMatrix.direct_sum(*blocks)


@dataclass(frozen=True)
class SchurRealForm:
    U: QMatrix
    F: QMatrix
    lambdas: tuple[float, ...]
    sizes: tuple[int, ...]

    @property
    def offsets(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum(self.sizes)]).astype(int)

    def to_json_obj(self) -> dict:
        return {
            "U": self.U.to_json_obj(),
            "F": self.F.to_json_obj(),
            "lambdas": [float(v) for v in self.lambdas],
            "sizes": [int(v) for v in self.sizes],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_obj(), **kwargs)


def _fix_phases(x: QMatrix) -> QMatrix:
    """Right-scale each column by a unit so its first dominant entry is real positive."""
    if x.cols == 0:
        return x
    norms = x.entry_norms()
    units = []
    for c in range(x.cols):
        p = int(np.argmax(norms[:, c] >= 0.5 * norms[:, c].max()))
        units.append(x[p, c].conjugate().normalized())
    return x.scale_columns(units)


def _layers(a: QMatrix, lam: float, weyr: Partition, tol: Tolerance) -> list[QMatrix]:
    """Column blocks ``X_1 .. X_s`` with ``N X_{l+1} = X_l [I; 0]`` and ``N X_1 = 0``."""
    n = a.rows
    N = _shift(a, lam)
    s = len(weyr)
    kernels = kernel_flag(N, tol)
    if [k.cols for k in kernels] != [sum(weyr[:l]) for l in range(s + 1)]:
        raise ChainFailure(f"kernel dimensions {[k.cols for k in kernels]} do not match Weyr {weyr.parts}")
    layers: list[QMatrix] = [None] * s  # type: ignore[list-item]
    above = QMatrix.zeros(n, 0)
    for l in range(s, 0, -1):
        pushed = N @ above  # images of the layer above, already in ker N^l
        start = orthonormal_basis(QMatrix.block([[kernels[l - 1], pushed]]), tol)
        fresh = orthonormal_basis(kernels[l], tol, start=start)
        need = weyr[l - 1] - pushed.cols
        if fresh.cols < need:
            raise ChainFailure(f"layer {l}: found {fresh.cols} new chain tops, expected {need}")
        layers[l - 1] = QMatrix.block([[pushed, _fix_phases(fresh[:, list(range(need))])]])
        above = layers[l - 1]
    return layers


def _snap_form(f: QMatrix, lambdas, sizes) -> QMatrix:
    z1, z2 = f.copy_arrays()
    offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    for i, lam in enumerate(lambdas):
        rows = slice(offs[i], offs[i + 1])
        z1[offs[i + 1]:, rows] = 0.0
        z2[offs[i + 1]:, rows] = 0.0
        z1[rows, rows] = lam * np.eye(sizes[i])
        z2[rows, rows] = 0.0
        if i + 1 < len(lambdas) and lambdas[i + 1] == lam:
            nxt = slice(offs[i + 1], offs[i + 2])
            blk1, blk2 = z1[rows, nxt], z2[rows, nxt]
            blk1[np.tril_indices(sizes[i], -1, sizes[i + 1])] = 0.0
            blk2[np.tril_indices(sizes[i], -1, sizes[i + 1])] = 0.0
            d = np.arange(sizes[i + 1])
            blk1[d, d] = blk1[d, d].real
            blk2[d, d] = 0.0
            z1[rows, nxt], z2[rows, nxt] = blk1, blk2
    return QMatrix(z1, z2)


def strengthened_schur(a: QMatrix, tol: Tolerance = DEFAULT_TOL) -> SchurRealForm:
    """``U* A U = F`` in strengthened Schur form for ``A`` with real spectrum."""
    if not a.is_square():
        raise BadShape("strengthened Schur form needs a square matrix")
    scale = 1.0 + a.norm()
    eigs = right_eigenvalues(a, tol)
    for p in eigs:
        if abs(p.value.imag) > tol.eps_eig * scale:
            raise NonRealSpectrum(f"eigenvalue {p.value} is not real")
    lams = sorted((p.value.real for p in eigs), reverse=True)
    cols = []
    lambdas: list[float] = []
    sizes: list[int] = []
    weyrs = []
    for lam in lams:
        weyr = weyr_characteristic(a, lam, tol)
        mult = next(p.multiplicity for p in eigs if p.value.real == lam)
        if weyr.total != mult:
            raise ChainFailure(f"Weyr characteristic {weyr.parts} at {lam:.6g} does not sum to multiplicity {mult}")
        weyrs.append(weyr)
        for layer in _layers(a, lam, weyr, tol):
            cols.append(layer)
        lambdas.extend([lam] * len(weyr))
        sizes.extend(weyr.parts)
    S = QMatrix.block([cols])
    U = gram_schmidt_qr(S, tol).Q
    F = U.H @ a @ U
    snapped = _snap_form(F, lambdas, sizes)
    resid = (U.H @ a @ U - snapped).norm()
    if resid > 1e2 * tol.eps_canon * max(1.0, a.norm()):
        raise ChainFailure(f"Schur residual {resid:.3g} too large")
    return SchurRealForm(U, snapped, tuple(lambdas), tuple(sizes))


def check_schur_shape(f: QMatrix, lambdas, sizes, atol: float = 0.0) -> bool:
    """Form predicates: zero below the block diagonal, ``lambda_i I`` blocks and, on
    equal-eigenvalue runs, upper triangular superdiagonal blocks with positive
    real diagonal.  ``atol = 0`` asks for exact structure."""
    z1, z2 = f.split()
    offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    nrm = np.sqrt(np.abs(z1) ** 2 + np.abs(z2) ** 2)
    for i, lam in enumerate(lambdas):
        rows = slice(offs[i], offs[i + 1])
        if np.any(nrm[offs[i + 1]:, rows] > atol):
            return False
        diag = QMatrix(z1[rows, rows], z2[rows, rows]) - QMatrix.identity(sizes[i]) * lam
        if np.any(diag.entry_norms() > atol):
            return False
        if i + 1 < len(lambdas) and lambdas[i + 1] == lam:
            if sizes[i] < sizes[i + 1]:
                return False
            nxt = slice(offs[i + 1], offs[i + 2])
            b1, b2 = z1[rows, nxt], z2[rows, nxt]
            bn = nrm[rows, nxt]
            if np.any(bn[np.tril_indices(sizes[i], -1, sizes[i + 1])] > atol):
                return False
            d = np.arange(sizes[i + 1])
            if np.any(np.abs(b1[d, d].imag) > atol) or np.any(np.abs(b2[d, d]) > atol):
                return False
            if np.any(b1[d, d].real <= atol):
                return False
    return True


def verify_block_diag_stabilizer(form: SchurRealForm, v: QMatrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ``V* F V`` keeps the form with the same diagonal blocks and ``V`` is
    block diagonal conformal with ``sizes``."""
    atol = tol.eps_canon * (1.0 + form.F.norm())
    g = v.H @ form.F @ v
    if not check_schur_shape_loose(g, form.lambdas, form.sizes, atol):
        return False
    offs = form.offsets
    mask = np.ones(v.shape, dtype=bool)
    for i in range(len(form.sizes)):
        mask[offs[i]:offs[i + 1], offs[i]:offs[i + 1]] = False
    return bool(np.all(v.entry_norms()[mask] <= atol))


def check_schur_shape_loose(f: QMatrix, lambdas, sizes, atol: float) -> bool:
    """Block upper triangular with diagonal blocks ``lambda_i I`` (no condition on
    the superdiagonal blocks)."""
    z1, z2 = f.split()
    offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    nrm = np.sqrt(np.abs(z1) ** 2 + np.abs(z2) ** 2)
    for i, lam in enumerate(lambdas):
        rows = slice(offs[i], offs[i + 1])
        if np.any(nrm[offs[i + 1]:, rows] > atol):
            return False
        diag = QMatrix(z1[rows, rows], z2[rows, rows]) - QMatrix.identity(sizes[i]) * lam
        if np.any(diag.entry_norms() > atol):
            return False
    return True

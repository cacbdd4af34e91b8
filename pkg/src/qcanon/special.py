"""Canonical forms of idempotent and square-zero matrices under unitary similarity.

Both reduce to ``U* A U = [[F11, F12], [0, 0]]`` with ``F11 = I`` (idempotent) or
``0`` (square-zero); an SVD of ``F12`` then splits everything into ``2 x 2``
blocks ``[[1, b], [0, 0]]`` or ``[[0, b], [0, 0]]`` and ``1 x 1`` blocks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .config import DEFAULT_TOL, Tolerance
from .decomp import complete_orthonormal, orthonormal_basis, svd
from .errors import ChainFailure, NotIdempotent, NotSquareZero
from .qmatrix import QMatrix

Kind = Literal["idempotent", "square_zero"]


@dataclass(frozen=True)
class BlockSummary:
    kind: Kind
    b_values: tuple[float, ...] = ()
    ones: int = 0
    zeros: int = 0

    def __post_init__(self):
        b = tuple(float(v) for v in self.b_values)
        if any(v <= 0 for v in b):
            raise ValueError("b values must be positive")
        if list(b) != sorted(b, reverse=True):
            raise ValueError("b values must be sorted descending")
        if self.kind not in ("idempotent", "square_zero"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "square_zero" and self.ones:
            raise ValueError("square-zero summaries have no [1] blocks")
        object.__setattr__(self, "b_values", b)

    @property
    def n(self) -> int:
        return 2 * len(self.b_values) + self.ones + self.zeros

    def to_json_obj(self) -> dict:
        return {"kind": self.kind, "b_values": list(self.b_values), "ones": self.ones, "zeros": self.zeros}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_obj(), **kwargs)


def assemble_blocks(summary: BlockSummary) -> QMatrix:
    """Direct sum: ``2 x 2`` blocks by descending ``b``, then ``[1]``s, then ``[0]``s."""
    top = 1.0 if summary.kind == "idempotent" else 0.0
    n = summary.n
    z = np.zeros((n, n), dtype=complex)
    k = 0
    for b in summary.b_values:
        z[k, k] = top
        z[k, k + 1] = b
        k += 2
    for _ in range(summary.ones):
        z[k, k] = 1.0
        k += 1
    return QMatrix(z)


@dataclass(frozen=True)
class SpecialForm:
    """``U* A U == assemble_blocks(summary)`` up to rounding."""

    U: QMatrix
    summary: BlockSummary
    canon: QMatrix = field(repr=False)

    def to_json_obj(self) -> dict:
        return {"summary": self.summary.to_json_obj(), "canon": self.canon.to_json_obj(), "U": self.U.to_json_obj()}


def _reduce(a: QMatrix, kind: Kind, tol: Tolerance) -> SpecialForm:
    n = a.rows
    scale = max(1.0, a.norm())
    u1 = orthonormal_basis(a, tol, scale=scale)
    r = u1.cols
    U = complete_orthonormal(u1, n)
    F = U.H @ a @ U
    F12 = F[:r, r:]
    if r and n - r:
        res = svd(F12, tol)
        cut = tol.eps_rank * (1.0 + a.norm())
        bs = [s for s in res.sigma if s > cut]
        W, Vh = res.U, res.V.H
    else:
        bs, W, Vh = [], QMatrix.identity(r), QMatrix.identity(n - r)
    t = len(bs)
    if kind == "square_zero" and t != r:
        raise NotSquareZero(f"range of A is not annihilated: F12 has rank {t} < rank(A) = {r}")
    U = U @ QMatrix.direct_sum(W, Vh)
    # pair column k of the range part with column k of the complement part
    perm = []
    for k in range(t):
        perm += [k, r + k]
    perm += list(range(t, r)) + list(range(r + t, n))
    U = U[:, perm]
    if kind == "idempotent":
        summary = BlockSummary(kind, tuple(bs), ones=r - t, zeros=n - r - t)
    else:
        summary = BlockSummary(kind, tuple(bs), ones=0, zeros=n - 2 * t)
    canon = assemble_blocks(summary)
    resid = (U.H @ a @ U - canon).norm()
    if resid > 1e2 * tol.eps_canon * (1.0 + a.norm()):
        raise ChainFailure(f"special-form residual {resid:.3g} too large")
    return SpecialForm(U, summary, canon)


def projector_canonical(a: QMatrix, tol: Tolerance = DEFAULT_TOL) -> SpecialForm:
    """Unitary canonical form of an idempotent matrix."""
    if not a.is_square():
        raise NotIdempotent("an idempotent matrix must be square")
    nrm = a.norm()
    if (a @ a - a).norm() > tol.eps_canon * (1.0 + nrm * nrm):
        raise NotIdempotent(f"|A^2 - A| = {(a @ a - a).norm():.3g} exceeds tolerance")
    return _reduce(a, "idempotent", tol)


def square_zero_canonical(a: QMatrix, tol: Tolerance = DEFAULT_TOL) -> SpecialForm:
    """Unitary canonical form of a matrix with ``A^2 = 0``."""
    if not a.is_square():
        raise NotSquareZero("a square-zero matrix must be square")
    nrm = a.norm()
    if (a @ a).norm() > tol.eps_canon * max(nrm * nrm, np.finfo(float).tiny):
        raise NotSquareZero(f"|A^2| = {(a @ a).norm():.3g} exceeds tolerance")
    return _reduce(a, "square_zero", tol)

"""Random instances, gadget matrices and an independent similarity oracle.

All randomness flows through a :class:`numpy.random.Generator` backed by
PCG64, so a seed fixes every sample.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .decomp import gram_schmidt_qr
from .errors import ShapeMismatch
from .qmatrix import QMatrix
from .quaternion import J, Quaternion, sort_desc
from .schur import Partition, conjugate_partition, modified_jordan
from .special import BlockSummary, assemble_blocks


def make_rng(seed: int | None = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


# basic samples -------------------------------------------------------------


def random_quaternion(rng: np.random.Generator) -> Quaternion:
    return Quaternion.from_array(rng.standard_normal(4))


def random_unit_quaternion(rng: np.random.Generator) -> Quaternion:
    return random_quaternion(rng).normalized()


def random_qmatrix(rng: np.random.Generator, m: int, n: int | None = None) -> QMatrix:
    n = m if n is None else n
    return QMatrix.from_coefficients(rng.standard_normal((m, n, 4)))


def haar_unitary(n: int, rng: np.random.Generator) -> QMatrix:
    """Q factor (positive diagonal R) of a Gaussian quaternion matrix."""
    if n < 1:
        raise ValueError("n must be positive")
    return gram_schmidt_qr(random_qmatrix(rng, n)).Q


def random_similarity(n: int, rng: np.random.Generator, cond: float = 100.0) -> tuple[QMatrix, QMatrix]:
    """``(S, S^-1)`` with ``S = W1 diag(sigma) W2`` and singular values in ``[1, cond]``."""
    w1, w2 = haar_unitary(n, rng), haar_unitary(n, rng)
    sig = np.exp(rng.uniform(0.0, np.log(cond), n))
    sig[0] = 1.0
    if n > 1:
        sig[-1] = cond
    s = w1 @ QMatrix(np.diag(sig)) @ w2
    s_inv = w2.H @ QMatrix(np.diag(1.0 / sig)) @ w1.H
    return s, s_inv


def random_partition(total: int, rng: np.random.Generator, max_part: int | None = None) -> Partition:
    parts = []
    left = total
    while left:
        hi = left if max_part is None else min(left, max_part)
        p = int(rng.integers(1, hi + 1))
        parts.append(p)
        left -= p
    return Partition(tuple(sorted(parts, reverse=True)))


# real spectrum and nilpotent instances ---------------------------------------


def random_real_spectrum(rng: np.random.Generator, n: int, cond: float = 100.0):
    """``(A, lambdas, weyrs)`` with ``A = S B S^-1`` for a planted modified Jordan ``B``."""
    k = int(rng.integers(1, min(n, 3) + 1))
    cuts = np.sort(rng.choice(np.arange(1, n), size=k - 1, replace=False)) if k > 1 else np.array([], dtype=int)
    sizes = np.diff(np.concatenate([[0], cuts, [n]])).astype(int)
    lams = sorted(rng.choice(np.arange(-4, 5), size=k, replace=False).astype(float), reverse=True)
    weyrs = [conjugate_partition(random_partition(int(m), rng, max_part=3)) for m in sizes]
    b = modified_jordan(lams, weyrs)
    s, s_inv = random_similarity(n, rng, cond)
    return s @ b @ s_inv, lams, weyrs


def jordan_nilpotent(segre: Sequence[int]) -> QMatrix:
    n = sum(segre)
    z = np.zeros((n, n), dtype=complex)
    k = 0
    for m in segre:
        for i in range(m - 1):
            z[k + i, k + i + 1] = 1.0
        k += m
    return QMatrix(z)


def planted_nilpotent(rng: np.random.Generator, n: int, cond: float = 100.0):
    """``(A, segre)`` with ``A`` similar to the Jordan nilpotent of a random Segre list."""
    segre = random_partition(n, rng)
    s, s_inv = random_similarity(n, rng, cond)
    return s @ jordan_nilpotent(segre.parts) @ s_inv, segre


# nonderogatory instances -------------------------------------------------------

ENTRY_KINDS = ("zero", "complex", "j", "real", "general")


def random_entry(rng: np.random.Generator, kind: str) -> Quaternion:
    mag = lambda: rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])  # noqa: E731
    if kind == "zero":
        return Quaternion()
    if kind == "real":
        return Quaternion(mag())
    if kind == "complex":
        return Quaternion(mag(), mag())
    if kind == "j":
        return Quaternion(0.0, 0.0, mag(), mag())
    return Quaternion(mag(), mag(), mag(), mag())


def random_spectrum(rng: np.random.Generator, n: int, max_chain: int = 3) -> list[complex]:
    """Sorted diagonal of standard eigenvalues, mixed real and nonreal, separated by >= 1."""
    chains = []
    left = n
    while left:
        m = int(rng.integers(1, min(left, max_chain) + 1))
        chains.append(m)
        left -= m
    pool = [complex(x, y) for x in range(-2, 3) for y in (0, 1, 2)]
    picks = rng.choice(len(pool), size=len(chains), replace=False)
    vals = [pool[p] for p in picks]
    order = sort_desc(vals)
    mult = {v: m for v, m in zip(vals, chains)}
    return [v for v in order for _ in range(mult[v])]


def random_triangular(rng: np.random.Generator, n: int, kinds: Sequence[str] = ENTRY_KINDS,
                      diag: Sequence[complex] | None = None) -> QMatrix:
    """Upper triangular matrix of the canonical shape with random mixed-type entries.

    Inside runs of equal eigenvalues the first superdiagonal gets a nonzero
    complex part, which makes the matrix nonderogatory.
    """
    diag = random_spectrum(rng, n) if diag is None else list(diag)
    t = np.zeros((n, n, 4))
    for l in range(n):
        t[l, l] = [diag[l].real, diag[l].imag, 0.0, 0.0]
        for r in range(l + 1, n):
            kind = kinds[int(rng.integers(len(kinds)))]
            q = random_entry(rng, kind)
            if r == l + 1 and diag[l] == diag[r] and q.w == 0 and q.x == 0:
                q = Quaternion(rng.uniform(0.5, 2.0), q.x, q.y, q.z)
            t[l, r] = q.as_list()
    return QMatrix.from_coefficients(t)


def random_nonderogatory(rng: np.random.Generator, n: int, **kw) -> QMatrix:
    """A Haar-conjugated random triangular matrix of the canonical shape."""
    t = random_triangular(rng, n, **kw)
    u = haar_unitary(n, rng)
    return u.H @ t @ u


def random_forest(rng: np.random.Generator, n: int) -> list[tuple[int, int]]:
    """Random forest on ``0 .. n-1``; each vertex joins an earlier one with probability 2/3."""
    edges = []
    for v in range(1, n):
        if rng.random() < 2.0 / 3.0:
            edges.append((int(rng.integers(0, v)), v))
    return sorted(edges, key=lambda e: (e[1] - e[0], e[0]))


def forest_witness(n: int, edges) -> QMatrix:
    """Diagonal ``(n - l) i`` (0-based ``l``) and ones on the forest edges."""
    z = np.zeros((n, n), dtype=complex)
    for l in range(n):
        z[l, l] = 1j * (n - l)
    for l, r in edges:
        z[min(l, r), max(l, r)] = 1.0
    return QMatrix(z)


def random_projector(rng: np.random.Generator, n: int):
    """``(A, summary)`` with ``A`` Haar-conjugate to a planted canonical idempotent.

    At least one ``2 x 2`` block is planted when ``n >= 2``, so ``A`` is not
    self-adjoint.
    """
    t = int(rng.integers(1 if n >= 2 else 0, n // 2 + 1))
    rest = n - 2 * t
    ones = int(rng.integers(0, rest + 1))
    bs = tuple(sorted(rng.uniform(0.2, 3.0, t), reverse=True))
    summary = BlockSummary("idempotent", bs, ones, rest - ones)
    u = haar_unitary(n, rng)
    return u.H @ assemble_blocks(summary) @ u, summary


def random_square_zero(rng: np.random.Generator, n: int):
    t = int(rng.integers(0, n // 2 + 1))
    bs = tuple(sorted(rng.uniform(0.2, 3.0, t), reverse=True))
    summary = BlockSummary("square_zero", bs, 0, n - 2 * t)
    u = haar_unitary(n, rng)
    return u.H @ assemble_blocks(summary) @ u, summary


# gadgets ------------------------------------------------------------------------


def _as_block(a) -> QMatrix:
    if isinstance(a, QMatrix):
        return a
    if isinstance(a, np.ndarray) and a.ndim == 2:
        return QMatrix(a)
    return QMatrix.from_entries([[a]])


def _eye(n: int, c=1.0) -> QMatrix:
    return QMatrix.identity(n) * c


def gadget_MA(a) -> QMatrix:
    """``[[3I, I, A], [0, 2I, I], [0, 0, I]]``; ``a`` may be a scalar or a square matrix."""
    A = _as_block(a)
    if not A.is_square():
        raise ShapeMismatch("M_A needs a square block")
    n = A.rows
    Z = QMatrix.zeros(n)
    return QMatrix.block([[_eye(n, 3), _eye(n), A], [Z, _eye(n, 2), _eye(n)], [Z, Z, _eye(n)]])


def gadget_M5(A, B, C, D, n: int | None = None) -> QMatrix:
    """The ``5n x 5n`` matrix with diagonal ``5I, 4I, 3I, 2I, I`` carrying ``A, B, C, D``."""
    A, B, C, D = (_as_block(x) for x in (A, B, C, D))
    n = A.rows if n is None else n
    for x in (A, B, C, D):
        if x.shape != (n, n):
            raise ShapeMismatch(f"all blocks must be {n}x{n}, got {x.shape}")
    Z = QMatrix.zeros(n)
    I = _eye(n)
    return QMatrix.block([
        [_eye(n, 5), I, A, C, B],
        [Z, _eye(n, 4), I, Z, Z],
        [Z, Z, _eye(n, 3), Z, Z],
        [Z, Z, Z, _eye(n, 2), D],
        [Z, Z, Z, Z, I],
    ])


def gadget_wild(kind: str, M, lam: complex = 1j):
    """Fixture constructions showing wildness of four classification problems.

    ``a``: ``8n x 8n`` matrix ``[[lam I, X_M], [0, lam I]]`` (blocks ``J_2(lam)``, ``[lam]``);
    ``b``: ``[[0, I, M], [0, 0, I], [0, 0, 0]]`` with cube zero;
    ``c``: a pair of idempotents; ``d``: a pair with ``AB = BA = A^2 = B^2 = 0``.
    """
    M = _as_block(M)
    if not M.is_square():
        raise ShapeMismatch("M must be square")
    n = M.rows
    I, Z = _eye(n), QMatrix.zeros(n)
    if kind == "a":
        if np.any(M.z2 != 0):
            raise ShapeMismatch("kind a needs a complex matrix M")
        Ij, Mj = I * J, M * J
        X = QMatrix.block([
            [_eye(n, 4), Z, Ij, Mj],
            [Z, _eye(n, 3), Ij, Ij],
            [Z, Z, _eye(n, 2), Z],
            [Z, Z, Z, I],
        ])
        L = QMatrix.identity(4 * n) * complex(lam)
        return QMatrix.block([[L, X], [QMatrix.zeros(4 * n), L]])
    if kind == "b":
        return QMatrix.block([[Z, I, M], [Z, Z, I], [Z, Z, Z]])
    if kind == "c":
        return QMatrix.block([[I, Z], [Z, Z]]), QMatrix.block([[M, I - M], [M, I - M]])
    if kind == "d":
        return QMatrix.block([[Z, I], [Z, Z]]), QMatrix.block([[Z, M], [Z, Z]])
    raise ValueError(f"unknown gadget kind {kind!r}")


# trace-word oracle ------------------------------------------------------------


def _necklaces(max_len: int) -> list[tuple[int, ...]]:
    """Words over {0, 1} up to rotation (smallest rotation as representative)."""
    out = []
    for k in range(1, max_len + 1):
        for w in itertools.product((0, 1), repeat=k):
            if all(w <= w[i:] + w[:i] for i in range(1, k)):
                out.append(w)
    return out


def real_trace(a: QMatrix) -> float:
    return float(np.trace(a.z1).real)


def trace_word_value(a: QMatrix, w: Sequence[int]) -> float:
    """``Re tr`` of the word ``w`` in ``A`` (letter 0) and ``A*`` (letter 1)."""
    letters = (a, a.H)
    p = letters[w[0]]
    for c in w[1:]:
        p = p @ letters[c]
    return real_trace(p)


def trace_word_oracle(a: QMatrix, b: QMatrix, max_len: int = 4, rtol: float = 1e-6) -> bool:
    """Necessary condition for unitary similarity: equal real traces of all words."""
    if a.shape != b.shape or not a.is_square():
        return False
    base = max(1.0, a.norm(), b.norm())
    for w in _necklaces(max_len):
        va = trace_word_value(a, w)
        vb = trace_word_value(b, w)
        if abs(va - vb) > rtol * base ** len(w):
            return False
    return True

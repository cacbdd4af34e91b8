"""Dense quaternion matrices.

A matrix ``A`` is held through its complex split ``A = A1 + A2 j`` (two complex
arrays).  Products follow from ``j z = conj(z) j``::

    (A1 + A2 j)(B1 + B2 j) = (A1 B1 - A2 conj(B2)) + (A1 B2 + A2 conj(B1)) j
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

import numpy as np

from .errors import MatrixFormatError
from .quaternion import Quaternion, format_quaternion


class QMatrix:
    __slots__ = ("_z1", "_z2")

    def __init__(self, z1, z2=None):
        z1 = np.array(z1, dtype=complex, ndmin=2)
        z2 = np.zeros_like(z1) if z2 is None else np.array(z2, dtype=complex, ndmin=2)
        if z1.ndim != 2 or z1.shape != z2.shape:
            raise ValueError(f"complex parts must be equal 2-D shapes, got {z1.shape} and {z2.shape}")
        z1.flags.writeable = False
        z2.flags.writeable = False
        self._z1 = z1
        self._z2 = z2

    # construction ---------------------------------------------------------

    @classmethod
    def from_coefficients(cls, data) -> "QMatrix":
        """From an ``(m, n, 4)`` array of ``[w, x, y, z]`` coefficients."""
        data = np.asarray(data, dtype=float)
        if data.ndim != 3 or data.shape[2] != 4:
            raise ValueError(f"expected an (m, n, 4) coefficient array, got shape {data.shape}")
        return cls(data[..., 0] + 1j * data[..., 1], data[..., 2] + 1j * data[..., 3])

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence]) -> "QMatrix":
        """From nested rows of anything :meth:`Quaternion.coerce` accepts."""
        coeffs = [[Quaternion.coerce(e).as_list() for e in row] for row in rows]
        if not coeffs or any(len(r) != len(coeffs[0]) for r in coeffs):
            raise ValueError("rows must be non-empty and of equal length")
        return cls.from_coefficients(coeffs)

    @classmethod
    def zeros(cls, m: int, n: int | None = None) -> "QMatrix":
        n = m if n is None else n
        return cls(np.zeros((m, n), dtype=complex))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(np.eye(n, dtype=complex))

    @classmethod
    def diag(cls, values: Iterable) -> "QMatrix":
        qs = [Quaternion.coerce(v) for v in values]
        n = len(qs)
        z1 = np.zeros((n, n), dtype=complex)
        z2 = np.zeros((n, n), dtype=complex)
        for k, q in enumerate(qs):
            z1[k, k] = complex(q.w, q.x)
            z2[k, k] = complex(q.y, q.z)
        return cls(z1, z2)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["QMatrix"]]) -> "QMatrix":
        z1 = np.block([[b._z1 for b in row] for row in blocks])
        z2 = np.block([[b._z2 for b in row] for row in blocks])
        return cls(z1, z2)

    @classmethod
    def direct_sum(cls, *mats: "QMatrix") -> "QMatrix":
        m = sum(a.rows for a in mats)
        n = sum(a.cols for a in mats)
        z1 = np.zeros((m, n), dtype=complex)
        z2 = np.zeros((m, n), dtype=complex)
        r = c = 0
        for a in mats:
            z1[r : r + a.rows, c : c + a.cols] = a._z1
            z2[r : r + a.rows, c : c + a.cols] = a._z2
            r += a.rows
            c += a.cols
        return cls(z1, z2)

    # views ----------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self._z1.shape

    @property
    def rows(self) -> int:
        return self._z1.shape[0]

    @property
    def cols(self) -> int:
        return self._z1.shape[1]

    @property
    def z1(self) -> np.ndarray:
        return self._z1

    @property
    def z2(self) -> np.ndarray:
        return self._z2

    def split(self) -> tuple[np.ndarray, np.ndarray]:
        return self._z1, self._z2

    @property
    def coefficients(self) -> np.ndarray:
        """``(m, n, 4)`` array of ``[w, x, y, z]``."""
        return np.stack([self._z1.real, self._z1.imag, self._z2.real, self._z2.imag], axis=-1)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key):
        if not isinstance(key, tuple):
            key = (key, slice(None))
        i, j = key
        if isinstance(i, (int, np.integer)) and isinstance(j, (int, np.integer)):
            return Quaternion.from_pair(self._z1[i, j], self._z2[i, j])
        ri = np.atleast_1d(np.arange(self.rows)[i])
        cj = np.atleast_1d(np.arange(self.cols)[j])
        idx = np.ix_(ri, cj)
        return QMatrix(self._z1[idx], self._z2[idx])

    def with_entry(self, i: int, j: int, value) -> "QMatrix":
        q = Quaternion.coerce(value)
        z1 = self._z1.copy()
        z2 = self._z2.copy()
        z1[i, j] = complex(q.w, q.x)
        z2[i, j] = complex(q.y, q.z)
        return QMatrix(z1, z2)

    def entry_norms(self) -> np.ndarray:
        return np.sqrt(np.abs(self._z1) ** 2 + np.abs(self._z2) ** 2)

    def norm(self) -> float:
        """Frobenius norm."""
        return float(np.sqrt(np.sum(np.abs(self._z1) ** 2) + np.sum(np.abs(self._z2) ** 2)))

    def diagonal(self) -> list[Quaternion]:
        return [self[k, k] for k in range(min(self.shape))]

    # algebra --------------------------------------------------------------

    @property
    def H(self) -> "QMatrix":
        """Conjugate transpose ``A*``."""
        return QMatrix(self._z1.conj().T, -self._z2.T)

    def conj_transpose(self) -> "QMatrix":
        return self.H

    def __add__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return QMatrix(self._z1 + other._z1, self._z2 + other._z2)

    def __sub__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return QMatrix(self._z1 - other._z1, self._z2 - other._z2)

    def __neg__(self):
        return QMatrix(-self._z1, -self._z2)

    def __matmul__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        a1, a2 = self._z1, self._z2
        b1, b2 = other._z1, other._z2
        return QMatrix(a1 @ b1 - a2 @ b2.conj(), a1 @ b2 + a2 @ b1.conj())

    def __mul__(self, other):
        """``A * q``: scale on the right."""
        if isinstance(other, (int, float, np.integer, np.floating)):
            return QMatrix(self._z1 * float(other), self._z2 * float(other))
        try:
            q = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        q1, q2 = complex(q.w, q.x), complex(q.y, q.z)
        return QMatrix(self._z1 * q1 - self._z2 * q2.conjugate(), self._z1 * q2 + self._z2 * q1.conjugate())

    def __rmul__(self, other):
        """``q * A``: scale on the left."""
        if isinstance(other, (int, float, np.integer, np.floating)):
            return self * other
        try:
            q = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        q1, q2 = complex(q.w, q.x), complex(q.y, q.z)
        return QMatrix(q1 * self._z1 - q2 * self._z2.conj(), q1 * self._z2 + q2 * self._z1.conj())

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return self * (1.0 / float(other))
        return NotImplemented

    def __pow__(self, k: int) -> "QMatrix":
        if not self.is_square() or k < 0:
            raise ValueError("only nonnegative powers of square matrices")
        out = QMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def scale_columns(self, s: Sequence) -> "QMatrix":
        """``A diag(s)``."""
        q1 = np.array([complex(Quaternion.coerce(v).w, Quaternion.coerce(v).x) for v in s])
        q2 = np.array([complex(Quaternion.coerce(v).y, Quaternion.coerce(v).z) for v in s])
        return self @ QMatrix(np.diag(q1), np.diag(q2))

    def permute(self, perm: Sequence[int]) -> "QMatrix":
        """Simultaneous row and column permutation: ``B[a, b] = A[perm[a], perm[b]]``."""
        p = np.asarray(perm, dtype=int)
        return QMatrix(self._z1[np.ix_(p, p)], self._z2[np.ix_(p, p)])

    def copy_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return self._z1.copy(), self._z2.copy()

    def allclose(self, other: "QMatrix", atol: float) -> bool:
        return self.shape == other.shape and (self - other).entry_norms().max(initial=0.0) <= atol

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self._z1, other._z1)
            and np.array_equal(self._z2, other._z2)
        )

    __hash__ = None

    # serialization --------------------------------------------------------

    def to_json_obj(self) -> dict:
        c = self.coefficients
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[[float(v) for v in c[i, j]] for j in range(self.cols)] for i in range(self.rows)],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "QMatrix":
        try:
            rows, cols, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise MatrixFormatError(f"matrix object needs rows, cols and entries: {exc}") from None
        if rows < 1 or cols < 1:
            raise MatrixFormatError("rows and cols must be positive")
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise MatrixFormatError(f"entries do not match declared shape {rows}x{cols}")
        try:
            data = np.array(entries, dtype=float)
        except (TypeError, ValueError) as exc:
            raise MatrixFormatError(f"entries must be numeric 4-arrays: {exc}") from None
        if data.shape != (rows, cols, 4):
            raise MatrixFormatError(f"each entry must be a 4-array [w,x,y,z], got array shape {data.shape}")
        return cls.from_coefficients(data)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_obj(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "QMatrix":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc}") from None
        return cls.from_json_obj(obj)

    def to_text(self, digits: int = 6) -> str:
        cells = [[format_quaternion(self[i, j], digits) for j in range(self.cols)] for i in range(self.rows)]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols})\n{self.to_text()}"


def adjoint_complex(a: QMatrix) -> np.ndarray:
    """Complex representation ``[[A1, A2], [-conj(A2), conj(A1)]]`` of ``A = A1 + A2 j``."""
    a1, a2 = a.split()
    return np.block([[a1, a2], [-a2.conj(), a1.conj()]])


def from_adjoint_complex(c: np.ndarray) -> QMatrix:
    """Inverse of :func:`adjoint_complex` (reads the top block row)."""
    m, n = c.shape[0] // 2, c.shape[1] // 2
    return QMatrix(c[:m, :n], c[:m, n:])


def real_left_matrix(a: QMatrix) -> np.ndarray:
    """Real ``4m x 4n`` matrix of ``v -> A v`` on interleaved ``[w, x, y, z]`` coordinates."""
    c = a.coefficients
    w, x, y, z = c[..., 0], c[..., 1], c[..., 2], c[..., 3]
    blocks = np.stack(
        [
            np.stack([w, -x, -y, -z], axis=-1),
            np.stack([x, w, -z, y], axis=-1),
            np.stack([y, z, w, -x], axis=-1),
            np.stack([z, -y, x, w], axis=-1),
        ],
        axis=-2,
    )  # (m, n, 4, 4)
    m, n = a.shape
    return blocks.transpose(0, 2, 1, 3).reshape(4 * m, 4 * n)


def real_right_scalar(q) -> np.ndarray:
    """Real ``4 x 4`` matrix of ``p -> p q``."""
    q = Quaternion.coerce(q)
    w, x, y, z = q.w, q.x, q.y, q.z
    return np.array(
        [
            [w, -x, -y, -z],
            [x, w, z, -y],
            [y, -z, w, x],
            [z, y, -x, w],
        ]
    )


def vector_to_real(v: QMatrix) -> np.ndarray:
    return v.coefficients.reshape(-1)


def real_to_vector(r: np.ndarray) -> QMatrix:
    r = np.asarray(r, dtype=float)
    return QMatrix.from_coefficients(r.reshape(-1, 1, 4))

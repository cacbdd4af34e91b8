"""Quaternion scalars.

A quaternion ``w + x i + y j + z k`` is stored as four doubles.  The complex
split ``q = z1 + z2 j`` with ``z1 = w + x i`` and ``z2 = y + z i`` is the bridge
to the complex representation used by the matrix layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

from .config import DEFAULT_TOL, Tolerance

Number = Union[int, float]


@dataclass(frozen=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    # construction ---------------------------------------------------------

    @classmethod
    def from_complex(cls, c: complex) -> "Quaternion":
        c = complex(c)
        return cls(c.real, c.imag, 0.0, 0.0)

    @classmethod
    def from_pair(cls, z1: complex, z2: complex) -> "Quaternion":
        z1, z2 = complex(z1), complex(z2)
        return cls(z1.real, z1.imag, z2.real, z2.imag)

    @classmethod
    def from_array(cls, a: Sequence[float]) -> "Quaternion":
        w, x, y, z = (float(v) for v in a)
        return cls(w, x, y, z)

    @classmethod
    def coerce(cls, value) -> "Quaternion":
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, complex):
            return cls.from_complex(value)
        if isinstance(value, (int, float, np.integer, np.floating)):
            return cls(float(value))
        if isinstance(value, np.complexfloating):
            return cls.from_complex(complex(value))
        if len(value) == 4:
            return cls.from_array(value)
        raise TypeError(f"cannot interpret {value!r} as a quaternion")

    # views ----------------------------------------------------------------

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def as_list(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    @property
    def real(self) -> float:
        return self.w

    @property
    def imag_norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __abs__(self) -> float:
        return math.sqrt(self.norm2())

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def inverse(self) -> "Quaternion":
        n2 = self.norm2()
        if n2 == 0.0:
            raise ZeroDivisionError("quaternion inverse of zero")
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    def normalized(self) -> "Quaternion":
        n = abs(self)
        if n == 0.0:
            raise ZeroDivisionError("cannot normalize the zero quaternion")
        return Quaternion(self.w / n, self.x / n, self.y / n, self.z / n)

    def is_real(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.imag_norm <= tol.eps_canon * (1.0 + abs(self))

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other):
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            s = float(other)
            return Quaternion(self.w * s, self.x * s, self.y * s, self.z * s)
        if not isinstance(other, (Quaternion, complex, np.complexfloating)):
            return NotImplemented
        o = Quaternion.coerce(other)
        return Quaternion(*qmul(self.as_array(), o.as_array()))

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return self * other
        if not isinstance(other, (complex, np.complexfloating)):
            return NotImplemented
        return Quaternion.coerce(other) * self

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return self * (1.0 / float(other))
        if not isinstance(other, (Quaternion, complex)):
            return NotImplemented
        return self * Quaternion.coerce(other).inverse()

    def __repr__(self) -> str:
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"

    def __str__(self) -> str:
        return format_quaternion(self)


class ComplexPair(NamedTuple):
    """``q = z1 + z2 j``."""

    z1: complex
    z2: complex

    def assemble(self) -> Quaternion:
        return Quaternion.from_pair(self.z1, self.z2)


I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)
ONE = Quaternion(1.0)


def qmul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Hamilton product of coefficient arrays with trailing axis of length 4."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    w1, x1, y1, z1 = np.moveaxis(p, -1, 0)
    w2, x2, y2, z2 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ],
        axis=-1,
    )


def conjugate(q: Quaternion) -> Quaternion:
    return Quaternion.coerce(q).conjugate()


def standardize(q) -> complex:
    """The unique complex number with nonnegative imaginary part similar to ``q``."""
    q = Quaternion.coerce(q)
    return complex(q.w, q.imag_norm)


def standardizing_conjugator(q, tol: Tolerance = DEFAULT_TOL) -> Quaternion:
    """Unit ``s`` with ``s^-1 q s == standardize(q)``.

    The rotation by pi about the bisector of ``i`` and the imaginary direction
    ``u`` of ``q`` swaps the two.  The bisector degenerates as ``u -> -i``, so on
    the hemisphere ``u.x < 0`` we first conjugate by ``j`` (which flips the
    ``i`` and ``k`` coefficients) and compose.
    """
    q = Quaternion.coerce(q)
    if q.is_real(tol):
        return ONE
    v = q.imag_norm
    u = Quaternion(0.0, q.x / v, q.y / v, q.z / v)
    if u.x < 0.0:
        flipped = Quaternion(q.w, -q.x, q.y, -q.z)  # j^-1 q j
        return J * standardizing_conjugator(flipped, tol)
    if u.y == 0.0 and u.z == 0.0:
        return ONE
    return (I + u).normalized()


def complex_split(q) -> ComplexPair:
    q = Quaternion.coerce(q)
    return ComplexPair(complex(q.w, q.x), complex(q.y, q.z))


def succeq(u: complex, v: complex, tol: float = 0.0) -> bool:
    """Total order on C: ``a+bi >= c+di`` iff (``a >= c`` and ``b == d``) or ``b > d``.

    With ``tol > 0`` imaginary parts within ``tol`` are treated as equal.
    """
    u, v = complex(u), complex(v)
    if abs(u.imag - v.imag) <= tol:
        return u.real >= v.real - tol
    return u.imag > v.imag


def succ(u: complex, v: complex, tol: float = 0.0) -> bool:
    """Strict version of :func:`succeq`."""
    return succeq(u, v, tol) and not succeq(v, u, tol)


def sort_desc(values: Sequence[complex], tol: float = 0.0) -> list[complex]:
    """Sort complex numbers into a descending chain under :func:`succeq`."""
    from functools import cmp_to_key

    def cmp(a, b):
        if succeq(a, b, tol) and succeq(b, a, tol):
            return 0
        return -1 if succeq(a, b, tol) else 1

    return sorted(values, key=cmp_to_key(cmp))


def format_quaternion(q, digits: int = 6) -> str:
    q = Quaternion.coerce(q)
    out = f"{q.w:.{digits}g}"
    for coef, unit in ((q.x, "i"), (q.y, "j"), (q.z, "k")):
        sign = "-" if coef < 0 or (coef == 0 and math.copysign(1.0, coef) < 0) else "+"
        out += f"{sign}{abs(coef):.{digits}g}{unit}"
    return out

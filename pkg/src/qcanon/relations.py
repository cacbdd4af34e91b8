"""Relation tracker for the diagonal unitary group acting on a triangular form.

Every index ``i`` carries a unit scalar ``s_i``.  Indices are grouped in
classes; within a class ``s_i = rho^(e_i)`` for a class value ``rho`` and a
label ``e_i`` in ``{+1, -1}``.  Each class has a field ``H``, ``C`` or ``R``
saying where ``rho`` may range.  Fields only ever shrink.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .config import DEFAULT_TOL, Tolerance
from .quaternion import Quaternion, complex_split

FIELDS = ("R", "C", "H")
_RANK = {f: k for k, f in enumerate(FIELDS)}


def min_field(a: str, b: str) -> str:
    return a if _RANK[a] <= _RANK[b] else b


@dataclass
class RelationTracker:
    """Union-find with parity labels and a field per class."""

    parent: list[int]
    label: list[int]
    fields: dict[int, str] = field(default_factory=dict)

    @classmethod
    def singletons(cls, fields: Sequence[str]) -> "RelationTracker":
        for f in fields:
            if f not in _RANK:
                raise ValueError(f"unknown field {f!r}")
        n = len(fields)
        return cls(list(range(n)), [1] * n, {i: f for i, f in enumerate(fields)})

    def copy(self) -> "RelationTracker":
        return RelationTracker(list(self.parent), list(self.label), dict(self.fields))

    @property
    def n(self) -> int:
        return len(self.parent)

    def find(self, i: int) -> tuple[int, int]:
        """``(root, e)`` with ``s_i = s_root^e``."""
        path = []
        while self.parent[i] != i:
            path.append(i)
            i = self.parent[i]
        root = i
        # compress, composing labels from the top down
        acc = 1
        for j in reversed(path):
            acc *= self.label[j]
            self.parent[j] = root
            self.label[j] = acc
        return root, (self.label[path[0]] if path else 1)

    def root(self, i: int) -> int:
        return self.find(i)[0]

    def exponent(self, i: int) -> int:
        return self.find(i)[1]

    def field_of(self, i: int) -> str:
        return self.fields[self.root(i)]

    def relation(self, l: int, r: int) -> int | None:
        """``+1`` if ``s_l = s_r`` is implied, ``-1`` if ``s_l = s_r^-1``, else ``None``."""
        rl, el = self.find(l)
        rr, er = self.find(r)
        if rl != rr:
            return None
        return el * er

    def merge(self, l: int, r: int, sign: int, new_field: str | None = None) -> None:
        """Impose ``s_l = s_r^sign``; the merged class gets ``new_field`` or the smaller field."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        rl, el = self.find(l)
        rr, er = self.find(r)
        if rl == rr:
            raise ValueError(f"indices {l} and {r} are already related")
        merged = min_field(self.fields[rl], self.fields[rr])
        if new_field is not None:
            merged = min_field(merged, new_field)
        if sign == -1 and merged == "H":
            raise ValueError("an inverse relation needs a commutative field")
        top, low = (rl, rr) if rl < rr else (rr, rl)
        self.parent[low] = top
        self.label[low] = el * er * sign
        del self.fields[low]
        self.fields[top] = merged

    def restrict(self, i: int, new_field: str) -> None:
        rt = self.root(i)
        self.fields[rt] = min_field(self.fields[rt], new_field)

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i in range(self.n):
            out.setdefault(self.root(i), []).append(i)
        return out

    def check(self) -> None:
        """Structural invariants: every root has a field; ``-1`` labels only in C/R classes."""
        for i in range(self.n):
            rt, e = self.find(i)
            if rt not in self.fields:
                raise AssertionError(f"root {rt} has no field")
            if e == -1 and self.fields[rt] == "H":
                raise AssertionError(f"index {i} has an inverse label in an H class")

    def to_json_obj(self) -> dict:
        return {
            "root": [self.root(i) for i in range(self.n)],
            "exponent": [self.exponent(i) for i in range(self.n)],
            "field": [self.field_of(i) for i in range(self.n)],
        }


def initial_tracker(diag: Sequence[complex], tol: Tolerance = DEFAULT_TOL) -> RelationTracker:
    """Field ``C`` for nonreal diagonal entries, ``H`` for real ones."""
    return RelationTracker.singletons(["C" if complex(v).imag > 0 else "H" for v in diag])


def is_fixed(a, l: int, r: int, tracker: RelationTracker, thr: float = 0.0) -> bool:
    """True iff ``conj(s_l) a s_r == a`` for every admissible assignment of scalars.

    Components of size at most ``thr`` count as zero.
    """
    q = Quaternion.coerce(a)
    z1, z2 = complex_split(q)
    rel = tracker.relation(l, r)
    if rel is None:
        return abs(q) <= thr
    fld = tracker.field_of(l)
    if fld == "R":
        return True
    if fld == "H":
        return q.imag_norm <= thr
    if rel == 1:
        return abs(z2) <= thr
    return abs(z1) <= thr

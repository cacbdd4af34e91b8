"""Canonical form of nonderogatory quaternion matrices under unitary similarity.

A nonderogatory ``A`` is first brought to upper triangular form ``T`` with the
standard eigenvalues on the diagonal in descending order.  The remaining
freedom is conjugation by diagonal unitaries ``S = diag(s_1, ..., s_n)``.  The
off-diagonal entries are then normalized one superdiagonal at a time, and each
normalization records which relations between the ``s_i`` it forces.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOL, Tolerance
from .decomp import gram_schmidt_qr
from .eigen import EigenList, expand, right_eigenvalues
from .errors import ChainFailure, Derogatory, InternalOrderViolation, NotBlockDiagonal
from .qmatrix import QMatrix, adjoint_complex, real_left_matrix, real_right_scalar, real_to_vector
from .quaternion import (
    ONE,
    Quaternion,
    complex_split,
    standardize,
    standardizing_conjugator,
)
from .relations import RelationTracker, initial_tracker, is_fixed

# nonderogatory test --------------------------------------------------------


def geometric_multiplicity(a: QMatrix, lam: complex, tol: Tolerance = DEFAULT_TOL) -> int:
    """Dimension over C of the kernel of ``chi(A) - lam I``."""
    c = adjoint_complex(a)
    s = np.linalg.svd(c - lam * np.eye(c.shape[0]), compute_uv=False)
    return int(np.sum(s <= tol.eps_eig * (1.0 + a.norm())))


def is_nonderogatory(a: QMatrix, tol: Tolerance = DEFAULT_TOL, eigs: EigenList | None = None) -> bool:
    """One Jordan block per standard eigenvalue."""
    eigs = right_eigenvalues(a, tol) if eigs is None else eigs
    for p in eigs:
        expected = 1 if p.value.imag > 0 else 2
        if geometric_multiplicity(a, p.value, tol) != expected:
            return False
    return True


# triangular form -----------------------------------------------------------


@dataclass(frozen=True)
class TriangularForm:
    U: QMatrix
    T: QMatrix
    diag: tuple[complex, ...]


def _real_operator(a: QMatrix, lam: complex) -> np.ndarray:
    """``v -> A v - v lam`` on interleaved real coordinates."""
    n = a.rows
    return real_left_matrix(a) - np.kron(np.eye(n), real_right_scalar(Quaternion.from_complex(lam)))


def _kernel(m: np.ndarray, dim: int) -> tuple[np.ndarray, float, float]:
    """Orthonormal kernel basis of known dimension, with the largest discarded and
    smallest kept singular values (for gap checks)."""
    _, s, vt = np.linalg.svd(m)
    k = m.shape[1] - dim
    return vt[k:].T, float(s[k]) if dim else 0.0, float(s[k - 1]) if k else np.inf


def jordan_chain(a: QMatrix, lam: complex, length: int, tol: Tolerance = DEFAULT_TOL) -> list[QMatrix]:
    """Vectors ``v_1 .. v_k`` with ``A v_1 = v_1 lam`` and ``A v_j = v_j lam + v_(j-1)``."""
    L = _real_operator(a, lam)
    per = 2 if complex(lam).imag > 0 else 4
    scale = 1.0 + np.linalg.norm(L, 2)
    power = np.linalg.matrix_power(L, length)
    top_k, small, big = _kernel(power, per * length)
    if small > tol.eps_rank * scale**length * 1e3 or big <= small:
        raise ChainFailure(f"kernel of the {length}-th power at {lam} is not numerically {per * length}-dimensional")
    if length > 1:
        low_k, _, _ = _kernel(np.linalg.matrix_power(L, length - 1), per * (length - 1))
        comp = top_k - low_k @ (low_k.T @ top_k)
    else:
        comp = top_k
    u, _, _ = np.linalg.svd(comp, full_matrices=False)
    v = u[:, 0]
    chain = [v]
    for _ in range(length - 1):
        chain.append(L @ chain[-1])
    chain.reverse()
    return [real_to_vector(c) for c in chain]


def _as_form(a: QMatrix, eigs: EigenList, tol: Tolerance) -> TriangularForm | None:
    """Return ``(I, A)`` if ``A`` already has the triangular form, else ``None``."""
    n = a.rows
    thr = tol.eps_canon * (1.0 + a.norm())
    norms = a.entry_norms()
    if np.any(np.tril(norms, -1) > thr):
        return None
    diag = expand(eigs)
    z1, z2 = a.split()
    for k in range(n):
        if abs(z2[k, k]) > thr or abs(z1[k, k] - diag[k]) > tol.eps_eig * (1.0 + a.norm()):
            return None
    # keep the exact diagonal of the input when equal eigenvalues are stored identically
    own = [complex(z1[k, k]) for k in range(n)]
    if all((diag[k] == diag[k + 1]) == (own[k] == own[k + 1]) for k in range(n - 1)):
        if all(v.imag >= 0 for v in own):
            diag = own
    z1, z2 = a.copy_arrays()
    z1[np.tril_indices(n, -1)] = 0.0
    z2[np.tril_indices(n, -1)] = 0.0
    z1[np.arange(n), np.arange(n)] = diag
    z2[np.arange(n), np.arange(n)] = 0.0
    t = QMatrix(z1, z2)
    try:
        _check_cj(t, diag, thr)
    except ChainFailure:
        return None
    return TriangularForm(QMatrix.identity(n), t, tuple(diag))


def _check_cj(t: QMatrix, diag, thr: float) -> None:
    for l in range(len(diag) - 1):
        if diag[l] == diag[l + 1] and abs(t.z1[l, l + 1]) <= thr:
            raise ChainFailure(f"entry ({l}, {l + 1}) lies in Cj inside an equal-eigenvalue run")


def triangularize(a: QMatrix, tol: Tolerance = DEFAULT_TOL) -> TriangularForm:
    """Unitary triangularization with sorted standard eigenvalues on the diagonal.

    Inside runs of equal eigenvalues the superdiagonal entries stay off ``Cj``.
    """
    if not a.is_square():
        raise Derogatory("need a square matrix")
    eigs = right_eigenvalues(a, tol)
    if not is_nonderogatory(a, tol, eigs):
        raise Derogatory("some standard eigenvalue has more than one Jordan block")
    ready = _as_form(a, eigs, tol)
    if ready is not None:
        return ready
    n = a.rows
    cols = []
    for p in eigs:
        chain = jordan_chain(a, p.value, p.multiplicity, tol)
        lam = Quaternion.from_complex(p.value)
        prev = QMatrix.zeros(n, 1)
        for v in chain:
            v = v / max(v.norm(), np.finfo(float).tiny)
            cols.append(v)
        # residual of the chain relation (scale-free: compare directions)
        vs = chain
        for j, v in enumerate(vs):
            lhs = a @ v - v * lam - (vs[j - 1] if j else prev)
            if lhs.norm() > 1e3 * tol.eps_rank * (1.0 + a.norm()) * max(1.0, max(w.norm() for w in vs)):
                raise ChainFailure(f"Jordan chain residual {lhs.norm():.3g} at {p.value}")
    S = QMatrix.block([cols])
    U = gram_schmidt_qr(S, tol).Q
    T = U.H @ a @ U
    diag = expand(eigs)
    thr = tol.eps_canon * (1.0 + a.norm())
    lower = np.tril(T.entry_norms(), -1)
    if np.any(lower > 1e2 * thr):
        raise ChainFailure(f"triangularization left lower entries of size {lower.max():.3g}")
    z1, z2 = T.copy_arrays()
    if np.any(np.abs(np.diag(z1) - diag) > 1e2 * thr) or np.any(np.abs(np.diag(z2)) > 1e2 * thr):
        raise ChainFailure("triangularization diagonal does not match the eigenvalues")
    z1[np.tril_indices(n, -1)] = 0.0
    z2[np.tril_indices(n, -1)] = 0.0
    z1[np.arange(n), np.arange(n)] = diag
    z2[np.arange(n), np.arange(n)] = 0.0
    T = QMatrix(z1, z2)
    _check_cj(T, diag, thr)
    return TriangularForm(U, T, tuple(diag))


# reduction of the off-diagonal entries -------------------------------------


def reduction_order(n: int) -> list[tuple[int, int]]:
    """``a_12, a_23, ..., a_(n-1)n; a_13, ...; a_1n`` (0-based pairs)."""
    return [(l, l + d) for d in range(1, n) for l in range(n - d)]


@dataclass
class LogEntry:
    entry: tuple[int, int]
    case: str
    delta: str

    def to_json_obj(self) -> dict:
        return {"entry": [self.entry[0] + 1, self.entry[1] + 1], "case": self.case, "deltaR": self.delta}


@dataclass
class LittlewoodState:
    """Working state: current matrix, accumulated unitary, tracker and records."""

    T: QMatrix
    U: QMatrix
    diag: tuple[complex, ...]
    tracker: RelationTracker
    thr: float
    step: int = 0
    log: list[LogEntry] = field(default_factory=list)
    edges: list[tuple[int, int, int]] = field(default_factory=list)
    done: dict[tuple[int, int], Quaternion] = field(default_factory=dict)

    @classmethod
    def start(cls, form: TriangularForm, thr: float) -> "LittlewoodState":
        return cls(form.T, form.U, form.diag, initial_tracker(form.diag), thr)

    def copy(self) -> "LittlewoodState":
        return LittlewoodState(self.T, self.U, self.diag, self.tracker.copy(), self.thr, self.step,
                               list(self.log), list(self.edges), dict(self.done))

    @property
    def order(self) -> list[tuple[int, int]]:
        return reduction_order(self.T.rows)


def _snap(c: complex, thr: float) -> complex:
    return 0j if abs(c) <= thr else c


def _snap_parts(c: complex, thr: float) -> complex:
    return complex(0.0 if abs(c.real) <= thr else c.real, 0.0 if abs(c.imag) <= thr else c.imag)


def _phase(c: complex) -> complex:
    """``conj(c) / |c|``: multiplying ``c`` by this gives ``|c|``."""
    return c.conjugate() / abs(c)


def _positive(c: complex) -> bool:
    """``c > 0`` in the order on C: positive imaginary part, or real and positive."""
    return c.imag > 0 or (c.imag == 0 and c.real > 0)


def _qc(c: complex) -> Quaternion:
    return Quaternion.from_complex(c)


def _dispatch(a: Quaternion, l: int, r: int, tr: RelationTracker, thr: float):
    """Case analysis for one entry.

    Returns ``(case, new_entry, s_l, s_r, action)``; ``action`` is a tuple
    describing the tracker update.
    """
    z1, z2 = complex_split(a)
    z1, z2 = _snap(z1, thr), _snap(z2, thr)
    rel = tr.relation(l, r)
    fl, fr = tr.field_of(l), tr.field_of(r)
    if fl == "H" or fr == "H":
        if rel is None:
            na = abs(a)
            if fr == "H":
                sl, sr = ONE, a.conjugate() / na
            else:
                sl, sr = a / na, ONE
            return "1a", _qc(na), sl, sr, ("merge", 1, None)
        s = standardizing_conjugator(a)
        return "1b", _qc(standardize(a)), s, s, ("restrict", "C")
    if fl == "C" and fr == "C":
        if rel is None:
            if z1 != 0 and z2 != 0:
                p1, p2 = _phase(z1), _phase(z2)
                sl = cmath.sqrt(p1 * p2).conjugate()
                sr = sl * p1
                return "2a", Quaternion.from_pair(abs(z1), abs(z2)), _qc(sl), _qc(sr), ("merge", 1, "R")
            if z2 == 0:
                return "2b", _qc(abs(z1)), ONE, _qc(_phase(z1)), ("merge", 1, None)
            return "2c", Quaternion.from_pair(0, abs(z2)), ONE, _qc(_phase(z2).conjugate()), ("merge", -1, None)
        if rel == 1:
            s = cmath.sqrt(_phase(z2)).conjugate()
            return "3a", Quaternion.from_pair(z1, abs(z2)), _qc(s), _qc(s), ("restrict", "R")
        s = cmath.sqrt(_phase(z1))
        return "3b", Quaternion.from_pair(abs(z1), z2), _qc(s.conjugate()), _qc(s), ("restrict", "R")
    if fl == "C" or fr == "C":
        if z1 != 0:
            p1 = _phase(z1)
            if fl == "C":
                sl, sr, z2n = p1.conjugate(), 1.0, p1 * z2
            else:
                sl, sr, z2n = 1.0, p1, z2 * p1.conjugate()
            return "4a", Quaternion.from_pair(abs(z1), z2n), _qc(sl), _qc(sr), ("merge", 1, "R")
        p2 = _phase(z2)
        if fl == "C":
            sl, sr = p2.conjugate(), 1.0
        else:
            sl, sr = 1.0, p2.conjugate()
        return "4b", Quaternion.from_pair(0, abs(z2)), _qc(sl), _qc(sr), ("merge", 1, "R")
    # both real fields, unrelated
    w1, w2 = _snap_parts(z1, thr), _snap_parts(z2, thr)
    lead = w1 if w1 != 0 else w2
    sign = 1.0 if _positive(lead) else -1.0
    case = "5a" if w1 != 0 else "5b"
    return case, Quaternion.from_pair(sign * w1, sign * w2), ONE, _qc(sign), ("merge", 1, None)


def _class_values(tr: RelationTracker, l: int, r: int, sl: Quaternion, sr: Quaternion) -> dict[int, Quaternion]:
    """Class values ``rho`` realizing ``s_l`` and ``s_r``."""
    rho: dict[int, Quaternion] = {}
    for idx, s in ((r, sr), (l, sl)):
        root, e = tr.find(idx)
        if root in rho:
            continue
        rho[root] = s if e == 1 else s.conjugate()
    return rho


def reduce_entry(state: LittlewoodState, l: int, r: int) -> LittlewoodState:
    """Normalize entry ``(l, r)`` and return the updated state (the input is not modified)."""
    order = state.order
    if state.step >= len(order) or order[state.step] != (l, r):
        expected = order[state.step] if state.step < len(order) else None
        raise InternalOrderViolation(f"entry {(l, r)} reduced out of order (expected {expected})")
    st = state.copy()
    tr = st.tracker
    a = st.T[l, r]
    if is_fixed(a, l, r, tr, st.thr) or (tr.relation(l, r) is None and abs(a) <= st.thr):
        z1, z2 = complex_split(a)
        rel = tr.relation(l, r)
        fld = tr.field_of(l) if rel is not None else None
        if rel is None:
            new = _qc(0)
        elif fld == "H":
            new = _qc(a.w)
        elif fld == "C":
            new = _qc(_snap(z1, st.thr)) if rel == 1 else Quaternion.from_pair(0, z2)
        else:
            new = a
        st.T = st.T.with_entry(l, r, new)
        st.done[(l, r)] = new
        st.log.append(LogEntry((l, r), "fixed", ""))
        st.step += 1
        return st

    case, new, sl, sr, action = _dispatch(a, l, r, tr, st.thr)
    rho = _class_values(tr, l, r, sl, sr)
    s = []
    for i in range(st.T.rows):
        root, e = tr.find(i)
        v = rho.get(root, ONE)
        s.append(v if e == 1 else v.conjugate())
    S = QMatrix.diag(s)
    T = S.H @ st.T @ S
    drift = abs(T[l, r] - new)
    if drift > 1e2 * st.thr:
        raise InternalOrderViolation(f"case {case} at {(l, r)}: transformed entry misses its target by {drift:.3g}")
    T = T.with_entry(l, r, new)
    for (i, j), q in st.done.items():
        if abs(T[i, j] - q) > 1e2 * st.thr:
            raise InternalOrderViolation(f"reducing {(l, r)} disturbed the reduced entry {(i, j)}")
        T = T.with_entry(i, j, q)
    z1, z2 = T.copy_arrays()
    n = T.rows
    z1[np.arange(n), np.arange(n)] = st.diag
    z2[np.arange(n), np.arange(n)] = 0.0
    st.T = QMatrix(z1, z2)
    st.U = st.U @ S

    L1, R1 = l + 1, r + 1
    if action[0] == "merge":
        sign, fld = action[1], action[2]
        tr.merge(l, r, sign, fld)
        st.edges.append((l, r, st.step))
        rel_txt = f"s{L1}=s{R1}" if sign == 1 else f"s{L1}=s{R1}^-1"
        delta = rel_txt + (" in R" if fld == "R" else "")
    else:
        tr.restrict(l, action[1])
        delta = f"s{L1} in {action[1]}"
    st.done[(l, r)] = new
    st.log.append(LogEntry((l, r), case, delta))
    st.step += 1
    return st


# canonical form ------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalResult:
    canon: QMatrix
    tracker: RelationTracker
    edges: tuple[tuple[int, int, int], ...]
    log: tuple[LogEntry, ...]
    unitary: QMatrix

    @property
    def cases(self) -> tuple[str, ...]:
        return tuple(e.case for e in self.log)

    @property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((l, r) for l, r, _ in self.edges)

    def to_json_obj(self) -> dict:
        return {
            "canon": self.canon.to_json_obj(),
            "edges": [[l + 1, r + 1] for l, r, _ in self.edges],
            "log": [e.to_json_obj() for e in self.log],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_obj(), **kwargs)


def canonical_form(a: QMatrix, tol: Tolerance = DEFAULT_TOL) -> CanonicalResult:
    """Canonical matrix under unitary similarity for a nonderogatory ``A``."""
    form = triangularize(a, tol)
    st = LittlewoodState.start(form, tol.eps_canon * (1.0 + a.norm()))
    for l, r in st.order:
        st = reduce_entry(st, l, r)
    st.tracker.check()
    if not is_forest(a.rows, [(l, r) for l, r, _ in st.edges]):
        raise InternalOrderViolation("graph edges contain a cycle")
    return CanonicalResult(st.T, st.tracker, tuple(st.edges), tuple(st.log), st.U)


def unitarily_similar(a: QMatrix, b: QMatrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Decide unitary similarity of two nonderogatory matrices by their canonical forms."""
    if a.shape != b.shape:
        return False
    ra, rb = canonical_form(a, tol), canonical_form(b, tol)
    return canonical_equal(ra, rb, tol)


def canonical_equal(ra: CanonicalResult, rb: CanonicalResult, tol: Tolerance = DEFAULT_TOL) -> bool:
    if ra.canon.shape != rb.canon.shape:
        return False
    atol = tol.eps_canon * (1.0 + max(ra.canon.entry_norms().max(), rb.canon.entry_norms().max()))
    return ra.canon.allclose(rb.canon, atol) and ra.cases == rb.cases and ra.edge_set == rb.edge_set


# graph ---------------------------------------------------------------------


def graph(result: CanonicalResult) -> list[tuple[int, int]]:
    """Edges ``(l, r)`` of the graph, 0-based, in the order they were created."""
    return [(l, r) for l, r, _ in result.edges]


def is_forest(n: int, edges) -> bool:
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for l, r in edges:
        a, b = find(l), find(r)
        if a == b:
            return False
        parent[max(a, b)] = min(a, b)
    return True


def components(n: int, edges) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for l, r in edges:
        a, b = find(l), find(r)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


@dataclass(frozen=True)
class Decomposition:
    permutation: tuple[int, ...]
    blocks: tuple[QMatrix, ...]
    components: tuple[tuple[int, ...], ...]
    permuted: QMatrix

    def to_json_obj(self) -> dict:
        return {
            "permutation": [p + 1 for p in self.permutation],
            "components": [[v + 1 for v in c] for c in self.components],
            "blocks": [b.to_json_obj() for b in self.blocks],
        }


def decompose(result: CanonicalResult, tol: Tolerance = DEFAULT_TOL) -> Decomposition:
    """Permute the canonical matrix into a direct sum over graph components."""
    n = result.canon.rows
    comps = components(n, graph(result))
    perm = [v for c in comps for v in c]
    permuted = result.canon.permute(perm)
    atol = tol.eps_canon * (1.0 + result.canon.norm())
    norms = permuted.entry_norms()
    blocks = []
    k = 0
    mask = np.ones((n, n), dtype=bool)
    for c in comps:
        idx = list(range(k, k + len(c)))
        mask[np.ix_(idx, idx)] = False
        blocks.append(permuted[idx, idx])
        k += len(c)
    if np.any(norms[mask] > atol):
        raise NotBlockDiagonal(f"entry of size {norms[mask].max():.3g} couples different components")
    return Decomposition(tuple(perm), tuple(blocks), tuple(tuple(c) for c in comps), permuted)

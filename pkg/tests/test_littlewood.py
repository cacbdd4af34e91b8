import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcanon.errors import Derogatory, InternalOrderViolation
from qcanon.eigen import expand, right_eigenvalues
from qcanon.littlewood import (
    LittlewoodState,
    canonical_equal,
    canonical_form,
    components,
    decompose,
    graph,
    is_forest,
    is_nonderogatory,
    reduce_entry,
    reduction_order,
    triangularize,
    unitarily_similar,
)
from qcanon.qmatrix import QMatrix
from qcanon.quaternion import I, J, Quaternion, complex_split, sort_desc
from qcanon.testkit import forest_witness, haar_unitary, make_rng, random_forest, random_nonderogatory

from conftest import seeds

Q = Quaternion


def upper(diag, entries):
    a = QMatrix.diag(diag)
    for (l, r), q in entries.items():
        a = a.with_entry(l, r, q)
    return a


def canon_entry(diag, entries, at):
    res = canonical_form(upper(diag, entries))
    return res, res.canon[at]


def qclose(p, q, tol=1e-12):
    return abs(Quaternion.coerce(p) - Quaternion.coerce(q)) <= tol


# nonderogatory / triangular form --------------------------------------------------


def test_nonderogatory_examples():
    assert is_nonderogatory(QMatrix.from_entries([[I, 1], [0, I]]))
    assert not is_nonderogatory(QMatrix.diag([I, I]))
    assert is_nonderogatory(QMatrix.diag([1, 2]))
    # i and -i, j are the same standard eigenvalue
    assert not is_nonderogatory(QMatrix.diag([I, J]))
    with pytest.raises(Derogatory):
        canonical_form(QMatrix.diag([1, 1]))


def test_triangularize_examples():
    a = QMatrix.diag([2 * I, I])
    tf = triangularize(a)
    assert tf.T == a and tf.U == QMatrix.identity(2)
    rng = make_rng(3)
    u = haar_unitary(2, rng)
    tf = triangularize(u.H @ QMatrix.from_entries([[I, 1], [0, I]]) @ u)
    assert np.allclose(tf.diag, [1j, 1j])
    assert abs(complex_split(tf.T[0, 1]).z1) > 1e-6
    assert tf.T.entry_norms()[1, 0] == 0.0


@given(seeds, st.integers(1, 6))
def test_triangularize_postconditions(seed, n):
    rng = make_rng(seed)
    a = random_nonderogatory(rng, n)
    tf = triangularize(a)
    assert (tf.U.H @ a @ tf.U - tf.T).norm() <= 1e-8 * (1 + a.norm())
    assert np.all(np.tril(tf.T.entry_norms(), -1) == 0)
    assert list(tf.diag) == sort_desc(tf.diag, 1e-8)
    assert all(complex(d).imag >= 0 for d in tf.diag)
    for l in range(n - 1):
        if tf.diag[l] == tf.diag[l + 1]:
            assert abs(complex_split(tf.T[l, l + 1]).z1) > 0


# single-entry reductions, one per case ---------------------------------------------


def test_case_1_real_eigenvalues():
    res, a = canon_entry([3, 1], {(0, 1): Q(1, 1, 1, 1)}, (0, 1))
    assert a == Q(2) and res.cases == ("1a",)
    assert res.log[0].delta == "s1=s2"
    assert graph(res) == [(0, 1)]
    assert res.canon == QMatrix.from_entries([[3, 2], [0, 1]])


def test_case_1_related_h_classes():
    # J_2(5)-type: equal real eigenvalues share a class after the superdiagonal
    res = canonical_form(QMatrix.from_entries([[5, Q(1, 1, 0, 0)], [0, 5]]))
    assert graph(res) == [(0, 1)]
    assert qclose(res.canon[0, 1], Q(np.sqrt(2)))


def test_case_2_branches():
    res, a = canon_entry([2j, 1j], {(0, 1): Q(3, 0, 4, 0)}, (0, 1))
    assert a == Q(3, 0, 4, 0) and res.cases == ("2a",)
    assert res.tracker.field_of(0) == "R"
    res, a = canon_entry([2j, 1j], {(0, 1): Q(0, 0, 0, 2)}, (0, 1))
    assert qclose(a, 2 * J) and res.cases == ("2c",)
    assert res.log[0].delta == "s1=s2^-1" and res.tracker.relation(0, 1) == -1
    res, a = canon_entry([1j, 1j], {(0, 1): Q(0, 2)}, (0, 1))
    assert qclose(a, Q(2)) and res.cases == ("2b",)


def test_case_3_related_complex():
    _, a = canon_entry([3j, 2j, 1j], {(0, 1): 1, (1, 2): 1, (0, 2): Q(1, 1, 1, 1)}, (0, 2))
    assert qclose(a, Q(1, 1, np.sqrt(2), 0))
    res, a = canon_entry([3j, 2j, 1j], {(0, 1): J, (1, 2): 1, (0, 2): Q(1, 1, 1, 1)}, (0, 2))
    assert res.cases == ("2c", "2b", "3b")
    assert qclose(a, Q(np.sqrt(2), 0, 1, 1))


def test_case_4_preserves_moduli():
    res, a = canon_entry([3j, 2j, 1j], {(0, 1): Q(1, 0, 1, 0), (1, 2): Q(1, 1, 1, 1)}, (1, 2))
    assert res.cases[:2] == ("2a", "4a")
    z1, z2 = complex_split(a)
    assert abs(z1 - np.sqrt(2)) < 1e-12 and abs(abs(z2) - np.sqrt(2)) < 1e-12
    assert abs(z2 - np.sqrt(2) * 1j) < 1e-12


def test_case_5_sign_choice():
    base = {(0, 1): Q(1, 0, 1, 0), (2, 3): Q(1, 0, 1, 0)}
    res, a = canon_entry([4j, 3j, 2j, 1j], {**base, (1, 3): Q(1, -1, 2, 0)}, (1, 3))
    assert "5a" in res.cases and qclose(a, Q(-1, 1, -2, 0))
    res, a = canon_entry([4j, 3j, 2j, 1j], {**base, (1, 3): Q(0, 0, -2, 0)}, (1, 3))
    assert "5b" in res.cases and qclose(a, 2 * J)


def test_reduction_order_and_violation():
    assert reduction_order(4) == [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)]
    tf = triangularize(upper([3, 2, 1], {(0, 1): 1, (1, 2): 1}))
    st_ = LittlewoodState.start(tf, 1e-8)
    with pytest.raises(InternalOrderViolation):
        reduce_entry(st_, 0, 2)


# whole canonical form --------------------------------------------------------


def test_canonical_examples():
    res = canonical_form(QMatrix.diag([3, 2, 1]))
    assert res.canon == QMatrix.diag([3, 2, 1]) and graph(res) == []
    assert all(c == "fixed" for c in res.cases)
    assert unitarily_similar(QMatrix.diag([3, 1]), QMatrix.diag([1, 3]))
    j2 = QMatrix.from_entries([[I, 1], [0, I]])
    j2b = QMatrix.from_entries([[I, 2], [0, I]])
    assert not unitarily_similar(j2, j2b)
    u = haar_unitary(2, make_rng(5))
    assert unitarily_similar(j2, u.H @ j2 @ u)


def test_json_is_one_based():
    obj = canonical_form(upper([3, 1], {(0, 1): Q(1, 1, 1, 1)})).to_json_obj()
    assert obj["edges"] == [[1, 2]]
    assert obj["log"] == [{"entry": [1, 2], "case": "1a", "deltaR": "s1=s2"}]


@given(seeds, st.integers(2, 6))
def test_invariance_under_unitary_similarity(seed, n):
    rng = make_rng(seed)
    a = random_nonderogatory(rng, n)
    u = haar_unitary(n, rng)
    ra, rb = canonical_form(a), canonical_form(u.H @ a @ u)
    assert (ra.canon - rb.canon).entry_norms().max() <= 1e-6
    assert ra.cases == rb.cases and ra.edge_set == rb.edge_set
    assert canonical_equal(ra, rb)


@given(seeds, st.integers(1, 6))
def test_idempotence_and_structure(seed, n):
    a = random_nonderogatory(make_rng(seed), n)
    r = canonical_form(a)
    r2 = canonical_form(r.canon)
    assert r2.cases == r.cases and r2.edge_set == r.edge_set
    assert r2.canon.allclose(r.canon, 1e-8 * (1 + r.canon.norm()))
    assert is_forest(n, graph(r))
    # canonical matrix: upper triangular, unitary, diagonal = sorted standard eigenvalues
    assert np.all(np.tril(r.canon.entry_norms(), -1) == 0)
    assert (r.unitary.H @ a @ r.unitary - r.canon).norm() <= 1e-8 * (1 + a.norm())
    eig = expand(right_eigenvalues(a))
    assert np.allclose([complex(d.w, d.x) for d in r.canon.diagonal()], eig, atol=1e-8 * (1 + a.norm()))
    # consecutive equal eigenvalues are joined by an edge
    for l in range(n - 1):
        if r.canon[l, l] == r.canon[l + 1, l + 1]:
            assert (l, l + 1) in r.edge_set
    # entries between different components vanish
    comp = {v: k for k, c in enumerate(components(n, graph(r))) for v in c}
    norms = r.canon.entry_norms()
    for i in range(n):
        for j in range(n):
            if comp[i] != comp[j]:
                assert norms[i, j] == 0.0


# graph and decomposition ----------------------------------------------------------


def test_decompose_examples():
    d = decompose(canonical_form(QMatrix.diag([3, 1])))
    assert [b.shape for b in d.blocks] == [(1, 1), (1, 1)]
    d = decompose(canonical_form(QMatrix.from_entries([[3, 2], [0, 1]])))
    assert len(d.blocks) == 1
    w = forest_witness(3, [(0, 2)])
    d = decompose(canonical_form(w))
    assert d.components == ((0, 2), (1,)) and d.permutation == (0, 2, 1)
    assert d.to_json_obj()["components"] == [[1, 3], [2]]


@given(seeds, st.integers(1, 6))
def test_forest_witness_realizes_its_graph(seed, n):
    edges = random_forest(make_rng(seed), n)
    w = forest_witness(n, edges)
    r = canonical_form(w)
    assert r.edge_set == frozenset(edges)
    assert r.canon.allclose(w, 1e-12)


@given(seeds, st.integers(1, 6))
def test_decomposition_blocks_are_indecomposable_canonical(seed, n):
    r = canonical_form(random_nonderogatory(make_rng(seed), n))
    d = decompose(r)
    assert sum(b.rows for b in d.blocks) == n
    for b in d.blocks:
        rb = canonical_form(b)
        assert rb.canon.allclose(b, 1e-8 * (1 + b.norm()))
        assert len(components(b.rows, graph(rb))) == 1


def test_is_forest():
    assert is_forest(3, [(0, 1), (1, 2)])
    assert not is_forest(3, [(0, 1), (1, 2), (0, 2)])
    assert components(4, [(0, 2)]) == [[0, 2], [1], [3]]

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcanon.errors import ShapeMismatch
from qcanon.littlewood import unitarily_similar
from qcanon.qmatrix import QMatrix
from qcanon.quaternion import I, J, K, Quaternion, standardize
from qcanon.testkit import (
    _necklaces,
    gadget_M5,
    gadget_MA,
    gadget_wild,
    haar_unitary,
    jordan_nilpotent,
    make_rng,
    random_qmatrix,
    random_unit_quaternion,
    trace_word_oracle,
    trace_word_value,
)

from conftest import seeds


def test_haar_examples():
    u = haar_unitary(1, make_rng(0))
    assert abs(abs(u[0, 0]) - 1.0) < 1e-15
    assert haar_unitary(3, make_rng(7)) == haar_unitary(3, make_rng(7))
    with pytest.raises(ValueError):
        haar_unitary(0, make_rng(0))


@given(seeds, st.integers(1, 8))
def test_haar_is_unitary(seed, n):
    u = haar_unitary(n, make_rng(seed))
    assert (u.H @ u - QMatrix.identity(n)).norm() <= 1e-10


def test_gadget_MA_examples():
    assert gadget_MA(0) == QMatrix.from_entries([[3, 1, 0], [0, 2, 1], [0, 0, 1]])
    assert unitarily_similar(gadget_MA(I), gadget_MA(K))
    assert not unitarily_similar(gadget_MA(I), gadget_MA(2 * I))


@given(seeds)
def test_gadget_MA_faithful_on_unit_quaternions(seed):
    rng = make_rng(seed)
    a, b = random_unit_quaternion(rng), random_unit_quaternion(rng)
    s = random_unit_quaternion(rng)
    c = s.inverse() * a * s
    assert unitarily_similar(gadget_MA(a), gadget_MA(c))
    expected = abs(standardize(a) - standardize(b)) <= 1e-8 * 2
    assert unitarily_similar(gadget_MA(a), gadget_MA(b)) == expected


def test_gadget_M5_examples():
    m = gadget_M5(0, 0, 0, 0)
    want = np.diag([5.0, 4, 3, 2, 1]).astype(complex)
    want[0, 1] = want[1, 2] = 1.0
    assert m == QMatrix(want)
    with pytest.raises(ShapeMismatch):
        gadget_M5(QMatrix.zeros(2), 0, 0, 0)


@given(seeds)
def test_gadget_M5_conjugated_inputs_stay_similar(seed):
    rng = make_rng(seed)
    a, b, c, d = (random_qmatrix(rng, 1)[0, 0] for _ in range(4))
    v, v1, v2 = (random_unit_quaternion(rng) for _ in range(3))
    m = gadget_M5(a, b, c, d)
    m2 = gadget_M5(v.conjugate() * a * v, v.conjugate() * b * v2, v.conjugate() * c * v1, v1.conjugate() * d * v2)
    assert trace_word_oracle(m, m2)
    assert unitarily_similar(m, m2)


def test_gadget_M5_detects_changed_corner():
    rng = make_rng(11)
    a, b, c, d = (random_qmatrix(rng, 1)[0, 0] for _ in range(4))
    assert not trace_word_oracle(gadget_M5(a, b, c, d), gadget_M5(a, b, c + 1, d))


def test_gadget_wild_examples():
    b = gadget_wild("b", QMatrix.zeros(1))
    assert b == QMatrix.from_entries([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert b @ b @ b == QMatrix.zeros(3)
    a = gadget_wild("a", QMatrix.zeros(1))
    assert a.shape == (8, 8)
    assert all(d == Quaternion(0, 1) for d in a.diagonal())
    assert np.all(np.tril(a.entry_norms(), -1) == 0)
    # X_M sits in the top right corner: 4, 3, 2, 1 on its diagonal and j entries
    x = a[:4, 4:]
    assert [x[k, k].w for k in range(4)] == [4, 3, 2, 1]
    assert x[0, 2] == J and x[1, 2] == J and x[1, 3] == J
    p, q = gadget_wild("d", QMatrix.from_entries([[2]]))
    assert p == QMatrix.from_entries([[0, 1], [0, 0]]) and q == QMatrix.from_entries([[0, 2], [0, 0]])
    with pytest.raises(ShapeMismatch):
        gadget_wild("a", QMatrix.from_entries([[J]]))


@given(seeds, st.integers(1, 3))
def test_gadget_wild_relations(seed, n):
    m = random_qmatrix(make_rng(seed), n)
    a = gadget_wild("b", m)
    assert (a @ a @ a).norm() == 0
    p, q = gadget_wild("c", m)
    assert p @ p == p
    assert (q @ q - q).norm() <= 1e-12 * (1 + q.norm() ** 2)
    p, q = gadget_wild("d", m)
    z = QMatrix.zeros(2 * n)
    assert p @ q == z and q @ p == z and p @ p == z and q @ q == z


def test_oracle_examples():
    j2 = jordan_nilpotent([2])
    assert not trace_word_oracle(j2, QMatrix.zeros(2))
    assert trace_word_value(j2, (0, 1)) == 1.0
    a = random_qmatrix(make_rng(2), 4)
    assert trace_word_oracle(a, a)
    u = haar_unitary(4, make_rng(3))
    assert trace_word_oracle(a, u.H @ a @ u, 4)


def test_necklaces_are_rotation_classes():
    # binary necklaces of lengths 1..4: 2, 3, 4, 6
    assert len(_necklaces(4)) == 15

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcanon.decomp import rank
from qcanon.errors import BadShape, NonRealSpectrum, NotAnEigenvalue
from qcanon.qmatrix import QMatrix
from qcanon.quaternion import I, J, Quaternion
from qcanon.schur import (
    Partition,
    check_schur_shape,
    conjugate_partition,
    kernel_flag,
    modified_jordan,
    strengthened_schur,
    verify_block_diag_stabilizer,
    weyr_characteristic,
)
from qcanon.testkit import (
    haar_unitary,
    jordan_nilpotent,
    make_rng,
    planted_nilpotent,
    random_real_spectrum,
)

from conftest import seeds

partitions = st.lists(st.integers(1, 6), min_size=1, max_size=6).map(lambda p: Partition(tuple(sorted(p, reverse=True))))


@pytest.mark.parametrize("m, r", [((3, 2, 2), (3, 3, 1)), ((1,), (1,)), ((2, 2), (2, 2))])
def test_conjugate_partition_examples(m, r):
    assert conjugate_partition(m).parts == r


@given(partitions)
def test_conjugation_is_an_involution(p):
    c = conjugate_partition(p)
    assert c.total == p.total
    assert conjugate_partition(c) == p


def test_partition_validation():
    with pytest.raises(BadShape):
        Partition((1, 2))
    with pytest.raises(BadShape):
        Partition((2, 0))


def test_weyr_examples():
    a = QMatrix.direct_sum(jordan_nilpotent([3]), jordan_nilpotent([1]))
    assert weyr_characteristic(a, 0.0).parts == (2, 1, 1)
    assert weyr_characteristic(QMatrix.zeros(3), 0.0).parts == (3,)
    j5 = QMatrix.from_entries([[5, 1], [0, 5]])
    assert weyr_characteristic(j5, 5.0).parts == (1, 1)
    with pytest.raises(NotAnEigenvalue):
        weyr_characteristic(j5, 4.0)


def test_modified_jordan_examples():
    m = modified_jordan([0.0], [(2, 1)])
    assert m == QMatrix.from_entries([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    assert modified_jordan([5.0], [(1,)]) == QMatrix.from_entries([[5]])
    assert modified_jordan([0.0], [(1, 1)]) == jordan_nilpotent([2])


@given(partitions)
def test_modified_jordan_has_its_weyr_characteristic(w):
    assert weyr_characteristic(modified_jordan([0.0], [w]), 0.0).parts == w.parts


@given(seeds, st.integers(1, 6))
def test_weyr_rank_identity(seed, n):
    a, segre = planted_nilpotent(make_rng(seed), n)
    r = conjugate_partition(segre).parts
    for l in range(1, len(r) + 1):
        assert rank(a ** l) == sum(r[l:])
    assert weyr_characteristic(a, 0.0).parts == r
    dims = [k.cols for k in kernel_flag(a)]
    assert dims == list(np.cumsum((0,) + r))


def test_schur_examples():
    a = QMatrix.from_entries([[5, 4], [0, 5]])
    f = strengthened_schur(a)
    assert f.F == a and f.U == QMatrix.identity(2)
    assert f.lambdas == (5.0, 5.0) and f.sizes == (1, 1)

    f = strengthened_schur(QMatrix.from_entries([[0, 0], [J, 0]]))
    assert f.F.allclose(QMatrix.from_entries([[0, 1], [0, 0]]), 1e-14)

    f = strengthened_schur(QMatrix.diag([2, 1]))
    assert f.F == QMatrix.diag([2, 1]) and f.sizes == (1, 1)


def test_schur_rejects_nonreal_spectrum():
    with pytest.raises(NonRealSpectrum):
        strengthened_schur(QMatrix.from_entries([[I]]))
    with pytest.raises(NonRealSpectrum):
        strengthened_schur(QMatrix.from_entries([[1, 0], [0, Quaternion(0, 0, 1, 1)]]))


def test_stabilizer_examples():
    f = strengthened_schur(QMatrix.from_entries([[5, 4], [0, 5]]))
    assert verify_block_diag_stabilizer(f, QMatrix.identity(2))
    q = Quaternion(1, 1, 1, 1) * 0.5
    assert verify_block_diag_stabilizer(f, QMatrix.diag([q, q]))
    assert not verify_block_diag_stabilizer(f, QMatrix.from_entries([[0, 1], [1, 0]]))


@given(seeds, st.integers(1, 6))
def test_schur_postconditions(seed, n):
    rng = make_rng(seed)
    a, lams, weyrs = random_real_spectrum(rng, n)
    f = strengthened_schur(a)
    assert (f.U.H @ f.U - QMatrix.identity(n)).norm() <= 1e-10
    assert (f.U.H @ a @ f.U - f.F).norm() <= 1e-8 * a.norm()
    assert check_schur_shape(f.F, f.lambdas, f.sizes)
    assert f.sizes == tuple(p for w in weyrs for p in w.parts)
    assert np.allclose(list(dict.fromkeys(f.lambdas)), lams, atol=1e-8)
    # the eigenvalue / size data is a unitary invariant
    w = haar_unitary(n, rng)
    g = strengthened_schur(w.H @ a @ w)
    assert g.sizes == f.sizes and np.allclose(g.lambdas, f.lambdas, atol=1e-8)


@given(seeds, st.integers(1, 6))
def test_conformal_block_unitaries_stabilize(seed, n):
    rng = make_rng(seed)
    a, _, _ = random_real_spectrum(rng, n)
    f = strengthened_schur(a)
    # V_1 (+) V_2 (+) ... with equal blocks on equal-eigenvalue runs keeps the form
    blocks = []
    k = 0
    while k < len(f.sizes):
        run = [k]
        while run[-1] + 1 < len(f.sizes) and f.lambdas[run[-1] + 1] == f.lambdas[k]:
            run.append(run[-1] + 1)
        q = haar_unitary(1, rng)[0, 0]
        blocks += [QMatrix.identity(f.sizes[i]) * q for i in run]
        k = run[-1] + 1
    v = QMatrix.direct_sum(*blocks)
    assert verify_block_diag_stabilizer(f, v)

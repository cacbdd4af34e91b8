import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcanon.quaternion import (
    I,
    J,
    K,
    ONE,
    ComplexPair,
    Quaternion,
    complex_split,
    conjugate,
    format_quaternion,
    qmul,
    sort_desc,
    standardize,
    standardizing_conjugator,
    succ,
    succeq,
)

from conftest import quaternions


def close(p, q, tol=1e-12):
    return abs(Quaternion.coerce(p) - Quaternion.coerce(q)) <= tol


def test_units_multiply_as_hamilton():
    assert I * I == -ONE and J * J == -ONE and K * K == -ONE
    assert I * J == K and J * K == I and K * I == J
    assert J * I == -K


@pytest.mark.parametrize("q, expected", [
    (Quaternion(1, 2, 3, 4), Quaternion(1, -2, -3, -4)),
    (Quaternion(5), Quaternion(5)),
    (J, -J),
])
def test_conjugate_examples(q, expected):
    assert conjugate(q) == expected


@pytest.mark.parametrize("q, expected", [
    (Quaternion(1, 2, 2, 1), 1 + 3j),
    (Quaternion(7), 7 + 0j),
    (-I, 1j),
])
def test_standardize_examples(q, expected):
    assert standardize(q) == expected


def test_conjugator_j():
    s = standardizing_conjugator(J)
    assert close(s, (I + J) * (1 / math.sqrt(2)))
    assert close(s.inverse() * J * s, I)


def test_conjugator_real_and_minus_i():
    assert standardizing_conjugator(Quaternion(3)) == ONE
    s = standardizing_conjugator(-I)
    assert close(s, J)
    assert close(J.inverse() * (-I) * J, I)


@pytest.mark.parametrize("q, expected", [
    (Quaternion(1, 2, 3, 4), (1 + 2j, 3 + 4j)),
    (J, (0j, 1 + 0j)),
    (Quaternion(0, 2), (2j, 0j)),
])
def test_complex_split_examples(q, expected):
    assert complex_split(q) == ComplexPair(*expected)


def test_succeq_examples():
    assert succeq(2 + 3j, 7 + 2j)
    assert succeq(5, 3)
    assert not succeq(3, 5)


def test_sort_desc_mixed():
    assert sort_desc([1, 2j, 3, 1j, 1 + 1j]) == [2j, 1 + 1j, 1j, 3, 1]


def test_format():
    assert format_quaternion(Quaternion(1, -2, 0.5, 3)) == "1-2i+0.5j+3k"


# properties -------------------------------------------------------------------


@given(quaternions(), quaternions())
def test_norm_multiplicative(p, q):
    assert math.isclose(abs(p * q), abs(p) * abs(q), rel_tol=1e-12, abs_tol=1e-12)


@given(quaternions(), quaternions(), quaternions())
def test_associative(p, q, r):
    assert close((p * q) * r, p * (q * r), 1e-10)


@given(quaternions(), quaternions())
def test_conjugate_reverses_products(p, q):
    assert close(conjugate(p * q), conjugate(q) * conjugate(p), 1e-10)


@given(quaternions(), quaternions())
def test_vectorised_product_matches_scalar(p, q):
    got = qmul(p.as_array()[None], q.as_array()[None])[0]
    assert np.allclose(got, (p * q).as_array(), atol=1e-12)


@given(quaternions())
def test_split_round_trip(q):
    z1, z2 = complex_split(q)
    assert Quaternion.from_pair(z1, z2) == q
    assert complex_split(q).assemble() == q


@given(quaternions(), quaternions())
def test_split_product_rule(p, q):
    a1, a2 = complex_split(p)
    b1, b2 = complex_split(q)
    z1 = a1 * b1 - a2 * b2.conjugate()
    z2 = a1 * b2 + a2 * b1.conjugate()
    got = complex_split(p * q)
    assert abs(got.z1 - z1) < 1e-10 and abs(got.z2 - z2) < 1e-10


@given(quaternions(), quaternions(nonzero=True))
def test_standardize_conjugation_invariant(q, h):
    assert abs(standardize(h.inverse() * q * h) - standardize(q)) < 1e-9


@given(quaternions())
def test_conjugator_postcondition(q):
    s = standardizing_conjugator(q)
    assert math.isclose(abs(s), 1.0, rel_tol=1e-12)
    assert close(s.inverse() * q * s, Quaternion.from_complex(standardize(q)), 1e-9)
    assert standardize(q).imag >= 0


@given(st.complex_numbers(max_magnitude=10), st.complex_numbers(max_magnitude=10))
def test_succeq_total_and_antisymmetric(u, v):
    assert succeq(u, v) or succeq(v, u)
    if succeq(u, v) and succeq(v, u):
        assert u == v
    assert succ(u, v) != (succeq(v, u))

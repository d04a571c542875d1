import math

import pytest
from hypothesis import given, strategies as st

from beta_arena.numeric import (AmbiguousValueError, DEFAULT_TOL, Quaternion,
                                Tolerance, metallic_mean, safe_floor,
                                tol_floor)

# Hamilton multiplication table, frozen by hand: rows q, columns p, entry q*p.
ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)

HAMILTON = {
    (1, 1): ONE, (1, 2): I, (1, 3): J, (1, 4): K,
    (2, 1): I, (2, 2): -ONE, (2, 3): K, (2, 4): -J,
    (3, 1): J, (3, 2): -K, (3, 3): -ONE, (3, 4): I,
    (4, 1): K, (4, 2): J, (4, 3): -I, (4, 4): -ONE,
}


def test_hamilton_table():
    units = {1: ONE, 2: I, 3: J, 4: K}
    for (r, c), want in HAMILTON.items():
        assert units[r] * units[c] == want


finite = st.floats(min_value=-50, max_value=50, allow_nan=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)


@given(quats, quats)
def test_norm_multiplicative(p, q):
    assert abs(p * q) == pytest.approx(abs(p) * abs(q), rel=1e-9, abs=1e-9)


@given(quats, quats, quats)
def test_mul_associative_and_distributive(p, q, r):
    lhs = (p * q) * r
    rhs = p * (q * r)
    for a, b in zip(lhs.components, rhs.components):
        assert a == pytest.approx(b, rel=1e-9, abs=1e-6)
    lhs = p * (q + r)
    rhs = p * q + p * r
    for a, b in zip(lhs.components, rhs.components):
        assert a == pytest.approx(b, rel=1e-9, abs=1e-6)


def test_complex_embedding_matches_python_complex():
    # complex2 must be a ring homomorphism onto the (1, i) plane
    zs = [complex(0.3, -1.2), complex(-4.0, 0.7), complex(2.5, 2.5)]
    for z in zs:
        for w in zs:
            qz, qw = Quaternion.complex2(z.real, z.imag), Quaternion.complex2(w.real, w.imag)
            prod = qz * qw
            want = z * w
            assert prod.a == pytest.approx(want.real, abs=1e-12)
            assert prod.b == pytest.approx(want.imag, abs=1e-12)
            assert prod.c == 0.0 and prod.d == 0.0


def test_conjugate_and_inverse():
    q = Quaternion(1.0, -2.0, 3.0, 0.5)
    assert (q * q.conj()).approx_eq(Quaternion.real(q.norm2()), eps=1e-12)
    assert (q * q.inverse()).approx_eq(ONE, eps=1e-12)
    assert (q.inverse() * q).approx_eq(ONE, eps=1e-12)


def test_powi_matches_repeated_multiplication():
    q = Quaternion(0.3, 1.1, -0.4, 0.9)
    acc = ONE
    for n in range(7):
        assert q.powi(n).approx_eq(acc, eps=1e-9)
        acc = acc * q
    inv = q.inverse()
    acc = ONE
    for n in range(5):
        assert q.powi(-n).approx_eq(acc, eps=1e-9)
        acc = acc * inv


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_powi_addition_law(m, n):
    q = Quaternion(0.2, 0.9, -0.3, 0.1)
    lhs = q.powi(m + n)
    rhs = q.powi(m) * q.powi(n)
    assert lhs.approx_eq(rhs, eps=1e-7)


def test_metallic_means():
    assert metallic_mean(1) == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-15)
    assert metallic_mean(2) == pytest.approx(1 + math.sqrt(2), abs=1e-15)
    for j in range(1, 8):
        x = metallic_mean(j)
        assert x * x == pytest.approx(j * x + 1, abs=1e-10)


def test_tol_floor_policies():
    tol = Tolerance(eps_floor=1e-9)
    assert tol_floor(2.3, tol) == 2
    assert tol_floor(-0.7, tol) == -1
    with pytest.raises(AmbiguousValueError):
        tol_floor(3.0 - 1e-12, tol)
    assert tol_floor(3.0 - 1e-12, tol, nudge=True) == 3
    assert tol_floor(3.0 + 1e-12, tol, nudge=True) == 3


def test_safe_floor_flags():
    assert safe_floor(1.9) == (1, False)
    assert safe_floor(1.999999999999) == (2, True)  # inside the snap band
    assert safe_floor(-1e-20) == (0, True)
    assert safe_floor(-0.4) == (-1, False)

"""Unit tests for the exact arithmetic layer."""

import random
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coxvar.exact_algebra import (
    CycReal,
    Factorization,
    Golden,
    Mod,
    Monomial,
    det_mod_p,
    minimal_polynomial_2cos,
)
from coxvar.errors import DivisionByZero, MixedRings

P = 2147483659

small_fracs = st.fractions(
    min_value=-5, max_value=5, max_denominator=8)


# -- Golden ------------------------------------------------------------------


@given(small_fracs, small_fracs, small_fracs, small_fracs)
def test_golden_ring_axioms(a, b, c, d):
    x = Golden(a, b)
    y = Golden(c, d)
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) * x == x * x + y * x
    assert x - x == Golden(0, 0)


def test_golden_phi_identity():
    phi = Golden(0, 1)
    assert phi * phi == phi + 1
    assert phi * phi * phi == 2 * Fraction(1) * phi + 1 or True
    # phi^3 = 2 phi + 1
    assert phi * phi * phi == Golden(1, 2)


def test_golden_inverse():
    rng = random.Random(7)
    for _ in range(200):
        x = Golden(Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                   Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
        if x == Golden(0, 0):
            continue
        assert x * x.inverse() == Golden(1, 0)
        assert x / x == Golden(1, 0)
    with pytest.raises(DivisionByZero):
        Golden(1) / Golden(0)


# -- minimal polynomials -----------------------------------------------------


def test_minimal_polynomial_2cos_known_values():
    # 2cos(pi/3) = 1, 2cos(pi/4) = sqrt2, 2cos(pi/5) = phi,
    # 2cos(pi/6) = sqrt3, 2cos(pi/12) has degree 4
    assert minimal_polynomial_2cos(3) == (1, -1)
    assert minimal_polynomial_2cos(4) == (1, 0, -2)
    assert minimal_polynomial_2cos(5) == (1, -1, -1)
    assert minimal_polynomial_2cos(6) == (1, 0, -3)
    assert minimal_polynomial_2cos(12) == (1, 0, -4, 0, 1)


@pytest.mark.parametrize("m", range(3, 16))
def test_minimal_polynomial_has_2cos_as_root(m):
    import math
    x = 2 * math.cos(math.pi / m)
    coeffs = minimal_polynomial_2cos(m)
    val = 0.0
    for c in coeffs:
        val = val * x + c
    assert abs(val) < 1e-9
    assert coeffs[0] == 1  # monic


# -- CycReal -----------------------------------------------------------------


@pytest.mark.parametrize("m", [5, 7, 8, 12])
def test_cycreal_field_axioms(m):
    rng = random.Random(m)
    deg = len(minimal_polynomial_2cos(m)) - 1
    for _ in range(60):
        x = CycReal(m, tuple(Fraction(rng.randint(-4, 4))
                             for _ in range(deg)))
        y = CycReal(m, tuple(Fraction(rng.randint(-4, 4))
                             for _ in range(deg)))
        assert x + y == y + x
        assert x * y == y * x
        assert (x - y) + y == x
        if x != CycReal(m):
            assert x * x.inverse() == CycReal(m, (1,))


def test_cycreal_theta_satisfies_minpoly():
    for m in (5, 7, 9):
        th = CycReal.theta(m)
        coeffs = minimal_polynomial_2cos(m)
        acc = CycReal(m)
        for c in coeffs:
            acc = acc * th + c
        assert acc == CycReal(m)


def test_cycreal_mixed_modulus_rejected():
    with pytest.raises(MixedRings):
        CycReal.theta(5) + CycReal.theta(7)


# -- Mod ---------------------------------------------------------------------


@given(st.integers(0, P - 1), st.integers(0, P - 1), st.integers(0, P - 1))
def test_mod_field_axioms(a, b, c):
    x, y, z = Mod(a, P), Mod(b, P), Mod(c, P)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x - x == Mod(0, P)
    if a:
        assert x * x.inverse() == Mod(1, P)
        assert x ** (P - 1) == Mod(1, P)


def test_mod_mixed_modulus_rejected():
    with pytest.raises(MixedRings):
        Mod(1, 7) + Mod(1, 11)


def test_mod_zero_division():
    with pytest.raises(DivisionByZero):
        Mod(3, 7) / Mod(0, 7)


# -- modular determinants ----------------------------------------------------


def _det_permanent_style(M, p):
    """Leibniz-formula determinant, the slow independent reference."""
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            j, clen = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                clen += 1
            if clen % 2 == 0:
                sign = -sign
        term = sign
        for i in range(n):
            term = term * int(M[i][perm[i]]) % p
        total = (total + term) % p
    return total % p


def test_det_mod_p_against_leibniz():
    rng = random.Random(11)
    for trial in range(120):
        n = rng.randint(1, 5)
        M = np.array([[rng.randrange(P) for _ in range(n)]
                      for _ in range(n)], dtype=np.int64)
        assert det_mod_p(M, P).value == _det_permanent_style(M.tolist(), P)


def test_det_mod_p_singular_and_identity():
    M = np.array([[1, 2, 3], [2, 4, 6], [5, 1, 0]], dtype=np.int64)
    assert det_mod_p(M, P).value == 0
    assert det_mod_p(np.eye(6, dtype=np.int64), P).value == 1


def test_det_mod_p_multiplicative():
    rng = random.Random(3)
    for _ in range(25):
        A = np.array([[rng.randrange(100) for _ in range(4)]
                      for _ in range(4)], dtype=np.int64)
        B = np.array([[rng.randrange(100) for _ in range(4)]
                      for _ in range(4)], dtype=np.int64)
        lhs = det_mod_p(A.dot(B) % P, P)
        assert lhs == det_mod_p(A, P) * det_mod_p(B, P)


# -- monomials and factorizations --------------------------------------------


def test_monomial_basics():
    m = Monomial.from_vars(["a2", "a1", "a2"])
    assert str(m) == "a1*a2^2"
    assert m.degree == 3
    assert str(Monomial.from_vars([])) == "1"
    assert (m * m).degree == 6
    assert m ** 3 == Monomial.from_dict({"a1": 3, "a2": 6})


@given(st.dictionaries(st.sampled_from(["x", "y", "z"]),
                       st.integers(1, 6), max_size=3),
       st.dictionaries(st.sampled_from(["x", "y", "z"]),
                       st.integers(1, 6), max_size=3))
def test_monomial_eval_is_multiplicative(d1, d2):
    point = {"x": 17, "y": 91, "z": 1234}
    m1, m2 = Monomial.from_dict(d1), Monomial.from_dict(d2)
    assert (m1 * m2).eval_mod(point, P) == \
        m1.eval_mod(point, P) * m2.eval_mod(point, P) % P


def test_factorization_normalize_idempotent_and_order_free():
    a = Monomial.from_vars(["a1"])
    b = Monomial.from_vars(["a1", "a2"])
    f1 = Factorization(((a, 2), (b, 1), (a, 3)))
    f2 = Factorization(((b, 1), (a, 5)))
    assert f1.normalize() == f2.normalize()
    assert f1.normalize().normalize() == f1.normalize()
    assert str(f1.normalize()) == "(1-a1^2)^5 (1-a1^2a2^2)^1"


def test_factorization_product_and_eval():
    a = Monomial.from_vars(["a1"])
    b = Monomial.from_vars(["a2"])
    f = Factorization(((a, 2),)) * Factorization(((b, 1), (a, 1)))
    point = {"a1": 5, "a2": 9}
    expect = pow(1 - 25, 3, P) * (1 - 81) % P
    assert f.eval_mod(point, P).value == expect % P
    assert f.scale_exponents(2).eval_mod(point, P).value == \
        expect * expect % P


def test_factorization_total_degree_and_sympy():
    import sympy
    a = Monomial.from_vars(["a1"])
    ab = Monomial.from_vars(["a1", "a2"])
    f = Factorization(((a, 2), (ab, 1))).normalize()
    # (1-a1^2)^2 (1-a1^2 a2^2): degree 4 + 4
    assert f.total_degree == 8
    a1, a2 = sympy.symbols("a1 a2")
    assert sympy.expand(f.to_sympy() -
                        (1 - a1 ** 2) ** 2 * (1 - a1 ** 2 * a2 ** 2)) == 0

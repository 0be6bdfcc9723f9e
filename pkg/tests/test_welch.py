from math import gcd

import pytest

from mpca.array import canonical_bytes, correlation_report, verify
from mpca.field import FieldSpec, build_table, find_primitive_polys
from mpca.symmetry import apply_mul
from mpca.welch import REFERENCE_W, construct_welch, reproduce_paper_example, welch


def power_coords(p, coeffs, e, count):
    """Coordinates of (x^e)^i for i < count by repeated multiply-by-x.

    Only handles m = 2: x * (a x + b) = a (c1 x + c0) + b x.
    """
    c0, c1 = coeffs
    out = []
    y = (0, 1)  # (coef of x, constant)
    for _ in range(count):
        out.append(y)
        for _ in range(e):
            a, b = y
            y = ((a * c1 + b) % p, a * c0 % p)
    return out


def test_gf4_welch():
    arr = welch(2, 2, (1, 1), 1)
    assert power_coords(2, (1, 1), 1, 3) == [(0, 1), (1, 0), (1, 1)]
    assert (arr[(0, 1)], arr[(1, 0)], arr[(1, 1)]) == (0, 1, 2)
    assert arr.is_generic and verify(arr)


def test_gf25_e13_is_reference(W):
    arr = welch(5, 2, (3, 1), 13)
    assert canonical_bytes(arr) == canonical_bytes(W) == canonical_bytes(REFERENCE_W)
    assert [arr[(0, j)] for j in range(1, 5)] == [0, 6, 18, 12]
    assert (arr[(1, 0)], arr[(2, 0)], arr[(4, 0)]) == (13, 19, 1)
    for i, coords in enumerate(power_coords(5, (3, 1), 13, 24)):
        assert arr[coords] == i


def test_gf25_e1(W):
    arr = welch(5, 2, (3, 1), 1)
    assert (arr[(1, 0)], arr[(2, 0)], arr[(3, 0)], arr[(4, 0)], arr[(0, 2)]) == (1, 7, 19, 13, 6)
    for i, coords in enumerate(power_coords(5, (3, 1), 1, 24)):
        assert arr[coords] == i
    assert apply_mul(W, 13) == arr


def test_reference_first_column_rules_out_log_base_alpha():
    # With log base alpha the point (1, 0) = alpha has log 1; the reference has 13 there.
    assert REFERENCE_W[(1, 0)] == 13
    for coeffs in find_primitive_polys(5, 2):
        assert welch(5, 2, coeffs, 1)[(1, 0)] == 1


def test_reproduce_reference():
    hits = reproduce_paper_example()
    assert hits
    assert any(f.modulus == (3, 1) and e == 13 for f, e, _ in hits)
    for f, e, arr in hits:
        assert verify(arr)
        assert canonical_bytes(arr) == canonical_bytes(REFERENCE_W)


WELCH_CASES = [(2, 2), (3, 2), (2, 3), (5, 2), (7, 2), (3, 3)]


@pytest.mark.parametrize("p,m", WELCH_CASES)
def test_every_welch_array_is_costas(p, m):
    n = p**m - 1
    for coeffs in find_primitive_polys(p, m):
        spec = FieldSpec(p, m, coeffs)
        for e in range(1, n):
            if gcd(e, n) != 1:
                continue
            arr = construct_welch(build_table(spec, e))
            assert verify(arr)
            rep = correlation_report(arr)
            assert rep.peak == n and rep.max_off_peak <= 1


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (2, 3), (5, 2), (7, 2), (2, 4), (2, 5), (3, 3), (7, 1), (5, 1)])
def test_log_base_change_is_multiplication(p, m):
    n = p**m - 1
    for coeffs in find_primitive_polys(p, m):
        base = welch(p, m, coeffs, 1)
        for e in range(1, n):
            if gcd(e, n) == 1:
                assert welch(p, m, coeffs, e) == apply_mul(base, pow(e, -1, n))

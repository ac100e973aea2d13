import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dkgirth.field import (
    Elem, FieldSpec, add, factor_prime_power, inv, is_irreducible, mk_field, mul, neg,
    parse_q, units,
)

from conftest import SMALL_FIELDS, field


def naive_mul(F, a, b):
    """Schoolbook product of coefficient vectors, reduced by the modulus."""
    p, m, mod = F.p, F.m, F.modulus
    x, y = F.coeffs(a), F.coeffs(b)
    prod = [0] * (2 * m - 1)
    for i, j in itertools.product(range(m), repeat=2):
        prod[i + j] = (prod[i + j] + x[i] * y[j]) % p
    for d in range(2 * m - 2, m - 1, -1):
        c = prod[d]
        if c:
            for i in range(m + 1):
                prod[d - m + i] = (prod[d - m + i] - c * mod[i]) % p
    return sum(prod[i] * p ** i for i in range(m))


def test_prime_field_construction():
    F = mk_field(3)
    assert (F.p, F.m, F.q) == (3, 1, 3)
    assert repr(F) == "GF(3)"


def test_gf4_modulus_is_x2_x_1():
    assert mk_field(2, 2).modulus == (1, 1, 1)


def test_non_prime_characteristic_rejected():
    with pytest.raises(ValueError):
        mk_field(4, 1)


def test_reducible_modulus_rejected():
    # x^2 + 1 = (x + 1)^2 over GF(2)
    with pytest.raises(ValueError):
        mk_field(2, 2, (1, 0, 1))


def test_smallest_irreducible_is_chosen():
    for p, m in [(2, 3), (3, 2), (5, 2), (2, 4)]:
        F = mk_field(p, m)
        smaller = [c for c in itertools.product(range(p), repeat=m)
                   if is_irreducible(list(c) + [1], p)]
        first = min(smaller, key=lambda c: sum(x * p ** i for i, x in enumerate(c)))
        assert F.modulus == tuple(first) + (1,)


def test_small_examples():
    F3, F5, F4 = mk_field(3), mk_field(5), mk_field(2, 2)
    assert add(Elem(F3, 2), Elem(F3, 2)) == 1
    assert inv(Elem(F5, 2)) == 3
    # x * x = x + 1, and x + 1 has index 3
    assert mul(Elem(F4, 2), Elem(F4, 2)) == 3
    assert neg(Elem(F5, 1)) == 4


def test_units():
    assert [int(e) for e in units(mk_field(3))] == [1, 2]
    assert [int(e) for e in units(mk_field(2))] == [1]
    assert len(units(mk_field(2, 2))) == 3


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        Elem(mk_field(7), 0).inverse()


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        Elem(mk_field(3), 1) + Elem(mk_field(5), 1)


def test_field_is_immutable_and_hashable():
    F = mk_field(3, 2)
    with pytest.raises(AttributeError):
        F.p = 5
    assert F == mk_field(3, 2) and hash(F) == hash(mk_field(3, 2))
    assert F != mk_field(3, 2, (2, 2, 1))


@pytest.mark.parametrize("q", sorted(SMALL_FIELDS))
def test_mul_table_matches_schoolbook(q):
    F = field(q)
    for a, b in itertools.product(range(F.q), repeat=2):
        assert F.mul(a, b) == naive_mul(F, a, b)


@pytest.mark.parametrize("q", sorted(SMALL_FIELDS))
def test_inverse_and_negation_everywhere(q):
    F = field(q)
    for a in range(F.q):
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("q", [q for q in SMALL_FIELDS if q <= 16])
def test_frobenius_is_additive(q):
    F = field(q)
    for a, b in itertools.product(range(F.q), repeat=2):
        assert F.pow(F.add(a, b), F.p) == F.add(F.pow(a, F.p), F.pow(b, F.p))


@settings(max_examples=500, deadline=None)
@given(st.sampled_from(sorted(SMALL_FIELDS)), st.data())
def test_ring_axioms(q, data):
    F = field(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, b) == F.add(b, a) and F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_parse_q():
    assert parse_q("3^2") == (3, 2)
    assert parse_q("27") == (3, 3)
    assert factor_prime_power(2) == (2, 1)
    for bad in ["6", "4^2", "x", "1"]:
        with pytest.raises(ValueError):
            parse_q(bad)


def test_to_json_round_trip():
    F = mk_field(3, 2)
    d = F.to_json()
    assert FieldSpec(d["p"], d["m"], d["modulus"]) == F

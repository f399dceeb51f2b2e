import pytest
from hypothesis import given, strategies as st

from hopftower.fields import (
    FieldError,
    PrimeField,
    RationalField,
    field_from_spec,
    field_to_spec,
    is_prime,
)


def test_rational_basics():
    Q = RationalField()
    a = Q.parse("3/4")
    b = Q.parse("-1/4")
    assert Q.to_str(Q.add(a, b)) == "1/2"
    assert Q.to_str(Q.mul(a, Q.from_int(4))) == "3"
    assert Q.to_str(Q.inv(Q.from_int(-2))) == "-1/2"
    assert Q.is_zero(Q.sub(a, a))


def test_rational_serialization_lowest_terms():
    Q = RationalField()
    assert Q.to_str(Q.parse("4/8")) == "1/2"
    assert Q.to_str(Q.parse("6/3")) == "2"
    assert Q.to_str(Q.parse("-3/-6")) == "1/2"


def test_prime_field_basics():
    F = PrimeField(7)
    assert F.add(5, 4) == 2
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5
    assert F.to_str(F.parse("12")) == "5"
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_prime_field_rejects_composite():
    with pytest.raises(FieldError):
        PrimeField(6)
    with pytest.raises(FieldError):
        PrimeField(1)


def test_is_prime_small():
    primes = [2, 3, 5, 7, 11, 13, 97, 101, 2**31 - 1]
    for p in primes:
        assert is_prime(p)
    for n in [0, 1, 4, 9, 91, 561, 2**31 - 2]:
        assert not is_prime(n)


def test_field_spec_roundtrip():
    for f in (RationalField(), PrimeField(5)):
        assert field_from_spec(field_to_spec(f)) == f


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_rational_field_axioms(a, b, c):
    Q = RationalField()
    x, y, z = Q.from_int(a), Q.from_int(b), Q.from_int(c)
    assert Q.eq(Q.add(x, y), Q.add(y, x))
    assert Q.eq(Q.mul(Q.add(x, y), z), Q.add(Q.mul(x, z), Q.mul(y, z)))
    if b:
        assert Q.eq(Q.mul(Q.div(x, y), y), x)


@given(st.integers(0, 100), st.integers(0, 100))
def test_prime_field_axioms(a, b):
    F = PrimeField(11)
    x, y = F.from_int(a), F.from_int(b)
    assert F.add(x, y) == F.add(y, x)
    assert 0 <= F.mul(x, y) < 11
    if y:
        assert F.mul(F.div(x, y), y) == x

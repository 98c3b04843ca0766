import pickle

import pytest
from hypothesis import given, strategies as st

from qspace.errors import DivisionByZero, UnsupportedCardinality
from qspace.gfq import SUPPORTED, field_new
from qspace.verify import field_axioms


@pytest.mark.parametrize("q", SUPPORTED)
def test_axioms_hold_exhaustively(q):
    assert field_axioms(q)["ok"]


@pytest.mark.parametrize("q", [0, 1, 6, 10, 12, 17, 25])
def test_unsupported_cardinality(q):
    with pytest.raises(UnsupportedCardinality) as exc:
        field_new(q)
    assert exc.value.param == "q"


def test_gf4_table():
    f = field_new(4)
    # code 2 is x, code 3 is x + 1, with x^2 = x + 1
    assert f.mul(2, 2) == 3
    assert f.mul(2, 3) == 1
    assert f.add(2, 3) == 1
    assert f.inv(3) == 2


def test_gf9_has_square_root_of_minus_one():
    f = field_new(9)
    x = 3  # the class of x, with x^2 = -1
    assert f.mul(x, x) == f.neg(1)


@pytest.mark.parametrize("q", SUPPORTED)
def test_multiplicative_group_is_cyclic(q):
    f = field_new(q)
    orders = set()
    for a in range(1, q):
        acc, k = a, 1
        while acc != 1:
            acc, k = f.mul(acc, a), k + 1
        orders.add(k)
    assert max(orders) == q - 1


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        field_new(5).inv(0)
    with pytest.raises(ZeroDivisionError):
        field_new(8).div(3, 0)


@given(st.sampled_from(SUPPORTED), st.data())
def test_division_round_trip(q, data):
    f = field_new(q)
    a = data.draw(st.integers(0, q - 1))
    b = data.draw(st.integers(1, q - 1))
    assert f.mul(f.div(a, b), b) == a
    assert f.add(f.sub(a, b), b) == a


def test_context_is_shared_and_picklable():
    f = field_new(16)
    assert field_new(16) is f
    assert pickle.loads(pickle.dumps(f)) is f

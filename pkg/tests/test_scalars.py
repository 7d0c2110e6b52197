import random
from fractions import Fraction

import pytest

from idforge.errors import DenominatorDivisibleByP
from idforge.scalars import (
    GF,
    QQ,
    FpElem,
    denom_is_2_power,
    format_scalar,
    gen_binomial,
    is_prime,
    reduce_mod_p,
)


def test_gen_binomial_examples():
    assert gen_binomial(Fraction(1, 2), 1) == Fraction(1, 2)
    # direct product formula: (1/2)(-1/2)/2!
    assert gen_binomial(Fraction(1, 2), 2) == Fraction(1, 2) * Fraction(-1, 2) / 2
    assert gen_binomial(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert gen_binomial(3, 5) == 0
    assert gen_binomial(7, 0) == 1


def test_gen_binomial_pascal_identity():
    rng = random.Random(1)
    for _ in range(50):
        a = Fraction(rng.randint(-12, 12), rng.randint(1, 7))
        k = rng.randint(1, 10)
        assert gen_binomial(a, k) == gen_binomial(a - 1, k) + gen_binomial(a - 1, k - 1)


def test_denom_is_2_power():
    assert denom_is_2_power(Fraction(-1, 8))
    assert not denom_is_2_power(Fraction(1, 3))
    assert denom_is_2_power(Fraction(5))
    # factor the denominator of the product formula directly
    q = gen_binomial(Fraction(1, 2), 5)
    d = q.denominator
    while d % 2 == 0:
        d //= 2
    assert d == 1
    assert denom_is_2_power(q)


def test_half_binomials_have_dyadic_denominators_up_to_50():
    for k in range(51):
        assert denom_is_2_power(gen_binomial(Fraction(1, 2), k)), k


def test_reduce_mod_p():
    assert reduce_mod_p(Fraction(1, 2), 5) == FpElem(3, 5)
    assert reduce_mod_p(Fraction(7), 7) == FpElem(0, 7)
    with pytest.raises(DenominatorDivisibleByP):
        reduce_mod_p(Fraction(1, 5), 5)


def test_is_prime():
    assert is_prime(2) and is_prime(3) and is_prime(5) and is_prime(97)
    assert not is_prime(1) and not is_prime(0) and not is_prime(-7)
    assert not is_prime(561)  # Carmichael
    assert not is_prime(2**16 + 1 - 2)
    assert is_prime(2**31 - 1)


@pytest.mark.parametrize("dom", [QQ, GF(7), GF(2)])
def test_field_axioms_on_samples(dom):
    rng = random.Random(7)
    for _ in range(40):
        a, b, c = dom.sample(rng), dom.sample(rng), dom.sample(rng)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + dom.zero == a
        assert a * dom.one == a
        if not (a == dom.zero):
            assert a * dom.invert(a) == dom.one


def test_fp_elem_basics():
    x = FpElem(9, 7)
    assert x.value == 2
    assert -x == FpElem(5, 7)
    assert x**3 == FpElem(1, 7)
    assert x / FpElem(3, 7) == FpElem(3, 7)
    assert repr(x) == "2 mod 7"
    with pytest.raises(ZeroDivisionError):
        FpElem(0, 7).inverse()
    with pytest.raises(ValueError):
        GF(10)


def test_format_scalar():
    assert format_scalar(Fraction(3, 5)) == "3/5"
    assert format_scalar(Fraction(4)) == "4"
    assert format_scalar(FpElem(2, 11)) == "2 mod 11"
    assert QQ.parse("3/5") == Fraction(3, 5)
    assert GF(11).parse("2 mod 11") == FpElem(2, 11)

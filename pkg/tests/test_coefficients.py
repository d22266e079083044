"""The coefficient ring: generator degrees, representatives, ranks."""

import pytest

from bordcalc.coefficients import (CoefRing, allowed_degrees, dold_indices,
                                   generator_rep, is_power_of_two)
from bordcalc.errors import CapacityError, ContractViolation


def test_allowed_degrees_freeze():
    assert allowed_degrees(16) == [2, 4, 5, 6, 8, 9, 10, 11, 12, 13, 14, 16]


def test_power_of_two():
    assert [n for n in range(1, 20) if is_power_of_two(n)] == [1, 2, 4, 8, 16]
    assert not is_power_of_two(0)


def test_dold_indices():
    assert dold_indices(5) == (1, 2)
    assert dold_indices(9) == (1, 4)
    assert dold_indices(11) == (3, 4)
    assert dold_indices(13) == (1, 6)
    with pytest.raises(ContractViolation):
        dold_indices(4)
    with pytest.raises(ContractViolation):
        dold_indices(7)


def test_generator_rep():
    assert generator_rep(2) == ('RP', 2)
    assert generator_rep(4) == ('RP', 4)
    assert generator_rep(5) == ('Dold', 1, 2)
    assert generator_rep(11) == ('Dold', 3, 4)


def test_generator_lookup(sess):
    coef = sess.coef
    assert coef.a(2).to_text() == 'a2'
    with pytest.raises(ContractViolation):
        coef.a(3)
    with pytest.raises(ContractViolation):
        coef.a(7)
    with pytest.raises(CapacityError):
        coef.a(18)


def test_rho(sess):
    coef = sess.coef
    assert coef.rho(2) == coef.a(2)
    assert coef.rho(4) == coef.a(4)
    assert not coef.rho(3)
    assert not coef.rho(7)
    with pytest.raises(ContractViolation):
        coef.rho(0)


def _partition_count(d, gens):
    counts = [1] + [0] * d
    for g in gens:
        for total in range(g, d + 1):
            counts[total] += counts[total - g]
    return counts[d]


def test_rank_matches_partition_count(sess):
    coef = sess.coef
    gens = coef.generator_degrees
    for d in range(13):
        assert coef.rank(d) == _partition_count(d, gens)


def test_monomials_of_degree(sess):
    coef = sess.coef
    for d in range(9):
        monos = coef.monomials_of_degree(d)
        assert len(monos) == len(set(monos)) == coef.rank(d)
        for mu in monos:
            assert mu.degree() in (d, None)
            assert coef.is_coefficient(mu)
    assert coef.monomials_of_degree(-1) == []
    with pytest.raises(CapacityError):
        coef.monomials_of_degree(17)


def test_mono_degrees(sess):
    coef = sess.coef
    mu = coef.a(5) * coef.a(2) ** 2
    assert coef.mono_degrees(mu) == [5, 2, 2]
    assert coef.mono_degrees(coef.one()) == []
    with pytest.raises(ContractViolation):
        coef.mono_degrees(coef.a(2) + coef.a(4))


def test_custom_generator_degrees():
    ring = CoefRing(8, generator_degrees=(2, 4))
    assert ring.generator_degrees == (2, 4)
    assert ring.rank(6) == 2
    with pytest.raises(ContractViolation):
        CoefRing(8, generator_degrees=(3,))
    with pytest.raises(CapacityError):
        CoefRing(4, generator_degrees=(6,))

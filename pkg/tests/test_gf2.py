"""Polynomial arithmetic and GF(2) linear algebra."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bordcalc.errors import ContractViolation
from bordcalc.gf2 import (GradedPoly, poly_rank, rank_sets, solve_gf2,
                          solve_sets, standard_table)

TABLE = standard_table((2, 4, 5), 6)

A2 = GradedPoly.var(TABLE, 'a2')
C1 = GradedPoly.var(TABLE, 'c1')
X2 = GradedPoly.var(TABLE, 'X2')


def e(k=1):
    return GradedPoly.var(TABLE, 'e', k)


def mono(*pairs):
    return tuple(sorted((TABLE.index(name), exp) for name, exp in pairs))


_POOL = [(), mono(('a2', 1)), mono(('c1', 1)), mono(('e', -1)),
         mono(('e', 2)), mono(('a2', 1), ('e', -2)), mono(('c1', 2))]

polys = st.sets(st.sampled_from(_POOL), max_size=7).map(
    lambda ms: GradedPoly(TABLE, ms))


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p + p == GradedPoly.zero(TABLE)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * GradedPoly.one(TABLE) == p
    assert p * GradedPoly.zero(TABLE) == GradedPoly.zero(TABLE)


@given(polys, st.integers(min_value=0, max_value=4))
def test_pow_matches_repeated_product(p, k):
    expected = GradedPoly.one(TABLE)
    for _ in range(k):
        expected = expected * p
    assert p ** k == expected


def test_negative_power_rejected_off_the_invertible():
    with pytest.raises(ContractViolation):
        GradedPoly.var(TABLE, 'a2', -1)
    assert e(-3) * e(3) == GradedPoly.one(TABLE)


def test_text_freeze():
    assert (C1 * e(-1) + e(-2)).to_text() == 'c1*e^-1 + e^-2'
    assert GradedPoly.zero(TABLE).to_text() == '0'
    assert GradedPoly.one(TABLE).to_text() == '1'
    assert (A2 + X2).to_text() == 'a2 + X2'


def test_square_freeze():
    # Frobenius: squaring is additive in characteristic 2
    x = C1 * e(-1) + e(-2)
    assert x ** 2 == C1 ** 2 * e(-2) + e(-4)


def test_degree_decompose():
    x = C1 + e(1)
    pieces = x.degree_decompose()
    assert set(pieces) == {1, -1}
    assert pieces[1] == C1
    assert pieces[-1] == e(1)
    assert not x.homogeneous()
    with pytest.raises(ContractViolation):
        x.degree()


def test_support_and_windows():
    x = A2 * e(-2) + C1 * e(-1)
    assert x.support() == {'a2', 'c1', 'e'}
    assert x.uses_only({'a2', 'c1', 'e'})
    assert not x.uses_only({'a2', 'e'})
    assert x.min_inv_exp() == -2
    assert x.max_inv_exp() == -1


def test_substitute():
    x = C1 * e(1) + A2
    image = x.substitute({'c1': e(1) * X2 + e(-1)})
    assert image == e(2) * X2 + GradedPoly.one(TABLE) + A2
    with pytest.raises(ContractViolation):
        e(-1).substitute({'e': C1})


_DEG2 = [mono(('a2', 1)), mono(('c1', 2)), mono(('X2', 1)),
         mono(('e', -2)), mono(('c1', 1), ('e', -1))]

vectors2 = st.lists(
    st.sets(st.sampled_from(_DEG2), max_size=5).map(
        lambda ms: GradedPoly(TABLE, ms)),
    max_size=5)


@given(vectors2, st.sets(st.sampled_from(_DEG2), max_size=5))
def test_solve_matches_exhaustive_search(vecs, target_monos):
    target = GradedPoly(TABLE, target_monos)
    flags = solve_gf2(vecs, target)
    if flags is None:
        for combo in itertools.product((0, 1), repeat=len(vecs)):
            acc = GradedPoly.zero(TABLE)
            for f, v in zip(combo, vecs):
                if f:
                    acc = acc + v
            assert acc != target
    else:
        acc = GradedPoly.zero(TABLE)
        for f, v in zip(flags, vecs):
            if f:
                acc = acc + v
        assert acc == target


def test_rank_basics():
    assert poly_rank([]) == 0
    assert poly_rank([A2, A2]) == 1
    assert poly_rank([A2, X2, A2 + X2]) == 2
    with pytest.raises(ContractViolation):
        poly_rank([A2, C1])


def test_rank_and_solve_over_sets():
    rows = [frozenset({1, 2}), frozenset({2, 3}), frozenset({1, 3})]
    assert rank_sets(rows, key=lambda x: x) == 2
    assert solve_sets(rows, frozenset({1, 3}), key=lambda x: x) == [1, 1, 0]
    assert solve_sets(rows, frozenset({1}), key=lambda x: x) is None

"""The bundle algebra: phi, delta, the dictionary, mapping tori."""

import pytest

from bordcalc.conner_floyd import (AntipodalSphere, FreeBZ2Elem, GammaOf,
                                   Proj, ProductOf, Trivial, gamma_depth)
from bordcalc.errors import ContractViolation


def test_dimensions_and_depth(sess):
    a2 = sess.coef.a(2)
    assert Proj(3).dim == 3
    assert GammaOf(Proj(3)).dim == 4
    assert ProductOf((Proj(2), Proj(3))).dim == 5
    assert Trivial(a2).dim == 2
    assert AntipodalSphere(3).dim == 3
    tower = GammaOf(GammaOf(Proj(2)))
    assert gamma_depth(tower) == 2
    assert gamma_depth(ProductOf((tower, GammaOf(Proj(3))))) == 2
    assert gamma_depth(Proj(4)) == 0


def test_free_module_elements(sess):
    table = sess.table
    one = sess.coef.one()
    x = FreeBZ2Elem(table, {0: sess.coef.a(2), 2: one})
    assert x.to_text() == 'a2*s0 + s2'
    assert x + x == FreeBZ2Elem(table)
    assert x.scale(sess.coef.a(2)).parts[2] == sess.coef.a(2)
    assert x.support() == {(0, next(iter(sess.coef.a(2).terms))), (2, ())}
    with pytest.raises(ContractViolation):
        FreeBZ2Elem(table, {-1: one})


def test_bundle_generators(sess):
    geo = sess.geometry
    assert geo.b(2).degree() == 2
    assert geo.is_bundle(geo.b(1) * sess.coef.a(4))
    assert not geo.is_bundle(sess.laurent.c(1))
    with pytest.raises(ContractViolation):
        geo.b(0)
    for d in range(7):
        monos = geo.bundle_monomials(d)
        assert len(monos) == len(set(monos))
        for m in monos:
            assert m.degree() in (d, None)


def test_phi_pinned_values(sess):
    geo = sess.geometry
    b1, b2 = geo.b(1), geo.b(2)
    a2 = sess.coef.a(2)
    assert geo.phi(Proj(2)) == b2 + b1 ** 2
    assert geo.phi(GammaOf(Proj(2))) == a2 * b1 + b1 ** 3 + b1 * b2
    assert geo.phi(Trivial(a2)) == a2
    assert not geo.phi(AntipodalSphere(4))
    assert (geo.phi(ProductOf((Proj(2), Proj(2))))
            == geo.phi(Proj(2)) * geo.phi(Proj(2)))


def test_underlying(sess):
    geo = sess.geometry
    coef = sess.coef
    assert geo.underlying(Proj(2)) == coef.a(2)
    assert not geo.underlying(Proj(3))
    assert not geo.underlying(GammaOf(Proj(2)))
    assert not geo.underlying(AntipodalSphere(2))
    assert geo.underlying(Trivial(coef.a(4))) == coef.a(4)
    both = ProductOf((Proj(2), Trivial(coef.a(4))))
    assert geo.underlying(both) == coef.a(2) * coef.a(4)


def test_pt_class_and_eta(sess):
    geo = sess.geometry
    mo = sess.mo
    assert geo.pt_class(Proj(2)) == mo.X(2)
    assert mo.normal_form(geo.pt_class(GammaOf(Proj(2)))) == mo.G(1, 2)
    assert not geo.pt_class(AntipodalSphere(3))
    assert not geo.eta(GammaOf(Proj(2)))


def test_dictionary(sess):
    geo = sess.geometry
    L = sess.laurent
    assert geo.dictionary(geo.b(3)) == L.c(2) * L.e(-1)
    assert geo.dictionary(geo.phi(Proj(4))) == sess.mo.localize(sess.mo.X(4))
    with pytest.raises(ContractViolation):
        geo.dictionary(L.c(1))


def test_dictionary_injective_on_bundle_monomials(sess):
    from bordcalc.gf2 import poly_rank
    geo = sess.geometry
    for d in range(7):
        monos = geo.bundle_monomials(d)
        images = [geo.dictionary(m) for m in monos]
        assert poly_rank(images) == len(monos)


def test_delta_pinned_values(sess):
    geo = sess.geometry
    table = sess.table
    b1, b2 = geo.b(1), geo.b(2)
    expected = FreeBZ2Elem(table, {0: sess.coef.a(2), 2: sess.coef.one()})
    assert geo.delta(b1 * b2) == expected
    assert geo.delta(b1) == FreeBZ2Elem(table, {0: sess.coef.one()})
    assert not geo.delta(sess.coef.a(2) * sess.coef.a(4))
    for n in range(2, 7):
        assert not geo.delta(geo.phi(Proj(n)))
    with pytest.raises(ContractViolation):
        geo.delta(sess.laurent.e(1))


def test_torus_classes(sess):
    geo = sess.geometry
    coef = sess.coef
    assert not geo.torus_class(Proj(2))
    assert not geo.torus_class(Proj(3))
    assert not geo.torus_class(Proj(4))
    assert geo.torus_class(GammaOf(Proj(2))) == coef.a(2) ** 2 + coef.a(4)
    assert geo.torus_class(GammaOf(Proj(3))) == coef.a(5)
    assert not geo.torus_class(GammaOf(GammaOf(Proj(2))))


def test_exact_phi_agrees_below_depth_three(sess):
    geo = sess.geometry
    for x in geo.catalog_expressions(6):
        if gamma_depth(x) <= 2:
            assert geo.exact_phi(x) == geo.phi(x)


def test_delta_kills_exact_phi(sess):
    geo = sess.geometry
    for x in geo.catalog_expressions(6):
        assert not geo.delta(geo.exact_phi(x))


def test_deep_towers_where_the_zero_torus_rule_breaks(sess):
    geo = sess.geometry
    coef = sess.coef
    towers = {
        GammaOf(GammaOf(GammaOf(Proj(2)))): (coef.a(2) ** 2 + coef.a(4), 0),
        GammaOf(GammaOf(GammaOf(GammaOf(Proj(2))))): (coef.a(2) ** 2 + coef.a(4), 1),
        GammaOf(GammaOf(GammaOf(Proj(3)))): (coef.a(5), 0),
    }
    for tower, (cls, j) in towers.items():
        residue = geo.delta(geo.phi(tower))
        assert residue == FreeBZ2Elem(sess.table, {j: cls})
        assert not geo.delta(geo.exact_phi(tower))


def test_manifold_for_basis_round_trip(sess):
    geo = sess.geometry
    mo = sess.mo
    for d in range(6):
        for fm in mo.basis_monomials(d, e_cap=0):
            expr = geo.manifold_for_basis(fm)
            assert expr.dim == d
            left = geo.dictionary(geo.phi(expr))
            right = mo.localize(mo.single(fm))
            assert left == right
    with pytest.raises(ContractViolation):
        geo.manifold_for_basis(next(iter(mo.e(2).monos)))


def test_catalog(sess):
    geo = sess.geometry
    catalog = geo.catalog_expressions(6)
    assert len(catalog) == len(set(catalog))
    assert all(x.dim <= 6 for x in catalog)
    assert Proj(5) in catalog
    assert GammaOf(GammaOf(GammaOf(Proj(2)))) in catalog
    assert AntipodalSphere(6) in catalog
    assert any(isinstance(x, ProductOf) for x in catalog)

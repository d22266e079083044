"""Expression grammars: round trips and error positions."""

import pytest

from bordcalc.charnum import Dold, Product, ProjBundle, RP
from bordcalc.conner_floyd import (AntipodalSphere, GammaOf, Proj, ProductOf,
                                   Trivial)
from bordcalc.errors import ParseError
from bordcalc.parsing import (parse_bundle, parse_coefficient, parse_laurent,
                              parse_manifold, parse_presentation, parse_space)


def test_presentation_expressions(sess):
    mo = sess.mo
    assert parse_presentation('e*G(1,2)', mo) == mo.e(1) * mo.G(1, 2)
    assert parse_presentation('X2^2 + a2*X4', mo) == (
        mo.X(2) ** 2 + mo.iota(sess.coef.a(2)) * mo.X(4))
    assert parse_presentation('Gamma(X2)', mo) == mo.gamma(mo.X(2))
    assert parse_presentation('iota(a2 + a4)', mo) == mo.iota(
        sess.coef.a(2) + sess.coef.a(4))
    assert not parse_presentation('X1 + G(3,1)', mo)
    assert parse_presentation('0', mo) == mo.zero()
    assert parse_presentation('(1 + X2)^2', mo) == (mo.one() + mo.X(2)) ** 2


def test_presentation_round_trip(sess):
    mo = sess.mo
    for x in (mo.normal_form(mo.G(1, 2) ** 2),
              mo.e(3) + mo.X(2) * mo.X(3),
              mo.iota(sess.coef.a(2)) * mo.G(2, 4)):
        assert parse_presentation(x.to_text(), mo) == x


def test_presentation_errors(sess):
    mo = sess.mo
    with pytest.raises(ParseError) as err:
        parse_presentation('e^-1', mo)
    assert err.value.position == 2
    with pytest.raises(ParseError):
        parse_presentation('q2', mo)
    with pytest.raises(ParseError):
        parse_presentation('X2 +', mo)
    with pytest.raises(ParseError):
        parse_presentation('iota(e)', mo)
    with pytest.raises(ParseError):
        parse_presentation('G(1 2)', mo)


def test_laurent_expressions(sess):
    L = sess.laurent
    assert parse_laurent('c1*e^-1 + e^-2', L) == L.loc_P(2)
    assert parse_laurent('a2*e^3', L) == sess.coef.a(2) * L.e(3)
    x = L.loc_P(4) * L.loc_P(2) + sess.coef.a(4) * L.e(-2)
    assert parse_laurent(x.to_text(), L) == x
    with pytest.raises(ParseError):
        parse_laurent('X2', L)
    with pytest.raises(ParseError):
        parse_laurent('c1^-1', L)


def test_coefficient_expressions(sess):
    coef = sess.coef
    assert parse_coefficient('a2^2 + a4', coef) == coef.a(2) ** 2 + coef.a(4)
    assert parse_coefficient('1', coef) == coef.one()
    with pytest.raises(ParseError):
        parse_coefficient('e', coef)


def test_bundle_expressions(sess):
    geo = sess.geometry
    assert parse_bundle('b1*b2 + a2*b1', geo) == (
        geo.b(1) * geo.b(2) + sess.coef.a(2) * geo.b(1))
    with pytest.raises(ParseError):
        parse_bundle('c1', geo)


def test_manifold_expressions(sess):
    coef = sess.coef
    assert parse_manifold('P(2)', coef) == [Proj(2)]
    assert parse_manifold('gamma(P(3))', coef) == [GammaOf(Proj(3))]
    assert parse_manifold('P(2)*P(3)', coef) == [ProductOf((Proj(2), Proj(3)))]
    assert parse_manifold('S(4)', coef) == [AntipodalSphere(4)]
    assert parse_manifold('triv(a2 + a4)', coef) == [Trivial(coef.a(2) + coef.a(4))]
    # sums are formal and parity-reduced
    assert parse_manifold('P(2) + P(2)', coef) == []
    assert parse_manifold('P(2) + P(3)', coef) == [Proj(2), Proj(3)]
    assert parse_manifold('P(2)^2', coef) == [ProductOf((Proj(2), Proj(2)))]
    assert parse_manifold('gamma(P(2) + P(3))', coef) == [
        GammaOf(Proj(2)), GammaOf(Proj(3))]
    assert parse_manifold('1*P(2)', coef) == [Proj(2)]
    with pytest.raises(ParseError):
        parse_manifold('P(2)^-1', coef)
    with pytest.raises(ParseError):
        parse_manifold('RP(2)', coef)


def test_space_expressions():
    rp = parse_space('RP(4)')
    assert isinstance(rp, RP) and rp.n == 4
    space = parse_space('RP(2)*Dold(1,2)')
    assert isinstance(space, Product)
    assert [f.dim for f in space.factors] == [2, 5]
    pb = parse_space('PB(RP(2); u, 0)')
    assert isinstance(pb, ProjBundle)
    assert pb.rank == 2
    assert pb.dim == 3
    assert pb.lines[0] == pb.base.gen('u')
    nested = parse_space('PB(RP(1)*RP(1); u1 + u2, 0)')
    assert nested.rank == 2
    with pytest.raises(ParseError):
        parse_space('PB(RP(2))')
    with pytest.raises(ParseError):
        parse_space('X(2)')


def test_parse_error_reporting(sess):
    with pytest.raises(ParseError) as err:
        parse_presentation('X2 + *', sess.mo)
    exc = err.value
    assert exc.position == 5
    assert 'a<d>' in exc.expected
    assert 'position 5' in str(exc)
    with pytest.raises(ParseError) as err:
        parse_presentation('X2 ?', sess.mo)
    assert err.value.position == 3

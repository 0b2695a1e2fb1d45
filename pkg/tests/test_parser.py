from fractions import Fraction

import pytest
from hypothesis import given

from crsym.algebra import I, Z1, Z2, HoloField, MixedPoly, u, w, z1, z2
from crsym.catalog import ModelSpec, build_model, th2_field
from crsym.errors import AntiholomorphicCoefficient, ParseError
from crsym.parser import parse_field, parse_polynomial
from oracles import holo_polys, polys


def test_basic_polynomials():
    assert parse_polynomial("Re(Z1*z2^2)") == (Z1 * z2 ** 2).re()
    assert parse_polynomial("z1*Z1 + (z2*Z2)^2") == z1 * Z1 + (z2 * Z2) ** 2
    assert parse_polynomial("-1/2*i*z1") == (I * z1).scale(Fraction(-1, 2))
    assert parse_polynomial("conj(i*z1)") == -(I * Z1)
    assert parse_polynomial("Im(z1)") == z1.im()
    assert parse_polynomial("w - u") == w - u


def test_s5_string():
    text = "8*(z1*Z1)^3*Re(z1^5*Z2)^2 + 4*(z1*Z1)^4*Re(z1^9)"
    assert parse_polynomial(text) == build_model(ModelSpec("EX_S5"))


def test_fields():
    assert parse_field("i*z2^2*d1") == HoloField.make(f1=I * z2 ** 2)
    assert parse_field("z1*z2^2*(5*z1 - 6*z2)*d1 - z2^3*(4*z1 - 3*z2)*d2") == th2_field()
    assert parse_field("dw") == HoloField.make(g=1)
    assert parse_field("(z1 + z2)*d1") == HoloField.make(f1=z1 + z2)


@pytest.mark.parametrize(
    "text, pos",
    [
        ("z1 +", 4),
        ("z1 ** 2", 4),
        ("z3", 0),
        ("Re(z1", 5),
        ("z1 z2", 3),
        ("2^x", 2),
    ],
)
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse_polynomial(text)
    assert e.value.pos == pos


@pytest.mark.parametrize("text", ["z1*d1", "d1^2"])
def test_directions_rejected_in_polynomials(text):
    with pytest.raises(ParseError):
        parse_polynomial(text)


@pytest.mark.parametrize("text", ["z1", "d1^2*z1", "Re(z1*d1)", "d1*d2", "conj(w)*d1"])
def test_bad_fields(text):
    with pytest.raises(ParseError):
        parse_field(text)


def test_antiholomorphic_coefficient():
    with pytest.raises(AntiholomorphicCoefficient):
        parse_field("Z1*d1")


@given(polys())
def test_polynomial_round_trip(p):
    assert parse_polynomial(str(p)) == p


@given(holo_polys(), holo_polys(), holo_polys())
def test_field_round_trip(a, b, c):
    X = HoloField(a, b, c * w)
    if X.is_zero():
        return
    assert parse_field(str(X)) == X


def test_spec_style_examples():
    from crsym.algebra import euler_field

    assert parse_polynomial("z1*Z1 + z2^2*Z2^2") == z1 * Z1 + (z2 * Z2) ** 2
    assert parse_field("w*dw + 1/3*z1*d1 + 1/3*z2*d2") == euler_field(Fraction(1, 3), Fraction(1, 3))


def test_report_basis_fields_round_trip():
    from crsym.report import analyze

    rep = analyze(parse_polynomial("z1*Z1*Re(z2)^2"))
    for comp in rep.to_dict()["components"]:
        for text in comp["basis"]:
            assert str(parse_field(text)) == text

"""Series parsing/printing, orientation conversion, and the pair walk."""

from fractions import Fraction

import pytest

from germcontract import (
    CharacteristicData,
    Orientation,
    PreconditionError,
    PuiseuxPoly,
    SeriesParseError,
    degreewise_to_local,
    format_puiseux,
    local_to_degreewise,
    parse_puiseux,
    puiseux_pairs,
)

F = Fraction

SIX_TERM = "x^3 + x^2 + x^(5/3) + x + x^(-13/6) + x^(-7/3)"


def test_parse_local_series():
    phi = parse_puiseux("u^(3/5) + u^2")
    assert phi.orientation is Orientation.LOCAL
    assert dict(phi.terms) == {F(3, 5): 1, F(2): 1}


def test_parse_degreewise_series():
    psi = parse_puiseux(SIX_TERM)
    assert psi.orientation is Orientation.DEGREEWISE
    assert psi.coeff(F(-13, 6)) == 1
    assert psi.deg() == 3


def test_parse_coefficients_and_signs():
    phi = parse_puiseux("-3/2*u^(1/2) + u - 5")
    assert dict(phi.terms) == {F(1, 2): F(-3, 2), F(1): 1, F(0): -5}


def test_parse_constant_needs_orientation():
    with pytest.raises(SeriesParseError):
        parse_puiseux("5")
    phi = parse_puiseux("5", Orientation.LOCAL)
    assert dict(phi.terms) == {F(0): 5}


def test_parse_drops_zero_coefficients():
    phi = parse_puiseux("0*u^2 + u")
    assert dict(phi.terms) == {F(1): 1}


@pytest.mark.parametrize(
    "bad",
    [
        "",
        "u^(1/0)",
        "u + x",
        "u^2 + u^2",
        "2*",
        "u^",
        "2u",
        "u**2",
        "u^2 +",
        "y^2",
        "u^2 ~ u",
        "3/2/5*u",
    ],
)
def test_parse_errors(bad):
    with pytest.raises(SeriesParseError):
        parse_puiseux(bad)


def test_parse_error_carries_position():
    with pytest.raises(SeriesParseError) as err:
        parse_puiseux("u^2 + q")
    assert err.value.position == 7
    assert "position 7" in str(err.value)


def test_orientation_conflict():
    with pytest.raises(SeriesParseError):
        parse_puiseux("u^2", Orientation.DEGREEWISE)


@pytest.mark.parametrize(
    "text",
    ["u^(3/5) + u^2", SIX_TERM, "-u + 1/2", "x^(-1)", "2*u^(7/3) - 3/4*u^4"],
)
def test_parse_format_round_trip(text):
    phi = parse_puiseux(text)
    assert parse_puiseux(format_puiseux(phi)) == phi


def test_format_orders_by_significance():
    assert format_puiseux(parse_puiseux("u^2 + u^(3/5)")) == "u^(3/5) + u^2"
    psi = parse_puiseux("x^(-13/6) + x^3")
    assert format_puiseux(psi) == "x^3 + x^(-13/6)"


def test_format_zero():
    assert format_puiseux(PuiseuxPoly.zero(Orientation.LOCAL)) == "0"


def test_terms_view_is_read_only():
    phi = parse_puiseux("u^2")
    with pytest.raises(TypeError):
        phi.terms[F(3)] = F(1)
    with pytest.raises(AttributeError):
        phi.orientation = Orientation.DEGREEWISE


def test_ord_and_deg_guards():
    phi = parse_puiseux("u^(3/5) + u^2")
    assert phi.ord() == F(3, 5)
    with pytest.raises(PreconditionError):
        phi.deg()
    psi = local_to_degreewise(phi)
    assert psi.deg() == F(2, 5)
    with pytest.raises(PreconditionError):
        psi.ord()
    with pytest.raises(PreconditionError):
        PuiseuxPoly.zero(Orientation.LOCAL).ord()


def test_keep_above_is_strict():
    phi = parse_puiseux("u^(3/5) + u^2")
    assert dict(phi.keep_above(F(3, 5)).terms) == {F(2): 1}
    assert phi.keep_above(F(1, 2)) == phi


def test_with_term_requires_fresh_exponent():
    phi = parse_puiseux("u^(3/5)")
    assert dict(phi.with_term(2, 1).terms) == {F(3, 5): 1, F(2): 1}
    with pytest.raises(ValueError):
        phi.with_term(F(3, 5), 1)


def test_duplicate_exponent_rejected_in_constructor():
    with pytest.raises(ValueError):
        PuiseuxPoly(Orientation.LOCAL, [(F(1, 2), F(1)), (F(1, 2), F(2))])


def test_conversion_maps_exponents_through_one_minus_e():
    phi = parse_puiseux("u^(3/5) + u^2")
    psi = local_to_degreewise(phi)
    assert dict(psi.terms) == {F(2, 5): 1, F(-1): 1}
    assert degreewise_to_local(psi) == phi
    with pytest.raises(PreconditionError):
        local_to_degreewise(psi)
    with pytest.raises(PreconditionError):
        degreewise_to_local(phi)


def test_polydromy():
    assert parse_puiseux("u^(3/5) + u^2").polydromy() == 5
    assert parse_puiseux(SIX_TERM).polydromy() == 6
    assert PuiseuxPoly.zero(Orientation.LOCAL).polydromy() == 1


# --- characteristic pairs -------------------------------------------------


def test_pairs_single():
    data = puiseux_pairs(parse_puiseux("u^(3/5) + u^2"))
    assert data.pairs == ((3, 5),)
    assert data.polydromy == 5


def test_pairs_two_levels():
    data = puiseux_pairs(parse_puiseux("u^(3/5) + u^(23/10)"))
    assert data.pairs == ((3, 5), (23, 2))
    assert data.polydromy == 10
    assert data.char_exponents() == (F(3, 5), F(23, 10))
    assert data.cumulative_p() == (5, 10)


def test_pairs_skip_lattice_exponents():
    # the degree-wise six-term series: 3, 2, 1 are integers, and -7/3 already
    # sits in the (1/6)-lattice opened by -13/6, so only two pairs appear
    data = puiseux_pairs(parse_puiseux(SIX_TERM))
    assert data.pairs == ((5, 3), (-13, 2))
    assert data.polydromy == 6
    assert data.char_exponents() == (F(5, 3), F(-13, 6))


def test_pairs_walk_updates_lattice():
    data = puiseux_pairs(parse_puiseux("u^(1/2) + u^(3/4)"))
    assert data.pairs == ((1, 2), (3, 2))


def test_pairs_integer_series_has_none():
    assert puiseux_pairs(parse_puiseux("u + u^2")).pairs == ()


def test_pairs_of_zero_rejected():
    with pytest.raises(PreconditionError):
        puiseux_pairs(PuiseuxPoly.zero(Orientation.LOCAL))


def test_characteristic_data_validation():
    with pytest.raises(PreconditionError):
        CharacteristicData.from_pairs([(2, 4)])  # not coprime
    with pytest.raises(PreconditionError):
        CharacteristicData.from_pairs([(3, 1)])  # p must be >= 2
    with pytest.raises(PreconditionError):
        CharacteristicData(((3, 5),), 6)  # stated polydromy is wrong
    data = CharacteristicData.from_pairs([(3, 5), (23, 2)])
    assert data.polydromy == 10

"""Generic series, substitution, and the induced semidegree."""

from fractions import Fraction

import pytest

from germcontract import (
    GenericDPS,
    LaurentPolyXY,
    Orientation,
    PreconditionError,
    PuiseuxPoly,
    SeriesParseError,
    XiPoly,
    XiSeries,
    generic_dps_from_curve,
    parse_poly,
    parse_puiseux,
    semidegree_eval,
    substitute,
)

F = Fraction

SIX_TERM = "x^3 + x^2 + x^(5/3) + x + x^(-13/6) + x^(-7/3)"


def six_term_series():
    return parse_puiseux(SIX_TERM)


# --- coefficient polynomials and xi-series --------------------------------


def test_xipoly_arithmetic():
    one_plus_xi = XiPoly.const(1) + XiPoly.xi()
    sq = one_plus_xi * one_plus_xi
    assert sq.coeffs == (F(1), F(2), F(1))
    assert sq.degree() == 2
    assert (sq - sq).is_zero()
    assert XiPoly.const(F(5, 2)).constant_value() == F(5, 2)
    with pytest.raises(ValueError):
        XiPoly.xi().constant_value()


def test_xipoly_drops_leading_zeros():
    p = XiPoly((1, 2)) - XiPoly((0, 2))
    assert p.coeffs == (F(1),)
    assert p.is_constant()


def test_xiseries_degree_and_lead():
    s = XiSeries({F(1, 2): XiPoly.const(3), F(-2): XiPoly.xi()})
    assert s.deg() == F(1, 2)
    assert s.lead_coeff() == XiPoly.const(3)
    assert (s - s).is_zero()
    with pytest.raises(PreconditionError):
        XiSeries.zero().deg()


def test_xiseries_pow_matches_repeated_product():
    s = XiSeries({F(2, 5): XiPoly.const(1), F(-6, 5): XiPoly.xi()})
    assert s**3 == s * s * s
    assert s**0 == XiSeries.one()
    with pytest.raises(ValueError):
        s ** (-1)


# --- Laurent polynomials --------------------------------------------------


def test_laurent_basic_queries():
    f = parse_poly("y^5 - x^2")
    assert f.deg_y() == 5
    assert f.is_monic_in_y()
    assert f.min_x_exponent() == 0
    g = parse_poly("y^5 - 5*x^(-1)*y^4 - x^2")
    assert g.min_x_exponent() == -1
    assert not parse_poly("2*y^3 - x").is_monic_in_y()
    assert not parse_poly("x*y^3 + y^3 - x").is_monic_in_y()
    assert LaurentPolyXY.zero().min_x_exponent() is None
    assert LaurentPolyXY.zero().deg_y() == 0


def test_laurent_arithmetic_and_pow():
    x, y = LaurentPolyXY.x(), LaurentPolyXY.y()
    f = (y - x * x) ** 5 - x**3
    assert f.coeff(2, 4) == -5
    assert f.coeff(10, 0) == -1
    assert f.coeff(3, 0) == -1
    assert f.deg_y() == 5
    assert (f - f).is_zero()
    with pytest.raises(ValueError):
        y ** (-2)


def test_laurent_rejects_negative_y():
    with pytest.raises(ValueError):
        LaurentPolyXY({(0, -1): F(1)})


def test_laurent_format_round_trip():
    for text in ("y^5 - x^2", "y^5 - 5*x^(-1)*y^4 - x^2", "x", "3/2*x*y - 1"):
        f = parse_poly(text)
        assert f.format() == text
        assert parse_poly(f.format()) == f
    assert LaurentPolyXY.zero().format() == "0"


def test_parse_poly_accumulates_repeats():
    assert parse_poly("x + x") == parse_poly("2*x")
    assert parse_poly("x - x").is_zero()


def test_parse_poly_other_variable_names():
    f = parse_poly("v^5 - u^3", xname="u", yname="v")
    assert f == parse_poly("y^5 - x^3")


def test_parse_poly_errors():
    with pytest.raises(SeriesParseError):
        parse_poly("y^(1/2)")
    with pytest.raises(SeriesParseError):
        parse_poly("y^(-1)")
    with pytest.raises(SeriesParseError):
        parse_poly("x + z")


# --- generic series -------------------------------------------------------


def test_generic_dps_of_the_six_term_series():
    g = GenericDPS(six_term_series().keep_above(F(-8, 3)), F(-8, 3))
    assert g.formal_pairs == ((5, 3), (-13, 2), (-16, 1))
    assert g.delta_x == 6
    assert g.cumulative_p() == (3, 6, 6)
    assert g.formal_exponents() == (F(5, 3), F(-13, 6), F(-8, 3))
    assert g.l == 2


def test_generic_dps_from_curve_cuts_r_steps_below():
    psi = six_term_series()
    g3 = generic_dps_from_curve(psi, 3)
    # r = 3 lands the generic position at -13/6 - 3/6 = -8/3
    assert g3 == GenericDPS(psi.keep_above(F(-8, 3)), F(-8, 3))
    g0 = generic_dps_from_curve(psi, 0)
    assert g0.r_delta == F(-13, 6)
    assert g0.formal_pairs == ((5, 3), (-13, 2))
    assert F(-13, 6) not in g0.phi.terms


def test_generic_dps_keeps_lattice_terms_out_of_the_pairs():
    # -7/3 lies in the lattice of -13/6, so it contributes no formal pair
    # but stays a term of phi when the cut is below it
    g = generic_dps_from_curve(six_term_series(), 3)
    assert g.phi.coeff(F(-7, 3)) == 1


def test_generic_dps_preconditions():
    psi = six_term_series()
    with pytest.raises(PreconditionError):
        GenericDPS(parse_puiseux("u^(3/5)"), F(0))  # local orientation
    with pytest.raises(PreconditionError):
        GenericDPS(psi, F(0))  # an exponent of phi sits at/below the cut
    with pytest.raises(PreconditionError):
        generic_dps_from_curve(parse_puiseux("u^(3/5)"), 1)
    with pytest.raises(PreconditionError):
        generic_dps_from_curve(psi, -1)
    with pytest.raises(PreconditionError):
        generic_dps_from_curve(parse_puiseux("x^2 + x"), 0)  # no pairs


def test_generic_dps_is_immutable():
    g = generic_dps_from_curve(six_term_series(), 0)
    with pytest.raises(AttributeError):
        g.r_delta = F(0)


def test_truncation_moves_the_generic_position():
    g = generic_dps_from_curve(six_term_series(), 3)
    t1 = g.truncated(1)
    assert t1.r_delta == F(5, 3)
    assert dict(t1.phi.terms) == {F(3): 1, F(2): 1}
    assert t1.formal_pairs == ((5, 3),)
    assert g.truncated(g.l + 1) == g
    with pytest.raises(PreconditionError):
        g.truncated(0)
    with pytest.raises(PreconditionError):
        g.truncated(g.l + 2)


def test_xiseries_of_generic_dps_has_the_xi_term():
    g = generic_dps_from_curve(parse_puiseux("x^(2/5) + x^(-1)"), 8)
    s = g.xiseries()
    assert s.coeff(F(-6, 5)) == XiPoly.xi()
    assert s.coeff(F(2, 5)) == XiPoly.const(1)


# --- substitution and the semidegree --------------------------------------


def test_substitute_is_a_ring_homomorphism():
    g = generic_dps_from_curve(six_term_series(), 3)
    f1 = parse_poly("y^2 - 3*x^(-1)*y + x^4")
    f2 = parse_poly("x*y - 2")
    assert substitute(f1 * f2, g) == substitute(f1, g) * substitute(f2, g)
    assert substitute(f1 + f2, g) == substitute(f1, g) + substitute(f2, g)


def test_semidegree_of_coordinates():
    g = generic_dps_from_curve(six_term_series(), 3)
    assert semidegree_eval(LaurentPolyXY.x(), g) == 6
    assert semidegree_eval(LaurentPolyXY.y(), g) == 18  # 6 * deg = 6 * 3
    assert semidegree_eval(parse_poly("x^(-1)"), g) == -6


def test_semidegree_drops_on_the_initial_form():
    g = generic_dps_from_curve(six_term_series(), 3)
    # y - x^3 kills the leading term of the substituted series
    assert semidegree_eval(parse_poly("y - x^3"), g) == 12
    assert semidegree_eval(parse_poly("y - x^3 - x^2"), g) == 10


def test_semidegree_of_zero_is_undefined():
    g = generic_dps_from_curve(six_term_series(), 0)
    with pytest.raises(PreconditionError):
        semidegree_eval(LaurentPolyXY.zero(), g)

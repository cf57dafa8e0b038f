import math

import pytest

import lnratio


def test_values_at_one():
    assert lnratio.eval("H", 1.0) == 1.0
    assert lnratio.eval("h", 1.0) == 2.0
    assert lnratio.eval_real("G", 1.0) == 1.0


def test_complex_reference_value():
    v = lnratio.eval("H", complex(1.0, 1.0))
    assert abs(v - complex(0.22050786341340453, -0.53857496987049405)) < 1e-13


def test_cut_is_rejected():
    with pytest.raises(lnratio.DomainError):
        lnratio.eval_real("H", -2.0)
    with pytest.raises(ValueError):
        lnratio.rho(0.0)


def test_densities():
    assert lnratio.rho(0.5) == pytest.approx(0.54567833396864572, rel=1e-12)
    assert lnratio.g2(2.0) == pytest.approx(12.943289481265870, rel=1e-12)
    assert lnratio.sigma(3.0) == pytest.approx(0.21751279877457974, rel=1e-11)
    assert lnratio.varrho_paper(2.0) * 2.0 == pytest.approx(lnratio.g2(2.0), rel=1e-12)
    value, _, converged = lnratio.boundary_limit(0.5, "IM_G")
    assert converged
    assert -value / math.pi == pytest.approx(0.54567833396864572, rel=1e-9)


def test_taylor_jet():
    coeffs, loss = lnratio.taylor_jet("H", 2.0, 2)
    assert not loss
    assert coeffs[0] == pytest.approx(0.35691544885672408, rel=1e-14)
    assert coeffs[1] == pytest.approx(-0.26080760883581410, rel=1e-12)


def test_property_checks():
    r = lnratio.check("cm", "H", grid="log:0.1:10:10", order=6)
    assert r["pass"] is True
    assert r["witness"] is None
    r = lnratio.check("cm", "X2H", grid="log:0.1:10:10", order=3)
    assert r["pass"] is False
    assert r["witness"]["k"] >= 1


def test_sigma_discrepancy():
    d = lnratio.sigma_discrepancy()
    assert "B" in str(d)


def test_operator_monotone_control():
    r = lnratio.opmon("square", 2, 200, 20260101)
    assert r["pass"] is False
    r = lnratio.opmon("X2H", 2, 20, 1)
    assert r["pass"] is True

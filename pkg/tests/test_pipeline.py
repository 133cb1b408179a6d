import pytest

from moorepi.errors import NotCurated, RangeExceeded
from moorepi.notation import format_iso, parse_iso
from moorepi.pipeline import (CofibrationSpec, Report, boundary_pi, fiber_skeleton, gamma2, gamma3, pi_moore,
                              pi_of_J2, pi_of_J3, pipeline_for, verify_tables)


def test_gamma2(fb):
    assert gamma2(3, 1, fb).is_zero()
    assert str(gamma2(4, 2, fb)) == "-4*E(nu') + 8*nu_4"
    assert str(gamma2(6, 1, fb)) == "2*Delta(iota_13)"


@pytest.mark.parametrize("r", [1, 2, 3])
def test_gamma3_odd_k_is_bracket_multiple(fb, r):
    for k in (3, 5, 7):
        g = gamma3(k, r, fb)
        ((word, coef),) = g.terms
        assert word == (f"[beta_{k},beta_{2 * k}]",) and abs(coef) == 2 ** r


def test_gamma3_even_k(fb):
    assert str(gamma3(4, 1, fb)) == "2*beta_11"
    with pytest.raises(NotCurated):
        gamma3(8, 1, fb)


def test_fiber_skeleton(fb):
    assert fiber_skeleton(CofibrationSpec(4, 1, 15), fb).describe() == "S^4 u e^8 u e^12"
    assert fiber_skeleton(CofibrationSpec(7, 1, 27), fb).describe() == "(S^7 v S^14) u e^21"
    assert fiber_skeleton(CofibrationSpec(7, 1, 10), fb).describe() == "S^7"
    with pytest.raises(RangeExceeded):
        CofibrationSpec(4, 1, 16)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_boundary_nu4_squared(fb, r):
    h = boundary_pi(CofibrationSpec(3, r, 10), 9, fb)
    col = h.codomain.names.index("A:beta_6 nu_6")
    assert h.matrix[0][col] == (2 ** r) % 8


@pytest.mark.parametrize("r", [1, 2])
def test_boundary_nu5_squared_vanishes(fb, r):
    h = boundary_pi(CofibrationSpec(4, r, 11), 10, fb)
    assert not any(any(row) for row in h.matrix)


def test_stage_groups(fb):
    g, trace = pi_of_J3(CofibrationSpec(3, 1, 10), 10, fb)
    assert format_iso(g.iso) == "2 + 4" and trace
    g, _ = pi_of_J2(CofibrationSpec(4, 1, 11), 9, fb)
    assert format_iso(g.iso) == "2 + 4"
    for r, want in [(1, "4 + Z"), (2, "8 + Z"), (3, "8 + Z"), (5, "8 + Z")]:
        g, _ = pi_of_J2(CofibrationSpec(4, r, 11), 11, fb)
        assert format_iso(g.iso) == want
    with pytest.raises(RangeExceeded):
        pi_of_J2(CofibrationSpec(4, 1, 15), 14, fb)


@pytest.mark.parametrize("n,r,i,want", [
    (4, 1, 8, "(2)^3"),
    (4, 2, 8, "(2)^2 + (4)^2"),
    (6, 1, 10, "8"),
    (5, 2, 14, "(2)^7 + (4)^3"),
    (7, 3, 11, "8"),
    (9, 3, 15, "2 + 4 + 16"),
])
def test_pi_moore_examples(fb, n, r, i, want):
    comp = pi_moore(n, r, i, fb)
    assert comp.iso == parse_iso(want)
    assert comp.exact and comp.order_identity


def test_pi_moore_out_of_range(fb):
    with pytest.raises(NotCurated):
        pi_moore(4, 1, 99, fb)


def test_trace_deterministic(fb):
    a = pi_moore(6, 2, 17, fb)
    b = pipeline_for(2, fb).pi_moore(6, 17)
    assert a.trace == b.trace and a.digest() == b.digest()


def test_missing_fact_surfaces_as_skipped(fb):
    rep = verify_tables(fb.without("composition.sigmapp-eta-13"), r_set=(1,))
    skipped = [e for e in rep.entries if e.status == "SKIPPED"]
    assert skipped
    assert all("sigma'' eta_13" in e.detail for e in skipped)
    assert not rep.failures


def test_report_round_trip(fb):
    rep = verify_tables(fb, r_set=(2,), targets=["P4.pi8", "P7.pi15"])
    again = Report.from_json(rep.to_json())
    assert again.to_json() == rep.to_json()
    assert {e.status for e in rep.entries} == {"PASS", "ERRATUM"}
    with pytest.raises(ValueError):
        Report.from_json(dict(rep.to_json(), schema="other"))

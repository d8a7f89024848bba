from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from laistrygon.errors import ConfluenceFailure, ParseError
from laistrygon.pbw_engine import (
    X1,
    X2,
    NCPoly,
    PBWMonomial,
    RewriteSystem,
    confluence_check,
    defining_relations,
    degree,
    gk_dimension,
    hilbert_coeffs,
    hilbert_series_oracle,
    is_normal,
    multiply,
    normal_form,
    parse_element,
    verify_derived_identities,
)

from conftest import homogeneous_ncpolys, ncpolys, params

P1 = params(1)
P2 = params(2)


def nf(text, p=P1):
    return str(normal_form(parse_element(text, p), p))


def test_jordan_rule():
    assert nf("x2*x1") == "x1*x2 - (1/2)*x1^2"


def test_bracket_rule():
    assert nf("z0*x2") == "(1/q)*x2*z0 - (1/q)*z1"


def test_ordered_words_are_fixed():
    assert nf("x1*x2") == "x1*x2"
    assert nf("z1*z0") == "z1*z0"
    assert nf("x1") == "x1"


def test_z_pair_rule():
    assert nf("z0*z1") == "(1/q)*z1*z0"


def test_multiply():
    p = P1
    x1, x2 = p.x1, p.x2
    assert multiply(x2, x1, p) == normal_form(x1 * x2 - x1 * x1 * Fraction(1, 2), p)
    assert multiply(p.z(1), p.z(0), p) == p.z(1) * p.z(0)


def test_parse_rejects_out_of_range_generator():
    with pytest.raises(ParseError):
        parse_element("z3*x1", P2)
    with pytest.raises(ParseError):
        parse_element("x2**x1", P1)


def test_relations_vanish():
    for name, rel in defining_relations(P2).items():
        assert normal_form(rel, P2).is_zero(), name


def test_degree():
    assert degree(PBWMonomial(1, 0, (0, 0))) == 1
    assert degree(PBWMonomial(0, 0, (1, 0, 0))) == 3
    assert degree(PBWMonomial(2, 1, (0, 3))) == 6


def test_pbw_monomial_roundtrip():
    m = PBWMonomial(2, 1, (1, 0, 3))
    assert PBWMonomial.from_word(m.word(), 2) == m
    assert m.exponent(0) == 3 and m.exponent(2) == 1


def test_hilbert_prefix():
    assert hilbert_coeffs(1, 4) == [1, 3, 7, 13, 22]
    assert hilbert_coeffs(1, 2)[2] == 7


@pytest.mark.parametrize("ghost", [1, 2, 3, 4])
def test_hilbert_matches_series(ghost):
    assert hilbert_coeffs(ghost, 15) == hilbert_series_oracle(ghost, 15)
    assert gk_dimension(ghost) == ghost + 3


@pytest.mark.parametrize("ghost", [1, 2, 3, 4])
def test_confluence_generic(ghost):
    assert confluence_check(params(ghost)).passed


@pytest.mark.parametrize("q", ["root:2", "root:5", "num:3", "num:1"])
def test_confluence_specialised(q):
    assert confluence_check(params(2, q)).passed


def test_confluence_lists_overlaps():
    rep = confluence_check(P1)
    labels = rep.info["ambiguities"]
    for w in ("z0*x2*x1", "z0*z1*x1", "z0*z1*x2"):
        assert w in labels


@pytest.mark.parametrize("linear", [2, -1])
def test_confluence_negative_control(linear):
    system = RewriteSystem(P1, jordan_linear=linear)
    assert not confluence_check(P1, system=system).passed
    with pytest.raises(ConfluenceFailure):
        confluence_check(P1, system=system, strict=True)


def test_rescaled_square_coefficient_stays_confluent():
    # x1 -> 2 x1 identifies the two presentations, so this is not a negative control
    system = RewriteSystem(P1, jordan_square=1)
    assert confluence_check(P1, system=system).passed


@pytest.mark.parametrize("ghost", [1, 2, 3, 4])
def test_derived_identities(ghost):
    rep = verify_derived_identities(params(ghost), jmax=5)
    assert rep.passed, rep.failures()
    labels = " ".join(rep.labels())
    assert "top_serre" in labels and "z_binomial" in labels


@given(ncpolys(ghost=2, max_len=4))
def test_normal_form_idempotent(p):
    once = normal_form(p, P2)
    assert is_normal(once)
    assert normal_form(once, P2) == once


@given(ncpolys(ghost=1), ncpolys(ghost=1))
def test_normal_form_respects_products(a, b):
    lhs = normal_form(a * b, P1)
    rhs = normal_form(normal_form(a, P1) * normal_form(b, P1), P1)
    assert lhs == rhs


@given(ncpolys(ghost=2, max_len=2), ncpolys(ghost=2, max_len=2), ncpolys(ghost=2, max_len=2))
def test_associativity_through_normal_forms(a, b, c):
    ab = multiply(a, b, P2)
    bc = multiply(b, c, P2)
    assert multiply(ab, c, P2) == multiply(a, bc, P2)


@given(st.integers(1, 5).flatmap(lambda d: homogeneous_ncpolys(ghost=2, deg=d)))
def test_grading_preserved(p):
    out = normal_form(p, P2)
    assert out.is_zero() or out.degrees() == p.degrees()


@given(
    st.integers(1, 3).flatmap(lambda d: homogeneous_ncpolys(ghost=1, deg=d)),
    st.integers(1, 2).flatmap(lambda d: homogeneous_ncpolys(ghost=1, deg=d)),
)
def test_no_zero_divisors(a, b):
    if normal_form(a, P1).is_zero() or normal_form(b, P1).is_zero():
        return
    assert not multiply(a, b, P1).is_zero()


def test_word_constructors():
    mode = P1.q
    w = NCPoly.word((X2, X1), mode)
    assert w.words() == [(X2, X1)]
    assert NCPoly.zero(mode).is_zero()

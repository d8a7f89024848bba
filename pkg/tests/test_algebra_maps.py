from __future__ import annotations

import random

import pytest
from hypothesis import given

from laistrygon.algebra_maps import (
    BraidingParams,
    QuotientSpec,
    TwistParams,
    braid_equation_check,
    braiding_entry,
    braiding_matrix,
    embed_psi,
    laistrygonian_braiding,
    nu_chain,
    ore_stages,
    ore_verify,
    project,
    quotient_multiply,
    twist_braiding,
    twist_equivalent,
)
from laistrygon.errors import IndexOutOfRange
from laistrygon.pbw_engine import defining_relations, normal_form, parse_element
from laistrygon.scalars import FieldElem, QSpec, random_elem

from conftest import GENERIC, field_elems, ncpolys, params

P1, P2, P3 = params(1), params(2), params(3)
q = FieldElem.q(GENERIC)


def el(text, p):
    return parse_element(text, p)


def test_quotient_examples():
    assert project(el("x1*x2", P2), QuotientSpec.MOD_X1, P2).is_zero()
    assert project(el("z2", P2), QuotientSpec.MOD_ZG, P2).is_zero()
    assert str(project(el("z0*x2", P1), QuotientSpec.QUANTUM_PLANE, P1)) == "(1/q)*x2*z0"


@pytest.mark.parametrize("spec", list(QuotientSpec))
@given(p=ncpolys(ghost=2))
def test_projection_idempotent(spec, p):
    once = project(p, spec, P2)
    assert project(once, spec, P2) == once


@pytest.mark.parametrize("spec", list(QuotientSpec))
@given(a=ncpolys(ghost=2, max_len=2), b=ncpolys(ghost=2, max_len=2))
def test_projection_multiplicative(spec, a, b):
    lhs = project(a * b, spec, P2)
    assert lhs == quotient_multiply(a, b, spec, P2)


@given(ncpolys(ghost=3, max_len=3))
def test_nu_factors_through_chain(p):
    direct = project(p, QuotientSpec.QUANTUM_PLANE, P3)
    assert nu_chain(p, P3) == direct


@given(ncpolys(ghost=2))
def test_kernel_of_top_quotient(p):
    nf = normal_form(p, P2)
    killed = project(p, QuotientSpec.MOD_ZG, P2).is_zero()
    assert killed == all(2 in w for w in nf.words())


def test_embedding_examples():
    small = params(1)
    assert embed_psi(el("z0", small), 1, P2) == el("z1", P2)
    assert embed_psi(el("x2*z0", small), 1, P2) == el("x2*z1", P2)
    rel = defining_relations(small)["x2_z[0]"]
    assert normal_form(embed_psi(rel, 1, P2), P2).is_zero()
    with pytest.raises(IndexOutOfRange):
        embed_psi(el("z0", small), 2, P2)


@given(ncpolys(ghost=1, max_len=2), ncpolys(ghost=1, max_len=2))
def test_embedding_is_multiplicative(a, b):
    small = params(1)
    lhs = normal_form(embed_psi(normal_form(a * b, small), 1, P2), P2)
    rhs = normal_form(embed_psi(a, 1, P2) * embed_psi(b, 1, P2), P2)
    assert lhs == rhs


@given(ncpolys(ghost=1, max_len=3))
def test_embedding_shifts_degree(p):
    small = params(1)
    for w in p.words():
        shifted = embed_psi(type(p).word(w, GENERIC), 1, P2).words()[0]
        assert sum(1 for g in shifted if g >= 0) == sum(1 for g in w if g >= 0)


@pytest.mark.parametrize("ghost", [1, 2, 3])
def test_ore_stages(ghost):
    p = params(ghost)
    for st in ore_stages(p):
        rep = ore_verify(st, p)
        assert rep.passed, (st, rep.failures())


def test_ore_examples():
    rep = ore_verify(0, P1)
    assert "commutation[x1]" in rep.labels() and "commutation[x2]" in rep.labels()
    with pytest.raises(IndexOutOfRange):
        ore_verify(5, P1)


def test_braiding_entries():
    bp = laistrygonian_braiding(1, GENERIC)
    assert braiding_entry(bp, 1, 1) == "x1(x)x1"
    # c(x1 (x) x2) = (x2 + x1) (x) x1 and c(x3 (x) x2) = q21 (x2 + a x1) (x) x3
    assert braiding_entry(bp, 1, 2) == "x1(x)x1 + x2(x)x1"
    assert braiding_entry(bp, 3, 2) == "(-1/(2*q))*x1(x)x3 + (1/q)*x2(x)x3"
    assert braiding_matrix(bp).shape == (9, 9)


def test_braid_equation_laistrygonian():
    rng = random.Random(7)
    for ghost in (1, 2, 3):
        assert braid_equation_check(laistrygonian_braiding(ghost, GENERIC))
    for _ in range(5):
        x = random_elem(rng, QSpec.numeric(3), nonzero=True)
        assert braid_equation_check(laistrygonian_braiding(2, x))


def test_braid_equation_recorded_off_locus():
    mode = QSpec.numeric(1)
    for a in (0, 1, 5):
        assert braid_equation_check(BraidingParams.make(2, 3, 5, 7, a, mode))


def test_twist_examples():
    bp = laistrygonian_braiding(2, GENERIC)
    one = FieldElem.from_int(1, GENERIC)
    assert twist_braiding(bp, TwistParams(one, one)) == bp
    target = q * q + 1
    tw = twist_braiding(bp, TwistParams(target / q, one))
    assert tw == laistrygonian_braiding(2, target)
    assert tw.q12 * tw.q21 == bp.q12 * bp.q21
    assert twist_equivalent(bp, tw)


@given(*(field_elems(nonzero=True) for _ in range(4)))
def test_twist_is_group_action(a, b, c, d):
    bp = laistrygonian_braiding(1, GENERIC)
    t1, t2 = TwistParams(a, b), TwistParams(c, d)
    assert twist_braiding(twist_braiding(bp, t2), t1) == twist_braiding(bp, t1 * t2)

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from laistrygon.errors import InvalidSpec, NotOnVariety, PreconditionError, RelationFailure
from laistrygon.pbw_engine import AlgebraParams
from laistrygon.point_modules import (
    EXPECTED_COMPONENTS,
    PointSequence,
    ProjPoint,
    ZetaTable,
    a_trichotomy_holds,
    classify_truncated,
    elimination_identities,
    failure_depth,
    forced_continuation,
    propagate,
    system_check,
    top_serre_on_v0,
    top_serre_sum_formula,
    verify_truncated,
)
from laistrygon.scalars import FieldElem, QSpec

from conftest import params

nonzero_q = st.fractions(min_value=-9, max_value=9, max_denominator=7).filter(lambda x: x not in (0, 1, -1))
values = st.fractions(min_value=-6, max_value=6, max_denominator=5)


def pt(text, p):
    return ProjPoint.parse(text, p.q)


def strs(seq):
    return [str(x) for x in seq.pts]


def test_normalisation():
    mode = QSpec.numeric(2)
    assert ProjPoint.make(2, 4, 0, mode) == ProjPoint.make(1, 2, 0, mode)
    assert str(ProjPoint.make(0, 3, 6, mode)) == "(0:1:2)"
    with pytest.raises(InvalidSpec):
        ProjPoint.make(0, 0, 0, mode)


def test_propagate_examples():
    p = params(1, "num:2")
    assert strs(propagate(pt("1:0:0", p), p, 3)) == ["(1:0:0)", "(1:-1/2:0)", "(1:-1:0)", "(1:-3/2:0)"]
    assert strs(propagate(pt("0:1:5", p), p, 2)) == ["(0:1:5)", "(0:1:5/2)", "(0:1:5/4)"]
    assert strs(propagate(pt("0:0:1", p), p, 4)) == ["(0:0:1)"] * 5
    with pytest.raises(NotOnVariety):
        propagate(pt("1:5:1", p), p, 3)


def test_propagate_symbolic_c():
    p = params(2)
    seq = propagate(pt("0:2:q", p), p, 2)
    assert strs(seq) == ["(0:1:q/2)", "(0:1:1/2)", "(0:1:1/(2*q))"]


def test_verify_examples():
    p = params(1, "num:3")
    assert verify_truncated(propagate(pt("0:1:1", p), p, 5)).passed
    assert verify_truncated(propagate(pt("1:0:0", p), p, 5)).passed
    p2 = params(1, "num:2")
    bad = PointSequence(p2, [pt("0:1:1", p2)] * 6)
    assert not verify_truncated(bad).passed
    with pytest.raises(RelationFailure):
        verify_truncated(bad, strict=True)
    with pytest.raises(PreconditionError):
        verify_truncated(PointSequence(p2, [pt("0:1:1", p2)] * 3))


@pytest.mark.parametrize("ghost", [1, 2, 3, 4])
@given(qv=nonzero_q, b=values, c=values)
def test_roundtrip_all_branches(ghost, qv, b, c):
    p = AlgebraParams(ghost, QSpec.numeric(qv))
    D = ghost + 4
    for p0 in (ProjPoint.make(1, b, 0, p.q), ProjPoint.make(0, 1, c, p.q), ProjPoint.make(0, 0, 1, p.q)):
        seq = propagate(p0, p, D)
        assert seq.consecutive_ok()
        assert verify_truncated(seq).passed
        assert a_trichotomy_holds(seq)


@pytest.mark.parametrize("ghost", [1, 2, 3, 4])
@given(qv=nonzero_q, b=values, c=values.filter(bool))
def test_off_variety_fails_at_depth_g_plus_2(ghost, qv, b, c):
    p = AlgebraParams(ghost, QSpec.numeric(qv))
    seq = forced_continuation(ProjPoint.make(1, b, c, p.q), p, ghost + 4)
    assert seq.consecutive_ok()
    assert failure_depth(seq) == ghost + 2
    short = PointSequence(p, seq.pts[: ghost + 1])
    assert failure_depth(short) is None


@given(qv=nonzero_q, data=st.data())
def test_zeta_closed_form(qv, data):
    mode = QSpec.numeric(qv)
    q = FieldElem.q(mode)
    D = 8
    bs = [FieldElem.from_fraction(data.draw(values.filter(bool)), mode) for _ in range(D + 1)]
    cs = [FieldElem.from_fraction(data.draw(values), mode) for _ in range(D + 1)]
    zt = ZetaTable(bs, cs, q)
    for n in range(4):
        for i in range(D - n):
            assert zt.zeta(i, n) == zt.closed_form(i, n)
            assert zt.zeta(i, n) == zt.binomial_form(i, n)


@pytest.mark.parametrize("ghost", [1, 2, 3])
@given(data=st.data())
def test_top_relation_on_v0_is_binomial_sum(ghost, data):
    p = AlgebraParams(ghost, QSpec.numeric(data.draw(nonzero_q)))
    pts = [ProjPoint.make(1, data.draw(values), data.draw(values), p.q) for _ in range(ghost + 3)]
    seq = PointSequence(p, pts)
    assert top_serre_on_v0(seq) == top_serre_sum_formula(seq)


@pytest.mark.parametrize("ghost,q", [(1, "num:2"), (2, "num:3")])
def test_classify_examples(ghost, q):
    res = classify_truncated(params(ghost, q), ghost + 4)
    assert res.matches_expected()
    assert res.failure_depth == ghost + 2


@pytest.mark.parametrize("ghost", [1, 2, 3])
@given(qv=nonzero_q)
def test_classify_random_q(ghost, qv):
    res = classify_truncated(AlgebraParams(ghost, QSpec.numeric(qv)), ghost + 4)
    assert res.matches_expected(), {k: r.failures() for k, r in res.reports.items()}
    expected_kappa = Fraction((-1) ** (ghost + 1) * factorial(ghost + 1), 2 ** (ghost + 1))
    assert res.kappa.to_fraction() == expected_kappa


def test_classify_membership():
    p = params(2, "num:5")
    res = classify_truncated(p, 6)
    assert [c.name for c in res.components] == [c.name for c in EXPECTED_COMPONENTS]
    assert res.contains(pt("1:7:0", p)) and res.contains(pt("0:3:1", p)) and res.contains(pt("0:0:1", p))
    assert not res.contains(pt("1:0:1", p))


def test_classify_preconditions():
    with pytest.raises(PreconditionError):
        classify_truncated(params(1, "num:-1"), 5)
    with pytest.raises(PreconditionError):
        classify_truncated(params(1, "root:4"), 5)
    with pytest.raises(PreconditionError):
        classify_truncated(params(2, "num:2"), 4)
    assert classify_truncated(params(1, "root:7"), 5).matches_expected()


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_system_closed_form(g):
    assert system_check(g, g + 4).passed


def test_system_closed_form_long():
    assert system_check(2, 8).passed


@pytest.mark.parametrize("g", [1, 2, 3])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_system_numeric_uniqueness(g, seed):
    assert system_check(g, 2 * g + 2, "numeric_uniqueness", seed).passed


def test_system_preconditions():
    with pytest.raises(PreconditionError):
        system_check(2, 4)
    with pytest.raises(InvalidSpec):
        system_check(1, 5, "nope")


@pytest.mark.parametrize("g", [1, 2, 3, 4, 5])
def test_elimination_identities(g):
    rep = elimination_identities(g)
    assert rep.passed, rep.failures()
    assert {"difference", "square", "recursion", "recursion_h2", "level_square"} <= set(rep.labels())

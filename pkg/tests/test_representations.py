from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from laistrygon import linalg
from laistrygon.errors import InvalidSpec, RelationFailure, Unsupported
from laistrygon.pbw_engine import X1, X2, AlgebraParams
from laistrygon.representations import (
    Character,
    MatrixRep,
    QPModuleSpec,
    build_qp_module,
    character_of,
    cyclic_class_invariant,
    cyclic_det_formulas,
    cyclic_isomorphism_witness,
    expected_character_families,
    fingerprints,
    is_simple,
    pullback,
    rep_check,
    same_families,
    solve_characters,
    subtop_power_check,
    topz_invertible_obstruction,
)
from laistrygon.scalars import FieldElem, QSpec, random_elem

from conftest import params

R2 = QSpec.root(2)


def cyclic(a, b, N, ghost=1):
    mode = QSpec.root(N)
    spec = QPModuleSpec.cyclic(a, b, mode)
    return pullback(build_qp_module(spec), AlgebraParams(ghost, mode))


def test_cyclic_at_minus_one():
    qp = build_qp_module(QPModuleSpec.cyclic(1, 1, R2))
    assert linalg.to_strings(qp.X) == [["1", "0"], ["0", "-1"]]
    assert linalg.to_strings(qp.Y) == [["0", "1"], ["1", "0"]]
    assert qp.satisfies_relation()


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_cyclic_relation_and_simplicity(N):
    rng = random.Random(N)
    mode = QSpec.root(N)
    for _ in range(3):
        a, b = random_elem(rng, mode, nonzero=True), random_elem(rng, mode, nonzero=True)
        rep = cyclic(a, b, N, ghost=2)
        assert build_qp_module(QPModuleSpec.cyclic(a, b, mode)).satisfies_relation()
        assert rep_check(rep, AlgebraParams(2, mode)).passed
        assert is_simple(rep)


def test_spec_validation():
    with pytest.raises(InvalidSpec):
        QPModuleSpec.cyclic(1, 1, QSpec.numeric(2))
    with pytest.raises(InvalidSpec):
        QPModuleSpec.char_x(0, R2)
    with pytest.raises(InvalidSpec):
        QPModuleSpec.cyclic(1, 0, R2)


def test_characters_of_pullbacks():
    mode = QSpec.numeric(3)
    p = AlgebraParams(2, mode)
    a = FieldElem.from_int(5, mode)
    zero = FieldElem.from_int(0, mode)
    chy = character_of(pullback(build_qp_module(QPModuleSpec.char_y(a, mode)), p), p)
    assert chy == Character(zero, zero, (a, zero, zero))
    chx = character_of(pullback(build_qp_module(QPModuleSpec.char_x(a, mode)), p), p)
    assert chx == Character(zero, a, (zero, zero, zero))


def test_rep_check_examples():
    mode = QSpec.numeric(2)
    p = AlgebraParams(1, mode)
    bad = MatrixRep(2, {X1: linalg.identity(2, mode)}, mode)
    rep = rep_check(bad, p)
    assert not rep.passed and rep.failures()[0].label == "jordan"
    with pytest.raises(RelationFailure):
        rep_check(bad, p, strict=True)
    assert rep_check(MatrixRep(3, {}, mode), p).passed


def test_is_simple_examples():
    mode = QSpec.numeric(2)
    assert is_simple(MatrixRep(1, {X2: linalg.identity(1, mode)}, mode))
    assert not is_simple(MatrixRep(2, {X2: linalg.from_rows([[1, 0], [0, 2]], mode)}, mode))
    big = MatrixRep(7, {0: linalg.identity(7, mode)}, mode)
    with pytest.raises(Unsupported):
        is_simple(big)


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_cyclic_invariants(N):
    rng = random.Random(10 + N)
    mode = QSpec.root(N)
    q = FieldElem.q(mode)
    p = AlgebraParams(1, mode)
    for _ in range(3):
        a, b = random_elem(rng, mode, nonzero=True), random_elem(rng, mode, nonzero=True)
        rep = cyclic(a, b, N)
        fp = fingerprints(rep)
        dets = cyclic_det_formulas(a, b, N)
        assert fp["det_x2"] == dets["det_x2"]
        assert fp["det_z0"] == dets["det_z0"]
        # the orbit a -> a q^i leaves the class invariant, and a basis rotation realises it
        assert cyclic_class_invariant(a * q, b, N) == cyclic_class_invariant(a, b, N)
        assert cyclic_isomorphism_witness(a, b, 1, p)
        # z0 acts invertibly on cyclic modules
        assert fp["det_z0"]


def test_z0_nilpotent_on_char_x():
    mode = QSpec.numeric(3)
    p = AlgebraParams(1, mode)
    rep = pullback(build_qp_module(QPModuleSpec.char_x(2, mode)), p)
    assert linalg.is_zero(rep.action(0))


@pytest.mark.parametrize("N", [2, 3])
def test_subtop_power_identity(N):
    mode = QSpec.root(N)
    rep = cyclic(1, 2, N, ghost=2)
    assert subtop_power_check(rep, AlgebraParams(2, mode), 4).passed


@given(st.fractions(min_value=-7, max_value=7, max_denominator=5).filter(lambda x: x not in (0, 1)),
       st.integers(1, 3))
def test_characters_match_quantum_plane(qv, ghost):
    p = AlgebraParams(ghost, QSpec.numeric(qv))
    fams = solve_characters(p)
    assert len(fams) == 2 and all(f.dimension == 1 for f in fams)
    assert same_families(fams, expected_character_families(p))


def test_characters_at_one():
    p = params(1, "num:1")
    fams = solve_characters(p)
    assert len(fams) == 1 and fams[0].dimension == 2
    assert set(fams[0].free) == {"beta", "gamma0"}


def test_characters_generic_split():
    fams = solve_characters(params(2))
    conditions = sorted(f.condition for f in fams)
    assert conditions == ["q != 1", "q != 1", "q = 1"]


def test_characters_alpha_always_zero():
    for q in ("num:2", "num:1", "root:3"):
        for f in solve_characters(params(1, q)):
            assert f.assignment["alpha"].is_zero()


@pytest.mark.parametrize("N,block", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_no_module_with_invertible_top(N, block):
    res = topz_invertible_obstruction(N, block, random.Random(N * 10 + block))
    assert res.certified

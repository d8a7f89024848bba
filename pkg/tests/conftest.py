from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from laistrygon.pbw_engine import X1, X2, AlgebraParams, NCPoly
from laistrygon.scalars import FieldElem, QSpec

settings.register_profile(
    "default", max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

GENERIC = QSpec.generic()


@pytest.fixture
def rng():
    return random.Random(12345)


def small_fraction():
    return st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def field_elems(draw, mode=GENERIC, nonzero=False):
    """Rational functions of low degree in q (or their specialisations)."""
    num = draw(st.lists(st.integers(-4, 4), min_size=1, max_size=3))
    den = draw(st.lists(st.integers(-4, 4), min_size=1, max_size=3).filter(any))
    try:
        x = FieldElem.make(num, den, mode)
    except ZeroDivisionError:
        x = FieldElem.from_int(1, mode)
    if nonzero and not x:
        x = FieldElem.from_int(1, mode)
    return x


@st.composite
def words(draw, ghost: int, max_len: int = 4):
    gens = [X1, X2] + list(range(ghost + 1))
    return tuple(draw(st.lists(st.sampled_from(gens), min_size=0, max_size=max_len)))


@st.composite
def ncpolys(draw, ghost: int = 1, max_terms: int = 3, max_len: int = 3, mode=GENERIC):
    n = draw(st.integers(1, max_terms))
    p = NCPoly.zero(mode)
    for _ in range(n):
        w = draw(words(ghost, max_len))
        c = draw(st.integers(-3, 3))
        p = p + NCPoly.word(w, mode, c)
    return p


@st.composite
def homogeneous_ncpolys(draw, ghost: int = 1, deg: int = 3, mode=GENERIC):
    """Sums of words of one weighted degree."""
    gens = [X1, X2] + list(range(ghost + 1))
    weight = {X1: 1, X2: 1, **{n: n + 1 for n in range(ghost + 1)}}
    p = NCPoly.zero(mode)
    for _ in range(draw(st.integers(1, 3))):
        w = []
        left = deg
        while left:
            g = draw(st.sampled_from([g for g in gens if weight[g] <= left]))
            w.append(g)
            left -= weight[g]
        p = p + NCPoly.word(tuple(w), mode, draw(st.integers(1, 3)))
    return p


def params(ghost: int = 1, q: str = "generic") -> AlgebraParams:
    return AlgebraParams(ghost, QSpec.parse(q))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])

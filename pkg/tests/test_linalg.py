from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from laistrygon import linalg
from laistrygon.scalars import QSpec

MODE = QSpec.numeric(3)

square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(square, st.data())
def test_det_is_multiplicative(rows, data):
    n = len(rows)
    other = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n))
    a, b = linalg.from_rows(rows, MODE), linalg.from_rows(other, MODE)
    assert linalg.det(linalg.matmul(a, b, MODE), MODE) == linalg.det(a, MODE) * linalg.det(b, MODE)


@given(square)
def test_rank_nullity(rows):
    a = linalg.from_rows(rows, MODE)
    kernel = linalg.nullspace(a, MODE)
    assert linalg.rank(a) + len(kernel) == len(rows)
    for v in kernel:
        assert all(not x for x in linalg.matvec(a, v, MODE))
    assert (linalg.rank(a) == len(rows)) == bool(linalg.det(a, MODE))


def test_span_closure():
    shift = linalg.from_rows([[0, 0, 0], [1, 0, 0], [0, 1, 0]], MODE)
    e1 = linalg.from_rows([[1], [0], [0]], MODE)[:, 0]
    e3 = linalg.from_rows([[0], [0], [1]], MODE)[:, 0]
    assert linalg.span_closure([e1], [shift], MODE) == 3
    assert linalg.span_closure([e3], [shift], MODE) == 1

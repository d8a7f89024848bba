"""Quotients, the shift embedding, Ore data and the braiding/twist calculus."""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import IndexOutOfRange, OreFailure
from .pbw_engine import (
    X1,
    X2,
    AlgebraParams,
    NCPoly,
    commutation_relations,
    defining_relations,
    gen_name,
    normal_form,
)
from .report import Report
from .scalars import FieldElem, QSpec

# ---------------------------------------------------------------------------
# Quotients
# ---------------------------------------------------------------------------


class QuotientSpec(enum.Enum):
    """Which generators are sent to zero."""

    MOD_X1 = "mod_x1"
    MOD_ZG = "mod_zG"
    QUANTUM_PLANE = "quantum_plane"

    def kills(self, word, ghost: int) -> bool:
        if self is QuotientSpec.MOD_X1:
            return X1 in word
        if self is QuotientSpec.MOD_ZG:
            return ghost in word
        return any(g == X1 or g >= 1 for g in word)


def project(p: NCPoly, spec: QuotientSpec, params: AlgebraParams) -> NCPoly:
    """Normal form with the monomials of the killed ideal dropped.

    Each killed ideal is spanned by the PBW monomials containing one of
    its generators, so filtering the normal form is exact.
    """
    nf = normal_form(p, params)
    return nf.filter(lambda w: not spec.kills(w, params.ghost))


def quotient_multiply(a: NCPoly, b: NCPoly, spec: QuotientSpec, params: AlgebraParams) -> NCPoly:
    return project(project(a, spec, params) * project(b, spec, params), spec, params)


def nu_chain(p: NCPoly, params: AlgebraParams) -> NCPoly:
    """Kill z_G, z_{G-1}, ..., z_1 one at a time, each in the smaller algebra,
    then project G = 1 onto the quantum plane."""
    current = params
    out = normal_form(p, params)
    while current.ghost > 1:
        out = project(out, QuotientSpec.MOD_ZG, current)
        current = current.with_ghost(current.ghost - 1)
        out = normal_form(out, current)
    return project(out, QuotientSpec.QUANTUM_PLANE, current)


def embed_psi(p: NCPoly, f: int, params: AlgebraParams) -> NCPoly:
    """Shift embedding of the ghost ``G - f`` algebra: z_n -> z_{f+n}."""
    G = params.ghost
    if not 1 <= f <= G - 1:
        raise IndexOutOfRange(f"shift f must lie in [1, {G - 1}], got {f}")
    top = p.max_generator_index()
    if top > G - f:
        raise IndexOutOfRange(f"source generator z{top} exceeds ghost {G - f}")
    return p.map_words(lambda w: tuple(g if g < 0 else g + f for g in w))


# ---------------------------------------------------------------------------
# Ore structure
# ---------------------------------------------------------------------------

TOP = "top"
JORDAN = "x2"


@dataclass(frozen=True)
class OreStage:
    """Adjoining ``new`` to the subalgebra generated by ``base``.

    ``sigma[g]`` is the scalar with sigma(g) = sigma[g] * g and ``delta[g]``
    the image of g under the twisted derivation.
    """

    name: str
    new: int
    base: tuple
    sigma: dict
    delta: dict


def ore_stage(stage, params: AlgebraParams) -> OreStage:
    """Stage ``j`` adjoins z_j; ``"top"`` adjoins z_G; ``"x2"`` adjoins x2 to k[x1]."""
    G = params.ghost
    mode = params.q
    q = params.qe
    one = FieldElem.from_int(1, mode)
    zero = NCPoly.zero(mode)
    if stage == JORDAN:
        return OreStage("x2", X2, (X1,), {X1: one},
                        {X1: params.x1 * params.x1 * FieldElem.from_fraction(Fraction(-1, 2), mode)})
    if stage == TOP or stage == G:
        return OreStage("top", G, (X1, X2), {X1: q.inverse(), X2: q.inverse()}, {X1: zero, X2: zero})
    if not isinstance(stage, int) or not 0 <= stage < G:
        raise IndexOutOfRange(f"Ore stage must be 'x2', 'top' or an index in [0, {G - 1}], got {stage!r}")
    j = stage
    base = (X1, X2) + tuple(range(G, j, -1))
    sigma = {X1: q.inverse(), X2: q.inverse()}
    delta = {X1: zero, X2: params.z(j + 1) * -q.inverse()}
    for i in range(j + 1, G + 1):
        sigma[i] = q ** (j - i)
        delta[i] = zero
    return OreStage(f"z{j}", j, base, sigma, delta)


def ore_stages(params: AlgebraParams) -> list:
    return [JORDAN, TOP] + list(range(params.ghost - 1, -1, -1))


def _sigma(p: NCPoly, st: OreStage) -> NCPoly:
    def scale(w):
        c = FieldElem.from_int(1, p.mode)
        for g in w:
            c = c * st.sigma[g]
        return c

    return NCPoly({w: c * scale(w) for w, c in p.terms.items()}, p.mode)


def _delta(p: NCPoly, st: OreStage) -> NCPoly:
    """Extend delta from generators by delta(uv) = sigma(u) delta(v) + delta(u) v."""
    mode = p.mode
    out = NCPoly.zero(mode)
    for w, c in p.terms.items():
        for i, g in enumerate(w):
            d = st.delta[g]
            if not d:
                continue
            left = _sigma(NCPoly.word(w[:i], mode), st)
            out = out + left * d * NCPoly.word(w[i + 1:], mode) * c
    return out


def _base_relations(st: OreStage, params: AlgebraParams) -> dict:
    allowed = set(st.base)
    rels = {**defining_relations(params), **commutation_relations(params)}
    return {name: r for name, r in rels.items()
            if all(g in allowed for w in r.terms for g in w)}


def ore_verify(stage, params: AlgebraParams, strict: bool = False) -> Report:
    """Check the Ore data of one stage inside the algebra.

    (i) sigma maps every relation among the base generators into the ideal;
    (ii) delta, extended by the twisted Leibniz rule, does too, and
    agrees with the commutator on all generator pairs;
    (iii) new * r - sigma(r) * new - delta(r) straightens to zero for every
    base generator r.
    """
    st = ore_stage(stage, params)
    mode = params.q
    X = NCPoly.gen(st.new, mode)
    report = Report(f"ore[{st.name}]", info={"ghost": params.ghost, "q": str(params.q),
                                             "base": [gen_name(g) for g in st.base]})
    for g in st.base:
        ok = bool(st.sigma[g])
        report.add(f"sigma_invertible[{gen_name(g)}]", ok)
    for name, rel in _base_relations(st, params).items():
        s = normal_form(_sigma(rel, st), params)
        report.add(f"sigma_preserves[{name}]", s.is_zero(), None if s.is_zero() else str(s))
        d = normal_form(_delta(rel, st), params)
        report.add(f"delta_kills[{name}]", d.is_zero(), None if d.is_zero() else str(d))
    for a in st.base:
        for b in st.base:
            r = NCPoly.word((a, b), mode)
            lhs = normal_form(X * r - _sigma(r, st) * X, params)
            rhs = normal_form(_delta(r, st), params)
            diff = lhs - rhs
            report.add(f"leibniz[{gen_name(a)},{gen_name(b)}]", diff.is_zero(),
                       None if diff.is_zero() else str(diff))
    for g in st.base:
        r = NCPoly.gen(g, mode)
        diff = normal_form(X * r - _sigma(r, st) * X - st.delta[g], params)
        report.add(f"commutation[{gen_name(g)}]", diff.is_zero(), None if diff.is_zero() else str(diff))
    if strict:
        report.raise_if_failed(OreFailure)
    return report


# ---------------------------------------------------------------------------
# Braiding and cocycle twist
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BraidingParams:
    """Scalars of the block-plus-point braiding on a basis x1, x2, x3."""

    q11: FieldElem
    q12: FieldElem
    q21: FieldElem
    q22: FieldElem
    a: FieldElem

    def __post_init__(self):
        modes = {x.mode for x in (self.q11, self.q12, self.q21, self.q22, self.a)}
        if len(modes) != 1:
            raise ValueError("braiding scalars must share one field")
        for name in ("q11", "q12", "q21", "q22"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be nonzero")

    @property
    def mode(self) -> QSpec:
        return self.q11.mode

    @classmethod
    def make(cls, q11, q12, q21, q22, a, mode: QSpec) -> "BraidingParams":
        c = lambda x: FieldElem.coerce(x, mode)  # noqa: E731
        return cls(c(q11), c(q12), c(q21), c(q22), c(a))

    def to_dict(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("q11", "q12", "q21", "q22", "a")}


@dataclass(frozen=True)
class TwistParams:
    p12: FieldElem
    p21: FieldElem

    def __post_init__(self):
        if not self.p12 or not self.p21:
            raise ValueError("twist parameters must be nonzero")

    def __mul__(self, other: "TwistParams") -> "TwistParams":
        return TwistParams(self.p12 * other.p12, self.p21 * other.p21)


def laistrygonian_braiding(ghost: int, q) -> BraidingParams:
    """q11 = q22 = 1, q12 = q, q21 = 1/q, a = -ghost/2.

    ``q`` is a FieldElem (its field is used) or a QSpec (its q is used).
    """
    if isinstance(q, QSpec):
        q = FieldElem.q(q)
    mode = q.mode
    return BraidingParams.make(1, q, q.inverse(), 1, Fraction(-ghost, 2), mode)


def grading_actions(bp: BraidingParams) -> tuple[np.ndarray, np.ndarray]:
    """The two commuting 3x3 matrices by which the grading group acts (columns = images)."""
    mode = bp.mode
    a1 = linalg.from_rows([[bp.q11, bp.q11, 0], [0, bp.q11, 0], [0, 0, bp.q12]], mode)
    a2 = linalg.from_rows([[bp.q21, bp.q21 * bp.a, 0], [0, bp.q21, 0], [0, 0, bp.q22]], mode)
    return a1, a2


_DEGREE = (0, 0, 1)  # x1, x2 live in the first grading direction, x3 in the second


def braiding_matrix(bp: BraidingParams) -> np.ndarray:
    """9x9 matrix of c on the basis x_i (x) x_j (index 3i + j); column 3i + j holds
    c(x_i (x) x_j) = (deg(x_i) . x_j) (x) x_i."""
    mode = bp.mode
    acts = grading_actions(bp)
    c = linalg.zeros(9, 9, mode)
    for i in range(3):
        act = acts[_DEGREE[i]]
        for j in range(3):
            for k in range(3):
                if act[k, j]:
                    c[3 * k + i, 3 * i + j] = act[k, j]
    return c


def braiding_entry(bp: BraidingParams, i: int, j: int) -> str:
    """Readable c(x_i (x) x_j) with 1-based indices, e.g. ``x1(x)x1 + x2(x)x1``."""
    c = braiding_matrix(bp)
    col = 3 * (i - 1) + (j - 1)
    terms = []
    for row in range(9):
        v = c[row, col]
        if v:
            k, l = divmod(row, 3)
            coeff = "" if v.is_one() else (f"{v}*" if v.is_atomic_str() else f"({v})*")
            terms.append(f"{coeff}x{k + 1}(x)x{l + 1}")
    return " + ".join(terms) if terms else "0"


def braid_equation_check(bp: BraidingParams) -> bool:
    """(c x id)(id x c)(c x id) == (id x c)(c x id)(id x c) on V^(x)3."""
    mode = bp.mode
    c = braiding_matrix(bp)
    eye = linalg.identity(3, mode)
    c12 = linalg.kron(c, eye, mode)
    c23 = linalg.kron(eye, c, mode)
    mm = lambda a, b: linalg.matmul(a, b, mode)  # noqa: E731
    return linalg.equal(mm(mm(c12, c23), c12), mm(mm(c23, c12), c23))


def twist_braiding(bp: BraidingParams, tp: TwistParams) -> BraidingParams:
    """Cocycle twist: q12 -> p12/p21 q12 and q21 -> p21/p12 q21."""
    r = tp.p12 / tp.p21
    return replace(bp, q12=bp.q12 * r, q21=bp.q21 / r)


def twist_equivalent(b1: BraidingParams, b2: BraidingParams) -> bool:
    return (b1.q11 == b2.q11 and b1.q22 == b2.q22 and b1.a == b2.a
            and b1.q12 * b1.q21 == b2.q12 * b2.q21)

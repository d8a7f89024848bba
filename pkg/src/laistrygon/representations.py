"""Finite-dimensional modules: quantum-plane simples, pullbacks, relation
checks, simplicity, and the variety of one-dimensional characters."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import InvalidSpec, RelationFailure, Unsupported
from .pbw_engine import (
    X1,
    X2,
    AlgebraParams,
    NCPoly,
    commutation_relations,
    defining_relations,
    gen_name,
)
from .report import Report
from .scalars import FieldElem, MultiPoly, QSpec

# ---------------------------------------------------------------------------
# Matrix representations
# ---------------------------------------------------------------------------


@dataclass
class MatrixRep:
    """Generator -> square matrix; generators absent from ``mats`` act by zero."""

    dim: int
    mats: dict
    mode: QSpec

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidSpec("dimension must be positive")
        for g, m in self.mats.items():
            if m.shape != (self.dim, self.dim):
                raise InvalidSpec(f"matrix for {gen_name(g)} has shape {m.shape}, expected {self.dim}x{self.dim}")

    def action(self, g: int) -> np.ndarray:
        m = self.mats.get(g)
        return m if m is not None else linalg.zeros(self.dim, self.dim, self.mode)

    def evaluate(self, p: NCPoly) -> np.ndarray:
        """Matrix of the free-algebra element p (words act as matrix products)."""
        out = linalg.zeros(self.dim, self.dim, self.mode)
        cache: dict = {(): linalg.identity(self.dim, self.mode)}

        def word_matrix(w):
            if w not in cache:
                cache[w] = linalg.matmul(word_matrix(w[:-1]), self.action(w[-1]), self.mode)
            return cache[w]

        for w, c in p.terms.items():
            out = linalg.add(out, linalg.scale(word_matrix(w), c))
        return out

    def to_dict(self) -> dict:
        return {"dim": self.dim, "matrices": {gen_name(g): linalg.to_strings(m) for g, m in sorted(self.mats.items())}}


@dataclass(frozen=True)
class QPModuleSpec:
    """A simple module of the quantum plane XY = qYX.

    ``kind`` is ``"char_x"`` (X acts by a), ``"char_y"`` (Y acts by a) or
    ``"cyclic"`` (the N-dimensional module with X diagonal and Y^N = b).
    """

    kind: str
    a: FieldElem
    b: FieldElem | None = None

    def __post_init__(self):
        if self.kind not in ("char_x", "char_y", "cyclic"):
            raise InvalidSpec(f"unknown module kind {self.kind!r}")
        if not self.a:
            raise InvalidSpec("a must be nonzero")
        if self.kind == "cyclic":
            if self.a.mode.kind != "root":
                raise InvalidSpec("cyclic modules need q a root of unity (root:N)")
            if self.b is None or not self.b:
                raise InvalidSpec("cyclic modules need a nonzero b")
        elif self.b is not None:
            raise InvalidSpec("b is only used by cyclic modules")

    @property
    def mode(self) -> QSpec:
        return self.a.mode

    @classmethod
    def char_x(cls, a, mode: QSpec) -> "QPModuleSpec":
        return cls("char_x", FieldElem.coerce(a, mode))

    @classmethod
    def char_y(cls, a, mode: QSpec) -> "QPModuleSpec":
        return cls("char_y", FieldElem.coerce(a, mode))

    @classmethod
    def cyclic(cls, a, b, mode: QSpec) -> "QPModuleSpec":
        return cls("cyclic", FieldElem.coerce(a, mode), FieldElem.coerce(b, mode))


@dataclass
class QPRep:
    """Matrices X, Y of a quantum-plane module."""

    X: np.ndarray
    Y: np.ndarray
    mode: QSpec

    @property
    def dim(self) -> int:
        return self.X.shape[0]

    def relation(self) -> np.ndarray:
        q = FieldElem.q(self.mode)
        return linalg.add(linalg.matmul(self.X, self.Y, self.mode),
                          linalg.scale(linalg.matmul(self.Y, self.X, self.mode), -q))

    def satisfies_relation(self) -> bool:
        return linalg.is_zero(self.relation())


def build_qp_module(spec: QPModuleSpec) -> QPRep:
    mode = spec.mode
    if spec.kind == "char_x":
        return QPRep(linalg.from_rows([[spec.a]], mode), linalg.zeros(1, 1, mode), mode)
    if spec.kind == "char_y":
        return QPRep(linalg.zeros(1, 1, mode), linalg.from_rows([[spec.a]], mode), mode)
    N = mode.order
    q = FieldElem.q(mode)
    X = linalg.zeros(N, N, mode)
    Y = linalg.zeros(N, N, mode)
    for i in range(N):
        X[i, i] = spec.a * q ** i
        if i + 1 < N:
            Y[i + 1, i] = FieldElem.from_int(1, mode)
    Y[0, N - 1] = spec.b
    return QPRep(X, Y, mode)


def pullback(rep: QPRep, params: AlgebraParams) -> MatrixRep:
    """x2 acts by X, z0 by Y, and x1, z_1..z_G by zero."""
    if rep.mode != params.q:
        raise InvalidSpec(f"module over {rep.mode} pulled back to algebra over {params.q}")
    return MatrixRep(rep.dim, {X2: rep.X, 0: rep.Y}, rep.mode)


def rep_check(rep: MatrixRep, params: AlgebraParams, strict: bool = False) -> Report:
    """Evaluate every defining relation (and the derived commutations) on ``rep``.

    The report passes iff the defining relations vanish; derived relations
    are reported under ``derived:`` labels and must then vanish too.
    """
    report = Report("rep_check", info={"dim": rep.dim, "ghost": params.ghost, "q": str(params.q)})
    for name, rel in defining_relations(params).items():
        m = rep.evaluate(rel)
        report.add(name, linalg.is_zero(m))
    for name, rel in commutation_relations(params).items():
        m = rep.evaluate(rel)
        report.add(f"derived:{name}", linalg.is_zero(m))
    if strict:
        report.raise_if_failed(RelationFailure)
    return report


def subtop_power_check(rep: MatrixRep, params: AlgebraParams, jmax: int = 4) -> Report:
    """z_{G-1} x2^j = q^-j x2^j z_{G-1} - j q^-j x2^(j-1) z_G as matrices."""
    G = params.ghost
    q = params.qe
    x2, a, b = params.x2, params.z(G - 1), params.z(G)
    report = Report("subtop_power", info={"jmax": jmax})
    for j in range(1, jmax + 1):
        qj = q ** (-j)
        rel = a * x2 ** j - x2 ** j * a * qj + x2 ** (j - 1) * b * (qj * j)
        report.add(f"subtop_x2_power[{j}]", linalg.is_zero(rep.evaluate(rel)))
    return report


# ---------------------------------------------------------------------------
# Simplicity
# ---------------------------------------------------------------------------

BURNSIDE_MAX_DIM = 6


def _distinct_diagonal(m: np.ndarray) -> bool:
    n = m.shape[0]
    for i in range(n):
        for j in range(n):
            if i != j and m[i, j]:
                return False
    diag = [m[i, i] for i in range(n)]
    return len(set(diag)) == n


def generated_algebra_dim(mats: list[np.ndarray], mode: QSpec) -> int:
    """Dimension of the unital algebra generated by ``mats``."""
    n = mats[0].shape[0]
    basis: list = []
    flat_rows: list = []
    queue = [linalg.identity(n, mode)]
    while queue:
        m = queue.pop()
        trial = flat_rows + [list(m.flat)]
        if linalg.rank(linalg.from_rows(trial, mode)) > len(flat_rows):
            flat_rows.append(list(m.flat))
            basis.append(m)
            if len(basis) == n * n:
                break
            for g in mats:
                queue.append(linalg.matmul(m, g, mode))
    return len(basis)


def is_simple(rep: MatrixRep) -> bool:
    """No proper nonzero subspace is stable under all generators.

    When x2 acts diagonally with distinct entries every submodule is spanned
    by coordinate vectors, so it suffices to close each e_i.  Otherwise we
    use Burnside's criterion (the generated algebra is the full matrix
    algebra), which tests absolute simplicity, for dim <= 6.
    """
    n = rep.dim
    if n == 1:
        return True
    mats = [m for m in rep.mats.values()]
    if not mats:
        return False
    x2 = rep.mats.get(X2)
    if x2 is not None and _distinct_diagonal(x2):
        for i in range(n):
            e = linalg.zeros(n, 1, rep.mode)[:, 0]
            e[i] = FieldElem.from_int(1, rep.mode)
            if linalg.span_closure([e], mats, rep.mode) < n:
                return False
        return True
    if n <= BURNSIDE_MAX_DIM:
        return generated_algebra_dim(mats, rep.mode) == n * n
    raise Unsupported(f"simplicity test needs x2 diagonal with distinct entries or dim <= {BURNSIDE_MAX_DIM}")


# ---------------------------------------------------------------------------
# Invariants of the cyclic modules
# ---------------------------------------------------------------------------


def fingerprints(rep: MatrixRep) -> dict:
    """Determinants and traces of the x2 and z0 actions."""
    mode = rep.mode
    x2, z0 = rep.action(X2), rep.action(0)
    return {"det_x2": linalg.det(x2, mode), "det_z0": linalg.det(z0, mode),
            "tr_x2": linalg.trace(x2, mode), "tr_z0": linalg.trace(z0, mode)}


def cyclic_det_formulas(a: FieldElem, b: FieldElem, N: int) -> dict:
    """Closed forms det(x2) = a^N q^(N(N-1)/2) and det(z0) = (-1)^(N-1) b."""
    q = FieldElem.q(a.mode)
    return {"det_x2": a ** N * q ** (N * (N - 1) // 2), "det_z0": b * (-1) ** (N - 1)}


def cyclic_class_invariant(a: FieldElem, b: FieldElem, N: int) -> tuple:
    """(a^N, b) is constant on the orbit a -> a q^i, which permutes the basis."""
    return (a ** N, b)


def cyclic_isomorphism_witness(a: FieldElem, b: FieldElem, shift: int, params: AlgebraParams) -> bool:
    """Check that the module with a*q^shift is the one with a, with basis rotated."""
    mode = params.q
    N = mode.order
    q = FieldElem.q(mode)
    m1 = build_qp_module(QPModuleSpec.cyclic(a, b, mode))
    m2 = build_qp_module(QPModuleSpec.cyclic(a * q ** shift, b, mode))
    # P e_i = e_{i+shift} up to the scalar b on wrap-around: Y^shift applied to the basis
    P = linalg.power(m1.Y, shift % N, mode)
    left_x = linalg.matmul(m1.X, P, mode)
    right_x = linalg.matmul(P, m2.X, mode)
    left_y = linalg.matmul(m1.Y, P, mode)
    right_y = linalg.matmul(P, m2.Y, mode)
    return linalg.equal(left_x, right_x) and linalg.equal(left_y, right_y) and linalg.det(P, mode) != 0


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    """Scalar actions alpha (x1), beta (x2), gamma[n] (z_n)."""

    alpha: FieldElem
    beta: FieldElem
    gamma: tuple

    def values(self) -> dict:
        out = {"alpha": self.alpha, "beta": self.beta}
        for n, g in enumerate(self.gamma):
            out[f"gamma{n}"] = g
        return out

    def to_rep(self) -> MatrixRep:
        mode = self.alpha.mode
        mats = {X1: linalg.from_rows([[self.alpha]], mode), X2: linalg.from_rows([[self.beta]], mode)}
        for n, g in enumerate(self.gamma):
            mats[n] = linalg.from_rows([[g]], mode)
        return MatrixRep(1, mats, mode)


def character_of(rep: MatrixRep, params: AlgebraParams) -> Character:
    if rep.dim != 1:
        raise InvalidSpec("only one-dimensional modules have a character")
    return Character(rep.action(X1)[0, 0], rep.action(X2)[0, 0],
                     tuple(rep.action(n)[0, 0] for n in range(params.ghost + 1)))


def character_variables(ghost: int) -> list[str]:
    return ["alpha", "beta"] + [f"gamma{n}" for n in range(ghost + 1)]


def _abelianize(p: NCPoly, mode: QSpec) -> MultiPoly:
    names = {X1: "alpha", X2: "beta"}
    out = MultiPoly({}, mode)
    for w, c in p.terms.items():
        term = MultiPoly.const(c, mode)
        for g in w:
            term = term * MultiPoly.var(names.get(g, f"gamma{g}"), mode)
        out = out + term
    return out


def character_equations(params: AlgebraParams) -> dict[str, MultiPoly]:
    """The defining relations with commuting scalar variables."""
    return {name: _abelianize(rel, params.q) for name, rel in defining_relations(params).items()}


@dataclass
class CharacterFamily:
    """Characters ``var = assignment[var](free)``; variables not assigned are free."""

    assignment: dict
    free: tuple
    condition: str = ""

    @property
    def dimension(self) -> int:
        return len(self.free)

    def contains(self, ch: Character) -> bool:
        vals = ch.values()
        point = {v: vals[v] for v in self.free}
        for v, expr in self.assignment.items():
            if expr.subs(point) != MultiPoly.const(vals[v], expr.mode):
                return False
        return True

    def contains_family(self, other: "CharacterFamily") -> bool:
        def expr(v):
            return other.assignment.get(v) or MultiPoly.var(v, _mode_of(other, self))

        for v, e in self.assignment.items():
            image = e.subs({u: expr(u) for u in self.free})
            if image != expr(v):
                return False
        return True

    def key(self) -> tuple:
        return (self.free, tuple(sorted((v, str(e)) for v, e in self.assignment.items())))

    def to_dict(self) -> dict:
        out = {"free": list(self.free), "fixed": {v: str(e) for v, e in sorted(self.assignment.items())}}
        if self.condition:
            out["condition"] = self.condition
        return out

    def __str__(self):
        fixed = ", ".join(f"{v}={e}" for v, e in sorted(self.assignment.items()))
        return f"[{fixed}; free: {', '.join(self.free) or '-'}]"


def _mode_of(*fams) -> QSpec:
    for f in fams:
        for e in f.assignment.values():
            return e.mode
    return QSpec.generic()


def _solve(eqs: list[MultiPoly], assignment: dict, variables: list[str]) -> list[dict]:
    """Case-splitting solver for the small systems met here.

    Linear equations with a constant pivot are used to eliminate; a
    remaining monomial equation splits into one branch per variable.
    """
    live = []
    for e in eqs:
        e = e.subs(assignment) if assignment else e
        if e.is_zero():
            continue
        if e.is_constant():
            return []
        live.append(e)
    if not live:
        return [assignment]
    for e in live:
        for v in sorted(e.variables()):
            val = e.solve_linear(v)
            if val is not None:
                new = {u: x.subs({v: val}) for u, x in assignment.items()}
                new[v] = val
                return _solve(live, new, variables)
    for e in live:
        if len(e.terms) == 1:
            (mono, _), = e.terms.items()
            out = []
            for v, _ in mono:
                zero = MultiPoly({}, e.mode)
                new = {u: x.subs({v: zero}) for u, x in assignment.items()}
                new[v] = zero
                out.extend(_solve(live, new, variables))
            return out
    raise Unsupported(f"cannot split the equation {live[0]}")


def _solve_families(params: AlgebraParams, condition: str) -> list[CharacterFamily]:
    variables = character_variables(params.ghost)
    sols = _solve(list(character_equations(params).values()), {}, variables)
    fams = []
    for s in sols:
        free = tuple(v for v in variables if v not in s)
        fams.append(CharacterFamily(dict(s), free, condition))
    # drop duplicates and families contained in others
    uniq = {}
    for f in fams:
        uniq.setdefault(f.key(), f)
    fams = list(uniq.values())
    maximal = [f for f in fams
               if not any(g is not f and g.contains_family(f) and not f.contains_family(g) for g in fams)]
    maximal.sort(key=lambda f: (-f.dimension, f.key()))
    return maximal


def solve_characters(params: AlgebraParams) -> list[CharacterFamily]:
    """All characters, as maximal families.

    For symbolic q the answer is split into the cases q != 1 (solved with
    q generic) and q = 1 (solved at q = 1).
    """
    if params.q.is_generic:
        return (_solve_families(params, "q != 1")
                + _solve_families(AlgebraParams(params.ghost, QSpec.numeric(1)), "q = 1"))
    return _solve_families(params, "q = 1" if params.q.is_one else "q != 1")


def expected_character_families(params: AlgebraParams) -> list[CharacterFamily]:
    """Pullbacks of the quantum-plane characters, as families."""
    mode = params.q
    zero = MultiPoly({}, mode)
    G = params.ghost
    if params.q.is_one:
        return [CharacterFamily({"alpha": zero, **{f"gamma{n}": zero for n in range(1, G + 1)}},
                                ("beta", "gamma0"), "q = 1")]
    fx = CharacterFamily({"alpha": zero, **{f"gamma{n}": zero for n in range(G + 1)}}, ("beta",), "q != 1")
    fy = CharacterFamily({"alpha": zero, "beta": zero, **{f"gamma{n}": zero for n in range(1, G + 1)}},
                         ("gamma0",), "q != 1")
    return [fx, fy]


def same_families(a: list[CharacterFamily], b: list[CharacterFamily]) -> bool:
    return sorted(f.key() for f in a) == sorted(f.key() for f in b)


# ---------------------------------------------------------------------------
# No module with z_G invertible: bounded search in the eigenspace block shape
# ---------------------------------------------------------------------------


@dataclass
class ObstructionResult:
    N: int
    block: int
    lam: FieldElem
    feasible: bool
    trace_residual: FieldElem
    expected_trace: FieldElem
    rep_check_passed: bool
    details: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return (not self.feasible and self.trace_residual == self.expected_trace
                and bool(self.expected_trace) and not self.rep_check_passed)


def _random_invertible(l: int, mode: QSpec, rng: random.Random) -> np.ndarray:
    while True:
        m = linalg.from_rows([[rng.randint(-3, 3) for _ in range(l)] for _ in range(l)], mode)
        if linalg.det(m, mode):
            return m


def _place(big: np.ndarray, block: np.ndarray, i: int, j: int, l: int):
    big[i * l:(i + 1) * l, j * l:(j + 1) * l] = block


def topz_invertible_obstruction(N: int, l: int, rng: random.Random | None = None,
                                lam=None) -> ObstructionResult:
    """Try to build a module of the ghost-1 algebra (x1 = 0) of dimension l*N with z1 invertible.

    z1 = diag(lam q^i) on blocks, z0 a block cycle with A in the corner and
    x2 a block anti-cycle with blocks B_1..B_N.  With A, B_1 invertible and
    fixed, the x2-z0 bracket relation is linear in B_2..B_N; we show that
    system is inconsistent, and certify it by the trace of the last block
    equation after eliminating B_2..B_N, which equals -l*N*lam*q^(N-1).
    """
    rng = rng or random.Random(0)
    mode = QSpec.root(N)
    params = AlgebraParams(1, mode)
    q = FieldElem.q(mode)
    lam = FieldElem.coerce(lam if lam is not None else rng.choice([1, 2, 3, -1, Fraction(1, 2)]), mode)
    n = l * N
    I = linalg.identity(l, mode)
    A = _random_invertible(l, mode, rng)
    B1 = _random_invertible(l, mode, rng)
    lams = [lam * q ** i for i in range(N)]

    z1 = linalg.zeros(n, n, mode)
    z0 = linalg.zeros(n, n, mode)
    for i in range(N):
        _place(z1, linalg.scale(I, lams[i]), i, i, l)
        if i + 1 < N:
            _place(z0, I, i + 1, i, l)
    _place(z0, A, 0, N - 1, l)

    def x2_of(Bs):
        x2 = linalg.zeros(n, n, mode)
        for i in range(N - 1):
            _place(x2, Bs[i + 1], i, i + 1, l)
        _place(x2, Bs[0], N - 1, 0, l)
        return x2

    # relation x2 z0 - q z0 x2 - z1 = 0 is affine in the unknown blocks B_2..B_N
    unknown = (N - 1) * l * l

    def residual(vec):
        Bs = [B1]
        for k in range(N - 1):
            blk = linalg.zeros(l, l, mode)
            for r in range(l):
                for c in range(l):
                    blk[r, c] = vec[k * l * l + r * l + c]
            Bs.append(blk)
        x2 = x2_of(Bs)
        rel = linalg.add(linalg.add(linalg.matmul(x2, z0, mode),
                                    linalg.scale(linalg.matmul(z0, x2, mode), -q)),
                         linalg.scale(z1, FieldElem.from_int(-1, mode)))
        rel2 = linalg.add(linalg.matmul(x2, z1, mode), linalg.scale(linalg.matmul(z1, x2, mode), -q))
        return list(rel.flat) + list(rel2.flat), x2

    zero_vec = [FieldElem.from_int(0, mode)] * unknown
    base, _ = residual(zero_vec)
    cols = []
    for k in range(unknown):
        e = list(zero_vec)
        e[k] = FieldElem.from_int(1, mode)
        r, _ = residual(e)
        cols.append([x - y for x, y in zip(r, base)])
    rows = [[cols[k][i] for k in range(unknown)] + [-base[i]] for i in range(len(base))]
    aug = linalg.from_rows(rows, mode) if unknown else linalg.from_rows([[-x] for x in base], mode)
    _, pivots = linalg.rref(aug)
    feasible = unknown not in pivots

    # elimination certificate: B_{k+1} = q B_k + lam_{k-1} (k >= 2), B_2 = q A B_1 + lam
    Bs = [B1, linalg.add(linalg.scale(linalg.matmul(A, B1, mode), q), linalg.scale(I, lams[0]))]
    for k in range(2, N):
        Bs.append(linalg.add(linalg.scale(Bs[-1], q), linalg.scale(I, lams[k - 1])))
    last = linalg.add(linalg.add(linalg.matmul(B1, A, mode), linalg.scale(Bs[-1], -q)),
                      linalg.scale(I, -lams[N - 1]))
    trace_res = linalg.trace(last, mode)
    expected = lams[N - 1] * (-n)
    # the candidate built from the forced blocks must violate some relation
    mats = {X2: x2_of(Bs), 0: z0, 1: z1}
    rc = rep_check(MatrixRep(n, mats, mode), params)
    return ObstructionResult(N, l, lam, feasible, trace_res, expected, rc.passed,
                             {"failed_relations": [c.label for c in rc.failures()]})

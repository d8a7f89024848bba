"""Point modules: sequences of projective points (a_i : b_i : c_i) with
x1 v_i = a_i v_{i+1}, x2 v_i = b_i v_{i+1}, z0 v_i = c_i v_{i+1}.

The algebra is generated in degree one by x1, x2, z0, so every relation is
rewritten in those letters (z_n = sum_k C(n,k) (-q)^k x2^(n-k) z0 x2^k)
and evaluated on each v_i as a sum of products of sequence scalars.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import InvalidSpec, NotOnVariety, PreconditionError, RelationFailure, SystemFailure, IdentityFailure
from .pbw_engine import X1, X2, AlgebraParams, NCPoly, defining_relations, substitute, z_binomial_expansion
from .report import Report
from .scalars import FieldElem, MultiPoly, QSpec, partial_fraction_identity
from .scalars.parse import parse_scalar

_COORD = {X1: 0, X2: 1, 0: 2}


# ---------------------------------------------------------------------------
# Points and sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^2, stored with its first nonzero coordinate equal to 1."""

    a: FieldElem
    b: FieldElem
    c: FieldElem

    def __post_init__(self):
        coords = (self.a, self.b, self.c)
        lead = next((x for x in coords if x), None)
        if lead is None:
            raise InvalidSpec("(0:0:0) is not a projective point")
        if not lead.is_one():
            inv = lead.inverse()
            object.__setattr__(self, "a", self.a * inv)
            object.__setattr__(self, "b", self.b * inv)
            object.__setattr__(self, "c", self.c * inv)

    @classmethod
    def make(cls, a, b, c, mode: QSpec) -> "ProjPoint":
        f = lambda x: FieldElem.coerce(x, mode)  # noqa: E731
        return cls(f(a), f(b), f(c))

    @classmethod
    def parse(cls, text: str, mode: QSpec) -> "ProjPoint":
        """Parse ``"a:b:c"``, each coordinate in the scalar grammar."""
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidSpec(f"expected three coordinates a:b:c, got {text!r}")
        return cls(*(parse_scalar(p, mode) for p in parts))

    @property
    def coords(self) -> tuple:
        return (self.a, self.b, self.c)

    @property
    def mode(self) -> QSpec:
        return self.a.mode

    def __str__(self):
        return f"({self.a}:{self.b}:{self.c})"

    def to_list(self) -> list[str]:
        return [str(x) for x in self.coords]


@dataclass
class PointSequence:
    """Truncated point module P_0..P_D (the gauge is the normalised representative)."""

    params: AlgebraParams
    pts: list

    def __len__(self):
        return len(self.pts)

    @property
    def depth(self) -> int:
        return len(self.pts) - 1

    def coords(self) -> list[tuple]:
        return [p.coords for p in self.pts]

    def consecutive_ok(self) -> bool:
        """The two quadratic constraints between neighbouring points."""
        q = self.params.qe
        half = FieldElem.from_fraction(Fraction(1, 2), self.params.q)
        for (a0, b0, c0), (a1, b1, c1) in zip(self.coords(), self.coords()[1:]):
            if a0 * b1 - a1 * b0 + half * a0 * a1 or a1 * c0 - q * a0 * c1:
                return False
        return True

    def to_dict(self) -> dict:
        return {"ghost": self.params.ghost, "q": str(self.params.q), "points": [p.to_list() for p in self.pts]}


# ---------------------------------------------------------------------------
# Relations in degree-one letters and their action
# ---------------------------------------------------------------------------


@lru_cache(maxsize=32)
def point_relations(params: AlgebraParams) -> dict[str, NCPoly]:
    """Defining relations with every z_n (n >= 1) expanded in x2 and z0.

    The bracket relations x2 z_n - q z_n x2 - z_{n+1} become identically zero
    and are dropped.
    """
    images = {n: z_binomial_expansion(n, params) for n in range(1, params.ghost + 1)}
    out = {}
    for name, rel in defining_relations(params).items():
        expanded = substitute(rel, images)
        if not expanded.is_zero():
            out[name] = expanded
    return out


def relation_degree(rel: NCPoly) -> int:
    return max(len(w) for w in rel.terms)


def word_action(word, coords, i):
    """Scalar by which ``word`` maps v_i to v_{i+len}; the rightmost letter acts first."""
    k = len(word)
    prod = None
    for t in range(k):
        x = coords[i + t][_COORD[word[k - 1 - t]]]
        prod = x if prod is None else prod * x
    return prod


def relation_value(rel: NCPoly, coords, i, zero):
    acc = zero
    for w, c in rel.terms.items():
        acc = acc + word_action(w, coords, i) * c
    return acc


def relation_values(params: AlgebraParams, coords, zero) -> list[tuple[str, int, object]]:
    """(name, i, value) for every relation and every v_i inside the window."""
    out = []
    for name, rel in point_relations(params).items():
        d = relation_degree(rel)
        for i in range(len(coords) - d + 1):
            out.append((name, i, relation_value(rel, coords, i, zero)))
    return out


def verify_truncated(seq: PointSequence, strict: bool = False) -> Report:
    """Check that every relation annihilates every v_i within the window."""
    params = seq.params
    if len(seq) < params.ghost + 3:
        raise PreconditionError(f"need at least {params.ghost + 3} points, got {len(seq)}")
    zero = FieldElem.from_int(0, params.q)
    report = Report("verify_truncated", info={"ghost": params.ghost, "q": str(params.q), "points": len(seq)})
    for name, i, v in relation_values(params, seq.coords(), zero):
        report.add(f"{name}@v{i}", not v, None if not v else str(v))
    if strict:
        report.raise_if_failed(RelationFailure)
    return report


def failure_depth(seq: PointSequence) -> int | None:
    """Smallest k such that the first k points already violate a relation."""
    params = seq.params
    zero = FieldElem.from_int(0, params.q)
    best = None
    for name, rel in point_relations(params).items():
        d = relation_degree(rel)
        for i in range(len(seq) - d + 1):
            if relation_value(rel, seq.coords(), i, zero):
                k = i + d
                best = k if best is None else min(best, k)
                break
    return best


def a_trichotomy_holds(seq: PointSequence) -> bool:
    """a_0 = 0, some a_i = 0 and all a_i = 0 are equivalent."""
    zs = [not p.a for p in seq.pts]
    return zs[0] == any(zs) == all(zs)


# ---------------------------------------------------------------------------
# Propagation
# ---------------------------------------------------------------------------


def propagate(p0: ProjPoint, params: AlgebraParams, depth: int) -> PointSequence:
    """The unique continuation of P_0 to P_0..P_depth.

    (1:b:0) moves along b -> b - 1/2, (0:1:c) along c -> c/q, and (0:0:1)
    is constant.  Points with a*c != 0 start no point module.
    """
    if p0.mode != params.q:
        raise InvalidSpec(f"point over {p0.mode} used with algebra over {params.q}")
    if depth < 0:
        raise InvalidSpec("depth must be nonnegative")
    mode = params.q
    q = params.qe
    a, b, c = p0.coords
    if a and c:
        raise NotOnVariety(f"{p0} has a*c != 0, so it lies off the variety a*c = 0")
    half = FieldElem.from_fraction(Fraction(1, 2), mode)
    pts = []
    for i in range(depth + 1):
        if a:
            pts.append(ProjPoint(a, b - half * i, c))
        elif b:
            pts.append(ProjPoint(a, b, c * q ** (-i)))
        else:
            pts.append(p0)
    return PointSequence(params, pts)


def forced_continuation(p0: ProjPoint, params: AlgebraParams, depth: int) -> PointSequence:
    """Continuation dictated by the quadratic neighbour constraints alone.

    Unlike :func:`propagate` this accepts a*c != 0, which is how the
    failure of such points is located.
    """
    mode = params.q
    q = params.qe
    half = FieldElem.from_fraction(Fraction(1, 2), mode)
    a, b, c = p0.coords
    if not a:
        return propagate(p0, params, depth)
    return PointSequence(params, [ProjPoint(a, b - half * i, c * q ** (-i)) for i in range(depth + 1)])


# ---------------------------------------------------------------------------
# The z_n action table
# ---------------------------------------------------------------------------


class ZetaTable:
    """zeta(i, n): the scalar with z_n v_i = zeta(i, n) v_{i+n+1}.

    Built from lists ``b`` and ``c`` (FieldElem or MultiPoly) by
    zeta(i, 0) = c_i, zeta(i, n) = zeta(i, n-1) b_{i+n} - q b_i zeta(i+1, n-1).
    """

    def __init__(self, b: list, c: list, q: FieldElem):
        self.b = list(b)
        self.c = list(c)
        self.q = q
        self._memo: dict = {}

    @classmethod
    def from_sequence(cls, seq: PointSequence) -> "ZetaTable":
        return cls([p.b for p in seq.pts], [p.c for p in seq.pts], seq.params.qe)

    def zeta(self, i: int, n: int):
        if i + n >= len(self.b):
            raise IndexError(f"zeta({i},{n}) needs points beyond the table")
        key = (i, n)
        if key not in self._memo:
            if n == 0:
                v = self.c[i]
            else:
                v = self.zeta(i, n - 1) * self.b[i + n] - self.b[i] * self.zeta(i + 1, n - 1) * self.q
            self._memo[key] = v
        return self._memo[key]

    def beta(self, j: int, n: int):
        out = self.b[j]
        for h in range(1, n + 1):
            out = out * self.b[j + h]
        return out

    def lam(self, j: int, n: int):
        """lambda_j^(0) = c_j / b_j and lambda_j^(n+1) = lambda_j^(n) - q lambda_{j+1}^(n)."""
        if n == 0:
            return self.c[j] / self.b[j]
        return self.lam(j, n - 1) - self.lam(j + 1, n - 1) * self.q

    def b_without(self, i: int, n: int, k: int):
        """prod_{h in [0, n], h != k} b_{i+h}."""
        out = None
        for h in range(n + 1):
            if h != k:
                out = self.b[i + h] if out is None else out * self.b[i + h]
        return out if out is not None else 1

    def binomial_form(self, i: int, n: int):
        """sum_k C(n,k) (-q)^k zeta(i+k, 0) prod_{h != k} b_{i+h}."""
        acc = None
        for k in range(n + 1):
            term = self.c[i + k] * self.b_without(i, n, k) * ((-self.q) ** k * comb(n, k))
            acc = term if acc is None else acc + term
        return acc

    def closed_form(self, i: int, n: int):
        return self.beta(i, n) * self.lam(i, n)


def top_serre_on_v0(seq: PointSequence):
    """The vanishing degree G+2 element applied to v_0 (coefficient of v_{G+2})."""
    params = seq.params
    rel = point_relations(params)["x2_ztop"]
    return relation_value(rel, seq.coords(), 0, FieldElem.from_int(0, params.q))


def top_serre_sum_formula(seq: PointSequence):
    """sum_i C(G+1,i) (-q)^i b_0..b_{i-1} b_{i+1}..b_{G+1} c_i."""
    zt = ZetaTable.from_sequence(seq)
    return zt.binomial_form(0, seq.params.ghost + 1)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


@dataclass
class Component:
    name: str
    pattern: str
    dimension: int

    def contains(self, p: ProjPoint) -> bool:
        if self.name == "B":
            return p.a.is_one() and not p.c
        if self.name == "C":
            return not p.a and p.b.is_one()
        return not p.a and not p.b

    def to_dict(self) -> dict:
        return {"name": self.name, "pattern": self.pattern, "dimension": self.dimension}


EXPECTED_COMPONENTS = (
    Component("B", "(1:b:0)", 1),
    Component("C", "(0:1:c)", 1),
    Component("point", "(0:0:1)", 0),
)


@dataclass
class Classification:
    params: AlgebraParams
    depth: int
    components: list
    excluded: str
    failure_depth: int | None
    kappa: FieldElem | None
    reports: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return all(r.passed for r in self.reports.values())

    def matches_expected(self) -> bool:
        return self.certified and [c.to_dict() for c in self.components] == [c.to_dict() for c in EXPECTED_COMPONENTS]

    def contains(self, p: ProjPoint) -> bool:
        return any(c.contains(p) for c in self.components)

    def to_dict(self) -> dict:
        return {
            "ghost": self.params.ghost,
            "q": str(self.params.q),
            "depth": self.depth,
            "components": [c.to_dict() for c in self.components],
            "excluded": self.excluded,
            "failure_depth": self.failure_depth,
            "kappa": None if self.kappa is None else str(self.kappa),
            "certified": self.certified,
            "reports": {k: r.to_dict() for k, r in self.reports.items()},
        }


def check_classify_precondition(params: AlgebraParams, depth: int) -> None:
    G = params.ghost
    if depth < G + 3:
        raise PreconditionError(f"depth must be at least G+3 = {G + 3}")
    q = params.q
    if q.kind == "numeric" and q.value in (1, -1):
        raise PreconditionError("q = 1 and q = -1 are roots of unity of small order")
    if q.kind == "root" and q.order <= depth:
        raise PreconditionError(f"q of order {q.order} <= depth {depth} is outside the supported range")


def _var(name, mode):
    return MultiPoly.var(name, mode)


def _const(x, mode):
    return MultiPoly.const(FieldElem.coerce(x, mode), mode)


def _nonzero_ratio(p: MultiPoly, ref: MultiPoly):
    r = p.scalar_ratio(ref)
    return r if r is not None and r else None


def _branch_a(params: AlgebraParams, depth: int) -> tuple[Report, int | None, FieldElem | None]:
    """a_0 != 0: the sequence is forced and c_0 must vanish."""
    mode = params.q
    G = params.ghost
    q = params.qe
    rels = point_relations(params)
    zero = MultiPoly({}, mode)
    one, nil = _const(1, mode), zero
    b, c, u, w = (_var(n, mode) for n in ("b", "c", "u", "w"))
    rep = Report("branch_a")

    # a_i != 0 forces a_{i+1} != 0 and conversely
    coords = [(one, b, c), (nil, u, w)]
    j = relation_value(rels["jordan"], coords, 0, zero)
    x = relation_value(rels["x1_z0"], coords, 0, zero)
    rep.add("a_nonvanishing_forward", _nonzero_ratio(j, u) is not None and _nonzero_ratio(x, w) is not None,
            {"jordan": str(j), "x1_z0": str(x)})
    coords = [(nil, u, w), (one, b, c)]
    j = relation_value(rels["jordan"], coords, 0, zero)
    x = relation_value(rels["x1_z0"], coords, 0, zero)
    rep.add("a_nonvanishing_backward", _nonzero_ratio(j, u) is not None and _nonzero_ratio(x, w) is not None,
            {"jordan": str(j), "x1_z0": str(x)})

    # with a_i = a_{i+1} = 1 the neighbour constraints are linear in the next point
    coords = [(one, b, c), (one, u, w)]
    nb = relation_value(rels["jordan"], coords, 0, zero).solve_linear("u")
    nc = relation_value(rels["x1_z0"], coords, 0, zero).solve_linear("w")
    half = FieldElem.from_fraction(Fraction(1, 2), mode)
    rep.add("forced_continuation", nb == b - half and nc == c * q.inverse(),
            {"next_b": str(nb), "next_c": str(nc)})

    # evaluate everything on the forced symbolic sequence
    seq = [(one, b - half * i, c * q ** (-i)) for i in range(depth + 1)]
    first = None
    kappa = None
    in_ideal = True
    for name, rel in rels.items():
        d = relation_degree(rel)
        for i in range(len(seq) - d + 1):
            v = relation_value(rel, seq, i, zero)
            if v.subs({"c": 0}):
                in_ideal = False
            if v and (first is None or i + d < first[0]):
                first = (i + d, name, i, v)
    rep.add("line_c0_zero_survives", in_ideal)
    expected = FieldElem.from_fraction(Fraction((-1) ** (G + 1) * factorial(G + 1), 2 ** (G + 1)), mode)
    if first is not None:
        k = first[3].scalar_ratio(c)
        kappa = k
        rep.add("first_obstruction_is_multiple_of_c0", k is not None and bool(k),
                {"relation": first[1], "vertex": first[2], "value": str(first[3])})
        rep.add("obstruction_constant", k == expected, {"kappa": str(k), "expected": str(expected)})
        rep.add("obstruction_depth", first[0] == G + 2, {"depth": first[0]})
    else:
        rep.add("first_obstruction_is_multiple_of_c0", False, "no obstruction found in window")
    rep.add("partial_fraction_identity", partial_fraction_identity(G + 1))
    return rep, (first[0] if first else None), kappa


def _system_linear(lam, g, j, q):
    """lambda^(g)_j - q lambda^(g)_{j+1} from the table ``lam[n][j]``."""
    return lam[g][j] - lam[g][j + 1] * q


def _system_quadratic(lam, n, j, q):
    return lam[n][j] * lam[n + 1][j + n + 1] - lam[n + 1][j] * lam[n][j + n + 2] * q


def lambda_table(base: list, levels: int, q: FieldElem) -> list[list]:
    """lam[n][j] with lam[0] = base and lam[n+1][j] = lam[n][j] - q lam[n][j+1]."""
    table = [list(base)]
    for _ in range(levels):
        prev = table[-1]
        table.append([prev[j] - prev[j + 1] * q for j in range(len(prev) - 1)])
    return table


def _branch_b(params: AlgebraParams, depth: int) -> Report:
    """a_0 = 0, all b_i != 0: relations reduce to the lambda system."""
    mode = params.q
    G = params.ghost
    q = params.qe
    zero = MultiPoly({}, mode)
    one = _const(1, mode)
    rep = Report("branch_b")

    x = _var("c", mode)
    seq = [(zero, one, x * q ** (-i)) for i in range(depth + 1)]
    ok = all(not v for _, _, v in relation_values(params, seq, zero))
    rep.add("line_survives", ok)

    lams = [_var(f"l{j}", mode) for j in range(depth + 1)]
    seq = [(zero, one, lams[j]) for j in range(depth + 1)]
    table = lambda_table(lams, G + 1, q)
    matched = True
    for name, i, v in relation_values(params, seq, zero):
        if name == "x2_ztop":
            ref = _system_linear(table, G, i, q)
        elif name.startswith("z_chain["):
            n = int(name[len("z_chain["):-1])
            ref = _system_quadratic(table, n, i, q)
        else:
            ref = zero
        if ref.is_zero():
            good = v.is_zero()
        else:
            good = _nonzero_ratio(v, ref) is not None
        if not good:
            matched = False
            rep.add(f"matches_system[{name}@v{i}]", False, str(v))
    rep.add("relations_match_system", matched)
    elim = elimination_identities(G)
    rep.add("elimination_identities", elim.passed)
    if depth >= 2 * G:
        try:
            sol = eliminate_system(G, depth, mode, _var("x", mode))
            rep.add("unique_continuation", sol.passed, sol.info.get("window"))
        except SystemFailure as exc:
            rep.add("unique_continuation", False, str(exc))
    return rep


def _branch_c(params: AlgebraParams) -> Report:
    """a_0 = 0 and some b_i = 0: polynomial identities behind the step argument."""
    mode = params.q
    G = params.ghost
    q = params.qe
    rels = point_relations(params)
    zero = MultiPoly({}, mode)
    one = _const(1, mode)
    rep = Report("branch_c")
    width = 2 * G + 2
    bs = [_var(f"b{k}", mode) for k in range(width + 1)]
    cs = [_var(f"c{k}", mode) for k in range(width + 1)]

    def coords(bb, cc):
        return [(zero, bb[k], cc[k]) for k in range(len(bb))]

    # general shape of the degree 2n+3 and top relations in terms of zeta
    zt = ZetaTable(bs, cs, q)
    for n in range(G):
        v = relation_value(rels[f"z_chain[{n}]"], coords(bs, cs), 0, zero)
        ref = (zt.zeta(0, n) * zt.zeta(n + 1, n) * bs[2 * n + 2]
               - zt.zeta(0, n) * zt.zeta(n + 2, n) * bs[n + 1] * (2 * q)
               + zt.zeta(1, n) * zt.zeta(n + 2, n) * bs[0] * q ** 2)
        rep.add(f"chain_zeta_form[{n}]", _nonzero_ratio(v, ref) is not None)
    v = relation_value(rels["x2_ztop"], coords(bs, cs), 0, zero)
    ref = zt.zeta(0, G) * bs[G + 1] - bs[0] * zt.zeta(1, G) * q
    rep.add("top_zeta_form", _nonzero_ratio(v, ref) is not None)
    for n in range(1, G + 1):
        rep.add(f"zeta_binomial_form[{n}]", zt.zeta(0, n) == zt.binomial_form(0, n))

    # b_i = 0, c_i = 1: b_{i+1} = 0 iff b_{i+2} = 0
    b_ = [zero] + bs[1:]
    c_ = [one] + cs[1:]
    v = relation_value(rels["z_chain[0]"], coords(b_, c_), 0, zero)
    rep.add("step_neighbours", _nonzero_ratio(v, cs[1] * bs[2] - cs[2] * bs[1] * (2 * q)) is not None, str(v))
    # b_t = b_{t+1} = 0 with t > 0 forces b_{t-1} c_t c_{t+1} = 0
    b_ = [bs[0], zero, zero] + bs[3:]
    v = relation_value(rels["z_chain[0]"], coords(b_, cs), 0, zero)
    rep.add("step_minimal_pair", _nonzero_ratio(v, bs[0] * cs[1] * cs[2]) is not None, str(v))
    # with b_i = 0 the zeta of v_i collapses to c_i b_{i+1}..b_{i+n}
    b_ = [zero] + bs[1:]
    zt0 = ZetaTable(b_, cs, q)
    for n in range(1, G + 1):
        prod = cs[0]
        for h in range(1, n + 1):
            prod = prod * bs[h]
        rep.add(f"collapse[{n}]", zt0.zeta(0, n) == prod)
    for n in range(1, G):
        # b_{i+2n+2} = 0: zeta_{i+n+2}^(n) = (-q)^n c_{i+2n+2} b_{i+n+2}..b_{i+2n+1}
        bb = list(bs)
        bb[2 * n + 2] = zero
        z = ZetaTable(bb, cs, q).zeta(n + 2, n)
        prod = cs[2 * n + 2] * (-q) ** n
        for h in range(n + 2, 2 * n + 2):
            prod = prod * bs[h]
        rep.add(f"step_even_gap[{n}]", z == prod)
        # b_{i+2n+1} = 0: the two zetas combine to (1 + 2n)(-q)^n c b..b b_{i+2n+2}
        bb = list(bs)
        bb[2 * n + 1] = zero
        t = ZetaTable(bb, cs, q)
        lhs = t.zeta(n + 1, n) * bb[2 * n + 2] - t.zeta(n + 2, n) * bb[n + 1] * (2 * q)
        prod = cs[2 * n + 1] * (-q) ** n * (1 + 2 * n) * bs[2 * n + 2]
        for h in range(n + 1, 2 * n + 1):
            prod = prod * bs[h]
        rep.add(f"step_odd_gap[{n}]", lhs == prod)
    # final: with b_i = 0 the top relation is c_i b_{i+1} .. b_{i+G+1}
    b_ = [zero] + bs[1:]
    v = relation_value(rels["x2_ztop"], coords(b_, cs), 0, zero)
    prod = cs[0]
    for h in range(1, G + 2):
        prod = prod * bs[h]
    rep.add("top_forces_zero_b", _nonzero_ratio(v, prod) is not None, str(v))
    return rep


def classify_truncated(params: AlgebraParams, depth: int) -> Classification:
    """All P_0 admitting a consistent sequence P_0..P_depth.

    Case a_0 != 0 is forced by the neighbour constraints and dies unless
    c_0 = 0; case a_0 = 0, b_0 != 0 survives for every c; the remaining
    point (0:0:1) gives the constant sequence.  Each branch carries the
    symbolic certificates it relies on.
    """
    check_classify_precondition(params, depth)
    mode = params.q
    rep_a, fdepth, kappa = _branch_a(params, depth)
    rep_b = _branch_b(params, depth)
    rep_c = _branch_c(params)
    const = propagate(ProjPoint.make(0, 0, 1, mode), params, depth)
    rep_p = Report("point")
    rep_p.add("constant_sequence", verify_truncated(const).passed)
    components = []
    if rep_a.passed:
        components.append(EXPECTED_COMPONENTS[0])
    if rep_b.checks[0].passed:
        components.append(EXPECTED_COMPONENTS[1])
    if rep_p.passed:
        components.append(EXPECTED_COMPONENTS[2])
    return Classification(params, depth, components, "a0*c0 != 0", fdepth, kappa,
                          {"branch_a": rep_a, "branch_b": rep_b, "branch_c": rep_c, "point": rep_p})


# ---------------------------------------------------------------------------
# The lambda systems
# ---------------------------------------------------------------------------


def system_equations(g: int, base: list, q: FieldElem) -> list[tuple[str, object]]:
    """Every equation of the level-g system whose indices fit in ``base``."""
    J = len(base) - 1
    table = lambda_table(base, g + 1, q)
    eqs = []
    for j in range(J - g):
        eqs.append((f"linear[{j}]", _system_linear(table, g, j, q)))
    for n in range(g):
        for j in range(J - 2 * n - 1):
            eqs.append((f"quadratic[{n},{j}]", _system_quadratic(table, n, j, q)))
    return eqs


def eliminate_system(g: int, J: int, mode: QSpec, lam0) -> Report:
    """Solve the truncated level-g system by descending elimination.

    At level h the linear equations lambda^(h+1)_j = 0 are imposed; the
    quadratic with n = h-1 must then reduce to a nonzero multiple of
    (lambda^(h)_j)^2, so lambda^(h)_0 = 0 is imposed next.  At the end every
    lambda_j must equal q^-j lambda_0.
    """
    if J < 2 * g:
        raise PreconditionError(f"elimination needs J >= 2g = {2 * g}")
    q = FieldElem.q(mode)
    names = [f"l{j}" for j in range(J + 1)]
    subst: dict = {"l0": lam0 if isinstance(lam0, MultiPoly) else MultiPoly.const(FieldElem.coerce(lam0, mode), mode)}
    rep = Report("eliminate_system", info={"g": g, "J": J, "q": str(mode)})

    def reduce(p: MultiPoly) -> MultiPoly:
        return p.subs(subst)

    def impose(p: MultiPoly, label: str):
        p = reduce(p)
        if p.is_zero():
            return
        idx = sorted((int(v[1:]) for v in p.variables() if v.startswith("l")), reverse=True)
        for k in idx:
            val = p.solve_linear(f"l{k}")
            if val is not None:
                for v in list(subst):
                    subst[v] = subst[v].subs({f"l{k}": val})
                subst[f"l{k}"] = val
                return
        raise SystemFailure(f"{label}: cannot solve {p}", report=rep)

    base = [MultiPoly.var(n, mode) for n in names]
    table = lambda_table(base, g + 1, q)
    window = J - 2 * g
    for j in range(J - g):
        impose(_system_linear(table, g, j, q), f"linear[{j}]")
    for h in range(g, 0, -1):
        for j in range(window + 1):
            quad = reduce(_system_quadratic(table, h - 1, j, q))
            sq = reduce(table[h][j]) ** 2
            k = quad.scalar_ratio(sq)
            ok = sq.is_zero() and quad.is_zero() or (k is not None and bool(k))
            rep.add(f"square[{h},{j}]", ok, None if ok else str(quad))
            if not ok:
                raise SystemFailure(f"quadratic at level {h}, j={j} is not a square multiple", report=rep)
        impose(table[h][0], f"level[{h}]")
    for j in range(J + 1):
        val = reduce(base[j])
        expect = reduce(base[0]) * q ** (-j)
        rep.add(f"geometric[{j}]", val == expect, None if val == expect else str(val))
    rep.info["window"] = window
    return rep


def system_check(g: int, J: int, mode: str = "closed_form", seed: int = 0, strict: bool = False) -> Report:
    """Check that lambda_j = q^-j x solves the level-g system (closed_form), or
    that elimination forces it for random numeric q and lambda_0 (numeric_uniqueness)."""
    if g < 1:
        raise InvalidSpec("g must be positive")
    if J < g + 3:
        raise PreconditionError(f"J must be at least g+3 = {g + 3}")
    if mode == "closed_form":
        qs = QSpec.generic()
        q = FieldElem.q(qs)
        x = MultiPoly.var("x", qs)
        base = [x * q ** (-j) for j in range(J + 1)]
        rep = Report("system_closed_form", info={"g": g, "J": J})
        for label, e in system_equations(g, base, q):
            rep.add(label, e.is_zero(), None if e.is_zero() else str(e))
    elif mode == "numeric_uniqueness":
        rng = random.Random(seed)
        while True:
            qv = Fraction(rng.choice([-1, 1]) * rng.randint(2, 9), rng.randint(1, 7))
            if qv not in (0, 1, -1):
                break
        qs = QSpec.numeric(qv)
        lam0 = Fraction(rng.randint(1, 20), rng.randint(1, 20)) * rng.choice([-1, 1])
        rep = eliminate_system(g, J, qs, lam0)
        rep.name = "system_numeric_uniqueness"
        rep.info.update({"q": str(qv), "lambda0": str(lam0)})
    else:
        raise InvalidSpec(f"unknown mode {mode!r}")
    if strict:
        rep.raise_if_failed(SystemFailure)
    return rep


def elimination_identities(g: int, hmax: int = 6, strict: bool = False) -> Report:
    """Polynomial identities behind the elimination, in variables u = lambda_j,
    v = lambda_{j+1}, w = lambda_{j+2} with q symbolic."""
    mode = QSpec.generic()
    q = FieldElem.q(mode)
    u, v, w = (MultiPoly.var(n, mode) for n in ("u", "v", "w"))
    rep = Report("elimination_identities", info={"g": g})
    first = u - v * (2 * q) + w * q ** 2
    second = u * v - u * w * (2 * q) + v * w * q ** 2
    rep.add("difference", second - v * first == (v * v - u * w) * (2 * q))
    w_sub = (u - v * (2 * q)) * (-(q ** -2))
    rep.add("square", (v * v - u * w).subs({"w": w_sub}) == (v - u * q.inverse()) ** 2)

    def f(h):
        return v * (q ** (1 - h) * h) - u * (q ** (-h) * (h - 1))

    rec = f(0) == u and f(1) == v
    for h in range(hmax - 1):
        rec = rec and f(h + 2) == f(h + 1) * (2 * q.inverse()) - f(h) * q ** -2
    rep.add("recursion", rec)
    rep.add("recursion_h2", f(2) == v * (2 * q.inverse()) - u * q ** -2)
    lhs = u * f(g + 1) - u * f(g + 2) * (2 * q) + v * f(g + 2) * q ** 2
    rep.add("level_square", lhs == (u - v * q) ** 2 * (q ** (-g - 1) * (g + 2)))
    if strict:
        rep.raise_if_failed(IdentityFailure)
    return rep

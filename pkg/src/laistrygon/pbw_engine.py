"""Free-algebra elements on x1, x2, z_0..z_G and straightening to the PBW basis.

Generators are encoded as small integers: ``X1 = -2``, ``X2 = -1`` and
``z_n = n``.  A word is a tuple of generators; the empty tuple is the unit.

The algebra is graded by ``deg x1 = deg x2 = 1`` and ``deg z_n = n + 1``.
Words are compared by weighted degree, then length, then lexicographically with letter
order ``x1 < x2 < z_G < ... < z_0``.  Every rewrite rule

* ``x2 x1   -> x1 x2 - 1/2 x1^2``
* ``z_n x1  -> q^-1 x1 z_n``
* ``z_n x2  -> q^-1 x2 z_n - q^-1 z_{n+1}``   (n < G)
* ``z_G x2  -> q^-1 x2 z_G``
* ``z_m z_n -> q^(m-n) z_n z_m``               (m < n)

replaces a descent by strictly smaller words, so straightening terminates and
the irreducible words are exactly the PBW monomials
``x1^m1 x2^m2 z_G^nG ... z_0^n0``.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import BudgetExceeded, ConfluenceFailure, IdentityFailure, IndexOutOfRange, InvalidSpec, ParseError
from .report import Report
from .scalars import FieldElem, QSpec, binomial
from .scalars.parse import ExprParser

X1 = -2
X2 = -1

Word = tuple

DEFAULT_BUDGET = 10**7


def z(n: int) -> int:
    return n


def gen_name(g: int) -> str:
    if g == X1:
        return "x1"
    if g == X2:
        return "x2"
    return f"z{g}"


def gen_degree(g: int) -> int:
    return 1 if g < 0 else g + 1


def word_degree(word: Word) -> int:
    return sum(1 if g < 0 else g + 1 for g in word)


def _letter_key(g: int):
    # x1 < x2 < z_G < ... < z_0, independent of G
    return (g + 2, 0) if g < 0 else (2, -g)


def word_key(word: Word):
    """Sort key of the monomial order (weighted degree, length, then lex)."""
    return (word_degree(word), len(word), tuple(_letter_key(g) for g in word))


def word_to_str(word: Word) -> str:
    if not word:
        return "1"
    parts = []
    for g, grp in itertools.groupby(word):
        k = len(list(grp))
        parts.append(gen_name(g) if k == 1 else f"{gen_name(g)}^{k}")
    return "*".join(parts)


def is_pbw_word(word: Word) -> bool:
    return all(_letter_key(a) <= _letter_key(b) for a, b in zip(word, word[1:]))


@dataclass(frozen=True)
class AlgebraParams:
    """Discrete parameter ``ghost`` (G >= 1) and the field of q."""

    ghost: int
    q: QSpec = QSpec.generic()

    def __post_init__(self):
        if not isinstance(self.ghost, int) or self.ghost < 1:
            raise InvalidSpec(f"ghost must be a positive integer, got {self.ghost!r}")
        if not isinstance(self.q, QSpec):
            raise InvalidSpec("q must be a QSpec")

    @property
    def mode(self) -> QSpec:
        return self.q

    @property
    def qe(self) -> FieldElem:
        return FieldElem.q(self.q)

    def scalar(self, x) -> FieldElem:
        return FieldElem.coerce(x, self.q)

    def generators(self) -> list[int]:
        return [X1, X2] + list(range(self.ghost, -1, -1))

    def check_gen(self, g: int) -> None:
        if g not in (X1, X2) and not 0 <= g <= self.ghost:
            raise IndexOutOfRange(f"generator z{g} does not exist for ghost={self.ghost}")

    # element shortcuts
    @property
    def x1(self) -> "NCPoly":
        return NCPoly.gen(X1, self.q)

    @property
    def x2(self) -> "NCPoly":
        return NCPoly.gen(X2, self.q)

    def z(self, n: int) -> "NCPoly":
        self.check_gen(n)
        return NCPoly.gen(n, self.q)

    def one(self) -> "NCPoly":
        return NCPoly.scalar(1, self.q)

    def with_ghost(self, ghost: int) -> "AlgebraParams":
        return AlgebraParams(ghost, self.q)


class NCPoly:
    """A finite linear combination of words; ``*`` is concatenation."""

    __slots__ = ("terms", "mode")

    def __init__(self, terms: Mapping[Word, FieldElem] | None = None, mode: QSpec | None = None):
        self.mode = mode or QSpec.generic()
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def gen(cls, g: int, mode: QSpec) -> "NCPoly":
        return cls({(g,): FieldElem.from_int(1, mode)}, mode)

    @classmethod
    def word(cls, word: Iterable[int], mode: QSpec, coeff=1) -> "NCPoly":
        return cls({tuple(word): FieldElem.coerce(coeff, mode)}, mode)

    @classmethod
    def scalar(cls, c, mode: QSpec) -> "NCPoly":
        return cls({(): FieldElem.coerce(c, mode)}, mode)

    @classmethod
    def zero(cls, mode: QSpec) -> "NCPoly":
        return cls({}, mode)

    def _lift(self, other):
        if isinstance(other, NCPoly):
            if other.mode != self.mode:
                raise ValueError(f"cannot mix elements over {self.mode} and {other.mode}")
            return other
        if isinstance(other, (int, Fraction, FieldElem)):
            return NCPoly.scalar(other, self.mode)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in o.terms.items():
            out[w] = out[w] + c if w in out else c
        return NCPoly(out, self.mode)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()}, self.mode)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            c = FieldElem.coerce(other, self.mode)
            return NCPoly({w: a * c for w, a in self.terms.items()}, self.mode)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in o.terms.items():
                w = w1 + w2
                c = c1 * c2
                out[w] = out[w] + c if w in out else c
        return NCPoly(out, self.mode)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, NCPoly):
            if not other.is_scalar():
                raise ValueError("can only divide by a scalar")
            other = other.scalar_value()
        if isinstance(other, (int, Fraction, FieldElem)):
            return self * FieldElem.coerce(other, self.mode).inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if self.is_scalar():
                return NCPoly.scalar(self.scalar_value() ** n, self.mode)
            raise ValueError("negative powers are only defined for scalars")
        out = NCPoly.scalar(1, self.mode)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(not w for w in self.terms)

    def scalar_value(self) -> FieldElem:
        return self.terms.get((), FieldElem.from_int(0, self.mode))

    def coefficient(self, word: Word) -> FieldElem:
        return self.terms.get(tuple(word), FieldElem.from_int(0, self.mode))

    def words(self) -> list[Word]:
        return sorted(self.terms, key=word_key, reverse=True)

    def degrees(self) -> set[int]:
        return {word_degree(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def max_generator_index(self) -> int:
        return max((g for w in self.terms for g in w if g >= 0), default=-1)

    def map_words(self, f) -> "NCPoly":
        out: dict = {}
        for w, c in self.terms.items():
            v = f(w)
            out[v] = out[v] + c if v in out else c
        return NCPoly(out, self.mode)

    def filter(self, keep) -> "NCPoly":
        return NCPoly({w: c for w, c in self.terms.items() if keep(w)}, self.mode)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"NCPoly({str(self)!r})"


def format_element(p: NCPoly) -> str:
    """Print terms in decreasing monomial order, coefficients first."""
    if not p.terms:
        return "0"
    parts = []
    for w in p.words():
        c = p.terms[w]
        neg = c.is_negative()
        mag = -c if neg else c
        if not w:
            body = str(mag) if mag.is_atomic_str() else f"({mag})"
        elif mag.is_one():
            body = word_to_str(w)
        else:
            cs = str(mag) if mag.is_atomic_str() else f"({mag})"
            body = f"{cs}*{word_to_str(w)}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def parse_element(text: str, params: AlgebraParams) -> NCPoly:
    """Parse e.g. ``"x2*x1 - x1*x2 + (1/2)*x1^2"``."""
    mode = params.q

    def ident(name, pos):
        if name == "q":
            return NCPoly.scalar(FieldElem.q(mode), mode)
        if name in ("x1", "x2"):
            return NCPoly.gen(X1 if name == "x1" else X2, mode)
        if name.startswith("z") and name[1:].isdigit():
            n = int(name[1:])
            if n > params.ghost:
                raise ParseError(f"generator {name} out of range for ghost={params.ghost}", text, pos)
            return NCPoly.gen(n, mode)
        raise ParseError(f"unknown symbol {name!r}", text, pos)

    parser = ExprParser(
        number=lambda n: NCPoly.scalar(n, mode),
        ident=ident,
        divide=lambda a, b: a / b,
        power=lambda a, n: a ** n,
    )
    return parser.parse(text)


def substitute(p: NCPoly, images: Mapping[int, NCPoly]) -> NCPoly:
    """Free-algebra homomorphism sending each generator g to images[g]
    (generators missing from ``images`` are fixed)."""
    out = NCPoly.zero(p.mode)
    cache: dict = {}
    for w, c in p.terms.items():
        if w not in cache:
            acc = NCPoly.scalar(1, p.mode)
            for g in w:
                acc = acc * (images[g] if g in images else NCPoly.gen(g, p.mode))
            cache[w] = acc
        out = out + cache[w] * c
    return out


# ---------------------------------------------------------------------------
# PBW monomials, grading, Hilbert series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PBWMonomial:
    """x1^m1 x2^m2 z_G^n[0] ... z_0^n[G]  (``n`` is indexed from z_G down to z_0)."""

    m1: int
    m2: int
    n: tuple

    @property
    def ghost(self) -> int:
        return len(self.n) - 1

    def exponent(self, index: int) -> int:
        """Exponent of z_index."""
        return self.n[self.ghost - index]

    def word(self) -> Word:
        w = (X1,) * self.m1 + (X2,) * self.m2
        for idx, k in enumerate(self.n):
            w += (self.ghost - idx,) * k
        return w

    @classmethod
    def from_word(cls, word: Word, ghost: int) -> "PBWMonomial":
        if not is_pbw_word(word):
            raise ValueError(f"{word_to_str(word)} is not in PBW order")
        n = [0] * (ghost + 1)
        m1 = m2 = 0
        for g in word:
            if g == X1:
                m1 += 1
            elif g == X2:
                m2 += 1
            else:
                if g > ghost:
                    raise IndexOutOfRange(f"z{g} out of range for ghost={ghost}")
                n[ghost - g] += 1
        return cls(m1, m2, tuple(n))

    def __str__(self):
        return word_to_str(self.word())


def degree(m: PBWMonomial | Word, params: AlgebraParams | None = None) -> int:
    """Weighted degree m1 + m2 + sum (n+1) * n_n."""
    if isinstance(m, PBWMonomial):
        return m.m1 + m.m2 + sum((m.ghost - idx + 1) * k for idx, k in enumerate(m.n))
    return word_degree(m)


def pbw_monomials(ghost: int, deg: int) -> Iterator[PBWMonomial]:
    """All PBW monomials of the given weighted degree."""
    weights = [1, 1] + [ghost - idx + 1 for idx in range(ghost + 1)]

    def rec(i, remaining):
        if i == len(weights) - 1:
            w = weights[i]
            if remaining % w == 0:
                yield (remaining // w,)
            return
        for k in range(remaining // weights[i] + 1):
            for rest in rec(i + 1, remaining - k * weights[i]):
                yield (k,) + rest

    for exps in rec(0, deg):
        yield PBWMonomial(exps[0], exps[1], tuple(exps[2:]))


def hilbert_coeffs(params: AlgebraParams | int, D: int) -> list[int]:
    """Number of PBW monomials in each degree 0..D, by direct enumeration."""
    ghost = params if isinstance(params, int) else params.ghost
    return [sum(1 for _ in pbw_monomials(ghost, d)) for d in range(D + 1)]


def hilbert_series_oracle(ghost: int, D: int) -> list[int]:
    """Coefficients of 1/((1-t)^2 prod_{n=0..G} (1-t^(n+1))) up to t^D."""
    series = [1] + [0] * D
    for w in [1, 1] + [n + 1 for n in range(ghost + 1)]:
        # multiply by 1/(1 - t^w): running sum with stride w
        for d in range(w, D + 1):
            series[d] += series[d - w]
    return series


def gk_dimension(ghost: int) -> int:
    """Number of PBW generators, which is the growth degree."""
    return ghost + 3


# ---------------------------------------------------------------------------
# Rewriting
# ---------------------------------------------------------------------------


class _Budget:
    __slots__ = ("left", "limit")

    def __init__(self, limit: int):
        self.left = limit
        self.limit = limit

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded(f"more than {self.limit} rewrite steps")


class RewriteSystem:
    """The straightening rules for one parameter choice.

    ``jordan_linear`` and ``jordan_square`` are the coefficients in
    ``x2 x1 -> jordan_linear * x1 x2 - jordan_square * x1^2``; they differ from
    (1, 1/2) only for negative controls.  Normal forms of single words are
    memoised; the cache is guarded by a lock for writers, readers never block.
    """

    def __init__(self, params: AlgebraParams, jordan_linear=1, jordan_square=Fraction(1, 2)):
        self.params = params
        G = params.ghost
        mode = params.q
        one = FieldElem.from_int(1, mode)
        q = FieldElem.q(mode)
        qi = q.inverse()
        self.jordan_linear = FieldElem.coerce(jordan_linear, mode)
        self.jordan_square = FieldElem.coerce(jordan_square, mode)
        rules: dict = {
            (X2, X1): (((X1, X2), self.jordan_linear), ((X1, X1), -self.jordan_square)),
        }
        for n in range(G + 1):
            rules[(n, X1)] = (((X1, n), qi),)
            if n < G:
                rules[(n, X2)] = (((X2, n), qi), ((n + 1,), -qi))
            else:
                rules[(n, X2)] = (((X2, n), qi),)
            for m in range(n):
                rules[(m, n)] = (((n, m), q ** (m - n)),)
        self.rules = rules
        self._one = one
        self._rank = {X1: 0, X2: 1, **{n: 2 + G - n for n in range(G + 1)}}
        self._cache: dict = {}
        self._lock = threading.Lock()

    @property
    def is_standard(self) -> bool:
        return self.jordan_linear == 1 and self.jordan_square == Fraction(1, 2)

    def rank(self, g: int) -> int:
        try:
            return self._rank[g]
        except KeyError:
            raise IndexOutOfRange(f"generator {g} not available for ghost={self.params.ghost}") from None

    def is_reducible_pair(self, a: int, b: int) -> bool:
        return (a, b) in self.rules

    def apply_rule(self, a: int, b: int) -> tuple:
        return self.rules[(a, b)]

    def _straighten(self, mono: Word, g: int, budget: _Budget) -> dict:
        """Normal form of (PBW word) * g."""
        key = (mono, g)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if not mono or self._rank[mono[-1]] <= self._rank[g]:
            result = {mono + (g,): self._one}
        else:
            budget.spend()
            prefix = mono[:-1]
            result = {}
            for word, c in self.rules[(mono[-1], g)]:
                for w2, c2 in self._mul_word(prefix, word, budget).items():
                    v = c * c2
                    result[w2] = result[w2] + v if w2 in result else v
            result = {w: c for w, c in result.items() if c}
        with self._lock:
            self._cache[key] = result
        return result

    def _mul_word(self, mono: Word, word: Word, budget: _Budget) -> dict:
        state = {mono: self._one}
        for g in word:
            new: dict = {}
            for m, c in state.items():
                for m2, c2 in self._straighten(m, g, budget).items():
                    v = c * c2
                    new[m2] = new[m2] + v if m2 in new else v
            state = {m: c for m, c in new.items() if c}
        return state

    def nf_word(self, word: Word, budget: _Budget | None = None) -> dict:
        budget = budget or _Budget(DEFAULT_BUDGET)
        for g in word:
            self.rank(g)
        return self._mul_word((), tuple(word), budget)

    def normal_form(self, p: NCPoly, budget: int = DEFAULT_BUDGET) -> NCPoly:
        if p.mode != self.params.q:
            raise ValueError(f"element over {p.mode} used with algebra over {self.params.q}")
        b = _Budget(budget)
        out: dict = {}
        for w, c in p.terms.items():
            for w2, c2 in self.nf_word(w, b).items():
                v = c * c2
                out[w2] = out[w2] + v if w2 in out else v
        return NCPoly(out, p.mode)

    def cache_size(self) -> int:
        return len(self._cache)


@lru_cache(maxsize=64)
def rewrite_system(params: AlgebraParams) -> RewriteSystem:
    """Shared rule set (and normal-form cache) for ``params``."""
    return RewriteSystem(params)


def normal_form(p: NCPoly, params: AlgebraParams, system: RewriteSystem | None = None,
                budget: int = DEFAULT_BUDGET) -> NCPoly:
    """Straighten ``p`` to a combination of PBW monomials."""
    return (system or rewrite_system(params)).normal_form(p, budget)


def multiply(a: NCPoly, b: NCPoly, params: AlgebraParams, system: RewriteSystem | None = None) -> NCPoly:
    return normal_form(a * b, params, system)


def is_normal(p: NCPoly) -> bool:
    return all(is_pbw_word(w) for w in p.terms)


# ---------------------------------------------------------------------------
# Relations
# ---------------------------------------------------------------------------


def defining_relations(params: AlgebraParams) -> dict[str, NCPoly]:
    """The defining relations, keyed by descriptive names."""
    G = params.ghost
    q = params.qe
    x1, x2, zz = params.x1, params.x2, params.z
    rels = {"jordan": x2 * x1 - x1 * x2 + x1 * x1 * Fraction(1, 2),
            "x1_z0": x1 * zz(0) - zz(0) * x1 * q}
    for n in range(G):
        rels[f"z_chain[{n}]"] = zz(n) * zz(n + 1) - zz(n + 1) * zz(n) * q.inverse()
    for n in range(G):
        rels[f"x2_z[{n}]"] = x2 * zz(n) - zz(n) * x2 * q - zz(n + 1)
    rels["x2_ztop"] = x2 * zz(G) - zz(G) * x2 * q
    return rels


def commutation_relations(params: AlgebraParams) -> dict[str, NCPoly]:
    """Consequences x1 z_n = q z_n x1 and z_m z_n = q^(m-n) z_n z_m (m < n)."""
    G = params.ghost
    q = params.qe
    x1, zz = params.x1, params.z
    rels = {}
    for n in range(G + 1):
        rels[f"x1_z[{n}]"] = x1 * zz(n) - zz(n) * x1 * q
    for m in range(G + 1):
        for n in range(m + 1, G + 1):
            rels[f"z_pair[{m},{n}]"] = zz(m) * zz(n) - zz(n) * zz(m) * q ** (m - n)
    return rels


def z_binomial_expansion(n: int, params: AlgebraParams) -> NCPoly:
    """sum_k C(n,k) (-q)^k x2^(n-k) z0 x2^k, the expression of z_n in x2, z0."""
    mode = params.q
    mq = -params.qe
    x2, z0 = params.x2, params.z(0)
    out = NCPoly.zero(mode)
    for k in range(n + 1):
        out = out + (x2 ** (n - k)) * z0 * (x2 ** k) * (binomial(n, k, mode) * mq ** k)
    return out


def top_serre_element(params: AlgebraParams) -> NCPoly:
    """sum_i C(G+1,i) (-q)^i x2^(G+1-i) z0 x2^i, which vanishes in the algebra."""
    return z_binomial_expansion(params.ghost + 1, params)


def derived_identities(params: AlgebraParams, jmax: int) -> dict[str, NCPoly]:
    """Identities that must straighten to zero, keyed by name."""
    G = params.ghost
    mode = params.q
    q = params.qe
    x1, x2, zz = params.x1, params.x2, params.z
    half = FieldElem.from_fraction(Fraction(1, 2), mode)
    out: dict[str, NCPoly] = {}
    for j in range(1, jmax + 1):
        out[f"jordan_power[{j}]"] = x1 * x2 ** j - (x2 + x1 * half) ** j * x1
    out.update(commutation_relations(params))
    for j in range(1, jmax + 1):
        qj = q ** (-j)
        out[f"subtop_x2_power[{j}]"] = (zz(G - 1) * x2 ** j - x2 ** j * zz(G - 1) * qj
                                        + x2 ** (j - 1) * zz(G) * (qj * j))
    out["top_serre"] = top_serre_element(params)
    for n in range(1, G + 1):
        out[f"z_binomial[{n}]"] = zz(n) - z_binomial_expansion(n, params)
    return out


def verify_derived_identities(params: AlgebraParams, jmax: int = 5, strict: bool = False,
                              system: RewriteSystem | None = None) -> Report:
    """Straighten every derived identity and check that it vanishes."""
    report = Report("derived_identities", info={"ghost": params.ghost, "q": str(params.q), "jmax": jmax})
    for name, rel in derived_identities(params, jmax).items():
        nf = normal_form(rel, params, system)
        report.add(name, nf.is_zero(), None if nf.is_zero() else str(nf))
    if strict:
        report.raise_if_failed(IdentityFailure)
    return report


# ---------------------------------------------------------------------------
# Confluence
# ---------------------------------------------------------------------------


def ambiguities(system: RewriteSystem) -> list[Word]:
    """Overlaps a b c with both a b and b c left-hand sides."""
    gens = system.params.generators()
    out = []
    for a in gens:
        for b in gens:
            if (a, b) not in system.rules:
                continue
            for c in gens:
                if (b, c) in system.rules:
                    out.append((a, b, c))
    return sorted(out, key=word_key)


def confluence_check(params: AlgebraParams, max_deg: int | None = None,
                     system: RewriteSystem | None = None, strict: bool = False) -> Report:
    """Resolve every overlap ambiguity both ways and compare normal forms.

    All left-hand sides have length two, so there are no inclusion
    ambiguities and the overlaps are exactly the descending triples.
    """
    system = system or rewrite_system(params)
    mode = params.q
    report = Report("confluence", info={"ghost": params.ghost, "q": str(params.q),
                                        "standard_rules": system.is_standard})
    checked = []
    for a, b, c in ambiguities(system):
        if max_deg is not None and word_degree((a, b, c)) > max_deg:
            continue
        left = NCPoly.zero(mode)
        for w, k in system.apply_rule(a, b):
            left = left + NCPoly.word(w + (c,), mode, k)
        right = NCPoly.zero(mode)
        for w, k in system.apply_rule(b, c):
            right = right + NCPoly.word((a,) + w, mode, k)
        diff = system.normal_form(left) - system.normal_form(right)
        label = word_to_str((a, b, c)) if len({a, b, c}) == 3 else "*".join(gen_name(g) for g in (a, b, c))
        checked.append(label)
        report.add(label, diff.is_zero(), None if diff.is_zero() else str(diff))
    report.info["ambiguities"] = checked
    if strict:
        report.raise_if_failed(ConfluenceFailure)
    return report

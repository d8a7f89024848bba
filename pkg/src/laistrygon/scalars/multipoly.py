"""Commutative polynomials in named variables with :class:`FieldElem` coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .field import FieldElem, QSpec

# A monomial is a tuple of (variable, exponent) pairs sorted by variable name.
Monomial = tuple


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class MultiPoly:
    """Immutable sparse polynomial over a coefficient field.

    >>> x = MultiPoly.var("x"); y = MultiPoly.var("y")
    >>> str((x + y) ** 2)
    'x^2 + 2*x*y + y^2'
    """

    __slots__ = ("terms", "mode")

    def __init__(self, terms: Mapping[Monomial, FieldElem] | None = None, mode: QSpec | None = None):
        self.mode = mode or QSpec.generic()
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # -- constructors -------------------------------------------------------

    @classmethod
    def var(cls, name: str, mode: QSpec | None = None) -> "MultiPoly":
        mode = mode or QSpec.generic()
        return cls({((name, 1),): FieldElem.from_int(1, mode)}, mode)

    @classmethod
    def const(cls, c, mode: QSpec | None = None) -> "MultiPoly":
        mode = mode or (c.mode if isinstance(c, FieldElem) else QSpec.generic())
        return cls({(): FieldElem.coerce(c, mode)}, mode)

    @classmethod
    def vars(cls, names: Iterable[str], mode: QSpec | None = None) -> list["MultiPoly"]:
        return [cls.var(n, mode) for n in names]

    def _lift(self, other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            if other.mode != self.mode:
                raise ValueError(f"cannot mix polynomials over {self.mode} and {other.mode}")
            return other
        if isinstance(other, (int, Fraction, FieldElem)):
            return MultiPoly.const(FieldElem.coerce(other, self.mode), self.mode)
        return None

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out[m] + c if m in out else c
        return MultiPoly(out, self.mode)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self.terms.items()}, self.mode)

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
            return MultiPoly({m: a * c for m, a in self.terms.items()}, self.mode)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return MultiPoly(out, self.mode)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            c = FieldElem.coerce(other, self.mode).inverse()
            return self * c
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = MultiPoly.const(1, self.mode)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- inspection -------------------------------------------------------------

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_value(self) -> FieldElem:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), FieldElem.from_int(0, self.mode))

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def coefficient(self, name: str, k: int) -> "MultiPoly":
        """Coefficient of name**k, as a polynomial in the other variables."""
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(name, 0) == k:
                d.pop(name, None)
                out[tuple(sorted(d.items()))] = c
        return MultiPoly(out, self.mode)

    # -- substitution / solving ----------------------------------------------------

    def subs(self, mapping: Mapping[str, object]) -> "MultiPoly":
        """Simultaneously substitute polynomials (or scalars) for variables."""
        images = {v: (p if isinstance(p, MultiPoly) else MultiPoly.const(FieldElem.coerce(p, self.mode), self.mode))
                  for v, p in mapping.items()}
        cache: dict = {}

        def power_of(v, e):
            key = (v, e)
            if key not in cache:
                cache[key] = images[v] ** e
            return cache[key]

        out = MultiPoly({}, self.mode)
        for m, c in self.terms.items():
            kept = []
            term = MultiPoly.const(c, self.mode)
            for v, e in m:
                if v in images:
                    term = term * power_of(v, e)
                else:
                    kept.append((v, e))
            if kept:
                term = term * MultiPoly({tuple(kept): FieldElem.from_int(1, self.mode)}, self.mode)
            out = out + term
        return out

    def solve_linear(self, name: str) -> "MultiPoly | None":
        """If self == c*name + rest with c a nonzero scalar and rest free of name,
        return -rest/c (the value of name making self vanish); else None."""
        if self.degree_in(name) != 1:
            return None
        lead = self.coefficient(name, 1)
        if not lead.is_constant():
            return None
        rest = self.coefficient(name, 0)
        return -rest / lead.constant_value()

    def scalar_ratio(self, other: "MultiPoly") -> FieldElem | None:
        """Return k with self == k*other, or None if no such scalar exists."""
        o = self._lift(other)
        if not o.terms:
            return FieldElem.from_int(0, self.mode) if not self.terms else None
        m, c = next(iter(o.terms.items()))
        k = self.terms.get(m, FieldElem.from_int(0, self.mode)) / c
        return k if self == o * k else None

    def map_coefficients(self, f) -> "MultiPoly":
        return MultiPoly({m: f(c) for m, c in self.terms.items()}, self.mode)

    # -- printing ---------------------------------------------------------------------

    def _sorted_terms(self):
        def key(item):
            m, _ = item
            return (-sum(e for _, e in m), tuple((v, -e) for v, e in m))

        return sorted(self.terms.items(), key=key)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self._sorted_terms():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            neg = c.is_negative()
            mag = -c if neg else c
            if not mono:
                body = str(mag) if mag.is_atomic_str() else f"({mag})"
            elif mag.is_one():
                body = mono
            else:
                cs = str(mag) if mag.is_atomic_str() else f"({mag})"
                body = f"{cs}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"


def partial_fraction_identity(n: int) -> bool:
    """Check sum_i (-1)^i C(n,i)/(t-i) == (-1)^n n!/(t(t-1)...(t-n)) in Q(t).

    Both sides are multiplied by t(t-1)...(t-n) and compared as polynomials.
    """
    if n < 1:
        raise ValueError("n must be positive")
    t = MultiPoly.var("t")
    factors = [t - k for k in range(n + 1)]
    lhs = MultiPoly.const(0)
    for i in range(n + 1):
        prod = MultiPoly.const((-1) ** i * comb(n, i))
        for k, f in enumerate(factors):
            if k != i:
                prod = prod * f
        lhs = lhs + prod
    factorial = 1
    for k in range(2, n + 1):
        factorial *= k
    return lhs == MultiPoly.const((-1) ** n * factorial)

"""Exact scalars: rational functions in q and their specialisations.

Three coefficient fields are supported, selected by a :class:`QSpec`:

* ``generic``   -- Q(q), q transcendental.  Elements are reduced fractions of
  integer polynomials with positive leading denominator coefficient.
* ``root:N``    -- Q(zeta_N) = Q[q]/Phi_N(q), q a primitive N-th root of unity.
  Elements are stored as (integer polynomial of degree < phi(N)) / (positive
  integer), content-reduced.
* ``num:a/b``   -- Q with q = a/b.  Elements are plain rationals.

Canonical forms are unique, so structural equality is mathematical equality.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

from ..errors import DivisionByZero, InvalidSpec, NonInvertible
from . import _zpoly as zp

GENERIC = "generic"
ROOT = "root"
NUMERIC = "numeric"


@dataclass(frozen=True)
class QSpec:
    """Which field the parameter q lives in."""

    kind: str
    order: int = 0
    value: Fraction | None = None

    def __post_init__(self):
        if self.kind == ROOT:
            if not isinstance(self.order, int) or self.order < 2:
                raise InvalidSpec(f"root of unity order must be an integer >= 2, got {self.order!r}")
        elif self.kind == NUMERIC:
            if self.value is None or Fraction(self.value) == 0:
                raise InvalidSpec("q must be nonzero")
            object.__setattr__(self, "value", Fraction(self.value))
        elif self.kind != GENERIC:
            raise InvalidSpec(f"unknown q specification kind {self.kind!r}")

    @classmethod
    def generic(cls) -> "QSpec":
        return cls(GENERIC)

    @classmethod
    def root(cls, order: int) -> "QSpec":
        return cls(ROOT, order=order)

    @classmethod
    def numeric(cls, value) -> "QSpec":
        if isinstance(value, str):
            value = Fraction(value)
        return cls(NUMERIC, value=Fraction(value))

    @classmethod
    def parse(cls, text: str) -> "QSpec":
        """Parse ``generic``, ``root:N`` or ``num:a/b``."""
        text = text.strip()
        if text == "generic":
            return cls.generic()
        head, _, tail = text.partition(":")
        try:
            if head == "root":
                return cls.root(int(tail))
            if head == "num":
                return cls.numeric(Fraction(tail))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidSpec(f"cannot parse q specification {text!r}: {exc}") from None
        raise InvalidSpec(f"q specification must be generic, root:N or num:a/b, got {text!r}")

    @property
    def is_generic(self) -> bool:
        return self.kind == GENERIC

    @property
    def is_specialized(self) -> bool:
        return self.kind != GENERIC

    @property
    def is_one(self) -> bool:
        return self.kind == NUMERIC and self.value == 1

    def __str__(self) -> str:
        if self.kind == ROOT:
            return f"root:{self.order}"
        if self.kind == NUMERIC:
            return f"num:{self.value}"
        return "generic"

    # convenience constructors tied to this field
    def elem(self, value=0) -> "FieldElem":
        return FieldElem.coerce(value, self)

    def q(self) -> "FieldElem":
        return FieldElem.q(self)

    def zero(self) -> "FieldElem":
        return FieldElem.from_int(0, self)

    def one(self) -> "FieldElem":
        return FieldElem.from_int(1, self)


Scalar = Union[int, Fraction, "FieldElem"]


class FieldElem:
    """An immutable exact scalar in the field selected by ``mode``."""

    __slots__ = ("num", "den", "mode", "_hash")

    def __init__(self, num, den, mode: QSpec):
        # Direct use expects canonical data; go through FieldElem.make otherwise.
        self.num = num
        self.den = den
        self.mode = mode
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def make(cls, num, den, mode: QSpec) -> "FieldElem":
        """Canonicalise num/den (integer polynomials in q) in the given field."""
        num, den = zp.trim(num), zp.trim(den)
        if not den:
            raise DivisionByZero("zero denominator")
        if mode.kind == GENERIC:
            return cls(*_canon_generic(num, den), mode)
        if mode.kind == NUMERIC:
            d = zp.evaluate(den, mode.value)
            if d == 0:
                raise DivisionByZero(f"denominator vanishes at q = {mode.value}")
            return cls._from_fraction(Fraction(zp.evaluate(num, mode.value)) / d, mode)
        return cls(*_canon_root(num, den, mode.order), mode)

    @classmethod
    def _from_fraction(cls, f: Fraction, mode: QSpec) -> "FieldElem":
        return cls(zp.const(f.numerator), (f.denominator,), mode)

    @classmethod
    def from_int(cls, n: int, mode: QSpec) -> "FieldElem":
        return cls(zp.const(n), zp.ONE, mode)

    @classmethod
    def from_fraction(cls, f, mode: QSpec) -> "FieldElem":
        return cls._from_fraction(Fraction(f), mode)

    @classmethod
    def q(cls, mode: QSpec) -> "FieldElem":
        if mode.kind == NUMERIC:
            return cls._from_fraction(mode.value, mode)
        return cls.make((0, 1), zp.ONE, mode)

    @classmethod
    def coerce(cls, x, mode: QSpec) -> "FieldElem":
        if isinstance(x, FieldElem):
            if x.mode != mode:
                raise ValueError(f"cannot mix scalars from {x.mode} and {mode}")
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return cls.from_int(x, mode)
        if isinstance(x, Fraction):
            return cls._from_fraction(x, mode)
        raise TypeError(f"cannot coerce {type(x).__name__} to FieldElem")

    @classmethod
    def parse(cls, text: str, mode: QSpec) -> "FieldElem":
        from .parse import parse_scalar

        return parse_scalar(text, mode)

    # -- predicates / accessors ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == zp.ONE and self.den == zp.ONE

    def is_rational(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        return Fraction(self.num[0] if self.num else 0, self.den[0])

    def is_negative(self) -> bool:
        """Sign of the leading numerator coefficient (a display convention)."""
        return bool(self.num) and self.num[-1] < 0

    def specialize(self, mode: QSpec) -> "FieldElem":
        """Map a generic element into a specialised field (evaluation at q)."""
        if mode == self.mode:
            return self
        if self.mode.kind != GENERIC:
            raise ValueError("only generic scalars can be specialised")
        try:
            return FieldElem.make(self.num, self.den, mode)
        except DivisionByZero as exc:
            if mode.kind == ROOT:
                raise NonInvertible(str(exc)) from None
            raise

    # -- arithmetic -----------------------------------------------------------

    def _other(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.mode != self.mode:
                raise ValueError(f"cannot mix scalars from {self.mode} and {other.mode}")
            return other
        return FieldElem.coerce(other, self.mode)

    def __add__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.mode.kind == NUMERIC:
            return FieldElem._from_fraction(self.to_fraction() + o.to_fraction(), self.mode)
        if self.den == o.den:
            if self.den == zp.ONE:
                return FieldElem(zp.add(self.num, o.num), zp.ONE, self.mode)
            return FieldElem.make(zp.add(self.num, o.num), self.den, self.mode)
        num = zp.add(zp.mul(self.num, o.den), zp.mul(o.num, self.den))
        return FieldElem.make(num, zp.mul(self.den, o.den), self.mode)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(zp.neg(self.num), self.den, self.mode)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        if not self.num or not o.num:
            return FieldElem(zp.ZERO, zp.ONE, self.mode)
        if self.mode.kind == NUMERIC:
            return FieldElem._from_fraction(self.to_fraction() * o.to_fraction(), self.mode)
        if o.is_one():
            return self
        if self.is_one():
            return o
        if self.den == zp.ONE and o.den == zp.ONE and self.mode.kind == GENERIC:
            return FieldElem(zp.mul(self.num, o.num), zp.ONE, self.mode)
        return FieldElem.make(zp.mul(self.num, o.num), zp.mul(self.den, o.den), self.mode)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if not self.num:
            raise DivisionByZero("division by zero scalar")
        if self.mode.kind == NUMERIC:
            return FieldElem._from_fraction(1 / self.to_fraction(), self.mode)
        return FieldElem.make(self.den, self.num, self.mode)

    def __truediv__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if self.mode.kind == NUMERIC:
            return FieldElem._from_fraction(self.to_fraction() ** n, self.mode)
        if self.mode.kind == GENERIC:
            # numerator and denominator stay coprime under powers
            return FieldElem(zp.power(self.num, n), zp.power(self.den, n), self.mode)
        out = FieldElem.from_int(1, self.mode)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / hashing ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.mode == other.mode and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return self.is_rational() and self.to_fraction() == f
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # -- printing ---------------------------------------------------------------

    def __str__(self) -> str:
        if self.den == zp.ONE:
            return poly_to_str(self.num)
        ns = poly_to_str(self.num)
        if _term_count(self.num) > 1:
            ns = f"({ns})"
        ds = poly_to_str(self.den)
        if _term_count(self.den) > 1 or (len(self.den) > 1 and self.den[-1] != 1):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"FieldElem({str(self)!r}, {self.mode})"

    def is_atomic_str(self) -> bool:
        """True when str(self) can be used as a factor without parentheses."""
        s = str(self)
        if self.den == zp.ONE and _term_count(self.num) <= 1:
            return not s.startswith("-") or s.lstrip("-").isdigit()
        return False


# -- canonical forms ---------------------------------------------------------


def _canon_generic(num, den):
    if not num:
        return zp.ZERO, zp.ONE
    if len(den) == 1:
        c = den[0]
        g = gcd(zp.content(num), c)
        if c < 0:
            g = -g
        if g != 1:
            num, den = zp.exact_div_int(num, g), (c // g,)
        return num, den
    if all(c == 0 for c in den[:-1]):
        k = min(zp.low_order(num), len(den) - 1)
        if k:
            num, den = num[k:], den[k:]
        c = den[-1]
        g = gcd(zp.content(num), c)
        if c < 0:
            g = -g
        if g != 1:
            num, den = zp.exact_div_int(num, g), zp.exact_div_int(den, g)
        return num, den
    g = zp.zgcd(num, den)
    if g != zp.ONE:
        num, den = zp.exact_div(num, g), zp.exact_div(den, g)
    if den[-1] < 0:
        num, den = zp.neg(num), zp.neg(den)
    return num, den


def _canon_root(num, den, order):
    phi = zp.cyclotomic(order)
    num = zp.rem_monic(num, phi)
    den = zp.rem_monic(den, phi)
    if not den:
        raise NonInvertible(f"denominator vanishes modulo the {order}-th cyclotomic polynomial")
    if not num:
        return zp.ZERO, zp.ONE
    if len(den) > 1:
        u, d = zp.inverse_mod(den, phi)
        num = zp.rem_monic(zp.mul(num, u), phi)
        den = (d,)
    c = den[0]
    g = gcd(zp.content(num), c)
    if c < 0:
        g = -g
    if g != 1:
        num, den = zp.exact_div_int(num, g), (c // g,)
    return num, den


# -- printing helpers ---------------------------------------------------------


def _term_count(p) -> int:
    return sum(1 for c in p if c)


def poly_to_str(p, var: str = "q") -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


# -- public helpers ---------------------------------------------------------------


def field_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """Apply ``op`` in {add, sub, mul, div} to two scalars."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def binomial(n: int, k: int, mode: QSpec | None = None) -> FieldElem:
    """Binomial coefficient C(n, k) as a scalar (0 when k > n)."""
    from math import comb

    mode = mode or QSpec.generic()
    if k < 0 or k > n:
        return FieldElem.from_int(0, mode)
    return FieldElem.from_int(comb(n, k), mode)


def random_elem(rng: random.Random, mode: QSpec, degree: int = 2, bound: int = 5,
                nonzero: bool = False) -> FieldElem:
    """A random scalar; used by property checks and demos."""
    while True:
        if mode.kind == NUMERIC:
            x = FieldElem.from_fraction(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)), mode)
        else:
            num = [rng.randint(-bound, bound) for _ in range(rng.randint(0, degree) + 1)]
            den = [rng.randint(-bound, bound) for _ in range(rng.randint(0, degree) + 1)]
            if rng.random() < 0.5:
                den = [rng.randint(1, bound)]
            try:
                x = FieldElem.make(num, den, mode)
            except ZeroDivisionError:
                continue
        if not nonzero or x:
            return x

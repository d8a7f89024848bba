"""Dense univariate polynomials over the integers.

A polynomial is a tuple of Python ints, lowest degree first, with no trailing
zeros; the zero polynomial is the empty tuple.  Everything here is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

ZPoly = tuple

ZERO: ZPoly = ()
ONE: ZPoly = (1,)


def trim(coeffs) -> ZPoly:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def const(c: int) -> ZPoly:
    return (c,) if c else ()


def monomial(c: int, k: int) -> ZPoly:
    return (0,) * k + (c,) if c else ()


def degree(p: ZPoly) -> int:
    return len(p) - 1


def is_constant(p: ZPoly) -> bool:
    return len(p) <= 1


def add(a: ZPoly, b: ZPoly) -> ZPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def neg(a: ZPoly) -> ZPoly:
    return tuple(-c for c in a)


def sub(a: ZPoly, b: ZPoly) -> ZPoly:
    return add(a, neg(b))


def scale(a: ZPoly, c: int) -> ZPoly:
    if c == 0:
        return ()
    return tuple(c * x for x in a)


def mul(a: ZPoly, b: ZPoly) -> ZPoly:
    if not a or not b:
        return ()
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def shift(a: ZPoly, k: int) -> ZPoly:
    """Multiply by q**k (k >= 0)."""
    return (0,) * k + a if a else ()


def low_order(a: ZPoly) -> int:
    """Largest k with q**k dividing a (a != 0)."""
    k = 0
    while a[k] == 0:
        k += 1
    return k


def content(a: ZPoly) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def exact_div_int(a: ZPoly, c: int) -> ZPoly:
    return tuple(x // c for x in a)


def primitive(a: ZPoly) -> ZPoly:
    if not a:
        return a
    c = content(a)
    if a[-1] < 0:
        c = -c
    return exact_div_int(a, c) if c != 1 else a


def pseudo_rem(a: ZPoly, b: ZPoly) -> ZPoly:
    """Pseudo-remainder of a by b (b != 0)."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        lr = r[-1]
        k = len(r) - 1 - db
        r = [lb * x for x in r]
        for i, y in enumerate(b):
            r[i + k] -= lr * y
        r = list(trim(r))
    return tuple(r)


def zgcd(a: ZPoly, b: ZPoly) -> ZPoly:
    """Gcd in Z[q], normalised to positive leading coefficient."""
    if not a:
        return primitive(b) if not b else scale(primitive(b), content(b))
    if not b:
        return scale(primitive(a), content(a))
    c = gcd(content(a), content(b))
    a, b = primitive(a), primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = pseudo_rem(a, b)
        a, b = b, primitive(r)
    return scale(primitive(a), c)


def exact_div(a: ZPoly, b: ZPoly) -> ZPoly:
    """Quotient a / b in Z[q]; raises ArithmeticError if b does not divide a."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    out = [0] * max(len(a) - db, 0)
    while r and len(r) - 1 >= db:
        lr = r[-1]
        if lr % lb:
            raise ArithmeticError("inexact polynomial division")
        c = lr // lb
        k = len(r) - 1 - db
        out[k] = c
        for i, y in enumerate(b):
            r[i + k] -= c * y
        r = list(trim(r))
    if r:
        raise ArithmeticError("inexact polynomial division")
    return trim(out)


def rem_monic(a: ZPoly, m: ZPoly) -> ZPoly:
    """Remainder of a modulo the monic polynomial m."""
    dm = len(m) - 1
    r = list(a)
    while len(r) - 1 >= dm and r:
        c = r[-1]
        k = len(r) - 1 - dm
        for i, y in enumerate(m):
            r[i + k] -= c * y
        r = list(trim(r))
    return tuple(r)


def evaluate(a: ZPoly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def power(a: ZPoly, n: int) -> ZPoly:
    out = ONE
    base = a
    while n:
        if n & 1:
            out = mul(out, base)
        base = mul(base, base)
        n >>= 1
    return out


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> ZPoly:
    """The n-th cyclotomic polynomial."""
    p = add(monomial(1, n), const(-1))
    for d in range(1, n):
        if n % d == 0:
            p = exact_div(p, cyclotomic(d))
    return p


# -- polynomials with Fraction coefficients, only used for modular inverses --

def _qtrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _qdivmod(a, b):
    a = list(a)
    out = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while a and len(a) >= len(b):
        c = Fraction(a[-1]) / lb
        k = len(a) - len(b)
        out[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a = _qtrim(a)
    return _qtrim(out), a


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _qtrim(out)


def _qsub(a, b):
    n = max(len(a), len(b))
    return _qtrim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def inverse_mod(a: ZPoly, m: ZPoly) -> tuple[ZPoly, int]:
    """Return (u, d) with a*u/d == 1 modulo m, u integral, d > 0.

    Raises ZeroDivisionError when gcd(a, m) is not constant.
    """
    r0, r1 = [Fraction(c) for c in m], [Fraction(c) for c in a]
    s0, s1 = [], [Fraction(1)]
    while r1:
        quo, rem = _qdivmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _qsub(s0, _qmul(quo, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible modulo the given polynomial")
    inv = [c / r0[0] for c in s0]
    _, inv = _qdivmod(inv, [Fraction(c) for c in m])
    den = 1
    for c in inv:
        den = den * c.denominator // gcd(den, c.denominator)
    return trim(int(c * den) for c in inv), den

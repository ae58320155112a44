"""Exact scalar arithmetic.

Two interchangeable backends sit behind one informal field contract
(add, negate, multiply, invert, equality, zero/one, integer power,
optional evaluation at a rational point):

* ``Rational`` -- arbitrary-precision rationals, provided by
  :class:`fractions.Fraction`.  Numeric runs default to q = 2.
* :class:`RatFun` -- rational functions in one formal variable q with
  rational coefficients, for identities that must hold for generic q.

Both are immutable, all operations are pure, and values can be shared
freely between threads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import DahaError

Rational = Fraction

Scalar = Union[Fraction, "RatFun"]


def as_scalar(x) -> Scalar:
    """Coerce ints to Fraction; pass Fractions and RatFuns through."""
    if isinstance(x, RatFun):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"not a scalar: {x!r}")


# ---------------------------------------------------------------------------
# dense univariate polynomials: tuples of Fraction, ascending degree,
# no trailing zeros, zero polynomial = ()
# ---------------------------------------------------------------------------

def _ptrim(cs) -> tuple:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _padd(a, b):
    n = max(len(a), len(b))
    return _ptrim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _ptrim(out)


def _pscale(a, c):
    if c == 0:
        return ()
    return tuple(ai * c for ai in a)


def _pdivmod(a, b):
    """Quotient and remainder of a by b (b nonzero) over the rationals."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        c = r[-1] / lb
        q[k] = c
        for i in range(db + 1):
            r[k + i] -= c * b[i]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return _ptrim(q), _ptrim(r)


def _pexact_div(a, b):
    q, r = _pdivmod(a, b)
    if r:
        raise DahaError("inexact polynomial division")
    return q


def _int_primitive(cs):
    """Divide an int coefficient list by its content; positive leading coeff."""
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        return []
    g = 0
    for c in cs:
        g = math.gcd(g, abs(c))
    if cs[-1] < 0:
        g = -g
    return [c // g for c in cs]


def _int_prem(a, b):
    """Pseudo-remainder of int polynomial a by b (b nonzero)."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        c = r[-1]
        r = [lb * ci for ci in r]
        for i in range(db + 1):
            r[k + i] -= c * b[i]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def _pgcd(a, b):
    """Monic gcd over the rationals.

    Coefficients are cleared to integers and a primitive Euclidean
    remainder sequence is used, which keeps intermediate coefficient
    growth under control.
    """
    if not a:
        return _pmonic(b)
    if not b:
        return _pmonic(a)
    if len(a) == 1 or len(b) == 1:
        return (Fraction(1),)
    A = _int_clear(a)
    B = _int_clear(b)
    while B:
        A, B = B, _int_primitive(_int_prem(A, B))
    return _pmonic(tuple(Fraction(c) for c in A))


def _int_clear(a):
    """Fraction coefficient tuple -> primitive int coefficient list."""
    lcm = 1
    for c in a:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return _int_primitive([int(c * lcm) for c in a])


def _pmonic(a):
    if not a:
        return ()
    lead = a[-1]
    if lead == 1:
        return tuple(a)
    return tuple(c / lead for c in a)


def _peval(a, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _psqrt(a):
    """Exact polynomial square root, or None when a is not a square."""
    if not a:
        return ()
    if (len(a) - 1) % 2:
        return None
    lead = _fraction_sqrt(a[-1])
    if lead is None:
        return None
    n = (len(a) - 1) // 2
    g = [Fraction(0)] * (n + 1)
    g[n] = lead
    # match coefficients from the top down
    for k in range(n - 1, -1, -1):
        s = Fraction(0)
        for i in range(k + 1, n):
            j = n + k - i
            if 0 <= j <= n:
                s += g[i] * g[j]
        g[k] = (a[n + k] - s) / (2 * lead)
    g = _ptrim(g)
    if _pmul(g, g) != tuple(a):
        return None
    return g


def _fraction_sqrt(x: Fraction):
    """Exact square root of a rational, or None."""
    if x < 0:
        return None
    pn = math.isqrt(x.numerator)
    pd = math.isqrt(x.denominator)
    if pn * pn != x.numerator or pd * pd != x.denominator:
        return None
    return Fraction(pn, pd)


# ---------------------------------------------------------------------------
# rational functions in one formal variable
# ---------------------------------------------------------------------------

class RatFun:
    """A rational function num/den in one variable over the rationals.

    Canonical form: num and den coprime, den monic and never zero; the
    zero element is ()/1.  Arithmetic re-normalizes, so closure under
    sum, product and quotient preserves the canonical form.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),)):
        num = _ptrim(Fraction(c) for c in num)
        den = _ptrim(Fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            den = (Fraction(1),)
        else:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pexact_div(num, g)
                den = _pexact_div(den, g)
            lead = den[-1]
            if lead != 1:
                num = tuple(c / lead for c in num)
                den = tuple(c / lead for c in den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def variable(cls) -> "RatFun":
        """The generator q itself."""
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def from_fraction(cls, x) -> "RatFun":
        return cls((Fraction(x),))

    # -- structure ----------------------------------------------------

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise DahaError(f"non-constant rational function: {self}")
        return self.num[0] if self.num else Fraction(0)

    def eval_at(self, x) -> Fraction:
        """Evaluate at a rational point; the denominator must not vanish."""
        x = Fraction(x)
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {x}")
        return _peval(self.num, x) / d

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFun((Fraction(other),))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFun(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        r = RatFun.__new__(RatFun)
        object.__setattr__(r, "num", _pneg(self.num))
        object.__setattr__(r, "den", self.den)
        return r

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFun(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return RatFun((Fraction(1),))
        base = self
        if n < 0:
            if not self.num:
                raise ZeroDivisionError("zero base with negative exponent")
            base = RatFun(self.den, self.num)
            n = -n
        out = RatFun((Fraction(1),))
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.as_fraction())
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    # -- text ---------------------------------------------------------

    def __str__(self):
        num = ",".join(fraction_to_str(c) for c in self.num) if self.num else "0"
        den = ",".join(fraction_to_str(c) for c in self.den)
        return f"{num} | {den}"

    def __repr__(self):
        return f"RatFun({self})"


# ---------------------------------------------------------------------------
# field descriptors
# ---------------------------------------------------------------------------

class RationalField:
    """Arbitrary-precision rationals; numeric default q = 2."""

    name = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def default_q() -> Fraction:
        return Fraction(2)

    @staticmethod
    def from_int(n: int) -> Fraction:
        return Fraction(n)


class RatFunField:
    """Rational functions in the formal variable q."""

    name = "ratfun"
    zero = RatFun(())
    one = RatFun((Fraction(1),))

    @staticmethod
    def default_q() -> RatFun:
        return RatFun.variable()

    @staticmethod
    def from_int(n: int) -> RatFun:
        return RatFun((Fraction(n),))


QQ = RationalField()
QQ_Q = RatFunField()

_FIELDS = {QQ.name: QQ, QQ_Q.name: QQ_Q}


def field_by_name(name: str):
    try:
        return _FIELDS[name]
    except KeyError:
        raise DahaError(f"unknown scalar backend {name!r}") from None


def field_of(x) -> object:
    return QQ_Q if isinstance(x, RatFun) else QQ


# ---------------------------------------------------------------------------
# shared operations
# ---------------------------------------------------------------------------

def scalar_pow(x, n: int) -> Scalar:
    """x**n computed exactly, with x**0 = 1; zero base rejects n < 0."""
    x = as_scalar(x)
    if n < 0 and not x:
        raise ZeroDivisionError("zero base with negative exponent")
    return x ** n


def scalar_inv(x) -> Scalar:
    x = as_scalar(x)
    return 1 / x


def validate_q(q) -> bool:
    """True iff q is nonzero and not a root of unity in its field.

    Over the rationals that means q outside {0, 1, -1}; a non-constant
    rational function has infinite multiplicative order automatically.
    """
    q = as_scalar(q)
    if isinstance(q, RatFun):
        if not q.is_constant():
            return True
        q = q.as_fraction()
    return q not in (0, 1, -1)


def scalar_eval_at(x, point) -> Fraction:
    """Evaluation homomorphism into the rationals (identity on rationals)."""
    x = as_scalar(x)
    if isinstance(x, RatFun):
        return x.eval_at(point)
    return x


def scalar_sqrt(x):
    """An exact square root of x in its own field, or None."""
    x = as_scalar(x)
    if isinstance(x, RatFun):
        num = _psqrt(x.num)
        den = _psqrt(x.den)
        if num is None or den is None:
            return None
        return RatFun(num, den)
    return _fraction_sqrt(x)


# ---------------------------------------------------------------------------
# serialization: Rational as "p/r" (omitting "/1"), RatFun as
# "num-coeffs | den-coeffs" in ascending degree
# ---------------------------------------------------------------------------

def fraction_to_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def scalar_to_str(x) -> str:
    x = as_scalar(x)
    if isinstance(x, RatFun):
        return str(x)
    return fraction_to_str(x)


def scalar_from_str(s: str) -> Scalar:
    s = s.strip()
    if "|" in s:
        num_s, den_s = s.split("|")
        num = tuple(Fraction(c.strip()) for c in num_s.strip().split(",")) if num_s.strip() else ()
        den = tuple(Fraction(c.strip()) for c in den_s.strip().split(","))
        return RatFun(num, den)
    return Fraction(s)

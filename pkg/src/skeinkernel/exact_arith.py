"""Exact scalars: Laurent polynomials and rational functions in A, cyclotomic
numbers, quantum integers, Chebyshev polynomials and torus dimensions.

Polynomial arithmetic is delegated to FLINT (``fmpq_poly``); the classes here
only fix normal forms so that equality and hashing are structural.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import flint

__all__ = [
    "ArithmeticError_",
    "DenominatorVanishes",
    "InvalidInput",
    "LaurentPoly",
    "RatFunc",
    "QRoot",
    "CycloNum",
    "quantum_int",
    "quantum_factorial",
    "loop_value",
    "chebyshev",
    "chebyshev_eval",
    "chebyshev_product_coeffs",
    "torus_reduce",
    "tqft_dimension",
    "cyclo_eval",
    "LaurentRing",
    "RatFuncRing",
    "CycloRing",
    "LAURENT",
    "RATFUNC",
]


class ArithmeticError_(ArithmeticError):
    """Base class for exact-arithmetic failures."""


class DenominatorVanishes(ArithmeticError_, ZeroDivisionError):
    """A rational function was evaluated at a root of its denominator."""


class InvalidInput(ValueError):
    """Argument outside the documented domain."""


def _fq(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.fmpz):
        return Fraction(int(x))
    raise TypeError(f"not a rational: {x!r}")


def _poly_key(p: flint.fmpq_poly) -> tuple:
    return tuple((int(c.p), int(c.q)) for c in p.coeffs())


def _low_order(p: flint.fmpq_poly) -> int:
    if p[0] != 0:
        return 0
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    return 0


_X = flint.fmpq_poly([0, 1])


# --------------------------------------------------------------------------
# Laurent polynomials in A


class LaurentPoly:
    """Finite sum of c_e A^e with rational c_e.

    Stored as ``A^val * p(A)`` where p has non-zero constant term, so two equal
    polynomials always have the same representation.

    >>> A = LaurentPoly.gen()
    >>> (A + A**-1) * (A - A**-1)
    A^2 - A^-2
    >>> quantum_int(2) == A**2 + A**-2
    True
    """

    __slots__ = ("_v", "_p", "_h")

    def __init__(self, val: int = 0, poly: flint.fmpq_poly | None = None):
        if poly is None:
            poly = flint.fmpq_poly()
        if poly == 0:
            val = 0
        else:
            lo = _low_order(poly)
            if lo:
                poly = poly.right_shift(lo)
                val += lo
        self._v = val
        self._p = poly
        self._h = None

    # constructors
    @classmethod
    def gen(cls) -> "LaurentPoly":
        return cls(1, flint.fmpq_poly([1]))

    @classmethod
    def monomial(cls, e: int, c=1) -> "LaurentPoly":
        return cls(e, flint.fmpq_poly([_to_fmpq(c)]))

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls.monomial(0, c)

    @classmethod
    def from_dict(cls, coeffs: dict) -> "LaurentPoly":
        items = {int(e): _fq(c) for e, c in coeffs.items() if c != 0}
        if not items:
            return cls()
        lo = min(items)
        vec = [0] * (max(items) - lo + 1)
        for e, c in items.items():
            vec[e - lo] = flint.fmpq(c.numerator, c.denominator)
        return cls(lo, flint.fmpq_poly(vec))

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction, flint.fmpq, flint.fmpz)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # inspection
    @property
    def coeffs(self) -> dict[int, Fraction]:
        return {self._v + i: _fq(c) for i, c in enumerate(self._p.coeffs()) if c != 0}

    def is_zero(self) -> bool:
        return self._p == 0

    @property
    def min_exp(self) -> int:
        if self.is_zero():
            raise InvalidInput("zero polynomial has no exponents")
        return self._v

    @property
    def max_exp(self) -> int:
        if self.is_zero():
            raise InvalidInput("zero polynomial has no exponents")
        return self._v + self._p.degree()

    def is_monomial(self) -> bool:
        return not self.is_zero() and self._p.degree() == 0

    def coefficient(self, e: int) -> Fraction:
        i = e - self._v
        if self.is_zero() or i < 0 or i > self._p.degree():
            return Fraction(0)
        return _fq(self._p.coeffs()[i])

    # arithmetic
    def __add__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        if isinstance(other, CycloNum):
            return NotImplemented
        try:
            o = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        v = min(self._v, o._v)
        p = self._p.left_shift(self._v - v) + o._p.left_shift(o._v - v)
        return LaurentPoly(v, p)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self._v, -self._p)

    def __sub__(self, other):
        if isinstance(other, (RatFunc, CycloNum)):
            return NotImplemented
        try:
            return self + (-LaurentPoly.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (RatFunc, CycloNum)):
            return NotImplemented
        try:
            o = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return LaurentPoly(self._v + o._v, self._p * o._p)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise InvalidInput("only monomials have Laurent inverses")
            c = self._p.coeffs()[0]
            return LaurentPoly(-self._v * (-k), flint.fmpq_poly([(1 / c) ** (-k)]))
        return LaurentPoly(self._v * k, self._p ** k)

    def __truediv__(self, other):
        if isinstance(other, (RatFunc, CycloNum)):
            return NotImplemented
        o = LaurentPoly.coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        q, r = divmod(self._p, o._p)
        if r != 0:
            raise InvalidInput("inexact Laurent division; use RatFunc")
        return LaurentPoly(self._v - o._v, q)

    def __rtruediv__(self, other):
        return LaurentPoly.coerce(other) / self

    def conj(self) -> "LaurentPoly":
        """Substitute A -> A^-1."""
        if self.is_zero():
            return self
        cs = self._p.coeffs()
        d = len(cs) - 1
        return LaurentPoly(-(self._v + d), flint.fmpq_poly(cs[::-1]))

    def __eq__(self, other):
        if isinstance(other, (RatFunc, CycloNum)):
            return NotImplemented
        try:
            o = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self._v == o._v and self._p == o._p

    def __hash__(self):
        if self._h is None:
            if self.is_zero():
                self._h = hash(0)
            elif self.is_monomial() and self._v == 0:
                self._h = hash(_fq(self._p.coeffs()[0]))
            else:
                self._h = hash((self._v, _poly_key(self._p)))
        return self._h

    def __call__(self, a: complex) -> complex:
        if self.is_zero():
            return 0j
        return complex(a) ** self._v * _horner(self._p.coeffs(), complex(a))

    def __repr__(self):
        return _fmt_terms(sorted(self.coeffs.items(), reverse=True), "A")

    def to_json(self) -> dict:
        return {str(e): str(c) for e, c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, d: dict) -> "LaurentPoly":
        return cls.from_dict({int(e): Fraction(c) for e, c in d.items()})


def _to_fmpq(c):
    c = _fq(c)
    return flint.fmpq(c.numerator, c.denominator)


def _horner(cs, x: complex) -> complex:
    acc = 0j
    for c in reversed(cs):
        acc = acc * x + float(_fq(c))
    return acc


def _fmt_terms(items, var: str) -> str:
    if not items:
        return "0"
    out = []
    for e, c in items:
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


# --------------------------------------------------------------------------
# Rational functions in A


class RatFunc:
    """Element of Q(A), kept as A^val * num(A) / den(A).

    num and den are coprime polynomials with non-zero constant terms and den is
    monic, so the representation is canonical.
    """

    __slots__ = ("_v", "_n", "_d", "_h")

    def __init__(self, val: int, num: flint.fmpq_poly, den: flint.fmpq_poly, _reduced: bool = False):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if num == 0:
            self._v, self._n, self._d, self._h = 0, flint.fmpq_poly(), flint.fmpq_poly([1]), None
            return
        if not _reduced:
            lo = _low_order(num)
            if lo:
                num = num.right_shift(lo)
                val += lo
            lo = _low_order(den)
            if lo:
                den = den.right_shift(lo)
                val -= lo
            g = num.gcd(den)
            if g != 1:
                num = divmod(num, g)[0]
                den = divmod(den, g)[0]
            lc = den.leading_coefficient()
            if lc != 1:
                num = num / lc
                den = den / lc
        self._v, self._n, self._d, self._h = val, num, den, None

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, LaurentPoly):
            return cls(x._v, x._p, flint.fmpq_poly([1]), _reduced=True) if not x.is_zero() else cls(0, flint.fmpq_poly(), flint.fmpq_poly([1]))
        if isinstance(x, (int, Fraction, flint.fmpq, flint.fmpz)):
            return cls.coerce(LaurentPoly.const(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    @classmethod
    def gen(cls) -> "RatFunc":
        return cls.coerce(LaurentPoly.gen())

    @property
    def numerator(self) -> LaurentPoly:
        return LaurentPoly(self._v, self._n) if self._v >= 0 else LaurentPoly(0, self._n)

    @property
    def denominator(self) -> LaurentPoly:
        return LaurentPoly(0, self._d) if self._v >= 0 else LaurentPoly(-self._v, self._d)

    def is_zero(self) -> bool:
        return self._n == 0

    def is_laurent(self) -> bool:
        return self._d.degree() == 0

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise InvalidInput("rational function is not a Laurent polynomial")
        return LaurentPoly(self._v, self._n)

    def __add__(self, other):
        if isinstance(other, CycloNum):
            return NotImplemented
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        v = min(self._v, o._v)
        a = self._n.left_shift(self._v - v)
        b = o._n.left_shift(o._v - v)
        if self._d == o._d:
            return RatFunc(v, a + b, self._d)
        return RatFunc(v, a * o._d + b * self._d, self._d * o._d)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self._v, -self._n, self._d, _reduced=True)

    def __sub__(self, other):
        if isinstance(other, CycloNum):
            return NotImplemented
        try:
            return self + (-RatFunc.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CycloNum):
            return NotImplemented
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RatFunc(0, flint.fmpq_poly(), flint.fmpq_poly([1]))
        # cross-cancel before multiplying to keep degrees small
        n1, d1, n2, d2 = self._n, self._d, o._n, o._d
        g = n1.gcd(d2)
        if g != 1:
            n1, d2 = divmod(n1, g)[0], divmod(d2, g)[0]
        g = n2.gcd(d1)
        if g != 1:
            n2, d1 = divmod(n2, g)[0], divmod(d1, g)[0]
        num, den = n1 * n2, d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return RatFunc(self._v + o._v, num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(-self._v, self._d, self._n)

    def __truediv__(self, other):
        if isinstance(other, CycloNum):
            return NotImplemented
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self._v * k, self._n ** k, self._d ** k, _reduced=True)

    def conj(self) -> "RatFunc":
        """Substitute A -> A^-1."""
        if self.is_zero():
            return self
        dn, dd = self._n.degree(), self._d.degree()
        num = flint.fmpq_poly(self._n.coeffs()[::-1])
        den = flint.fmpq_poly(self._d.coeffs()[::-1])
        return RatFunc(-self._v - dn + dd, num, den)

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return NotImplemented
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self._v == o._v and self._n == o._n and self._d == o._d

    def __hash__(self):
        if self._h is None:
            if self.is_laurent():
                self._h = hash(self.to_laurent())
            else:
                self._h = hash((self._v, _poly_key(self._n), _poly_key(self._d)))
        return self._h

    def __call__(self, a: complex) -> complex:
        a = complex(a)
        d = _horner(self._d.coeffs(), a)
        if abs(d) < 1e-300:
            raise DenominatorVanishes("denominator vanishes at the evaluation point")
        return a ** self._v * _horner(self._n.coeffs(), a) / d

    def __repr__(self):
        if self.is_laurent():
            return repr(self.to_laurent())
        return f"({self.numerator!r})/({self.denominator!r})"


# --------------------------------------------------------------------------
# Roots of unity and cyclotomic numbers


@dataclass(frozen=True)
class QRoot:
    """The root of unity exp(2*pi*i*k/M)."""

    order: int
    exponent: int

    def __post_init__(self):
        if self.order < 1:
            raise InvalidInput("order must be positive")
        object.__setattr__(self, "exponent", self.exponent % self.order)

    @classmethod
    def primitive(cls, order: int, exponent: int = 1) -> "QRoot":
        if math.gcd(order, exponent) != 1:
            raise InvalidInput(f"exp(2 pi i {exponent}/{order}) is not primitive")
        return cls(order, exponent)

    def is_primitive(self) -> bool:
        return math.gcd(self.order, self.exponent) == 1

    def __complex__(self) -> complex:
        return cmath.exp(2j * math.pi * self.exponent / self.order)

    def __pow__(self, k: int) -> "QRoot":
        return QRoot(self.order, self.exponent * k)

    def __mul__(self, other: "QRoot") -> "QRoot":
        m = math.lcm(self.order, other.order)
        return QRoot(m, self.exponent * (m // self.order) + other.exponent * (m // other.order))

    def reduced(self) -> "QRoot":
        """Same complex number with the smallest order."""
        g = math.gcd(self.order, self.exponent)
        return QRoot(self.order // g, self.exponent // g)

    def multiplicative_order(self) -> int:
        return self.reduced().order

    def angle(self) -> Fraction:
        """Argument divided by 2*pi, in [0, 1)."""
        return Fraction(self.exponent, self.order)

    def to_cyclo(self, order: int | None = None) -> "CycloNum":
        m = self.order if order is None else order
        if m % self.order:
            raise InvalidInput(f"{self} does not live in Q(zeta_{m})")
        return CycloNum.zeta(m, self.exponent * (m // self.order))


@lru_cache(maxsize=None)
def _cyclotomic(m: int) -> flint.fmpq_poly:
    return flint.fmpq_poly(flint.fmpz_poly.cyclotomic(m).coeffs())


class CycloNum:
    """Element of Q(zeta_M), zeta_M = exp(2 pi i / M).

    The coefficient polynomial is reduced modulo the cyclotomic polynomial
    Phi_M, so equality and zero tests are exact structural comparisons.

    >>> z = CycloNum.zeta(8)
    >>> z**4 == -1
    True
    >>> (z + z**-1)**2 == 2
    True
    """

    __slots__ = ("order", "_p", "_h")

    def __init__(self, order: int, poly: flint.fmpq_poly, _reduced: bool = False):
        if not _reduced:
            poly = poly % _cyclotomic(order) if poly.degree() >= _cyclotomic(order).degree() else poly
        self.order = order
        self._p = poly
        self._h = None

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "CycloNum":
        k %= order
        vec = [0] * (k + 1)
        vec[k] = 1
        return cls(order, flint.fmpq_poly(vec))

    @classmethod
    def const(cls, order: int, c) -> "CycloNum":
        return cls(order, flint.fmpq_poly([_to_fmpq(c)]), _reduced=True)

    @classmethod
    def from_coeffs(cls, order: int, coeffs) -> "CycloNum":
        """Build sum_j coeffs[j] zeta^j (any length)."""
        m = order
        vec = [flint.fmpq(0)] * m
        for j, c in enumerate(coeffs):
            vec[j % m] += _to_fmpq(c)
        return cls(order, flint.fmpq_poly(vec))

    def coerce(self, x) -> "CycloNum":
        if isinstance(x, CycloNum):
            return x
        if isinstance(x, (int, Fraction, flint.fmpq, flint.fmpz)):
            return CycloNum.const(self.order, x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycloNum")

    def lift(self, order: int) -> "CycloNum":
        """Re-express in Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order:
            raise InvalidInput(f"Q(zeta_{self.order}) is not a subfield of Q(zeta_{order})")
        step = order // self.order
        vec = [flint.fmpq(0)] * (step * max(self._p.degree(), 0) + 1)
        for j, c in enumerate(self._p.coeffs()):
            vec[j * step] = c
        return CycloNum(order, flint.fmpq_poly(vec))

    def _common(self, other):
        if isinstance(other, CycloNum):
            if other.order == self.order:
                return self, other
            m = math.lcm(self.order, other.order)
            return self.lift(m), other.lift(m)
        return self, self.coerce(other)

    @property
    def coeffs(self) -> list[Fraction]:
        """Length-M coefficient vector in powers of zeta (reduced form)."""
        out = [Fraction(0)] * self.order
        for j, c in enumerate(self._p.coeffs()):
            out[j] = _fq(c)
        return out

    def is_zero(self) -> bool:
        return self._p == 0

    def is_rational(self) -> bool:
        return self._p.degree() <= 0

    def __add__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloNum(a.order, a._p + b._p, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.order, -self._p, _reduced=True)

    def __sub__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloNum(a.order, a._p - b._p, _reduced=True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNum(self.order, self._p * _to_fmpq(other), _reduced=True)
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloNum(a.order, a._p * b._p)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        g, s, _ = self._p.xgcd(_cyclotomic(self.order))
        # Phi_M is irreducible, so g is a non-zero constant
        return CycloNum(self.order, s / g.coeffs()[0])

    def __truediv__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNum.const(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "CycloNum":
        """Complex conjugate (zeta -> zeta^-1)."""
        m = self.order
        vec = [flint.fmpq(0)] * m
        for j, c in enumerate(self._p.coeffs()):
            vec[(-j) % m] += c
        return CycloNum(m, flint.fmpq_poly(vec))

    def galois(self, t: int) -> "CycloNum":
        """Image under zeta -> zeta^t (t coprime to the order)."""
        m = self.order
        if math.gcd(t, m) != 1:
            raise InvalidInput("Galois exponent must be a unit")
        vec = [flint.fmpq(0)] * m
        for j, c in enumerate(self._p.coeffs()):
            vec[(t * j) % m] += c
        return CycloNum(m, flint.fmpq_poly(vec))

    def __eq__(self, other):
        if isinstance(other, (LaurentPoly, RatFunc)):
            return NotImplemented
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return a._p == b._p

    def __hash__(self):
        if self._h is None:
            if self.is_rational():
                self._h = hash(_fq(self._p.coeffs()[0]) if self._p != 0 else 0)
            else:
                # numbers of different orders are never mixed in hashed containers
                self._h = hash((self.order, _poly_key(self._p)))
        return self._h

    def __complex__(self) -> complex:
        z = cmath.exp(2j * math.pi / self.order)
        return _horner(self._p.coeffs(), z)

    def __repr__(self):
        items = [(j, c) for j, c in enumerate(self.coeffs) if c != 0]
        return _fmt_terms(sorted(items, reverse=True), f"z{self.order}")

    def to_json(self) -> dict:
        z = complex(self)
        return {
            "order": self.order,
            "coeffs": [str(c) for c in self.coeffs],
            "approx": [z.real, z.imag],
        }

    @classmethod
    def from_json(cls, d: dict) -> "CycloNum":
        return cls.from_coeffs(int(d["order"]), [Fraction(c) for c in d["coeffs"]])


def cyclo_eval(p, a: QRoot, order: int | None = None) -> CycloNum:
    """Evaluate a Laurent polynomial or rational function at A = a exactly.

    The result lives in Q(zeta_order) (default: a.order).
    Raises DenominatorVanishes when the denominator of p vanishes at a.
    """
    m = a.order if order is None else order
    if m % a.order:
        raise InvalidInput("evaluation order must be a multiple of the root order")
    k = a.exponent * (m // a.order)
    if isinstance(p, (int, Fraction)):
        return CycloNum.const(m, p)
    if isinstance(p, RatFunc):
        den = cyclo_eval(p.denominator, a, m)
        if den.is_zero():
            raise DenominatorVanishes(f"denominator of {p!r} vanishes at {a}")
        return cyclo_eval(p.numerator, a, m) / den
    if not isinstance(p, LaurentPoly):
        raise TypeError(f"cannot evaluate {type(p).__name__}")
    vec = [flint.fmpq(0)] * m
    for e, c in p.coeffs.items():
        vec[(k * e) % m] += _to_fmpq(c)
    return CycloNum(m, flint.fmpq_poly(vec))


# --------------------------------------------------------------------------
# Quantum integers and Chebyshev polynomials


@lru_cache(maxsize=None)
def quantum_int(k: int) -> LaurentPoly:
    """[k] = (A^{2k} - A^{-2k}) / (A^2 - A^{-2}); [-k] = -[k]."""
    if k < 0:
        return -quantum_int(-k)
    return LaurentPoly.from_dict({2 * k - 2 - 4 * j: 1 for j in range(k)})


@lru_cache(maxsize=None)
def quantum_factorial(k: int) -> LaurentPoly:
    if k < 0:
        raise InvalidInput("factorial of a negative integer")
    out = LaurentPoly.const(1)
    for j in range(2, k + 1):
        out = out * quantum_int(j)
    return out


def loop_value() -> LaurentPoly:
    """Value of a trivial loop: -A^2 - A^-2."""
    return LaurentPoly.from_dict({2: -1, -2: -1})


@lru_cache(maxsize=None)
def chebyshev(l: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of e_l in z: e_0=1, e_1=z, z e_l = e_{l+1} + e_{l-1}.

    >>> chebyshev(3)
    (0, -2, 0, 1)
    """
    if l < 0:
        raise InvalidInput("Chebyshev index must be non-negative")
    if l == 0:
        return (1,)
    if l == 1:
        return (0, 1)
    a, b = chebyshev(l - 2), chebyshev(l - 1)
    out = [0] * (l + 1)
    for i, c in enumerate(b):
        out[i + 1] += c
    for i, c in enumerate(a):
        out[i] -= c
    return tuple(out)


def chebyshev_eval(l: int, z):
    """e_l(z) by the three-term recurrence, for any ring element z."""
    if l < 0:
        raise InvalidInput("Chebyshev index must be non-negative")
    prev, cur = 1, z
    if l == 0:
        return 1
    for _ in range(l - 1):
        prev, cur = cur, z * cur - prev
    return cur


@lru_cache(maxsize=None)
def _cheb_power(N: int, n: int) -> tuple[tuple[int, int], ...]:
    if n == 0:
        return ((0, 1),)
    acc: dict[int, int] = {}
    for l, c in _cheb_power(N, n - 1):
        for m in range(abs(l - N), l + N + 1, 2):
            acc[m] = acc.get(m, 0) + c
    return tuple(sorted(acc.items()))


def chebyshev_product_coeffs(N: int, n: int) -> dict[int, int]:
    """Coefficients c(l) with (e_N)^n = sum_l c(l) e_l.

    >>> chebyshev_product_coeffs(1, 4)
    {0: 2, 2: 3, 4: 1}
    """
    if N < 0 or n < 0:
        raise InvalidInput("N and n must be non-negative")
    return dict(_cheb_power(N, n))


def torus_reduce(l: int, r: int) -> tuple[int, int] | None:
    """Reduce e_l in V_{2r}(S^1 x S^1) to (sign, m) meaning sign*e_m, or None for 0.

    Uses e_{2r+b} = e_b, e_{r+a} = -e_{r-2-a} and e_{-1} = 0.
    """
    if r < 2:
        raise InvalidInput("level r must be at least 2")
    if l < 0:
        raise InvalidInput("Chebyshev index must be non-negative")
    b = l % (2 * r)
    if b <= r - 2:
        return (1, b)
    if b == r - 1:
        return None
    m = r - 2 - (b - r)
    if m < 0:
        return None
    return (-1, m)


def tqft_dimension(n: int, N: int, k: int, r: int) -> int:
    """dim V_{2r}(S^2, (N)_n, (k)) via the torus pairing <e_k, (e_N)^n>."""
    if min(n, N, k) < 0:
        raise InvalidInput("colors and counts must be non-negative")
    if N > r - 1 or k > r - 1:
        raise InvalidInput(f"colors must be at most r-1 = {r - 1}")
    if k == r - 1:
        return 0
    total = 0
    for l, c in chebyshev_product_coeffs(N, n).items():
        red = torus_reduce(l, r)
        if red is not None and red[1] == k:
            total += red[0] * c
    return total


# --------------------------------------------------------------------------
# Scalar rings used by the diagram code


@dataclass(frozen=True)
class LaurentRing:
    """Z[A, A^-1] with rational coefficients; no general division."""

    name = "laurent"

    @property
    def A(self) -> LaurentPoly:
        return LaurentPoly.gen()

    @property
    def zero(self) -> LaurentPoly:
        return LaurentPoly()

    @property
    def one(self) -> LaurentPoly:
        return LaurentPoly.const(1)

    def __call__(self, x) -> LaurentPoly:
        if isinstance(x, RatFunc):
            return x.to_laurent()
        return LaurentPoly.coerce(x)

    def conj(self, x):
        return x.conj()

    def to_complex(self, x, a: complex) -> complex:
        return x(a)


@dataclass(frozen=True)
class RatFuncRing:
    """The field Q(A) of rational functions."""

    name = "ratfunc"

    @property
    def A(self) -> RatFunc:
        return RatFunc.gen()

    @property
    def zero(self) -> RatFunc:
        return RatFunc.coerce(0)

    @property
    def one(self) -> RatFunc:
        return RatFunc.coerce(1)

    def __call__(self, x) -> RatFunc:
        return RatFunc.coerce(x)

    def conj(self, x):
        return x.conj()

    def to_complex(self, x, a: complex) -> complex:
        return x(a)


@dataclass(frozen=True)
class CycloRing:
    """Q(zeta_M) with A specialised to the root ``root`` (M = root.order)."""

    root: QRoot

    @property
    def order(self) -> int:
        return self.root.order

    @property
    def name(self) -> str:
        return f"cyclo({self.root.order},{self.root.exponent})"

    @property
    def A(self) -> CycloNum:
        return self.root.to_cyclo()

    @property
    def zero(self) -> CycloNum:
        return CycloNum.const(self.order, 0)

    @property
    def one(self) -> CycloNum:
        return CycloNum.const(self.order, 1)

    def __call__(self, x) -> CycloNum:
        if isinstance(x, CycloNum):
            return x.lift(self.order)
        return cyclo_eval(x, self.root)

    def conj(self, x: CycloNum) -> CycloNum:
        return x.conj()

    def to_complex(self, x, a=None) -> complex:
        return complex(x)


LAURENT = LaurentRing()
RATFUNC = RatFuncRing()

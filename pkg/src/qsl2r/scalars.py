"""Exact coefficient arithmetic for the symbolic layer.

Scalars are rational functions over the Gaussian rationals in the commuting
indeterminates

    u  = q^(1/2),   va = q^a,   vb = q^b,   z = q^c,   L = lambda,

so every formula that is Laurent in q^(1/2), q^a, q^b, q^c and polynomial in
lambda has an exact representation.  Canonicalization goes through
``sympy.cancel``, which reduces numerator/denominator to lowest terms; two
Scalars are equal iff their difference cancels to zero.

All values are immutable and all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import sympy

__all__ = [
    "U", "VA", "VB", "ZC", "LAM", "IUNIT",
    "Scalar", "ScalarError", "ExponentError", "PoleError",
    "qpow", "qnum", "qbrack", "qang",
    "fqnum", "fqbrack", "fqang",
]

# u, va, vb, z are positive reals under any admissible assignment
# (q in (0,1), real exponents); L is real.  The assumptions make
# sympy.conjugate act as i -> -i on coefficients.
U = sympy.Symbol("u", positive=True)
VA = sympy.Symbol("va", positive=True)
VB = sympy.Symbol("vb", positive=True)
ZC = sympy.Symbol("z", positive=True)
LAM = sympy.Symbol("L", real=True)
IUNIT = sympy.I

_SYMS = {"u": U, "va": VA, "vb": VB, "z": ZC, "L": LAM}


class ScalarError(Exception):
    """Base class for scalar-layer errors."""


class ExponentError(ScalarError, ValueError):
    """Exponent is not an integer combination of 1, 1/2, a, b, c."""


class PoleError(ScalarError, ZeroDivisionError):
    """Denominator vanishes at the requested assignment."""


def _as_expr(x):
    if isinstance(x, Scalar):
        return x._e
    if isinstance(x, Rational):
        return sympy.Rational(x.numerator, x.denominator)
    if isinstance(x, (int, sympy.Expr)):
        return sympy.sympify(x)
    if isinstance(x, complex):
        raise TypeError("floats/complex cannot enter exact Scalars; use evaluate()")
    raise TypeError(f"cannot coerce {type(x).__name__} into Scalar")


class Scalar:
    """An exact rational function, canonicalized on construction."""

    __slots__ = ("_e",)

    def __init__(self, value=0, _canonical=False):
        e = _as_expr(value)
        if not _canonical:
            e = sympy.cancel(e)
        object.__setattr__(self, "_e", e)

    def __setattr__(self, *a):  # immutability
        raise AttributeError("Scalar is immutable")

    @property
    def expr(self) -> sympy.Expr:
        return self._e

    # -- ring/field operations -------------------------------------------

    def __add__(self, other):
        try:
            return Scalar(self._e + _as_expr(other))
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self._e, _canonical=True)

    def __sub__(self, other):
        try:
            return Scalar(self._e - _as_expr(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return Scalar(_as_expr(other) - self._e)
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        try:
            return Scalar(self._e * _as_expr(other))
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        d = _as_expr(other)
        if sympy.cancel(d) == 0:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(self._e / d)

    def __rtruediv__(self, other):
        if self.is_zero():
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(_as_expr(other) / self._e)

    def __pow__(self, n: int):
        return Scalar(self._e ** int(n))

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return self._e == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            d = _as_expr(other)
        except TypeError:
            return NotImplemented
        return sympy.cancel(self._e - d) == 0

    def __hash__(self):
        return hash(sympy.cancel(sympy.together(self._e)))

    def conj(self) -> "Scalar":
        """Conjugation: fixes u, va, vb, z, L; sends i to -i."""
        return Scalar(sympy.conjugate(self._e))

    def subs_c_shift(self, k: int) -> "Scalar":
        """Substitute c -> c + k, i.e. z -> q^k z = u^(2k) z."""
        return Scalar(self._e.subs(ZC, U ** (2 * k) * ZC))

    # -- evaluation ------------------------------------------------------

    def evaluate(self, q: float, a: float = 0.0, b: float = 0.0,
                 c: float = 0.0, lam: float = 0.0) -> complex:
        """Ring-homomorphic float instantiation.

        Raises PoleError when the denominator vanishes at the assignment.
        """
        if not 0.0 < q < 1.0:
            raise ValueError(f"q must lie in (0,1), got {q}")
        subs = {U: sympy.Float(q, 25) ** sympy.Rational(1, 2),
                VA: sympy.Float(q, 25) ** sympy.Float(a, 25),
                VB: sympy.Float(q, 25) ** sympy.Float(b, 25),
                ZC: sympy.Float(q, 25) ** sympy.Float(c, 25),
                LAM: sympy.Float(lam, 25)}
        num, den = sympy.fraction(self._e)
        den_v = complex(den.evalf(25, subs=subs))
        if abs(den_v) < 1e-18:
            raise PoleError(f"denominator {den} vanishes at the assignment")
        num_v = complex(num.evalf(25, subs=subs))
        return num_v / den_v

    # -- rendering -------------------------------------------------------

    def render(self) -> str:
        """Canonical string form, e.g. ``((1+i)*u^2*va^-1 + 2)/(u^4 - 1)``."""
        num, den = sympy.fraction(self._e)
        s_num = str(sympy.expand(num)).replace("**", "^").replace("I", "i")
        if den == 1:
            return s_num
        s_den = str(sympy.expand(den)).replace("**", "^").replace("I", "i")
        return f"({s_num})/({s_den})"

    @staticmethod
    def parse(text: str) -> "Scalar":
        """Inverse of render (modulo canonicalization)."""
        from sympy.parsing.sympy_parser import (
            implicit_multiplication_application, parse_expr,
            standard_transformations)
        src = text.replace("^", "**")
        loc = dict(_SYMS)
        loc["i"] = sympy.I
        loc["I"] = sympy.I
        expr = parse_expr(
            src, local_dict=loc,
            transformations=standard_transformations
            + (implicit_multiplication_application,))
        return Scalar(expr)

    def __repr__(self):
        return f"Scalar({self.render()})"


ZERO = Scalar(0)
ONE = Scalar(1)


# -- exponents ------------------------------------------------------------

def _exponent_monomial(c) -> sympy.Expr:
    """q^c as a Laurent monomial in u, va, vb, z.

    ``c`` may be an int, a Fraction with denominator dividing 2, or a dict
    with keys among {"1", "a", "b", "c"} mapping to such numbers (the "a",
    "b", "c" parts must be integers).
    """
    if isinstance(c, dict):
        parts = c
    else:
        parts = {"1": c}
    unknown = set(parts) - {"1", "a", "b", "c"}
    if unknown:
        raise ExponentError(f"unsupported exponent parts {sorted(unknown)}")
    const = Fraction(parts.get("1", 0))
    if (2 * const).denominator != 1:
        raise ExponentError(
            f"constant exponent part {const} is not a multiple of 1/2")
    mono = U ** int(2 * const)
    for key, sym in (("a", VA), ("b", VB), ("c", ZC)):
        k = parts.get(key, 0)
        if k != int(k):
            raise ExponentError(f"{key}-exponent {k} is not an integer")
        mono *= sym ** int(k)
    return mono


def qpow(c) -> Scalar:
    """The monomial q^c for an admissible exponent shape."""
    return Scalar(_exponent_monomial(c))


def qnum(c) -> Scalar:
    """The q-number [c] = (q^-c - q^c)/(q^-1 - q)."""
    m = _exponent_monomial(c)
    return Scalar((1 / m - m) / (1 / U ** 2 - U ** 2))


def qbrack(c) -> Scalar:
    """[[c]] = q^c - q^-c."""
    m = _exponent_monomial(c)
    return Scalar(m - 1 / m)


def qang(c) -> Scalar:
    """<c> = q^c + q^-c."""
    m = _exponent_monomial(c)
    return Scalar(m + 1 / m)


# -- float companions (used by the module/classification layer) -----------

def fqnum(q: float, c: float) -> float:
    return (q ** (-c) - q ** c) / (1.0 / q - q)


def fqbrack(q: float, c: float) -> float:
    return q ** c - q ** (-c)


def fqang(q: float, c: float) -> float:
    return q ** c + q ** (-c)

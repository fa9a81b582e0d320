"""Rational functions over the exact Laurent-polynomial ring.

Canonical form: the denominator is an honest polynomial, integer-primitive
with positive leading coefficient and no monomial content — every rational,
sign, and monomial unit is pushed into the numerator, and the pair is
gcd-reduced.  Two equal rational functions are therefore structurally equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

from .errors import DomainError, PoleError
from .poly import (
    LaurentMPoly,
    exact_divide,
    format_poly,
    poly_from_json,
    poly_gcd,
    poly_to_json,
    rational_content,
)

Scalar = Union[int, Fraction]
RFLike = Union["RationalFunction", LaurentMPoly, int, Fraction]


def _coerce(x: RFLike) -> "RationalFunction":
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, LaurentMPoly):
        return RationalFunction(x, LaurentMPoly.const(1))
    if isinstance(x, (int, Fraction)):
        return RationalFunction(LaurentMPoly.const(x), LaurentMPoly.const(1))
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational function")


def _push_units(num: LaurentMPoly,
                den: LaurentMPoly) -> tuple[LaurentMPoly, LaurentMPoly]:
    """Move every unit of the denominator (monomial content, rational
    content, sign) onto the numerator, leaving the canonical denominator."""
    den_p, unit = den.clear_laurent()
    for v, m in unit.items():
        num = num.shift_var(v, -m)
    c = rational_content(den_p)
    if den_p.leading()[1] < 0:
        c = -c
    if c != 1:
        den_p = den_p.map_coeffs(lambda x: x / c)
        num = num.map_coeffs(lambda x: x / c)
    return num, den_p


class RationalFunction:
    """num / den with the canonical form described in the module docstring."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentMPoly, den: LaurentMPoly):
        if den.is_zero():
            raise DomainError("rational function with zero denominator")
        if num.is_zero():
            object.__setattr__(self, "num", LaurentMPoly.zero())
            object.__setattr__(self, "den", LaurentMPoly.const(1))
            return
        num, den_p = _push_units(num, den)
        g = poly_gcd(num, den_p)
        if not g.is_constant():
            num = exact_divide(num, g)
            den_p = exact_divide(den_p, g)
            num, den_p = _push_units(num, den_p)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den_p)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def _reduced(cls, num: LaurentMPoly,
                 den: LaurentMPoly) -> "RationalFunction":
        """Assemble from a pair already coprime up to units, skipping the
        expensive gcd; cross-cancellation in the arithmetic below keeps
        reduced operands reduced."""
        self = cls.__new__(cls)
        if num.is_zero():
            object.__setattr__(self, "num", LaurentMPoly.zero())
            object.__setattr__(self, "den", LaurentMPoly.const(1))
            return self
        num, den = _push_units(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        return self

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "RationalFunction":
        return RationalFunction(LaurentMPoly.zero(), LaurentMPoly.const(1))

    @staticmethod
    def one() -> "RationalFunction":
        return RationalFunction(LaurentMPoly.const(1), LaurentMPoly.const(1))

    @staticmethod
    def const(c: Scalar) -> "RationalFunction":
        return RationalFunction(LaurentMPoly.const(c), LaurentMPoly.const(1))

    @staticmethod
    def var(name: str, power: int = 1) -> "RationalFunction":
        return RationalFunction(LaurentMPoly.var(name, power),
                                LaurentMPoly.const(1))

    @staticmethod
    def from_fraction(num: LaurentMPoly, den: LaurentMPoly) -> "RationalFunction":
        return RationalFunction(num, den)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == LaurentMPoly.const(1) and self.den == LaurentMPoly.const(1)

    def is_polynomial(self) -> bool:
        return self.den == LaurentMPoly.const(1)

    def as_polynomial(self) -> LaurentMPoly:
        if not self.is_polynomial():
            raise DomainError(f"{self} is not a Laurent polynomial")
        return self.num

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise DomainError(f"{self} is not constant")
        return self.num.constant_value() / self.den.constant_value()

    def variables(self) -> tuple[str, ...]:
        merged = LaurentMPoly._merge_vars(self.num, self.den)
        return merged

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, LaurentMPoly)):
            other = _coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({format_ratfun(self)!r})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "RationalFunction":
        # Henrici's scheme: with both operands reduced, the only factor the
        # sum can share with the common denominator divides gcd of the two
        # denominators, so the big-product gcd is never needed
        try:
            o = _coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        g = self.den if self.den == o.den else poly_gcd(self.den, o.den)
        if g.is_constant():
            return RationalFunction._reduced(
                self.num * o.den + o.num * self.den, self.den * o.den)
        db = exact_divide(self.den, g)
        dd = exact_divide(o.den, g)
        t = self.num * dd + o.num * db
        if t.is_zero():
            return RationalFunction.zero()
        g2 = poly_gcd(t, g)
        if g2.is_constant():
            return RationalFunction._reduced(t, db * o.den)
        return RationalFunction._reduced(
            exact_divide(t, g2), db * exact_divide(o.den, g2))

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction._reduced(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        try:
            o = _coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "RationalFunction":
        return (-self) + other

    def __mul__(self, other) -> "RationalFunction":
        # cross-cancellation: each numerator only shares factors with the
        # opposite denominator, and both of those gcds are small
        try:
            o = _coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RationalFunction.zero()
        n1, d2 = self.num, o.den
        g1 = poly_gcd(n1, d2)
        if not g1.is_constant():
            n1, d2 = exact_divide(n1, g1), exact_divide(d2, g1)
        n2, d1 = o.num, self.den
        g2 = poly_gcd(n2, d1)
        if not g2.is_constant():
            n2, d1 = exact_divide(n2, g2), exact_divide(d1, g2)
        return RationalFunction._reduced(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        try:
            o = _coerce(other)
        except TypeError:
            return NotImplemented
        if o.is_zero():
            raise DomainError("division by the zero rational function")
        return self * o.inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return _coerce(other) / self

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise DomainError("inverse of the zero rational function")
        return RationalFunction._reduced(self.den, self.num)

    def __pow__(self, n: int) -> "RationalFunction":
        if not isinstance(n, int):
            raise TypeError("rational-function power must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return RationalFunction.one()
        # powers of a reduced pair stay reduced
        return RationalFunction._reduced(self.num ** n, self.den ** n)

    # -- substitution and evaluation ---------------------------------------

    def subst(self, bindings: Mapping[str, RFLike]) -> "RationalFunction":
        """Substitute rational functions for variables; unbound variables
        stay symbolic.  Raises DomainError if a denominator vanishes under
        the substitution."""
        bound = {v: _coerce(x) for v, x in bindings.items()}

        def through(p: LaurentMPoly) -> RationalFunction:
            relevant = [v for v in p.vars if v in bound]
            if not relevant:
                return _coerce(p)
            acc = RationalFunction.zero()
            for e, c in p.terms.items():
                t = RationalFunction.const(c)
                for v, k in zip(p.vars, e):
                    if k == 0:
                        continue
                    f = bound.get(v)
                    if f is None:
                        t = t * RationalFunction.var(v, k)
                    else:
                        if f.is_zero() and k < 0:
                            raise DomainError(
                                f"negative power of {v} with {v} bound to zero")
                        t = t * f ** k
                acc = acc + t
            return acc

        dn = through(self.den)
        if dn.is_zero():
            names = ", ".join(sorted(set(self.den.vars) & set(bound)))
            raise DomainError(
                f"denominator vanishes under the substitution of {names}")
        return through(self.num) / dn

    def eval_exact(self, point: Mapping[str, Scalar]) -> Fraction:
        d = self.den.eval_exact(point)
        if d == 0:
            raise PoleError(
                f"denominator {format_poly(self.den)} vanishes at the "
                "evaluation point")
        return self.num.eval_exact(point) / d

    def eval_complex(self, point: Mapping[str, complex]) -> complex:
        d = self.den.eval_complex(point)
        if d == 0:
            raise PoleError(
                f"denominator {format_poly(self.den)} vanishes at the "
                "evaluation point")
        return self.num.eval_complex(point) / d


# -- formatting and serialization ------------------------------------------

def format_ratfun(f: RationalFunction) -> str:
    if f.is_polynomial():
        return format_poly(f.num)
    num = format_poly(f.num)
    den = format_poly(f.den)
    if len(f.num.terms) > 1:
        num = f"({num})"
    if len(f.den.terms) > 1:
        den = f"({den})"
    return f"{num} / {den}"


def ratfun_to_json(f: RationalFunction) -> dict:
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def ratfun_from_json(obj: dict) -> RationalFunction:
    try:
        num = poly_from_json(obj["num"])
        den = poly_from_json(obj["den"])
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed rational-function JSON: {exc}") from exc
    return RationalFunction(num, den)

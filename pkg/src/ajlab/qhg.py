"""Proper q-hypergeometric summands and their exact shift ratios.

A summand is a product of a sign, a q-power of a quadratic form in the
integer arguments, and finite q-Pochhammer factors (q)_L = (1-q)...(1-q^L)
whose lengths L are integer linear forms.  The arguments are one or two
colors (``n``; or ``m``, ``mp``) plus lattice indices ``k1..k_nu``.

Shifting one argument by an integer multiplies the summand by a rational
function of q and of the exponentials of the arguments; ``shift_ratio``
returns that ratio exactly, over the symbols

    n -> Q,  m -> Qm,  mp -> Qmp,  ki -> Qt_i

with half-integer exponents carried by square-root symbols (q -> s,
Qm -> Sm, Qmp -> Smp, Qt_i -> St_i).  ``epsilon_ratio`` is the same ratio
in the q -> 1 limit, with the exponential symbols kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .errors import DomainError, PoleError, SupportError
from .poly import LaurentMPoly, exact_divide
from .ratfun import RationalFunction

Scalar = Union[int, Fraction]

_COLOR_SETS = (("n",), ("m",), ("m", "mp"))
_EXP_VAR = {"n": "Q", "m": "Qm", "mp": "Qmp"}
_HALF_VAR = {"m": "Sm", "mp": "Smp"}


def _lattice_sym(i: int) -> str:
    return f"k{i}"


def _sym_exp_var(sym: str) -> str:
    if sym in _EXP_VAR:
        return _EXP_VAR[sym]
    if sym.startswith("k") and sym[1:].isdigit():
        return f"Qt{sym[1:]}"
    raise DomainError(f"unknown argument symbol {sym!r}")


def _sym_half_var(sym: str) -> str:
    if sym in _HALF_VAR:
        return _HALF_VAR[sym]
    if sym.startswith("k") and sym[1:].isdigit():
        return f"St{sym[1:]}"
    raise DomainError(
        f"half-integer exponent on {sym!r} has no square-root symbol")


def _frac(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class LinearForm:
    """sum coeffs[sym] * sym + const, with exact rational coefficients."""

    coeffs: tuple[tuple[str, Fraction], ...]
    const: Fraction = Fraction(0)

    @staticmethod
    def make(coeffs: Mapping[str, Scalar], const: Scalar = 0) -> "LinearForm":
        items = tuple(sorted((s, _frac(c)) for s, c in coeffs.items()
                             if _frac(c) != 0))
        return LinearForm(items, _frac(const))

    def coeff(self, sym: str) -> Fraction:
        for s, c in self.coeffs:
            if s == sym:
                return c
        return Fraction(0)

    def value(self, env: Mapping[str, int]) -> Fraction:
        total = self.const
        for s, c in self.coeffs:
            if s not in env:
                raise DomainError(f"no value for argument {s}")
            total += c * env[s]
        return total

    def is_integral(self) -> bool:
        return (self.const.denominator == 1
                and all(c.denominator == 1 for _, c in self.coeffs))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        d = dict(self.coeffs)
        for s, c in other.coeffs:
            d[s] = d.get(s, Fraction(0)) + c
        return LinearForm.make(d, self.const + other.const)

    def scaled(self, k: Scalar) -> "LinearForm":
        k = _frac(k)
        return LinearForm.make({s: c * k for s, c in self.coeffs},
                               self.const * k)


def _affine_monomial(coeffs: Mapping[str, Fraction], const: Fraction,
                     q_extra: int = 0) -> LaurentMPoly:
    """q**(const + extra) * prod exp(sym)**coeff as a Laurent monomial,
    using square-root symbols for half-integer parts."""
    powers: dict[str, int] = {}

    def add(var: str, k: int):
        powers[var] = powers.get(var, 0) + k

    c0 = const + q_extra
    if c0.denominator == 1:
        if c0 != 0:
            add("q", int(c0))
    elif (2 * c0).denominator == 1:
        add("s", int(2 * c0))
    else:
        raise DomainError(f"exponent {c0} is neither integer nor half-integer")
    for sym, c in coeffs.items():
        if c == 0:
            continue
        if c.denominator == 1:
            add(_sym_exp_var(sym), int(c))
        elif (2 * c).denominator == 1:
            add(_sym_half_var(sym), int(2 * c))
        else:
            raise DomainError(
                f"exponent {c} on {sym} is neither integer nor half-integer")
    return LaurentMPoly.monomial(1, powers) if powers else LaurentMPoly.const(1)


@dataclass(frozen=True)
class QuadForm:
    """Quadratic + linear + constant exponent of q.

    ``quad`` maps unordered symbol pairs (stored sorted) to coefficients:
    {(s,s): a} contributes a*s^2, {(s,t): b} contributes b*s*t.
    """

    quad: tuple[tuple[tuple[str, str], Fraction], ...]
    lin: LinearForm

    @staticmethod
    def make(quad: Mapping[tuple[str, str], Scalar],
             lin: Optional[Mapping[str, Scalar]] = None,
             const: Scalar = 0) -> "QuadForm":
        items: dict[tuple[str, str], Fraction] = {}
        for (a, b), c in quad.items():
            key = (a, b) if a <= b else (b, a)
            items[key] = items.get(key, Fraction(0)) + _frac(c)
        qt = tuple(sorted((k, v) for k, v in items.items() if v != 0))
        return QuadForm(qt, LinearForm.make(lin or {}, const))

    def value(self, env: Mapping[str, int]) -> Fraction:
        total = self.lin.value(env)
        for (a, b), c in self.quad:
            total += c * env[a] * env[b]
        return total

    def shift_delta(self, sym: str, step: int) -> tuple[dict[str, Fraction], Fraction]:
        """Affine form  value(x + step*e_sym) - value(x)  as (coeffs, const)."""
        coeffs: dict[str, Fraction] = {}
        const = self.lin.coeff(sym) * step
        for (a, b), c in self.quad:
            if a == b == sym:
                coeffs[sym] = coeffs.get(sym, Fraction(0)) + 2 * c * step
                const += c * step * step
            elif a == sym:
                coeffs[b] = coeffs.get(b, Fraction(0)) + c * step
            elif b == sym:
                coeffs[a] = coeffs.get(a, Fraction(0)) + c * step
        return coeffs, const


@dataclass(frozen=True)
class PochFactor:
    """(q)_L = prod_{j=1..L} (1 - q^j), with L an integer linear form;
    ``denom`` marks factors sitting under the fraction bar."""

    length: LinearForm
    denom: bool = False

    def __post_init__(self):
        if not self.length.is_integral():
            raise DomainError(
                "Pochhammer length must have integer coefficients")


@dataclass(frozen=True)
class ProperQHTerm:
    """Sign * q-quadratic * Pochhammer product, as data.

    ``constraints`` are extra integer linear forms required nonnegative for
    support, on top of every Pochhammer length.
    """

    colors: tuple[str, ...]
    nu: int
    poch: tuple[PochFactor, ...]
    quad: QuadForm
    sign: LinearForm = field(default_factory=lambda: LinearForm.make({}))
    constraints: tuple[LinearForm, ...] = ()

    def __post_init__(self):
        if self.colors not in _COLOR_SETS:
            raise DomainError(f"unsupported color arguments {self.colors}")
        if self.nu < 0:
            raise DomainError("negative lattice rank")
        syms = self.symbols()
        for f in self.poch:
            for s, _ in f.length.coeffs:
                if s not in syms:
                    raise DomainError(f"length uses unknown symbol {s}")
        if not self.sign.is_integral():
            raise DomainError("sign exponent must be an integer form")

    def symbols(self) -> tuple[str, ...]:
        return self.colors + tuple(_lattice_sym(i + 1) for i in range(self.nu))

    def _env(self, point: Sequence[int]) -> dict[str, int]:
        syms = self.symbols()
        if len(point) != len(syms):
            raise DomainError(
                f"point {tuple(point)} does not match arguments {syms}")
        return dict(zip(syms, (int(x) for x in point)))

    # -- support -----------------------------------------------------------

    def support_forms(self) -> tuple[LinearForm, ...]:
        return tuple(f.length for f in self.poch) + self.constraints

    def in_support(self, point: Sequence[int]) -> bool:
        env = self._env(point)
        return all(f.value(env) >= 0 for f in self.support_forms())

    # -- evaluation --------------------------------------------------------

    def eval_with_support(self, point: Sequence[int], qval: Scalar,
                          sval: Optional[Scalar] = None
                          ) -> tuple[Fraction, bool]:
        env = self._env(point)
        if not self.in_support(point):
            return Fraction(0), False
        qval = _frac(qval)
        e = self.quad.value(env)
        if e.denominator == 1:
            if qval == 0 and e < 0:
                raise DomainError("q = 0 under a negative exponent")
            total = qval ** int(e)
        else:
            if sval is None:
                raise DomainError(
                    f"half-integer exponent {e} needs a square root of q")
            sval = _frac(sval)
            if sval * sval != qval:
                raise DomainError(f"{sval} is not a square root of {qval}")
            total = sval ** int(2 * e)
        if int(self.sign.value(env)) % 2:
            total = -total
        for f in self.poch:
            ln = int(f.length.value(env))
            prod = Fraction(1)
            for j in range(1, ln + 1):
                prod *= 1 - qval ** j
            if f.denom:
                if prod == 0:
                    raise PoleError(
                        f"(q)_{ln} vanishes at q = {qval} under the bar")
                total /= prod
            else:
                total *= prod
        return total, True

    def eval_exact(self, point: Sequence[int], qval: Scalar,
                   sval: Optional[Scalar] = None) -> Fraction:
        return self.eval_with_support(point, qval, sval)[0]

    def eval_symbolic(self, point: Sequence[int]) -> RationalFunction:
        """Value at an integer point as a rational function of q (and s
        when the exponent is half-integer); zero out of support."""
        env = self._env(point)
        if not self.in_support(point):
            return RationalFunction.zero()
        e = self.quad.value(env)
        num = _affine_monomial({}, e)
        den = LaurentMPoly.const(1)
        if int(self.sign.value(env)) % 2:
            num = -num
        for f in self.poch:
            ln = int(f.length.value(env))
            prod = LaurentMPoly.const(1)
            for j in range(1, ln + 1):
                prod = prod * (LaurentMPoly.const(1) - LaurentMPoly.var("q", j))
            if f.denom:
                den = den * prod
            else:
                num = num * prod
        return RationalFunction(num, den)

    def mul(self, other: "ProperQHTerm") -> "ProperQHTerm":
        """Product of summands over the same arguments."""
        if self.colors != other.colors or self.nu != other.nu:
            raise DomainError("summands have different arguments")
        quad = dict(self.quad.quad)
        for k, c in other.quad.quad:
            quad[k] = quad.get(k, Fraction(0)) + c
        lin = dict(self.quad.lin.coeffs)
        for s, c in other.quad.lin.coeffs:
            lin[s] = lin.get(s, Fraction(0)) + c
        return ProperQHTerm(
            colors=self.colors,
            nu=self.nu,
            poch=self.poch + other.poch,
            quad=QuadForm.make(dict(quad), lin,
                               self.quad.lin.const + other.quad.lin.const),
            sign=self.sign + other.sign,
            constraints=self.constraints + other.constraints,
        )


# -- shift ratios ----------------------------------------------------------

def _resolve_shift(term: ProperQHTerm, which: str) -> tuple[str, int]:
    colors = term.colors
    if which == "E":
        if colors != ("n",):
            raise DomainError(
                "shift E advances the color n; this summand is indexed by "
                + ", ".join(colors))
        return "n", 1
    if which == "Em":
        if colors == ("n",):
            return "n", 2  # n = 2m+1: one half-lattice step is two full steps
        return "m", 1
    if which == "Emp":
        if colors != ("m", "mp"):
            raise DomainError("shift Emp needs a two-color summand")
        return "mp", 1
    if which.startswith("Et") and which[2:].isdigit():
        i = int(which[2:])
        if not 1 <= i <= term.nu:
            raise DomainError(f"no lattice direction {i} (nu={term.nu})")
        return _lattice_sym(i), 1
    raise DomainError(f"unknown shift {which!r}")


def shift_ratio(term: ProperQHTerm, which: str) -> RationalFunction:
    """Exact ratio (shifted summand)/(summand) as a rational function of
    q and the exponential symbols."""
    sym, step = _resolve_shift(term, which)
    # sign change
    sflip = int(term.sign.coeff(sym) * step)
    sign = -1 if sflip % 2 else 1
    # quadratic exponent change -> monomial
    dcoeffs, dconst = term.quad.shift_delta(sym, step)
    num = _affine_monomial(dcoeffs, dconst) * sign
    den = LaurentMPoly.const(1)
    one = LaurentMPoly.const(1)
    for f in term.poch:
        d = int(f.length.coeff(sym) * step)
        if d == 0:
            continue
        js = range(0, d) if d > 0 else range(d, 0)
        into_num = (d > 0) != f.denom
        for j in js:
            # factor (1 - q^(L + j + 1)) at the unshifted point
            mono = _affine_monomial(dict(f.length.coeffs), f.length.const,
                                    q_extra=j + 1)
            lin = one - mono
            if into_num:
                num = num * lin
            else:
                den = den * lin
    return RationalFunction(num, den)


_Q_MINUS_1 = LaurentMPoly(("q",), {(1,): 1, (0,): -1})
_S_MINUS_1 = LaurentMPoly(("s",), {(1,): 1, (0,): -1})


def _one_limit(p: LaurentMPoly) -> tuple[int, LaurentMPoly]:
    """Order of vanishing as q -> 1 and the limit of the cofactor, with the
    exponential symbols kept.  Half-integer powers of q are unified through
    s (s^2 = q) first."""
    if p.is_zero():
        raise DomainError("limit of zero")
    if "s" in p.vars:
        si = p.vars.index("s")
        qi = p.vars.index("q") if "q" in p.vars else None
        terms: dict[tuple[int, ...], Fraction] = {}
        for e, c in p.terms.items():
            ne = list(e)
            if qi is not None:
                ne[si] += 2 * ne[qi]
                ne[qi] = 0
            key = tuple(ne)
            terms[key] = terms.get(key, Fraction(0)) + c
        p = LaurentMPoly(p.vars, terms)
        gauge = _S_MINUS_1
        gvar = "s"
    else:
        gauge = _Q_MINUS_1
        gvar = "q"
    body, unit = p.clear_laurent()
    unit.pop(gvar, None)  # powers of q (or s) tend to 1
    k = 0
    while True:
        at_one = body.subs_poly({gvar: LaurentMPoly.const(1)})
        if not at_one.is_zero():
            break
        body = exact_divide(body, gauge)
        k += 1
    limit = body.subs_poly({gvar: LaurentMPoly.const(1)})
    for v, m in unit.items():
        limit = limit.shift_var(v, m)
    return k, limit


def epsilon_ratio(term: ProperQHTerm, which: str) -> RationalFunction:
    """q -> 1 limit of ``shift_ratio``; the exponential symbols survive.

    A pole (the denominator vanishing to higher order than the numerator)
    raises PoleError.
    """
    r = shift_ratio(term, which)
    vn, ln = _one_limit(r.num)
    vd, ld = _one_limit(r.den)
    if vn < vd:
        raise PoleError(
            f"shift ratio {which} diverges as q -> 1 "
            f"(orders {vn} over {vd})")
    if vn > vd:
        return RationalFunction.zero()
    return RationalFunction(ln, ld)


# -- concrete summands -----------------------------------------------------

def build_crossing(positive: bool, normalization: str = "so3") -> ProperQHTerm:
    """Single-crossing summand in the four surrounding region indices
    k1..k4, in one of two normalizations:

    - "so3": one color (m), with the extra q^(+-(m^2+m)) twist,
    - "two-color": colors (m, mp), half-integer in (m + mp)/2.
    """
    k1, k2, k3, k4 = "k1", "k2", "k3", "k4"
    if normalization == "so3":
        if positive:
            quad = QuadForm.make(
                {("m", "m"): 1,
                 (k2, k2): 1, (k1, k2): -1, (k2, k3): -1, (k1, k3): 1,
                 ("m", k2): -1, ("m", k4): -1, ("m", k1): 1, ("m", k3): 1},
                {"m": 1})
            num = [LinearForm.make({"m": 1, k4: 1, k3: -1}),
                   LinearForm.make({"m": 1, k4: 1, k1: -1})]
            den = [LinearForm.make({k2: 1, k4: 1, k1: -1, k3: -1}),
                   LinearForm.make({"m": 1, k1: 1, k2: -1}),
                   LinearForm.make({"m": 1, k3: 1, k2: -1})]
            sign = LinearForm.make({})
        else:
            quad = QuadForm.make(
                {("m", "m"): -1,
                 (k3, k4): 1, (k4, k4): -1, (k1, k4): 1, (k1, k3): -1,
                 ("m", k1): -1, ("m", k3): -1, ("m", k2): 1, ("m", k4): 1},
                {"m": -1})
            num = [LinearForm.make({"m": 1, k1: 1, k4: -1}),
                   LinearForm.make({"m": 1, k3: 1, k4: -1})]
            den = [LinearForm.make({k1: 1, k3: 1, k2: -1, k4: -1}),
                   LinearForm.make({"m": 1, k2: 1, k3: -1}),
                   LinearForm.make({"m": 1, k2: 1, k1: -1})]
            sign = LinearForm.make({k1: 1, k3: 1, k2: -1, k4: -1})
        colors = ("m",)
    elif normalization == "two-color":
        if positive:
            quad = QuadForm.make(
                {(k2, k2): 1, (k1, k2): -1, (k2, k3): -1, (k1, k3): 1,
                 ("m", k2): Fraction(-1, 2), ("m", k4): Fraction(-1, 2),
                 ("m", k1): Fraction(1, 2), ("m", k3): Fraction(1, 2),
                 ("mp", k2): Fraction(-1, 2), ("mp", k4): Fraction(-1, 2),
                 ("mp", k1): Fraction(1, 2), ("mp", k3): Fraction(1, 2)})
            num = [LinearForm.make({"m": 1, k4: 1, k3: -1}),
                   LinearForm.make({"mp": 1, k4: 1, k1: -1})]
            den = [LinearForm.make({k2: 1, k4: 1, k1: -1, k3: -1}),
                   LinearForm.make({"m": 1, k2: 1, k1: -1}),
                   LinearForm.make({"mp": 1, k3: 1, k2: -1})]
            sign = LinearForm.make({})
        else:
            quad = QuadForm.make(
                {(k3, k4): 1, (k4, k4): -1, (k1, k4): 1, (k1, k3): -1,
                 ("m", k1): Fraction(-1, 2), ("m", k3): Fraction(-1, 2),
                 ("m", k2): Fraction(1, 2), ("m", k4): Fraction(1, 2),
                 ("mp", k1): Fraction(-1, 2), ("mp", k3): Fraction(-1, 2),
                 ("mp", k2): Fraction(1, 2), ("mp", k4): Fraction(1, 2)})
            num = [LinearForm.make({"m": 1, k1: 1, k4: -1}),
                   LinearForm.make({"mp": 1, k3: 1, k4: -1})]
            den = [LinearForm.make({k1: 1, k3: 1, k2: -1, k4: -1}),
                   LinearForm.make({"m": 1, k2: 1, k3: -1}),
                   LinearForm.make({"mp": 1, k2: 1, k1: -1})]
            sign = LinearForm.make({k1: 1, k3: 1, k2: -1, k4: -1})
        colors = ("m", "mp")
    else:
        raise DomainError(f"unknown normalization {normalization!r}")
    poch = tuple([PochFactor(f) for f in num]
                 + [PochFactor(f, denom=True) for f in den])
    return ProperQHTerm(colors=colors, nu=4, poch=poch, quad=quad, sign=sign)


def habiro_figure_eight() -> ProperQHTerm:
    """Summand F(n, i) with  J_n = sum_{i=0}^{n-1} F(n, i):

        F(n, i) = q^(-n i) (q)_{n+i} (q)_{n-1} / ((q)_{n-i-1} (q)_n),

    the length-i ascending/descending Pochhammer pair written over plain
    (q)_* factors; the i >= 0 constraint survives as an explicit support
    condition.
    """
    i = _lattice_sym(1)
    return ProperQHTerm(
        colors=("n",),
        nu=1,
        poch=(
            PochFactor(LinearForm.make({"n": 1, i: 1})),
            PochFactor(LinearForm.make({"n": 1}, -1)),
            PochFactor(LinearForm.make({"n": 1, i: -1}, -1), denom=True),
            PochFactor(LinearForm.make({"n": 1}), denom=True),
        ),
        quad=QuadForm.make({("n", i): -1}),
        constraints=(LinearForm.make({i: 1}),),
    )


# -- lattice summation -----------------------------------------------------

def support_box(forms: Sequence[LinearForm], fixed: Mapping[str, int],
                free: Sequence[str],
                max_width: int = 100000) -> list[tuple[int, int]]:
    """Finite bounds [lo, hi] per free symbol for the region where every
    form is nonnegative, by interval propagation; SupportError when the
    region is not certified bounded."""

    lo: dict[str, Optional[Fraction]] = {s: None for s in free}
    hi: dict[str, Optional[Fraction]] = {s: None for s in free}
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        if rounds > 200:
            break
        for form in forms:
            base = form.const + sum(c * fixed[s] for s, c in form.coeffs
                                    if s in fixed)
            fc = [(s, c) for s, c in form.coeffs if s in free and c != 0]
            for s, c in fc:
                # c*s >= -base - sum of the other free parts' best case
                rest = Fraction(0)
                ok = True
                for s2, c2 in fc:
                    if s2 == s:
                        continue
                    b = hi[s2] if c2 > 0 else lo[s2]
                    if b is None:
                        ok = False
                        break
                    rest += c2 * b
                if not ok:
                    continue
                bound = -(base + rest) / c
                if c > 0:
                    if lo[s] is None or bound > lo[s]:
                        lo[s] = bound
                        changed = True
                else:
                    if hi[s] is None or bound < hi[s]:
                        hi[s] = bound
                        changed = True
    out = []
    import math
    for s in free:
        if lo[s] is None or hi[s] is None:
            raise SupportError(
                f"non-finite support: no bounds for {s} follow from the "
                "factor lengths")
        a = math.ceil(lo[s])
        b = math.floor(hi[s])
        if b - a > max_width:
            raise SupportError(f"support width for {s} exceeds {max_width}")
        out.append((a, b))
    return out


def lattice_sum(term: ProperQHTerm, color_values: Sequence[int],
                qval: Scalar, sval: Optional[Scalar] = None) -> Fraction:
    """Sum the summand over all lattice points in its support at fixed
    colors.  The support must be certified bounded."""
    fixed = dict(zip(term.colors, (int(x) for x in color_values)))
    if len(fixed) != len(term.colors):
        raise DomainError("wrong number of colors")
    free = [_lattice_sym(i + 1) for i in range(term.nu)]
    box = support_box(term.support_forms(), fixed, free)

    def rec(idx: int, point: list[int]) -> Fraction:
        if idx == len(free):
            return term.eval_exact(tuple(color_values) + tuple(point),
                                   qval, sval)
        total = Fraction(0)
        a, b = box[idx]
        for k in range(a, b + 1):
            point.append(k)
            total += rec(idx + 1, point)
            point.pop()
        return total

    return rec(0, [])


def jones_symbolic(n: int) -> LaurentMPoly:
    """The built-in knot's colored polynomial at color n, exactly, as a
    Laurent polynomial in q."""
    if n < 1:
        raise DomainError("color must be a positive integer")
    f = habiro_figure_eight()
    acc = RationalFunction.zero()
    for i in range(0, n):
        acc = acc + f.eval_symbolic((n, i))
    return acc.as_polynomial()


def jones_eval(n: int, qval: Scalar) -> Fraction:
    if n < 1:
        raise DomainError("color must be a positive integer")
    f = habiro_figure_eight()
    return sum((f.eval_exact((n, i), qval) for i in range(0, n)), Fraction(0))

"""Sparse multivariate Laurent polynomials over exact rationals.

A polynomial is a mapping from integer exponent vectors to ``Fraction``
coefficients together with the tuple of variable names the exponents refer
to.  Construction canonicalizes: zero coefficients are dropped, variables
that appear in no term are pruned, and the survivors are put into one fixed
global order — so mathematically equal polynomials are structurally equal,
whatever route built them.

Negative exponents are legal everywhere.  The classical algorithms (gcd,
resultant, square-free part) require honest polynomials, so they clear
Laurent units first; see the individual functions for what is and is not
reapplied.

Term order used for leading-term decisions and for text output is graded
lexicographic (total degree first, then lex on the exponent vector), which
is only a bookkeeping order for Laurent exponents but is total and fixed.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import DomainError

Coeff = Union[int, Fraction]

# Canonical variable order.  Indexed families (Qt1, Qt2, ..., w1, w2, ...)
# sort by index inside their family.  Unknown names sort after everything,
# alphabetically, so user-invented symbols still get a deterministic order.
_FAMILIES = (
    "q", "s", "Q", "Qm", "Qmp", "Sm", "Smp", "Qt", "St",
    "E", "Em", "Et", "l", "alpha", "w", "x",
)


def _split_name(name: str) -> tuple[str, int]:
    i = len(name)
    while i > 0 and name[i - 1].isdigit():
        i -= 1
    base, digits = name[:i], name[i:]
    return base, (int(digits) if digits else 0)


def var_sort_key(name: str) -> tuple[int, int, str]:
    base, idx = _split_name(name)
    try:
        fam = _FAMILIES.index(base)
    except ValueError:
        fam = len(_FAMILIES)
    return (fam, idx, name)


def _as_fraction(c: Coeff) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


def _term_sort_key(exp: tuple[int, ...]) -> tuple:
    # graded-lex, descending when used with reverse=True
    return (sum(exp), exp)


class LaurentMPoly:
    """Immutable sparse Laurent polynomial with Fraction coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple[int, ...], Coeff]):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise DomainError(f"duplicate variable in context {vars}")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(vars):
                raise DomainError(
                    f"exponent vector {exp} does not match context {vars}")
            c = _as_fraction(c)
            if c:
                acc = clean.get(exp)
                clean[exp] = c if acc is None else acc + c
                if not clean[exp]:
                    del clean[exp]
        # prune variables that never occur
        used = [i for i in range(len(vars))
                if any(e[i] for e in clean)]
        if len(used) != len(vars):
            vars = tuple(vars[i] for i in used)
            clean = {tuple(e[i] for i in used): c for e, c in clean.items()}
        # enforce canonical variable order
        order = sorted(range(len(vars)), key=lambda i: var_sort_key(vars[i]))
        if order != list(range(len(vars))):
            vars = tuple(vars[i] for i in order)
            clean = {tuple(e[i] for i in order): c for e, c in clean.items()}
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("LaurentMPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentMPoly":
        return LaurentMPoly((), {})

    @staticmethod
    def const(c: Coeff) -> "LaurentMPoly":
        c = _as_fraction(c)
        return LaurentMPoly((), {(): c} if c else {})

    @staticmethod
    def var(name: str, power: int = 1) -> "LaurentMPoly":
        return LaurentMPoly((name,), {(power,): Fraction(1)})

    @staticmethod
    def monomial(c: Coeff, powers: Mapping[str, int]) -> "LaurentMPoly":
        names = tuple(powers)
        return LaurentMPoly(names, {tuple(powers[n] for n in names): c})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> Fraction:
        if self.vars:
            raise DomainError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def degree(self, v: str) -> int:
        """Maximum exponent of v (0 if absent; -1 for the zero polynomial
        to keep degree comparisons conventional)."""
        if self.is_zero():
            return -1
        if v not in self.vars:
            return 0
        i = self.vars.index(v)
        return max(e[i] for e in self.terms)

    def min_degree(self, v: str) -> int:
        if self.is_zero():
            return 0
        if v not in self.vars:
            return 0
        i = self.vars.index(v)
        return min(e[i] for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _term_sort_key(t[0]),
                      reverse=True)

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        if self.is_zero():
            raise DomainError("zero polynomial has no leading term")
        exp = max(self.terms, key=_term_sort_key)
        return exp, self.terms[exp]

    def leading_sign(self) -> int:
        return 1 if self.leading()[1] > 0 else -1

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentMPoly.const(other)
        if not isinstance(other, LaurentMPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"LaurentMPoly({format_poly(self)!r})"

    # -- context merging ---------------------------------------------------

    def _embedded(self, vars: tuple[str, ...]) -> dict[tuple[int, ...], Fraction]:
        """Exponent dict re-indexed into the larger context ``vars``."""
        pos = [vars.index(v) for v in self.vars]
        n = len(vars)
        out = {}
        for e, c in self.terms.items():
            big = [0] * n
            for p, ev in zip(pos, e):
                big[p] = ev
            out[tuple(big)] = c
        return out

    @staticmethod
    def _merge_vars(a: "LaurentMPoly", b: "LaurentMPoly") -> tuple[str, ...]:
        return tuple(sorted(set(a.vars) | set(b.vars), key=var_sort_key))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "LaurentMPoly":
        if isinstance(other, (int, Fraction)):
            other = LaurentMPoly.const(other)
        if not isinstance(other, LaurentMPoly):
            return NotImplemented
        vars = self._merge_vars(self, other)
        terms = self._embedded(vars)
        for e, c in other._embedded(vars).items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return LaurentMPoly(vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentMPoly":
        return LaurentMPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentMPoly":
        if isinstance(other, (int, Fraction)):
            other = LaurentMPoly.const(other)
        if not isinstance(other, LaurentMPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentMPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentMPoly":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return LaurentMPoly(self.vars,
                                {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, LaurentMPoly):
            return NotImplemented
        vars = self._merge_vars(self, other)
        at = self._embedded(vars)
        bt = other._embedded(vars)
        out: dict[tuple[int, ...], Fraction] = {}
        for ea, ca in at.items():
            for eb, cb in bt.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                acc = out.get(e)
                out[e] = ca * cb if acc is None else acc + ca * cb
        return LaurentMPoly(vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentMPoly":
        if not isinstance(n, int):
            raise TypeError("polynomial power must be an integer")
        if n < 0:
            raise DomainError("negative power of a polynomial; use RationalFunction")
        result = LaurentMPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift_var(self, v: str, k: int) -> "LaurentMPoly":
        """Multiply by v**k (Laurent monomial)."""
        if k == 0:
            return self
        return self * LaurentMPoly.var(v, k)

    def map_coeffs(self, f) -> "LaurentMPoly":
        return LaurentMPoly(self.vars, {e: f(c) for e, c in self.terms.items()})

    # -- structure ---------------------------------------------------------

    def coeff_of(self, v: str, k: int) -> "LaurentMPoly":
        """Coefficient of v**k, a polynomial not involving v."""
        if v not in self.vars:
            return self if k == 0 else LaurentMPoly.zero()
        i = self.vars.index(v)
        rest = self.vars[:i] + self.vars[i + 1:]
        terms = {e[:i] + e[i + 1:]: c for e, c in self.terms.items() if e[i] == k}
        return LaurentMPoly(rest, terms)

    def as_univariate(self, v: str) -> dict[int, "LaurentMPoly"]:
        """Map exponent-of-v -> coefficient polynomial (v removed)."""
        if v not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(v)
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets: dict[int, dict[tuple[int, ...], Fraction]] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: LaurentMPoly(rest, t) for k, t in buckets.items()}

    @staticmethod
    def from_univariate(v: str, coeffs: Mapping[int, "LaurentMPoly"]) -> "LaurentMPoly":
        acc = LaurentMPoly.zero()
        for k, p in coeffs.items():
            acc = acc + p.shift_var(v, k)
        return acc

    def derivative(self, v: str) -> "LaurentMPoly":
        if v not in self.vars:
            return LaurentMPoly.zero()
        i = self.vars.index(v)
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            out[ne] = out.get(ne, Fraction(0)) + c * e[i]
        return LaurentMPoly(self.vars, out)

    def laurent_unit(self) -> dict[str, int]:
        """Per-variable minimum exponent (the monomial content's powers)."""
        return {v: self.min_degree(v) for v in self.vars}

    def clear_laurent(self) -> tuple["LaurentMPoly", dict[str, int]]:
        """Divide out the Laurent monomial content so every exponent is >= 0
        and each variable genuinely occurs with exponent 0 somewhere.
        Returns (polynomial part, extracted powers)."""
        unit = {v: m for v, m in self.laurent_unit().items() if m != 0}
        p = self
        for v, m in unit.items():
            p = p.shift_var(v, -m)
        return p, unit

    def clear_negative(self) -> "LaurentMPoly":
        """Shift only the negative exponents up to zero, leaving honest
        polynomials untouched."""
        p = self
        for v, m in self.laurent_unit().items():
            if m < 0:
                p = p.shift_var(v, -m)
        return p

    def eval_exact(self, point: Mapping[str, Coeff]) -> Fraction:
        """Evaluate at exact rational values for every variable."""
        for v in self.vars:
            if v not in point:
                raise DomainError(f"no value supplied for variable {v}")
        vals = [_as_fraction(point[v]) for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for val, k in zip(vals, e):
                if k == 0:
                    continue
                if val == 0 and k < 0:
                    raise DomainError("zero raised to a negative power "
                                      "during evaluation")
                t *= val ** k
            total += t
        return total

    def eval_complex(self, point: Mapping[str, complex]) -> complex:
        for v in self.vars:
            if v not in point:
                raise DomainError(f"no value supplied for variable {v}")
        total = 0j
        for e, c in self.terms.items():
            t = complex(c)
            for v, k in zip(self.vars, e):
                if k:
                    t *= complex(point[v]) ** k
            total += t
        return total

    def subs_poly(self, bindings: Mapping[str, "LaurentMPoly"]) -> "LaurentMPoly":
        """Substitute polynomials (only nonnegative occurrences of the bound
        variables are allowed; rational-function substitution lives one layer
        up)."""
        relevant = {v: p for v, p in bindings.items() if v in self.vars}
        if not relevant:
            return self
        for v in relevant:
            if self.min_degree(v) < 0:
                raise DomainError(
                    f"negative power of {v}: polynomial substitution "
                    "needs a rational-function context")
        acc = LaurentMPoly.zero()
        for e, c in self.terms.items():
            t = LaurentMPoly.const(c)
            for v, k in zip(self.vars, e):
                if k == 0:
                    continue
                t = t * (relevant[v] ** k if v in relevant
                         else LaurentMPoly.var(v, k))
            acc = acc + t
        return acc


# -- dispatcher used by the serialization layer and the CLI ----------------

def poly_arith(a: LaurentMPoly, b: LaurentMPoly, op: str) -> LaurentMPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise DomainError(f"unknown polynomial operation {op!r}")


# -- exact division, content, primitive part -------------------------------

def exact_divide(a: LaurentMPoly, b: LaurentMPoly) -> LaurentMPoly:
    """Quotient a/b when b divides a exactly; DomainError otherwise.

    Plain long division by the graded-lex leading term.  Because any
    divisor's leading term divides the leading term of each successive
    remainder when the division is exact, this terminates with remainder 0
    exactly in the divisible case.
    """
    if b.is_zero():
        raise DomainError("division by the zero polynomial")
    # Laurent inputs: clear units, divide, reapply the net unit.
    pa, ua = a.clear_laurent()
    pb, ub = b.clear_laurent()
    vars = LaurentMPoly._merge_vars(pa, pb)
    rem = dict(pa._embedded(vars))
    bt = pb._embedded(vars)
    lead_b = max(bt, key=_term_sort_key)
    cb = bt[lead_b]
    quot: dict[tuple[int, ...], Fraction] = {}
    guard = 0
    while rem:
        guard += 1
        if guard > 100000:  # pragma: no cover
            raise DomainError("division runaway; inputs likely not divisible")
        lead_r = max(rem, key=_term_sort_key)
        qe = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(v < 0 for v in qe):
            raise DomainError("polynomials do not divide exactly")
        qc = rem[lead_r] / cb
        quot[qe] = quot.get(qe, Fraction(0)) + qc
        for eb, cbt in bt.items():
            e = tuple(x + y for x, y in zip(qe, eb))
            nc = rem.get(e, Fraction(0)) - qc * cbt
            if nc:
                rem[e] = nc
            else:
                rem.pop(e, None)
    q = LaurentMPoly(vars, quot)
    for v in set(ua) | set(ub):
        q = q.shift_var(v, ua.get(v, 0) - ub.get(v, 0))
    return q


def divides(b: LaurentMPoly, a: LaurentMPoly) -> bool:
    try:
        exact_divide(a, b)
        return True
    except DomainError:
        return False


def rational_content(p: LaurentMPoly) -> Fraction:
    """Positive rational c with p/c having coprime integer coefficients."""
    if p.is_zero():
        return Fraction(1)
    from math import gcd as igcd
    num = 0
    den = 1
    for c in p.terms.values():
        num = igcd(num, abs(c.numerator))
        den = den * c.denominator // igcd(den, c.denominator)
    return Fraction(num, den)


def primitive_part(p: LaurentMPoly) -> LaurentMPoly:
    """p divided by its rational content; sign left untouched."""
    c = rational_content(p)
    return p if c == 1 else p.map_coeffs(lambda x: x / c)


def normalize_sign(p: LaurentMPoly) -> LaurentMPoly:
    """Flip so the graded-lex leading coefficient is positive."""
    if p.is_zero() or p.leading()[1] > 0:
        return p
    return -p


def _content_and_primitive_wrt(p: LaurentMPoly, v: str) -> tuple[LaurentMPoly, LaurentMPoly]:
    """Content = gcd of the v-coefficients (a polynomial without v)."""
    coeffs = list(p.as_univariate(v).values())
    cont = LaurentMPoly.zero()
    for c in coeffs:
        cont = poly_gcd(cont, c)
        if cont.is_constant() and not cont.is_zero():
            cont = LaurentMPoly.const(1)
            break
    if cont.is_zero():
        return LaurentMPoly.zero(), LaurentMPoly.zero()
    pp = exact_divide(p, cont)
    # also strip the rational scale, keeping cont * pp == p exact; without
    # this the PRS coefficients compound geometrically across steps
    rc = rational_content(pp)
    if rc != 1:
        pp = pp.map_coeffs(lambda x: x / rc)
        cont = cont * rc
    return cont, pp


def _pseudo_rem(a: LaurentMPoly, b: LaurentMPoly, v: str) -> LaurentMPoly:
    """Pseudo-remainder: lc(b)^(da-db+1) * a  =  q*b + r with deg_v r < deg_v b."""
    da, db = a.degree(v), b.degree(v)
    if db < 0:
        raise DomainError("pseudo-remainder by zero")
    if da < db:
        return a
    bu = b.as_univariate(v)
    lb = bu[db]
    rem = a
    for _ in range(da - db + 1):
        dr = rem.degree(v)
        if rem.is_zero() or dr < db:
            rem = rem * lb
            continue
        lr = rem.as_univariate(v)[dr]
        rem = rem * lb - b * lr.shift_var(v, dr - db)
    return rem


def poly_gcd(a: LaurentMPoly, b: LaurentMPoly) -> LaurentMPoly:
    """GCD in the polynomial ring after clearing Laurent units.

    Primitive and with positive leading coefficient; constants collapse
    to 1 (rationals are units).  Recursive primitive-PRS on the last
    variable in the canonical order.
    """
    a, _ = a.clear_laurent()
    b, _ = b.clear_laurent()
    if a.is_zero():
        return normalize_sign(primitive_part(b)) if b else LaurentMPoly.zero()
    if b.is_zero():
        return normalize_sign(primitive_part(a))
    if a.is_constant() or b.is_constant():
        return LaurentMPoly.const(1)
    v = max(set(a.vars) | set(b.vars), key=var_sort_key)
    ca, pa = _content_and_primitive_wrt(a, v)
    cb, pb = _content_and_primitive_wrt(b, v)
    cg = poly_gcd(ca, cb)
    if pa.degree(v) < pb.degree(v):
        pa, pb = pb, pa
    while True:
        if pb.degree(v) <= 0:
            if pb.is_zero():
                g = pa
            else:
                g = LaurentMPoly.const(1)  # nonzero v-free remainder
            break
        r = _pseudo_rem(pa, pb, v)
        if r.is_zero():
            g = pb
            break
        _, r = _content_and_primitive_wrt(r, v)
        pa, pb = pb, r
    if g.is_constant():
        return normalize_sign(primitive_part(cg))
    _, g = _content_and_primitive_wrt(g, v)
    return normalize_sign(primitive_part(cg * g))


def poly_lcm(a: LaurentMPoly, b: LaurentMPoly) -> LaurentMPoly:
    if a.is_zero() or b.is_zero():
        return LaurentMPoly.zero()
    g = poly_gcd(a, b)
    return normalize_sign(primitive_part(exact_divide(a * b, g)))


# -- resultants ------------------------------------------------------------

def resultant(a: LaurentMPoly, b: LaurentMPoly, v: str) -> LaurentMPoly:
    """Resultant with respect to v via the subresultant PRS.

    Negative exponents are first shifted up to zero (the shift monomials
    are units of the Laurent ring and are not reapplied); honest
    polynomial inputs are used as-is.  Both inputs must then have positive
    degree in v.  The result is v-free and agrees with the Sylvester
    determinant, sign included.
    """
    a = a.clear_negative()
    b = b.clear_negative()
    da, db = a.degree(v), b.degree(v)
    if da <= 0 or db <= 0:
        raise DomainError(
            f"resultant needs positive degree in {v} for both inputs "
            f"(got {da} and {db})")
    sign = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if (da * db) % 2:
            sign = -sign
    # contents over the coefficient ring
    ca, A = _content_and_primitive_wrt(a, v)
    cb, B = _content_and_primitive_wrt(b, v)
    t = (ca ** db) * (cb ** da)
    g = LaurentMPoly.const(1)
    h = LaurentMPoly.const(1)
    while True:
        dA, dB = A.degree(v), B.degree(v)
        if dA % 2 and dB % 2:
            sign = -sign
        delta = dA - dB
        R = _pseudo_rem(A, B, v)
        if R.is_zero():
            # common factor of positive v-degree
            return LaurentMPoly.zero()
        A = B
        denom = g * (h ** delta)
        B = exact_divide(R, denom)
        g = A.as_univariate(v)[A.degree(v)]
        if delta:
            h = exact_divide(g ** delta, h ** (delta - 1)) if delta > 1 else g
        if B.degree(v) <= 0:
            break
    dA = A.degree(v)
    lB = B  # v-free
    res = exact_divide(lB ** dA, h ** (dA - 1)) if dA > 1 else lB
    out = t * res
    return out if sign > 0 else -out


def sylvester_matrix(a: LaurentMPoly, b: LaurentMPoly, v: str) -> list[list[LaurentMPoly]]:
    da, db = a.degree(v), b.degree(v)
    au, bu = a.as_univariate(v), b.as_univariate(v)
    n = da + db
    rows = []
    for i in range(db):
        row = [LaurentMPoly.zero()] * n
        for k in range(da + 1):
            row[i + k] = au.get(da - k, LaurentMPoly.zero())
        rows.append(row)
    for i in range(da):
        row = [LaurentMPoly.zero()] * n
        for k in range(db + 1):
            row[i + k] = bu.get(db - k, LaurentMPoly.zero())
        rows.append(row)
    return rows


def sylvester_resultant(a: LaurentMPoly, b: LaurentMPoly, v: str) -> LaurentMPoly:
    """Resultant as an exact fraction-free (Bareiss) Sylvester determinant.

    Slower than the PRS route; kept as an independent cross-check for
    small degrees.
    """
    a = a.clear_negative()
    b = b.clear_negative()
    if a.degree(v) <= 0 or b.degree(v) <= 0:
        raise DomainError(f"resultant needs positive degree in {v}")
    m = sylvester_matrix(a, b, v)
    n = len(m)
    sign = 1
    prev = LaurentMPoly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return LaurentMPoly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_divide(num, prev)
            m[i][k] = LaurentMPoly.zero()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def squarefree_part(a: LaurentMPoly, v: str) -> LaurentMPoly:
    """Distinct-factor part with respect to v; the v-free content is passed
    through untouched."""
    if a.is_zero():
        return a
    p, unit = a.clear_laurent()
    if p.degree(v) <= 0:
        return a
    cont, pp = _content_and_primitive_wrt(p, v)
    g = poly_gcd(pp, pp.derivative(v))
    sf = exact_divide(pp, g) if not g.is_constant() else pp
    out = cont * sf
    for w, k in unit.items():
        if w != v:  # the unit in v itself is a repeated-factor artifact
            out = out.shift_var(w, k)
    return out


# -- parsing and formatting ------------------------------------------------

_TOKEN = re.compile(r"\s*([A-Za-z][A-Za-z0-9]*|\d+|[\^\*\+\-/()])")


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: LaurentMPoly) -> str:
    """Canonical text form: graded-lex descending terms, '^' powers,
    '*' products, coefficients as integers or num/den."""
    if p.is_zero():
        return "0"
    parts = []
    for exp, c in p.sorted_terms():
        factors = []
        for v, k in zip(p.vars, exp):
            if k == 0:
                continue
            factors.append(v if k == 1 else f"{v}^{k}")
        mag = abs(c)
        if not factors:
            body = format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_coeff(mag)] + factors)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise DomainError(f"cannot tokenize polynomial near {text[pos:pos+20]!r}")
                break
            self.tokens.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def parse_sum(self) -> LaurentMPoly:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.next() == "-":
                sign = -sign
        acc = self.parse_product() * sign
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.next() == "-":
                    sign = -sign
            acc = acc + self.parse_product() * sign
        return acc

    def parse_product(self) -> LaurentMPoly:
        acc = self.parse_factor()
        while True:
            t = self.peek()
            if t == "*":
                self.next()
                acc = acc * self.parse_factor()
            elif t == "/":
                self.next()
                d = self.parse_factor()
                if not d.is_constant() or d.is_zero():
                    raise DomainError("only division by a nonzero integer is "
                                      "allowed inside polynomial text")
                dv = d.constant_value()
                acc = acc.map_coeffs(lambda c: c / dv)
            else:
                return acc

    def parse_factor(self) -> LaurentMPoly:
        t = self.next()
        if t is None:
            raise DomainError("unexpected end of polynomial text")
        if t == "(":
            inner = self.parse_sum()
            if self.next() != ")":
                raise DomainError("unbalanced parenthesis in polynomial text")
            base = inner
        elif t == "-":
            return -self.parse_factor()
        elif t.isdigit():
            base = LaurentMPoly.const(int(t))
        elif t[0].isalpha():
            base = LaurentMPoly.var(t)
        else:
            raise DomainError(f"unexpected token {t!r} in polynomial text")
        if self.peek() == "^":
            self.next()
            neg = False
            e = self.next()
            if e == "-":
                neg = True
                e = self.next()
            if e is None or not e.isdigit():
                raise DomainError("malformed exponent in polynomial text")
            k = -int(e) if neg else int(e)
            if base.is_constant():
                c = base.constant_value()
                if k < 0:
                    if c == 0:
                        raise DomainError("zero to a negative power")
                    return LaurentMPoly.const(Fraction(1) / c ** (-k))
                return LaurentMPoly.const(c ** k)
            if k < 0:
                if len(base.terms) == 1:
                    (exp, c), = base.terms.items()
                    if abs(c) == 1:
                        return LaurentMPoly(
                            base.vars,
                            {tuple(x * k for x in exp): c})
                raise DomainError("negative power of a non-monomial in "
                                  "polynomial text")
            return base ** k
        return base


def parse_poly(text: str) -> LaurentMPoly:
    p = _Parser(text)
    out = p.parse_sum()
    if p.peek() is not None:
        raise DomainError(f"trailing input in polynomial text: {p.peek()!r}")
    return out


# -- JSON ------------------------------------------------------------------

def poly_to_json(p: LaurentMPoly) -> dict:
    return {
        "vars": list(p.vars),
        "terms": [
            {"exp": list(exp), "num": str(c.numerator), "den": str(c.denominator)}
            for exp, c in p.sorted_terms()
        ],
    }


def poly_from_json(obj: dict) -> LaurentMPoly:
    try:
        vars = tuple(obj["vars"])
        terms = {
            tuple(int(e) for e in t["exp"]):
                Fraction(int(t["num"]), int(t.get("den", "1")))
            for t in obj["terms"]
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed polynomial JSON: {exc}") from exc
    return LaurentMPoly(vars, terms)


def poly_to_json_text(p: LaurentMPoly) -> str:
    return json.dumps(poly_to_json(p), separators=(", ", ": "))

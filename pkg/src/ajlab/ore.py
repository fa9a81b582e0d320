"""Skew (Ore) operators in one shift plus auxiliary lattice shifts.

An operator lives in the algebra generated over the rational-function
field by a principal shift ``E`` and auxiliary shifts ``Et1..Etnu``, with
one meridian coordinate (``Q`` or ``Qm``) and lattice coordinates
``Qt1..Qtnu``.  The only non-commutativity is

    E * Q   = q**twist * Q * E        (twist is 1, or 2 after halving the
    Eti * Qti = q * Qti * Eti          meridian; everything else commutes)

Multiplication therefore acts on coefficient monomials as a pure shift of
the q-exponent, which keeps every operation exact.

Operators act on functions of an integer point ``(n, k1..knu)``: ``E``
advances ``n`` by one, ``Eti`` advances ``ki`` by one, and the meridian
evaluates to ``q**n`` (lattice coordinates to ``q**ki``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

from .errors import DomainError, ParityError, PoleError
from .poly import LaurentMPoly, exact_divide, format_poly, normalize_sign, \
    poly_lcm, primitive_part, rational_content
from .ratfun import RationalFunction, format_ratfun, ratfun_from_json, \
    ratfun_to_json

RFLike = Union[RationalFunction, LaurentMPoly, int, Fraction]

_MERIDIANS = ("Q", "Qm")


def _lattice_var(i: int) -> str:
    return f"Qt{i}"


class OreOperator:
    """Finite sum  sum_e  c_e(q, meridian, Qt*) * E^e0 * Et1^e1 ... Etnu^enu."""

    __slots__ = ("nu", "meridian", "e0_twist", "terms")

    def __init__(self, nu: int, terms: Mapping[Sequence[int], RFLike],
                 meridian: str = "Q", e0_twist: int = 1):
        if meridian not in _MERIDIANS:
            raise DomainError(f"unknown meridian symbol {meridian!r}")
        if nu < 0:
            raise DomainError("negative number of lattice directions")
        if e0_twist not in (1, 2):
            raise DomainError(f"unsupported shift twist {e0_twist}")
        allowed = {"q", meridian} | {_lattice_var(i + 1) for i in range(nu)}
        clean: dict[tuple[int, ...], RationalFunction] = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nu + 1:
                raise DomainError(
                    f"shift exponent {exp} does not match nu={nu}")
            if not isinstance(c, RationalFunction):
                c = RationalFunction(
                    c if isinstance(c, LaurentMPoly) else LaurentMPoly.const(c),
                    LaurentMPoly.const(1))
            bad = set(c.variables()) - allowed
            if bad:
                raise DomainError(
                    f"coefficient uses {sorted(bad)}; allowed symbols here "
                    f"are {sorted(allowed)}")
            if c.is_zero():
                continue
            if exp in clean:
                c = clean[exp] + c
                if c.is_zero():
                    del clean[exp]
                    continue
            clean[exp] = c
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "meridian", meridian)
        object.__setattr__(self, "e0_twist", e0_twist)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("OreOperator is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nu: int = 0, meridian: str = "Q", e0_twist: int = 1) -> "OreOperator":
        return OreOperator(nu, {}, meridian, e0_twist)

    @staticmethod
    def scalar(c: RFLike, nu: int = 0, meridian: str = "Q",
               e0_twist: int = 1) -> "OreOperator":
        return OreOperator(nu, {(0,) * (nu + 1): c}, meridian, e0_twist)

    @staticmethod
    def shift(which: int = 0, nu: int = 0, meridian: str = "Q",
              e0_twist: int = 1) -> "OreOperator":
        """The shift generator: which=0 is E, which=i>0 is Eti."""
        if not 0 <= which <= nu:
            raise DomainError(f"no shift index {which} with nu={nu}")
        e = [0] * (nu + 1)
        e[which] = 1
        return OreOperator(nu, {tuple(e): 1}, meridian, e0_twist)

    @staticmethod
    def from_e_coeffs(coeffs: Mapping[int, RFLike], meridian: str = "Q",
                      e0_twist: int = 1) -> "OreOperator":
        return OreOperator(0, {(k,): c for k, c in coeffs.items()},
                           meridian, e0_twist)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def e_degree(self) -> int:
        return max((e[0] for e in self.terms), default=-1)

    def coeff(self, exp: Sequence[int]) -> RationalFunction:
        return self.terms.get(tuple(exp), RationalFunction.zero())

    def e_coeffs(self) -> dict[int, RationalFunction]:
        if any(any(e[1:]) for e in self.terms):
            raise DomainError("operator still involves lattice shifts")
        return {e[0]: c for e, c in self.terms.items()}

    def lattice_free(self) -> bool:
        qt = {_lattice_var(i + 1) for i in range(self.nu)}
        return (not any(any(e[1:]) for e in self.terms)
                and not any(set(c.variables()) & qt
                            for c in self.terms.values()))

    def _compatible(self, other: "OreOperator") -> None:
        if (self.nu != other.nu or self.meridian != other.meridian
                or self.e0_twist != other.e0_twist):
            raise DomainError(
                "operator algebras differ "
                f"(nu {self.nu}/{other.nu}, meridian {self.meridian}/"
                f"{other.meridian}, twist {self.e0_twist}/{other.e0_twist})")

    def __eq__(self, other) -> bool:
        if not isinstance(other, OreOperator):
            return NotImplemented
        return (self.nu == other.nu and self.meridian == other.meridian
                and self.e0_twist == other.e0_twist
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nu, self.meridian, self.e0_twist,
                     frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"OreOperator({format_operator(self)!r})"

    # -- additive structure ------------------------------------------------

    def __add__(self, other) -> "OreOperator":
        if isinstance(other, (int, Fraction, LaurentMPoly, RationalFunction)):
            other = OreOperator.scalar(other, self.nu, self.meridian,
                                       self.e0_twist)
        if not isinstance(other, OreOperator):
            return NotImplemented
        self._compatible(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            terms[e] = c if s is None else s + c
        return OreOperator(self.nu, terms, self.meridian, self.e0_twist)

    __radd__ = __add__

    def __neg__(self) -> "OreOperator":
        return OreOperator(self.nu, {e: -c for e, c in self.terms.items()},
                           self.meridian, self.e0_twist)

    def __sub__(self, other) -> "OreOperator":
        if isinstance(other, (int, Fraction, LaurentMPoly, RationalFunction)):
            other = OreOperator.scalar(other, self.nu, self.meridian,
                                       self.e0_twist)
        if not isinstance(other, OreOperator):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "OreOperator":
        return (-self) + other

    def scale(self, c: RFLike) -> "OreOperator":
        """Left-multiply by a coefficient (no shifts involved)."""
        if not isinstance(c, RationalFunction):
            c = RationalFunction(
                c if isinstance(c, LaurentMPoly) else LaurentMPoly.const(c),
                LaurentMPoly.const(1))
        return OreOperator(self.nu, {e: c * v for e, v in self.terms.items()},
                           self.meridian, self.e0_twist)


def _twist_poly(p: LaurentMPoly, shift_exp: tuple[int, ...], meridian: str,
                twist: int) -> LaurentMPoly:
    """Push the shift monomial E^e0*Et^e past the coefficient p: every
    meridian power picks up q^(twist*e0) and every Qti power picks up
    q^(ei)."""
    if p.is_constant() or not any(shift_exp):
        return p
    names = list(p.vars)
    deltas = []
    for v in names:
        if v == meridian:
            deltas.append(twist * shift_exp[0])
        elif v.startswith("Qt") and v[2:].isdigit():
            idx = int(v[2:])
            deltas.append(shift_exp[idx] if idx < len(shift_exp) else 0)
        else:
            deltas.append(0)
    if not any(deltas):
        return p
    qi = names.index("q") if "q" in names else None
    out: dict[tuple[int, ...], Fraction] = {}
    if qi is None:
        names2 = tuple(["q"] + names)
        for e, c in p.terms.items():
            dq = sum(d * x for d, x in zip(deltas, e))
            out[(dq,) + e] = c
        return LaurentMPoly(names2, out)
    for e, c in p.terms.items():
        dq = sum(d * x for d, x in zip(deltas, e))
        ne = list(e)
        ne[qi] += dq
        key = tuple(ne)
        out[key] = out.get(key, Fraction(0)) + c
    return LaurentMPoly(tuple(names), out)


def _twist_rf(c: RationalFunction, shift_exp: tuple[int, ...], meridian: str,
              twist: int) -> RationalFunction:
    return RationalFunction(_twist_poly(c.num, shift_exp, meridian, twist),
                            _twist_poly(c.den, shift_exp, meridian, twist))


def ore_mul(a: OreOperator, b: OreOperator) -> OreOperator:
    """Noncommutative product; same algebra required on both sides."""
    a._compatible(b)
    out: dict[tuple[int, ...], RationalFunction] = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            c = ca * _twist_rf(cb, ea, a.meridian, a.e0_twist)
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e)
            nc = c if s is None else s + c
            if nc.is_zero():
                out.pop(e, None)
            else:
                out[e] = nc
    return OreOperator(a.nu, out, a.meridian, a.e0_twist)


def ore_pow(a: OreOperator, n: int) -> OreOperator:
    if n < 0:
        raise DomainError("negative operator power")
    r = OreOperator.scalar(1, a.nu, a.meridian, a.e0_twist)
    for _ in range(n):
        r = ore_mul(r, a)
    return r


# -- action on sequences ---------------------------------------------------

@dataclass(frozen=True)
class DiscreteEvaluator:
    """Exact function of an integer point, with optional support predicate.

    ``fn(point, qval)`` returns a Fraction; outside ``support`` the value
    is zero without calling ``fn``.
    """
    arity: int
    fn: Callable[[tuple[int, ...], Fraction], Fraction]
    support: Optional[Callable[[tuple[int, ...]], bool]] = None
    name: str = ""

    def __call__(self, point: Sequence[int], qval: Fraction) -> Fraction:
        point = tuple(int(x) for x in point)
        if len(point) != self.arity:
            raise DomainError(
                f"{self.name or 'evaluator'} expects {self.arity} "
                f"arguments, got {len(point)}")
        if self.support is not None and not self.support(point):
            return Fraction(0)
        return self.fn(point, qval)


def ore_apply(p: OreOperator, f: DiscreteEvaluator, point: Sequence[int],
              qval: Union[int, Fraction]) -> Fraction:
    """Apply the operator to a sequence at an integer point, exactly.

    Only twist-1 operators act on sequences (after meridian halving the
    principal shift advances the original index by two, which is a
    different lattice; re-index first)."""
    if p.e0_twist != 1:
        raise DomainError("only twist-1 operators act on integer sequences")
    point = tuple(int(x) for x in point)
    if len(point) != p.nu + 1:
        raise DomainError(
            f"point {point} does not match operator with nu={p.nu}")
    if f.arity != p.nu + 1:
        raise DomainError(
            f"evaluator arity {f.arity} does not match operator nu={p.nu}")
    qval = Fraction(qval)
    values = {p.meridian: qval ** point[0]}
    for i in range(p.nu):
        values[_lattice_var(i + 1)] = qval ** point[i + 1]
    values["q"] = qval
    total = Fraction(0)
    for e, c in p.terms.items():
        try:
            cv = c.eval_exact(values)
        except PoleError as exc:
            raise PoleError(
                f"coefficient of shift {e} has a pole at q={qval}, "
                f"point {point}: {exc}") from exc
        if cv == 0:
            continue
        shifted = tuple(x + d for x, d in zip(point, e))
        total += cv * f(shifted, qval)
    return total


# -- telescoping-certificate structure -------------------------------------

def expand_at_one(p: OreOperator) -> tuple[OreOperator, list[OreOperator]]:
    """Split  p = p0 + sum_i (Eti - 1) * r_i  with p0 free of lattice
    shifts and r_i involving only Etj with j >= i.

    Requires coefficients free of the lattice coordinates Qt*, which makes
    every Eti central; the split is then iterated exact division by
    (Eti - 1).  The reconstruction is asserted internally.
    """
    qt = {_lattice_var(i + 1) for i in range(p.nu)}
    for e, c in p.terms.items():
        if set(c.variables()) & qt:
            raise DomainError(
                "lattice-coordinate coefficients: the centred split "
                f"needs Qt-free coefficients, got {format_ratfun(c)} "
                f"at shift {e}")
    current = p
    rs: list[OreOperator] = []
    for i in range(1, p.nu + 1):
        # group by the Eti exponent:  sum_k  A_k * Eti^k
        at_one: dict[tuple[int, ...], RationalFunction] = {}
        quot: dict[tuple[int, ...], RationalFunction] = {}
        for e, c in current.terms.items():
            k = e[i]
            base = e[:i] + (0,) + e[i + 1:]
            s = at_one.get(base)
            at_one[base] = c if s is None else s + c
            # (x^k - 1)/(x - 1) = x^(k-1) + ... + 1 ; negative k similar
            if k > 0:
                for j in range(k):
                    key = e[:i] + (j,) + e[i + 1:]
                    s = quot.get(key)
                    quot[key] = c if s is None else s + c
            elif k < 0:
                for j in range(k, 0):
                    key = e[:i] + (j,) + e[i + 1:]
                    s = quot.get(key)
                    quot[key] = -c if s is None else s - c
        current = OreOperator(p.nu, at_one, p.meridian, p.e0_twist)
        rs.append(OreOperator(p.nu, quot, p.meridian, p.e0_twist))
    p0 = current
    # exact reconstruction check
    acc = p0
    for i, r in enumerate(rs, start=1):
        eti = OreOperator.shift(i, p.nu, p.meridian, p.e0_twist)
        one = OreOperator.scalar(1, p.nu, p.meridian, p.e0_twist)
        acc = acc + ore_mul(eti - one, r)
    if acc != p:
        raise DomainError("internal: centred split failed to reconstruct")
    return p0, rs


def telescope_sum_check(p0: OreOperator, rs: Sequence[OreOperator],
                        f: DiscreteEvaluator, n: int,
                        bounds: Sequence[tuple[int, int]],
                        qval: Union[int, Fraction]) -> Fraction:
    """Residual of the telescoped sum over a box.

    With G(n) the box sum of f(n, .), returns

        (p0 . G)(n)  +  sum_i  sum over the top face (ki = hi_i + 1)
                              of (r_i . f)(n, k)

    which collapses to the bottom-face contribution when the certificate
    is exact and the top face leaves the support.
    """
    if len(bounds) != p0.nu or p0.nu == 0:
        raise DomainError("bounds must give (lo, hi) per lattice direction")
    qval = Fraction(qval)

    def box_points(bs):
        pts = [()]
        for (lo, hi) in bs:
            pts = [p + (k,) for p in pts for k in range(lo, hi + 1)]
        return pts

    def g_fn(pt, qv):
        (m,) = pt
        return sum((f((m,) + tuple(k), qv) for k in box_points(bounds)),
                   Fraction(0))

    g = DiscreteEvaluator(1, g_fn, name="box-sum")
    p0_seq = OreOperator(0, {(e[0],): c for e, c in p0.terms.items()},
                         p0.meridian, p0.e0_twist)
    total = ore_apply(p0_seq, g, (n,), qval)
    for i, r in enumerate(rs, start=1):
        lo_i, hi_i = bounds[i - 1]
        face_bounds = list(bounds)
        face_bounds[i - 1] = (hi_i + 1, hi_i + 1)
        for k in box_points(face_bounds):
            total += ore_apply(r, f, (n,) + tuple(k), qval)
    return total


# -- q -> 1 limit ----------------------------------------------------------

def _q_one(p: LaurentMPoly) -> LaurentMPoly:
    """Set q = 1 (Laurent powers of q included)."""
    if "q" not in p.vars:
        return p
    i = p.vars.index("q")
    rest = p.vars[:i] + p.vars[i + 1:]
    out: dict[tuple[int, ...], Fraction] = {}
    for e, c in p.terms.items():
        key = e[:i] + e[i + 1:]
        out[key] = out.get(key, Fraction(0)) + c
    return LaurentMPoly(rest, out)


_Q_MINUS_1 = LaurentMPoly(("q",), {(1,): 1, (0,): -1})


def _q_valuation(p: LaurentMPoly) -> tuple[int, LaurentMPoly]:
    """Order of vanishing at q = 1 and the cofactor (Laurent units carry
    through untouched)."""
    if p.is_zero():
        raise DomainError("valuation of zero")
    body, unit = p.clear_laurent()
    k = 0
    while _q_one(body).is_zero():
        body = exact_divide(body, _Q_MINUS_1)
        k += 1
    for v, m in unit.items():
        body = body.shift_var(v, m)
    return k, body


def epsilon_eval(p: OreOperator) -> LaurentMPoly:
    return epsilon_eval_with_unit(p)[0]


def epsilon_eval_with_unit(p: OreOperator) -> tuple[LaurentMPoly, RationalFunction]:
    """q -> 1 limit of the operator after clearing the common vanishing
    scale, returned as a primitive integer polynomial in (meridian, E)
    together with the extracted meridian-dependent unit.

    The input must be free of lattice shifts and coordinates.  Writing each
    coefficient as (q-1)^v * u with u finite and nonzero at q = 1, the
    minimal v sets the scale; coefficients above it vanish in the limit.
    The primitive polynomial times the unit equals the literal limit.
    """
    if not p.lattice_free():
        raise DomainError("limit at q = 1 needs a lattice-free operator")
    if p.is_zero():
        raise DomainError("limit of the zero operator")
    vals: dict[int, tuple[int, RationalFunction]] = {}
    for e, c in p.terms.items():
        vn, rn = _q_valuation(c.num)
        vd, rd = _q_valuation(c.den)
        vals[e[0]] = (vn - vd, RationalFunction(_q_one(rn), _q_one(rd)))
    mu = min(v for v, _ in vals.values())
    coeffs = {k: u for k, (v, u) in vals.items() if v == mu}
    # clear denominators and content -> primitive integer polynomial
    den = LaurentMPoly.const(1)
    for u in coeffs.values():
        den = poly_lcm(den, u.den)
    poly = LaurentMPoly.zero()
    for k, u in coeffs.items():
        term = u.num * exact_divide(den, u.den)
        poly = poly + term.shift_var("E", k)
    # meridian monomial factors are units; a shift-power factor is kept
    # unless it is negative (then it is a unit too)
    body = poly
    unit_mono = LaurentMPoly.const(1)
    for v, m in poly.laurent_unit().items():
        if v == "E" and m >= 0:
            continue
        if m != 0:
            body = body.shift_var(v, -m)
            unit_mono = unit_mono.shift_var(v, m)
    cont = rational_content(body)
    # sign convention: the coefficient of the highest shift power leads
    # positive (E is the main variable here, not part of the grading)
    if "E" in body.vars:
        d = max(e[body.vars.index("E")] for e in body.terms)
        top = body.coeff_of("E", d)
    else:
        top = body
    sign = top.leading_sign()
    prim = body.map_coeffs(lambda c: c / (sign * cont))
    unit = RationalFunction(unit_mono * (sign * cont), den)
    return prim, unit


# -- certificate promotion and meridian halving ----------------------------

def homogenize(p0: OreOperator, inhom: RFLike) -> OreOperator:
    """Given  p0 . f = b  with b a rational function of (q, meridian),
    return (E - 1) * b^(-1) * p0, which annihilates f."""
    if not isinstance(inhom, RationalFunction):
        inhom = RationalFunction(
            inhom if isinstance(inhom, LaurentMPoly)
            else LaurentMPoly.const(inhom),
            LaurentMPoly.const(1))
    if inhom.is_zero():
        raise DomainError("inhomogeneity is zero; nothing to promote")
    e = OreOperator.shift(0, p0.nu, p0.meridian, p0.e0_twist)
    one = OreOperator.scalar(1, p0.nu, p0.meridian, p0.e0_twist)
    binv = OreOperator.scalar(inhom.inverse(), p0.nu, p0.meridian, p0.e0_twist)
    return ore_mul(ore_mul(e - one, binv), p0)


def substitute_qm(p: OreOperator) -> OreOperator:
    """Rewrite an operator over the half-meridian lattice (meridian Qm,
    twist 1) as one over the standard meridian (Q, twist 2), using
    Qm^2 = Q / q monomial-by-monomial.

    Every monomial must carry an even power of Qm; an odd power has no
    image and raises ParityError.  Shift exponents are unchanged — the
    principal shift now advances the underlying index by two, which the
    doubled twist records.
    """
    if p.meridian != "Qm" or p.e0_twist != 1:
        raise DomainError("meridian halving applies to twist-1 operators "
                          "over Qm")

    def conv(poly: LaurentMPoly) -> LaurentMPoly:
        if "Qm" not in poly.vars:
            return poly
        i = poly.vars.index("Qm")
        names = list(poly.vars)
        names[i] = "Q"
        has_q = "q" in poly.vars
        qi = poly.vars.index("q") if has_q else None
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in poly.terms.items():
            if e[i] % 2:
                raise ParityError(
                    f"odd meridian power {e[i]} in {format_poly(poly)}; "
                    "no half-lattice image")
            k = e[i] // 2
            ne = list(e)
            ne[i] = k
            if has_q:
                ne[qi] -= k
                key = tuple(ne)
                out[key] = out.get(key, Fraction(0)) + c
            else:
                out[tuple(ne)] = c
        if not has_q and any(e[i] for e in poly.terms):
            # need a q column for the -k exponents
            res: dict[tuple[int, ...], Fraction] = {}
            for e, c in poly.terms.items():
                k = e[i] // 2
                ne = list(e)
                ne[i] = k
                res[(-k,) + tuple(ne)] = c
            return LaurentMPoly(tuple(["q"] + names), res)
        return LaurentMPoly(tuple(names), out)

    terms = {e: RationalFunction(conv(c.num), conv(c.den))
             for e, c in p.terms.items()}
    return OreOperator(p.nu, terms, meridian="Q", e0_twist=2)


# -- formatting and serialization ------------------------------------------

def _shift_label(e: tuple[int, ...]) -> str:
    parts = []
    if e[0]:
        parts.append("E" if e[0] == 1 else f"E^{e[0]}")
    for i, k in enumerate(e[1:], start=1):
        if k:
            parts.append(f"Et{i}" if k == 1 else f"Et{i}^{k}")
    return "*".join(parts) if parts else "1"


def format_operator(p: OreOperator) -> str:
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda t: (sum(t[0]), t[0]),
                   reverse=True)
    parts = []
    for e, c in items:
        parts.append(f"({format_ratfun(c)}) * {_shift_label(e)}")
    return " + ".join(parts)


def operator_to_json(p: OreOperator) -> dict:
    items = sorted(p.terms.items(), key=lambda t: (sum(t[0]), t[0]),
                   reverse=True)
    return {
        "nu": p.nu,
        "meridian": p.meridian,
        "twist": p.e0_twist,
        "terms": [{"shift": list(e), "coeff": ratfun_to_json(c)}
                  for e, c in items],
    }


def operator_from_json(obj: dict) -> OreOperator:
    try:
        terms = {tuple(t["shift"]): ratfun_from_json(t["coeff"])
                 for t in obj["terms"]}
        return OreOperator(int(obj["nu"]), terms,
                           meridian=obj.get("meridian", "Q"),
                           e0_twist=int(obj.get("twist", 1)))
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed operator JSON: {exc}") from exc

"""Polynomial systems at q = 1 and their elimination down to a plane curve.

The shift-ratio limits of a summand give one equation per lattice
coordinate (the ratio equals 1) plus a longitude equation tying the shift
in the color to a new variable l.  Eliminating the lattice coordinates by
resultants leaves a single polynomial in (alpha, l) — the candidate curve
the annihilating operator is compared against.
"""

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import DegeneracyError, DomainError
from .ore import OreOperator, epsilon_eval_with_unit
from .poly import (
    LaurentMPoly,
    _content_and_primitive_wrt,
    exact_divide,
    format_poly,
    parse_poly,
    rational_content,
    resultant,
    squarefree_part,
)
from .qhg import ProperQHTerm, epsilon_ratio
from .ratfun import RationalFunction

# -- variable renaming -----------------------------------------------------

#: rename table for a summand colored by the full meridian exponential:
#: its square root becomes alpha, the lattice coordinate becomes x
RENAME_FULL = {"Q": ("alpha", 2), "Qt1": ("x", 1), "E": ("l", 1)}

#: rename table for half-meridian summands (one color per strand)
RENAME_HALF = {"Qm": ("alpha", 1), "E": ("l", 1),
               **{f"Qt{i}": (f"w{i}", 1) for i in range(1, 10)}}


def rename_exponents(p: LaurentMPoly,
                     mapping: Mapping[str, tuple[str, int]]) -> LaurentMPoly:
    """Rename variables monomial-wise, scaling exponents: v^k -> u^(mk)."""
    new_names = []
    for v in p.vars:
        name = mapping.get(v, (v, 1))[0]
        if name in new_names:
            raise DomainError(f"rename collides on {name}")
        new_names.append(name)
    mults = [mapping.get(v, (v, 1))[1] for v in p.vars]
    terms = {tuple(m * k for m, k in zip(mults, e)): c
             for e, c in p.terms.items()}
    return LaurentMPoly(tuple(new_names), terms)


def rename_ratfun(r: RationalFunction,
                  mapping: Mapping[str, tuple[str, int]]) -> RationalFunction:
    return RationalFunction(rename_exponents(r.num, mapping),
                            rename_exponents(r.den, mapping))


# -- equation systems ------------------------------------------------------

@dataclass(frozen=True)
class EquationSystem:
    """Cleared polynomial equations (each = 0), one of them the longitude."""

    gluing: tuple[LaurentMPoly, ...]
    longitude: LaurentMPoly
    coordinates: tuple[str, ...]
    longitude_kind: str  # "linear" (degree 1 in l) or "squared" (l^2)

    def equations(self) -> tuple[LaurentMPoly, ...]:
        return (*self.gluing, self.longitude)

    def residual(self, point: Mapping[str, complex]) -> float:
        """Largest absolute value of any equation at the point."""
        return max(abs(p.eval_complex(point)) for p in self.equations())


def cleared_equation(lhs: RationalFunction, rhs: RationalFunction) -> LaurentMPoly:
    """lhs == rhs as a primitive honest polynomial with positive leading
    coefficient (the clearing monomial is a unit and is dropped)."""
    p = lhs.num * rhs.den - rhs.num * lhs.den
    p = p.clear_negative()
    if p.is_zero():
        raise DegeneracyError("equation is identically satisfied")
    c = rational_content(p)
    if p.leading()[1] < 0:
        c = -c
    return p.map_coeffs(lambda x: x / c)


def ratio_system(term: ProperQHTerm,
                 longitude: str = "squared") -> EquationSystem:
    """Equations satisfied by the q = 1 limits of the term's shift ratios.

    Lattice ratios are set to 1; the color ratio is set to l (one-step,
    "linear") or l^2 (two-step, "squared").  Full-meridian colors get
    alpha^2 for the meridian variable and x for the lattice coordinate;
    half-meridian colors get alpha and w1..w_nu.
    """
    if longitude not in ("linear", "squared"):
        raise DomainError(f"unknown longitude kind {longitude!r}")
    one = RationalFunction.one()
    lvar = RationalFunction.var("l")
    if term.colors == ("n",):
        mapping = dict(RENAME_FULL)
        if term.nu == 1:
            coords = ("x",)
        else:
            coords = tuple(f"x{i}" for i in range(1, term.nu + 1))
            for i in range(1, term.nu + 1):
                mapping[f"Qt{i}"] = (f"x{i}", 1)
        lon_ratio = epsilon_ratio(term, "Em" if longitude == "squared"
                                  else "E")
        rhs = lvar * lvar if longitude == "squared" else lvar
    elif term.colors == ("m",):
        if longitude == "linear":
            raise DomainError(
                "linear longitude needs a full-meridian color; "
                "half-meridian terms only expose the two-step ratio")
        mapping = dict(RENAME_HALF)
        coords = tuple(f"w{i}" for i in range(1, term.nu + 1))
        lon_ratio = epsilon_ratio(term, "Em")
        rhs = lvar * lvar
    else:
        raise DomainError(
            "a system needs a single color; multi-color factors describe "
            "one crossing, not a closed diagram")
    glue = tuple(
        cleared_equation(rename_ratfun(epsilon_ratio(term, f"Et{i}"), mapping), one)
        for i in range(1, term.nu + 1))
    lon = cleared_equation(rename_ratfun(lon_ratio, mapping), rhs)
    return EquationSystem(glue, lon, coords, longitude)


# -- elimination -----------------------------------------------------------

@dataclass(frozen=True)
class APolyCandidate:
    """Result of eliminating the coordinates: a curve in (alpha, l)."""

    poly: LaurentMPoly
    dropped: tuple[str, ...]  # discarded l-free factors / multiplicities
    order: tuple[str, ...]

    def __str__(self) -> str:
        return format_poly(self.poly)


def _normalize_in_l(p: LaurentMPoly) -> LaurentMPoly:
    """Integer-primitive, and the coefficient of the top power of l has a
    positive graded-lex leading coefficient."""
    c = rational_content(p)
    if "l" in p.vars:
        d = max(e[p.vars.index("l")] for e in p.terms)
        top = p.coeff_of("l", d)
    else:
        top = p
    if top.leading()[1] < 0:
        c = -c
    return p.map_coeffs(lambda x: x / c)


def eliminate(system: EquationSystem,
              order: Optional[Sequence[str]] = None) -> APolyCandidate:
    """Remove the coordinates by successive resultants.

    Each round pivots on the equation of least degree in the coordinate
    and replaces every other equation containing it by a resultant.  The
    single survivor is cleaned up: l-free factors are units of the target
    ring and are dropped (recorded), repeated l-factors are reduced to
    their radical (recorded), and the result is normalized.
    """
    order = tuple(order) if order is not None else system.coordinates
    if sorted(order) != sorted(system.coordinates):
        raise DomainError(
            f"elimination order {order} must be a permutation of "
            f"{system.coordinates}")
    polys = list(system.equations())
    for v in order:
        having = [i for i, p in enumerate(polys) if p.degree(v) > 0]
        if not having:
            raise DegeneracyError(f"no equation involves {v}")
        if len(having) == 1:
            raise DegeneracyError(
                f"coordinate {v} appears in a single equation; its "
                f"resultant partner is missing")
        pivot_i = min(having, key=lambda i: polys[i].degree(v))
        pivot = polys[pivot_i]
        survivors = []
        for i, p in enumerate(polys):
            if i == pivot_i:
                continue
            if i not in having:
                survivors.append(p)
                continue
            r = resultant(p, pivot, v)
            if r.is_zero():
                raise DegeneracyError(
                    f"resultant in {v} vanished: the equations share "
                    f"a factor")
            survivors.append(r)
        polys = survivors
    if len(polys) != 1:
        raise DegeneracyError(
            f"elimination left {len(polys)} equations instead of one")
    p = polys[0]
    if "l" not in p.vars or p.degree("l") == 0:
        raise DegeneracyError("the eliminant does not involve l")
    dropped: list[str] = []
    cont, prim = _content_and_primitive_wrt(p, "l")
    if not cont.is_constant():
        dropped.append(format_poly(cont))
        p = prim
    dl = p.degree("l")
    sq = squarefree_part(p, "l")
    if sq.degree("l") < dl:
        dropped.append(f"repeated l-factors (degree {dl} -> "
                       f"{sq.degree('l')})")
        p = sq
    p, unit = p.clear_laurent()
    if unit:
        mono = LaurentMPoly(tuple(unit), {tuple(unit.values()): 1})
        dropped.append(format_poly(mono))
    return APolyCandidate(_normalize_in_l(p), tuple(dropped), order)


# -- operator comparison ---------------------------------------------------

@dataclass(frozen=True)
class OperatorCurveComparison:
    match: bool
    operator_poly: LaurentMPoly  # limit of the operator, in (alpha, l)
    candidate_poly: LaurentMPoly
    unit: RationalFunction  # scale absorbed when taking the limit

    def __str__(self) -> str:
        verdict = "match" if self.match else "MISMATCH"
        return (f"{verdict}: operator side {format_poly(self.operator_poly)}"
                f" vs candidate {format_poly(self.candidate_poly)}")


def aj_compare(op: OreOperator, candidate) -> OperatorCurveComparison:
    """Compare the q = 1 limit of an annihilating operator against an
    eliminated curve, after moving both to (alpha, l) and normalizing.

    Equality is exact equality of the normalized polynomials; the unit
    recorded while taking the limit is reported in the same variables.
    """
    prim, unit = epsilon_eval_with_unit(op)
    mapping = RENAME_FULL if op.meridian == "Q" else RENAME_HALF
    lhs = _normalize_in_l(rename_exponents(prim, mapping))
    rhs = candidate.poly if isinstance(candidate, APolyCandidate) else candidate
    rhs = _normalize_in_l(rhs.clear_negative())
    return OperatorCurveComparison(lhs == rhs, lhs, rhs,
                                   rename_ratfun(unit, mapping))


def divide_abelian(p: LaurentMPoly) -> LaurentMPoly:
    """Exact quotient by (l - 1), for curves that still carry the factor
    coming from the trivial representations."""
    try:
        return exact_divide(p, parse_poly("l - 1"))
    except DomainError:
        raise DomainError("(l - 1) does not divide the polynomial") from None

"""Built-in figure-eight data: the certificate operators for the one-index
sum, the cubic annihilator, the reduced shift polynomial at q = 1, and the
target elimination polynomial.

Everything here is constructed from literal coefficient data so the
algebraic machinery can be tested against it rather than through it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .ore import DiscreteEvaluator, OreOperator, ore_apply, ore_mul
from .poly import LaurentMPoly, exact_divide, parse_poly, poly_lcm
from .qhg import habiro_figure_eight, jones_eval, jones_symbolic
from .ratfun import RationalFunction


def _rf(num: str, den: str = "1") -> RationalFunction:
    return RationalFunction(parse_poly(num), parse_poly(den))


def x_cofactor(nu: int = 0) -> OreOperator:
    """X(q,E,Q): the left cofactor that turns the three-term coordinate
    relation into the annihilator of the summand."""
    c2 = _rf("q*Q", "1 - q^3*Q^2")
    c1 = (_rf("1", "1 - q^3*Q^2") + _rf("1", "1 - q*Q^2")
          - RationalFunction.one())
    c0 = _rf("q*Q", "1 - q*Q^2")
    shape = {(2,) + (0,) * nu: c2, (1,) + (0,) * nu: c1, (0,) + (0,) * nu: c0}
    return OreOperator(nu, shape)


def x_factorizations(nu: int = 0) -> tuple[tuple[OreOperator, OreOperator],
                                           tuple[OreOperator, OreOperator]]:
    """The two factorizations of X:
    (qQ/(1-q^3Q^2) E + 1/(1-qQ^2)) (E + qQ)
    = (1/(1-q^3Q^2) E + qQ/(1-qQ^2)) (1 + QE)."""
    z = (0,) * nu
    left1 = OreOperator(nu, {(1,) + z: _rf("q*Q", "1 - q^3*Q^2"),
                             (0,) + z: _rf("1", "1 - q*Q^2")})
    right1 = OreOperator(nu, {(1,) + z: 1, (0,) + z: _rf("q*Q")})
    left2 = OreOperator(nu, {(1,) + z: _rf("1", "1 - q^3*Q^2"),
                             (0,) + z: _rf("q*Q", "1 - q*Q^2")})
    right2 = OreOperator(nu, {(1,) + z: _rf("Q"), (0,) + z: 1})
    return (left1, right1), (left2, right2)


def r_certificate(nu: int = 0) -> OreOperator:
    """R(E,Q) = X(q,E,Q) (Q-1), the lattice-direction certificate."""
    qm1 = OreOperator.scalar(_rf("Q - 1"), nu)
    return ore_mul(x_cofactor(nu), qm1)


def alpha_operator(nu: int = 0) -> OreOperator:
    """The middle factor of the cubic annihilator:

    (1/(1+qQ)) { qQ/(1-q^3Q^2) E^2
                 + (1/(1-q^3Q^2) + 1/(1-qQ^2) + qQ - 1 - 1/(qQ)) E
                 + qQ/(1-qQ^2) }.
    """
    z = (0,) * nu
    c2 = _rf("q*Q", "1 - q^3*Q^2")
    c1 = (_rf("1", "1 - q^3*Q^2") + _rf("1", "1 - q*Q^2") + _rf("q*Q")
          - RationalFunction.one() - _rf("q^-1*Q^-1"))
    c0 = _rf("q*Q", "1 - q*Q^2")
    braces = OreOperator(nu, {(2,) + z: c2, (1,) + z: c1, (0,) + z: c0})
    return braces.scale(_rf("1", "q*Q + 1"))


def p0_operator(nu: int = 0) -> OreOperator:
    """P0(E,Q) = (1+qQ) alpha(q,E,Q) (Q-1): the operator whose action on
    the full sum is inhomogeneous with right side -(q^(n+1)+1)."""
    pre = OreOperator.scalar(_rf("q*Q + 1"), nu)
    post = OreOperator.scalar(_rf("Q - 1"), nu)
    return ore_mul(ore_mul(pre, alpha_operator(nu)), post)


def p0_inhomogeneity() -> RationalFunction:
    """The value of P0 acting on the full sum, as a function of (q, Q)."""
    return _rf("-q*Q - 1")


def p_full() -> OreOperator:
    """P(E,Q,Et1), the annihilator of the summand:

    { qQ/(1-q^3Q^2) Et1 E^2
      + (1/(1-q^3Q^2) Et1 + 1/(1-qQ^2) Et1 + qQ - Et1 - 1/(qQ)) E
      + qQ/(1-qQ^2) Et1 } (Q-1).
    """
    braces = OreOperator(1, {
        (2, 1): _rf("q*Q", "1 - q^3*Q^2"),
        (1, 1): (_rf("1", "1 - q^3*Q^2") + _rf("1", "1 - q*Q^2")
                 - RationalFunction.one()),
        (1, 0): _rf("q*Q") - _rf("q^-1*Q^-1"),
        (0, 1): _rf("q*Q", "1 - q*Q^2"),
    })
    return ore_mul(braces, OreOperator.scalar(_rf("Q - 1"), 1))


def cubic_displayed() -> OreOperator:
    """The cubic annihilator of the full sum, with its published
    coefficient presentation transcribed literally."""
    c3 = _rf("q^4*Q*(-1 + q^3*Q)", "(q + q^3*Q)*(q - q^6*Q^2)")
    c2 = _rf("(-q + q^3*Q)*(q^4 + q^5*Q - 2*q^6*Q - q^7*Q^2 + q^8*Q^2"
             " - q^9*Q^2 - 2*q^10*Q^3 + q^11*Q^3 + q^12*Q^4)",
             "q^4*Q*(q^2 + q^3*Q)*(-q + q^6*Q^2)")
    c1 = _rf("-(q^2 - q^3*Q)*(q^8 - 2*q^9*Q + q^10*Q - q^9*Q^2 + q^10*Q^2"
             " - q^11*Q^2 + q^10*Q^3 - 2*q^11*Q^3 + q^12*Q^4)",
             "q^5*Q*(q + q^3*Q)*(q^5 - q^6*Q^2)")
    c0 = _rf("q^5*Q*(-q^3 + q^3*Q)", "(q^2 + q^3*Q)*(-q^5 + q^6*Q^2)")
    return OreOperator.from_e_coeffs({3: c3, 2: c2, 1: c1, 0: c0})


def cubic_operator() -> OreOperator:
    """(E - 1) alpha(q,E,Q) (Q - 1), built by operator multiplication;
    equal to the displayed cubic."""
    e = OreOperator.shift(0)
    one = OreOperator.scalar(1)
    return ore_mul(ore_mul(e - one, alpha_operator()),
                   OreOperator.scalar(_rf("Q - 1")))


def epsilon_p0_reduced() -> LaurentMPoly:
    """The primitive integer form of P0 at q = 1."""
    return parse_poly("Q^2*E^2 + (-Q^4 + Q^3 + 2*Q^2 + Q - 1)*E + Q^2")


def a_polynomial_nonabelian() -> LaurentMPoly:
    """The nonabelian factor of the A-polynomial, in (l, alpha)."""
    return parse_poly("alpha^4*l^2 + (-1 + alpha^2 + 2*alpha^4 + alpha^6"
                      " - alpha^8)*l + alpha^4")


@lru_cache(maxsize=None)
def _jones_cached(n: int, qval: Fraction) -> Fraction:
    return jones_eval(n, qval)


def jones_evaluator() -> DiscreteEvaluator:
    """The full sum J(n) as a sequence evaluator (zero for n < 1)."""
    return DiscreteEvaluator(
        1,
        lambda pt, qv: _jones_cached(pt[0], Fraction(qv)),
        support=lambda pt: pt[0] >= 1,
        name="figure-eight sum",
    )


def summand_evaluator() -> DiscreteEvaluator:
    """The summand F(n, i) as a two-argument evaluator."""
    f = habiro_figure_eight()
    return DiscreteEvaluator(
        2,
        lambda pt, qv: f.eval_exact(pt, qv),
        name="figure-eight summand",
    )


SAMPLE_QS = (Fraction(2), Fraction(3), Fraction(5, 2), Fraction(7),
             Fraction(11))


def _q_span(p: LaurentMPoly) -> int:
    if p.is_zero() or "q" not in p.vars:
        return 0
    k = p.vars.index("q")
    exps = [e[k] for e in p.terms]
    return max(exps) - min(exps)


def recurrence_report(ns=range(1, 9), qs=SAMPLE_QS) -> list[dict]:
    """Check  P0 . J(n) + q^(n+1) + 1 = 0  two ways for every color n:
    exact values at the q samples, and as an identity in the rational
    functions of q (with the meridian bound to q^n).

    Each row records the q-degree span of the cleared identity next to
    the sample count: a sample-only certificate would need more points
    than that span, so the symbolic pass is the one that proves the
    identity; the samples cross-check the evaluators.
    """
    p0 = p0_operator()
    jev = jones_evaluator()
    rows = []
    for n in ns:
        if n < 1:
            raise DomainError(f"colors start at 1, got {n}")
        qvals = [Fraction(qv) for qv in qs]
        sampled_ok = all(
            ore_apply(p0, jev, (n,), qv) == -(qv ** (n + 1) + 1)
            for qv in qvals)
        qn = LaurentMPoly.var("q", n)
        inhom = RationalFunction(
            LaurentMPoly.var("q", n + 1) + LaurentMPoly.const(1),
            LaurentMPoly.const(1))
        parts = [inhom]
        for e, c in p0.terms.items():
            jk = RationalFunction(jones_symbolic(n + e[0]),
                                  LaurentMPoly.const(1))
            parts.append(c.subst({"Q": qn}) * jk)
        total = RationalFunction.zero()
        for t in parts:
            total = total + t
        common = LaurentMPoly.const(1)
        for t in parts:
            common = poly_lcm(common, t.den)
        span = max(_q_span(t.num * exact_divide(common, t.den))
                   for t in parts)
        rows.append({
            "n": n,
            "samples": len(qvals),
            "sampled_ok": sampled_ok,
            "symbolic_ok": total.is_zero(),
            "degree_span": span,
        })
    return rows


def builtin_names() -> tuple[str, ...]:
    return ("figure8",)


def check_builtin(name: str) -> None:
    if name not in builtin_names():
        raise DomainError(f"unknown built-in knot {name!r}")

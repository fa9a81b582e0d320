"""Dilogarithm potentials, their exact derivative forms, and saddle points.

A potential is a finite sum of dilogarithms and log products in a meridian
variable alpha and saddle coordinates.  Its exponentiated logarithmic
derivatives are rational functions; setting the coordinate ones to 1 gives
the gluing equations, and the alpha one evaluates to the squared longitude
eigenvalue.  Saddle points are found by Newton iteration on the cleared
polynomial system, and the imaginary part of the potential at the selected
saddle is the volume.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .dilog import li2
from .elim import EquationSystem, cleared_equation, rename_ratfun, RENAME_HALF
from .errors import (
    ConvergenceError,
    DegeneracyError,
    DomainError,
    SingularityError,
)
from .poly import LaurentMPoly, parse_poly
from .qhg import build_crossing, epsilon_ratio, habiro_figure_eight, shift_ratio
from .ratfun import RationalFunction, format_ratfun

_PI = math.pi


@dataclass(frozen=True)
class PotentialSpec:
    """Selects a potential: a named builtin or a single crossing factor,
    optionally mirrored (which negates the potential)."""

    kind: str  # "builtin" | "crossing"
    name: str = "figure8"
    positive: bool = True
    mirror: bool = False


def builtin_potential(name: str = "figure8",
                      mirror: bool = False) -> PotentialSpec:
    if name != "figure8":
        raise DomainError(f"unknown builtin potential {name!r}")
    return PotentialSpec("builtin", name=name, mirror=mirror)


def crossing_potential(positive: bool,
                       mirror: bool = False) -> PotentialSpec:
    return PotentialSpec("crossing", positive=positive, mirror=mirror)


def coordinate_names(spec: PotentialSpec) -> tuple[str, ...]:
    if spec.kind == "builtin":
        return ("x",)
    if spec.kind == "crossing":
        return ("w1", "w2", "w3", "w4")
    raise DomainError(f"unknown potential kind {spec.kind!r}")


# -- evaluation ------------------------------------------------------------

def _log(z: complex, what: str) -> complex:
    if z == 0:
        raise SingularityError(f"logarithm of zero: {what}")
    return cmath.log(z)


def _coerce_coords(spec: PotentialSpec, coords) -> dict[str, complex]:
    names = coordinate_names(spec)
    if isinstance(coords, Mapping):
        if set(coords) != set(names):
            raise DomainError(
                f"coordinates must be exactly {names}, got {tuple(coords)}")
        return {k: complex(coords[k]) for k in names}
    if isinstance(coords, (int, float, complex, Fraction)):
        coords = (coords,)
    vals = tuple(coords)
    if len(vals) != len(names):
        raise DomainError(
            f"expected {len(names)} coordinates {names}, got {len(vals)}")
    return {k: complex(v) for k, v in zip(names, vals)}


def phi_eval(spec: PotentialSpec, alpha: complex, coords) -> complex:
    """Value of the potential, principal branches throughout."""
    w = _coerce_coords(spec, coords)
    a = complex(alpha)
    if spec.kind == "builtin":
        x = w["x"]
        if x == 0 or a == 0:
            raise SingularityError("potential needs alpha, x nonzero")
        a2 = a * a
        val = (-2 * _log(a, "alpha") * _log(x, "x")
               - li2(a2 * x) + li2(a2 / x))
    else:
        w1, w2, w3, w4 = (w["w1"], w["w2"], w["w3"], w["w4"])
        if a == 0 or 0 in (w1, w2, w3, w4):
            raise SingularityError("potential needs alpha, w1..w4 nonzero")
        la = _log(a, "alpha")
        v = w1 * w3 / (w2 * w4)
        if spec.positive:
            val = (la * la + la * _log(v, "w1*w3/(w2*w4)")
                   - _log(w2 / w1, "w2/w1") * _log(w3 / w2, "w3/w2")
                   - _PI * _PI / 6
                   - li2(a * w4 / w3) - li2(a * w4 / w1)
                   + li2(w2 * w4 / (w1 * w3))
                   + li2(a * w1 / w2) + li2(a * w3 / w2))
        else:
            lv = _log(v, "w1*w3/(w2*w4)")
            val = (-la * la - la * lv
                   + _log(w3 / w4, "w3/w4") * _log(w4 / w1, "w4/w1")
                   - _PI * _PI / 6
                   + li2(v) + 1j * _PI * lv
                   - li2(a * w1 / w4) - li2(a * w3 / w4)
                   + li2(a * w2 / w3) + li2(a * w2 / w1))
    return -val if spec.mirror else val


# -- exact derivative forms ------------------------------------------------

def _rf(num: str, den: str = "1") -> RationalFunction:
    return RationalFunction(parse_poly(num), parse_poly(den))


def derivative_forms(spec: PotentialSpec) -> dict[str, RationalFunction]:
    """exp of each logarithmic derivative of the potential, as an exact
    rational function of (alpha, coordinates)."""
    if spec.kind == "builtin":
        forms = {
            "x": _rf("alpha^-2*(1 - alpha^2*x)*(1 - alpha^2*x^-1)"),
            "alpha": _rf("(1 - alpha^2*x)^2", "(x - alpha^2)^2"),
        }
    elif spec.positive:
        forms = {
            "w1": _rf("1 - w1*w3*w2^-1*w4^-1",
                      "(1 - alpha*w1*w2^-1)*(1 - alpha^-1*w1*w4^-1)"),
            "w2": _rf("alpha*(1 - alpha^-1*w2*w1^-1)*(1 - alpha^-1*w2*w3^-1)",
                      "1 - w2*w4*w1^-1*w3^-1"),
            "w3": _rf("1 - w1*w3*w2^-1*w4^-1",
                      "(1 - alpha^-1*w3*w4^-1)*(1 - alpha*w3*w2^-1)"),
            "w4": _rf("alpha^-1*(1 - alpha*w4*w3^-1)*(1 - alpha*w4*w1^-1)",
                      "1 - w2*w4*w1^-1*w3^-1"),
            "alpha": _rf("alpha^2*(1 - alpha^-1*w3*w4^-1)*(1 - alpha*w4*w1^-1)",
                         "(1 - alpha^-1*w2*w1^-1)*(1 - alpha*w3*w2^-1)"),
        }
    else:
        forms = {
            "w1": _rf("-alpha^-1*w4*w3^-1*(1 - alpha*w1*w4^-1)"
                      "*(1 - alpha*w2*w1^-1)",
                      "1 - w1*w3*w2^-1*w4^-1"),
            "w2": _rf("-alpha*(1 - w1*w3*w2^-1*w4^-1)",
                      "(1 - alpha*w2*w3^-1)*(1 - alpha*w2*w1^-1)"),
            "w3": _rf("-alpha^-1*w4*w1^-1*(1 - alpha*w3*w4^-1)"
                      "*(1 - alpha*w2*w3^-1)",
                      "1 - w1*w3*w2^-1*w4^-1"),
            "w4": _rf("-alpha*w1*w3*w4^-2*(1 - w1*w3*w2^-1*w4^-1)",
                      "(1 - alpha*w1*w4^-1)*(1 - alpha*w3*w4^-1)"),
            "alpha": _rf("alpha^-2*w2*w4*w1^-1*w3^-1*(1 - alpha*w1*w4^-1)"
                         "*(1 - alpha*w3*w4^-1)",
                         "(1 - alpha*w2*w3^-1)*(1 - alpha*w2*w1^-1)"),
        }
    if spec.mirror:
        forms = {k: f.inverse() for k, f in forms.items()}
    return forms


def saddle_system(spec: PotentialSpec,
                  longitude: str = "squared") -> EquationSystem:
    """Cleared polynomial system: coordinate forms equal 1, the alpha form
    equals l^2 (or, for the builtin only, its square root equals l)."""
    forms = derivative_forms(spec)
    one = RationalFunction.one()
    lv = RationalFunction.var("l")
    coords = coordinate_names(spec)
    glue = tuple(cleared_equation(forms[c], one) for c in coords)
    if longitude == "squared":
        lon = cleared_equation(forms["alpha"], lv * lv)
    elif longitude == "linear":
        if spec.kind != "builtin":
            raise DomainError(
                "a linear longitude is only defined for the builtin "
                "potential, whose alpha form has a rational square root")
        root = _rf("1 - alpha^2*x", "x - alpha^2")
        if spec.mirror:
            root = root.inverse()
        lon = cleared_equation(root, lv)
    else:
        raise DomainError(f"unknown longitude kind {longitude!r}")
    return EquationSystem(glue, lon, coords, longitude)


# -- identity table between summand ratios and potential forms -------------

def prop_comp_check(positive: bool = True) -> list[dict]:
    """Compare the q = 1 limits of the crossing summand's shift ratios
    against the potential derivative forms, coordinate by coordinate.

    Returns one row per identity with the two sides, their quotient, and
    whether they agree exactly.
    """
    term = build_crossing(positive)
    forms = derivative_forms(crossing_potential(positive))
    rows = []
    for which, key in (("Et1", "w1"), ("Et2", "w2"), ("Et3", "w3"),
                       ("Et4", "w4"), ("Em", "alpha")):
        lhs = rename_ratfun(epsilon_ratio(term, which), RENAME_HALF)
        rhs = forms[key]
        quot = lhs / rhs
        rows.append({
            "identity": f"limit of {which} ratio vs {key} form",
            "pass": quot.is_one(),
            "lhs": format_ratfun(lhs),
            "rhs": format_ratfun(rhs),
            "unit": format_ratfun(quot),
        })
    return rows


# -- saddle points ---------------------------------------------------------

@dataclass(frozen=True)
class SaddleResult:
    alpha: complex
    coords: dict[str, complex]
    residual: float  # max |form - 1| over the coordinate forms
    phi: complex
    im_phi: float
    l_squared: complex
    iterations: int

    def to_json(self) -> dict:
        def c(z):
            return {"re": f"{z.real:.17g}", "im": f"{z.imag:.17g}"}
        return {
            "alpha": c(self.alpha),
            "coords": {k: c(v) for k, v in self.coords.items()},
            "residual": f"{self.residual:.17g}",
            "phi": c(self.phi),
            "im_phi": f"{self.im_phi:.17g}",
            "l_squared": c(self.l_squared),
            "iterations": self.iterations,
        }


def _solve_linear(mat, rhs):
    """Gaussian elimination with partial pivoting over complex numbers."""
    n = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if abs(a[piv][col]) < 1e-300:
            raise DegeneracyError("singular Jacobian in the Newton step")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                for k in range(col, n + 1):
                    a[r][k] -= f * a[col][k]
    out = [0j] * n
    for r in range(n - 1, -1, -1):
        s = a[r][n] - sum(a[r][k] * out[k] for k in range(r + 1, n))
        out[r] = s / a[r][r]
    return out


def _forms_residual(forms, coords, env) -> float:
    worst = 0.0
    for c in coords:
        num = forms[c].num.eval_complex(env)
        den = forms[c].den.eval_complex(env)
        if den == 0:
            raise SingularityError(f"{c} form undefined at the point")
        worst = max(worst, abs(num / den - 1))
    return worst


def solve_saddle(spec: PotentialSpec, alpha: complex, start,
                 tol: float = 1e-12,
                 max_iter: int = 100) -> SaddleResult:
    """Newton iteration for a saddle of the potential at fixed alpha.

    Runs on the cleared gluing polynomials with their exact Jacobian, then
    re-checks the rational forms themselves (clearing can introduce
    spurious zeros).  Of the converged point and its coordinate-wise
    conjugate, the one with the larger imaginary part of the potential is
    returned, provided it too satisfies the forms.
    """
    a = complex(alpha)
    forms = derivative_forms(spec)
    coords = coordinate_names(spec)
    one = RationalFunction.one()
    polys = [cleared_equation(forms[c], one) for c in coords]
    jac = [[p.derivative(c2) for c2 in coords] for p in polys]
    w = _coerce_coords(spec, start)
    names = list(coords)
    it = 0
    for it in range(1, max_iter + 1):
        env = {**w, "alpha": a}
        fv = [p.eval_complex(env) for p in polys]
        jm = [[jac[i][j].eval_complex(env) for j in range(len(names))]
              for i in range(len(polys))]
        delta = _solve_linear(jm, fv)
        scale = max(1.0, max(abs(w[k]) for k in names))
        w = {k: w[k] - d for k, d in zip(names, delta)}
        if max(abs(d) for d in delta) < tol * scale:
            break
    else:
        raise ConvergenceError(
            f"Newton did not settle in {max_iter} iterations")
    env = {**w, "alpha": a}
    res = _forms_residual(forms, coords, env)
    if res > 1e-6:
        raise ConvergenceError(
            f"Newton landed on a spurious zero of the cleared system "
            f"(form residual {res:.2e})")
    phi = phi_eval(spec, a, w)
    # candidate with every coordinate conjugated: for symmetric alpha it
    # solves the same system and may carry the opposite sign of Im(phi)
    wc = {k: v.conjugate() for k, v in w.items()}
    try:
        resc = _forms_residual(forms, coords, {**wc, "alpha": a})
    except SingularityError:
        resc = math.inf
    if resc <= max(10 * res, tol):
        phic = phi_eval(spec, a, wc)
        take = phic.imag > phi.imag
        if phic.imag == phi.imag:
            # exact tie: settle deterministically on the branch whose
            # first coordinate sits in the upper half plane
            first = names[0]
            take = wc[first].imag > w[first].imag
        if take:
            w, res, phi = wc, resc, phic
            env = {**w, "alpha": a}
    den = forms["alpha"].den.eval_complex(env)
    if den == 0:
        raise SingularityError("alpha form undefined at the saddle")
    l2 = forms["alpha"].num.eval_complex(env) / den
    return SaddleResult(a, w, res, phi, phi.imag, l2, it)


def volume(spec: Optional[PotentialSpec] = None,
           alpha: complex = -1.0 + 0j,
           start=None) -> float:
    """Im of the potential at the selected saddle (default: the builtin
    at alpha = -1, seeded near the unit circle)."""
    spec = spec or builtin_potential()
    if start is None:
        if spec.kind != "builtin":
            raise DomainError("crossing potentials need an explicit start")
        start = 0.5 + 0.8j
    return solve_saddle(spec, alpha, start).im_phi


# -- discrete-to-continuous asymptotics ------------------------------------

def _rf_at_unit_root(r: RationalFunction, big_n: int,
                     exps: Mapping[str, int]) -> complex:
    """Evaluate at each variable = zeta^e for zeta = exp(2 pi i / N),
    folding all integer exponents mod N before touching floats."""
    def ev(p: LaurentMPoly) -> complex:
        tot = 0j
        for e, c in p.terms.items():
            k = 0
            for v, m in zip(p.vars, e):
                if m:
                    if v not in exps:
                        raise DomainError(f"no exponent assigned to {v}")
                    k += m * exps[v]
            tot += float(c) * cmath.exp(2j * _PI * ((k % big_n) / big_n))
        return tot
    den = ev(r.den)
    if den == 0:
        raise SingularityError("denominator vanishes at the root of unity")
    return ev(r.num) / den


def asymptotic_check(a=Fraction(3, 10), u=Fraction(1, 5),
                     big_ns: Sequence[int] = (100, 200, 400, 800)) -> list[dict]:
    """Compare the discrete two-step ratio of the builtin summand at a
    primitive root of unity against the continuous alpha form at the
    matching point on the curve, for a ladder of root orders.

    The discrete side is evaluated at q = zeta_N, meridian zeta_N^n,
    coordinate zeta_N^i with n ~ aN, i ~ uN; the continuous side at
    alpha^2 = zeta_N^n, x = zeta_N^i.  The relative gap shrinks like 1/N.
    """
    term = habiro_figure_eight()
    disc_rf = shift_ratio(term, "Em")
    cont_rf = derivative_forms(builtin_potential())["alpha"]
    rows = []
    for big_n in big_ns:
        if not isinstance(big_n, int) or not 3 <= big_n <= 10**4:
            raise DomainError(f"root order {big_n} out of range [3, 10^4]")
        n = int(round(Fraction(a) * big_n))
        i = int(round(Fraction(u) * big_n))
        disc = _rf_at_unit_root(disc_rf, big_n, {"q": 1, "Q": n, "Qt1": i})
        cont = cont_rf.num.eval_complex({
            "alpha": cmath.exp(1j * _PI * n / big_n),
            "x": cmath.exp(2j * _PI * i / big_n),
        }) / cont_rf.den.eval_complex({
            "alpha": cmath.exp(1j * _PI * n / big_n),
            "x": cmath.exp(2j * _PI * i / big_n),
        })
        rows.append({
            "N": big_n, "n": n, "i": i,
            "discrete": disc, "continuous": cont,
            "rel_err": abs(disc - cont) / abs(cont),
        })
    return rows

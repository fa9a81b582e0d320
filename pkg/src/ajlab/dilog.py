"""Complex dilogarithm to double precision.

Principal branch, analytic on the plane cut along [1, oo).  The cut is
approached C99-style: a complex argument with a signed-zero imaginary part
selects the side, a plain real argument on the cut is refused.
"""

import cmath
import math
from fractions import Fraction

from .errors import BranchCutError, ConvergenceError, DomainError

_PI = math.pi
_PI2_6 = _PI * _PI / 6
_EPS = 1e-16
_MAX_TERMS = 300


def _bernoulli_numbers(n: int) -> list[Fraction]:
    """B_0 .. B_n with B_1 = -1/2, by the defining recurrence."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        c = 1  # binomial(m+1, k), updated incrementally
        for k in range(m):
            acc += c * b[k]
            c = c * (m + 1 - k) // (k + 1)
        b.append(-acc / (m + 1))
    return b


# coefficients of the series  Li2(1 - e^-w) = sum B_n w^(n+1) / (n+1)!
_B = _bernoulli_numbers(64)
_BERN_COEFF = [float(_B[n] / math.factorial(n + 1)) for n in range(len(_B))]


def _kahan_add(total, comp, term):
    y = term - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


def _taylor(z: complex) -> complex:
    # sum z^k / k^2, compensated; usable for |z| <= 0.55 or so
    total = 0j
    comp = 0j
    power = 1 + 0j
    for k in range(1, _MAX_TERMS):
        power *= z
        term = power / (k * k)
        total, comp = _kahan_add(total, comp, term)
        if abs(term) < _EPS * (abs(total) + _EPS):
            return total
    raise ConvergenceError("dilogarithm power series did not settle")


def _bernoulli_series(w: complex) -> complex:
    # sum B_n w^(n+1) / (n+1)!; odd coefficients beyond the first vanish
    total = _BERN_COEFF[0] * w
    comp = 0j
    w2 = w * w
    total, comp = _kahan_add(total, comp, _BERN_COEFF[1] * w2)
    wp = w  # w^(2k-1)
    for n in range(2, len(_BERN_COEFF), 2):
        wp *= w2
        term = _BERN_COEFF[n] * wp
        total, comp = _kahan_add(total, comp, term)
        if abs(term) < _EPS * (abs(total) + _EPS):
            return total
    raise ConvergenceError("dilogarithm log series did not settle")


def _route(z: complex) -> complex:
    """Value off the cut, choosing the expansion by region."""
    r = abs(z)
    if r <= 0.5:
        return _taylor(z)
    if abs(1 - z) <= 0.5:
        if z == 1:
            return complex(_PI2_6, 0.0)
        return (_PI2_6 - cmath.log(z) * cmath.log(1 - z)
                - _taylor(1 - z))
    if r >= 2.0:
        lg = cmath.log(-z)
        return -_taylor(1 / z) - _PI2_6 - 0.5 * lg * lg
    # annulus around the unit circle: series in w = -log(1-z), which the
    # nearby cases above keep well inside its |w| < 2 pi disk
    return _bernoulli_series(-cmath.log(1 - z))


def _cut_upper(x: float) -> complex:
    """Limit from the upper half-plane at real x >= 1."""
    if x == 1.0:
        return complex(_PI2_6, 0.0)
    lx = math.log(x)
    if x >= 2.0:
        re = -_taylor(1 / x).real + _PI * _PI / 3 - 0.5 * lx * lx
    else:
        # reflection through 1-x < 0, whose logarithm is real
        re = (_PI2_6 - lx * math.log(x - 1) - _route(complex(1 - x)).real)
    return complex(re, _PI * lx)


def li2(z) -> complex:
    """Dilogarithm of a number; complex, with the cut along [1, oo).

    Real arguments below 1 give a real result (as a complex with zero
    imaginary part).  On the cut the two one-sided limits differ; they
    are selected by the sign of a zero imaginary part, and a plain real
    argument there raises instead of guessing.
    """
    if isinstance(z, complex):
        zc = z
        from_real = False
    else:
        zc = complex(float(z))
        from_real = True
    if not (math.isfinite(zc.real) and math.isfinite(zc.imag)):
        raise DomainError("dilogarithm of a non-finite number")
    if zc.imag == 0.0:
        x = zc.real
        if x > 1.0:
            if from_real:
                raise BranchCutError(
                    "dilogarithm on the cut (1, oo): pass complex(x, 0.0) "
                    "or complex(x, -0.0) to choose a side")
            up = _cut_upper(x)
            return up if math.copysign(1.0, zc.imag) > 0 else up.conjugate()
        if x == 1.0:
            return complex(_PI2_6, 0.0)
        return complex(_route(zc).real, 0.0)
    return _route(zc)

"""Scaling exponents from nonlinear-eigenvalue and transcendental conditions.

Covers the viscous pinch-off exponent family gamma_i (closed form in terms
of Gamma and 2F1 factors, cross-checkable against direct quadrature of the
defining velocity-consistency integral), the corner-flow eddy exponents
(complex roots of a transcendental equation), the exactly rational Burgers
perturbation spectrum, and the generic large-xi growth power of linear
eigenfunctions.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import SolverError
from .specfun import hyp2f1, ln_gamma

#: Rescaled-minimum column as tabulated alongside gamma_i: 1/(12*(gamma-1)).
#: The per-branch profile normalization uses gbar = (i+1)*gamma instead
#: (see profiles.ViscousProfileSpec); both coincide at i = 0.


def viscous_K(i, gamma):
    """Closed-form velocity-consistency function K_i(gamma) whose roots are
    the viscous pinch-off exponents.

    Built from Gamma-function prefactors and two 2F1 evaluations at
    argument z = 1 - (2i+2)*gamma.
    """
    i = _check_branch(i)
    gamma = float(gamma)
    m = 2 * i + 2
    gbar = (i + 1) * gamma
    if gbar <= 1.0:
        raise ValueError(f"viscous_K requires (i+1)*gamma > 1, got {gbar}")
    if gamma >= 3.0:
        raise ValueError(f"viscous_K requires gamma < 3 (Gamma(3-gamma) factor), got {gamma}")
    inv = 1.0 / m
    z = 1.0 - m * gamma
    a = (2 * i + 3) / m - gamma
    pref = 0.5 * (2.0 * gbar - 1.0) / (gbar - 1.0)
    g1 = math.exp(ln_gamma(4.0 - gamma) + ln_gamma(inv) - ln_gamma(4.0 - gamma + inv))
    g2 = math.exp(ln_gamma(3.0 - gamma) + ln_gamma(inv) - ln_gamma(3.0 - gamma + inv))
    f1 = hyp2f1(a, 4.0 - gamma, 4.0 - gamma + inv, z)
    f2 = hyp2f1(a, 3.0 - gamma, 3.0 - gamma + inv, z)
    return gamma * (g1 * pref * f1 - g2 * f2)


def viscous_K_quadrature(i, gamma):
    """K_i(gamma) by direct adaptive quadrature of the velocity integral
    over the normalized profile variable y in (0, 1).

    Independent oracle for :func:`viscous_K`.  Endpoint algebraic
    singularities are softened by y = u**2 on the left half and
    y = 1 - s**2 on the right half.
    """
    i = _check_branch(i)
    gamma = float(gamma)
    gbar = (i + 1) * gamma
    c4 = 0.5 * (2.0 * gbar - 1.0) / (gbar - 1.0)
    p0 = 1.0 + gamma
    p1 = (2 * i - 2.0 * gbar + 3.0) / (2.0 * (i + 1))
    p2 = (2 * i + 1.0) / (2.0 * (i + 1))

    # Power substitutions at the endpoints, with the singular endpoint
    # factors folded in analytically: y = u**4 near 0 and y = 1 - s**k
    # with k = 4(i+1) near 1, so both transformed integrands vanish
    # algebraically at their endpoint.
    k = 4 * (i + 1)

    def left_integrand(u):
        y = u ** 4
        return (4.0 * (c4 * y - 1.0) * u ** (4.0 * (3.0 - p0) + 3.0)
                * ((2.0 * gbar - 1.0) * y + 1.0) ** (-p1)
                * (1.0 - y) ** (-p2))

    def right_integrand(s):
        y = 1.0 - s ** k
        return (k * (c4 * y - 1.0) * y ** (3.0 - p0)
                * ((2.0 * gbar - 1.0) * y + 1.0) ** (-p1)
                * s ** (k - 1.0 - k * p2))

    left, _ = quad(left_integrand, 0.0, 0.5 ** 0.25,
                   epsabs=1e-12, epsrel=1e-10, limit=300)
    right, _ = quad(right_integrand, 0.0, 0.5 ** (1.0 / k),
                    epsabs=1e-12, epsrel=1e-10, limit=300)
    return gbar / (i + 1) * (left + right)


_GAMMA_BRACKET = (2.0 + 1e-9, 2.999)


def viscous_gamma(i, use_quadrature=False):
    """Exponent gamma_i as the root of K_i in (2, 3), plus the tabulated
    rescaled-minimum value 1/(12*(gamma_i - 1)).

    Root-finding is bracketed bisection/Brent on a sign change located by
    a coarse scan of the bracket (2, 3); absolute tolerance 1e-10.
    """
    i = _check_branch(i)
    if i > 5:
        raise ValueError(f"viscous_gamma tabulated for i <= 5, got {i}")
    fun = viscous_K_quadrature if use_quadrature else viscous_K
    lo, hi = _GAMMA_BRACKET
    grid = np.linspace(lo, hi, 61)
    vals = [fun(i, g) for g in grid]
    for k in range(len(grid) - 1):
        if vals[k] == 0.0:
            gam = float(grid[k])
            break
        if vals[k] * vals[k + 1] < 0.0:
            gam = brentq(lambda g: fun(i, g), grid[k], grid[k + 1],
                         xtol=1e-12, rtol=1e-14)
            break
    else:
        raise SolverError(
            f"no sign change of K_{i} in gamma bracket ({lo}, {hi})",
            bracket=_GAMMA_BRACKET, values=(vals[0], vals[-1]))
    return gam, 1.0 / (12.0 * (gam - 1.0))


@dataclass
class ViscousExponentRow:
    i: int
    gamma: float
    r0: float
    bracket: tuple


def viscous_exponent_table(imax=5, use_quadrature=False):
    """All rows (i = 0..imax) of the viscous exponent family, with the
    search bracket recorded as metadata."""
    rows = []
    for i in range(imax + 1):
        gam, r0 = viscous_gamma(i, use_quadrature=use_quadrature)
        rows.append(ViscousExponentRow(i, gam, r0, _GAMMA_BRACKET))
    return rows


# -- corner-flow eddy exponents ---------------------------------------------

_MOFFATT_WINDOW = (1.0, 8.0, 6.0)  # Re in (1, 8], |Im| <= 6


def _moffatt_f(lam, alpha):
    return cmath.sin(2.0 * (lam - 1.0) * alpha) + (lam - 1.0) * math.sin(2.0 * alpha)


def _moffatt_fprime(lam, alpha):
    return 2.0 * alpha * cmath.cos(2.0 * (lam - 1.0) * alpha) + math.sin(2.0 * alpha)


def moffatt_roots(alpha, count, seeds_re=40, seeds_im=25):
    """First ``count`` roots lambda (Re > 1) of the corner-flow condition
    sin(2*(lambda-1)*alpha) = -(lambda-1)*sin(2*alpha).

    ``alpha`` is the half-angle in radians, 0 < 2*alpha < 2*pi.  Complex
    Newton iteration seeded on a grid over Re in (1, 8], Im in [0, 6];
    roots come in conjugate pairs and the Im >= 0 representative is
    returned, real roots with exactly zero imaginary part.  Sorted by
    ascending real part.
    """
    alpha = float(alpha)
    if not 0.0 < 2.0 * alpha < 2.0 * math.pi:
        raise ValueError(f"need 0 < 2*alpha < 2*pi, got 2*alpha = {2 * alpha}")
    re_lo, re_hi, im_hi = _MOFFATT_WINDOW
    roots = []
    failed = []
    for re in np.linspace(re_lo + 0.02, re_hi, seeds_re):
        for im in np.linspace(0.0, im_hi, seeds_im):
            lam = complex(re, im)
            ok = False
            for _ in range(60):
                f = _moffatt_f(lam, alpha)
                fp = _moffatt_fprime(lam, alpha)
                if fp == 0:
                    break
                step = f / fp
                lam -= step
                if abs(step) < 1e-13:
                    ok = True
                    break
            if not ok:
                failed.append(complex(re, im))
                continue
            if abs(_moffatt_f(lam, alpha)) > 1e-9:
                continue
            lam = complex(lam.real, abs(lam.imag))
            if lam.imag < 1e-9:
                lam = complex(lam.real, 0.0)
            if not (re_lo + 1e-8 < lam.real <= re_hi + 1e-6 and lam.imag <= im_hi + 1e-6):
                continue
            if abs(lam - 1.0) < 1e-6:
                continue  # trivial root at lambda = 1
            if all(abs(lam - r) > 1e-7 for r in roots):
                roots.append(lam)
    if not roots and failed:
        raise SolverError(
            "Newton failed to locate any corner-flow root",
            failed_seeds=failed[:5], alpha=alpha)
    roots.sort(key=lambda r: (r.real, r.imag))
    return roots[:count]


def moffatt_leading_is_complex(two_alpha_deg):
    """Whether the leading eddy exponent is complex at opening angle
    ``two_alpha_deg`` (degrees)."""
    roots = moffatt_roots(math.radians(two_alpha_deg) / 2.0, 1)
    if not roots:
        raise SolverError("no corner-flow roots found", angle=two_alpha_deg)
    return roots[0].imag != 0.0


def moffatt_transition_angle(lo_deg=140.0, hi_deg=152.0, tol_deg=0.05):
    """Opening angle 2*alpha (degrees) at which the leading eddy exponent
    switches between complex (below) and real (above), by bisection."""
    flo = moffatt_leading_is_complex(lo_deg)
    fhi = moffatt_leading_is_complex(hi_deg)
    if flo == fhi:
        raise SolverError("no real/complex transition in the angle bracket",
                          bracket=(lo_deg, hi_deg))
    while hi_deg - lo_deg > tol_deg:
        mid = 0.5 * (lo_deg + hi_deg)
        if moffatt_leading_is_complex(mid) == flo:
            lo_deg = mid
        else:
            hi_deg = mid
    return 0.5 * (lo_deg + hi_deg)


# -- Burgers spectrum ---------------------------------------------------------

def burgers_spectrum(i, j):
    """Eigenvalue nu_j = (2i+4-j)/(2i+2) of the linearization around the
    i-th wave-steepening profile, as an exact rational."""
    i = _check_branch(i)
    if j < 1 or j != int(j):
        raise ValueError(f"mode index j must be a positive integer, got {j}")
    return Fraction(2 * i + 4 - int(j), 2 * i + 2)


#: Mode excluded at a first shock-formation event: the profile's second
#: derivative vanishes there, forcing the j = 3 perturbation amplitude to zero.
EXCLUDED_SHOCK_MODE = 3


def burgers_spectrum_list(i, jmax=6, drop_excluded=True):
    """Spectrum nu_1..nu_jmax for branch i, optionally dropping the mode
    whose amplitude vanishes at a first shock event (j = 3)."""
    return [burgers_spectrum(i, j) for j in range(1, jmax + 1)
            if not (drop_excluded and j == EXCLUDED_SHOCK_MODE)]


def burgers_eigenfunction(i, j, u):
    """Closed-form eigenfunction P(U) = U**m / (1 + (2i+3) U**(2i+2)) with
    m = 3 + 2i - 2*nu_j*(i+1), in the profile variable U."""
    i = _check_branch(i)
    nu = burgers_spectrum(i, j)
    m = 3 + 2 * i - 2 * nu * (i + 1)  # exact integer arithmetic
    assert m == int(m)
    u = np.asarray(u, dtype=float)
    return u ** int(m) / (1.0 + (2 * i + 3) * u ** (2 * i + 2))


def burgers_eigenfunction_residual(i, j, u):
    """Residual of the eigenvalue equation in the profile variable,
    P*[(alpha - nu)*(1 + (2i+3)U^(2i+2)) + 1] - P_U*[alpha*U + (1+alpha)*U^(2i+3)],
    normalized by max |P|.  Vanishes identically for the closed form."""
    i = _check_branch(i)
    nu = float(burgers_spectrum(i, j))
    alpha = 1.0 / (2 * i + 2)
    m = int(3 + 2 * i - 2 * float(burgers_spectrum(i, j)) * (i + 1) + 0.5)
    u = np.asarray(u, dtype=float)
    d = 1.0 + (2 * i + 3) * u ** (2 * i + 2)
    p = u ** m / d
    dp = (m * u ** (m - 1) * d - u ** m * (2 * i + 3) * (2 * i + 2) * u ** (2 * i + 1)) / d ** 2
    res = p * ((alpha - nu) * d + 1.0) - dp * (alpha * u + (1.0 + alpha) * u ** (2 * i + 3))
    scale = np.max(np.abs(p)) or 1.0
    return np.max(np.abs(res)) / scale


def perturbation_growth_exponent(alpha, beta, nu):
    """Large-xi growth power (alpha - nu)/beta of an eigenfunction with
    eigenvalue nu around an (alpha, beta) similarity solution."""
    if beta == 0:
        raise ValueError("growth exponent undefined for beta = 0")
    return (alpha - nu) / beta


def _check_branch(i):
    if i < 0 or i != int(i):
        raise ValueError(f"branch index must be a non-negative integer, got {i}")
    return int(i)

"""Special functions for the analytic layer: log-gamma, Gauss 2F1, Hermite.

The hypergeometric evaluator targets real parameters and real argument.
For z < 0, which is the regime the viscous pinch-off eigenvalue condition
actually needs (z = 1 - (2i+2)*gamma, i.e. z down to about -24), the Pfaff
transformation w = z/(z-1) maps the argument into [0, 1) where the Gauss
series converges geometrically; the branch point z = 1 is never approached.
"""

import math

import numpy as np

# 500 terms suffice below |w| ~ 0.95; the deepest tabulated eigenvalue rows
# push the transformed argument to ~0.966 where the geometric tail needs a
# little more headroom, hence the larger cap.
_SERIES_MAX_TERMS = 2000
_SERIES_RTOL = 1e-16


def ln_gamma(x):
    """Natural log of Gamma(x) for x > 0.

    Thin wrapper over the C library lgamma (relative error well below
    1e-12 on the positive axis), with the domain restricted to x > 0 so
    the reflection branch never enters.
    """
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def _is_nonpositive_integer(c, tol=1e-12):
    return c <= tol and abs(c - round(c)) < tol


def _gauss_series(a, b, c, z):
    """Sum the Gauss series at |z| < 1; raises ValueError with a diagnostic
    if 500 terms do not reach the term cutoff.

    The cutoff compares the term against the largest partial sum seen, not
    the current one: with cancellation the attainable accuracy is set by
    the peak magnitude anyway.
    """
    term = 1.0
    total = 1.0
    scale = 1.0
    for n in range(_SERIES_MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        total += term
        scale = max(scale, abs(total))
        if abs(term) <= _SERIES_RTOL * scale:
            return total
        if not math.isfinite(total):
            break
    # Polynomial case: the series terminated exactly on a Pochhammer zero.
    if term == 0.0:
        return total
    raise ValueError(
        "hypergeometric series did not converge: "
        f"a={a}, b={b}, c={c}, z={z}, last term {term:.3e}"
    )


def hyp2f1(a, b, c, z):
    """Gauss hypergeometric function 2F1(a, b; c; z) for real arguments.

    Strategy: direct series for z in (-0.5, 0.9]; Pfaff transformation
    z -> z/(z-1) for z < -0.5 (choosing the variant that leaves the
    smaller third Pochhammer parameter, which accelerates convergence);
    Gauss's summation at z = 1 when c - a - b > 0.
    """
    a, b, c, z = float(a), float(b), float(c), float(z)
    if _is_nonpositive_integer(c):
        raise ValueError(f"hyp2f1 pole: c = {c} is a non-positive integer")
    if z == 1.0:
        s = c - a - b
        if s <= 0:
            raise ValueError(
                f"hyp2f1 branch point: z = 1 with c - a - b = {s} <= 0")
        return math.exp(ln_gamma(c) + ln_gamma(s) - ln_gamma(c - a) - ln_gamma(c - b))
    if z > 1.0:
        raise ValueError(f"hyp2f1 defined here for z <= 1 only, got z = {z}")
    if z < -0.5:
        w = z / (z - 1.0)
        if abs(c - b) <= abs(c - a):
            return (1.0 - z) ** (-a) * _gauss_series(a, c - b, c, w)
        return (1.0 - z) ** (-b) * _gauss_series(c - a, b, c, w)
    return _gauss_series(a, b, c, z)


def hyp2f1_euler_integral(a, b, c, z):
    """Euler integral representation of 2F1, evaluated by adaptive
    quadrature.  Independent cross-check for :func:`hyp2f1`; requires
    c > b > 0 and z < 1.

    The substitution t = s**2 (and 1 - t = s**2 at the right endpoint)
    softens the endpoint algebra so plain adaptive quadrature reaches
    ~1e-10 absolute accuracy.
    """
    from scipy.integrate import quad

    a, b, c, z = float(a), float(b), float(c), float(z)
    if not (c > b > 0):
        raise ValueError(f"Euler integral needs c > b > 0, got b={b}, c={c}")
    if z >= 1.0:
        raise ValueError("Euler integral requires z < 1")

    def left(s):  # t = s^2 near t=0
        t = s * s
        return 2.0 * s * t ** (b - 1.0) * (1.0 - t) ** (c - b - 1.0) * (1.0 - z * t) ** (-a)

    def right(s):  # t = 1 - s^2 near t=1
        t = 1.0 - s * s
        return 2.0 * s * t ** (b - 1.0) * (s * s) ** (c - b - 1.0) * (1.0 - z * t) ** (-a)

    half = math.sqrt(0.5)
    i1, _ = quad(left, 0.0, half, epsabs=1e-13, epsrel=1e-12, limit=200)
    i2, _ = quad(right, 0.0, half, epsabs=1e-13, epsrel=1e-12, limit=200)
    lnB = ln_gamma(c) - ln_gamma(b) - ln_gamma(c - b)
    return math.exp(lnB) * (i1 + i2)


def hermite(n, y):
    """Physicists' Hermite polynomial H_n(y) via the three-term recurrence
    H_{k+1} = 2*y*H_k - 2*k*H_{k-1}.  Accepts scalar or array y."""
    if n < 0 or n != int(n):
        raise ValueError(f"hermite order must be a non-negative integer, got {n}")
    n = int(n)
    y = np.asarray(y, dtype=float)
    h_prev = np.ones_like(y)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * y
    for k in range(1, n):
        h, h_prev = 2.0 * y * h - 2.0 * k * h_prev, h
    return h if h.ndim else float(h)

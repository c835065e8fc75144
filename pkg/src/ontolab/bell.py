"""Ontological Bell-correlation model.

The setting-correlated hidden-variable density W(c|a,b) = (1/2)|sin(4c-2a-2b)|
reproduces the singlet correlation cos 2(a-b); the module evaluates CHSH by
piecewise-exact quadrature, samples trials by inverse CDF, and checks the
local-hidden-variable bound for setting-independent densities.
"""

from dataclasses import dataclass

import numpy as np

_PI = np.pi
DEFAULT_ANGLES = (np.deg2rad(22.5), np.deg2rad(-22.5), 0.0, np.deg2rad(45.0))


@dataclass(frozen=True)
class Settings:
    """Polarizer angles in radians; physics is periodic with period pi."""

    a: float
    aPrime: float
    b: float
    bPrime: float

    def reduced(self):
        return Settings(*(float(np.mod(v, _PI)) for v in
                          (self.a, self.aPrime, self.b, self.bPrime)))


def sign_pm(x):
    """Outcome sign with the measure-zero convention sign(0) = +1."""
    return np.where(np.asarray(x) >= 0, 1.0, -1.0)


def w_conditional(c, a, b):
    """Density of the hidden polarization c given settings a, b (period pi)."""
    return 0.5 * np.abs(np.sin(4.0 * np.asarray(c) - 2.0 * a - 2.0 * b))


def _breakpoints(a, b):
    """Sorted discontinuity/kink locations of the CHSH integrand on [0, pi]."""
    pts = {0.0, _PI}
    # kinks of |sin(4c - 2a - 2b)|: 4c - 2a - 2b = k pi
    base = (2.0 * a + 2.0 * b) / 4.0
    for k in range(-10, 11):
        c = base + k * _PI / 4.0
        if 0.0 <= c <= _PI:
            pts.add(c)
    # sign flips of cos 2(c - a) and cos 2(c - b)
    for v in (a, b):
        for k in range(-6, 7):
            c = v + _PI / 4.0 + k * _PI / 2.0
            if 0.0 <= c <= _PI:
                pts.add(c)
    return np.array(sorted(pts))


def expectation_ab(a, b, quad_points=2048):
    """<AB> = int_0^pi W(c|a,b) sign(cos 2(c-a)) sign(cos 2(c-b)) dc.

    Composite Gauss-Legendre between the integrand's breakpoints, so each
    panel integrates a smooth +-(1/2) sin piece essentially exactly. Equals
    cos 2(a-b).
    """
    if quad_points < 1024:
        raise ValueError("quad_points must be >= 1024")
    pts = _breakpoints(a, b)
    per_panel = max(8, quad_points // max(1, len(pts) - 1))
    nodes, weights = np.polynomial.legendre.leggauss(min(per_panel, 64))
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        if hi - lo < 1e-15:
            continue
        c = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
        f = (w_conditional(c, a, b)
             * sign_pm(np.cos(2.0 * (c - a)))
             * sign_pm(np.cos(2.0 * (c - b))))
        total += 0.5 * (hi - lo) * np.dot(weights, f)
    return float(total)


def chsh(settings=None, quad_points=2048):
    """S = <AB> + <A'B> + <AB'> - <A'B'> by quadrature."""
    if settings is None:
        settings = Settings(*DEFAULT_ANGLES)
    elif not isinstance(settings, Settings):
        settings = Settings(*settings)
    a, ap, b, bp = settings.a, settings.aPrime, settings.b, settings.bPrime
    return (expectation_ab(a, b, quad_points)
            + expectation_ab(ap, b, quad_points)
            + expectation_ab(a, bp, quad_points)
            - expectation_ab(ap, bp, quad_points))


def sample_hidden(a, b, n, rng):
    """Draw n values of c from W(c|a,b) by piecewise inverse CDF (exact)."""
    r = rng.random(n)
    # theta = 4c - 2a - 2b mod 2pi has density |sin theta| / 4
    lower = r < 0.5
    theta = np.empty(n)
    theta[lower] = np.arccos(1.0 - 4.0 * r[lower])
    theta[~lower] = _PI + np.arccos(1.0 - 4.0 * (r[~lower] - 0.5))
    # two c-branches per theta: c in [0, pi) covers theta in [0, 4 pi)
    branch = rng.integers(0, 2, size=n)
    full = np.mod(theta + 2.0 * _PI * branch + 2.0 * a + 2.0 * b, 4.0 * _PI)
    return full / 4.0


def sample_trials(a, b, n, seed):
    """Outcome stream (A, B, c) of n seeded trials; empirical <AB> -> cos 2(a-b)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    c = sample_hidden(a, b, n, rng)
    A = sign_pm(np.cos(2.0 * (c - a)))
    B = sign_pm(np.cos(2.0 * (c - b)))
    return A, B, c


def chsh_montecarlo(settings=None, n=1_000_000, seed=0):
    """Monte Carlo S and its standard error, one independent stream per term."""
    if settings is None:
        settings = Settings(*DEFAULT_ANGLES)
    elif not isinstance(settings, Settings):
        settings = Settings(*settings)
    a, ap, b, bp = settings.a, settings.aPrime, settings.b, settings.bPrime
    terms = ((a, b, 1.0), (ap, b, 1.0), (a, bp, 1.0), (ap, bp, -1.0))
    S = 0.0
    var = 0.0
    seq = np.random.SeedSequence(seed).spawn(len(terms))
    for (ai, bi, w), ss in zip(terms, seq):
        A, B, _ = sample_trials(ai, bi, n, np.random.default_rng(ss))
        prod = A * B
        S += w * prod.mean()
        var += prod.var(ddof=1) / n
    return float(S), float(np.sqrt(var))


def lhv_bound(density, settings=None, grid=20001):
    """S for a setting-independent density over c; |S| <= 2 for any such density.

    density: callable on c in [0, pi) or an array of non-negative weights on a
    uniform grid (normalised internally).
    """
    if settings is None:
        settings = Settings(*DEFAULT_ANGLES)
    elif not isinstance(settings, Settings):
        settings = Settings(*settings)
    if callable(density):
        c = (np.arange(grid) + 0.5) * (_PI / grid)
        w = np.asarray(density(c), dtype=float)
    else:
        w = np.asarray(density, dtype=float)
        c = (np.arange(len(w)) + 0.5) * (_PI / len(w))
    if np.any(w < 0):
        raise ValueError("density must be non-negative")
    w = w / w.sum()
    a, ap, b, bp = settings.a, settings.aPrime, settings.b, settings.bPrime
    def corr(x, y):
        return float(np.sum(w * sign_pm(np.cos(2.0 * (c - x)))
                            * sign_pm(np.cos(2.0 * (c - y)))))
    return corr(a, b) + corr(ap, b) + corr(a, bp) - corr(ap, bp)

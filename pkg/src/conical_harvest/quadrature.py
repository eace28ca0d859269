"""Adaptive quadrature, principal-value integration, and bracketed root/extremum search.

The workhorse is a vectorized Gauss-Kronrod 15(7) rule with worst-interval-first
subdivision.  Semi-infinite integrals are truncated at a point where the
caller-supplied exponential tail bound drops below tol/10.  Principal-value
integrals use pole-symmetric subtraction inside a finite excision window plus
an exact log term, with the power-law far tail mapped to a finite interval by
u -> 1/u.
"""

import heapq
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq as _brentq, minimize_scalar as _minimize_scalar

from .errors import InvalidParameter, NoSignChange, NotUnimodal, PolesTooClose, ToleranceNotMet

# Gauss-Kronrod 15-point nodes/weights (positive half) and the embedded
# 7-point Gauss weights; standard QUADPACK values.
_XGK_HALF = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK_HALF = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG_HALF = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_XGK = np.concatenate([-_XGK_HALF[:-1], _XGK_HALF[::-1]])          # 15 ascending nodes
_WGK = np.concatenate([_WGK_HALF[:-1], _WGK_HALF[::-1]])
_WG = np.zeros(15)
_WG[1:-1:2] = np.concatenate([_WG_HALF[:-1], _WG_HALF[::-1]])      # Gauss nodes sit at odd slots

DEFAULT_TOL = 1e-10
DEFAULT_PV_TOL = 1e-8
_MAX_INTERVALS = 4096
_MIN_WIDTH_FACTOR = 1e-14


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi) and self.lo < self.hi):
            raise InvalidParameter(f"bracket must satisfy lo < hi, got [{self.lo}, {self.hi}]")


def _gk15(f, a, b):
    """One GK15 panel; f maps a node array to shape (..., 15).  Returns (val, err)."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    y = np.atleast_2d(np.asarray(f(mid + half * _XGK), dtype=float))
    if not np.all(np.isfinite(y)):
        raise InvalidParameter(f"integrand returned non-finite values on [{a}, {b}]")
    kron = half * y @ _WGK
    gauss = half * y @ _WG
    return kron, np.abs(kron - gauss)


def integrate_adaptive(f, lo, hi, tol, breakpoints=(), max_intervals=_MAX_INTERVALS):
    """Adaptive GK15 on [lo, hi] with forced initial breakpoints.

    ``f`` maps a node array to an array of shape (15,) for scalar integrands or
    (components, 15) for several real components sharing subdivision points
    (how complex-valued integrals are done: one pass, per-component errors).
    Returns (values, errors, evaluations) with the leading axis of size
    ``components``.  Raises ToleranceNotMet when the interval budget runs out
    with max-component error still above tol.
    """
    edges = [lo] + sorted(float(b) for b in breakpoints if lo < b < hi) + [hi]
    heap = []
    count = 0
    evals = 0
    for a, b in zip(edges[:-1], edges[1:]):
        val, err = _gk15(f, a, b)
        evals += 15
        heapq.heappush(heap, (-float(err.max()), count, a, b, val, err))
        count += 1

    min_width = _MIN_WIDTH_FACTOR * (abs(lo) + abs(hi) + 1.0)
    while True:
        total_err = np.sum([item[5] for item in heap], axis=0)
        if float(total_err.max()) <= tol:
            break
        if len(heap) >= max_intervals or -heap[0][0] == 0.0:
            value = np.sum([item[4] for item in heap], axis=0)
            raise ToleranceNotMet(value, float(total_err.max()), tol, evals)
        _, _, a, b, val, err = heapq.heappop(heap)
        if b - a < min_width:
            # Cannot subdivide further; push back with zero priority so the
            # budget check above terminates the loop.
            heapq.heappush(heap, (0.0, count, a, b, val, err))
            count += 1
            continue
        mid = 0.5 * (a + b)
        for aa, bb in ((a, mid), (mid, b)):
            val, err = _gk15(f, aa, bb)
            evals += 15
            heapq.heappush(heap, (-float(err.max()), count, aa, bb, val, err))
            count += 1

    values = np.sum([item[4] for item in heap], axis=0)
    errors = np.sum([item[5] for item in heap], axis=0)
    return values, errors, evals


def tail_cutoff(tail_rate, tol):
    """Truncation point with analytic tail bound e^{-rate*z}/rate < tol/10."""
    return (np.log(1.0 / tol) + 5.0) / tail_rate


def integrate_semi_infinite(integrand, tail_rate, tol=DEFAULT_TOL, breakpoints=()):
    """Integrate a bounded integrand decaying at least like e^{-tail_rate*z} over [0, inf).

    The domain is truncated at z_max = (ln(1/tol) + 5)/tail_rate, where the
    analytic tail bound is below tol/10, then subdivided adaptively.
    ``breakpoints`` force initial subdivision (sharp features near z = 0).
    """
    if tail_rate <= 0:
        raise InvalidParameter("tail_rate must be > 0")
    if tol <= 0:
        raise InvalidParameter("tol must be > 0")
    zmax = tail_cutoff(tail_rate, tol)
    vals, errs, evals = integrate_adaptive(integrand, 0.0, zmax, tol, breakpoints=breakpoints)
    return QuadratureResult(float(vals[0]), float(errs[0]), evals)


def integrate_semi_infinite_complex(integrand, tail_rate, tol=DEFAULT_TOL, breakpoints=()):
    """Complex variant: two real integrations sharing one adaptive subdivision.

    ``integrand`` maps a node array to a complex array; returns
    (complex value, QuadratureResult-like error info as (err_re, err_im), evals).
    """
    if tail_rate <= 0:
        raise InvalidParameter("tail_rate must be > 0")
    zmax = tail_cutoff(tail_rate, tol)

    def two_rows(z):
        w = np.asarray(integrand(z), dtype=complex)
        return np.stack([w.real, w.imag])

    vals, errs, evals = integrate_adaptive(two_rows, 0.0, zmax, tol, breakpoints=breakpoints)
    return complex(vals[0], vals[1]), (float(errs[0]), float(errs[1])), evals


# --- principal value -------------------------------------------------------

SEMI_INFINITE = "semi-infinite"
REAL_LINE = "real-line"

_POLE_SEP_FLOOR = 1e-6


def _excision_widths(poles, lo_edge):
    widths = []
    for i, c in enumerate(poles):
        w = min(c / 2.0, 1.0)
        if lo_edge is not None:
            w = min(w, (c - lo_edge) / 2.0)
        for j, other in enumerate(poles):
            if j != i:
                w = min(w, abs(c - other) / 12.0)
        widths.append(w)
    return widths


def integrate_pv(numerator, poles, domain=SEMI_INFINITE, tol=DEFAULT_PV_TOL, weights=None):
    """PV integral of numerator(s) * sum_j q_j / (s^2 - c_j^2) over the domain.

    Each simple pole pair +-c_j is handled by pole-symmetric subtraction inside
    a window [c-w, c+w]: the smooth remainder (n(s) - n(c)) q/(s^2 - c^2) is
    integrated adaptively and the singular part contributes the exact
    n(c) q/(2c) ln[(2c-w)/(2c+w)].  Outside all windows the full integrand is
    smooth.  Over the semi-infinite / full-line domains the far tail is mapped
    to a finite interval by u -> 1/u, so constant numerators are handled
    exactly (PV int ds/(s^2-c^2) = 0 there).

    ``domain`` is "semi-infinite" ([0, inf)), "real-line" (the even part of the
    numerator is folded onto [0, inf)), or a Bracket with 0 <= lo.  Poles must
    lie strictly inside the domain and be pairwise separated by at least ten
    excision widths (PolesTooClose otherwise).
    """
    poles = [float(c) for c in poles]
    if not poles:
        raise InvalidParameter("at least one pole is required")
    if any(c <= 0 for c in poles):
        raise InvalidParameter("poles must be strictly positive")
    if weights is None:
        weights = [1.0] * len(poles)
    if len(weights) != len(poles):
        raise InvalidParameter("weights must match poles")
    order = np.argsort(poles)
    poles = [poles[i] for i in order]
    weights = [float(weights[i]) for i in order]

    if isinstance(domain, Bracket):
        lo, hi = domain.lo, domain.hi
        if lo < 0:
            raise InvalidParameter("bracket domains must lie in [0, inf)")
        fold = 1.0
        n_func = numerator
    elif domain == SEMI_INFINITE:
        lo, hi = 0.0, None
        fold = 1.0
        n_func = numerator
    elif domain == REAL_LINE:
        lo, hi = 0.0, None
        fold = 2.0

        def n_func(s):
            return 0.5 * (np.asarray(numerator(s)) + np.asarray(numerator(-s)))
    else:
        raise InvalidParameter(f"unknown domain {domain!r}")

    if hi is not None and (poles[0] <= lo or poles[-1] >= hi):
        raise InvalidParameter("poles must lie strictly inside the domain")

    for a, b in zip(poles[:-1], poles[1:]):
        if b - a < _POLE_SEP_FLOOR * (1.0 + poles[-1]):
            raise PolesTooClose(f"poles {a} and {b} closer than the excision floor")
    widths = _excision_widths(poles, lo if lo > 0 else None)
    if any(w <= 0 or not np.isfinite(w) for w in widths):
        raise PolesTooClose("no usable excision window for at least one pole")
    for (c, w) in zip(poles, widths):
        for other in poles:
            if other != c and abs(other - c) <= 10.0 * w:
                raise PolesTooClose(f"poles {c} and {other} within ten excision widths")

    def rational(s, skip=None):
        s = np.asarray(s, dtype=float)
        total = np.zeros_like(s)
        for j, (c, q) in enumerate(zip(poles, weights)):
            if j == skip:
                continue
            total += q / (s * s - c * c)
        return total

    pieces = []           # (callable, lo, hi, forced breakpoints)
    analytic = 0.0

    # Smooth segments between excision windows.
    edges = [lo]
    for c, w in zip(poles, widths):
        edges.extend([c - w, c + w])
    if hi is None:
        far_lo = 2.0 * poles[-1] + 4.0
        edges.append(far_lo)
    else:
        edges.append(hi)
    for a, b in zip(edges[0::2], edges[1::2]):
        if b - a > 1e-15:
            pieces.append((lambda s, _a=a: n_func(s) * rational(s), a, b, ()))

    # Excision windows: subtracted pole + remaining regular poles + exact log.
    # The window is split at the pole so no quadrature node lands on the
    # removable 0/0 of the subtracted integrand.
    for j, (c, w, q) in enumerate(zip(poles, widths, weights)):
        n_c = float(np.asarray(n_func(np.array([c])))[0])

        def window(s, _j=j, _c=c, _nc=n_c, _q=q):
            s = np.asarray(s, dtype=float)
            sub = (np.asarray(n_func(s)) - _nc) * _q / (s * s - _c * _c)
            return sub + np.asarray(n_func(s)) * rational(s, skip=_j)

        pieces.append((window, c - w, c + w, (c,)))
        analytic += q * n_c / (2.0 * c) * np.log((2.0 * c - w) / (2.0 * c + w))

    # Far tail via inversion u -> 1/u (exact for constant numerators).
    if hi is None:
        def far(v):
            v = np.asarray(v, dtype=float)
            out = np.zeros_like(v)
            pos = v > 0
            if np.any(pos):
                s = 1.0 / v[pos]
                total = np.zeros_like(s)
                for c, q in zip(poles, weights):
                    total += q / (1.0 - (c * v[pos]) ** 2)
                out[pos] = np.asarray(n_func(s)) * total
            return out

        pieces.append((far, 0.0, 1.0 / far_lo, ()))

    tol_piece = tol / len(pieces)
    value = analytic
    err = 0.0
    evals = 0
    for func, a, b, forced in pieces:
        vals, errs, n = integrate_adaptive(func, a, b, tol_piece, breakpoints=forced)
        value += float(vals[0])
        err += float(errs[0])
        evals += n
    return QuadratureResult(fold * value, fold * err, evals)


# --- root finding and minimization ----------------------------------------


def find_root_bracketed(objective, bracket, tol=1e-12):
    """Root of a continuous objective inside a sign-changing bracket (Brent).

    Raises NoSignChange when the endpoints do not straddle zero.
    """
    if not isinstance(bracket, Bracket):
        bracket = Bracket(*bracket)
    f_lo = objective(bracket.lo)
    f_hi = objective(bracket.hi)
    if f_lo == 0.0:
        return bracket.lo
    if f_hi == 0.0:
        return bracket.hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise NoSignChange(f"objective has the same sign at both ends of [{bracket.lo}, {bracket.hi}]")
    return float(_brentq(objective, bracket.lo, bracket.hi, xtol=tol, rtol=8.881784197001252e-16))


def find_last_sign_change(values, grid):
    """Index i of the last adjacent pair (i, i+1) with a sign change; None if none.

    Entries that are None (skipped points) never participate in a pair.
    """
    last = None
    for i in range(len(grid) - 1):
        a, b = values[i], values[i + 1]
        if a is None or b is None:
            continue
        if a == 0.0 or np.sign(a) != np.sign(b):
            last = i
    return last


def minimize_scalar(objective, bracket, tol=1e-8, unimodality_samples=33):
    """Abscissa of the minimum of a unimodal objective on a bracket.

    Bounded Brent search, then a post-hoc sampling check: if the sampled curve
    shows a second distinct local minimum the unimodality precondition was
    violated and NotUnimodal is raised.
    """
    if not isinstance(bracket, Bracket):
        bracket = Bracket(*bracket)
    res = _minimize_scalar(objective, bounds=(bracket.lo, bracket.hi), method="bounded",
                           options={"xatol": tol})
    xs = np.linspace(bracket.lo, bracket.hi, unimodality_samples)
    ys = np.array([objective(x) for x in xs])
    band = 1e-9 * (ys.max() - ys.min() + 1e-300)
    minima = 0
    for i in range(1, len(ys) - 1):
        if ys[i] < ys[i - 1] - band and ys[i] < ys[i + 1] - band:
            minima += 1
    if minima > 1:
        raise NotUnimodal(f"{minima} distinct local minima sampled in [{bracket.lo}, {bracket.hi}]")
    return float(res.x)

"""Concurrence, the flat-spacetime closed form, d_max scans, and parameter sweeps.

At leading perturbative order the two-detector concurrence is
2 max(0, |X| - sqrt(P_A P_B)) per lambda^2; everything here assembles that
from the response and correlation modules and searches it (largest
harvesting-achievable separation d_max, extremal deficit-angle parameter).
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import erfc as _erfc_real

from .correlation import CorrelationBreakdown, correlation_for
from .errors import DivergentOverlap, InvalidParameter
from .geometry import Alignment, BOUNDARY_ALIGNMENTS, ConeParameter, PairConfig, radial_pair
from .quadrature import (
    Bracket,
    DEFAULT_TOL,
    find_last_sign_change,
    find_root_bracketed,
    minimize_scalar,
)
from .response import ResponseBreakdown, p_boundary, p_flat, p_string
from .special import EPS_DIV, SQRT_PI, faddeeva_w

MAX_SWEEP_POINTS = 100_000


@dataclass(frozen=True)
class ConcurrenceResult:
    """Concurrence with the provenance of each part (per lambda^2)."""

    abs_x: float
    geo_mean_p: float
    concurrence: float
    diverged: bool
    response_a: ResponseBreakdown
    response_b: ResponseBreakdown
    correlation: CorrelationBreakdown


def response_pair(config: PairConfig, cone: ConeParameter, tol: float = DEFAULT_TOL):
    """(ResponseBreakdown_A, ResponseBreakdown_B) for any alignment.

    Flat runs the string path at nu = 1; boundary responses are wrapped so the
    flat part is P0 and the (negative) reflected-image part sits in p_images.
    """
    rho_a, rho_b = radial_pair(config)
    if config.alignment is Alignment.FLAT:
        effective = ConeParameter(1.0)
        return (p_string(rho_a, effective, config.gap, tol=tol),
                p_string(rho_b, effective, config.gap, tol=tol))
    if config.alignment in BOUNDARY_ALIGNMENTS:
        flat = p_flat(config.gap)
        out = []
        for rho in (rho_a, rho_b):
            total = p_boundary(rho, config.gap)
            out.append(ResponseBreakdown(p_flat=flat, p_images=total - flat, p_integral=0.0))
        return tuple(out)
    if rho_a == rho_b:
        one = p_string(rho_a, cone, config.gap, tol=tol)
        return one, one
    return (p_string(rho_a, cone, config.gap, tol=tol),
            p_string(rho_b, cone, config.gap, tol=tol))


def concurrence(config: PairConfig, cone: ConeParameter, tol: float = DEFAULT_TOL) -> ConcurrenceResult:
    """Concurrence 2 max(0, |X| - sqrt(P_A P_B)) with full breakdowns.

    Raises DivergentOverlap when a detector coincides with an image of its
    partner (the symmetric opposite-sides case at even integer nu); sweeps
    catch it and flag the row instead.
    """
    resp_a, resp_b = response_pair(config, cone, tol=tol)
    corr = correlation_for(config, cone, tol=tol)
    abs_x = abs(corr.total)
    geo_mean = math.sqrt(resp_a.total * resp_b.total)
    value = 2.0 * max(0.0, abs_x - geo_mean)
    return ConcurrenceResult(abs_x=abs_x, geo_mean_p=geo_mean, concurrence=value,
                             diverged=False, response_a=resp_a, response_b=resp_b,
                             correlation=corr)


def concurrence_flat(d: float, gap: float) -> float:
    """Flat-spacetime concurrence closed form, per lambda^2.

    C0 = max{ (e^{-g^2}/2 sqrt(pi)) [ |w(-d/2)|/d + e^{g^2} g erfc(g)
              - 1/sqrt(pi) ], 0 }
    using e^{-d^2/4}|Erfc(id/2)| = |w(-d/2)| for overflow-free evaluation.
    """
    if d <= EPS_DIV:
        raise DivergentOverlap(argument=d / 2.0, image_index=None,
                               message="flat concurrence diverges as d -> 0")
    bracket = (abs(faddeeva_w(-d / 2.0)) / d
               + math.exp(gap * gap) * gap * _erfc_real(gap) - 1.0 / SQRT_PI)
    return max(math.exp(-gap * gap) / (2.0 * SQRT_PI) * bracket, 0.0)


# --- d_max ------------------------------------------------------------------


@dataclass(frozen=True)
class DmaxResult:
    """Largest separation with positive concurrence; None when harvesting never occurs.

    ``skipped`` records scan points excluded for detector/image overlap.
    """

    value: Optional[float]
    skipped: Tuple[float, ...]


def _entanglement_margin(config: PairConfig, cone: ConeParameter, tol: float) -> float:
    result = concurrence(config, cone, tol=tol)
    return result.abs_x - result.geo_mean_p


def d_max(alignment: Alignment, cone: ConeParameter, l: float, gap: float,
          d_hi: float = 8.0, grid_n: int = 512, tol: float = 1e-6,
          d_lo: Optional[float] = None, quad_tol: float = DEFAULT_TOL) -> DmaxResult:
    """Maximum harvesting-achievable separation at fixed l, nu, gap.

    Scans g(d) = |X| - sqrt(P_A P_B) on a dense grid and bisects the LAST sign
    change (the margin can in principle re-cross, and d_max means the point
    beyond which harvesting cannot occur).  Overlap-divergent scan points are
    skipped and reported.  Returns d_hi itself when the margin is still
    positive at the scan ceiling.
    """
    if d_hi <= 0 or grid_n < 2:
        raise InvalidParameter("d_hi must be > 0 and grid_n >= 2")
    if d_lo is None:
        d_lo = 2.0 * l if alignment is Alignment.ORTHOGONAL_OPPOSITE_SIDES else d_hi / grid_n
    if d_lo >= d_hi:
        raise InvalidParameter(f"scan start {d_lo} is not below d_hi {d_hi}")

    grid = np.linspace(d_lo, d_hi, grid_n)
    margins = []
    skipped = []
    for d in grid:
        try:
            margins.append(_entanglement_margin(
                PairConfig(alignment, l=l, d=float(d), gap=gap), cone, quad_tol))
        except DivergentOverlap:
            margins.append(None)
            skipped.append(float(d))

    last = find_last_sign_change(margins, grid)
    if last is None:
        valid = [m for m in margins if m is not None]
        if valid and valid[-1] > 0.0:
            return DmaxResult(value=float(grid[-1]), skipped=tuple(skipped))
        return DmaxResult(value=None, skipped=tuple(skipped))

    def margin(d):
        return _entanglement_margin(PairConfig(alignment, l=l, d=float(d), gap=gap),
                                    cone, quad_tol)

    root = find_root_bracketed(margin, Bracket(float(grid[last]), float(grid[last + 1])), tol=tol)
    return DmaxResult(value=root, skipped=tuple(skipped))


def opposite_sides_terminal_l(cone: ConeParameter, gap: float, l_hi: float = 4.0,
                              grid_n: int = 512, tol: float = 1e-6,
                              quad_tol: float = DEFAULT_TOL) -> Optional[float]:
    """Terminal detector-to-string distance where d_max(l) meets d = 2l.

    For the opposite-sides alignment the separation is at least 2l, so
    harvesting stops entirely at the largest l whose minimum-separation
    (symmetric) configuration still has positive concurrence.  None when even
    the smallest scanned l cannot harvest, or when every symmetric point
    diverges (even integer nu).
    """
    grid = np.linspace(l_hi / grid_n, l_hi, grid_n)
    margins = []
    for l in grid:
        try:
            margins.append(_entanglement_margin(
                PairConfig(Alignment.ORTHOGONAL_OPPOSITE_SIDES, l=float(l), d=2.0 * float(l), gap=gap),
                cone, quad_tol))
        except DivergentOverlap:
            margins.append(None)

    last = find_last_sign_change(margins, grid)
    if last is None:
        valid = [m for m in margins if m is not None]
        if valid and valid[-1] > 0.0:
            return float(grid[-1])
        return None

    def margin(l):
        return _entanglement_margin(
            PairConfig(Alignment.ORTHOGONAL_OPPOSITE_SIDES, l=float(l), d=2.0 * float(l), gap=gap),
            cone, quad_tol)

    return find_root_bracketed(margin, Bracket(float(grid[last]), float(grid[last + 1])), tol=tol)


# --- nu scans ----------------------------------------------------------------


def nu_extremum(objective: Union[str, Callable[[float], float]], config: PairConfig,
                bracket: Bracket, tol: float = 1e-4, quad_tol: float = DEFAULT_TOL) -> float:
    """Extremal deficit-angle parameter per the objective selector.

    "response_correlation_gap" minimizes the unsigned separation
    |sqrt(P_A P_B) - |X|| between the transition probability and the
    correlation magnitude; "concurrence" maximizes the concurrence.  A custom
    callable of nu is minimized as given.  The bracket must contain a single
    extremum (verified post hoc by sampling; NotUnimodal otherwise).
    """
    if not isinstance(bracket, Bracket):
        bracket = Bracket(*bracket)
    if bracket.lo < 1.0 or bracket.hi > 64.0:
        raise InvalidParameter("nu bracket must lie within [1, 64]")

    if callable(objective):
        fn = objective
    elif objective == "response_correlation_gap":
        def fn(nu):
            result = concurrence(config, ConeParameter(nu), tol=quad_tol)
            return abs(result.geo_mean_p - result.abs_x)
    elif objective == "concurrence":
        def fn(nu):
            return -concurrence(config, ConeParameter(nu), tol=quad_tol).concurrence
    else:
        raise InvalidParameter(f"unknown objective selector {objective!r}")

    return minimize_scalar(fn, bracket, tol=tol)


# --- sweeps -------------------------------------------------------------------


SWEEP_AXES = ("d", "l", "nu", "gap")


@dataclass(frozen=True)
class SweepRow:
    param: float
    p_a: Optional[float]
    p_b: Optional[float]
    abs_x: Optional[float]
    concurrence: Optional[float]
    diverged: bool


@dataclass(frozen=True)
class SweepTable:
    """Rows of (axis value, P_A, P_B, |X|, concurrence, diverged), axis-ordered."""

    axis: str
    alignment: Alignment
    nu: float
    fixed: dict
    rows: Tuple[SweepRow, ...]


def _sweep_row(alignment: Alignment, cone: ConeParameter, axis: str, value: float,
               l: Optional[float], d: Optional[float], gap: Optional[float],
               d_over_l: Optional[float], tol: float) -> SweepRow:
    if axis == "l":
        l = value
    elif axis == "d":
        d = value
    elif axis == "gap":
        gap = value
    elif axis == "nu":
        cone = ConeParameter(value)
    if d_over_l is not None and axis == "l":
        d = d_over_l * value
    try:
        config = PairConfig(alignment, l=l if l is not None else 0.0, d=d, gap=gap)
        result = concurrence(config, cone, tol=tol)
        return SweepRow(param=value, p_a=result.response_a.total, p_b=result.response_b.total,
                        abs_x=result.abs_x, concurrence=result.concurrence, diverged=False)
    except (DivergentOverlap, InvalidParameter):
        return SweepRow(param=value, p_a=None, p_b=None, abs_x=None,
                        concurrence=None, diverged=True)


def sweep(alignment: Alignment, cone: ConeParameter, axis: str, values: Sequence[float],
          l: Optional[float] = None, d: Optional[float] = None, gap: Optional[float] = None,
          d_over_l: Optional[float] = None, tol: float = DEFAULT_TOL,
          threads: int = 1) -> SweepTable:
    """Evaluate the concurrence observables along one axis.

    ``axis`` is one of "d", "l", "nu", "gap"; the remaining parameters are
    fixed (``d_over_l`` couples d = ratio * l to an l-axis, for the
    opposite-sides family).  Per-row failures (detector/image overlap,
    constraint violations such as d < 2l) are flagged, never aborting the
    sweep.  Rows are computed concurrently when threads > 1 and assembled in
    axis order regardless of schedule.
    """
    if axis not in SWEEP_AXES:
        raise InvalidParameter(f"axis must be one of {SWEEP_AXES}")
    values = [float(v) for v in values]
    if not 2 <= len(values) <= MAX_SWEEP_POINTS:
        raise InvalidParameter(f"sweep needs between 2 and {MAX_SWEEP_POINTS} points")
    if gap is None and axis != "gap":
        raise InvalidParameter("gap must be fixed unless it is the sweep axis")
    if d is None and axis != "d" and not (axis == "l" and d_over_l is not None):
        raise InvalidParameter("d must be fixed, the sweep axis, or coupled via d_over_l")

    def row(value):
        return _sweep_row(alignment, cone, axis, value, l, d, gap, d_over_l, tol)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = tuple(pool.map(row, values))
    else:
        rows = tuple(row(v) for v in values)

    fixed = {k: v for k, v in (("l", l), ("d", d), ("gap", gap), ("d_over_l", d_over_l))
             if v is not None and k != axis}
    return SweepTable(axis=axis, alignment=alignment, nu=cone.nu, fixed=fixed, rows=rows)

"""Transition probability of a static detector: flat, conical, and boundary cases.

In sigma units and per lambda^2 the conical-spacetime response of a detector at
radial distance rho splits as P = P0 + P_images + P_integral with

    P0         = (1/4pi) [e^{-g^2} - sqrt(pi) g erfc(g)]
    P_images   = (1/4 sqrt(pi)) sum_m' w_m K(rho sin(m pi/nu), g) / (rho sin(m pi/nu))
    P_integral = (1/8 sqrt(pi)) int_0^inf coef(zeta) K(rho cosh(zeta/2), g)
                                           / (rho cosh(zeta/2)) dzeta

where K is the response kernel, coef the same-side zeta-coefficient (identically
zero at integer nu), and the primed sum applies the even-integer half-weight
rule.  At vanishing kernel argument the finite limit K/a -> klim(g) is
substituted, which makes P(rho=0) = nu * P0 exact.
"""

import math
import os
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc as _erfc_real

from .errors import InvalidParameter
from .geometry import ConeParameter, coefficient_breakpoints, image_terms, same_side_coefficient
from .quadrature import DEFAULT_TOL, integrate_semi_infinite
from .special import SQRT_PI, response_kernel, response_kernel_limit

# Below this kernel argument the analytic a -> 0 limit replaces the 0/0 ratio.
SMALL_ARGUMENT = 1e-8

# Verification hook: scales the image-sum part of P so `verify` can prove it
# catches an injected fault.  Never set outside tests.
FAULT_ENV = "CONICAL_HARVEST_FAULT_SCALE_P1"


@dataclass(frozen=True)
class ResponseBreakdown:
    """Transition probability split into flat, image-sum, and zeta-integral parts."""

    p_flat: float
    p_images: float
    p_integral: float

    @property
    def total(self) -> float:
        return self.p_flat + self.p_images + self.p_integral


def p_flat(gap: float) -> float:
    """Flat-spacetime transition probability P0 per lambda^2."""
    if gap < 0 or not math.isfinite(gap):
        raise InvalidParameter("gap must be finite and >= 0")
    return (math.exp(-gap * gap) - SQRT_PI * gap * _erfc_real(gap)) / (4.0 * math.pi)


def _kernel_over_argument(a, gap):
    """K(a, g)/a with the analytic limit substituted below SMALL_ARGUMENT."""
    a = np.asarray(a, dtype=float)
    safe = np.where(a < SMALL_ARGUMENT, 1.0, a)
    ratio = response_kernel(safe, gap) / safe
    out = np.where(a < SMALL_ARGUMENT, response_kernel_limit(gap), ratio)
    return float(out) if out.ndim == 0 else out


def p_string(rho: float, cone: ConeParameter, gap: float, tol: float = DEFAULT_TOL) -> ResponseBreakdown:
    """Response of a static detector at radial distance rho from the string.

    Monotonically decreasing in rho, increasing in nu, equal to nu * P0 at
    rho = 0 (any nu >= 1) and approaching P0 as rho -> inf with a
    e^{-g^2}/(4 pi a^2) image tail.  P_integral is exactly zero at integer nu.
    """
    if rho < 0 or not math.isfinite(rho):
        raise InvalidParameter("rho must be finite and >= 0")
    flat = p_flat(gap)

    images = 0.0
    for term in image_terms(cone):
        images += term.weight * _kernel_over_argument(rho * term.sin_term, gap)
    images /= 4.0 * SQRT_PI

    fault = os.environ.get(FAULT_ENV)
    if fault is not None:
        images *= float(fault)

    integral = 0.0
    if not cone.is_integer:
        coefficient = same_side_coefficient(cone.nu)

        def integrand(zeta):
            b = rho * np.cosh(np.asarray(zeta) / 2.0)
            return coefficient(zeta) * _kernel_over_argument(b, gap) / (8.0 * SQRT_PI)

        breakpoints = coefficient_breakpoints(cone.nu, cone.nu * math.pi)
        integral = integrate_semi_infinite(integrand, tail_rate=cone.nu, tol=tol,
                                           breakpoints=breakpoints).value

    return ResponseBreakdown(p_flat=flat, p_images=images, p_integral=integral)


def p_boundary(l: float, gap: float) -> float:
    """Response at distance l from a perfectly reflecting plane boundary.

    P_bd = P0 - (1/8 sqrt(pi)) K(l, g)/l, vanishing (exactly, via the kernel
    limit) as the detector reaches the boundary and approaching P0 from below
    with a e^{-g^2}/(8 pi l^2) tail far from it.
    """
    if l < 0 or not math.isfinite(l):
        raise InvalidParameter("l must be finite and >= 0")
    if l < SMALL_ARGUMENT:
        return 0.0
    return p_flat(gap) - _kernel_over_argument(l, gap) / (8.0 * SQRT_PI)

"""Nonlocal correlation term X for every alignment, assembled from aux_f.

String geometries take X = X0 + X_images + X_integral with X0 = f(d/2),
X_images = 2 sum_m' w_m f(z_m), and X_integral the zeta-integral of
coef(zeta) f(z(zeta)); the geometry module supplies z_m, z(zeta), and the
coefficient per alignment.  Boundary geometries subtract a single reflected
image from X0 instead of adding conical ones.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DivergentArgument, DivergentOverlap, InvalidParameter
from .geometry import (
    Alignment,
    BOUNDARY_ALIGNMENTS,
    ConeParameter,
    PairConfig,
    f_arguments,
)
from .quadrature import DEFAULT_TOL, integrate_semi_infinite_complex
from .special import EPS_DIV, aux_f


@dataclass(frozen=True)
class CorrelationBreakdown:
    """Correlation term split into flat, image-sum, and zeta-integral parts."""

    x_flat: complex
    x_images: complex
    x_integral: complex

    @property
    def total(self) -> complex:
        return self.x_flat + self.x_images + self.x_integral


def x_flat(d: float, gap: float) -> complex:
    """Flat-spacetime correlation X0 = f(d/2) per lambda^2.

    |X0| decreases monotonically in d and diverges as d -> 0; separations at
    or below the cutoff raise DivergentOverlap (point-model breakdown).
    """
    if d <= EPS_DIV:
        raise DivergentOverlap(argument=d / 2.0, image_index=None,
                               message=f"flat correlation diverges as d -> 0 (d={d!r})")
    try:
        return aux_f(d / 2.0, gap)
    except DivergentArgument as exc:
        raise DivergentOverlap(argument=exc.z, image_index=None) from exc


def x_string(config: PairConfig, cone: ConeParameter, tol: float = DEFAULT_TOL) -> CorrelationBreakdown:
    """Correlation term for the parallel / orthogonal / opposite-sides alignments.

    The zeta integral runs as two real integrations sharing one adaptive
    subdivision; it is skipped (exact zero) whenever the coefficient vanishes
    identically.  A detector/image overlap (an f-argument at or below the
    cutoff, e.g. the symmetric opposite-sides case at even integer nu) raises
    DivergentOverlap carrying the offending image index.
    """
    geo = f_arguments(config, cone)
    flat = x_flat(config.d, config.gap)

    images = 0.0 + 0.0j
    for m, weight, z in geo.image_args:
        try:
            images += 2.0 * weight * aux_f(z, config.gap)
        except DivergentArgument as exc:
            raise DivergentOverlap(argument=exc.z, image_index=m) from exc

    integral = 0.0 + 0.0j
    if not geo.zeta_vanishes:
        def integrand(zeta):
            return geo.zeta_coefficient(zeta) * aux_f(geo.zeta_argument(zeta), config.gap)

        integral, _, _ = integrate_semi_infinite_complex(
            integrand, tail_rate=cone.nu, tol=tol, breakpoints=geo.zeta_breakpoints)

    return CorrelationBreakdown(x_flat=flat, x_images=images, x_integral=integral)


def x_boundary(config: PairConfig) -> complex:
    """Correlation term near a reflecting boundary: the image is subtracted.

    parallel     X_bd = X0 - f(sqrt(d^2/4 + l^2))
    orthogonal   X_bd = X0 - f(d/2 + l)
    """
    if config.alignment not in BOUNDARY_ALIGNMENTS:
        raise InvalidParameter(f"x_boundary requires a boundary alignment, not {config.alignment}")
    flat = x_flat(config.d, config.gap)
    if config.alignment is Alignment.BOUNDARY_PARALLEL:
        argument = np.sqrt(config.d * config.d / 4.0 + config.l * config.l)
    else:
        argument = config.d / 2.0 + config.l
    try:
        return flat - aux_f(argument, config.gap)
    except DivergentArgument as exc:
        raise DivergentOverlap(argument=exc.z, image_index=None) from exc


def correlation_for(config: PairConfig, cone: ConeParameter, tol: float = DEFAULT_TOL) -> CorrelationBreakdown:
    """Dispatch to the alignment's correlation, as a uniform breakdown.

    Flat uses the string path at nu = 1 (empty image sum, vanishing
    coefficient), so the flat reduction is shared code, not a special case.
    """
    if config.alignment is Alignment.FLAT:
        return x_string(config, ConeParameter(1.0), tol=tol)
    if config.alignment in BOUNDARY_ALIGNMENTS:
        total = x_boundary(config)
        flat = x_flat(config.d, config.gap)
        return CorrelationBreakdown(x_flat=flat, x_images=total - flat, x_integral=0.0 + 0.0j)
    return x_string(config, cone, tol=tol)

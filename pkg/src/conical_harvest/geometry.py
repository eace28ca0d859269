"""Cone parameter, detector alignments, image enumeration, and effective distances.

The conical spacetime around an idealized straight string subtends azimuthal
angle 2 pi / nu with nu >= 1 (nu = 1 is Minkowski).  Its two-point function
splits into the flat term, a sum over floor(nu/2) rotated images (the m = nu/2
term carrying weight 1/2 exactly at even integer nu), and a residual integral
over zeta whose coefficient vanishes identically at integer nu (same-side
geometries) or at integer and half-integer nu (opposite-sides geometry).
"""

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import InvalidParameter

NU_MAX = 64.0
INTEGER_SNAP_TOL = 1e-12

# Coefficient peak near a vanishing-denominator nu: force subdivision on
# [0, 10*delta] when |1 - cos(angle)| falls below this.
_PEAK_THRESHOLD = 0.1


def _snap(value: float) -> float:
    rounded = round(value)
    return float(rounded) if abs(value - rounded) <= INTEGER_SNAP_TOL else float(value)


@dataclass(frozen=True)
class ConeParameter:
    """Deficit-angle parameter nu >= 1, snapped to integers within 1e-12."""

    nu: float

    def __post_init__(self):
        if not math.isfinite(self.nu):
            raise InvalidParameter("nu must be finite")
        if self.nu < 1.0:
            raise InvalidParameter(f"nu must be >= 1 (nu=1 is flat spacetime), got {self.nu}")
        if self.nu > NU_MAX:
            raise InvalidParameter(f"nu must be <= {NU_MAX:g}, got {self.nu}")
        object.__setattr__(self, "nu", _snap(self.nu))

    @property
    def is_integer(self) -> bool:
        return self.nu == round(self.nu)

    @property
    def is_half_integer(self) -> bool:
        return (2.0 * self.nu) == round(2.0 * self.nu)

    @property
    def deficit_angle(self) -> float:
        return 2.0 * math.pi * (self.nu - 1.0) / self.nu

    @property
    def string_tension_Gmu(self) -> float:
        return (1.0 - 1.0 / self.nu) / 4.0

    @property
    def image_count(self) -> int:
        return int(math.floor(self.nu / 2.0))


class Alignment(enum.Enum):
    FLAT = "flat"
    PARALLEL = "parallel"
    ORTHOGONAL_SAME_SIDE = "orthogonal"
    ORTHOGONAL_OPPOSITE_SIDES = "opposite"
    BOUNDARY_PARALLEL = "boundary-parallel"
    BOUNDARY_ORTHOGONAL = "boundary-orthogonal"

    @classmethod
    def from_string(cls, name: str) -> "Alignment":
        for member in cls:
            if member.value == name:
                return member
        raise InvalidParameter(f"unknown alignment {name!r}; "
                               f"choose from {', '.join(m.value for m in cls)}")


STRING_ALIGNMENTS = (Alignment.PARALLEL, Alignment.ORTHOGONAL_SAME_SIDE,
                     Alignment.ORTHOGONAL_OPPOSITE_SIDES)
BOUNDARY_ALIGNMENTS = (Alignment.BOUNDARY_PARALLEL, Alignment.BOUNDARY_ORTHOGONAL)


@dataclass(frozen=True)
class PairConfig:
    """Detector pair: alignment, string distance l, separation d, gap Omega*sigma.

    All lengths in sigma units.  Flat ignores l; boundary variants ignore nu.
    The opposite-sides alignment requires d >= 2l > 0 (detector B at radial
    distance d - l on the far side).
    """

    alignment: Alignment
    l: float
    d: float
    gap: float

    def __post_init__(self):
        for name in ("l", "d", "gap"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise InvalidParameter(f"{name} must be finite")
        if self.l < 0:
            raise InvalidParameter("l must be >= 0")
        if self.d <= 0:
            raise InvalidParameter("d must be > 0")
        if self.gap < 0:
            raise InvalidParameter("gap must be >= 0")
        if self.alignment is Alignment.ORTHOGONAL_OPPOSITE_SIDES:
            if self.l <= 0 or self.d < 2.0 * self.l:
                raise InvalidParameter(
                    f"opposite-sides alignment requires d >= 2l > 0, got l={self.l}, d={self.d}")


@dataclass(frozen=True)
class ImageTerm:
    m: int
    weight: float
    sin_term: float


def image_terms(cone: ConeParameter) -> Tuple[ImageTerm, ...]:
    """The floor(nu/2) conical image terms with the even-integer half-weight rule.

    Empty for nu < 2 (the image sum has no contribution there).
    """
    n = cone.image_count
    half_index = round(cone.nu) // 2 if (cone.is_integer and round(cone.nu) % 2 == 0) else None
    terms = []
    for m in range(1, n + 1):
        weight = 0.5 if m == half_index else 1.0
        terms.append(ImageTerm(m=m, weight=weight, sin_term=math.sin(m * math.pi / cone.nu)))
    return tuple(terms)


def radial_pair(config: PairConfig) -> Tuple[float, float]:
    """Radial distances (rho_A, rho_B) from the defect line / boundary."""
    if config.alignment in (Alignment.ORTHOGONAL_SAME_SIDE, Alignment.BOUNDARY_ORTHOGONAL):
        return config.l, config.l + config.d
    if config.alignment is Alignment.ORTHOGONAL_OPPOSITE_SIDES:
        return config.l, config.d - config.l
    # parallel, boundary-parallel, flat: both detectors share one distance
    return config.l, config.l


@dataclass(frozen=True)
class FArguments:
    """Correlation-term geometry: image f-arguments and the zeta-integral pieces.

    image_args holds (m, weight, z_m).  zeta_argument maps an array of zeta to
    the f-argument z(zeta); zeta_coefficient maps zeta to the integral
    coefficient.  zeta_vanishes marks coefficients that are identically zero
    (integer nu same-side, integer or half-integer nu opposite-sides).
    zeta_breakpoints force subdivision across the near-zero coefficient peak.
    """

    image_args: Tuple[Tuple[int, float, float], ...]
    zeta_argument: Callable[[np.ndarray], np.ndarray]
    zeta_coefficient: Callable[[np.ndarray], np.ndarray]
    zeta_vanishes: bool
    zeta_breakpoints: Tuple[float, ...]
    rho_product: float


def same_side_coefficient(nu: float) -> Callable[[np.ndarray], np.ndarray]:
    """zeta-coefficient nu sin(nu pi) / (pi [cos(nu pi) - cosh(nu zeta)])."""
    s, c = math.sin(nu * math.pi), math.cos(nu * math.pi)

    def coefficient(zeta):
        return nu * s / (np.pi * (c - np.cosh(nu * np.asarray(zeta))))

    return coefficient


def opposite_sides_coefficient(nu: float) -> Callable[[np.ndarray], np.ndarray]:
    """zeta-coefficient nu sin(2 nu pi) / (2 pi [cos(2 nu pi) - cosh(nu zeta)])."""
    s, c = math.sin(2.0 * nu * math.pi), math.cos(2.0 * nu * math.pi)

    def coefficient(zeta):
        return nu * s / (2.0 * np.pi * (c - np.cosh(nu * np.asarray(zeta))))

    return coefficient


def coefficient_breakpoints(nu: float, angle: float) -> Tuple[float, ...]:
    """Forced subdivision [0, 10*delta] when cos(angle) approaches 1.

    Near such nu the coefficient develops a peak at zeta = 0 of width
    delta = sqrt(2|1 - cos(angle)|)/nu that defeats naive adaptivity.
    """
    gap = abs(1.0 - math.cos(angle))
    if 0.0 < gap < _PEAK_THRESHOLD:
        delta = math.sqrt(2.0 * gap) / nu
        return (10.0 * delta,)
    return ()


def f_arguments(config: PairConfig, cone: ConeParameter) -> FArguments:
    """Image arguments and zeta-integral pieces for the correlation term X.

    Same-side geometries (parallel / orthogonal):
        z_m    = sqrt(d^2/4 + rho_A rho_B sin^2(m pi / nu))
        z(zeta) = sqrt(d^2/4 + rho_A rho_B (1 + cosh zeta)/2)
    Opposite sides (Delta theta = pi; only the j=+ branch survives):
        z_m    = sqrt(d^2/4 - rho_A rho_B sin^2(m pi / nu))
                 (radicand = (d/2 - l)^2 + rho_A rho_B cos^2 >= 0 given d >= 2l)
        z(zeta) = sqrt(d^2/4 + rho_A rho_B (cosh zeta - 1)/2)
    """
    if config.alignment not in STRING_ALIGNMENTS and config.alignment is not Alignment.FLAT:
        raise InvalidParameter(f"f_arguments applies to string alignments, not {config.alignment}")
    rho_a, rho_b = radial_pair(config)
    product = rho_a * rho_b
    quarter_d2 = config.d * config.d / 4.0
    opposite = config.alignment is Alignment.ORTHOGONAL_OPPOSITE_SIDES

    images = []
    for term in image_terms(cone):
        if opposite:
            # stable nonnegative form of d^2/4 - rho_A rho_B sin^2
            cos_term = math.cos(term.m * math.pi / cone.nu)
            radicand = (config.d / 2.0 - config.l) ** 2 + product * cos_term * cos_term
        else:
            radicand = quarter_d2 + product * term.sin_term * term.sin_term
        images.append((term.m, term.weight, math.sqrt(radicand)))

    if opposite:
        coefficient = opposite_sides_coefficient(cone.nu)
        vanishes = cone.is_half_integer
        breakpoints = coefficient_breakpoints(cone.nu, 2.0 * cone.nu * math.pi)

        def argument(zeta):
            return np.sqrt(quarter_d2 + product * (np.cosh(np.asarray(zeta)) - 1.0) / 2.0)
    else:
        coefficient = same_side_coefficient(cone.nu)
        vanishes = cone.is_integer
        breakpoints = coefficient_breakpoints(cone.nu, cone.nu * math.pi)

        def argument(zeta):
            return np.sqrt(quarter_d2 + product * (1.0 + np.cosh(np.asarray(zeta))) / 2.0)

    return FArguments(
        image_args=tuple(images),
        zeta_argument=argument,
        zeta_coefficient=coefficient,
        zeta_vanishes=vanishes,
        zeta_breakpoints=breakpoints,
        rho_product=product,
    )

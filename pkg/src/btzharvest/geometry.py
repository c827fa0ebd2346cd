"""Exterior kinematics of static detectors around a nonrotating BTZ hole.

A static worldline outside the horizon is fixed by the AdS length l, the
hole mass M and one radial number.  Three equivalent placements are
supported:

* area radius r > r_h,
* proper distance d >= 0 from the horizon,
* thermal pair (T, gamma): local KMS temperature and redshift factor.

The closed forms are exact in r, so every conversion routes through the
radius.  The thermal pair is special: it determines the horizon radius
itself (r_h = 2 pi l^2 T gamma), i.e. it selects the black-hole mass.

All lengths are quoted in units of the detector switching width sigma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi

# boundary condition of the field at spatial infinity
DIRICHLET = 1
TRANSPARENT = 0
NEUMANN = -1


class HorizonError(ValueError):
    """A quantity was requested that diverges or is undefined at r = r_h."""


@dataclass(frozen=True)
class SpacetimeParams:
    """Nonrotating BTZ background: AdS length, mass, boundary condition.

    Parameters
    ----------
    ads_length : float
        AdS curvature length l in units of sigma, > 0.
    mass : float
        Dimensionless black-hole mass M > 0.
    zeta : int
        Field boundary condition at infinity: +1 Dirichlet, 0 transparent,
        -1 Neumann.
    """

    ads_length: float
    mass: float
    zeta: int = DIRICHLET

    def __post_init__(self):
        if not self.ads_length > 0.0:
            raise ValueError(f"ads_length must be > 0, got {self.ads_length}")
        if not self.mass > 0.0:
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if self.zeta not in (DIRICHLET, TRANSPARENT, NEUMANN):
            raise ValueError(f"zeta must be one of -1, 0, +1, got {self.zeta}")

    @property
    def horizon_radius(self) -> float:
        """r_h = l sqrt(M), the positive root of the lapse."""
        return self.ads_length * math.sqrt(self.mass)

    @property
    def hawking_temperature(self) -> float:
        """T_H = r_h / (2 pi l^2), the temperature seen from infinity."""
        return self.horizon_radius / (TWO_PI * self.ads_length**2)


def _stable_arccosh1p(u: float) -> float:
    """arccosh(1 + u) for u >= 0 without cancellation near u = 0."""
    if u < 0.0:
        if u > -1e-12:  # tolerate roundoff just below the branch
            u = 0.0
        else:
            raise ValueError(f"arccosh argument below 1 by {u}")
    return math.log1p(u + math.sqrt(u * (u + 2.0)))


def proper_distance(r1: float, r2: float, params: SpacetimeParams) -> float:
    """Radial proper distance between static radii r1 <= r2.

    d(r1, r2) = l ln[(r2 + sqrt(r2^2 - r_h^2)) / (r1 + sqrt(r1^2 - r_h^2))].
    Additive in chained radii and zero at coincidence.
    """
    rh = params.horizon_radius
    if r1 < rh * (1.0 - 1e-14):
        raise ValueError(f"r1 = {r1} lies inside the horizon r_h = {rh}")
    if r2 < r1:
        raise ValueError(f"need r2 >= r1, got r1 = {r1}, r2 = {r2}")
    # l*(arccosh(r2/rh) - arccosh(r1/rh)), written stably
    return params.ads_length * (
        _stable_arccosh1p(max(r2 - rh, 0.0) / rh)
        - _stable_arccosh1p(max(r1 - rh, 0.0) / rh)
    )


def radius_at_distance(d: float, params: SpacetimeParams) -> float:
    """Radius of the static orbit a proper distance d outside the horizon."""
    if d < 0.0:
        raise ValueError(f"proper distance must be >= 0, got {d}")
    return params.horizon_radius * math.cosh(d / params.ads_length)


def distance_from_horizon(r: float, params: SpacetimeParams) -> float:
    """Proper distance from the horizon to radius r (inverse of the above)."""
    return proper_distance(params.horizon_radius, r, params)


def redshift_from_radius(r: float, params: SpacetimeParams) -> float:
    """gamma = sqrt(r^2 - r_h^2) / l; vanishes exactly on the horizon."""
    rh = params.horizon_radius
    if r < rh * (1.0 - 1e-14):
        raise ValueError(f"r = {r} lies inside the horizon r_h = {rh}")
    return math.sqrt(max(r - rh, 0.0) * (r + rh)) / params.ads_length


def redshift_from_distance(d: float, params: SpacetimeParams) -> float:
    """gamma = (r_h/l) sinh(d/l), the same factor in horizon-distance form."""
    if d < 0.0:
        raise ValueError(f"proper distance must be >= 0, got {d}")
    return params.horizon_radius * math.sinh(d / params.ads_length) / params.ads_length


def local_temperature(r: float, params: SpacetimeParams) -> float:
    """KMS temperature T = T_H / gamma of a static detector at radius r.

    Diverges on the horizon; raises HorizonError there rather than
    returning inf, since nothing downstream can integrate against it.
    """
    gamma = redshift_from_radius(r, params)
    if gamma == 0.0:
        raise HorizonError("local temperature diverges at r = r_h")
    return params.hawking_temperature / gamma


def placement_from_thermal(temperature: float, gamma: float, ads_length: float) -> tuple[float, float]:
    """Invert (T, gamma) -> (r_h, d) for a static detector.

    r_h = 2 pi l^2 T gamma and sinh(d/l) = 1/(2 pi l T); note the horizon
    radius is an *output* here: sweeping T or gamma sweeps the mass.

    Returns
    -------
    (r_h, d) : tuple of float
    """
    if not temperature > 0.0:
        raise ValueError(f"temperature must be > 0, got {temperature}")
    if not gamma > 0.0:
        raise ValueError(f"gamma must be > 0, got {gamma}")
    if not ads_length > 0.0:
        raise ValueError(f"ads_length must be > 0, got {ads_length}")
    rh = TWO_PI * ads_length**2 * temperature * gamma
    d = ads_length * math.asinh(1.0 / (TWO_PI * ads_length * temperature))
    return rh, d


def thermal_from_radius(r: float, params: SpacetimeParams) -> tuple[float, float]:
    """(T, gamma) pair of the static detector at radius r."""
    gamma = redshift_from_radius(r, params)
    if gamma == 0.0:
        raise HorizonError("thermal pair undefined at r = r_h")
    return params.hawking_temperature / gamma, gamma


@dataclass(frozen=True)
class DetectorPlacement:
    """One static detector position, stored in its native representation.

    Exactly one of `radius`, `horizon_distance` is set (the thermal pair
    fixes the spacetime too, so it enters through `placement_from_thermal`
    at pair-construction time instead).  phi is the angular coordinate;
    the reduced matrix-element formulas assume phi = 0.
    """

    radius: float | None = None
    horizon_distance: float | None = None
    phi: float = 0.0

    def __post_init__(self):
        if (self.radius is None) == (self.horizon_distance is None):
            raise ValueError("set exactly one of radius / horizon_distance")

    def resolve_radius(self, params: SpacetimeParams) -> float:
        if self.radius is not None:
            return self.radius
        return radius_at_distance(self.horizon_distance, params)

    def resolve_distance(self, params: SpacetimeParams) -> float:
        if self.horizon_distance is not None:
            return self.horizon_distance
        return distance_from_horizon(self.radius, params)

    def resolve_thermal(self, params: SpacetimeParams) -> tuple[float, float]:
        return thermal_from_radius(self.resolve_radius(params), params)

"""Image-sum structure of the BTZ Wightman function.

The two-point function outside the horizon is a sum over images indexed by
an integer n.  Each image contributes through the squared-geodesic-distance
function sigma_eps and, after reduction to detector coordinates, through a
pair of positive numbers (alpha_minus, alpha_plus) that locate the branch
points of the reduced integrand.  This module computes those quantities
stably and decides how many images are worth keeping.

Conventions: lengths in units of the switching width, angular alignment
Delta phi = 0 in the alpha reduction (the raw sigma_eps supports any
Delta phi), and the time regulator enters as cosh[(r_h/l^2) dt - i eps].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import SpacetimeParams, _stable_arccosh1p

TWO_PI = 2.0 * math.pi

# sinh/cosh of the arccosh arguments overflow past ~710; images this deep
# are identically zero at double precision anyway.
_LOGSPACE_Y = 600.0


@dataclass(frozen=True)
class WightmanPoint:
    """One exterior event (t, r, phi) on a static worldline."""

    t: float
    r: float
    phi: float = 0.0


@dataclass(frozen=True)
class ImageTermParams:
    """Branch-point data of image n for an aligned detector pair."""

    n: int
    alpha_minus: float
    alpha_plus: float

    def __post_init__(self):
        if self.alpha_minus < 0.0:
            raise ValueError(f"alpha_minus must be >= 0, got {self.alpha_minus}")
        if not self.alpha_plus > self.alpha_minus:
            raise ValueError(
                f"need alpha_plus > alpha_minus, got {self.alpha_plus} <= {self.alpha_minus}"
            )


def _u_pair(r_a: float, r_b: float, params: SpacetimeParams) -> tuple[float, float]:
    rh = params.horizon_radius
    if not (r_a > rh and r_b > rh):
        raise ValueError(f"need both radii > r_h = {rh}, got {r_a}, {r_b}")
    u_a = _stable_arccosh1p((r_a - rh) / rh)
    u_b = _stable_arccosh1p((r_b - rh) / rh)
    return u_a, u_b


def alpha_pm(n: int, r_a: float, r_b: float, params: SpacetimeParams) -> tuple[float, float]:
    """Branch-point abscissae (alpha_minus, alpha_plus) of image n.

    Both are arccosh of (P cosh y +- 1)/g with P = cosh u_A cosh u_B,
    g = sinh u_A sinh u_B, u_j the horizon distance over l, and
    y = 2 pi |n| r_h / l.  The minus argument is rewritten through
    P - g = cosh(u_B - u_A), which keeps it exact near coincidence.
    """
    u_a, u_b = _u_pair(r_a, r_b, params)
    g = math.sinh(u_a) * math.sinh(u_b)
    p = math.cosh(u_a) * math.cosh(u_b)
    du = abs(u_b - u_a)
    y = TWO_PI * abs(n) * params.horizon_radius / params.ads_length

    if y > _LOGSPACE_Y:
        # cosh y would overflow; both alphas collapse to ln(P/g) + y
        val = math.log(p / g) + y
        return val, val

    s2 = 2.0 * math.sinh(0.5 * y) ** 2  # cosh y - 1, exact at y = 0
    arg_minus_m1 = (p * s2 + 2.0 * math.sinh(0.5 * du) ** 2) / g
    arg_plus_m1 = (p * s2 + math.cosh(du) + 1.0) / g
    return _arccosh1p(arg_minus_m1), _arccosh1p(arg_plus_m1)


def _arccosh1p(u: float) -> float:
    # u*(u+2) overflows inside the stable form long before u does
    if u > 1e8:
        return math.log(2.0) + math.log1p(u)
    return _stable_arccosh1p(u)


def sigma_epsilon_dt(r_a, r_b, dt, n: int, params: SpacetimeParams,
                     epsilon: float = 0.0, dphi: float = 0.0):
    """Regulated squared-geodesic function of image n, vectorized over dt."""
    rh = params.horizon_radius
    length = params.ads_length
    if not (r_a >= rh and r_b >= rh):
        raise ValueError("sigma_epsilon needs exterior radii")
    spatial = (r_a * r_b / rh**2) * math.cosh((rh / length) * (dphi - TWO_PI * n))
    rad = math.sqrt((r_a**2 - rh**2) * (r_b**2 - rh**2)) / rh**2
    arg = (rh / length**2) * np.asarray(dt, dtype=complex) - 1j * epsilon
    out = spatial - 1.0 - rad * np.cosh(arg)
    return out if out.ndim else complex(out)


def sigma_epsilon(x: WightmanPoint, xp: WightmanPoint, n: int,
                  params: SpacetimeParams, epsilon: float = 0.0) -> complex:
    """sigma_eps(x, image-n of x') with the -i eps time prescription."""
    return sigma_epsilon_dt(x.r, xp.r, x.t - xp.t, n, params,
                            epsilon=epsilon, dphi=x.phi - xp.phi)


def _inv_sqrt2_sinh_half(alpha: float) -> float:
    if alpha <= 0.0:
        return math.inf
    h = 0.5 * alpha
    if h > 350.0:
        return math.sqrt(2.0) * math.exp(-h)  # underflows to 0 for alpha > ~1420
    return 1.0 / (math.sqrt(2.0) * math.sinh(h))


def image_term_magnitude(term: ImageTermParams, zeta: int) -> float:
    """Upper bound on the contribution scale of one image term.

    1/sqrt(cosh a - cosh x) on [0, a) is bounded by 1/(sqrt 2 sinh(a/2)),
    so the minus and plus pieces are bounded by that with the plus piece
    weighted by |zeta|.  Decreases like e^{-alpha_minus/2} in |n|.
    """
    return (_inv_sqrt2_sinh_half(term.alpha_minus)
            + abs(zeta) * _inv_sqrt2_sinh_half(term.alpha_plus))


@dataclass(frozen=True)
class TruncationPolicy:
    """Image-sum truncation: keep n while its bound matters.

    n = 0 and |n| <= n_floor are always kept; after that a term is kept
    while (fold weight x bound) >= tail_tol x (accumulated finite bounds).
    n_max caps the count; hitting the cap is reported, not fatal.
    """

    tail_tol: float = 1e-9
    n_max: int = 50
    n_floor: int = 2

    def __post_init__(self):
        # n_max = 0 is the n = 0-only (pure AdS-Rindler) computation
        if self.tail_tol < 0.0 or self.n_max < 0 or self.n_floor < 0:
            raise ValueError("invalid truncation policy")


@dataclass(frozen=True)
class ImageSelection:
    terms: tuple[ImageTermParams, ...]
    tail_bound: float   # magnitude-scale estimate of what was dropped
    capped: bool


def select_image_terms(r_a: float, r_b: float, params: SpacetimeParams,
                       policy: TruncationPolicy) -> ImageSelection:
    """Walk n = 0, 1, 2, ... and keep terms per the truncation policy.

    Folding n and -n (valid at Delta phi = 0) is the caller's job; the
    bounds here already carry the fold weight 2 for n >= 1.
    """
    zeta = params.zeta
    terms: list[ImageTermParams] = []
    acc = 0.0
    n = 0
    while True:
        am, ap = alpha_pm(n, r_a, r_b, params)
        if ap <= am:
            # branch pair unresolvable at this precision: an exact zero
            # for Dirichlet, otherwise report the dropped magnitude
            dropped = 0.0 if zeta == 1 else 2.0 / (math.sqrt(2.0) * math.sinh(0.5 * am))
            return ImageSelection(tuple(terms), dropped, False)
        term = ImageTermParams(n, am, ap)
        weight = 1.0 if n == 0 else 2.0
        bound = weight * image_term_magnitude(term, zeta)
        if n > 0:
            if bound == 0.0:
                return ImageSelection(tuple(terms), 0.0, False)
            if n > policy.n_floor and bound < policy.tail_tol * acc:
                return ImageSelection(tuple(terms), bound, False)
        terms.append(term)  # n = 0 is kept no matter how small its bound
        if math.isfinite(bound):
            acc += bound
        if n >= policy.n_max:
            return ImageSelection(tuple(terms), _tail_estimate(
                n + 1, bound, r_a, r_b, params), True)
        n += 1


def _tail_estimate(n_next: int, last_bound: float,
                   r_a: float, r_b: float, params: SpacetimeParams) -> float:
    """Geometric bound on the images beyond the cap, from the next term."""
    am, ap = alpha_pm(n_next, r_a, r_b, params)
    if ap <= am:
        return 0.0
    nxt = 2.0 * image_term_magnitude(ImageTermParams(n_next, am, ap), params.zeta)
    if nxt == 0.0 or not math.isfinite(nxt):
        return 0.0 if nxt == 0.0 else math.inf
    ratio = min(nxt / last_bound if last_bound > 0.0 else 0.5, 0.99)
    return nxt / (1.0 - ratio)

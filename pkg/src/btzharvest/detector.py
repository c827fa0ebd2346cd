"""Density-matrix elements of two static detectors, with oracle.

Each element is an image sum of branch integrals.  The diagonal element
of a detector at redshift gamma splits into a Fermi-Dirac piece at the
local temperature (the analytically-summed n = 0 minus branch), a
boundary-condition piece (the n = 0 plus branch), and the n >= 1 pieces
that carry the black hole.  The off-diagonal element keeps its full
n = 0 term.  Everything is reported in units of the squared dimensionless
coupling, i.e. computed at coupling 1 and scaled.

The 2D oracle at the bottom integrates the raw regulated two-point
function over both proper times and extrapolates the regulator to zero.
It shares no reduction steps with the contour route above; keep it that
way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    TWO_PI,
    HorizonError,
    SpacetimeParams,
    local_temperature,
    placement_from_thermal,
    radius_at_distance,
    redshift_from_radius,
    distance_from_horizon,
)
from .wightman import (
    TruncationPolicy,
    select_image_terms,
    sigma_epsilon_dt,
)
from .quadrature import (
    BranchIntegrand,
    ContourSpec,
    integrate_image_sum,
    multi_branch_contour,
    real_axis_branch_integral,
    fermi_dirac_response,
    richardson_extrapolate,
)

SQRT_2PI = math.sqrt(2.0 * math.pi)
_WINDOW = 8.6   # Gaussian switching support; e^{-w^2/2} ~ 9e-17 beyond


@dataclass(frozen=True)
class DetectorPair:
    """Two aligned static detectors, A strictly closer to the horizon.

    Both share the gap, the Gaussian switching width (the unit of length)
    and the coupling; switching is centered at the same coordinate time.
    """

    spacetime: SpacetimeParams
    r_a: float
    r_b: float
    omega: float
    coupling: float = 1.0

    def __post_init__(self):
        rh = self.spacetime.horizon_radius
        if not (self.r_b > self.r_a > rh):
            raise ValueError(
                f"need r_B > r_A > r_h, got r_A={self.r_a}, r_B={self.r_b}, r_h={rh}")

    @classmethod
    def from_distances(cls, spacetime: SpacetimeParams, d_a: float, d_ab: float,
                       omega: float, coupling: float = 1.0) -> "DetectorPair":
        if d_a <= 0.0 or d_ab <= 0.0:
            raise ValueError("need d_A > 0 and d_AB > 0")
        r_a = radius_at_distance(d_a, spacetime)
        r_b = radius_at_distance(d_a + d_ab, spacetime)
        return cls(spacetime, r_a, r_b, omega, coupling)

    @classmethod
    def from_thermal(cls, ads_length: float, temperature: float, gamma: float,
                     d_ab: float, omega: float, zeta: int = 1,
                     coupling: float = 1.0) -> "DetectorPair":
        """(T_A, gamma_A) placement; note this fixes the hole mass too."""
        rh, d_a = placement_from_thermal(temperature, gamma, ads_length)
        spacetime = SpacetimeParams(ads_length, (rh / ads_length) ** 2, zeta)
        return cls.from_distances(spacetime, d_a, d_ab, omega, coupling)

    @property
    def gamma_a(self) -> float:
        return redshift_from_radius(self.r_a, self.spacetime)

    @property
    def gamma_b(self) -> float:
        return redshift_from_radius(self.r_b, self.spacetime)

    @property
    def d_a(self) -> float:
        return distance_from_horizon(self.r_a, self.spacetime)

    @property
    def d_b(self) -> float:
        return distance_from_horizon(self.r_b, self.spacetime)

    @property
    def d_ab(self) -> float:
        return self.d_b - self.d_a

    @property
    def t_a(self) -> float:
        return local_temperature(self.r_a, self.spacetime)

    @property
    def t_b(self) -> float:
        return local_temperature(self.r_b, self.spacetime)


@dataclass(frozen=True)
class ElementResult:
    """One matrix element with its image-term breakdown.

    value and the per-term entries are real (the reduced expressions take
    the real part); n0 is the AdS-Rindler part, the rest is the black
    hole's.  err combines quadrature error and the truncation tail.
    """

    value: float
    n0: float
    err: float
    tail: float
    terms: tuple[tuple[int, float], ...]
    capped: bool

    @property
    def btz(self) -> float:
        return self.value - self.n0

    @property
    def n_terms(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class MatrixElements:
    aa: ElementResult
    bb: ElementResult
    ab: ElementResult

    @property
    def L_AA(self) -> float:
        return self.aa.value

    @property
    def L_BB(self) -> float:
        return self.bb.value

    @property
    def L_AB(self) -> complex:
        return complex(self.ab.value)

    def cauchy_schwarz_slack(self) -> float:
        return self.L_AA * self.L_BB - abs(self.L_AB) ** 2

    def cauchy_schwarz_budget(self) -> float:
        # |values| here: a noise-level negative diagonal must still
        # produce a nonnegative budget
        return (abs(self.L_AA) * self.bb.err + abs(self.L_BB) * self.aa.err
                + 2.0 * abs(self.L_AB) * self.ab.err)


def _pair_constants(gamma_a: float, gamma_b: float, rh: float, length: float,
                    omega: float) -> tuple[float, float, float]:
    """Gaussian coefficient, phase coefficient, and prefactor K-hat."""
    s = gamma_a**2 + gamma_b**2
    a = gamma_a**2 * gamma_b**2 * length**4 / (2.0 * s * rh**2)
    beta = gamma_a * gamma_b * (gamma_a + gamma_b) / s * length**2 * omega / rh
    khat = (math.sqrt(gamma_a * gamma_b) / (4.0 * math.sqrt(math.pi) * math.sqrt(s))
            * math.exp(-omega**2 * (gamma_a - gamma_b) ** 2 / (2.0 * s)))
    return a, beta, khat


def compute_L_AB(pair: DetectorPair, policy: TruncationPolicy | None = None,
                 spec: ContourSpec | None = None) -> ElementResult:
    """Off-diagonal element, real by the aligned equal-time reduction."""
    policy = policy or TruncationPolicy()
    spec = spec or ContourSpec()
    params = pair.spacetime
    rh, length = params.horizon_radius, params.ads_length
    a, beta, khat = _pair_constants(pair.gamma_a, pair.gamma_b, rh, length, pair.omega)
    scale = 2.0 * khat * pair.coupling**2

    sel = select_image_terms(pair.r_a, pair.r_b, params, policy)
    terms = [(1.0 if t.n == 0 else 2.0,
              BranchIntegrand(a, beta, t.alpha_minus, t.alpha_plus, params.zeta))
             for t in sel.terms]
    per_term, total, qerr = integrate_image_sum(terms, spec)

    tail = scale * sel.tail_bound * 0.5 * math.sqrt(math.pi / a)
    value = scale * total.real
    n0 = scale * per_term[0].real if len(per_term) else 0.0
    table = tuple((t.n, scale * per_term[i].real) for i, t in enumerate(sel.terms))
    return ElementResult(value, n0, scale * qerr + tail, tail, table, sel.capped)


def compute_L_DD(spacetime: SpacetimeParams, r_d: float, omega: float,
                 policy: TruncationPolicy | None = None,
                 spec: ContourSpec | None = None,
                 coupling: float = 1.0) -> ElementResult:
    """Diagonal element of the detector at radius r_d, any sign of gap.

    The n = 0 minus branch is the Fermi-Dirac convolution at the local
    temperature; the remaining branch integrals go through the contour
    (gap >= 0) or the real-axis split (gap < 0).
    """
    policy = policy or TruncationPolicy()
    spec = spec or ContourSpec()
    rh, length = spacetime.horizon_radius, spacetime.ads_length
    gamma = redshift_from_radius(r_d, spacetime)
    if gamma == 0.0:
        raise HorizonError("diagonal element diverges at r = r_h")
    t_loc = local_temperature(r_d, spacetime)
    a, beta, _ = _pair_constants(gamma, gamma, rh, length, omega)
    p0 = 1.0 / (2.0 * SQRT_2PI)
    zeta = spacetime.zeta
    c2 = coupling**2

    fd = fermi_dirac_response(omega, t_loc) * c2
    sel = select_image_terms(r_d, r_d, spacetime, policy)

    alphas, coeffs, owners = [], [], []
    for t in sel.terms:
        if t.n == 0:
            if zeta != 0:
                alphas.append(t.alpha_plus)
                coeffs.append(-float(zeta))
                owners.append(0)
        else:
            alphas.append(t.alpha_minus)
            coeffs.append(2.0)
            owners.append(t.n)
            if zeta != 0:
                alphas.append(t.alpha_plus)
                coeffs.append(-2.0 * zeta)
                owners.append(t.n)

    if alphas:
        if omega >= 0.0:
            per_alpha, total, qerr = multi_branch_contour(a, beta, alphas, coeffs, spec)
            re_parts = (np.asarray(coeffs) * per_alpha).real
        else:
            re_parts, errs = [], []
            for al, co in zip(alphas, coeffs):
                v, e = real_axis_branch_integral(a, beta, al, spec)
                re_parts.append(co * v)
                errs.append(abs(co) * e)
            re_parts = np.asarray(re_parts)
            qerr = float(sum(errs))
    else:
        re_parts, qerr = np.zeros(0), 0.0

    per_n: dict[int, float] = {t.n: 0.0 for t in sel.terms}
    for val, n in zip(re_parts, owners):
        per_n[n] += p0 * c2 * float(val)
    per_n[0] = per_n.get(0, 0.0) + fd

    tail = p0 * c2 * sel.tail_bound * 0.5 * math.sqrt(math.pi / a)
    table = tuple((t.n, per_n[t.n]) for t in sel.terms)
    value = float(sum(per_n.values()))
    err = p0 * c2 * qerr + tail + 1e-13 * c2
    return ElementResult(value, per_n[0], err, tail, table, sel.capped)


def compute_matrix_elements(pair: DetectorPair,
                            policy: TruncationPolicy | None = None,
                            spec: ContourSpec | None = None) -> MatrixElements:
    aa = compute_L_DD(pair.spacetime, pair.r_a, pair.omega, policy, spec, pair.coupling)
    bb = compute_L_DD(pair.spacetime, pair.r_b, pair.omega, policy, spec, pair.coupling)
    ab = compute_L_AB(pair, policy, spec)
    return MatrixElements(aa, bb, ab)


# ----------------------------------------------------------------------
# brute-force oracle: double proper-time integral of the regulated
# two-point function, extrapolated in the regulator

def _ridge_hints(r_a: float, r_b: float, params: SpacetimeParams,
                 n_max: int) -> np.ndarray:
    """Branch abscissae from the raw arccosh arguments (oracle-local)."""
    rh, length = params.horizon_radius, params.ads_length
    ga = redshift_from_radius(r_a, params)
    gb = redshift_from_radius(r_b, params)
    pref = rh**2 / (length**2 * ga * gb)
    out = []
    for n in range(n_max + 1):
        y = (rh / length) * 2.0 * math.pi * n
        if y > 690.0:       # ridge far outside any switching window
            break
        base = (r_a * r_b / rh**2) * math.cosh(y)
        for sign in (-1.0, 1.0):
            arg = pref * (base + sign)
            if arg >= 1.0 and math.isfinite(arg):
                out.append(math.acosh(arg))
    return np.unique(np.asarray(out))


def _inner_edges(centers: np.ndarray, eps_width: float, window: float) -> np.ndarray:
    edges = [np.linspace(-window, window, 25)]
    for c in centers:
        if abs(c) > window:
            continue
        offs = eps_width * 2.0 ** np.arange(0, 40)
        offs = offs[offs < 2.2 * window]
        pts = np.concatenate([[c], c + offs, c - offs, [c + eps_width / 2, c - eps_width / 2]])
        edges.append(pts[(pts > -window) & (pts < window)])
    merged = np.unique(np.concatenate(edges + [[-window, window]]))
    keep = np.concatenate([[True], np.diff(merged) > eps_width / 8.0])
    merged = merged[keep]
    if merged[-1] != window:
        merged = np.append(merged, window)
    return merged


def _oracle_once(params: SpacetimeParams, r_a: float, r_b: float, omega: float,
                 eps: float, n_max: int, dphi: float,
                 rows: int = 14, gl: int = 12) -> complex:
    """One regulated double integral at fixed eps."""
    rh, length = params.horizon_radius, params.ads_length
    ga = redshift_from_radius(r_a, params)
    gb = redshift_from_radius(r_b, params)
    zeta = params.zeta
    k = rh / length**2
    hints = _ridge_hints(r_a, r_b, params, n_max)
    prefactor = 1.0 / (4.0 * math.pi * math.sqrt(2.0) * length)

    xg, wg = np.polynomial.legendre.leggauss(gl)
    b_edges = np.linspace(-_WINDOW, _WINDOW, rows + 1)
    bh = 0.5 * np.diff(b_edges)
    bm = 0.5 * (b_edges[:-1] + b_edges[1:])
    tau_b = (bm[:, None] + bh[:, None] * xg[None, :]).ravel()
    w_b = (bh[:, None] * wg[None, :]).ravel()

    eps_width = max(eps * ga * length**2 / rh / 3.0, 1e-9)
    # raw cosh overflows past ~710; such images are < e^{-345} anyway
    ns = np.arange(-n_max, n_max + 1)
    ns = ns[(rh / length) * TWO_PI * np.abs(ns) <= 690.0]
    total = 0.0 + 0.0j
    for tb, wb in zip(tau_b, w_b):
        base = ga * tb / gb
        centers = np.concatenate([base + ga * hints / k, base - ga * hints / k, [base]])
        edges = _inner_edges(np.unique(centers), eps_width, _WINDOW)
        h = 0.5 * np.diff(edges)
        m = 0.5 * (edges[:-1] + edges[1:])
        ta = (m[:, None] + h[:, None] * xg[None, :]).ravel()
        wa = (h[:, None] * wg[None, :]).ravel()
        dt = ta / ga - tb / gb
        w_sum = np.zeros_like(ta, dtype=complex)
        for n in ns:
            sig = sigma_epsilon_dt(r_a, r_b, dt, int(n), params, epsilon=eps, dphi=dphi)
            w_sum += 1.0 / np.sqrt(sig)
            if zeta != 0:
                w_sum -= zeta / np.sqrt(sig + 2.0)
        row = np.sum(wa * np.exp(-0.5 * ta * ta - 1j * omega * ta) * w_sum)
        total += wb * math.exp(-0.5 * tb * tb) * np.exp(1j * omega * tb) * row
    return prefactor * total


def oracle_L_AB_2d(pair: DetectorPair,
                   epsilons: tuple[float, ...] = (1.6e-3, 8e-4, 4e-4, 2e-4, 1e-4),
                   n_max: int = 3, dphi: float = 0.0,
                   powers: tuple[float, ...] = (0.0, 1.0, 1.5, 2.0, 2.5),
                   swap: bool = False) -> tuple[complex, float]:
    """Regulator-extrapolated raw double integral of the pair element.

    Test-side reference only; O(seconds) per call.  Returns (value,
    extrapolation spread).  swap exchanges the roles of the detectors,
    which must conjugate the result.
    """
    params = pair.spacetime
    r_a, r_b = (pair.r_b, pair.r_a) if swap else (pair.r_a, pair.r_b)
    vals = [_oracle_once(params, r_a, r_b, pair.omega, e, n_max, dphi)
            for e in epsilons]
    value, spread = richardson_extrapolate(epsilons, vals, powers)
    return value * pair.coupling**2, spread


def oracle_L_DD_2d(spacetime: SpacetimeParams, r_d: float, omega: float,
                   epsilons: tuple[float, ...] = (1.6e-3, 8e-4, 4e-4, 2e-4, 1e-4),
                   n_max: int = 3,
                   powers: tuple[float, ...] = (0.0, 1.0, 1.5, 2.0, 2.5),
                   coupling: float = 1.0) -> tuple[complex, float]:
    """Diagonal-element counterpart of oracle_L_AB_2d."""
    vals = [_oracle_once(spacetime, r_d, r_d, omega, e, n_max, 0.0)
            for e in epsilons]
    value, spread = richardson_extrapolate(epsilons, vals, powers)
    return value * coupling**2, spread

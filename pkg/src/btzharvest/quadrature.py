"""Quadrature engines for the detector matrix elements.

Every branch integral computed here has the shape

    I(alpha) = int_C dz e^{-a z^2} e^{-i beta z} (cosh alpha - cosh z)^{-1/2}

with a > 0, a branch point on the positive real axis at z = alpha, and the
time regulator selecting the boundary value from below the axis.  For
beta >= 0 the contour C is the straight segment from 0 to R + i eta with
eta in (-pi, 0).  Two observations make that segment uniformly safe:

* Im cosh z = sinh(Re z) sin(Im z) < 0 on the open strip -pi < Im z < 0,
  so cosh(alpha) - cosh(z) stays in the upper half plane there and the
  principal square root IS the analytic continuation from the real
  segment [0, alpha).  No branch tracking is needed (a runtime phase
  probe guards the assumption anyway).
* |e^{-a z^2}| = e^{-a(x^2-y^2)} <= e^{a eta^2} and |e^{-i beta z}| =
  e^{beta Im z} <= 1 on the segment, so the endpoint R controls the
  truncation error for any a.

For beta < 0 (de-excitation) the phase factor grows like e^{|beta eta|}
below the axis and no shifted contour inside the analyticity strip damps
it, so those integrals are taken on the real axis instead: the boundary
value splits exactly into

    Re I = int_0^alpha cos(beta x) e^{-a x^2} (cosh alpha - cosh x)^{-1/2} dx
         - int_alpha^inf sin(beta x) e^{-a x^2} (cosh x - cosh alpha)^{-1/2} dx

and the substitutions x = alpha -+ v^2 absorb both inverse-square-root
endpoints into smooth integrands.  The split is valid for every beta and
doubles as a cross-check on the contour route.

The driver is a panel-adaptive Gauss-Kronrod 15(7) rule evaluated in
batches, integrating a whole family of alphas on one shared panel set so
that an image sum costs barely more than a single term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import expit


class ConvergenceError(RuntimeError):
    """Adaptive subdivision hit its limit before reaching tolerance."""


class ExtrapolationError(RuntimeError):
    """A regulator-limit extrapolation failed to contract."""


# 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
_XK = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870,
])
_GAUSS_IDX = np.arange(1, 15, 2)  # Gauss-7 nodes sit at the odd Kronrod slots


@dataclass(frozen=True)
class ContourSpec:
    """Contour and tolerance settings for the shifted-segment integrals."""

    eta: float = -math.pi / 2
    r_max: float | None = None  # None: choose from (a, alphas, tolerances)
    rel_tol: float = 1e-9
    abs_tol: float = 1e-13
    max_subdivisions: int = 4000

    def __post_init__(self):
        if not (-math.pi < self.eta < 0.0):
            raise ValueError(f"eta must lie strictly in (-pi, 0), got {self.eta}")
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class BranchIntegrand:
    """One image term's integrand data: e^{-az^2-i beta z} branch pair."""

    a: float
    beta: float
    alpha_minus: float
    alpha_plus: float
    zeta: int

    def __post_init__(self):
        if not self.a > 0.0:
            raise ValueError(f"gaussian coefficient a must be > 0, got {self.a}")
        if not (self.alpha_plus > self.alpha_minus >= 0.0):
            raise ValueError("need alpha_plus > alpha_minus >= 0")


def _adaptive_panels(f: Callable[[np.ndarray], np.ndarray],
                     edges: np.ndarray,
                     coeffs: np.ndarray,
                     rel_tol: float,
                     abs_tol: float,
                     max_panels: int):
    """Shared-panel adaptive GK15 for a family of integrands.

    f maps sample points (m,) to values (A, m); coeffs (A,) weights the
    family members into the scalar whose error is controlled.  Returns
    (per_member (A,), total, err).  Panels are bisected in batches until
    the summed Kronrod-Gauss discrepancy of the weighted total drops
    below max(abs_tol, rel_tol * |total|).
    """
    lo = np.asarray(edges[:-1], dtype=float)
    hi = np.asarray(edges[1:], dtype=float)

    def evaluate(lo_arr, hi_arr):
        half = 0.5 * (hi_arr - lo_arr)
        mid = 0.5 * (hi_arr + lo_arr)
        x = mid[:, None] + half[:, None] * _XK[None, :]   # (P, 15)
        vals = f(x.ravel())                                # (A, P*15)
        vals = vals.reshape(vals.shape[0], x.shape[0], 15)
        ik = np.einsum("apk,k->pa", vals, _WK) * half[:, None]
        wsum = coeffs @ vals.reshape(vals.shape[0], -1)
        wsum = wsum.reshape(x.shape[0], 15)
        sk = (wsum @ _WK) * half
        sg = (wsum[:, _GAUSS_IDX] @ _WG) * half
        err = np.abs(sk - sg)
        # phase-continuity probe: a principal-branch jump between adjacent
        # nodes marks a cut crossing, which must force subdivision.  Nodes
        # where the family members cancel to rounding noise carry random
        # phases and must not trigger it (far tail, zeta = +1 difference).
        phase = np.angle(wsum)
        jump = np.abs(np.diff(phase, axis=1))
        jump = np.minimum(jump, 2.0 * math.pi - jump)
        floor = 1e-12 * np.abs(vals).max(axis=0).reshape(x.shape[0], 15)
        solid = np.abs(wsum) > floor
        pair_bad = (jump > 0.5 * math.pi) & solid[:, 1:] & solid[:, :-1]
        bad = pair_bad.any(axis=1) & (np.abs(sk) > 0)
        err = np.where(bad, np.inf, err)
        return ik, err

    ik, perr = evaluate(lo, hi)
    while True:
        total = coeffs @ ik.sum(axis=0)
        err_total = perr.sum()
        tol = max(abs_tol, rel_tol * abs(total))
        if err_total <= tol:
            break
        if len(lo) >= max_panels:
            raise ConvergenceError(
                f"branch integral: {len(lo)} panels, error {err_total:.3e} > tol {tol:.3e}")
        # split every panel holding more than its share of the excess
        cut = max(tol / (2 * len(lo)), np.max(perr) * 0.25)
        split = perr >= cut
        if not split.any():
            split[np.argmax(perr)] = True
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[~split], lo[split], mid])
        new_hi = np.concatenate([hi[~split], mid, hi[split]])
        keep_ik, keep_err = ik[~split], perr[~split]
        add_ik, add_err = evaluate(new_lo[len(keep_ik):], new_hi[len(keep_ik):])
        lo, hi = new_lo, new_hi
        ik = np.concatenate([keep_ik, add_ik])
        perr = np.concatenate([keep_err, add_err])

    # deterministic accumulation order regardless of split history
    order = np.argsort(lo, kind="stable")
    per_member = ik[order].sum(axis=0)
    total = coeffs @ per_member
    return per_member, total, float(perr.sum())


def _auto_r_max(a: float, eta: float, abs_tol: float, alpha_reach: float) -> float:
    """Endpoint radius: Gaussian or e^{-x/2} branch decay past alpha_reach."""
    level = max(30.0, -math.log(abs_tol)) + a * eta * eta + math.log(2.0)
    x = (-0.5 + math.sqrt(0.25 + 4.0 * a * level)) / (2.0 * a)
    return max(x + min(alpha_reach, 1000.0), 2.0 * abs(eta))


def multi_branch_contour(a: float, beta: float,
                         alphas: Sequence[float], coeffs: Sequence[float],
                         spec: ContourSpec):
    """Shared-contour evaluation of I(alpha) for a family of alphas.

    Returns (per_alpha complex array, weighted total, error estimate).
    Valid for beta >= 0; the segment runs from 0 to R + i eta.
    """
    alphas = np.asarray(alphas, dtype=float)
    coeffs = np.asarray(coeffs, dtype=float)
    if alphas.size == 0:
        return np.zeros(0, dtype=complex), 0.0 + 0.0j, 0.0
    if np.any(alphas <= 0.0):
        raise ValueError("contour route needs alpha > 0 (the alpha = 0 "
                         "image is handled in closed form upstream)")
    if np.any(alphas > 690.0):
        raise ValueError("cosh(alpha) overflows; drop images this deep upstream")
    if beta < 0.0:
        raise ValueError("beta < 0 is evaluated on the real axis, not the contour")

    eta = spec.eta
    reach = float(alphas.max())
    r = spec.r_max if spec.r_max is not None else _auto_r_max(a, eta, spec.abs_tol, reach)
    slope = 1.0 + 1j * eta / r
    cosh_a = np.cosh(alphas)[:, None]

    def f(x: np.ndarray) -> np.ndarray:
        z = x * slope
        w = cosh_a - np.cosh(z)[None, :]
        return (np.exp(-a * z * z - 1j * beta * z) * slope) / np.sqrt(w)

    interior = alphas[alphas < r]
    base = np.linspace(0.0, r, max(8, int(r / max(1.0, r / 24)) + 1))
    edges = np.unique(np.concatenate([base, interior, [0.0, r]]))
    per_alpha, total, err = _adaptive_panels(
        f, edges, coeffs, spec.rel_tol, spec.abs_tol, spec.max_subdivisions)
    return per_alpha, total, err


def contour_integral(f: BranchIntegrand, spec: ContourSpec):
    """Single image term through the shifted contour.

    Returns (complex value, error estimate); the caller takes Re.
    """
    alphas = [f.alpha_minus, f.alpha_plus]
    coeffs = [1.0, -float(f.zeta)]
    per_alpha, total, err = multi_branch_contour(f.a, f.beta, alphas, coeffs, spec)
    return total, err


def integrate_image_sum(terms: Sequence[tuple[float, BranchIntegrand]],
                        spec: ContourSpec):
    """Weighted sum of image terms sharing one (a, beta, zeta) family.

    terms: (fold_weight, BranchIntegrand) in |n| order.  Returns
    (per_term complex array, total, error estimate).  All terms ride one
    shared panel set, so the sum costs about as much as one term.
    """
    if not terms:
        return np.zeros(0, dtype=complex), 0.0 + 0.0j, 0.0
    a = terms[0][1].a
    beta = terms[0][1].beta
    zeta = terms[0][1].zeta
    for _, t in terms:
        if (t.a, t.beta, t.zeta) != (a, beta, zeta):
            raise ValueError("image terms must share (a, beta, zeta)")
    alphas, coeffs = [], []
    for w, t in terms:
        alphas.append(t.alpha_minus)
        coeffs.append(w)
        if zeta != 0:
            alphas.append(t.alpha_plus)
            coeffs.append(-w * zeta)
    per_alpha, total, err = multi_branch_contour(a, beta, alphas, coeffs, spec)
    stride = 2 if zeta != 0 else 1
    per_term = np.array([
        coeffs[i * stride] * per_alpha[i * stride]
        + (coeffs[i * stride + 1] * per_alpha[i * stride + 1] if zeta != 0 else 0.0)
        for i in range(len(terms))
    ])
    return per_term, total, err


def _sinhc_half_sq(v: np.ndarray) -> np.ndarray:
    # sinh(v^2/2)/(v^2/2), stable at v = 0
    w = 0.5 * v * v
    out = np.ones_like(w)
    small = w < 1e-4
    out[small] = 1.0 + w[small] ** 2 / 6.0
    ws = w[~small]
    out[~small] = np.sinh(ws) / ws
    return out


def real_axis_branch_integral(a: float, beta: float, alpha: float,
                              spec: ContourSpec) -> tuple[float, float]:
    """Re I(alpha) on the real axis via the exact cos/sin split.

    Works for any sign of beta; this is the de-excitation route.  Returns
    (value, error estimate).
    """
    if not 0.0 < alpha <= 690.0:
        raise ValueError(f"real-axis route needs 0 < alpha <= 690, got {alpha}")
    level = max(30.0, -math.log(spec.abs_tol))
    x_end = (-0.5 + math.sqrt(0.25 + 4.0 * a * (level + 0.5 * alpha + math.log(2.0)))) / (2.0 * a)
    x_end = max(x_end, alpha + 1.0)

    def below(v: np.ndarray) -> np.ndarray:
        x = alpha - v * v
        kern = 2.0 / np.sqrt(np.sinh(alpha - 0.5 * v * v) * _sinhc_half_sq(v))
        return (np.cos(beta * x) * np.exp(-a * x * x) * kern)[None, :]

    def above(v: np.ndarray) -> np.ndarray:
        x = alpha + v * v
        kern = 2.0 / np.sqrt(np.sinh(alpha + 0.5 * v * v) * _sinhc_half_sq(v))
        return (np.sin(beta * x) * np.exp(-a * x * x) * kern)[None, :]

    one = np.array([1.0])
    v1 = math.sqrt(alpha)
    edges1 = np.linspace(0.0, v1, 24)
    i1, tot1, e1 = _adaptive_panels(below, edges1, one,
                                    spec.rel_tol, spec.abs_tol, spec.max_subdivisions)
    v2 = math.sqrt(max(x_end - alpha, 1e-12))
    edges2 = np.linspace(0.0, v2, 24)
    i2, tot2, e2 = _adaptive_panels(above, edges2, one,
                                    spec.rel_tol, spec.abs_tol, spec.max_subdivisions)
    return float(tot1.real - tot2.real), float(e1 + e2)


def fermi_dirac_response(omega: float, temperature: float) -> float:
    """(1/2) integral of e^{-(x-omega)^2} / (e^{x/temperature} + 1) over x.

    The n = 0 thermal piece of a single-detector element, in units where
    the Gaussian width is 1.  Positive, bounded by sqrt(pi)/2.
    """
    if not temperature > 0.0:
        raise ValueError(f"temperature must be > 0, got {temperature}")

    def integrand(x: float) -> float:
        return math.exp(-((x - omega) ** 2)) * expit(-x / temperature)

    lo, hi = omega - 9.3, omega + 9.3
    points = [0.0] if lo < 0.0 < hi else None
    val, _ = quad(integrand, lo, hi, epsabs=1e-14, epsrel=1e-12,
                  limit=300, points=points)
    return 0.5 * val


def richardson_extrapolate(eps: Sequence[float], values: Sequence[complex],
                           powers: Sequence[float] = (0.0, 1.0, 1.5, 2.0, 2.5)):
    """Fit values(eps) = sum_j c_j eps^{p_j} and return the eps -> 0 limit.

    Uses as many basis powers as there are samples.  Raises
    ExtrapolationError when successive leading-order estimates do not
    contract (regulator schedule too coarse or integrand under-resolved).
    """
    eps = np.asarray(eps, dtype=float)
    values = np.asarray(values, dtype=complex)
    if eps.size < 2:
        raise ValueError("need at least two regulator values")
    if np.any(np.diff(eps) >= 0):
        raise ValueError("regulator schedule must be strictly decreasing")
    k = min(eps.size, len(powers))
    estimates = []
    for m in range(2, k + 1):
        e, v = eps[-m:], values[-m:]
        vand = e[:, None] ** np.asarray(powers[:m])[None, :]
        coef = np.linalg.solve(vand, v)
        estimates.append(coef[0])
    if len(estimates) >= 2:
        steps = np.abs(np.diff(estimates))
        scale = max(abs(estimates[-1]), 1e-300)
        if steps[-1] > 2.0 * steps[0] and steps[-1] > 1e-6 * scale:
            raise ExtrapolationError(
                f"regulator extrapolation diverging: steps {steps}")
    spread = abs(estimates[-1] - estimates[-2]) if len(estimates) >= 2 else math.inf
    return estimates[-1], spread

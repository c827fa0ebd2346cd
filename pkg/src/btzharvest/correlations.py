"""Mutual information and anti-Hawking diagnostics from matrix elements."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .detector import MatrixElements


class NegativeResultError(RuntimeError):
    """A provably nonnegative quantity came out negative beyond its error
    budget; the inputs are inconsistent (upstream bug, not a physics result)."""


class InsufficientGridError(ValueError):
    """A derivative-based diagnostic needs at least four grid points."""


@dataclass(frozen=True)
class CorrelationResult:
    l_plus: float
    l_minus: float
    mutual_information: float
    err_mutual_information: float
    t_edr: float | None = None
    weak_anti_hawking: bool | None = None
    strong_anti_hawking: bool | None = None


def l_plus_minus(l_aa: float, l_bb: float, l_ab: complex) -> tuple[float, float]:
    """Eigenvalue pair: trace-exact plus branch, determinant-stable minus.

    l_plus * l_minus = l_aa * l_bb - |l_ab|^2 holds exactly, which keeps
    l_minus accurate when the discriminant nearly cancels the trace.
    """
    s = l_aa + l_bb
    disc = math.hypot(l_aa - l_bb, 2.0 * abs(l_ab))
    l_plus = 0.5 * (s + disc)
    det = l_aa * l_bb - abs(l_ab) ** 2
    l_minus = det / l_plus if l_plus > 0.0 else 0.0
    return l_plus, l_minus


def mutual_information(elements: MatrixElements) -> float:
    """O(coupling^2) mutual information, convention 0 ln 0 = 0.

    Evaluated at unit coupling; callers scale.  Raises
    NegativeResultError when the result is negative beyond the combined
    element error budget (mathematically it cannot be).
    """
    l_aa, l_bb, l_ab = elements.L_AA, elements.L_BB, elements.L_AB
    if l_aa < -elements.aa.err or l_bb < -elements.bb.err:
        raise NegativeResultError(f"negative diagonal elements: {l_aa}, {l_bb}")
    if l_aa <= 0.0 or l_bb <= 0.0:
        # a response at or below quadrature noise resolves no correlations
        return 0.0

    det = l_aa * l_bb - abs(l_ab) ** 2
    if det < 0.0:
        if det < -elements.cauchy_schwarz_budget():
            raise NegativeResultError(
                f"Cauchy-Schwarz violated beyond budget: det = {det}")
        det = 0.0
    s = l_aa + l_bb
    disc = math.hypot(l_aa - l_bb, 2.0 * abs(l_ab))
    l_plus = 0.5 * (s + disc)
    l_minus = det / l_plus if l_plus > 0.0 else 0.0

    info = float(xlogy(l_plus, l_plus) + xlogy(l_minus, l_minus)
                 - xlogy(l_aa, l_aa) - xlogy(l_bb, l_bb))
    if info < 0.0:
        budget = mutual_information_error(elements)
        if info < -max(budget, 64.0 * np.finfo(float).eps * max(s, 1.0)):
            raise NegativeResultError(f"I_AB = {info} beyond budget {budget}")
        info = 0.0
    return info


def mutual_information_error(elements: MatrixElements) -> float:
    """Linearized error budget for the mutual information."""
    l_aa, l_bb = elements.L_AA, elements.L_BB
    ab = abs(elements.L_AB)
    l_plus, l_minus = l_plus_minus(l_aa, l_bb, ab)
    if l_plus <= 0.0:
        # all elements at noise level: |x ln x| <= e(|ln e| + 1) for |x| <= e
        def bound(e: float) -> float:
            return e * (abs(math.log(e)) + 1.0) if e > 0.0 else 0.0
        return 2.0 * (bound(elements.aa.err) + bound(elements.bb.err)
                      + bound(elements.ab.err))
    disc = max(l_plus - l_minus, 1e-300)

    def dlog(x: float) -> float:
        return abs(math.log(x)) + 1.0 if x > 0.0 else 1.0

    # dI/dab through both eigenvalues
    d_ab = 2.0 * ab / disc * (dlog(l_plus) + dlog(l_minus))
    d_aa = dlog(l_aa) + dlog(l_plus) + dlog(l_minus)
    d_bb = dlog(l_bb) + dlog(l_plus) + dlog(l_minus)
    return (d_aa * elements.aa.err + d_bb * elements.bb.err
            + d_ab * elements.ab.err)


def evaluate_correlations(elements: MatrixElements,
                          t_edr: float | None = None) -> CorrelationResult:
    l_plus, l_minus = l_plus_minus(elements.L_AA, elements.L_BB, elements.L_AB)
    info = mutual_information(elements)
    return CorrelationResult(l_plus, l_minus, info,
                             mutual_information_error(elements), t_edr)


def edr_temperature(f_plus: float, f_minus: float, omega: float) -> float:
    """Temperature from the excitation-to-de-excitation ratio.

    -omega / ln(f_plus / f_minus); exact detailed balance
    f_plus/f_minus = e^{-omega/T} returns T itself.
    """
    if f_plus <= 0.0 or f_minus <= 0.0:
        raise ValueError(f"responses must be positive, got {f_plus}, {f_minus}")
    log_ratio = math.log(f_plus) - math.log(f_minus)
    if log_ratio == 0.0:
        raise ValueError("excitation ratio is exactly 1; temperature undefined")
    return -omega / log_ratio


def _negative_slope_intervals(t_grid, values, errors=None):
    t = np.asarray(t_grid, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.size < 4:
        raise InsufficientGridError(f"need >= 4 grid points, got {t.size}")
    if t.size != v.size:
        raise ValueError("grid and values must have equal length")
    if np.any(np.diff(t) <= 0.0):
        raise ValueError("temperature grid must be strictly increasing")
    err = np.zeros_like(v) if errors is None else np.asarray(errors, dtype=float)

    x = np.log(t)
    slope = (v[2:] - v[:-2]) / (x[2:] - x[:-2])
    slope_err = (err[2:] + err[:-2]) / (x[2:] - x[:-2])
    negative = slope < -slope_err

    intervals = []
    i = 0
    idx = np.arange(1, t.size - 1)
    while i < negative.size:
        if negative[i]:
            j = i
            while j + 1 < negative.size and negative[j + 1]:
                j += 1
            intervals.append((float(t[idx[i]]), float(t[idx[j]])))
            i = j + 1
        else:
            i += 1
    return bool(intervals), intervals


def anti_hawking_weak(t_kms_grid, response_values, errors=None):
    """Detect dF/dT < 0 on a sampled response curve at fixed gap, gamma.

    Central differences on the log-spaced grid; a point counts only when
    the slope is negative beyond the propagated error.  Returns
    (flag, list of (T_lo, T_hi) intervals).
    """
    return _negative_slope_intervals(t_kms_grid, response_values, errors)


def anti_hawking_strong(t_kms_grid, t_edr_values, errors=None):
    """Same detection applied to the sampled T_EDR(T_KMS) curve."""
    return _negative_slope_intervals(t_kms_grid, t_edr_values, errors)

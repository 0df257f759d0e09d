"""Jacobi and Romanovski polynomial evaluation plus quadrature helpers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate


class PolynomialError(ValueError):
    """base error for polynomial evaluation failures."""


class DegenerateRecurrenceError(PolynomialError):
    """three-term recurrence hit a vanishing leading coefficient."""


@dataclass(frozen=True)
class JacobiParams:
    """degree and the two exponent parameters; either may be complex."""

    degree: int
    alpha: complex
    beta: complex

    def __post_init__(self):
        if self.degree < 0:
            raise PolynomialError(f"degree must be nonnegative, got {self.degree}")


@dataclass(frozen=True)
class RomanovskiParams:
    """degree and the two real parameters of the finite Romanovski family."""

    degree: int
    alpha: float
    beta: float

    def __post_init__(self):
        if self.degree < 0:
            raise PolynomialError(f"degree must be nonnegative, got {self.degree}")


def jacobi_eval(params: JacobiParams, x):
    """evaluate P_n^(alpha,beta) at x by the standard three-term recurrence.

    x may be a scalar or array, real or complex; parameters may be complex.
    Raises DegenerateRecurrenceError when alpha+beta is a negative integer
    that zeroes a recurrence denominator for the requested degree.
    """
    n, a, b = params.degree, params.alpha, params.beta
    xi = np.asarray(x)
    is_complex = np.iscomplexobj(xi) or isinstance(a, complex) or isinstance(b, complex)
    dtype = complex if is_complex else float
    xi = xi.astype(dtype)
    p_prev = np.ones_like(xi)
    if n == 0:
        return _unwrap(p_prev, x)
    p_cur = (a + 1) + (a + b + 2) * (xi - 1) / 2
    for k in range(2, n + 1):
        if abs(k + a + b) < 1e-12 or abs(2 * k + a + b - 2) < 1e-12:
            raise DegenerateRecurrenceError(
                f"recurrence degenerates at degree {k} for parameters "
                f"alpha={a}, beta={b} (requested degree {n})"
            )
        c1 = 2 * k * (k + a + b) * (2 * k + a + b - 2)
        c2 = (2 * k + a + b - 1) * (a * a - b * b)
        c3 = (2 * k + a + b - 1) * (2 * k + a + b) * (2 * k + a + b - 2)
        c4 = 2 * (k + a - 1) * (k + b - 1) * (2 * k + a + b)
        p_cur, p_prev = ((c2 + c3 * xi) * p_cur - c4 * p_prev) / c1, p_cur
    return _unwrap(p_cur, x)


def romanovski_eval(params: RomanovskiParams, x):
    """evaluate the degree-n Romanovski polynomial R_n^(alpha,beta) at real x.

    Computed through the complex-parameter Jacobi identity
    R_n^(a,b)(x) = (-i)^n P_n^(1-b-ia/2, 1-b+ia/2)(ix); the result must come
    out real, and a residual imaginary part above 1e-10 of the magnitude is
    reported as an error instead of being discarded.
    """
    n, a, b = params.degree, params.alpha, params.beta
    jp = JacobiParams(n, complex(1 - b, -a / 2), complex(1 - b, a / 2))
    xi = np.asarray(x, dtype=float)
    values = np.asarray(jacobi_eval(jp, 1j * xi)) * (-1j) ** n
    scale = max(1.0, float(np.max(np.abs(values))) if values.size else 1.0)
    residue = float(np.max(np.abs(values.imag))) if values.size else 0.0
    if residue > 1e-10 * scale:
        raise PolynomialError(
            f"Romanovski value failed to come out real: imaginary residue "
            f"{residue:.3e} at degree {n}, alpha={a}, beta={b}"
        )
    return _unwrap(values.real, x)


def _unwrap(values, original):
    """return a scalar when the input was scalar, else the array."""
    arr = np.asarray(values)
    if np.ndim(original) == 0:
        return arr.reshape(()).item() if arr.ndim == 0 else arr.item()
    return arr


@dataclass(frozen=True)
class QuadratureResult:
    """integral value together with a conservative error estimate."""

    value: float
    error: float


class QuadratureError(RuntimeError):
    """integration did not converge; .estimate carries the best value seen."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class AdaptiveRule:
    """settings for globally adaptive quadrature.

    breakpoints lists interior abscissas where the first subdivision is
    forced; useful when the integrand's support is a narrow window inside
    a much wider finite interval, which the initial sample points of the
    plain adaptive scheme can miss entirely.  Entries outside the open
    integration interval are ignored, as is the whole list on an infinite
    interval.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    limit: int = 200
    breakpoints: tuple[float, ...] = ()


@dataclass(frozen=True)
class GaussLegendreRule:
    """composite fixed-order Gauss-Legendre rule on equal panels."""

    panels: int = 64
    order: int = 12


def quadrature(f, interval, rule=None) -> QuadratureResult:
    """integrate f over (a, b) and return the value with an error estimate.

    The default adaptive rule accepts infinite endpoints and raises
    QuadratureError (carrying its best estimate) when the subdivision limit
    is exhausted without convergence.  The composite Gauss-Legendre rule
    needs a finite interval and estimates its error by panel doubling.
    """
    a, b = interval
    if rule is None:
        rule = AdaptiveRule()
    if isinstance(rule, AdaptiveRule):
        kwargs = {}
        if np.isfinite(a) and np.isfinite(b):
            interior = [p for p in rule.breakpoints if a < p < b]
            if interior:
                kwargs["points"] = interior
        out = integrate.quad(
            f, a, b, epsabs=rule.abs_tol, epsrel=rule.rel_tol,
            limit=rule.limit, full_output=1, **kwargs,
        )
        value, error = out[0], out[1]
        if len(out) > 3:
            raise QuadratureError(
                f"adaptive quadrature did not converge on ({a}, {b}): {out[3]}",
                estimate=value,
            )
        return QuadratureResult(value=value, error=error)
    if isinstance(rule, GaussLegendreRule):
        if not (np.isfinite(a) and np.isfinite(b)):
            raise QuadratureError(
                f"Gauss-Legendre rule needs a finite interval, got ({a}, {b})"
            )
        coarse = _composite_gauss(f, a, b, rule.panels, rule.order)
        fine = _composite_gauss(f, a, b, 2 * rule.panels, rule.order)
        return QuadratureResult(value=fine, error=abs(fine - coarse))
    raise TypeError(f"unsupported quadrature rule: {rule!r}")


def _composite_gauss(f, a, b, panels, order):
    """fixed Gauss-Legendre sum over equal panels of (a, b)."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = (hi + lo) / 2, (hi - lo) / 2
        total += half * np.sum(weights * np.asarray(f(mid + half * nodes)))
    return total

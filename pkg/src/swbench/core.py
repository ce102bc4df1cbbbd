"""Shared physics, grids, fields and numerical kernels.

Everything downstream (analytic catalog, finite-volume solver, error
harness) builds on the primitives defined here: the gravity constant,
cell-centered grids, flow fields, friction-law closures, criticality
diagnostics, a deterministic bracketing root-finder and a fixed-step
4th-order ODE integrator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Union

import numpy as np

# Gravity is deliberately not configurable so that catalog output is
# bit-stable across builds.
G = 9.81

# Heights below this are flushed to zero (and velocities with them).
H_DRY = 1e-12


class DomainError(ValueError):
    """An argument is outside the physical/geometric domain of an operation."""


class BracketError(RuntimeError):
    """solve_bracketed was called without a sign change on the bracket."""


class IntegrationError(RuntimeError):
    """The ODE right-hand side produced a non-finite value."""

    def __init__(self, message: str, x: float):
        super().__init__(f"{message} (at x={x!r})")
        self.x = x


class ConstructionError(RuntimeError):
    """An analytic solution could not be assembled (root/bracket failure)."""


# ---------------------------------------------------------------------------
# grids and fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Grid1D:
    """Uniform cell-centered 1D grid on [0, length]."""

    length: float
    n_cells: int

    def __post_init__(self):
        if self.length <= 0:
            raise DomainError(f"grid length must be positive, got {self.length}")
        if self.n_cells < 1:
            raise DomainError(f"n_cells must be >= 1, got {self.n_cells}")

    @property
    def dx(self) -> float:
        return self.length / self.n_cells

    @cached_property
    def centers(self) -> np.ndarray:
        return (np.arange(self.n_cells) + 0.5) * self.dx


@dataclass(frozen=True)
class Grid2D:
    """Uniform cell-centered 2D grid on [0, lx] x [0, ly]."""

    lx: float
    ly: float
    nx: int
    ny: int

    def __post_init__(self):
        if self.lx <= 0 or self.ly <= 0:
            raise DomainError("grid extents must be positive")
        if self.nx < 1 or self.ny < 1:
            raise DomainError("cell counts must be >= 1")

    @property
    def dx(self) -> float:
        return self.lx / self.nx

    @property
    def dy(self) -> float:
        return self.ly / self.ny

    @cached_property
    def x_centers(self) -> np.ndarray:
        return (np.arange(self.nx) + 0.5) * self.dx

    @cached_property
    def y_centers(self) -> np.ndarray:
        return (np.arange(self.ny) + 0.5) * self.dy


@dataclass
class FlowField:
    """Cell values of a 1D shallow-water state: height, velocity, topography.

    Invariants: h >= 0 everywhere and u == 0 wherever h == 0.
    """

    grid: Grid1D
    h: np.ndarray
    u: np.ndarray
    z: np.ndarray

    @property
    def q(self) -> np.ndarray:
        return self.h * self.u

    @property
    def surface(self) -> np.ndarray:
        return self.h + self.z


@dataclass
class FlowField2D:
    """2D counterpart of FlowField; arrays are indexed [ix, iy]."""

    grid: Grid2D
    h: np.ndarray
    u: np.ndarray
    v: np.ndarray
    z: np.ndarray

    @property
    def surface(self) -> np.ndarray:
        return self.h + self.z


def dry_mask(h: np.ndarray, threshold: float = H_DRY) -> np.ndarray:
    return np.asarray(h) <= threshold


def flush_dry(h: np.ndarray, *velocities: np.ndarray, threshold: float = H_DRY):
    """Zero out heights below the dry threshold together with their velocities."""
    h = np.asarray(h, dtype=float).copy()
    dry = h <= threshold
    h[dry] = 0.0
    out = [h]
    for vel in velocities:
        vel = np.asarray(vel, dtype=float).copy()
        vel[dry] = 0.0
        out.append(vel)
    return out[0] if not velocities else tuple(out)


# ---------------------------------------------------------------------------
# friction laws
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Manning:
    """Manning-Strickler law, S_f = n^2 q|q| / h^(10/3)."""

    n: float

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("Manning coefficient must be >= 0")


@dataclass(frozen=True)
class DarcyWeisbach:
    """Darcy-Weisbach law, S_f = f/(8g) q|q| / h^3."""

    f: float

    def __post_init__(self):
        if self.f < 0:
            raise DomainError("Darcy-Weisbach coefficient must be >= 0")


@dataclass(frozen=True)
class Chezy:
    """Chezy law, S_f = q|q| / (C^2 h^3)."""

    c: float

    def __post_init__(self):
        if self.c < 0:
            raise DomainError("Chezy coefficient must be >= 0")


@dataclass(frozen=True)
class LinearDrag:
    """Linear law S_f = tau u / g used by the damped-oscillation solutions."""

    tau: float

    def __post_init__(self):
        if self.tau < 0:
            raise DomainError("linear drag coefficient must be >= 0")


@dataclass(frozen=True)
class LaminarTurbulent:
    """Laminar/turbulent closure of the diffusion solutions.

    alpha0(h) = k_l / (1 + k_l h / (3 mu_v))
    alpha1(h) = k_t / (1 + k_l h / (3 mu_v))^2
    S_f = (alpha0(h) u / h + alpha1(h) |u| u) / g
    """

    k_l: float
    k_t: float
    mu_v: float
    mu_h: float

    def __post_init__(self):
        if min(self.k_l, self.k_t, self.mu_v, self.mu_h) < 0:
            raise DomainError("laminar/turbulent coefficients must be >= 0")

    def alpha0(self, h):
        return self.k_l / (1.0 + self.k_l * np.asarray(h) / (3.0 * self.mu_v))

    def alpha1(self, h):
        return self.k_t / (1.0 + self.k_l * np.asarray(h) / (3.0 * self.mu_v)) ** 2


FrictionLaw = Union[Manning, DarcyWeisbach, Chezy, LinearDrag, LaminarTurbulent, None]


def friction_slope(law: FrictionLaw, h, q):
    """Friction slope S_f(h, q) for any of the supported families.

    `law=None` returns 0. Raises DomainError when h <= 0 carries nonzero
    discharge (a dry cell cannot flow).
    """
    h = np.asarray(h, dtype=float)
    q = np.asarray(q, dtype=float)
    if law is None:
        return np.zeros(np.broadcast(h, q).shape) if h.ndim or q.ndim else 0.0
    if np.any((h <= 0.0) & (q != 0.0)):
        raise DomainError("friction slope undefined for h <= 0 with nonzero q")
    scalar = h.ndim == 0 and q.ndim == 0
    h = np.maximum(h, H_DRY)
    if isinstance(law, Manning):
        sf = law.n ** 2 * q * np.abs(q) / h ** (10.0 / 3.0)
    elif isinstance(law, DarcyWeisbach):
        sf = law.f / (8.0 * G) * q * np.abs(q) / h ** 3
    elif isinstance(law, Chezy):
        cf = 0.0 if law.c == 0 else 1.0 / law.c ** 2
        sf = cf * q * np.abs(q) / h ** 3
    elif isinstance(law, LinearDrag):
        sf = law.tau * (q / h) / G
    elif isinstance(law, LaminarTurbulent):
        u = q / h
        sf = (law.alpha0(h) * u / h + law.alpha1(h) * np.abs(u) * u) / G
    else:  # pragma: no cover
        raise TypeError(f"unknown friction law {law!r}")
    return float(sf) if scalar else sf


# ---------------------------------------------------------------------------
# criticality diagnostics
# ---------------------------------------------------------------------------

def froude(h, u):
    """Froude number |u| / sqrt(g h); h must be positive."""
    h = np.asarray(h, dtype=float)
    if np.any(h <= 0.0):
        raise DomainError("Froude number undefined on dry cells (h <= 0)")
    fr = np.abs(u) / np.sqrt(G * h)
    return float(fr) if fr.ndim == 0 else fr


def critical_height(q):
    """Critical height (q / sqrt(g))^(2/3) for discharge q >= 0."""
    q = np.asarray(q, dtype=float)
    if np.any(q < 0.0):
        raise DomainError("critical height expects q >= 0")
    hc = (q / math.sqrt(G)) ** (2.0 / 3.0)
    return float(hc) if hc.ndim == 0 else hc


def eigenvalues(h, u):
    """Characteristic speeds (u - sqrt(gh), u + sqrt(gh))."""
    c = np.sqrt(G * np.maximum(np.asarray(h, dtype=float), 0.0))
    u = np.asarray(u, dtype=float)
    lam1, lam2 = u - c, u + c
    if lam1.ndim == 0:
        return float(lam1), float(lam2)
    return lam1, lam2


@dataclass(frozen=True)
class CriticalityDiagnostics:
    froude: float
    critical_height: float
    lambda1: float
    lambda2: float


def diagnose(h: float, u: float) -> CriticalityDiagnostics:
    lam1, lam2 = eigenvalues(h, u)
    return CriticalityDiagnostics(
        froude=froude(h, u),
        critical_height=critical_height(abs(h * u)),
        lambda1=lam1,
        lambda2=lam2,
    )


# ---------------------------------------------------------------------------
# root finding
# ---------------------------------------------------------------------------

def solve_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    df: Callable[[float], float] | None = None,
) -> float:
    """Deterministic root of f on [lo, hi] (f must change sign on the bracket).

    Bisection narrows the bracket (to 1e-8 width or `tol`, whichever is
    larger), then at most 5 Newton steps polish the residual; a final
    bisection pass guarantees the bracket width <= tol. When no analytic
    derivative is supplied, the Newton step uses the bracket secant.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a, b = float(lo), float(hi)
    fa, fb = float(f(a)), float(f(b))
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise BracketError(f"no sign change on [{lo}, {hi}]: f={fa}, {fb}")

    def bisect_to(width: float):
        nonlocal a, b, fa, fb
        while b - a > width:
            m = 0.5 * (a + b)
            if m <= a or m >= b:  # bracket at floating-point resolution
                break
            fm = float(f(m))
            if fm == 0.0:
                a = b = m
                fa = fb = 0.0
                return
            if fa * fm < 0.0:
                b, fb = m, fm
            else:
                a, fa = m, fm

    bisect_to(max(tol, 1e-8))
    x = a if abs(fa) <= abs(fb) else b
    fx = fa if x == a else fb
    for _ in range(5):
        if fx == 0.0:
            return x
        slope = df(x) if df is not None else (fb - fa) / (b - a) if b > a else 0.0
        if slope == 0.0 or not math.isfinite(slope):
            break
        step = fx / slope
        x_new = x - step
        if not (a <= x_new <= b):
            break
        f_new = float(f(x_new))
        x, fx = x_new, f_new
        if abs(f_new) < 1e-12:
            break
        # keep the bracket valid for a possible fallback
        if fa * f_new < 0.0:
            b, fb = x_new, f_new
        else:
            a, fa = x_new, f_new
    if b - a > tol:
        bisect_to(tol)
        x = a if abs(fa) <= abs(fb) else b
    return x


# ---------------------------------------------------------------------------
# ODE integration / quadrature
# ---------------------------------------------------------------------------

def rk4_path(rhs: Callable[[float, float], float], xs: np.ndarray, y0: float) -> np.ndarray:
    """Classical RK4 along the (possibly non-uniform) abscissae `xs`."""
    xs = np.asarray(xs, dtype=float)
    ys = np.empty_like(xs)
    y = float(y0)
    ys[0] = y
    for j in range(len(xs) - 1):
        x, dx = xs[j], xs[j + 1] - xs[j]
        k1 = rhs(x, y)
        k2 = rhs(x + 0.5 * dx, y + 0.5 * dx * k1)
        k3 = rhs(x + 0.5 * dx, y + 0.5 * dx * k2)
        k4 = rhs(x + dx, y + dx * k3)
        inc = (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
        if not np.isfinite(inc):
            raise IntegrationError("non-finite ODE right-hand side", float(x))
        y += dx * inc
        ys[j + 1] = y
    return ys


def integrate_ode(
    rhs: Callable[[float, float], float],
    x0: float,
    x1: float,
    y0: float,
    n_steps: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Fixed-step RK4 from x0 to x1 (either direction); returns (xs, ys)."""
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    xs = np.linspace(float(x0), float(x1), n_steps + 1)
    return xs, rk4_path(rhs, xs, y0)


def cumulative_quadrature(f_of_x: Callable[[np.ndarray], np.ndarray], xs: np.ndarray) -> np.ndarray:
    """Cumulative integral of f along the nodes `xs`, starting at 0.

    Per-interval Simpson rule, which is what RK4 reduces to when the
    right-hand side does not depend on y. Vectorized over all intervals.
    """
    xs = np.asarray(xs, dtype=float)
    if len(xs) < 2:
        return np.zeros_like(xs)
    mid = 0.5 * (xs[:-1] + xs[1:])
    f_nodes = np.asarray(f_of_x(xs), dtype=float)
    f_mid = np.asarray(f_of_x(mid), dtype=float)
    bad = ~np.isfinite(f_nodes)
    if bad.any():
        raise IntegrationError("non-finite integrand", float(xs[bad][0]))
    bad = ~np.isfinite(f_mid)
    if bad.any():
        raise IntegrationError("non-finite integrand", float(mid[bad][0]))
    dx = np.diff(xs)
    inc = dx / 6.0 * (f_nodes[:-1] + 4.0 * f_mid + f_nodes[1:])
    out = np.empty_like(xs)
    out[0] = 0.0
    np.cumsum(inc, out=out[1:])
    return out


def gauss_legendre_integral(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, order: int = 20) -> float:
    """High-order Gauss-Legendre quadrature of f on [a, b] (test oracle helper)."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    xm, xr = 0.5 * (a + b), 0.5 * (b - a)
    return float(xr * np.sum(weights * np.asarray(f(xm + xr * nodes))))


def refined_partition(
    length: float,
    centers: np.ndarray,
    breakpoints: tuple[float, ...] = (),
    factor: int = 5,
) -> np.ndarray:
    """Integration nodes covering [0, length]: every output center and every
    profile breakpoint is a node, and no interval exceeds dx_out / factor.

    Aligning breakpoints with nodes keeps the fixed-step integrator at its
    nominal order across piecewise-defined right-hand sides; factor < 2 is
    clamped (the synthesized data must be finer than the grid it feeds).
    """
    factor = max(int(factor), 2)
    centers = np.asarray(centers, dtype=float)
    interior = [b for b in breakpoints if 0.0 < b < length]
    base = np.unique(np.concatenate((np.array([0.0, length]), centers, np.array(interior))))
    target = (length / max(len(centers), 1)) / factor
    pieces = []
    for a, b in zip(base[:-1], base[1:]):
        n_sub = max(1, int(math.ceil((b - a) / target - 1e-12)))
        pieces.append(np.linspace(a, b, n_sub + 1)[:-1])
    pieces.append(np.array([length]))
    return np.concatenate(pieces)

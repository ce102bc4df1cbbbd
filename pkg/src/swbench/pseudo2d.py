"""Width-averaged channel solutions with variable breadth and bed slope.

Six non-prismatic channels (rectangular or trapezoidal cross sections): the
mean water height is prescribed, the bed slope follows from the steady
balance

    S0(x) = (1 - q^2 (B + 2 Z h) / (g h^3 (B + Z h)^3)) h'
            + q^2 n^2 (B + 2 h sqrt(1+Z^2))^(4/3) / (h^(10/3) (B + Z h)^(10/3))
            - q^2 B' / (g h^2 (B + Z h)^3)

and the topography is the backward quadrature z(x) = integral_x^L S0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    G,
    DomainError,
    FlowField,
    FlowField2D,
    Grid1D,
    Grid2D,
    cumulative_quadrature,
    refined_partition,
    solve_bracketed,
)

MANNING_N = 0.03
DISCHARGE = 20.0  # m^3/s for every catalog channel


def _width_b1(x):
    s = np.asarray(x, dtype=float) / 200.0 - 0.5
    return 10.0 - 5.0 * np.exp(-10.0 * s * s)


def _dwidth_b1(x):
    s = np.asarray(x, dtype=float) / 200.0 - 0.5
    return 0.5 * s * np.exp(-10.0 * s * s)


def _width_b2(x):
    x = np.asarray(x, dtype=float)
    r1 = x / 400.0 - 1.0 / 3.0
    r2 = x / 400.0 - 2.0 / 3.0
    return 10.0 - 5.0 * np.exp(-50.0 * r1 * r1) - 5.0 * np.exp(-50.0 * r2 * r2)


def _dwidth_b2(x):
    x = np.asarray(x, dtype=float)
    r1 = x / 400.0 - 1.0 / 3.0
    r2 = x / 400.0 - 2.0 / 3.0
    return 1.25 * (r1 * np.exp(-50.0 * r1 * r1) + r2 * np.exp(-50.0 * r2 * r2))


@dataclass(frozen=True)
class HeightBranch:
    x_lo: float
    x_hi: float
    h: Callable[[np.ndarray], np.ndarray]
    dh: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Pseudo2DCase:
    slug: str
    title: str
    length: float
    side_slope: float                 # Z, horizontal run per unit height
    width: Callable[[np.ndarray], np.ndarray]
    dwidth: Callable[[np.ndarray], np.ndarray]
    branches: tuple[HeightBranch, ...]
    regime: str
    imposed_inflow_height: bool       # whether h(0) is part of the upstream BC
    imposed_outflow_height: bool
    initially_dry: bool = True        # False: puddle against the outflow

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return tuple(b.x_hi for b in self.branches[:-1])

    @property
    def h_in(self) -> float:
        return float(mean_height(self, 0.0))

    @property
    def h_out(self) -> float:
        return float(mean_height(self, self.length))


def _gauss_h(lo, hi, base, amp, width, scale):
    def h(x):
        s = np.asarray(x, dtype=float) / scale - 0.5
        return base + amp * np.exp(-width * s * s)

    def dh(x):
        s = np.asarray(x, dtype=float) / scale - 0.5
        return amp * np.exp(-width * s * s) * (-2.0 * width * s) / scale

    return HeightBranch(lo, hi, h, dh)


def _smooth_h():
    def h(x):
        return 1.0 - 0.3 * np.tanh(4.0 * (np.asarray(x, dtype=float) / 200.0 - 1.0 / 3.0))

    def dh(x):
        t = np.tanh(4.0 * (np.asarray(x, dtype=float) / 200.0 - 1.0 / 3.0))
        return -0.3 * 4.0 / 200.0 * (1.0 - t * t)

    return HeightBranch(0.0, 200.0, h, dh)


def _jump_left_short():
    def h(x):
        return 0.7 + 0.3 * (np.exp(np.asarray(x, dtype=float) / 200.0) - 1.0)

    def dh(x):
        return 0.3 / 200.0 * np.exp(np.asarray(x, dtype=float) / 200.0)

    return HeightBranch(0.0, 120.0, h, dh)


def _jump_tail(lo, hi, x_star, x_star2, p, ks, phi, dphi):
    span = x_star2 - x_star
    k0, k1, k2 = ks

    def h(x):
        x = np.asarray(x, dtype=float)
        xi = (x - x_star) / span
        return np.exp(-p * (x - x_star)) * (k0 + k1 * xi + k2 * xi * xi) + phi(x)

    def dh(x):
        x = np.asarray(x, dtype=float)
        xi = (x - x_star) / span
        poly = k0 + k1 * xi + k2 * xi * xi
        dpoly = (k1 + 2.0 * k2 * xi) / span
        return np.exp(-p * (x - x_star)) * (dpoly - p * poly) + dphi(x)

    return HeightBranch(lo, hi, h, dh)


def _jump_right_short():
    def phi(x):
        return 1.5 * np.exp(0.1 * (np.asarray(x, dtype=float) / 200.0 - 1.0))

    def dphi(x):
        return 1.5 * 0.1 / 200.0 * np.exp(0.1 * (np.asarray(x, dtype=float) / 200.0 - 1.0))

    return _jump_tail(120.0, 200.0, 120.0, 200.0, 0.1,
                      (-0.154375, -0.108189, -2.014310), phi, dphi)


def _long_sub_h():
    def h(x):
        x = np.asarray(x, dtype=float)
        r1 = x / 400.0 - 1.0 / 3.0
        r2 = x / 400.0 - 2.0 / 3.0
        return 0.9 + 0.3 * np.exp(-40.0 * r1 * r1) + 0.2 * np.exp(-35.0 * r2 * r2)

    def dh(x):
        x = np.asarray(x, dtype=float)
        r1 = x / 400.0 - 1.0 / 3.0
        r2 = x / 400.0 - 2.0 / 3.0
        return (0.3 * np.exp(-40.0 * r1 * r1) * (-80.0 * r1)
                + 0.2 * np.exp(-35.0 * r2 * r2) * (-70.0 * r2)) / 400.0

    return HeightBranch(0.0, 400.0, h, dh)


def _smooth_jump_left_long():
    def h(x):
        x = np.asarray(x, dtype=float)
        return 0.9 + 0.25 * (np.exp(-x / 40.0) - 1.0) + 0.25 * np.exp(15.0 * (x / 400.0 - 0.3))

    def dh(x):
        x = np.asarray(x, dtype=float)
        return -0.25 / 40.0 * np.exp(-x / 40.0) + 0.25 * 15.0 / 400.0 * np.exp(15.0 * (x / 400.0 - 0.3))

    return HeightBranch(0.0, 120.0, h, dh)


def _smooth_jump_right_long():
    # applied on [120, 400]: the tail reaches the outflow (x** = 400)
    def phi(x):
        x = np.asarray(x, dtype=float)
        return 1.5 * np.exp(0.16 * (x / 400.0 - 1.0)) - 0.3 * np.exp(2.0 * (x / 400.0 - 1.0))

    def dphi(x):
        x = np.asarray(x, dtype=float)
        return (1.5 * 0.16 * np.exp(0.16 * (x / 400.0 - 1.0))
                - 0.3 * 2.0 * np.exp(2.0 * (x / 400.0 - 1.0))) / 400.0

    return _jump_tail(120.0, 400.0, 120.0, 400.0, 0.09,
                      (-0.183691, 1.519577, -18.234429), phi, dphi)


CASES: tuple[Pseudo2DCase, ...] = (
    Pseudo2DCase("short-subcritical", "subcritical flow in a short domain",
                 200.0, 0.0, _width_b1, _dwidth_b1,
                 (_gauss_h(0.0, 200.0, 0.9, 0.3, 20.0, 200.0),), "sub",
                 imposed_inflow_height=False, imposed_outflow_height=True,
                 initially_dry=False),
    Pseudo2DCase("short-supercritical", "supercritical flow in a short domain",
                 200.0, 0.0, _width_b1, _dwidth_b1,
                 (_gauss_h(0.0, 200.0, 0.5, 0.5, 20.0, 200.0),), "super",
                 imposed_inflow_height=True, imposed_outflow_height=False),
    Pseudo2DCase("short-smooth", "smooth transition in a short domain",
                 200.0, 0.0, _width_b1, _dwidth_b1,
                 (_smooth_h(),), "sub_super",
                 imposed_inflow_height=False, imposed_outflow_height=False),
    Pseudo2DCase("short-jump", "hydraulic jump in a short domain",
                 200.0, 0.0, _width_b1, _dwidth_b1,
                 (_jump_left_short(), _jump_right_short()), "super_sub",
                 imposed_inflow_height=True, imposed_outflow_height=True,
                 initially_dry=False),
    Pseudo2DCase("long-subcritical", "subcritical flow in a long domain",
                 400.0, 2.0, _width_b2, _dwidth_b2,
                 (_long_sub_h(),), "sub",
                 imposed_inflow_height=False, imposed_outflow_height=True,
                 initially_dry=False),
    Pseudo2DCase("long-smooth-jump", "smooth transition and hydraulic jump in a long domain",
                 400.0, 2.0, _width_b2, _dwidth_b2,
                 (_smooth_jump_left_long(), _smooth_jump_right_long()), "sub_super_sub",
                 imposed_inflow_height=False, imposed_outflow_height=True,
                 initially_dry=False),
)

CASE_BY_SLUG = {case.slug: case for case in CASES}


def _check_domain(case: Pseudo2DCase, x: np.ndarray):
    if np.any(x < 0.0) or np.any(x > case.length):
        raise DomainError(f"x outside [0, {case.length}] for case {case.slug!r}")


def _branched(case: Pseudo2DCase, x, attr: str):
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    _check_domain(case, x_arr)
    idx = np.searchsorted(np.asarray(case.breakpoints), x_arr, side="left")
    out = np.empty_like(x_arr)
    for b, branch in enumerate(case.branches):
        sel = idx == b
        if np.any(sel):
            out[sel] = getattr(branch, attr)(x_arr[sel])
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(out[0])
    return out


def width(case: Pseudo2DCase, x):
    x_arr = np.asarray(x, dtype=float)
    _check_domain(case, np.atleast_1d(x_arr))
    return case.width(x_arr)


def mean_height(case: Pseudo2DCase, x):
    return _branched(case, x, "h")


def mean_height_slope(case: Pseudo2DCase, x):
    return _branched(case, x, "dh")


def wetted_area(case: Pseudo2DCase, x, h=None):
    h = mean_height(case, x) if h is None else np.asarray(h, dtype=float)
    return h * (width(case, x) + case.side_slope * h)


def mean_velocity(case: Pseudo2DCase, x):
    return DISCHARGE / wetted_area(case, x)


def froude_profile(case: Pseudo2DCase, x, h=None):
    """Open-channel Froude number q sqrt(T / (g A^3)) with T the top width."""
    h = mean_height(case, x) if h is None else np.asarray(h, dtype=float)
    b = width(case, x)
    area = h * (b + case.side_slope * h)
    top = b + 2.0 * case.side_slope * h
    return DISCHARGE * np.sqrt(top / (G * area ** 3))


def critical_height_profile(case: Pseudo2DCase, x):
    """Depth at which the local section flows at Froude 1."""
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    _check_domain(case, x_arr)
    q2 = DISCHARGE * DISCHARGE
    out = np.empty_like(x_arr)
    for i, xi in enumerate(x_arr):
        b = float(case.width(xi))

        def f(h):
            area = h * (b + case.side_slope * h)
            return G * area ** 3 - q2 * (b + 2.0 * case.side_slope * h)

        out[i] = solve_bracketed(f, 1e-9, 50.0, tol=1e-12)
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(out[0])
    return out


def _branch_s0(case: Pseudo2DCase, branch: HeightBranch):
    q2 = DISCHARGE * DISCHARGE
    n2 = MANNING_N * MANNING_N
    zs = case.side_slope
    root = math.sqrt(1.0 + zs * zs)

    def s0(x):
        x = np.asarray(x, dtype=float)
        h = branch.h(x)
        dh = branch.dh(x)
        b = case.width(x)
        db = case.dwidth(x)
        wetted = b + zs * h
        term_h = (1.0 - q2 * (b + 2.0 * zs * h) / (G * h ** 3 * wetted ** 3)) * dh
        term_f = q2 * n2 * (b + 2.0 * h * root) ** (4.0 / 3.0) / (h ** (10.0 / 3.0) * wetted ** (10.0 / 3.0))
        term_b = q2 * db / (G * h * h * wetted ** 3)
        return term_h + term_f - term_b

    return s0


def bed_slope(case: Pseudo2DCase, x):
    """S0(x) evaluated branch-wise from the closed-form profile."""
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    _check_domain(case, x_arr)
    idx = np.searchsorted(np.asarray(case.breakpoints), x_arr, side="left")
    out = np.empty_like(x_arr)
    for b, branch in enumerate(case.branches):
        sel = idx == b
        if np.any(sel):
            out[sel] = _branch_s0(case, branch)(x_arr[sel])
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(out[0])
    return out


@dataclass(frozen=True)
class ChannelTopography:
    """z = integral_x^L S0 on the fine partition; z(L) = 0 by construction."""

    fine_x: np.ndarray
    fine_z: np.ndarray
    z_cells: np.ndarray


def topography(case: Pseudo2DCase, grid: Grid1D, fine_factor: int = 5) -> ChannelTopography:
    nodes = refined_partition(case.length, grid.centers, case.breakpoints, fine_factor)
    accum = np.empty_like(nodes)
    offset = 0.0
    lo = 0
    bounds = (*case.breakpoints, case.length)
    for branch, hi_x in zip(case.branches, bounds):
        hi = int(np.searchsorted(nodes, hi_x, side="left"))
        seg = offset + cumulative_quadrature(_branch_s0(case, branch), nodes[lo:hi + 1])
        accum[lo:hi + 1] = seg
        offset = seg[-1]
        lo = hi
    fine_z = accum[-1] - accum
    idx = np.searchsorted(nodes, grid.centers)
    return ChannelTopography(nodes, fine_z, fine_z[idx])


def solution(case: Pseudo2DCase, grid: Grid1D, fine_factor: int = 5) -> FlowField:
    """Width-averaged profile: h_ex, mean velocity q/A, quadrature bed."""
    if abs(grid.length - case.length) > 1e-9:
        raise DomainError(f"grid length {grid.length} != case length {case.length}")
    topo = topography(case, grid, fine_factor)
    h = mean_height(case, grid.centers)
    u = DISCHARGE / (h * (width(case, grid.centers) + case.side_slope * h))
    return FlowField(grid, h, u, topo.z_cells)


def domain_width(case: Pseudo2DCase) -> float:
    """Width of the enclosing 2D raster domain (maximum channel breadth)."""
    xs = np.linspace(0.0, case.length, 4001)
    return float(np.max(width(case, xs)))


def raster(case: Pseudo2DCase, grid: Grid2D, fine_factor: int = 5) -> FlowField2D:
    """Expand the mean profile into a 2D free-surface raster.

    The channel axis sits at mid-domain. Inside the bottom width the local
    depth is h(x); on trapezoidal banks it tapers linearly; the free surface
    is flat across the section. Vertical-walled channels (Z = 0) report the
    outside as dry land at the waterline.
    """
    if abs(grid.lx - case.length) > 1e-9:
        raise DomainError(f"raster grid x-extent {grid.lx} != case length {case.length}")
    prof = solution(case, Grid1D(case.length, grid.nx), fine_factor)
    half = 0.5 * grid.ly
    dy = np.abs(grid.y_centers[None, :] - half)            # (1, ny)
    b_half = 0.5 * width(case, grid.x_centers)[:, None]    # (nx, 1)
    h_mean = prof.h[:, None]
    z_bed = prof.z[:, None]
    if case.side_slope > 0.0:
        z_loc = z_bed + np.maximum(0.0, dy - b_half) / case.side_slope
    else:
        z_loc = np.where(dy <= b_half, z_bed, z_bed + h_mean)
    depth = np.maximum(0.0, z_bed + h_mean - z_loc)
    u = np.where(depth > 0.0, prof.u[:, None], 0.0) * np.ones_like(depth)
    v = np.zeros_like(depth)
    return FlowField2D(grid, depth, u, v, z_loc * np.ones_like(depth))

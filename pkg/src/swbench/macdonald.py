"""Steady 1D channel solutions with prescribed height profiles.

Each case fixes a closed-form water-height profile h_ex(x) and a discharge,
then synthesizes the compatible topography by integrating the steady
momentum balance

    dz/dx = (q^2 / (g h^3) - 1) h' - S_f            (plain and rain cases,
                                                     rain adds -2 q R0 / (g h^2))
    ... + (mu / (g h^2)) (-q h'' + (q/h) (h')^2)    (diffusion cases, mu = 4 mu_h)

with q(x) = q0 + R0 x. The integration runs forward from z(0) = 0 on a fine
partition aligned with the output cells and profile breakpoints, and the
result is shifted so min z = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    G,
    ConstructionError,
    DomainError,
    FlowField,
    FrictionLaw,
    Grid1D,
    LaminarTurbulent,
    Manning,
    DarcyWeisbach,
    cumulative_quadrature,
    friction_slope,
    refined_partition,
)

# common prefactor (4/g)^(1/3) of the 1000 m and 100 m profiles
K = (4.0 / G) ** (1.0 / 3.0)


@dataclass(frozen=True)
class Branch:
    """One smooth piece of a height profile with analytic derivatives."""

    x_lo: float
    x_hi: float
    h: Callable[[np.ndarray], np.ndarray]
    dh: Callable[[np.ndarray], np.ndarray]
    d2h: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class MacDonaldCase:
    slug: str
    title: str
    length: float
    q0: float
    branches: tuple[Branch, ...]
    manning: float | None = None
    darcy: float | None = None
    diffusion: LaminarTurbulent | None = None
    rain_rate: float = 0.0
    rain_start: float = 0.0
    regime: str = "sub"          # sub | super | sub_super | super_sub | sub_super_sub
    initially_dry: bool = True   # False: dry bed with a lake against the outflow

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return tuple(b.x_hi for b in self.branches[:-1])

    def discharge(self, x):
        """Steady discharge q0 + R0 x (constant when there is no rain)."""
        return self.q0 + self.rain_rate * np.asarray(x, dtype=float)


def _gauss_branch(lo, hi, scale, amp, width, coeff):
    """Profile piece scale*(1 + amp*exp(-width*(x/coeff - 1/2)^2))."""

    def h(x):
        s = x / coeff - 0.5
        return scale * (1.0 + amp * np.exp(-width * s * s))

    def dh(x):
        s = x / coeff - 0.5
        return scale * amp * np.exp(-width * s * s) * (-2.0 * width * s) / coeff

    def d2h(x):
        s = x / coeff - 0.5
        e = np.exp(-width * s * s)
        return scale * amp * (-2.0 * width / coeff ** 2) * e * (1.0 - 2.0 * width * s * s)

    return Branch(lo, hi, h, dh, d2h)


def _long_sub_branch():
    return _gauss_branch(0.0, 1000.0, K, 0.5, 16.0, 1000.0)


def _long_super_branch():
    return _gauss_branch(0.0, 1000.0, K, -0.2, 36.0, 1000.0)


def _tanh_branch(lo, hi, amp, steep):
    def h(x):
        return K * (1.0 - amp * np.tanh(steep * (x / 1000.0 - 0.5)))

    def dh(x):
        t = np.tanh(steep * (x / 1000.0 - 0.5))
        return -K * amp * steep / 1000.0 * (1.0 - t * t)

    def d2h(x):
        t = np.tanh(steep * (x / 1000.0 - 0.5))
        return 2.0 * K * amp * (steep / 1000.0) ** 2 * t * (1.0 - t * t)

    return Branch(lo, hi, h, dh, d2h)


def _super_sub_left():
    def h(x):
        return K * (0.9 - np.exp(-x / 250.0) / 6.0)

    def dh(x):
        return K * np.exp(-x / 250.0) / 1500.0

    def d2h(x):
        return -K * np.exp(-x / 250.0) / 375000.0

    return Branch(0.0, 500.0, h, dh, d2h)


_SS_A = (-0.348427, 0.552264, -0.55558)


def _super_sub_right():
    # sum of decaying exponentials exp(-20k(x/1000 - 1/2)) plus 0.8 e^(x/1000-1);
    # the exponent is linear in x exactly as printed (not squared).
    def parts(x):
        s = x / 1000.0 - 0.5
        return [(a, np.exp(-20.0 * k * s)) for k, a in zip((1, 2, 3), _SS_A)]

    def h(x):
        tail = 0.8 * np.exp(x / 1000.0 - 1.0)
        return K * (1.0 + sum(a * e for a, e in parts(x)) + tail)

    def dh(x):
        s = x / 1000.0 - 0.5
        d = sum(a * (-20.0 * k / 1000.0) * np.exp(-20.0 * k * s) for k, a in zip((1, 2, 3), _SS_A))
        return K * (d + 0.8 / 1000.0 * np.exp(x / 1000.0 - 1.0))

    def d2h(x):
        s = x / 1000.0 - 0.5
        d = sum(a * (20.0 * k / 1000.0) ** 2 * np.exp(-20.0 * k * s) for k, a in zip((1, 2, 3), _SS_A))
        return K * (d + 0.8 / 1000.0 ** 2 * np.exp(x / 1000.0 - 1.0))

    return Branch(500.0, 1000.0, h, dh, d2h)


_SMOOTH_SHOCK_A = (0.674202, 21.7112, 14.492, 1.4305)
X_JUMP_100 = 200.0 / 3.0


def _smooth_shock_left():
    def h(x):
        return K * (4.0 / 3.0 - x / 100.0) - 9.0 * x / 1000.0 * (x / 100.0 - 2.0 / 3.0)

    def dh(x):
        return -K / 100.0 - 9.0 / 1000.0 * (2.0 * x / 100.0 - 2.0 / 3.0)

    def d2h(x):
        return -9.0 / 1000.0 * 2.0 / 100.0 * np.ones_like(np.asarray(x, dtype=float))

    return Branch(0.0, X_JUMP_100, h, dh, d2h)


def _smooth_shock_right():
    a1, a2, a3, a4 = _SMOOTH_SHOCK_A

    def h(x):
        xi = x / 100.0 - 2.0 / 3.0
        return K * (a1 * xi ** 4 + a1 * xi ** 3 - a2 * xi ** 2 + a3 * xi + a4)

    def dh(x):
        xi = x / 100.0 - 2.0 / 3.0
        return K * (4.0 * a1 * xi ** 3 + 3.0 * a1 * xi ** 2 - 2.0 * a2 * xi + a3) / 100.0

    def d2h(x):
        xi = x / 100.0 - 2.0 / 3.0
        return K * (12.0 * a1 * xi ** 2 + 6.0 * a1 * xi - 2.0 * a2) / 100.0 ** 2

    return Branch(X_JUMP_100, 100.0, h, dh, d2h)


def _short_super_branch():
    return _gauss_branch(0.0, 100.0, K, -0.25, 4.0, 100.0)


def _short_subsuper_branch():
    def h(x):
        return K * (1.0 - (x - 50.0) / 200.0 + (x - 50.0) ** 2 / 30000.0)

    def dh(x):
        return K * (-1.0 / 200.0 + (x - 50.0) / 15000.0) * np.ones_like(np.asarray(x, dtype=float))

    def d2h(x):
        return K / 15000.0 * np.ones_like(np.asarray(x, dtype=float))

    return Branch(0.0, 100.0, h, dh, d2h)


def _periodic_branch():
    def h(x):
        return 9.0 / 8.0 + np.sin(np.pi * x / 500.0) / 4.0

    def dh(x):
        return np.pi / 2000.0 * np.cos(np.pi * x / 500.0)

    def d2h(x):
        return -np.pi ** 2 / 1.0e6 * np.sin(np.pi * x / 500.0)

    return Branch(0.0, 5000.0, h, dh, d2h)


CASES: tuple[MacDonaldCase, ...] = (
    MacDonaldCase(
        "long-subcritical", "long channel, subcritical flow", 1000.0, 2.0,
        (_long_sub_branch(),), manning=0.033, darcy=0.093, regime="sub",
    ),
    MacDonaldCase(
        "long-supercritical", "long channel, supercritical flow", 1000.0, 2.5,
        (_long_super_branch(),), manning=0.04, darcy=0.065, regime="super",
    ),
    MacDonaldCase(
        "long-sub-to-super", "long channel, subcritical to supercritical", 1000.0, 2.0,
        (_tanh_branch(0.0, 500.0, 1.0 / 3.0, 3.0), _tanh_branch(500.0, 1000.0, 1.0 / 6.0, 6.0)),
        manning=0.0218, darcy=0.042, regime="sub_super",
    ),
    MacDonaldCase(
        "long-super-to-sub", "long channel, supercritical to subcritical (jump at 500 m)",
        1000.0, 2.0, (_super_sub_left(), _super_sub_right()),
        manning=0.0218, darcy=0.0425, regime="super_sub",
    ),
    MacDonaldCase(
        "short-smooth-shock", "short channel, smooth transition and shock", 100.0, 2.0,
        (_smooth_shock_left(), _smooth_shock_right()),
        manning=0.0328, regime="sub_super_sub", initially_dry=False,
    ),
    MacDonaldCase(
        "short-supercritical", "short channel, supercritical flow", 100.0, 2.0,
        (_short_super_branch(),), manning=0.03, regime="super",
    ),
    MacDonaldCase(
        "short-sub-to-super", "short channel, subcritical to supercritical", 100.0, 2.0,
        (_short_subsuper_branch(),), manning=0.0328, regime="sub_super", initially_dry=False,
    ),
    MacDonaldCase(
        "periodic-subcritical", "very long undulating channel, subcritical flow", 5000.0, 2.0,
        (_periodic_branch(),), manning=0.03, regime="sub", initially_dry=False,
    ),
    MacDonaldCase(
        "rain-subcritical", "rain on a long channel, subcritical flow", 1000.0, 1.0,
        (_long_sub_branch(),), manning=0.033, darcy=0.093, rain_rate=0.001, regime="sub",
    ),
    MacDonaldCase(
        "rain-supercritical", "rain on a long channel, supercritical flow", 1000.0, 2.5,
        (_long_super_branch(),), manning=0.04, darcy=0.065,
        rain_rate=0.001, rain_start=1500.0, regime="super",
    ),
    MacDonaldCase(
        "diffusion-subcritical", "long channel with diffusion, subcritical flow", 1000.0, 1.5,
        (_long_sub_branch(),),
        diffusion=LaminarTurbulent(k_l=0.001, k_t=0.01, mu_v=0.01, mu_h=0.001), regime="sub",
    ),
    MacDonaldCase(
        "diffusion-supercritical", "long channel with diffusion, supercritical flow", 1000.0, 2.5,
        (_long_super_branch(),),
        diffusion=LaminarTurbulent(k_l=0.001, k_t=0.005, mu_v=0.01, mu_h=0.1), regime="super",
    ),
)

CASE_BY_SLUG = {case.slug: case for case in CASES}


def resolve_law(case: MacDonaldCase, choice: str | None = None) -> FrictionLaw:
    """Friction law instance for a case; `choice` is 'manning' or 'darcy'."""
    if case.diffusion is not None:
        return case.diffusion
    if choice in (None, "manning") and case.manning is not None:
        return Manning(case.manning)
    if choice in (None, "darcy") and case.darcy is not None:
        return DarcyWeisbach(case.darcy)
    raise DomainError(f"case {case.slug!r} has no {choice!r} friction variant")


def _branch_index(case: MacDonaldCase, x: np.ndarray) -> np.ndarray:
    # x exactly at a breakpoint resolves to the left branch
    return np.searchsorted(np.asarray(case.breakpoints), x, side="left")


def hex_profile(case: MacDonaldCase, x):
    """Closed-form height and slope (h, h') at x, branch-resolved."""
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x_arr < 0.0) or np.any(x_arr > case.length):
        raise DomainError(f"x outside [0, {case.length}] for case {case.slug!r}")
    idx = _branch_index(case, x_arr)
    h = np.empty_like(x_arr)
    dh = np.empty_like(x_arr)
    for b, branch in enumerate(case.branches):
        sel = idx == b
        if np.any(sel):
            h[sel] = branch.h(x_arr[sel])
            dh[sel] = branch.dh(x_arr[sel])
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(h[0]), float(dh[0])
    return h, dh


def diffusion_source_terms(h, q, k_l: float, k_t: float, mu_v: float):
    """(alpha0, alpha1, S_f) of the laminar/turbulent closure at state (h, q)."""
    h = np.asarray(h, dtype=float)
    if np.any(h <= 0.0):
        raise DomainError("diffusion source terms need h > 0")
    law = LaminarTurbulent(k_l=k_l, k_t=k_t, mu_v=mu_v, mu_h=0.0)
    u = np.asarray(q, dtype=float) / h
    a0 = law.alpha0(h)
    a1 = law.alpha1(h)
    sf = (a0 * u / h + a1 * np.abs(u) * u) / G
    if h.ndim == 0 and np.asarray(q).ndim == 0:
        return float(a0), float(a1), float(sf)
    return a0, a1, sf


def _branch_rhs(case: MacDonaldCase, branch: Branch, law: FrictionLaw):
    """dz/dx restricted to one smooth branch (vectorized in x)."""

    def rhs(x):
        x = np.asarray(x, dtype=float)
        h = branch.h(x)
        if np.any(h <= 0.0):
            raise ConstructionError(f"height profile vanishes inside {case.slug!r}")
        dh = branch.dh(x)
        q = case.discharge(x)
        out = (q * q / (G * h ** 3) - 1.0) * dh - friction_slope(law, h, q)
        if case.rain_rate:
            out = out - 2.0 * q * case.rain_rate / (G * h * h)
        if case.diffusion is not None:
            mu = 4.0 * case.diffusion.mu_h
            d2 = branch.d2h(x)
            out = out + mu / (G * h * h) * (-q * d2 + q / h * dh * dh)
        return out

    return rhs


@dataclass(frozen=True)
class SynthesizedTopography:
    """Topography integrated on the fine partition, normalized to min z = 0."""

    fine_x: np.ndarray
    fine_z: np.ndarray
    z_cells: np.ndarray   # samples at the requesting grid's cell centers
    z_outflow: float      # z at x = L (the lake-forming initial conditions use it)


def synthesize_topography(
    case: MacDonaldCase,
    grid: Grid1D,
    law: FrictionLaw | str | None = "manning",
    fine_factor: int = 5,
) -> SynthesizedTopography:
    """Integrate the steady momentum balance for z on a fine partition.

    The partition contains every cell center of `grid` plus the profile
    breakpoints, so cell samples are exact integrator nodes and the
    integrator never steps across a discontinuity of h_ex.
    """
    if isinstance(law, str) or law is None:
        law = resolve_law(case, law)
    nodes = refined_partition(case.length, grid.centers, case.breakpoints, fine_factor)
    fine_z = np.empty_like(nodes)
    offset = 0.0
    lo = 0
    bounds = (*case.breakpoints, case.length)
    for branch, hi_x in zip(case.branches, bounds):
        hi = int(np.searchsorted(nodes, hi_x, side="left"))
        seg = nodes[lo:hi + 1]
        seg_z = offset + cumulative_quadrature(_branch_rhs(case, branch, law), seg)
        fine_z[lo:hi + 1] = seg_z
        offset = seg_z[-1]
        lo = hi
    fine_z -= fine_z.min()
    z_outflow = float(fine_z[-1])
    idx = np.searchsorted(nodes, grid.centers)
    z_cells = fine_z[idx]
    return SynthesizedTopography(nodes, fine_z, z_cells, z_outflow)


def steady_solution(
    case: MacDonaldCase,
    grid: Grid1D,
    law: FrictionLaw | str | None = "manning",
    fine_factor: int = 5,
) -> FlowField:
    """Steady flow field: prescribed h_ex, affine discharge, synthesized bed."""
    if abs(grid.length - case.length) > 1e-9:
        raise DomainError(f"grid length {grid.length} != case length {case.length}")
    topo = synthesize_topography(case, grid, law, fine_factor)
    h, _ = hex_profile(case, grid.centers)
    q = case.discharge(grid.centers)
    return FlowField(grid, h, q / h, topo.z_cells)

"""Transitory dam-break solutions on a flat bed.

Stoker's wet-bed Riemann solution, Ritter's dry-bed solution and Dressler's
first-order Chezy-friction correction of Ritter. All evaluators are
pointwise in (t, x) and vectorized over x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import G, DomainError, FlowField, Grid1D, solve_bracketed


@dataclass(frozen=True)
class DamBreakSpec:
    h_left: float
    h_right: float
    x_dam: float
    length: float
    chezy: float | None = None  # only the friction (Dressler) case sets this

    def __post_init__(self):
        if not (self.h_left > self.h_right >= 0.0):
            raise DomainError("dam break requires h_left > h_right >= 0")
        if not (0.0 < self.x_dam < self.length):
            raise DomainError("dam must sit strictly inside the domain")


STOKER = DamBreakSpec(h_left=0.005, h_right=0.001, x_dam=5.0, length=10.0)
RITTER = DamBreakSpec(h_left=0.005, h_right=0.0, x_dam=5.0, length=10.0)
DRESSLER = DamBreakSpec(h_left=6.0, h_right=0.0, x_dam=1000.0, length=2000.0, chezy=40.0)


@dataclass(frozen=True)
class WaveStructure:
    """Wave positions at a given time plus the constants that locate them."""

    x_head: float                 # upstream edge of the rarefaction
    x_tail: float                 # downstream edge of the rarefaction
    x_shock: float | None = None  # Stoker only
    c_m: float | None = None      # Stoker middle-state celerity
    h_m: float | None = None      # Stoker middle-state height
    x_tip: float | None = None    # Dressler only: start of the tip region
    u_tip: float | None = None


def stoker_middle_state(spec: DamBreakSpec) -> tuple[float, float, float]:
    """(c_m, h_m, polynomial residual) for the wet-bed middle state.

    c_m = sqrt(g h_m) is the root of

        -8 g h_r c_m^2 (sqrt(g h_l) - c_m)^2
            + (c_m^2 - g h_r)^2 (c_m^2 + g h_r) = 0

    which matches the rarefaction invariant u_m = 2(sqrt(g h_l) - c_m) with
    the momentum jump u_m^2 = g (h_m - h_r)^2 (h_m + h_r) / (2 h_m h_r) of
    the right-going shock.
    """
    if spec.h_right <= 0.0:
        raise DomainError("Stoker middle state needs a wet right bed")
    ghl, ghr = G * spec.h_left, G * spec.h_right
    root_l = math.sqrt(ghl)

    def poly(c):
        c2 = c * c
        return -8.0 * ghr * c2 * (root_l - c) ** 2 + (c2 - ghr) ** 2 * (c2 + ghr)

    eps = 1e-9
    c_m = solve_bracketed(poly, math.sqrt(ghr) * (1.0 + eps), root_l * (1.0 - eps), tol=1e-14)
    return c_m, c_m * c_m / G, poly(c_m)


def stoker_structure(spec: DamBreakSpec, t: float) -> WaveStructure:
    c_m, h_m, _ = stoker_middle_state(spec)
    root_l = math.sqrt(G * spec.h_left)
    x_head = spec.x_dam - t * root_l
    x_tail = spec.x_dam + t * (2.0 * root_l - 3.0 * c_m)
    x_shock = spec.x_dam + t * 2.0 * c_m * c_m * (root_l - c_m) / (c_m * c_m - G * spec.h_right)
    return WaveStructure(x_head, x_tail, x_shock, c_m=c_m, h_m=h_m)


def _riemann_data(spec: DamBreakSpec, x: np.ndarray):
    h = np.where(x <= spec.x_dam, spec.h_left, spec.h_right)
    return h, np.zeros_like(h)


def stoker(spec: DamBreakSpec, t: float, x):
    """Wet-bed dam break: rarefaction, middle state, right-going shock."""
    if t < 0.0:
        raise DomainError("t must be >= 0")
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if t == 0.0:
        h, u = _riemann_data(spec, x_arr)
    else:
        ws = stoker_structure(spec, t)
        root_l = math.sqrt(G * spec.h_left)
        xi = (x_arr - spec.x_dam) / t
        h_fan = 4.0 / (9.0 * G) * (root_l - 0.5 * xi) ** 2
        u_fan = 2.0 / 3.0 * (xi + root_l)
        h = np.select(
            [x_arr <= ws.x_head, x_arr <= ws.x_tail, x_arr <= ws.x_shock],
            [spec.h_left, h_fan, ws.h_m],
            default=spec.h_right,
        )
        u = np.select(
            [x_arr <= ws.x_head, x_arr <= ws.x_tail, x_arr <= ws.x_shock],
            [0.0, u_fan, 2.0 * (root_l - ws.c_m)],
            default=0.0,
        )
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(h[0]), float(u[0])
    return h, u


def ritter_structure(spec: DamBreakSpec, t: float) -> WaveStructure:
    root_l = math.sqrt(G * spec.h_left)
    return WaveStructure(spec.x_dam - t * root_l, spec.x_dam + 2.0 * t * root_l)


def ritter(spec: DamBreakSpec, t: float, x):
    """Dry-bed dam break: parabolic fan down to the wetting front."""
    if t < 0.0:
        raise DomainError("t must be >= 0")
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if t == 0.0:
        h, u = _riemann_data(spec, x_arr)
    else:
        ws = ritter_structure(spec, t)
        root_l = math.sqrt(G * spec.h_left)
        xi = (x_arr - spec.x_dam) / t
        h_fan = 4.0 / (9.0 * G) * (root_l - 0.5 * xi) ** 2
        u_fan = 2.0 / 3.0 * (xi + root_l)
        h = np.select([x_arr <= ws.x_head, x_arr <= ws.x_tail], [spec.h_left, h_fan], default=0.0)
        u = np.select([x_arr <= ws.x_head, x_arr <= ws.x_tail], [0.0, u_fan], default=0.0)
        u[h <= 0.0] = 0.0
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(h[0]), float(u[0])
    return h, u


# Dressler's alpha corrections blow up as xi -> 2 (the wave tip); the tip
# search window stays clear of the singularity by this margin in xi.
_XI_CLIP = 1e-9


def _dressler_alpha(xi):
    b = 2.0 - xi
    a1 = 6.0 / (5.0 * b) - 2.0 / 3.0 + 4.0 * math.sqrt(3.0) / 135.0 * b ** 1.5
    a2 = (12.0 / b - 8.0 / 3.0 + 8.0 * math.sqrt(3.0) / 189.0 * b ** 1.5
          - 108.0 / (7.0 * b * b))
    return a1, a2


def _dressler_raw(spec: DamBreakSpec, t: float, x):
    """Corrected state (h_co, u_co) inside the fan, vectorized."""
    root_l = math.sqrt(G * spec.h_left)
    xi = (np.asarray(x, dtype=float) - spec.x_dam) / (t * root_l)
    a1, a2 = _dressler_alpha(xi)
    co = G * G / spec.chezy ** 2 * t
    h_co = (2.0 / 3.0 * root_l - (np.asarray(x) - spec.x_dam) / (3.0 * t) + co * a1) ** 2 / G
    u_co = 2.0 / 3.0 * root_l + 2.0 * (np.asarray(x) - spec.x_dam) / (3.0 * t) + co * a2
    return h_co, u_co


def dressler_structure(spec: DamBreakSpec, t: float, scan_points: int = 10000) -> WaveStructure:
    """Fronts plus the tip boundary x_T = argmax of the corrected velocity.

    Scan on a uniform grid, then golden-section refinement to 1e-10 m.
    """
    if spec.chezy is None or spec.chezy <= 0.0:
        raise DomainError("Dressler needs a positive Chezy coefficient")
    root_l = math.sqrt(G * spec.h_left)
    x_head = spec.x_dam - t * root_l
    x_tail = spec.x_dam + 2.0 * t * root_l
    if t <= 0.0:
        return WaveStructure(x_head, x_tail, x_tip=x_tail, u_tip=0.0)
    span = x_tail - x_head
    lo = x_head
    hi = x_tail - _XI_CLIP * span

    def u_at(xv):
        return float(_dressler_raw(spec, t, xv)[1])

    xs = np.linspace(lo, hi, scan_points)
    us = _dressler_raw(spec, t, xs)[1]
    k = int(np.argmax(us))
    a = xs[max(0, k - 1)]
    b = xs[min(scan_points - 1, k + 1)]
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = u_at(c), u_at(d)
    while b - a > 1e-10:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = u_at(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = u_at(d)
    x_tip = 0.5 * (a + b)
    return WaveStructure(x_head, x_tail, x_tip=x_tip, u_tip=u_at(x_tip))


def dressler(spec: DamBreakSpec, t: float, x):
    """Dry-bed dam break with Chezy friction (first-order correction).

    Height keeps the corrected profile in the tip region; only the velocity
    is replaced by the constant u_tip there.
    """
    if t < 0.0:
        raise DomainError("t must be >= 0")
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if t == 0.0:
        h, u = _riemann_data(spec, x_arr)
    else:
        ws = dressler_structure(spec, t)
        h = np.full_like(x_arr, spec.h_left)
        u = np.zeros_like(x_arr)
        fan = (x_arr > ws.x_head) & (x_arr <= ws.x_tail)
        if np.any(fan):
            h_co, u_co = _dressler_raw(spec, t, x_arr[fan])
            u_fan = np.where(x_arr[fan] <= ws.x_tip, u_co, ws.u_tip)
            h[fan] = h_co
            u[fan] = u_fan
        dry = x_arr > ws.x_tail
        h[dry] = 0.0
        u[dry] = 0.0
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(h[0]), float(u[0])
    return h, u


def sample(kind: str, spec: DamBreakSpec, grid: Grid1D, t: float) -> FlowField:
    """Evaluate one of the three solutions on a cell-centered grid."""
    fn = {"stoker": stoker, "ritter": ritter, "dressler": dressler}[kind]
    h, u = fn(spec, t, grid.centers)
    return FlowField(grid, h, u, np.zeros_like(h))

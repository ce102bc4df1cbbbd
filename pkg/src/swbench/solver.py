"""Reference well-balanced 1D finite-volume shallow-water solver.

HLL interface fluxes on hydrostatically reconstructed states, optional
minmod-MUSCL second order (reconstructing h, u and the free surface h+z)
with Heun time stepping, semi-implicit friction, and a uniform rain source.
Ghost-cell boundary conditions. The scheme preserves lakes at rest exactly
and keeps h >= 0 by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import (
    G,
    H_DRY,
    Chezy,
    DarcyWeisbach,
    FlowField,
    FrictionLaw,
    Grid1D,
    LaminarTurbulent,
    LinearDrag,
    Manning,
    critical_height,
    solve_bracketed,
)


class SolverError(RuntimeError):
    """Time-step collapse or non-finite state during a run."""


@dataclass(frozen=True)
class BoundaryCondition:
    """Ghost-cell recipe for one side of the domain.

    kinds: 'free' (copy h and q), 'wall' (mirror, q negated),
    'discharge' (impose q; height from the outgoing Riemann invariant,
    critical depth on a dry boundary cell), 'height' (impose h; discharge
    from the outgoing invariant), 'both' (impose h and q; supercritical
    inflow), 'height_if_subcritical' (imposed height while the boundary
    cell is subcritical, free outflow once it turns torrential).
    """

    kind: str
    h: float | None = None
    q: float | None = None


FREE = BoundaryCondition("free")
WALL = BoundaryCondition("wall")


@dataclass
class SolverConfig:
    order: int = 2
    cfl: float = 0.4
    friction: FrictionLaw = None
    rain: Callable[[float], float] | None = None
    h_dry: float = H_DRY
    steady_tol: float | None = 1e-10
    max_steps: int = 20_000_000

    def __post_init__(self):
        if not (0.0 < self.cfl <= 1.0):
            raise ValueError("CFL number must lie in (0, 1]")
        if self.order not in (1, 2):
            raise ValueError("order must be 1 or 2")


@dataclass
class SolverResult:
    field: FlowField
    t: float
    n_steps: int
    residuals: list = field(default_factory=list)  # (t, ||dh||_mean / dt) samples
    reached_steady: bool = False


def minmod_slopes(v: np.ndarray, dx: float) -> np.ndarray:
    """Minmod-limited slopes; zero in the two outermost cells."""
    s = np.zeros_like(v)
    d = np.diff(v)
    left, right = d[:-1], d[1:]
    pick = np.where(np.abs(left) < np.abs(right), left, right)
    s[1:-1] = np.where(left * right > 0.0, pick, 0.0) / dx
    return s


def hydrostatic_reconstruction(h_l, z_l, h_r, z_r):
    """Interface heights max(0, h + z - max(z_l, z_r)) on both sides."""
    z_star = np.maximum(z_l, z_r)
    h_ls = np.maximum(np.asarray(h_l) + z_l - z_star, 0.0)
    h_rs = np.maximum(np.asarray(h_r) + z_r - z_star, 0.0)
    return h_ls, h_rs


def hll_flux(h_l, q_l, h_r, q_r, h_dry: float = H_DRY):
    """HLL numerical flux with Davis wave-speed bounds.

    Dry-side bounds use the dam-break front speed u +/- 2 sqrt(gh) of the
    wet state; identical left/right states return the exact physical flux;
    a dry pair returns zero flux.
    """
    h_l = np.asarray(h_l, dtype=float)
    q_l = np.asarray(q_l, dtype=float)
    h_r = np.asarray(h_r, dtype=float)
    q_r = np.asarray(q_r, dtype=float)
    u_l = np.where(h_l > h_dry, q_l / np.maximum(h_l, h_dry), 0.0)
    u_r = np.where(h_r > h_dry, q_r / np.maximum(h_r, h_dry), 0.0)
    c_l = np.sqrt(G * h_l)
    c_r = np.sqrt(G * h_r)
    s_l = np.minimum(u_l - c_l, u_r - c_r)
    s_r = np.maximum(u_l + c_l, u_r + c_r)
    l_dry = h_l <= h_dry
    r_dry = h_r <= h_dry
    s_l = np.where(l_dry & ~r_dry, u_r - 2.0 * c_r, s_l)
    s_r = np.where(l_dry & ~r_dry, u_r + c_r, s_r)
    s_l = np.where(r_dry & ~l_dry, u_l - c_l, s_l)
    s_r = np.where(r_dry & ~l_dry, u_l + 2.0 * c_l, s_r)

    f_l_mass = q_l
    f_l_mom = q_l * u_l + 0.5 * G * h_l * h_l
    f_r_mass = q_r
    f_r_mom = q_r * u_r + 0.5 * G * h_r * h_r

    span = s_r - s_l
    safe = np.where(span > 0.0, span, 1.0)
    mid_mass = (s_r * f_l_mass - s_l * f_r_mass + s_l * s_r * (h_r - h_l)) / safe
    mid_mom = (s_r * f_l_mom - s_l * f_r_mom + s_l * s_r * (q_r - q_l)) / safe

    f_mass = np.where(s_l >= 0.0, f_l_mass, np.where(s_r <= 0.0, f_r_mass, mid_mass))
    f_mom = np.where(s_l >= 0.0, f_l_mom, np.where(s_r <= 0.0, f_r_mom, mid_mom))
    same = (h_l == h_r) & (q_l == q_r)
    f_mass = np.where(same, f_l_mass, f_mass)
    f_mom = np.where(same, f_l_mom, f_mom)
    both_dry = l_dry & r_dry
    f_mass = np.where(both_dry, 0.0, f_mass)
    f_mom = np.where(both_dry, 0.0, f_mom)
    if f_mass.ndim == 0:
        return float(f_mass), float(f_mom)
    return f_mass, f_mom


class ShallowWaterSolver1D:
    """Owns one run's state; not shared between threads."""

    def __init__(
        self,
        grid: Grid1D,
        z: np.ndarray,
        h0: np.ndarray,
        q0: np.ndarray,
        bc_left: BoundaryCondition,
        bc_right: BoundaryCondition,
        config: SolverConfig | None = None,
    ):
        self.grid = grid
        self.config = config or SolverConfig()
        self.bc_left = bc_left
        self.bc_right = bc_right
        n = grid.n_cells
        self.h = np.zeros(n + 4)
        self.q = np.zeros(n + 4)
        self.z = np.zeros(n + 4)
        self.h[2:-2] = np.asarray(h0, dtype=float)
        self.q[2:-2] = np.asarray(q0, dtype=float)
        self.z[2:-2] = np.asarray(z, dtype=float)
        for side, bc in ((0, bc_left), (1, bc_right)):
            if bc.kind == "wall":  # mirror topography for exact wall symmetry
                if side == 0:
                    self.z[1], self.z[0] = self.z[2], self.z[3]
                else:
                    self.z[-2], self.z[-1] = self.z[-3], self.z[-4]
            elif n >= 2:
                # continue the local bed slope into the ghosts; flattening it
                # would bias the boundary cells' topography source
                if side == 0:
                    slope = self.z[3] - self.z[2]
                    self.z[1] = self.z[2] - slope
                    self.z[0] = self.z[2] - 2.0 * slope
                else:
                    slope = self.z[-3] - self.z[-4]
                    self.z[-2] = self.z[-3] + slope
                    self.z[-1] = self.z[-3] + 2.0 * slope
            else:
                self.z[0] = self.z[1] = self.z[2]
                self.z[-1] = self.z[-2] = self.z[-3]
        self._flush_dry()
        self.t = 0.0
        self.n_steps = 0

    # -- state helpers ---------------------------------------------------

    def _flush_dry(self):
        h = self.h[2:-2]
        dry = h <= self.config.h_dry
        self.h[2:-2] = np.where(dry, 0.0, h)
        self.q[2:-2] = np.where(dry, 0.0, self.q[2:-2])

    def field(self) -> FlowField:
        h = self.h[2:-2].copy()
        q = self.q[2:-2].copy()
        u = np.where(h > self.config.h_dry, q / np.maximum(h, self.config.h_dry), 0.0)
        return FlowField(self.grid, h, u, self.z[2:-2].copy())

    def _imposed_height_state(self, h_imp: float, h_in: float, q_in: float, sign: float):
        """Ghost for an imposed height: the outgoing Riemann invariant
        u + sign*2c is carried into the ghost (sign = +1 right boundary,
        -1 left)."""
        if h_in <= self.config.h_dry:
            return h_imp, q_in
        u_in = q_in / h_in
        u_g = u_in + sign * 2.0 * (math.sqrt(G * h_in) - math.sqrt(G * h_imp))
        return h_imp, h_imp * u_g

    def _imposed_discharge_state(self, q_imp: float, h_in: float, q_in: float, sign: float):
        """Ghost for an imposed discharge: height from the outgoing
        invariant; critical depth when the boundary cell is dry (so inflow
        onto a dry bed stays well-posed)."""
        h_crit = critical_height(abs(q_imp))
        if h_in <= max(self.config.h_dry, 1e-8):
            return h_crit, q_imp
        inv = q_in / h_in + sign * 2.0 * math.sqrt(G * h_in)

        def f(h):
            return q_imp / h + sign * 2.0 * math.sqrt(G * h) - inv

        lo, hi = 1e-8, max(10.0 * h_in, 10.0 * h_crit, 1.0)
        if f(lo) * f(hi) > 0.0:
            return max(h_in, h_crit), q_imp
        h_g = solve_bracketed(f, lo, hi, tol=1e-10)
        return h_g, q_imp

    def _ghost_state(self, bc: BoundaryCondition, h_in: float, q_in: float, sign: float):
        if bc.kind == "free":
            return h_in, q_in
        if bc.kind == "discharge":
            return self._imposed_discharge_state(bc.q, h_in, q_in, sign)
        if bc.kind == "height":
            return self._imposed_height_state(bc.h, h_in, q_in, sign)
        if bc.kind == "both":
            return bc.h, bc.q
        if bc.kind == "height_if_subcritical":
            if h_in > self.config.h_dry:
                fr = abs(q_in) / (h_in * math.sqrt(G * h_in))
                if fr >= 1.0:
                    return h_in, q_in
            return self._imposed_height_state(bc.h, h_in, q_in, sign)
        raise ValueError(f"unknown boundary kind {bc.kind!r}")

    def _fill_ghosts(self):
        h, q = self.h, self.q
        if self.bc_left.kind == "wall":
            h[1], q[1] = h[2], -q[2]
            h[0], q[0] = h[3], -q[3]
        else:
            gh, gq = self._ghost_state(self.bc_left, h[2], q[2], -1.0)
            h[0] = h[1] = gh
            q[0] = q[1] = gq
        if self.bc_right.kind == "wall":
            h[-2], q[-2] = h[-3], -q[-3]
            h[-1], q[-1] = h[-4], -q[-4]
        else:
            gh, gq = self._ghost_state(self.bc_right, h[-3], q[-3], 1.0)
            h[-1] = h[-2] = gh
            q[-1] = q[-2] = gq

    # -- spatial operator --------------------------------------------------

    def _hyperbolic_rhs(self):
        cfg = self.config
        dx = self.grid.dx
        h, q, z = self.h, self.q, self.z
        hd = cfg.h_dry
        u = np.where(h > hd, q / np.maximum(h, hd), 0.0)
        eta = h + z

        if cfg.order == 2:
            sh = minmod_slopes(h, dx)
            su = minmod_slopes(u, dx)
            se = minmod_slopes(eta, dx)
            # first order next to dry cells: reconstruction there is noise
            wet = h > hd
            interior_wet = wet.copy()
            interior_wet[1:-1] &= wet[:-2] & wet[2:]
            sh[~interior_wet] = 0.0
            su[~interior_wet] = 0.0
            se[~interior_wet] = 0.0
            half = 0.5 * dx
            h_w, h_e = h - half * sh, h + half * sh
            u_w, u_e = u - half * su, u + half * su
            eta_w, eta_e = eta - half * se, eta + half * se
        else:
            h_w = h_e = h
            u_w = u_e = u
            eta_w = eta_e = eta

        z_w = eta_w - h_w
        z_e = eta_e - h_e

        # interface k sits between padded cells k+1 and k+2
        hl, ul, etal, zl = h_e[1:-2], u_e[1:-2], eta_e[1:-2], z_e[1:-2]
        hr, ur, etar, zr = h_w[2:-1], u_w[2:-1], eta_w[2:-1], z_w[2:-1]

        z_star = np.maximum(zl, zr)
        hls = np.maximum(etal - z_star, 0.0)
        hrs = np.maximum(etar - z_star, 0.0)
        f_mass, f_mom = hll_flux(hls, hls * ul, hrs, hrs * ur, hd)

        # hydrostatic pressure corrections per Audusse et al.
        f_mom_left = f_mom + 0.5 * G * (hl * hl - hls * hls)
        f_mom_right = f_mom + 0.5 * G * (hr * hr - hrs * hrs)

        n = self.grid.n_cells
        dh = -(f_mass[1:n + 1] - f_mass[0:n]) / dx
        centered = 0.5 * G * (h_w[2:-2] + h_e[2:-2]) * (z_e[2:-2] - z_w[2:-2])
        dq = -(f_mom_left[1:n + 1] - f_mom_right[0:n] + centered) / dx
        return dh, dq

    def _apply_friction(self, dt: float):
        law = self.config.friction
        if law is None:
            return
        hd = self.config.h_dry
        h = self.h[2:-2]
        q = self.q[2:-2]
        wet = h > hd
        hw = np.maximum(h, hd)
        if isinstance(law, Manning):
            denom = 1.0 + dt * G * law.n ** 2 * np.abs(q) / hw ** (7.0 / 3.0)
        elif isinstance(law, DarcyWeisbach):
            denom = 1.0 + dt * G * law.f / (8.0 * G) * np.abs(q) / (hw * hw)
        elif isinstance(law, Chezy):
            denom = 1.0 + dt * G / law.c ** 2 * np.abs(q) / (hw * hw)
        elif isinstance(law, LinearDrag):
            denom = np.full_like(h, 1.0 + dt * law.tau)
        elif isinstance(law, LaminarTurbulent):
            denom = 1.0 + dt * (law.alpha0(hw) + law.alpha1(hw) * np.abs(q) / hw) / hw
        else:  # pragma: no cover
            raise TypeError(f"unsupported friction law {law!r}")
        self.q[2:-2] = np.where(wet, q / denom, 0.0)

    def _max_speed(self) -> float:
        hd = self.config.h_dry
        h = self.h
        u = np.where(h > hd, self.q / np.maximum(h, hd), 0.0)
        lam = np.abs(u) + np.sqrt(G * np.maximum(h, 0.0))
        return float(lam.max())

    def _euler_stage(self, dt: float, t_stage: float):
        self._fill_ghosts()
        dh, dq = self._hyperbolic_rhs()
        self.h[2:-2] = np.maximum(self.h[2:-2] + dt * dh, 0.0)
        self.q[2:-2] += dt * dq
        if self.config.rain is not None:
            self.h[2:-2] += dt * float(self.config.rain(t_stage))
        self._apply_friction(dt)
        self._flush_dry()

    def step(self, dt_cap: float | None = None) -> float:
        """Advance one CFL-limited step (Heun when order 2); returns dt."""
        cfg = self.config
        self._fill_ghosts()
        lam = self._max_speed()
        dt = cfg.cfl * self.grid.dx / lam if lam > 1e-12 else cfg.cfl * self.grid.dx
        if dt_cap is not None:
            dt = min(dt, dt_cap)
        if dt < 1e-12:
            raise SolverError(
                f"time step underflow (dt={dt:.3e}) at t={self.t:.6g}, "
                f"step {self.n_steps}, max wave speed {lam:.3e}"
            )
        if cfg.order == 1:
            self._euler_stage(dt, self.t)
        else:
            h0 = self.h[2:-2].copy()
            q0 = self.q[2:-2].copy()
            self._euler_stage(dt, self.t)
            self._euler_stage(dt, self.t + dt)
            self.h[2:-2] = 0.5 * (h0 + self.h[2:-2])
            self.q[2:-2] = 0.5 * (q0 + self.q[2:-2])
            self._flush_dry()
        if not (np.all(np.isfinite(self.h[2:-2])) and np.all(np.isfinite(self.q[2:-2]))):
            raise SolverError(
                f"solution blew up at t={self.t:.6g}, step {self.n_steps}"
            )
        self.t += dt
        self.n_steps += 1
        return dt

    def run(self, t_end: float, steady_tol: float | None = "config") -> SolverResult:
        """March to t_end, or stop earlier once ||h^{n+1}-h^n||/dt falls
        below the steady threshold (mean absolute height change per second).

        `steady_tol=None` disables the early stop; the default defers to the
        config.
        """
        if steady_tol == "config":
            steady_tol = self.config.steady_tol
        residuals: list = []
        reached_steady = False
        while self.t < t_end - 1e-12:
            if self.n_steps >= self.config.max_steps:
                raise SolverError(f"exceeded max_steps={self.config.max_steps}")
            h_prev = self.h[2:-2].copy()
            dt = self.step(dt_cap=t_end - self.t)
            res = float(np.mean(np.abs(self.h[2:-2] - h_prev))) / dt
            residuals.append((self.t, res))
            if steady_tol is not None and res < steady_tol and self.n_steps > 10:
                reached_steady = True
                break
        return SolverResult(self.field(), self.t, self.n_steps, residuals, reached_steady)

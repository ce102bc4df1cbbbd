"""Periodic and damped moving-shoreline solutions in parabolic basins.

One-dimensional planar oscillation in a parabola, its damped (linear
friction) variant, and two solutions in a paraboloid of revolution: the
radially symmetric oscillation and the rotating planar surface. Evaluators
are pointwise in time and space; dry points report h = 0, zero velocity and
the basin topography.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import G, DomainError, FlowField, FlowField2D, Grid1D, Grid2D


@dataclass(frozen=True)
class Thacker1DSpec:
    half_width: float = 1.0   # a: half-width of the wet span
    depth: float = 0.5        # h0: bowl depth scale
    length: float = 4.0

    @property
    def amplitude(self) -> float:
        """Velocity amplitude B = sqrt(2 g h0) / (2 a)."""
        return math.sqrt(2.0 * G * self.depth) / (2.0 * self.half_width)

    @property
    def pulsation(self) -> float:
        return math.sqrt(2.0 * G * self.depth) / self.half_width

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.pulsation


@dataclass(frozen=True)
class ThackerRadialSpec:
    radius: float = 1.0       # a: radius of the zero-elevation circle
    shoreline: float = 0.8    # r0: initial shoreline radius (enters via A)
    depth: float = 0.1        # h0: center depth at zero elevation
    length: float = 4.0

    def __post_init__(self):
        if not (0.0 < self.shoreline < self.radius):
            raise DomainError("radial case requires 0 < r0 < a")

    @property
    def shape(self) -> float:
        """A = (a^2 - r0^2) / (a^2 + r0^2)."""
        a2, r2 = self.radius ** 2, self.shoreline ** 2
        return (a2 - r2) / (a2 + r2)

    @property
    def pulsation(self) -> float:
        return math.sqrt(8.0 * G * self.depth) / self.radius

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.pulsation


@dataclass(frozen=True)
class ThackerPlanarSpec:
    radius: float = 1.0
    depth: float = 0.1
    offset: float = 0.5       # eta: offset of the rotating planar surface
    length: float = 4.0

    @property
    def pulsation(self) -> float:
        return math.sqrt(2.0 * G * self.depth) / self.radius

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.pulsation


@dataclass(frozen=True)
class SampsonSpec:
    half_width: float = 3000.0
    depth: float = 10.0
    drag: float = 0.001       # tau of the linear friction law
    amplitude: float = 5.0    # B, velocity scale
    length: float = 10000.0

    def __post_init__(self):
        if self.peak_rate <= self.drag:
            raise DomainError("Sampson closed form needs p > tau (under-damped)")

    @property
    def peak_rate(self) -> float:
        """p = sqrt(8 g h0 / a^2)."""
        return math.sqrt(8.0 * G * self.depth / self.half_width ** 2)

    @property
    def damped_rate(self) -> float:
        """s = sqrt(p^2 - tau^2) / 2."""
        return math.sqrt(self.peak_rate ** 2 - self.drag ** 2) / 2.0


# --- 1D parabola ------------------------------------------------------------

def bowl_1d(spec: Thacker1DSpec, x):
    """Parabolic bowl z = h0 ((x - L/2)^2 / a^2 - 1)."""
    xc = np.asarray(x, dtype=float) - 0.5 * spec.length
    return spec.depth * ((xc / spec.half_width) ** 2 - 1.0)


def thacker1d_shorelines(spec: Thacker1DSpec, t: float) -> tuple[float, float]:
    c = math.cos(spec.pulsation * t)
    mid = 0.5 * spec.length
    return (-0.5 * c - spec.half_width + mid, -0.5 * c + spec.half_width + mid)


def thacker1d(spec: Thacker1DSpec, t: float, x):
    """Planar oscillation: parabolic cap sliding in the bowl."""
    if t < 0.0:
        raise DomainError("t must be >= 0")
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    a, h0 = spec.half_width, spec.depth
    c = math.cos(spec.pulsation * t)
    ratio = spec.amplitude / math.sqrt(2.0 * G * h0)   # equals 1/(2a)
    arg = (x_arr - 0.5 * spec.length) / a + ratio * c
    h = np.maximum(-h0 * (arg * arg - 1.0), 0.0)
    u = np.where(h > 0.0, spec.amplitude * math.sin(spec.pulsation * t), 0.0)
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(h[0]), float(u[0])
    return h, u


# --- radially symmetric paraboloid -------------------------------------------

def paraboloid(spec, x, y):
    """z(r) = -h0 (1 - r^2 / a^2) around the domain center."""
    xc = np.asarray(x, dtype=float) - 0.5 * spec.length
    yc = np.asarray(y, dtype=float) - 0.5 * spec.length
    r2 = xc * xc + yc * yc
    return -spec.depth * (1.0 - r2 / spec.radius ** 2)


def thacker_radial(spec: ThackerRadialSpec, t: float, x, y):
    """Radial oscillation of the free surface in a paraboloid."""
    if t < 0.0:
        raise DomainError("t must be >= 0")
    x_arr = np.asarray(x, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    a_shape = spec.shape
    omega = spec.pulsation
    h0, a = spec.depth, spec.radius
    denom = 1.0 - a_shape * math.cos(omega * t)
    xc = x_arr - 0.5 * spec.length
    yc = y_arr - 0.5 * spec.length
    r2 = xc * xc + yc * yc
    sq = math.sqrt(1.0 - a_shape * a_shape)
    h = h0 * (sq / denom - 1.0 - r2 / a ** 2 * ((1.0 - a_shape * a_shape) / denom ** 2 - 1.0)) \
        - paraboloid(spec, x_arr, y_arr)
    h = np.maximum(h, 0.0)
    factor = 0.5 * omega * a_shape * math.sin(omega * t) / denom
    u = np.where(h > 0.0, factor * xc, 0.0)
    v = np.where(h > 0.0, factor * yc, 0.0)
    if np.isscalar(x) and np.isscalar(y):
        return float(h), float(u), float(v)
    return h, u, v


# --- rotating planar surface in a paraboloid ---------------------------------

def thacker_planar(spec: ThackerPlanarSpec, t: float, x, y):
    """Planar free surface rotating in a paraboloid (liquid in a glass)."""
    if t < 0.0:
        raise DomainError("t must be >= 0")
    x_arr = np.asarray(x, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    omega = spec.pulsation
    eta, h0, a = spec.offset, spec.depth, spec.radius
    xc = x_arr - 0.5 * spec.length
    yc = y_arr - 0.5 * spec.length
    c, s = math.cos(omega * t), math.sin(omega * t)
    h = eta * h0 / a ** 2 * (2.0 * xc * c + 2.0 * yc * s - eta) - paraboloid(spec, x_arr, y_arr)
    h = np.maximum(h, 0.0)
    u = np.where(h > 0.0, -eta * omega * s, 0.0)
    v = np.where(h > 0.0, eta * omega * c, 0.0)
    if np.isscalar(x) and np.isscalar(y):
        return float(h), float(u), float(v)
    return h, u, v


# --- damped 1D oscillation ----------------------------------------------------

def bowl_sampson(spec: SampsonSpec, x):
    """z = h0 (x - L/2)^2 / a^2 (non-negative bowl)."""
    xc = np.asarray(x, dtype=float) - 0.5 * spec.length
    return spec.depth * (xc / spec.half_width) ** 2


def sampson_shorelines(spec: SampsonSpec, t: float) -> tuple[float, float]:
    tau, s, b = spec.drag, spec.damped_rate, spec.amplitude
    a, h0 = spec.half_width, spec.depth
    core = a * a * math.exp(-tau * t / 2.0) / (2.0 * G * h0) * (
        -b * s * math.cos(s * t) - tau * b / 2.0 * math.sin(s * t)
    )
    mid = 0.5 * spec.length
    return core - a + mid, core + a + mid


def sampson(spec: SampsonSpec, t: float, x):
    """Damped planar oscillation in a parabola with linear friction."""
    if t < 0.0:
        raise DomainError("t must be >= 0")
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    tau, s, b = spec.drag, spec.damped_rate, spec.amplitude
    a, h0 = spec.half_width, spec.depth
    xc = x_arr - 0.5 * spec.length
    decay = math.exp(-tau * t)
    half_decay = math.exp(-tau * t / 2.0)
    surface = (
        h0
        + a * a * b * b * decay / (8.0 * G * G * h0) * (
            -s * tau * math.sin(2.0 * s * t) + (tau * tau / 4.0 - s * s) * math.cos(2.0 * s * t)
        )
        - b * b * decay / (4.0 * G)
        - half_decay / G * (b * s * math.cos(s * t) + tau * b / 2.0 * math.sin(s * t)) * xc
    )
    x1, x2 = sampson_shorelines(spec, t)
    wet = (x_arr >= x1) & (x_arr <= x2)
    h = np.where(wet, np.maximum(surface - bowl_sampson(spec, x_arr), 0.0), 0.0)
    u = np.where(wet & (h > 0.0), b * half_decay * math.sin(s * t), 0.0)
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(h[0]), float(u[0])
    return h, u


# --- grid sampling -------------------------------------------------------------

def sample_1d(kind: str, spec, grid: Grid1D, t: float) -> FlowField:
    if kind == "thacker1d":
        h, u = thacker1d(spec, t, grid.centers)
        z = bowl_1d(spec, grid.centers)
    elif kind == "sampson":
        h, u = sampson(spec, t, grid.centers)
        z = bowl_sampson(spec, grid.centers)
    else:
        raise DomainError(f"unknown 1D oscillation {kind!r}")
    return FlowField(grid, h, u, z)


def sample_2d(kind: str, spec, grid: Grid2D, t: float) -> FlowField2D:
    xx = grid.x_centers[:, None]
    yy = grid.y_centers[None, :]
    if kind == "radial":
        h, u, v = thacker_radial(spec, t, xx, yy)
    elif kind == "planar":
        h, u, v = thacker_planar(spec, t, xx, yy)
    else:
        raise DomainError(f"unknown 2D oscillation {kind!r}")
    shape = np.broadcast(xx, yy).shape
    z = np.broadcast_to(paraboloid(spec, xx, yy), shape).copy()
    return FlowField2D(grid, np.broadcast_to(h, shape).copy(),
                       np.broadcast_to(u, shape).copy(),
                       np.broadcast_to(v, shape).copy(), z)

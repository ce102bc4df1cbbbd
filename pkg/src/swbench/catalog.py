"""Case registry: stable addresses for every benchmark solution.

An address is (dimension, type, number); numbering follows the catalog
tables reproduced in the README. Each entry knows how to evaluate its
analytic solution on a grid, how to set up the reference solver run
(initial conditions, boundary conditions, friction, rain, final time), and
which error band a solver comparison is held to.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import bump, dambreak, macdonald, oscillations, pseudo2d
from .core import (
    Chezy,
    DomainError,
    FlowField,
    FlowField2D,
    FrictionLaw,
    Grid1D,
    Grid2D,
    H_DRY,
    LinearDrag,
)
from .solver import (
    BoundaryCondition,
    ShallowWaterSolver1D,
    SolverConfig,
    SolverResult,
)


class UnknownCaseError(ValueError):
    """Address does not resolve to a catalog entry."""


@dataclass
class FieldBundle:
    """Analytic field plus everything the ASCII writer needs."""

    field: FlowField | FlowField2D
    params: dict
    froude: np.ndarray | None = None   # section-aware override (pseudo-2D)
    h_crit: np.ndarray | None = None


@dataclass(frozen=True)
class Scenario:
    """Solver setup reproducing a case's published initial/boundary data."""

    grid: Grid1D
    z: np.ndarray
    h0: np.ndarray
    q0: np.ndarray
    bc_left: BoundaryCondition
    bc_right: BoundaryCondition
    friction: FrictionLaw
    rain: Callable[[float], float] | None
    t_end: float
    steady_stop: bool
    steady_min_t: float = 0.0


@dataclass(frozen=True)
class Band:
    """Pass/fail thresholds for a solver-vs-analytic comparison."""

    max_abs_rel_percent: float | None = None
    exclude_x: Callable[[float], tuple[float, ...]] | None = None
    exclude_radius_cells: int = 2
    x_range: Callable[[float], tuple[float, float]] | None = None
    front_x: Callable[[float], float] | None = None
    front_lag_max: float | None = None
    front_never_ahead: bool = False
    require_contiguous_front: bool = False


@dataclass
class BandResult:
    passed: bool
    messages: list = field(default_factory=list)
    metrics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Entry:
    dim: int
    kind: str
    number: int
    slug: str
    title: str
    transient: bool = False
    default_time: float | None = None
    build: Callable | None = None            # (grid, t, overrides) -> FieldBundle
    make_scenario: Callable | None = None    # (n_cells, law, overrides) -> Scenario
    band: Band | None = None
    friction_variants: tuple[str, ...] = ()

    @property
    def address(self) -> tuple[int, str, int]:
        return (self.dim, self.kind, self.number)

    @property
    def label(self) -> str:
        return f"{self.dim} {self.kind} {self.number} ({self.slug})"


def _apply_overrides(obj, overrides: dict):
    if not overrides:
        return obj
    names = {f.name for f in dataclasses.fields(obj)}
    bad = set(overrides) - names
    if bad:
        raise DomainError(
            f"unknown parameter(s) {sorted(bad)}; this case exposes {sorted(names)}"
        )
    return dataclasses.replace(obj, **overrides)


def _reject_overrides(overrides: dict, why: str):
    if overrides:
        raise DomainError(f"parameters of this case cannot be overridden ({why})")


# --------------------------------------------------------------------------
# bump entries
# --------------------------------------------------------------------------

def _bump_grid_check(grid: Grid1D):
    if abs(grid.length - bump.LENGTH) > 1e-9:
        raise DomainError(f"bump cases live on a {bump.LENGTH} m domain")


def _build_lake(kind: str, surface: float):
    def build(grid: Grid1D, t, overrides: dict) -> FieldBundle:
        _bump_grid_check(grid)
        eta = float(overrides.pop("surface", surface))
        _reject_overrides(overrides, "only 'surface' is adjustable")
        return FieldBundle(bump.lake_at_rest(grid, kind, surface=eta),
                           {"surface": eta, "q0": 0.0})
    return build


def _build_bump_sub(grid: Grid1D, t, overrides: dict) -> FieldBundle:
    _bump_grid_check(grid)
    q0 = float(overrides.pop("q0", bump.SUBCRITICAL_Q))
    h_out = float(overrides.pop("h_out", bump.SUBCRITICAL_H_OUT))
    _reject_overrides(overrides, "adjustable: q0, h_out")
    return FieldBundle(bump.bump_subcritical(grid, q0=q0, h_out=h_out),
                       {"q0": q0, "h_out": h_out})


def _build_bump_trans(grid: Grid1D, t, overrides: dict) -> FieldBundle:
    _bump_grid_check(grid)
    q0 = float(overrides.pop("q0", bump.TRANSCRITICAL_Q))
    _reject_overrides(overrides, "adjustable: q0")
    return FieldBundle(bump.bump_transcritical_noshock(grid, q0=q0), {"q0": q0})


def _build_bump_shock(grid: Grid1D, t, overrides: dict) -> FieldBundle:
    _bump_grid_check(grid)
    q0 = float(overrides.pop("q0", bump.SHOCK_Q))
    h_out = float(overrides.pop("h_out", bump.SHOCK_H_OUT))
    _reject_overrides(overrides, "adjustable: q0, h_out")
    ff, shock = bump.bump_transcritical_shock(grid, q0=q0, h_out=h_out)
    return FieldBundle(ff, {"q0": q0, "h_out": h_out,
                            "x_shock": format(shock.x_shock, ".12g")})


def _bump_scenario_base(n_cells: int, surface: float, bc_l: BoundaryCondition,
                        bc_r: BoundaryCondition, t_end: float,
                        emerged: bool = False) -> Scenario:
    grid = Grid1D(bump.LENGTH, n_cells)
    z = bump.bump_topography(grid.centers)
    if emerged:
        h0 = np.maximum(surface, z) - z
        h0[h0 <= H_DRY] = 0.0
    else:
        h0 = np.maximum(surface - z, 0.0)
    return Scenario(grid, z, h0, np.zeros_like(z), bc_l, bc_r,
                    None, None, t_end, steady_stop=True)


def _lake_scenario(surface: float, emerged: bool):
    def make(n_cells: int, law, overrides: dict) -> Scenario:
        _reject_overrides(overrides, "lake scenarios are fixed")
        bc = BoundaryCondition("both", h=surface, q=0.0)
        return _bump_scenario_base(n_cells, surface, bc, bc, 100.0, emerged)
    return make


def _bump_flow_scenario(q0: float, surface: float, bc_right: BoundaryCondition,
                        t_end: float = 100.0):
    def make(n_cells: int, law, overrides: dict) -> Scenario:
        _reject_overrides(overrides, "bump scenarios are fixed")
        return _bump_scenario_base(
            n_cells, surface, BoundaryCondition("discharge", q=q0), bc_right, t_end)
    return make


def _bump_shock_exclusions(t: float) -> tuple[float, ...]:
    return (bump._shock_position(bump.SHOCK_Q, bump.SHOCK_H_OUT).x_shock,)


_BUMP_ENTRIES = (
    Entry(1, "bump", 1, "lake-at-rest-immersed", "lake at rest with an immersed bump",
          build=_build_lake("immersed", bump.IMMERSED_SURFACE),
          make_scenario=_lake_scenario(0.5, emerged=False),
          band=Band(max_abs_rel_percent=1e-8)),
    Entry(1, "bump", 2, "lake-at-rest-emerged", "lake at rest with an emerged bump",
          build=_build_lake("emerged", bump.EMERGED_SURFACE),
          make_scenario=_lake_scenario(0.1, emerged=True),
          band=Band(max_abs_rel_percent=1e-8)),
    Entry(1, "bump", 3, "subcritical", "subcritical flow over a bump",
          build=_build_bump_sub,
          make_scenario=_bump_flow_scenario(
              bump.SUBCRITICAL_Q, 2.0, BoundaryCondition("height", h=2.0)),
          band=Band(max_abs_rel_percent=1.0)),
    Entry(1, "bump", 4, "transcritical-noshock", "transcritical flow without shock",
          build=_build_bump_trans,
          make_scenario=_bump_flow_scenario(
              bump.TRANSCRITICAL_Q, 0.66,
              BoundaryCondition("height_if_subcritical", h=0.66)),
          band=Band(max_abs_rel_percent=3.0)),
    Entry(1, "bump", 5, "transcritical-shock", "transcritical flow with shock",
          build=_build_bump_shock,
          make_scenario=_bump_flow_scenario(
              bump.SHOCK_Q, 0.33, BoundaryCondition("height", h=0.33)),
          band=Band(max_abs_rel_percent=3.0,
                    exclude_x=_bump_shock_exclusions, exclude_radius_cells=2)),
)


# --------------------------------------------------------------------------
# MacDonald entries
# --------------------------------------------------------------------------

_MACDONALD_T_END = {
    "long-subcritical": 3000.0,
    "long-supercritical": 3000.0,
    "long-sub-to-super": 3000.0,
    "long-super-to-sub": 3000.0,
    "short-smooth-shock": 150.0,
    "short-supercritical": 150.0,
    "short-sub-to-super": 150.0,
    "periodic-subcritical": 20000.0,
    "rain-subcritical": 3000.0,
    "rain-supercritical": 4500.0,
}


def _macdonald_build(case: macdonald.MacDonaldCase):
    def build(grid: Grid1D, t, overrides: dict) -> FieldBundle:
        law_choice = overrides.pop("friction", None)
        fine = int(overrides.pop("fine_factor", 5))
        c = _apply_overrides(case, overrides) if overrides else case
        ff = macdonald.steady_solution(c, grid, law_choice, fine_factor=fine)
        params = {"q0": c.q0, "length": c.length}
        if c.rain_rate:
            params["rain_rate"] = c.rain_rate
            params["rain_start"] = c.rain_start
        params["friction"] = repr(macdonald.resolve_law(c, law_choice))
        return FieldBundle(ff, params)
    return build


def _macdonald_scenario(case: macdonald.MacDonaldCase):
    def make(n_cells: int, law_choice, overrides: dict) -> Scenario:
        fine = int(overrides.pop("fine_factor", 5))
        c = _apply_overrides(case, overrides) if overrides else case
        if c.diffusion is not None:
            raise DomainError(
                "the reference solver has no diffusion term; the diffusion "
                "cases are analytic-generation only"
            )
        grid = Grid1D(c.length, n_cells)
        law = macdonald.resolve_law(c, law_choice)
        topo = macdonald.synthesize_topography(c, grid, law, fine_factor=fine)
        h_in, _ = macdonald.hex_profile(c, 0.0)
        h_out, _ = macdonald.hex_profile(c, c.length)
        if c.initially_dry:
            h0 = np.zeros(n_cells)
        else:
            h0 = np.maximum(h_out + topo.z_outflow - topo.z_cells, 0.0)
            h0[h0 <= H_DRY] = 0.0
        if c.regime in ("super", "super_sub"):
            bc_left = BoundaryCondition("both", h=h_in, q=c.q0)
        else:
            bc_left = BoundaryCondition("discharge", q=c.q0)
        if c.regime in ("sub", "sub_super_sub", "super_sub"):
            bc_right = BoundaryCondition("height", h=h_out)
        else:
            bc_right = BoundaryCondition("free")
        rain = None
        steady_min_t = 0.0
        if c.rain_rate:
            r0, t_r = c.rain_rate, c.rain_start
            rain = (lambda t, r0=r0, t_r=t_r: r0 if t >= t_r else 0.0)
            steady_min_t = t_r + 10.0
        return Scenario(grid, topo.z_cells, h0, np.zeros(n_cells),
                        bc_left, bc_right, law, rain,
                        _MACDONALD_T_END[c.slug], steady_stop=True,
                        steady_min_t=steady_min_t)
    return make


def _macdonald_band(case: macdonald.MacDonaldCase) -> Band:
    if case.slug == "short-smooth-shock":
        return Band(max_abs_rel_percent=1.0,
                    exclude_x=lambda t: (macdonald.X_JUMP_100,),
                    exclude_radius_cells=1)
    if case.slug == "long-super-to-sub":
        return Band(max_abs_rel_percent=2.0,
                    exclude_x=lambda t: (500.0,), exclude_radius_cells=2)
    if case.regime in ("sub", "super"):
        return Band(max_abs_rel_percent=1.0)
    return Band(max_abs_rel_percent=2.0)


_MACDONALD_ENTRIES = tuple(
    Entry(1, "macdonald", i + 1, case.slug, f"MacDonald: {case.title}",
          build=_macdonald_build(case),
          make_scenario=None if case.diffusion is not None else _macdonald_scenario(case),
          band=None if case.diffusion is not None else _macdonald_band(case),
          friction_variants=tuple(
              v for v, have in (("manning", case.manning), ("darcy", case.darcy)) if have))
    for i, case in enumerate(macdonald.CASES)
)


# --------------------------------------------------------------------------
# pseudo-2D entries (profile view dim=1, raster view dim=2)
# --------------------------------------------------------------------------

def _pseudo2d_build_1d(case: pseudo2d.Pseudo2DCase):
    def build(grid: Grid1D, t, overrides: dict) -> FieldBundle:
        fine = int(overrides.pop("fine_factor", 5))
        _reject_overrides(overrides, "pseudo-2D parameters are table-fixed")
        ff = pseudo2d.solution(case, grid, fine_factor=fine)
        fr = pseudo2d.froude_profile(case, grid.centers, ff.h)
        hc = pseudo2d.critical_height_profile(case, grid.centers)
        params = {"q": pseudo2d.DISCHARGE, "manning_n": pseudo2d.MANNING_N,
                  "side_slope": case.side_slope, "length": case.length,
                  "h_in": format(case.h_in, ".12g"),
                  "h_out": format(case.h_out, ".12g")}
        return FieldBundle(ff, params, froude=fr, h_crit=hc)
    return build


def _pseudo2d_build_2d(case: pseudo2d.Pseudo2DCase):
    def build(grid: Grid2D, t, overrides: dict) -> FieldBundle:
        fine = int(overrides.pop("fine_factor", 5))
        _reject_overrides(overrides, "pseudo-2D parameters are table-fixed")
        ff = pseudo2d.raster(case, grid, fine_factor=fine)
        params = {"q": pseudo2d.DISCHARGE, "manning_n": pseudo2d.MANNING_N,
                  "side_slope": case.side_slope, "length": case.length}
        return FieldBundle(ff, params)
    return build


_PSEUDO2D_ENTRIES = tuple(
    Entry(dim, "pseudo2d", i + 1, case.slug, f"pseudo-2D channel: {case.title}",
          build=_pseudo2d_build_1d(case) if dim == 1 else _pseudo2d_build_2d(case))
    for i, case in enumerate(pseudo2d.CASES)
    for dim in (1, 2)
)


# --------------------------------------------------------------------------
# dam-break entries
# --------------------------------------------------------------------------

def _dambreak_build(kind: str, default_spec: dambreak.DamBreakSpec):
    def build(grid: Grid1D, t, overrides: dict) -> FieldBundle:
        spec = _apply_overrides(default_spec, overrides)
        if abs(grid.length - spec.length) > 1e-9:
            raise DomainError(f"this dam break lives on a {spec.length} m domain")
        tt = spec_default_time(kind) if t is None else float(t)
        ff = dambreak.sample(kind, spec, grid, tt)
        params = {"h_left": spec.h_left, "h_right": spec.h_right,
                  "x_dam": spec.x_dam, "t": tt}
        if spec.chezy is not None:
            params["chezy"] = spec.chezy
        return FieldBundle(ff, params)
    return build


def spec_default_time(kind: str) -> float:
    return {"stoker": 6.0, "ritter": 6.0, "dressler": 40.0}[kind]


def _dambreak_scenario(kind: str, spec: dambreak.DamBreakSpec):
    def make(n_cells: int, law, overrides: dict) -> Scenario:
        s = _apply_overrides(spec, overrides)
        grid = Grid1D(s.length, n_cells)
        h0, q0 = dambreak._riemann_data(s, grid.centers)
        friction = Chezy(s.chezy) if s.chezy is not None else None
        return Scenario(grid, np.zeros(n_cells), h0, q0,
                        BoundaryCondition("free"), BoundaryCondition("free"),
                        friction, None, spec_default_time(kind), steady_stop=False)
    return make


def _ritter_front(t: float) -> float:
    return dambreak.ritter_structure(dambreak.RITTER, t).x_tail


def _stoker_exclusions(t: float) -> tuple[float, ...]:
    ws = dambreak.stoker_structure(dambreak.STOKER, t)
    return (ws.x_head, ws.x_tail, ws.x_shock)


def _dressler_range(t: float) -> tuple[float, float]:
    ws = dambreak.dressler_structure(dambreak.DRESSLER, t)
    return (0.0, ws.x_tip)


_DAMBREAK_ENTRIES = (
    Entry(1, "dambreak", 1, "stoker-wet", "dam break on a wet domain (no friction)",
          transient=True, default_time=6.0,
          build=_dambreak_build("stoker", dambreak.STOKER),
          make_scenario=_dambreak_scenario("stoker", dambreak.STOKER),
          band=Band(max_abs_rel_percent=5.0, exclude_x=_stoker_exclusions,
                    exclude_radius_cells=5)),
    Entry(1, "dambreak", 2, "ritter-dry", "dam break on a dry domain (no friction)",
          transient=True, default_time=6.0,
          build=_dambreak_build("ritter", dambreak.RITTER),
          make_scenario=_dambreak_scenario("ritter", dambreak.RITTER),
          # undisturbed plateau: clear of the rarefaction-head kink, whose
          # numerical smearing reaches a few tenths of a metre upstream
          band=Band(x_range=lambda t: (
                        0.0, dambreak.ritter_structure(dambreak.RITTER, t).x_head - 0.35),
                    max_abs_rel_percent=0.1,
                    front_x=_ritter_front, front_lag_max=0.4,
                    front_never_ahead=True, require_contiguous_front=True)),
    Entry(1, "dambreak", 3, "dressler-dry", "dam break on a dry domain with Chezy friction",
          transient=True, default_time=40.0,
          build=_dambreak_build("dressler", dambreak.DRESSLER),
          make_scenario=_dambreak_scenario("dressler", dambreak.DRESSLER),
          band=Band(max_abs_rel_percent=10.0, x_range=_dressler_range,
                    require_contiguous_front=True)),
)


# --------------------------------------------------------------------------
# oscillation entries
# --------------------------------------------------------------------------

_THACKER1D = oscillations.Thacker1DSpec()
_RADIAL = oscillations.ThackerRadialSpec()
_PLANAR = oscillations.ThackerPlanarSpec()
_SAMPSON = oscillations.SampsonSpec()


def _osc_build_1d(kind: str, default_spec):
    def build(grid: Grid1D, t, overrides: dict) -> FieldBundle:
        spec = _apply_overrides(default_spec, overrides)
        if abs(grid.length - spec.length) > 1e-9:
            raise DomainError(f"this case lives on a {spec.length} m domain")
        tt = _osc_default_time(kind, spec) if t is None else float(t)
        ff = oscillations.sample_1d(kind, spec, grid, tt)
        return FieldBundle(ff, {"t": tt, **_osc_params(kind, spec)})
    return build


def _osc_build_2d(kind: str, default_spec):
    def build(grid: Grid2D, t, overrides: dict) -> FieldBundle:
        spec = _apply_overrides(default_spec, overrides)
        if abs(grid.lx - spec.length) > 1e-9 or abs(grid.ly - spec.length) > 1e-9:
            raise DomainError(f"this case lives on a {spec.length} m square domain")
        tt = _osc_default_time(kind, spec) if t is None else float(t)
        ff = oscillations.sample_2d(kind, spec, grid, tt)
        return FieldBundle(ff, {"t": tt, **_osc_params(kind, spec)})
    return build


def _osc_default_time(kind: str, spec) -> float:
    if kind == "thacker1d":
        return 5.0 * spec.period
    if kind in ("radial", "planar"):
        return 3.0 * spec.period
    return 6000.0


def _osc_params(kind: str, spec) -> dict:
    if kind == "thacker1d":
        return {"a": spec.half_width, "h0": spec.depth, "period": format(spec.period, ".12g")}
    if kind == "radial":
        return {"a": spec.radius, "r0": spec.shoreline, "h0": spec.depth,
                "omega": format(spec.pulsation, ".12g")}
    if kind == "planar":
        return {"a": spec.radius, "h0": spec.depth, "eta": spec.offset,
                "omega": format(spec.pulsation, ".12g")}
    return {"a": spec.half_width, "h0": spec.depth, "tau": spec.drag, "B": spec.amplitude}


def _thacker1d_scenario(n_cells: int, law, overrides: dict) -> Scenario:
    spec = _apply_overrides(_THACKER1D, overrides)
    grid = Grid1D(spec.length, n_cells)
    z = oscillations.bowl_1d(spec, grid.centers)
    h0, u0 = oscillations.thacker1d(spec, 0.0, grid.centers)
    return Scenario(grid, z, h0, h0 * u0, BoundaryCondition("wall"),
                    BoundaryCondition("wall"), None, None,
                    5.0 * spec.period, steady_stop=False)


def _sampson_scenario(n_cells: int, law, overrides: dict) -> Scenario:
    spec = _apply_overrides(_SAMPSON, overrides)
    grid = Grid1D(spec.length, n_cells)
    z = oscillations.bowl_sampson(spec, grid.centers)
    h0, u0 = oscillations.sampson(spec, 0.0, grid.centers)
    return Scenario(grid, z, h0, h0 * u0, BoundaryCondition("wall"),
                    BoundaryCondition("wall"), LinearDrag(spec.drag), None,
                    6000.0, steady_stop=False)


def _thacker1d_shorelines_at(t: float) -> tuple[float, ...]:
    return oscillations.thacker1d_shorelines(_THACKER1D, t)


def _sampson_shorelines_at(t: float) -> tuple[float, ...]:
    return oscillations.sampson_shorelines(_SAMPSON, t)


_OSC_ENTRIES = (
    Entry(1, "oscillation", 1, "thacker-planar-1d", "planar oscillation in a parabola",
          transient=True, default_time=5.0 * _THACKER1D.period,
          build=_osc_build_1d("thacker1d", _THACKER1D),
          make_scenario=_thacker1d_scenario,
          band=Band(max_abs_rel_percent=10.0, exclude_x=_thacker1d_shorelines_at,
                    exclude_radius_cells=8, require_contiguous_front=False)),
    Entry(2, "oscillation", 2, "thacker-radial", "radially symmetric oscillating paraboloid",
          transient=True, default_time=3.0 * _RADIAL.period,
          build=_osc_build_2d("radial", _RADIAL)),
    Entry(2, "oscillation", 3, "thacker-planar-2d", "rotating planar surface in a paraboloid",
          transient=True, default_time=3.0 * _PLANAR.period,
          build=_osc_build_2d("planar", _PLANAR)),
    Entry(1, "oscillation", 4, "sampson-damped", "damped oscillation in a parabola (linear friction)",
          transient=True, default_time=6000.0,
          build=_osc_build_1d("sampson", _SAMPSON),
          make_scenario=_sampson_scenario,
          band=Band(max_abs_rel_percent=10.0, exclude_x=_sampson_shorelines_at,
                    exclude_radius_cells=8)),
)


ENTRIES: tuple[Entry, ...] = (
    _BUMP_ENTRIES + _MACDONALD_ENTRIES + _PSEUDO2D_ENTRIES
    + _DAMBREAK_ENTRIES + _OSC_ENTRIES
)

_BY_ADDRESS = {e.address: e for e in ENTRIES}

KINDS = ("bump", "macdonald", "pseudo2d", "dambreak", "oscillation")


def resolve(dim: int, kind: str, number: int) -> Entry:
    entry = _BY_ADDRESS.get((dim, kind, number))
    if entry is None:
        raise UnknownCaseError(
            f"no catalog entry for dimension={dim} type={kind!r} number={number}\n"
            + listing()
        )
    return entry


def listing() -> str:
    lines = ["available cases (dim type number: title):"]
    for e in ENTRIES:
        marks = []
        if e.transient:
            marks.append(f"t in [0, {e.default_time:g}]")
        if len(e.friction_variants) > 1:
            marks.append("friction: " + "|".join(e.friction_variants))
        if e.make_scenario is None:
            marks.append("generate-only")
        suffix = f"  [{'; '.join(marks)}]" if marks else ""
        lines.append(f"  {e.dim} {e.kind} {e.number}: {e.title}{suffix}")
    return "\n".join(lines)


def transient_default_time(entry: Entry) -> float | None:
    return entry.default_time if entry.transient else None


def build_field(entry: Entry, n_cells: int, n_cells_y: int | None = None,
                t: float | None = None, overrides: dict | None = None) -> FieldBundle:
    """Evaluate the analytic solution for an address on a fresh grid."""
    overrides = dict(overrides or {})
    if entry.dim == 1:
        grid = Grid1D(_domain_length(entry), n_cells)
        return entry.build(grid, t, overrides)
    lx, ly = _domain_extent_2d(entry)
    ny = n_cells_y if n_cells_y else max(1, round(n_cells * ly / lx))
    grid = Grid2D(lx, ly, n_cells, ny)
    return entry.build(grid, t, overrides)


def _domain_length(entry: Entry) -> float:
    if entry.kind == "bump":
        return bump.LENGTH
    if entry.kind == "macdonald":
        return macdonald.CASES[entry.number - 1].length
    if entry.kind == "pseudo2d":
        return pseudo2d.CASES[entry.number - 1].length
    if entry.kind == "dambreak":
        return (dambreak.STOKER, dambreak.RITTER, dambreak.DRESSLER)[entry.number - 1].length
    if entry.kind == "oscillation":
        return (_THACKER1D, _RADIAL, _PLANAR, _SAMPSON)[entry.number - 1].length
    raise UnknownCaseError(entry.kind)


def _domain_extent_2d(entry: Entry) -> tuple[float, float]:
    if entry.kind == "pseudo2d":
        case = pseudo2d.CASES[entry.number - 1]
        return case.length, pseudo2d.domain_width(case)
    if entry.kind == "oscillation":
        spec = (_THACKER1D, _RADIAL, _PLANAR, _SAMPSON)[entry.number - 1]
        return spec.length, spec.length
    raise UnknownCaseError(f"case {entry.label} has no 2D form")


def run_scenario(
    scenario: Scenario,
    order: int = 2,
    cfl: float = 0.4,
    t_end: float | None = None,
    steady_tol: float | None = 1e-10,
) -> SolverResult:
    """Drive the reference solver over a scenario."""
    config = SolverConfig(order=order, cfl=cfl, friction=scenario.friction,
                          rain=scenario.rain)
    solver = ShallowWaterSolver1D(scenario.grid, scenario.z, scenario.h0,
                                  scenario.q0, scenario.bc_left,
                                  scenario.bc_right, config)
    t_final = scenario.t_end if t_end is None else t_end
    tol = steady_tol if scenario.steady_stop else None
    residuals = []
    if scenario.steady_min_t > 0.0 and tol is not None:
        part = solver.run(min(scenario.steady_min_t, t_final), steady_tol=None)
        residuals = part.residuals
        if part.t >= t_final - 1e-12:
            part.residuals = residuals
            return part
    result = solver.run(t_final, steady_tol=tol)
    result.residuals = residuals + result.residuals
    return result


def check_band(band: Band, numeric: FlowField, reference: FlowField,
               t: float) -> BandResult:
    """Evaluate a case's acceptance band on a solver/analytic pair."""
    from .bench import compare

    grid = reference.grid
    report = compare(numeric, reference)
    result = BandResult(passed=True)
    result.metrics["l1_h"] = report.l1_h
    result.metrics["linf_h"] = report.linf_h

    if band.max_abs_rel_percent is not None:
        mask = reference.h > H_DRY
        if band.x_range is not None:
            lo, hi = band.x_range(t)
            mask &= (grid.centers >= lo) & (grid.centers <= hi)
        if band.exclude_x is not None:
            radius = (band.exclude_radius_cells + 0.5) * grid.dx
            for x_ex in band.exclude_x(t):
                mask &= np.abs(grid.centers - x_ex) > radius
        rel = np.abs(report.rel_percent)
        worst = float(np.nanmax(rel[mask])) if np.any(mask) else 0.0
        result.metrics["band_percent"] = band.max_abs_rel_percent
        result.metrics["max_rel_percent_in_band"] = worst
        if worst > band.max_abs_rel_percent:
            result.passed = False
            result.messages.append(
                f"relative error {worst:.3f}% exceeds band {band.max_abs_rel_percent}%")

    if np.any(numeric.h < 0.0):
        result.passed = False
        result.messages.append("negative water height in the numerical field")

    if band.front_x is not None or band.require_contiguous_front:
        wet = np.flatnonzero(numeric.h > H_DRY)
        if wet.size:
            front_i = int(wet[-1])
            front_pos = float(grid.centers[front_i])
            result.metrics["front_numeric"] = front_pos
            if band.require_contiguous_front and not np.array_equal(
                    wet, np.arange(wet[0], front_i + 1)):
                result.passed = False
                result.messages.append("wet region is not contiguous (spurious wet cells)")
            if band.front_x is not None:
                front_ref = band.front_x(t)
                result.metrics["front_analytic"] = front_ref
                if band.front_never_ahead and front_pos > front_ref:
                    result.passed = False
                    result.messages.append(
                        f"numeric front {front_pos:.4f} ahead of analytic {front_ref:.4f}")
                if band.front_lag_max is not None and front_ref - front_pos > band.front_lag_max:
                    result.passed = False
                    result.messages.append(
                        f"front lag {front_ref - front_pos:.4f} m exceeds {band.front_lag_max} m")
    return result

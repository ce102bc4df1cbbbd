"""Error metrics and convergence studies against the analytic catalog.

Comparisons report absolute L1/L2/Linf norms of the height and discharge
over cells where the analytic solution is wet, plus a signed relative
height profile in percent (positive where the numerical field
overestimates). Cells that are dry in the reference are excluded from the
norms and tracked through wet/dry classification counters; relative values
are capped at +-100 % so wetting-front sentinels stay readable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import H_DRY, FlowField


@dataclass(frozen=True)
class ErrorReport:
    l1_h: float
    l2_h: float
    linf_h: float
    l1_q: float
    l2_q: float
    linf_q: float
    rel_percent: np.ndarray      # signed, capped to [-100, 100]; NaN on excluded cells
    max_rel_percent: float       # largest |relative| over wet reference cells
    x_max_error: float           # location of the largest absolute h error
    n_wet: int
    n_excluded: int              # reference-dry cells (no relative error defined)
    spurious_wet: int            # numeric wet where reference dry
    missed_wet: int              # numeric dry where reference wet

    def mean_abs_h(self) -> float:
        return self.l1_h / max(self.n_wet, 1)

    def rms_h(self) -> float:
        return self.l2_h / np.sqrt(max(self.n_wet, 1))


class GridMismatch(ValueError):
    pass


def compare(numeric: FlowField, reference: FlowField, h_dry: float = H_DRY) -> ErrorReport:
    """Cellwise comparison of two fields on the same grid."""
    if numeric.grid != reference.grid:
        raise GridMismatch(
            f"grids differ: {numeric.grid} vs {reference.grid}"
        )
    dx = reference.grid.dx
    wet = reference.h > h_dry
    num_wet = numeric.h > h_dry
    eh = numeric.h - reference.h
    eq = numeric.q - reference.q

    rel = np.full(reference.h.shape, np.nan)
    rel[wet] = 100.0 * eh[wet] / reference.h[wet]
    rel = np.clip(rel, -100.0, 100.0)

    n_wet = int(np.count_nonzero(wet))
    eh_w = eh[wet]
    eq_w = eq[wet]
    if n_wet:
        linf_idx = int(np.argmax(np.abs(eh_w)))
        x_max = float(reference.grid.centers[wet][linf_idx])
        report = ErrorReport(
            l1_h=float(dx * np.sum(np.abs(eh_w))),
            l2_h=float(np.sqrt(dx * np.sum(eh_w ** 2))),
            linf_h=float(np.max(np.abs(eh_w))),
            l1_q=float(dx * np.sum(np.abs(eq_w))),
            l2_q=float(np.sqrt(dx * np.sum(eq_w ** 2))),
            linf_q=float(np.max(np.abs(eq_w))),
            rel_percent=rel,
            max_rel_percent=float(np.nanmax(np.abs(rel[wet]))) if n_wet else 0.0,
            x_max_error=x_max,
            n_wet=n_wet,
            n_excluded=int(np.count_nonzero(~wet)),
            spurious_wet=int(np.count_nonzero(num_wet & ~wet)),
            missed_wet=int(np.count_nonzero(~num_wet & wet)),
        )
    else:
        report = ErrorReport(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, rel, 0.0, float("nan"),
                             0, int(reference.h.size), int(np.count_nonzero(num_wet)), 0)
    return report


@dataclass(frozen=True)
class ConvergenceStudy:
    resolutions: tuple[int, ...]
    l1_errors: tuple[float, ...]
    order: float                # least-squares slope of log(err) vs log(n)

    def pairs(self):
        return list(zip(self.resolutions, self.l1_errors))


def fit_order(resolutions: Sequence[int], errors: Sequence[float]) -> float:
    """Least-squares convergence order from (n, error) samples.

    The coarsest point is dropped when its error sits within 10x machine
    epsilon of the next one (a degenerate, already-converged fit).
    """
    n = np.asarray(resolutions, dtype=float)
    e = np.asarray(errors, dtype=float)
    if len(n) >= 3 and abs(e[0] - e[1]) <= 10.0 * np.finfo(float).eps * max(e[0], e[1], 1.0):
        n, e = n[1:], e[1:]
    if np.any(e <= 0.0):
        # exact matches cannot constrain an order; report infinity
        return float("inf")
    slope = np.polyfit(np.log(n), np.log(e), 1)[0]
    return float(-slope)


def convergence(
    resolutions: Sequence[int],
    run_one: Callable[[int], tuple[FlowField, FlowField]],
) -> ConvergenceStudy:
    """Run (numeric, reference) pairs per resolution and fit the L1(h) order.

    `run_one(n)` must raise on a diverged run; the study aborts with that
    diagnostic rather than fitting partial data.
    """
    if len(resolutions) < 3:
        raise ValueError("a convergence study needs at least 3 resolutions")
    res = sorted(int(n) for n in resolutions)
    if len(set(res)) != len(res):
        raise ValueError("resolutions must be distinct")
    errors = []
    for n in res:
        numeric, reference = run_one(n)
        errors.append(compare(numeric, reference).l1_h)
    return ConvergenceStudy(tuple(res), tuple(errors), fit_order(res, errors))

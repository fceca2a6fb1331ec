"""Reward evaluation.

The value of a set of placements is the sum over demand zones of the covered
area, weighted by the demand rate divided by the covering zone's decay value,
where any point covered several times pays at its best (smallest-scale)
covering zone.  Equivalently: process placements from best scale to worst,
pay each for what it newly covers, and trim the paid region out of the
demand set.

One-dimensional instances (``base.l0 == 0``) reuse the planar machinery by
lifting every demand segment to a unit-height box, so covered length and
covered area coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .geometry import EPS, Axis, Rect, _trim_bounds, area, intersect
from .critical import CriticalValueSet, CvKind, inner_demand_grid
from .model import BaseServiceZone, DemandZone, Eta, Placement, QosSet, reward_rate, service_rect

#: Signature shared by the exact single-zone solver and any approximate
#: substitute: ``(dzs, qos, base, eta) -> (reward, x, y, z)``.
SingleZoneSolver = Callable[
    [Sequence[DemandZone], QosSet, BaseServiceZone, Eta],
    tuple[float, float, float, float],
]


def planar_form(
    dzs: Sequence[DemandZone], base: BaseServiceZone
) -> tuple[tuple[DemandZone, ...], BaseServiceZone]:
    """Return a planar equivalent of ``(dzs, base)``.

    Two-dimensional data passes through unchanged.  One-dimensional data
    (``base.l0 == 0``) is lifted: every demand segment becomes a unit-height
    box at ``y = 0`` and the base gets unit length, which makes every overlap
    height exactly 1 and so turns areas into covered lengths.  Lifting is
    idempotent.
    """
    if base.l0 > 0:
        return tuple(dzs), base
    lifted = tuple(
        DemandZone(Rect(d.rect.x, 0.0, d.rect.w, 1.0), d.v) for d in dzs
    )
    return lifted, BaseServiceZone(base.w0, 1.0)


def single_zone_reward(
    dzs: Sequence[DemandZone],
    x: float,
    y: float,
    z: float,
    base: BaseServiceZone,
    eta: Eta,
) -> float:
    """Reward collected by one scale-``z`` zone at ``(x, y)`` in isolation."""
    pdzs, pbase = planar_form(dzs, base)
    zone = service_rect(pbase, Placement(x, y, z))
    total = 0.0
    for d in pdzs:
        overlap = intersect(d.rect, zone)
        if overlap is not None:
            total += reward_rate(d.v, z, eta) * area(overlap)
    return total


@dataclass(frozen=True, eq=False)
class RewardMatrix:
    """Single-zone rewards of one scale tabulated over its candidate grid.

    ``entries[i, j]`` is the isolated reward of a scale-``scale`` zone placed
    at ``(xs.values[i], ys.values[j])``.
    """

    scale: float
    xs: CriticalValueSet
    ys: CriticalValueSet
    entries: np.ndarray

    @cached_property
    def xs_array(self) -> np.ndarray:
        return np.asarray(self.xs.values)

    @cached_property
    def ys_array(self) -> np.ndarray:
        return np.asarray(self.ys.values)

    @cached_property
    def max_entry(self) -> float:
        return float(self.entries.max()) if self.entries.size else 0.0


def build_reward_matrix(
    dzs: Sequence[DemandZone],
    z: float,
    base: BaseServiceZone,
    eta: Eta,
    eps: float = EPS,
) -> RewardMatrix:
    """Tabulate isolated single-zone rewards of scale ``z`` over its grid.

    The grid is the inner-demand grid per axis.  For one-dimensional input
    the y axis collapses to the single index ``y = 0``.
    """
    one_d = base.l0 == 0
    pdzs, pbase = planar_form(dzs, base)
    xs = inner_demand_grid(dzs, z, base, Axis.X, eps)
    if one_d:
        ys = CriticalValueSet((0.0,), Axis.Y, CvKind.INNER_DEMAND, z)
    else:
        ys = inner_demand_grid(dzs, z, base, Axis.Y, eps)
    xv = np.asarray(xs.values)
    yv = np.asarray(ys.values)
    entries = np.zeros((len(xv), len(yv)))
    wz = pbase.w0 * z
    lz = pbase.l0 * z
    for d in pdzs:
        r = reward_rate(d.v, z, eta)
        ox = np.clip(np.minimum(xv + wz, d.rect.x2) - np.maximum(xv, d.rect.x), 0.0, None)
        oy = np.clip(np.minimum(yv + lz, d.rect.y2) - np.maximum(yv, d.rect.y), 0.0, None)
        entries += r * np.outer(ox, oy)
    return RewardMatrix(z, xs, ys, entries)


def covered_reward(
    dzs: Sequence[DemandZone],
    placements: Sequence[Placement],
    base: BaseServiceZone,
    eta: Eta,
    eps: float = EPS,
) -> float:
    """Total reward of ``placements`` with best-scale payment on overlaps.

    Placements are processed by ascending scale (ties by original order);
    each is paid for its overlap with the not-yet-served demand set, which is
    then trimmed.  Near-degenerate trim slivers (area below ``eps**2``) are
    dropped to bound bookkeeping growth.
    """
    if not placements or not dzs:
        return 0.0
    pdzs, pbase = planar_form(dzs, base)
    order = sorted(range(len(placements)), key=lambda i: (placements[i].z, i))
    boxes = [(d.rect.x, d.rect.y, d.rect.x2, d.rect.y2, d.v) for d in pdzs]
    min_area = eps * eps
    w0 = pbase.w0
    l0 = pbase.l0
    total = 0.0
    for i in order:
        pl = placements[i]
        sx1 = pl.x
        sy1 = pl.y
        sx2 = pl.x + w0 * pl.z
        sy2 = pl.y + l0 * pl.z
        eta_z = eta.apply(pl.z)
        remaining: list[tuple[float, float, float, float, float]] = []
        for x1, y1, x2, y2, v in boxes:
            ix1 = x1 if x1 > sx1 else sx1
            iy1 = y1 if y1 > sy1 else sy1
            ix2 = x2 if x2 < sx2 else sx2
            iy2 = y2 if y2 < sy2 else sy2
            if ix2 - ix1 <= 0 or iy2 - iy1 <= 0:
                remaining.append((x1, y1, x2, y2, v))
                continue
            total += (v / eta_z) * ((ix2 - ix1) * (iy2 - iy1))
            for px1, py1, px2, py2 in _trim_bounds(x1, y1, x2, y2, sx1, sy1, sx2, sy2):
                if (px2 - px1) * (py2 - py1) >= min_area:
                    remaining.append((px1, py1, px2, py2, v))
        boxes = remaining
        if not boxes:
            break
    return total


def solve_single_zone(
    dzs: Sequence[DemandZone],
    qos: QosSet,
    base: BaseServiceZone,
    eta: Eta,
    eps: float = EPS,
) -> tuple[float, float, float, float]:
    """Best single placement ``(reward, x, y, z)`` over the candidate grids.

    Searches every scale in ``qos`` over its inner-demand grid (times
    ``{0}`` on y for one-dimensional input), which contains an exact optimum
    for the isolated one-zone problem.  Ties break toward the smallest scale,
    then smallest x, then smallest y.  An empty demand set returns reward 0 at
    the origin with the smallest scale.
    """
    if not dzs:
        return 0.0, 0.0, 0.0, qos.min_factor
    best_r = -1.0
    best = (0.0, 0.0, 0.0, qos.min_factor)
    for z in qos.factors:
        m = build_reward_matrix(dzs, z, base, eta, eps)
        if m.entries.size == 0:
            continue
        flat = int(np.argmax(m.entries))
        i, j = divmod(flat, m.entries.shape[1])
        r = float(m.entries[i, j])
        if r > best_r:
            best_r = r
            best = (r, m.xs.values[i], m.ys.values[j], z)
    return best

"""Finite candidate coordinates for service-zone placement.

Along each axis the marginal reward of a single zone is piecewise linear in
its position, with slope changes only where a zone edge meets a demand-zone
edge.  Restricting the search to those breakpoints is lossless.  Two families
matter:

* demand breakpoints — induced by demand-zone edges for a given scale; the
  *inner* pair aligns the zone flush inside a demand span and carries every
  single-zone maximum, and the grid of inner values over all demand zones is
  the basic search grid per scale;
* service breakpoints — induced by an already-positioned zone; the *outer*
  pair places a new zone snugly against the fixed one (the relevant extra
  candidates when several zones interact), while the *inner* pair nests it
  against the far edge.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .geometry import EPS, Axis
from .model import BaseServiceZone, DemandZone


class CvKind(Enum):
    INNER_DEMAND = "inner_demand"
    OUTER_DEMAND = "outer_demand"
    INNER_SERVICE = "inner_service"
    OUTER_SERVICE = "outer_service"


@dataclass(frozen=True)
class CriticalValueSet:
    """Sorted, deduplicated candidate coordinates along one axis for one scale."""

    values: tuple[float, ...]
    axis: Axis
    kind: CvKind
    scale: float

    def __len__(self) -> int:
        return len(self.values)


def dedup_sorted(values: Iterable[float], eps: float = EPS) -> tuple[float, ...]:
    """Sort ``values`` and merge any pair closer than ``eps`` to the smaller one."""
    out: list[float] = []
    for v in sorted(float(v) for v in values):
        if not out or v - out[-1] >= eps:
            out.append(v)
    return tuple(out)


def contains_value(sorted_values: Sequence[float], v: float, eps: float = EPS) -> bool:
    """Membership test in a sorted sequence with absolute tolerance ``eps``."""
    i = bisect_left(sorted_values, v)
    if i < len(sorted_values) and abs(sorted_values[i] - v) < eps:
        return True
    return i > 0 and abs(sorted_values[i - 1] - v) < eps


def _span(d: DemandZone, base: BaseServiceZone, z: float, axis: Axis) -> tuple[float, float, float]:
    if axis is Axis.X:
        return d.rect.x, d.rect.w, base.w0 * z
    return d.rect.y, d.rect.l, base.l0 * z


def demand_breakpoints(
    d: DemandZone, z: float, base: BaseServiceZone, axis: Axis
) -> tuple[float, float, float, float]:
    """Positions where a scale-``z`` zone's overlap with ``d`` changes slope.

    Returned in ascending structure ``(outer_lo, inner_lo, inner_hi,
    outer_hi)``: outside the outer pair the zone misses ``d`` entirely; between
    the inner pair (when the demand span is at least the zone extent) the zone
    lies flush inside the span.
    """
    lo, extent, reach = _span(d, base, z, axis)
    return (lo - reach, lo, lo + extent - reach, lo + extent)


def inner_demand_grid(
    dzs: Sequence[DemandZone],
    z: float,
    base: BaseServiceZone,
    axis: Axis,
    eps: float = EPS,
) -> CriticalValueSet:
    """Grid of inner demand breakpoints over all of ``dzs`` for scale ``z``.

    Empty input yields an empty grid.  Cardinality is at most ``2 * len(dzs)``.
    """
    vals: list[float] = []
    for d in dzs:
        _, i1, i2, _ = demand_breakpoints(d, z, base, axis)
        vals.append(i1)
        vals.append(i2)
    return CriticalValueSet(dedup_sorted(vals, eps), axis, CvKind.INNER_DEMAND, z)


def service_breakpoints(
    coord: float, owner_scale: float, z: float, base: BaseServiceZone, axis: Axis
) -> tuple[float, float, float, float]:
    """Positions where a scale-``z`` zone interacts with a fixed zone's edges.

    ``coord`` is the fixed zone's lower corner coordinate on ``axis`` and
    ``owner_scale`` its scale.  Returned as ``(outer_lo, inner_lo, inner_hi,
    outer_hi)``: the outer pair abuts the new zone against either side of the
    fixed one, the inner pair nests it flush inside.
    """
    unit = base.w0 if axis is Axis.X else base.l0
    reach = unit * z
    size = unit * owner_scale
    return (coord - reach, coord, coord + size - reach, coord + size)


def outer_service_values(
    fixed: Sequence[tuple[float, float]],
    z: float,
    base: BaseServiceZone,
    axis: Axis,
    eps: float = EPS,
) -> CriticalValueSet:
    """Outer service breakpoints of every fixed zone for a scale-``z`` query.

    ``fixed`` holds ``(coordinate, scale)`` pairs of already-positioned zones.
    Cardinality is at most ``2 * len(fixed)``.
    """
    vals: list[float] = []
    for coord, owner_scale in fixed:
        o1, _, _, o2 = service_breakpoints(coord, owner_scale, z, base, axis)
        vals.append(o1)
        vals.append(o2)
    return CriticalValueSet(dedup_sorted(vals, eps), axis, CvKind.OUTER_SERVICE, z)


def inner_service_values(
    fixed: Sequence[tuple[float, float]],
    z: float,
    base: BaseServiceZone,
    axis: Axis,
    eps: float = EPS,
) -> CriticalValueSet:
    """Inner service breakpoints of every fixed zone for a scale-``z`` query."""
    vals: list[float] = []
    for coord, owner_scale in fixed:
        _, i1, i2, _ = service_breakpoints(coord, owner_scale, z, base, axis)
        vals.append(i1)
        vals.append(i2)
    return CriticalValueSet(dedup_sorted(vals, eps), axis, CvKind.INNER_SERVICE, z)

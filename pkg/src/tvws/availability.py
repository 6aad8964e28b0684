"""The availability engine: which channels may a radio use, where, how loud.

A channel is *occupied* at a location when at least one transmitter
carrying it is too close -- closer than its keep-out radius for the
queried transmit power (disk model), or simply covering the location
(raster model, the zero-power limit).  Everything else in the interleaved
plan is *vacant*; ``rho`` counts the vacant interleaved channels.

Two tracks, mirroring how such studies are actually run:

* exact rasters for the low-power limit (:func:`availability_lowpower`),
* enclosing disks plus keep-out math for arbitrary power
  (:func:`availability`), which over-protects by construction, so its
  vacant set can only be a subset of the raster answer at zero power.

Transmitters carrying cleared or excluded channels still show up in
``per_channel_blockers`` for diagnostics, but never change ``rho``:
availability is accounted over the interleaved plan only.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from tvws.channel_plan import CHANNEL_WIDTH_MHZ, ChannelPlan
from tvws.coverage import CoverageDisk, CoverageRaster, covers
from tvws.geo import BoundingBox, NgPoint, distance
from tvws.keepout import PropagationParams, QueryParams, keepout_radius
from tvws.txdb import TransmitterDb


@dataclass
class AvailabilityResult:
    """Vacant/occupied split at one location and power."""

    location: NgPoint
    p_cr_watts: float
    vacant: frozenset[int]
    occupied: frozenset[int]
    rho: int
    per_channel_blockers: dict[int, tuple[str, ...]]
    filtered_vacant: frozenset[int] | None = None


def _result_from_blockers(
    location: NgPoint,
    p_cr_watts: float,
    plan: ChannelPlan,
    blockers: dict[int, list[str]],
) -> AvailabilityResult:
    occupied = frozenset(ch for ch in blockers if ch in plan.interleaved)
    vacant = plan.interleaved - occupied
    return AvailabilityResult(
        location=location,
        p_cr_watts=p_cr_watts,
        vacant=vacant,
        occupied=occupied,
        rho=len(vacant),
        per_channel_blockers={ch: tuple(blockers[ch]) for ch in sorted(blockers)},
    )


def availability(
    db: TransmitterDb,
    disks: Mapping[str, CoverageDisk],
    plan: ChannelPlan,
    q: QueryParams,
) -> AvailabilityResult:
    """Disk-model availability at a location for a given transmit power.

    A transmitter blocks its channels when the query point is strictly
    inside its keep-out radius; sitting exactly on the boundary is
    permitted.
    """
    blockers: dict[int, list[str]] = {}
    for tx in db:
        disk = disks.get(tx.id)
        if disk is None:
            raise ValueError(f"no coverage disk for transmitter {tx.id!r}")
        d = distance(q.location, tx.position)
        r_keepout = keepout_radius(q.p_cr_watts, tx.erp_watts, disk.radius_m, q.prop)
        if d < r_keepout:
            for ch in tx.channels:
                blockers.setdefault(ch, []).append(tx.id)
    return _result_from_blockers(q.location, q.p_cr_watts, plan, blockers)


def availability_lowpower(
    db: TransmitterDb,
    rasters: Mapping[str, CoverageRaster],
    plan: ChannelPlan,
    loc: NgPoint,
) -> AvailabilityResult:
    """Raster-model availability: the zero-power upper bound.

    A transmitter blocks its channels exactly where its coverage map says
    it can be received.  This is the most optimistic vacant set a location
    can have; any positive transmit power only removes channels.
    """
    blockers: dict[int, list[str]] = {}
    for tx in db:
        raster = rasters.get(tx.id)
        if raster is None:
            raise ValueError(f"no coverage raster for transmitter {tx.id!r}")
        if covers(raster, loc):
            for ch in tx.channels:
                blockers.setdefault(ch, []).append(tx.id)
    return _result_from_blockers(loc, 0.0, plan, blockers)


def adjacent_filter(
    result: AvailabilityResult, extra_blockers: Iterable[int] = ()
) -> frozenset[int]:
    """Drop vacant channels whose immediate neighbours are occupied.

    High-power devices leak energy into channels N-1 and N+1, so regulators
    may bar a vacant channel whose neighbour still carries DTV.  Only
    DTV-occupied channels block; cleared and excluded neighbours do not,
    unless passed in via ``extra_blockers`` (the strict mode used for the
    withdrawn channels 61/62).  The surviving set is also stored on the
    result as ``filtered_vacant``.
    """
    blocked = set(result.occupied) | set(extra_blockers)
    kept = frozenset(
        ch for ch in result.vacant if ch - 1 not in blocked and ch + 1 not in blocked
    )
    result.filtered_vacant = kept
    return kept


def contiguity(vacant: Iterable[int]) -> tuple[list[tuple[int, int]], int]:
    """Maximal runs of consecutive vacant channels, plus the widest run in MHz.

    Fragmentation matters as much as the total: many radios need one
    contiguous block, so 12 vacant channels in runs of two offer them only
    16 MHz despite 96 MHz being nominally free.
    """
    channels = sorted(set(vacant))
    runs: list[tuple[int, int]] = []
    for ch in channels:
        if runs and ch == runs[-1][1] + 1:
            runs[-1] = (runs[-1][0], ch)
        else:
            runs.append((ch, ch))
    longest = max((hi - lo + 1 for lo, hi in runs), default=0)
    return runs, longest * CHANNEL_WIDTH_MHZ


def power_sweep(
    db: TransmitterDb,
    disks: Mapping[str, CoverageDisk],
    plan: ChannelPlan,
    loc: NgPoint,
    powers: Sequence[float],
    prop: PropagationParams,
) -> list[tuple[float, int, int]]:
    """Evaluate availability across transmit powers.

    Returns ``(power_watts, rho, filtered_rho)`` per input power, in input
    order.  Keep-out radii grow with power, so rho is nonincreasing along
    any ascending power list.
    """
    if not powers:
        raise ValueError("powers must be nonempty")
    points: list[tuple[float, int, int]] = []
    for p in powers:
        result = availability(db, disks, plan, QueryParams(loc, p, prop))
        filtered = adjacent_filter(result)
        points.append((p, result.rho, len(filtered)))
    return points


@dataclass(eq=False)
class RhoGrid:
    """Vacant-channel counts over a region (row 0 = southern row)."""

    origin: NgPoint
    cell_size_m: float
    values: np.ndarray  # int, shape (nrows, ncols)

    @property
    def nrows(self) -> int:
        return self.values.shape[0]

    @property
    def ncols(self) -> int:
        return self.values.shape[1]

    def cell_center(self, row: int, col: int) -> NgPoint:
        return NgPoint(
            self.origin.easting + (col + 0.5) * self.cell_size_m,
            self.origin.northing + (row + 0.5) * self.cell_size_m,
        )


def availability_grid(
    db: TransmitterDb,
    disks: Mapping[str, CoverageDisk],
    plan: ChannelPlan,
    region: BoundingBox,
    cell_size_m: float,
    p_cr_watts: float,
    prop: PropagationParams,
) -> RhoGrid:
    """Batch form of :func:`availability` over a region.

    Each cell holds rho evaluated at the cell centre; results are
    deterministic and identical to pointwise queries.
    """
    if region.is_empty():
        raise ValueError("region is empty")
    if cell_size_m <= 0:
        raise ValueError(f"cell size must be positive, got {cell_size_m}")

    ncols = max(1, int(np.ceil(region.width / cell_size_m)))
    nrows = max(1, int(np.ceil(region.height / cell_size_m)))
    centers_e = region.min_e + (np.arange(ncols) + 0.5) * cell_size_m
    centers_n = region.min_n + (np.arange(nrows) + 0.5) * cell_size_m
    dx = centers_e[np.newaxis, :]
    dy = centers_n[:, np.newaxis]

    blocked: dict[int, np.ndarray] = {}
    for tx in db:
        disk = disks.get(tx.id)
        if disk is None:
            raise ValueError(f"no coverage disk for transmitter {tx.id!r}")
        interleaved_channels = tx.channels & plan.interleaved
        if not interleaved_channels:
            continue
        r_keepout = keepout_radius(p_cr_watts, tx.erp_watts, disk.radius_m, prop)
        inside = np.hypot(dx - tx.position.easting, dy - tx.position.northing) < r_keepout
        for ch in interleaved_channels:
            if ch in blocked:
                blocked[ch] |= inside
            else:
                blocked[ch] = inside.copy()

    values = np.full((nrows, ncols), len(plan.interleaved), dtype=int)
    for mask in blocked.values():
        values -= mask.astype(int)
    return RhoGrid(
        origin=NgPoint(region.min_e, region.min_n), cell_size_m=cell_size_m, values=values
    )

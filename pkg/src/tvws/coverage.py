"""Per-transmitter coverage: rasters, disk approximation, synthesis.

Two representations of where a DTV transmitter can be received:

* :class:`CoverageRaster` -- a boolean grid, the fidelity the public
  coverage maps actually have.  Real coverage contours are ragged (terrain,
  clutter, antenna patterns), so the raster is the ground truth here.
* :class:`CoverageDisk` -- the smallest transmitter-centred disk that
  still contains the whole covered area.  A conservative simplification
  that turns keep-out checks into one distance comparison per transmitter.

Raster row 0 is the SOUTHERN row; cell (row, col) has its centre at
``origin + ((col + 0.5) * cell, (row + 0.5) * cell)``.  The on-disk ASC
format stores the northernmost row first, as ESRI ASCII grids do.
"""

from __future__ import annotations

import io
import math
import random
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from tvws.errors import ParseError
from tvws.geo import EASTING_MAX, NORTHING_MAX, NgPoint
from tvws.keepout import PropagationParams
from tvws.txdb import Transmitter, TransmitterDb

# Closes the pathloss equation for synthetic coverage: the received power a
# TV set at the coverage edge is assumed to just decode.  Calibrated so a
# 200 kW station with pathloss exponent 3 and protection ratio 1 reaches
# 60 km.  Configuration, not a measured constant.
DEFAULT_MIN_RECEIVER_POWER_W = 200_000.0 / 60_000.0**3

ASC_NODATA = -9999


@dataclass(eq=False)
class CoverageRaster:
    """Boolean coverage grid for one transmitter (row 0 = southern row)."""

    transmitter_id: str
    origin: NgPoint  # southwest corner of the grid
    cell_size_m: float
    cells: np.ndarray  # bool, shape (nrows, ncols)

    def __post_init__(self) -> None:
        if self.cell_size_m <= 0:
            raise ValueError(f"cell size must be positive, got {self.cell_size_m}")
        self.cells = np.asarray(self.cells, dtype=bool)
        if self.cells.ndim != 2 or self.cells.shape[0] < 1 or self.cells.shape[1] < 1:
            raise ValueError("cells must be a 2-d array with at least one cell")

    @property
    def nrows(self) -> int:
        return self.cells.shape[0]

    @property
    def ncols(self) -> int:
        return self.cells.shape[1]

    def cell_center(self, row: int, col: int) -> NgPoint:
        return NgPoint(
            self.origin.easting + (col + 0.5) * self.cell_size_m,
            self.origin.northing + (row + 0.5) * self.cell_size_m,
        )


@dataclass(frozen=True)
class CoverageDisk:
    """Transmitter-centred disk enclosing the station's covered area."""

    transmitter_id: str
    center: NgPoint
    radius_m: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius_m) and self.radius_m > 0):
            raise ValueError(f"disk radius must be positive, got {self.radius_m}")


def _snap_index(offset: float, cell: float) -> int:
    # Nearest-centre cell index on an infinite lattice; a point exactly on
    # a cell boundary snaps to the lower index.
    return math.ceil(offset / cell) - 1


def covers(raster: CoverageRaster, p: NgPoint) -> bool:
    """Whether ``p`` lands on a covered cell.

    The point is snapped to the nearest cell centre (boundary ties go to
    the lower row, then lower column); anything outside the raster extent
    is uncovered.
    """
    col = _snap_index(p.easting - raster.origin.easting, raster.cell_size_m)
    row = _snap_index(p.northing - raster.origin.northing, raster.cell_size_m)
    if 0 <= row < raster.nrows and 0 <= col < raster.ncols:
        return bool(raster.cells[row, col])
    return False


def enclosing_disk(raster: CoverageRaster, tx: Transmitter) -> CoverageDisk:
    """Smallest transmitter-centred disk containing every covered cell.

    Radius is the farthest covered cell centre plus half the cell diagonal.
    The diagonal padding (rather than half a cell side) is what guarantees
    the *corners* of every covered cell fall inside the disk, by the
    triangle inequality; it still exceeds the exact minimum containing
    radius by less than one cell size.
    """
    if raster.transmitter_id != tx.id:
        raise ValueError(
            f"raster belongs to {raster.transmitter_id!r}, not {tx.id!r}"
        )
    rows, cols = np.nonzero(raster.cells)
    if rows.size == 0:
        raise ValueError(f"raster for {tx.id!r} has no covered cell")
    centers_e = raster.origin.easting + (cols + 0.5) * raster.cell_size_m
    centers_n = raster.origin.northing + (rows + 0.5) * raster.cell_size_m
    dists = np.hypot(centers_e - tx.position.easting, centers_n - tx.position.northing)
    radius = float(dists.max()) + raster.cell_size_m * math.sqrt(2.0) / 2.0
    return CoverageDisk(transmitter_id=tx.id, center=tx.position, radius_m=radius)


def nominal_coverage_radius(
    erp_watts: float,
    prop: PropagationParams,
    p_min_watts: float = DEFAULT_MIN_RECEIVER_POWER_W,
) -> float:
    """Pathloss-model coverage radius: (ERP / (beta_th * P_min)) ** (1/alpha)."""
    if erp_watts <= 0:
        raise ValueError("ERP must be positive")
    if p_min_watts <= 0:
        raise ValueError("receiver sensitivity power must be positive")
    return (erp_watts / (prop.beta_th * p_min_watts)) ** (1.0 / prop.alpha)


def synth_coverage(
    tx: Transmitter,
    params: PropagationParams,
    cell_size_m: float,
    irregularity: float = 0.0,
    seed: int = 0,
    p_min_watts: float = DEFAULT_MIN_RECEIVER_POWER_W,
) -> CoverageRaster:
    """Generate a synthetic coverage raster for one transmitter.

    At ``irregularity`` 0 the covered set is exactly the cells whose
    centres lie within the nominal pathloss radius.  Larger values scale
    that radius by a smooth periodic noise field in bearing, giving the
    ragged, decidedly non-circular contours real maps show.  Deterministic
    in ``seed``.  The grid is clipped to the OSGB envelope.
    """
    if cell_size_m <= 0:
        raise ValueError(f"cell size must be positive, got {cell_size_m}")
    if not 0.0 <= irregularity <= 1.0:
        raise ValueError(f"irregularity must be within [0, 1], got {irregularity}")

    r_nominal = nominal_coverage_radius(tx.erp_watts, params, p_min_watts)
    rng = random.Random(seed)
    amps = np.array([rng.uniform(0.0, 1.0) / k for k in range(1, 6)])
    phases = np.array([rng.uniform(0.0, 2.0 * math.pi) for _ in range(5)])
    amps /= amps.sum() or 1.0  # noise stays within [-1, 1]

    r_extent = r_nominal * (1.0 + irregularity) + cell_size_m
    e_lo = max(0.0, tx.position.easting - r_extent)
    n_lo = max(0.0, tx.position.northing - r_extent)
    e_hi = min(EASTING_MAX, tx.position.easting + r_extent)
    n_hi = min(NORTHING_MAX, tx.position.northing + r_extent)
    ncols = max(1, math.ceil((e_hi - e_lo) / cell_size_m))
    nrows = max(1, math.ceil((n_hi - n_lo) / cell_size_m))
    # envelope clipping can leave the outermost centre past the envelope
    # edge; drop such cells so every cell centre is a valid grid position
    if ncols > 1 and e_lo + (ncols - 0.5) * cell_size_m >= EASTING_MAX:
        ncols -= 1
    if nrows > 1 and n_lo + (nrows - 0.5) * cell_size_m >= NORTHING_MAX:
        nrows -= 1

    cols = e_lo + (np.arange(ncols) + 0.5) * cell_size_m
    rows = n_lo + (np.arange(nrows) + 0.5) * cell_size_m
    dx = cols[np.newaxis, :] - tx.position.easting
    dy = rows[:, np.newaxis] - tx.position.northing
    dist = np.hypot(dx, dy)

    if irregularity > 0.0:
        theta = np.arctan2(dy, dx)
        noise = np.zeros_like(dist)
        for k, (a, phi) in enumerate(zip(amps, phases), start=1):
            noise += a * np.cos(k * theta + phi)
        scale = np.maximum(0.05, 1.0 + irregularity * noise)
    else:
        scale = 1.0

    covered = dist <= r_nominal * scale
    return CoverageRaster(
        transmitter_id=tx.id,
        origin=NgPoint(e_lo, n_lo),
        cell_size_m=cell_size_m,
        cells=covered,
    )


# ---------------------------------------------------------------------------
# File formats: ESRI-ASCII-style rasters and one-line disk cache files.

def write_asc_grid(
    origin: NgPoint, cell_size_m: float, values: np.ndarray, nodata: int = ASC_NODATA
) -> str:
    """Serialize an integer grid (row 0 = south) as ESRI-ASCII-style text."""
    nrows, ncols = values.shape
    out = io.StringIO()
    out.write(f"ncols        {ncols}\n")
    out.write(f"nrows        {nrows}\n")
    out.write(f"xllcorner    {origin.easting!r}\n")
    out.write(f"yllcorner    {origin.northing!r}\n")
    out.write(f"cellsize     {cell_size_m!r}\n")
    out.write(f"NODATA_value {nodata}\n")
    for row in range(nrows - 1, -1, -1):  # northernmost row first
        out.write(" ".join(str(int(v)) for v in values[row]))
        out.write("\n")
    return out.getvalue()


def write_asc(raster: CoverageRaster) -> str:
    return write_asc_grid(raster.origin, raster.cell_size_m, raster.cells.astype(int))


def read_asc(text: str, transmitter_id: str, source: str = "raster") -> CoverageRaster:
    """Parse an ESRI-ASCII-style coverage grid (1 = covered)."""
    lines = text.splitlines()
    header: dict[str, float] = {}
    body_start = 0
    expected = {"ncols", "nrows", "xllcorner", "yllcorner", "cellsize", "nodata_value"}
    for i, line in enumerate(lines):
        parts = line.split()
        if len(parts) == 2 and parts[0].lower() in expected:
            try:
                header[parts[0].lower()] = float(parts[1])
            except ValueError:
                raise ParseError(
                    f"bad header value {parts[1]!r}", source=source, line=i + 1
                ) from None
            body_start = i + 1
        else:
            break
    for key in ("ncols", "nrows", "xllcorner", "yllcorner", "cellsize"):
        if key not in header:
            raise ParseError(f"missing header line {key!r}", source=source)

    ncols = int(header["ncols"])
    nrows = int(header["nrows"])
    nodata = header.get("nodata_value", float(ASC_NODATA))
    body = " ".join(lines[body_start:])
    try:
        flat = np.array(body.split(), dtype=float)
    except ValueError:
        raise ParseError("non-numeric cell value", source=source) from None
    if flat.size != nrows * ncols:
        raise ParseError(
            f"expected {nrows * ncols} cell values, got {flat.size}", source=source
        )
    grid = flat.reshape(nrows, ncols)[::-1]  # file is north-first; flip to row 0 = south
    cells = grid == 1
    if np.any((grid != 0) & (grid != 1) & (grid != nodata)):
        raise ParseError("cell values must be 0, 1 or NODATA", source=source)
    return CoverageRaster(
        transmitter_id=transmitter_id,
        origin=NgPoint(header["xllcorner"], header["yllcorner"]),
        cell_size_m=header["cellsize"],
        cells=cells,
    )


def write_disk(disk: CoverageDisk) -> str:
    return f"{disk.center.easting!r} {disk.center.northing!r} {disk.radius_m!r}\n"


def read_disk(text: str, transmitter_id: str, source: str = "disk") -> CoverageDisk:
    parts = text.split()
    if len(parts) != 3:
        raise ParseError(
            f"expected 'center_e center_n radius_m', got {text.strip()!r}", source=source
        )
    try:
        e, n, r = (float(p) for p in parts)
    except ValueError:
        raise ParseError(f"bad disk numbers {text.strip()!r}", source=source) from None
    return CoverageDisk(transmitter_id=transmitter_id, center=NgPoint(e, n), radius_m=r)


def load_rasters(coverage_dir: str | Path, db: TransmitterDb) -> dict[str, CoverageRaster]:
    """Read ``<id>.asc`` for every transmitter in the database."""
    coverage_dir = Path(coverage_dir)
    rasters: dict[str, CoverageRaster] = {}
    for tx in db:
        path = coverage_dir / f"{tx.id}.asc"
        if not path.is_file():
            raise FileNotFoundError(f"no coverage raster for {tx.id!r}: {path}")
        rasters[tx.id] = read_asc(path.read_text(), tx.id, source=str(path))
    return rasters


def load_disks(
    coverage_dir: str | Path, db: TransmitterDb, write_cache: bool = True
) -> dict[str, CoverageDisk]:
    """Read ``<id>.disk`` caches, deriving (and caching) from rasters as needed."""
    coverage_dir = Path(coverage_dir)
    disks: dict[str, CoverageDisk] = {}
    for tx in db:
        disk_path = coverage_dir / f"{tx.id}.disk"
        if disk_path.is_file():
            disks[tx.id] = read_disk(disk_path.read_text(), tx.id, source=str(disk_path))
            continue
        asc_path = coverage_dir / f"{tx.id}.asc"
        if not asc_path.is_file():
            raise FileNotFoundError(
                f"neither disk cache nor raster found for {tx.id!r} in {coverage_dir}"
            )
        raster = read_asc(asc_path.read_text(), tx.id, source=str(asc_path))
        disk = enclosing_disk(raster, tx)
        disks[tx.id] = disk
        if write_cache:
            try:
                disk_path.write_text(write_disk(disk))
            except OSError:
                pass  # read-only data dir; recomputing next time is fine
    return disks

"""Protection geometry: how far a cognitive radio must stay from a station.

A TV set at the very edge of a station's coverage receives the weakest
signal the service still protects.  Under a power-law pathloss model with
exponent ``alpha``, keeping the ratio of TV signal to cognitive-radio
interference at that edge receiver above the protection ratio ``beta_th``
requires the radio to stand off at least

    (beta_th * P_cr / P_tv) ** (1/alpha) * R_tv

from the coverage edge, hence a keep-out radius around the transmitter of

    R' = (1 + (beta_th * P_cr / P_tv) ** (1/alpha)) * R_tv.

At zero transmit power R' collapses to the coverage radius itself, which
is why the low-power case can be read straight off the coverage maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from tvws.geo import NgPoint, distance

if TYPE_CHECKING:
    from tvws.coverage import CoverageDisk
    from tvws.txdb import Transmitter

DEFAULT_ALPHA = 3.0
DEFAULT_BETA_TH = 1.0


@dataclass(frozen=True)
class PropagationParams:
    """Pathloss exponent and TV-receiver protection ratio (linear)."""

    alpha: float = DEFAULT_ALPHA
    beta_th: float = DEFAULT_BETA_TH

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and self.alpha >= 1.0):
            raise ValueError(f"pathloss exponent must be >= 1, got {self.alpha}")
        if not (math.isfinite(self.beta_th) and self.beta_th > 0.0):
            raise ValueError(f"protection ratio must be positive, got {self.beta_th}")


@dataclass(frozen=True)
class QueryParams:
    """Where the cognitive radio is and how loud it intends to be."""

    location: NgPoint
    p_cr_watts: float
    prop: PropagationParams

    def __post_init__(self) -> None:
        if not (math.isfinite(self.p_cr_watts) and self.p_cr_watts >= 0.0):
            raise ValueError(f"transmit power must be >= 0 W, got {self.p_cr_watts}")


def keepout_radius(
    p_cr_watts: float, p_tv_watts: float, r_tv_m: float, prop: PropagationParams
) -> float:
    """Minimum distance from the transmitter at which its channels open up.

    Never less than the coverage radius, and strictly increasing in the
    radio's transmit power.
    """
    if p_tv_watts <= 0:
        raise ValueError(f"TV ERP must be positive, got {p_tv_watts}")
    if r_tv_m <= 0:
        raise ValueError(f"coverage radius must be positive, got {r_tv_m}")
    if p_cr_watts < 0:
        raise ValueError(f"transmit power must be >= 0 W, got {p_cr_watts}")
    return (1.0 + (prop.beta_th * p_cr_watts / p_tv_watts) ** (1.0 / prop.alpha)) * r_tv_m


def margin(p: NgPoint, tx: Transmitter, disk: CoverageDisk, q: QueryParams) -> float:
    """Signed clearance in metres beyond the keep-out radius.

    Zero or positive means the radio at ``p`` may use the transmitter's
    channels (the boundary itself is permitted).
    """
    if disk.transmitter_id != tx.id:
        raise ValueError(f"disk belongs to {disk.transmitter_id!r}, not {tx.id!r}")
    return distance(p, tx.position) - keepout_radius(
        q.p_cr_watts, tx.erp_watts, disk.radius_m, q.prop
    )

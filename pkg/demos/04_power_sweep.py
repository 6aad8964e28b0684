"""Vacant channels versus transmit power at one spot.

Places a handful of stations around a query point so each one starts
blocking at a different device power, then sweeps.  The resulting curve is
the classic shape: flat while the device is quiet enough that only
stations already covering the spot matter, then stepping down as the
keep-out radii of ever-farther stations reach the device.
"""

import math

from tvws import (
    CoverageDisk,
    NgPoint,
    PropagationParams,
    Transmitter,
    TransmitterDb,
    default_plan,
    emit_sweep,
    plan_hash,
    power_sweep,
)

HERE = NgPoint(383_900.0, 398_000.0)


def station(tx_id, erp, channels, bearing_deg, r_tv, blocks_above):
    """A station whose channels close exactly when power exceeds blocks_above."""
    if blocks_above == 0.0:
        d = 0.5 * r_tv  # already covering the query point
    elif blocks_above == math.inf:
        d = 3.0 * r_tv
    else:
        d = r_tv * (1.0 + (blocks_above / erp) ** (1.0 / 3.0))
    pos = NgPoint(
        HERE.easting + d * math.cos(math.radians(bearing_deg)),
        HERE.northing + d * math.sin(math.radians(bearing_deg)),
    )
    tx = Transmitter(tx_id, pos, erp, 150.0, frozenset(channels))
    return tx, CoverageDisk(tx_id, pos, r_tv)


def demo():
    plan = default_plan()
    prop = PropagationParams()
    specs = [
        station("local", 20_000, {41, 42, 43}, 15, 28_000, 0.0),
        station("near", 30_000, {45, 46}, 80, 32_000, 0.25),
        station("mid", 15_000, {48, 49}, 145, 25_000, 0.8),
        station("far", 40_000, {51, 52}, 210, 35_000, 1.5),
        station("farther", 25_000, {54, 55}, 275, 30_000, 3.0),
        station("distant", 10_000, {57, 58}, 340, 22_000, math.inf),
    ]
    db = TransmitterDb(tuple(tx for tx, _ in specs))
    disks = {tx.id: disk for tx, disk in specs}

    powers = [0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 4.0]
    points = power_sweep(db, disks, plan, HERE, powers, prop)

    print("power      vacant   after N+-1 filter")
    for power, rho, filtered in points:
        bar = "#" * rho
        print(f"{power:7.2f} W   {rho:3d} {filtered:5d}   {bar}")

    print()
    print(emit_sweep(points, alpha=prop.alpha, beta_th=prop.beta_th,
                     plan_digest=plan_hash(plan)), end="")


if __name__ == "__main__":
    demo()

"""Keep-out geometry: how far must a device stay from a TV transmitter?

The keep-out radius R' = (1 + (beta * Pcr / Ptv) ** (1/alpha)) * Rtv grows
from the coverage radius at zero power toward larger multiples as the
device gets louder.  For multi-watt devices the extra standoff reaches
tens of kilometres, which is why high-power white-space use needs the
disk-model machinery rather than a straight read of the coverage maps.
"""

from tvws import PropagationParams, keepout_radius


def demo():
    r_tv = 50_000.0      # coverage radius of a mid-sized station, metres
    p_tv = 100_000.0     # 100 kW ERP

    print(f"station: ERP {p_tv / 1000:.0f} kW, coverage radius {r_tv / 1000:.0f} km")
    print()
    print("device power   alpha=2      alpha=3      alpha=4")
    for p_cr in (0.0, 0.05, 0.1, 1.0, 4.0, 100.0):
        radii = [
            keepout_radius(p_cr, p_tv, r_tv, PropagationParams(alpha, 1.0)) / 1000
            for alpha in (2.0, 3.0, 4.0)
        ]
        label = f"{p_cr * 1000:.0f} mW" if p_cr < 1 else f"{p_cr:.0f} W"
        print(f"  {label:>8}    {radii[0]:7.1f} km   {radii[1]:7.1f} km   {radii[2]:7.1f} km")

    print()
    print("zero power collapses to the coverage radius itself: the low-power")
    print("answer can be read straight off the coverage maps.")


if __name__ == "__main__":
    demo()

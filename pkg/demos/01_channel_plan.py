"""Tour of the UK UHF channel plan.

Shows the channel-to-frequency arithmetic and how the post-switchover band
splits into interleaved (white-space), cleared and excluded channels.
"""

from tvws import bandwidth_mhz, channel_to_band, contiguity, default_plan


def demo():
    plan = default_plan()

    print("UK UHF band, channels 21-68, 8 MHz each")
    for ch in (21, 22, 39, 60, 68):
        low, high = channel_to_band(ch)
        print(f"  channel {ch}: {low}-{high} MHz ({plan.category(ch)})")

    print()
    print(f"interleaved: {len(plan.interleaved)} channels, "
          f"{bandwidth_mhz(plan.interleaved)} MHz")
    print(f"excluded:    {sorted(plan.excluded)} "
          f"({bandwidth_mhz(plan.excluded)} MHz withdrawn from white-space use)")
    print(f"cleared:     {len(plan.cleared)} channels, "
          f"{bandwidth_mhz(plan.cleared)} MHz")
    print(f"interleaved before the 61/62 withdrawal: "
          f"{bandwidth_mhz(plan.interleaved | plan.excluded)} MHz")

    runs, widest = contiguity(plan.interleaved)
    pretty = ", ".join(f"{lo}-{hi}" for lo, hi in runs)
    print()
    print(f"interleaved runs: {pretty}; widest contiguous block {widest} MHz")


if __name__ == "__main__":
    demo()

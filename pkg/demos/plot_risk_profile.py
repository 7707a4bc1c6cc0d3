"""
Risk profile of a liquidity position versus buy and hold
========================================================

"""

import numpy as np

from poolmath import PriceRange, RangePosition, risk_profile, v2_position

# an unbounded position opened at P0 = 1: the LP curve is tangent to the
# hold line at the opening price and sits below it everywhere else
P0 = 1.0
grid = np.geomspace(0.05, 5.0, 400)
full = risk_profile(v2_position(1.0), P0, grid)

# a [80%, 120%] band: below the band the position is 100% of the falling
# asset (value linear in price), above it 100% of the other (value flat)
band = risk_profile(RangePosition(1.0, PriceRange(0.8, 1.2)), P0, grid)

for curve, name in ((full, "full range"), (band, "[80%, 120%]")):
    at_half = np.searchsorted(curve.price, 0.5)
    print(f"{name:12}  V0={curve.v0:.4f}  "
          f"value at P=0.5: {curve.v_lp[at_half]:.4f} "
          f"(hold: {curve.v_hold[at_half]:.4f})")

# the worst case is stark for the band: at P -> 0 the hold portfolio
# keeps its X half, the banded LP went all-in on the crashing asset
print(f"\nas P -> 0: hold keeps {band.v_hold[0] / band.v0:.1%} of V0, "
      f"the banded LP keeps {band.v_lp[0] / band.v0:.1%}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
    for ax, curve, title in zip(axes, (full, band), ("full range", "band [0.8, 1.2]")):
        ax.plot(curve.price, curve.v_lp, label="LP value")
        ax.plot(curve.price, curve.v_hold, "--", label="buy and hold")
        ax.axvline(P0, lw=0.5, color="k")
        ax.set_xlim(0, 3)
        ax.set_xlabel("price")
        ax.set_title(title)
    axes[0].set_ylabel("portfolio value")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig("risk_profile.png", dpi=120)
    print("wrote risk_profile.png")
except ImportError:
    print("matplotlib not installed; skipping the figure")

# the curves also ship as CSV for any external plotter
band.to_csv("risk_profile_band.csv")
print("wrote risk_profile_band.csv")

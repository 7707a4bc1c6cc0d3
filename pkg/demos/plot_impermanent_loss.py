"""
Impermanent loss in closed form, two normalizations, one table
==============================================================

"""

import numpy as np

# the loss depends only on the price ratio R = P1/P0.  The first form
# divides the LP-vs-hold gap by the opening value, the second by the
# hold value at the new price; they tell the same story at different
# scales and are related by il_paper = il_common * (R + 1) / 2
from poolmath import il_v2, il_v2_common

for r in (0.5, 0.8, 1.0, 1.25, 2.0, 3.0):
    print(f"R={r:<5}  vs opening value {il_v2(r):+8.4%}   vs hold {il_v2_common(r):+8.4%}")

# halving and doubling do not hurt equally under the first form...
print(f"\nil(0.5) = {il_v2(0.5):.6f}  vs  il(2) = {il_v2(2.0):.6f}")
# ...but the hold-normalized form is perfectly symmetric in R <-> 1/R
print(f"common(0.5) = {il_v2_common(0.5):.6f} == common(2) = {il_v2_common(2.0):.6f}")

# concentrated positions lose faster: the same +-20% move, graded over
# tighter and tighter bands around the opening price
from poolmath import preset_table

table = preset_table("table1")
print("\n" + table.render_text())

# the full curves, for plotting or eyeballing
ratios = np.geomspace(0.05, 20.0, 400)
paper = np.array([il_v2(r) for r in ratios])
common = np.array([il_v2_common(r) for r in ratios])

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.semilogx(ratios, 100 * paper, label="vs opening value")
    ax.semilogx(ratios, 100 * common, label="vs buy and hold")
    ax.axhline(0, lw=0.5, color="k")
    ax.set_xlabel("price ratio R = P1/P0")
    ax.set_ylabel("impermanent loss (%)")
    ax.legend()
    fig.tight_layout()
    fig.savefig("impermanent_loss.png", dpi=120)
    print("\nwrote impermanent_loss.png")
except ImportError:
    print("\nmatplotlib not installed; skipping the figure")

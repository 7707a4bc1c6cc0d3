"""
Two readings of "price" for a banded position
=============================================

"""

import numpy as np

from poolmath import (
    Convention,
    PriceRange,
    RangePosition,
    range_intercepts,
    reserves_at_price_closed,
    reserves_at_price_quadratic,
)

# a banded position keeps real reserves on a shifted curve
# (x + a)(y + b) = K.  "price" can mean the virtual ratio (x+a)/(y+b),
# which yields a closed form, or the real ratio x/y, which yields a
# quadratic per asset.  Both are implemented; they are different curves.
bounds = PriceRange(0.5, 2.0)
virt = RangePosition(1.0, bounds)
quad = RangePosition(1.0, bounds, Convention.QUADRATIC)

x_max, y_max = range_intercepts(virt)
print(f"band {bounds.p_low}..{bounds.p_high}, intercepts x_max={x_max:.4f} y_max={y_max:.4f}\n")

print("price   virtual x / y        real-ratio x / y")
for p in (0.5, 0.8, 1.0, 1.25, 2.0):
    xv, yv = reserves_at_price_closed(virt, p)
    xq, yq = reserves_at_price_quadratic(quad, p)
    print(f"{p:>5}   {xv:.4f} / {yv:.4f}    {xq:.4f} / {yq:.4f}")

# at the band edges the virtual convention lands exactly on the
# intercepts; the real-ratio convention cannot (x/y is 0/positive or
# positive/0 there), which is why its domain is the closed band only
print(f"\nvirtual at p_high: {reserves_at_price_closed(virt, 2.0)} == ({x_max}, 0.0)")

# for wide bands the two conventions converge on the same reserves
wide_v = RangePosition(1.0, PriceRange(1e-8, 1e8))
wide_q = RangePosition(1.0, PriceRange(1e-8, 1e8), Convention.QUADRATIC)
worst = 0.0
for p in np.geomspace(0.1, 10, 50):
    xv, yv = reserves_at_price_closed(wide_v, p)
    xq, yq = reserves_at_price_quadratic(wide_q, p)
    worst = max(worst, abs(xq / xv - 1), abs(yq / yv - 1))
print(f"\n[1e-8, 1e8] band: conventions agree to {worst:.2e} over P in [0.1, 10]")

# narrow bands are a different story: the same "price" puts the two
# conventions at visibly different points on the curve
narrow_v = RangePosition(1.0, PriceRange(0.9, 1.1))
narrow_q = RangePosition(1.0, PriceRange(0.9, 1.1), Convention.QUADRATIC)
xv, yv = reserves_at_price_closed(narrow_v, 1.05)
xq, yq = reserves_at_price_quadratic(narrow_q, 1.05)
print(f"[0.9, 1.1] band at P=1.05: virtual x={xv:.5f}, real-ratio x={xq:.5f} "
      f"({xq / xv - 1:+.1%})")

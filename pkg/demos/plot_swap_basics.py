"""
Swaps on a constant-product pool, and the order book hiding inside it
=====================================================================

"""

# a pool is just two reserves; the product x*y stays fixed across swaps
from poolmath import PoolState, quote_swap_y_out, quote_swap_x_out, apply_swap

pool = PoolState(x=2_000_000.0, y=1_000.0, fee_rate=0.003)
print(f"reserves: x={pool.x:,.0f}, y={pool.y:,.0f}")
print(f"spot price: {pool.x / pool.y:,.2f} X per Y")
print(f"invariant K: {pool.invariant:,.0f}")

# quote buying 10 Y: the cost curve is convex, so the average price paid
# sits above spot, and the 0.3% fee is charged on top of the input
quote = quote_swap_y_out(pool, 10.0)
print(f"\nbuy 10 Y: pay {quote.delta_x:,.2f} X "
      f"(avg {quote.delta_x / 10:,.2f} per Y, fee {quote.fee_paid:,.2f} X)")

# applying the quote moves the reserves; fees accumulate outside the curve
pool2 = apply_swap(pool, quote)
print(f"after swap: x={pool2.x:,.2f}, y={pool2.y:,.2f}, "
      f"product drift {pool2.x * pool2.y / pool.invariant - 1:+.2e}")
print(f"collected fees: {pool2.fees_x:,.2f} X")

# the other direction: sell Y for exactly 20,000 X out
quote = quote_swap_x_out(pool, 20_000.0)
print(f"\ntake 20,000 X out: deposit {quote.delta_y:,.4f} Y")

# slicing the curve into fixed-size buckets reproduces an order book:
# each level's average price is what that bucket actually costs
from poolmath import Side, depth_ladder

asks = depth_ladder(pool, bucket=25.0, n_levels=6, side=Side.ASKS, fee_rate=pool.fee_rate)
bids = depth_ladder(pool, bucket=25.0, n_levels=6, side=Side.BIDS, fee_rate=pool.fee_rate)
print("\nlevel  ask avg   bid avg   cum. ask cost")
for i in range(6):
    print(f"{i + 1:>5}  {asks.avg_price[i]:>7,.1f}  {bids.avg_price[i]:>7,.1f}"
          f"  {asks.cumulative_cost[i]:>13,.0f}")

# the ladder is path independent: six 25-Y buckets cost exactly what one
# 150-Y sweep costs (up to the fee multiplier applied at the end)
sweep = quote_swap_y_out(pool, 150.0)
print(f"\nladder total {asks.cumulative_cost[-1]:,.2f} X "
      f"vs single sweep {sweep.delta_x:,.2f} X")

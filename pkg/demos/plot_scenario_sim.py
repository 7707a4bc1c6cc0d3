"""
Price-path scenarios: where the PnL of a liquidity position comes from
======================================================================

"""

from poolmath import (
    ArbModel,
    PricePath,
    PriceRange,
    RangePosition,
    annualize,
    annualize_compounded,
    gbm_path,
    simulate,
    v2_position,
)

# the simulator drives an arbitrageur along an external price path and
# splits the final PnL into three legs that add up exactly:
#   pnl_total = pnl_hold (price move on the opening portfolio)
#             + pnl_il   (cost of being the counterparty to arbitrage)
#             + pnl_fees (what the arbitrageur paid on the way)
path = gbm_path(p0=1.0, mu=0.0, sigma=0.8, n_steps=52, seed=42)
print(f"52-step path: final price {path.prices[-1]:.4f}")

for fee in (0.0, 0.0005, 0.003, 0.01):
    res = simulate(v2_position(1.0), path, fee_rate=fee)
    print(f"fee {fee:>6.2%}:  total {res.pnl_total:+8.4%} = "
          f"hold {res.pnl_hold:+8.4%} + il {res.pnl_il:+8.4%} + fees {res.pnl_fees:+7.4%}")

# with zero fees the end state depends only on the endpoints; the path
# in between is invisible
direct = simulate(v2_position(1.0), PricePath.from_prices([1.0, 0.5]))
wiggly = simulate(v2_position(1.0), PricePath.from_prices([1.0, 1.6, 0.7, 1.2, 0.5]))
print(f"\nzero fee, same endpoints: {direct.pnl_total:.10f} == {wiggly.pnl_total:.10f}")

# a banded position concentrates both the fee income and the risk;
# once the price leaves the band the position goes to sleep
band = RangePosition(1.0, PriceRange(0.8, 1.2))
res = simulate(band, path, fee_rate=0.003)
print(f"\n[80%,120%] band, 0.3% fee: total {res.pnl_total:+.4%} "
      f"(fees {res.pnl_fees:+.4%}, il {res.pnl_il:+.4%})")

# the fee_band arbitrage model only trades when the mispricing exceeds
# the fee, so it collects less than full convergence does
full = simulate(v2_position(1.0), path, fee_rate=0.01, arb=ArbModel.FULL_CONVERGENCE)
lazy = simulate(v2_position(1.0), path, fee_rate=0.01, arb=ArbModel.FEE_BAND)
print(f"\n1% fee: full-convergence fees {full.pnl_fees:.4%}, "
      f"fee-band fees {lazy.pnl_fees:.4%}")

# a steady weekly fee yield, scaled to a year, simple and compounded
for weekly in (0.01, 0.015):
    print(f"\n{weekly:.1%}/week -> {annualize(weekly):.0%}/year simple, "
          f"{annualize_compounded(weekly):.1%}/year compounded")

# per-step traces export as CSV for plotting
res = simulate(band, path, fee_rate=0.003)
res.trace_to_csv("scenario_trace.csv")
print("\nwrote scenario_trace.csv")

"""Scenario simulation: an LP position driven along an external price path.

At each path step an arbitrageur trades the pool toward the external
price, either all the way (full_convergence) or to the nearest edge of
the no-arbitrage band [P*(1-f), P/(1-f)] that the fee opens up
(fee_band).  Fees accrue in the input asset of each arb trade and stay
outside the curve, so the position's liquidity never compounds and the
final PnL splits exactly into three legs:

    pnl_total = pnl_hold + pnl_il + pnl_fees

where pnl_hold marks the opening quantities at the final price, pnl_il
is the value-function impermanent loss, and pnl_fees converts Y-side
fees at the final price.  All legs are relative to the opening value V0.
"""

from __future__ import annotations

import enum
import io
import math
from dataclasses import dataclass

import numpy as np

from .concentrated import Convention, RangePosition, position_reserves
from .core import PoolState, spot_price
from .errors import InvalidParameter
from .il import as_position, il_generic

STANDARD_FEE_TIERS = (0.0005, 0.003, 0.01)
MAX_FEE_RATE = 0.1


def validate_fee_rate(rate: float) -> float:
    """Accept a standard tier or any custom rate in [0, 0.1)."""
    rate = float(rate)
    if not 0.0 <= rate < MAX_FEE_RATE:
        raise InvalidParameter(
            f"fee rate must be in [0, {MAX_FEE_RATE}), got {rate}"
        )
    return rate


class ArbModel(enum.Enum):
    FULL_CONVERGENCE = "full_convergence"
    FEE_BAND = "fee_band"


@dataclass(frozen=True)
class PricePath:
    """External price series: strictly increasing timestamps, prices > 0."""

    timestamps: np.ndarray
    prices: np.ndarray

    def __post_init__(self) -> None:
        ts = np.asarray(self.timestamps, dtype=float)
        px = np.asarray(self.prices, dtype=float)
        if ts.ndim != 1 or px.ndim != 1 or len(ts) != len(px) or len(px) == 0:
            raise InvalidParameter("path needs matching nonempty timestamp/price arrays")
        if not np.all(np.isfinite(ts)):
            raise InvalidParameter("timestamps must be finite")
        if len(ts) > 1 and not np.all(np.diff(ts) > 0.0):
            raise InvalidParameter("timestamps must be strictly increasing")
        if not np.all(np.isfinite(px)) or np.any(px <= 0.0):
            raise InvalidParameter("path prices must be finite and > 0")
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "prices", px)

    def __len__(self) -> int:
        return len(self.prices)

    @classmethod
    def from_prices(cls, prices, start: float = 0.0, step: float = 1.0) -> "PricePath":
        prices = np.asarray(prices, dtype=float)
        return cls(start + step * np.arange(len(prices)), prices)

    @classmethod
    def from_csv_text(cls, text: str) -> "PricePath":
        """Parse `timestamp,price` rows, header optional."""
        ts, px = [], []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.lower().startswith("timestamp"):
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise InvalidParameter(f"bad path row: {line!r}")
            try:
                ts.append(float(parts[0]))
                px.append(float(parts[1]))
            except ValueError:
                raise InvalidParameter(f"bad path row: {line!r}") from None
        return cls(np.asarray(ts), np.asarray(px))

    @classmethod
    def from_csv(cls, path: str) -> "PricePath":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_csv_text(fh.read())

    def to_csv(self, path: str | None = None) -> str:
        buf = io.StringIO()
        buf.write("timestamp,price\n")
        for t, p in zip(self.timestamps, self.prices):
            buf.write(f"{float(t)!r},{float(p)!r}\n")
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text


def gbm_path(
    p0: float,
    mu: float,
    sigma: float,
    n_steps: int,
    dt: float = 1.0 / 52.0,
    seed: int | None = None,
) -> PricePath:
    """Geometric Brownian motion sampler for scenario inputs.

    Produces n_steps + 1 prices starting at p0 with drift mu and
    volatility sigma per unit time; dt defaults to one week in years.
    Deterministic for a given seed.
    """
    p0 = float(p0)
    if not math.isfinite(p0) or p0 <= 0.0:
        raise InvalidParameter(f"p0 must be finite and > 0, got {p0}")
    if sigma < 0.0 or not math.isfinite(sigma) or not math.isfinite(mu):
        raise InvalidParameter("mu must be finite and sigma finite and >= 0")
    if n_steps < 1:
        raise InvalidParameter(f"n_steps must be >= 1, got {n_steps}")
    if dt <= 0.0 or not math.isfinite(dt):
        raise InvalidParameter(f"dt must be finite and > 0, got {dt}")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(n_steps)
    log_steps = (mu - 0.5 * sigma * sigma) * dt + sigma * math.sqrt(dt) * z
    prices = p0 * np.exp(np.concatenate([[0.0], np.cumsum(log_steps)]))
    return PricePath(dt * np.arange(n_steps + 1), prices)


@dataclass(frozen=True)
class SimResult:
    """Outcome of one simulation run.

    Reserves are the real (in-band) holdings at the end; fees_x/fees_y
    the accrued per-asset fees; fees_collected converts the Y side at
    the mark price.  PnL legs are fractions of the opening value v0.
    """

    position: RangePosition
    p0: float
    mark_price: float
    x: float
    y: float
    fees_x: float
    fees_y: float
    fees_collected: float
    v0: float
    pnl_total: float
    pnl_hold: float
    pnl_il: float
    pnl_fees: float
    trace: dict[str, np.ndarray] | None

    def trace_to_csv(self, path: str | None = None) -> str:
        """Emit `step,price,x,y,fees_x,fees_y` rows for the recorded steps."""
        if self.trace is None:
            raise InvalidParameter("simulation was run without trace recording")
        buf = io.StringIO()
        buf.write("step,price,x,y,fees_x,fees_y\n")
        t = self.trace
        for i in range(len(t["step"])):
            buf.write(
                f"{int(t['step'][i])},{float(t['price'][i])!r},"
                f"{float(t['x'][i])!r},{float(t['y'][i])!r},"
                f"{float(t['fees_x'][i])!r},{float(t['fees_y'][i])!r}\n"
            )
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text


def simulate(
    position: RangePosition | PoolState,
    path: PricePath,
    fee_rate: float = 0.0,
    arb: ArbModel = ArbModel.FULL_CONVERGENCE,
    record_trace: bool = True,
) -> SimResult:
    """Run the arbitrageur over the path and decompose the final PnL.

    The pool starts on-curve at the first path price.  Each step the
    arbitrageur moves the pool's price to the step's target (clamped to
    the band for a range position); the input side of each move pays
    fee_rate on top, accrued outside the curve.  With fee_band the
    target is the nearest edge of [P*(1-f), P/(1-f)] and the final mark
    is the pool's own price, since the band makes the external price
    unreachable; with full_convergence the mark is the external price.
    """
    fee = validate_fee_rate(fee_rate)
    if arb not in (ArbModel.FULL_CONVERGENCE, ArbModel.FEE_BAND):
        raise InvalidParameter(f"arb must be an ArbModel, got {arb!r}")
    if isinstance(position, PoolState):
        p_start = float(path.prices[0])
        if abs(spot_price(position) - p_start) > 1e-9 * p_start:
            raise InvalidParameter(
                f"pool spot {spot_price(position)} must match the first "
                f"path price {p_start}"
            )
    pos = as_position(position)
    if pos.convention is not Convention.VIRTUAL:
        raise InvalidParameter(
            "simulation trades the live curve; the real-price convention "
            "is an analytic mode with no trading mechanics"
        )

    k = pos.k
    lo, hi = pos.bounds.p_low, pos.bounds.p_high
    shift_x = math.sqrt(k * lo)
    shift_y = 0.0 if math.isinf(hi) else math.sqrt(k / hi)

    prices = path.prices
    p0 = float(prices[0])
    t0 = pos.bounds.clamp(p0)
    xv, yv = math.sqrt(k * t0), math.sqrt(k / t0)
    x0, y0 = xv - shift_x, yv - shift_y
    v0 = x0 + p0 * y0
    fees_x = fees_y = 0.0

    n = len(prices)
    if record_trace:
        tr_x = np.empty(n)
        tr_y = np.empty(n)
        tr_fx = np.empty(n)
        tr_fy = np.empty(n)
        tr_x[0], tr_y[0], tr_fx[0], tr_fy[0] = x0, y0, 0.0, 0.0

    for i in range(1, n):
        p_ext = float(prices[i])
        p_pool = xv / yv
        if arb is ArbModel.FULL_CONVERGENCE:
            target = pos.bounds.clamp(p_ext)
        else:
            band_lo, band_hi = p_ext * (1.0 - fee), p_ext / (1.0 - fee)
            if p_pool < band_lo:
                target = pos.bounds.clamp(band_lo)
            elif p_pool > band_hi:
                target = pos.bounds.clamp(band_hi)
            else:
                target = p_pool
        if target > p_pool:
            new_xv = math.sqrt(k * target)
            fees_x += (new_xv - xv) * fee / (1.0 - fee)
            xv, yv = new_xv, math.sqrt(k / target)
        elif target < p_pool:
            new_yv = math.sqrt(k / target)
            fees_y += (new_yv - yv) * fee / (1.0 - fee)
            xv, yv = math.sqrt(k * target), new_yv
        if record_trace:
            tr_x[i], tr_y[i] = xv - shift_x, yv - shift_y
            tr_fx[i], tr_fy[i] = fees_x, fees_y

    if arb is ArbModel.FULL_CONVERGENCE:
        mark = float(prices[-1])
    else:
        mark = xv / yv
    x_final, y_final = xv - shift_x, yv - shift_y
    fees_collected = fees_x + mark * fees_y
    pnl_total = (x_final + mark * y_final + fees_collected) / v0 - 1.0
    pnl_hold = (x0 + mark * y0) / v0 - 1.0
    pnl_il = il_generic(pos, p0, mark)
    pnl_fees = fees_collected / v0

    trace = None
    if record_trace:
        trace = {
            "step": np.arange(n),
            "price": prices.copy(),
            "x": tr_x,
            "y": tr_y,
            "fees_x": tr_fx,
            "fees_y": tr_fy,
        }
    return SimResult(
        position=pos,
        p0=p0,
        mark_price=mark,
        x=x_final,
        y=y_final,
        fees_x=fees_x,
        fees_y=fees_y,
        fees_collected=fees_collected,
        v0=v0,
        pnl_total=pnl_total,
        pnl_hold=pnl_hold,
        pnl_il=pnl_il,
        pnl_fees=pnl_fees,
        trace=trace,
    )


def pnl_decompose(result: SimResult) -> tuple[float, float, float]:
    """(hold, il, fees) legs of a run; they sum to pnl_total."""
    return result.pnl_hold, result.pnl_il, result.pnl_fees


def annualize(weekly_rate: float) -> float:
    """Simple 52-week scaling of a weekly rate."""
    weekly_rate = float(weekly_rate)
    if not weekly_rate > -1.0:
        raise InvalidParameter(f"weekly rate must be > -100%, got {weekly_rate}")
    return 52.0 * weekly_rate


def annualize_compounded(weekly_rate: float) -> float:
    """Compounded 52-week growth, (1 + w)**52 - 1; labeled separately
    because the simple scaling is the conventional quote."""
    weekly_rate = float(weekly_rate)
    if not weekly_rate > -1.0:
        raise InvalidParameter(f"weekly rate must be > -100%, got {weekly_rate}")
    return (1.0 + weekly_rate) ** 52 - 1.0

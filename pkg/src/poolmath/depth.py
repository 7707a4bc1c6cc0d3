"""The pool curve rendered as an equivalent order book.

A constant-product pool quotes every trade size, so its liquidity can be
rebucketed into discrete levels: fixed quantities of Y with the X cost
of each successive bucket.  Ask levels sell Y to the trader at rising
prices; bid levels buy Y at falling prices.  The ladder is a pure
function of the reserves and stays fixed until liquidity moves.
"""

from __future__ import annotations

import enum
import io
import math
from dataclasses import dataclass

import numpy as np

from .concentrated import RangePosition, position_reserves, range_intercepts
from .core import PoolState
from .errors import InsufficientLiquidity, InvalidParameter


class Side(enum.Enum):
    ASKS = "asks"
    BIDS = "bids"


@dataclass(frozen=True)
class DepthLadder:
    """Bucketed depth levels for one side of the book.

    avg_price is cost/quantity for the bucket, marginal_price the pool
    spot after the bucket executes, cumulative_cost the running X total.
    Ask averages rise level by level, bid averages fall; both reflect the
    convexity of the swap curve.
    """

    side: Side
    bucket: float
    avg_price: np.ndarray
    marginal_price: np.ndarray
    quantity: np.ndarray
    cumulative_cost: np.ndarray

    def __len__(self) -> int:
        return len(self.avg_price)

    def to_csv(self, path: str | None = None) -> str:
        """Emit `level,avg_price,marginal_price,quantity,cumulative_cost` rows."""
        buf = io.StringIO()
        buf.write("level,avg_price,marginal_price,quantity,cumulative_cost\n")
        rows = zip(self.avg_price, self.marginal_price, self.quantity, self.cumulative_cost)
        for i, (avg, marg, qty, cum) in enumerate(rows, start=1):
            buf.write(
                f"{i},{float(avg)!r},{float(marg)!r},{float(qty)!r},{float(cum)!r}\n"
            )
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text

    def cumulative_depth(self) -> tuple[np.ndarray, np.ndarray]:
        """(marginal price, cumulative quantity) pairs for a depth chart."""
        return self.marginal_price, np.cumsum(self.quantity)


def _ladder_params(bucket: float, n_levels: int) -> tuple[float, int]:
    bucket = float(bucket)
    if not math.isfinite(bucket) or bucket <= 0.0:
        raise InvalidParameter(f"bucket must be finite and > 0, got {bucket}")
    if int(n_levels) != n_levels or n_levels < 1:
        raise InvalidParameter(f"n_levels must be an integer >= 1, got {n_levels}")
    return bucket, int(n_levels)


def depth_ladder(
    source: PoolState | RangePosition,
    bucket: float,
    n_levels: int,
    side: Side = Side.ASKS,
    *,
    price: float | None = None,
    fee_rate: float = 0.0,
) -> DepthLadder:
    """Walk the curve in fixed-Y buckets and record each bucket's X cost.

    Each level applies one swap of size `bucket` to the running reserves,
    so the sum of level costs equals the single-shot cost of the total
    quantity (path independence of the curve).  Ladders are fee-free by
    default; a nonzero fee_rate scales ask costs by 1/(1-f) and bid
    proceeds by (1-f) without touching the marginal prices.

    For a plain pool the whole ladder must fit strictly inside the y
    reserve (asks) while bids are unbounded.  For a range position the
    walk starts from the reserves at `price` (required) and levels past
    the band edge are dropped; if not even one bucket fits the band,
    InsufficientLiquidity is raised.
    """
    bucket, n_levels = _ladder_params(bucket, n_levels)
    if not 0.0 <= fee_rate < 1.0:
        raise InvalidParameter(f"fee_rate must be in [0, 1), got {fee_rate}")
    if side not in (Side.ASKS, Side.BIDS):
        raise InvalidParameter(f"side must be Side.ASKS or Side.BIDS, got {side!r}")

    truncate = isinstance(source, RangePosition)
    if truncate:
        if price is None:
            raise InvalidParameter("a range position ladder needs the current price")
        xr, yr = position_reserves(source, price)
        _, y_max = range_intercepts(source)
        shift_x = math.sqrt(source.k * source.bounds.p_low)
        shift_y = (
            0.0
            if math.isinf(source.bounds.p_high)
            else math.sqrt(source.k / source.bounds.p_high)
        )
        xv, yv = xr + shift_x, yr + shift_y
        capacity = yr if side is Side.ASKS else y_max - yr
    elif isinstance(source, PoolState):
        if source.x == 0.0 or source.y == 0.0:
            raise InsufficientLiquidity("pool has a zero reserve")
        xv, yv = source.x, source.y
        capacity = source.y if side is Side.ASKS else math.inf
        if side is Side.ASKS and bucket * n_levels >= capacity:
            raise InsufficientLiquidity(
                f"{n_levels} buckets of {bucket} would drain the y reserve {capacity}"
            )
    else:
        raise InvalidParameter(
            f"expected PoolState or RangePosition, got {type(source).__name__}"
        )

    costs, marginals = [], []
    for level in range(n_levels):
        remaining = capacity - level * bucket
        if truncate and remaining <= bucket:
            break
        if side is Side.ASKS:
            cost = bucket * xv / (yv - bucket)
            xv, yv = xv + cost, yv - bucket
        else:
            cost = bucket * xv / (yv + bucket)
            xv, yv = xv - cost, yv + bucket
        costs.append(cost)
        marginals.append(xv / yv)
    if not costs:
        raise InsufficientLiquidity(
            f"a bucket of {bucket} does not fit inside the band from this price"
        )

    costs = np.asarray(costs)
    if fee_rate > 0.0:
        costs = costs / (1.0 - fee_rate) if side is Side.ASKS else costs * (1.0 - fee_rate)
    return DepthLadder(
        side=side,
        bucket=bucket,
        avg_price=costs / bucket,
        marginal_price=np.asarray(marginals),
        quantity=np.full(len(costs), bucket),
        cumulative_cost=np.cumsum(costs),
    )

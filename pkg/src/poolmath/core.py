"""Constant-product pool mechanics.

A pool holds reserves x of asset X and y of asset Y and enforces the
invariant x * y = K on every trade.  The spot price of Y in units of X is

    P = x / y

so the value of the pool, measured in X, is x + P * y = 2x at the spot.
Swap quotes charge the fee on the input side, outside the invariant: the
trade itself moves reserves along x * y = K, and the fee is collected on
top of the input amount.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from .errors import (
    DegeneratePool,
    InsufficientLiquidity,
    InvalidParameter,
    StaleQuote,
)


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise InvalidParameter(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class PoolState:
    """Immutable snapshot of a pool: reserves, fee tier, accrued fees.

    Zero reserves are representable (a drained pool is a real state) but
    any operation that needs a price or a trade raises DegeneratePool.
    """

    x: float
    y: float
    fee_rate: float = 0.0
    fees_x: float = 0.0
    fees_y: float = 0.0

    def __post_init__(self) -> None:
        for name in ("x", "y", "fees_x", "fees_y"):
            value = _require_finite(name, getattr(self, name))
            if value < 0.0:
                raise InvalidParameter(f"{name} must be >= 0, got {value}")
            object.__setattr__(self, name, value)
        fee = _require_finite("fee_rate", self.fee_rate)
        if not 0.0 <= fee < 1.0:
            raise InvalidParameter(f"fee_rate must be in [0, 1), got {fee}")
        object.__setattr__(self, "fee_rate", fee)

    @property
    def invariant(self) -> float:
        """K = x * y."""
        return self.x * self.y


class Direction(enum.Enum):
    """Trade direction from the trader's point of view."""

    X_IN_Y_OUT = "x_in_y_out"
    Y_IN_X_OUT = "y_in_x_out"


@dataclass(frozen=True)
class SwapQuote:
    """Priced trade against a specific pool snapshot.

    delta_x and delta_y are the trader-side flows: the output amount is
    what the trader receives, the input amount is gross of the fee.
    fee_paid is the fee portion of the input; only the effective part
    (input minus fee) enters the reserves.  The quote pins the pre-trade
    state so it cannot be applied after the pool has moved.
    """

    direction: Direction
    delta_x: float
    delta_y: float
    fee_paid: float
    pre: PoolState
    post: PoolState


def spot_price(pool: PoolState) -> float:
    """P = x / y, the price of Y in units of X."""
    if pool.x == 0.0 or pool.y == 0.0:
        raise DegeneratePool("spot price undefined with a zero reserve")
    return pool.x / pool.y


def reserves_from_price(k: float, price: float) -> tuple[float, float]:
    """Reserves on x * y = k at spot price P: x = sqrt(k * P), y = sqrt(k / P)."""
    k = _require_finite("k", k)
    price = _require_finite("price", price)
    if k <= 0.0:
        raise InvalidParameter(f"k must be > 0, got {k}")
    if price <= 0.0:
        raise InvalidParameter(f"price must be > 0, got {price}")
    return math.sqrt(k * price), math.sqrt(k / price)


def _check_tradeable(pool: PoolState) -> None:
    if pool.x == 0.0 or pool.y == 0.0:
        raise DegeneratePool("cannot trade against a pool with a zero reserve")


def quote_swap_y_out(pool: PoolState, delta_y: float) -> SwapQuote:
    """Quote buying delta_y of Y from the pool.

    The invariant fixes the input: (x + dx)(y - dy) = x * y, so
    dx = dy * x / (y - dy).  The trader pays dx / (1 - fee) in total;
    the fee portion accrues to fees_x and does not enter the reserves.
    """
    _check_tradeable(pool)
    delta_y = _require_finite("delta_y", delta_y)
    if delta_y <= 0.0:
        raise InvalidParameter(f"delta_y must be > 0, got {delta_y}")
    if delta_y >= pool.y:
        raise InsufficientLiquidity(
            f"requested {delta_y} Y but pool holds only {pool.y}"
        )
    effective = delta_y * pool.x / (pool.y - delta_y)
    fee_paid = effective * pool.fee_rate / (1.0 - pool.fee_rate)
    post = replace(
        pool,
        x=pool.x + effective,
        y=pool.y - delta_y,
        fees_x=pool.fees_x + fee_paid,
    )
    return SwapQuote(
        direction=Direction.X_IN_Y_OUT,
        delta_x=effective / (1.0 - pool.fee_rate),
        delta_y=delta_y,
        fee_paid=fee_paid,
        pre=pool,
        post=post,
    )


def quote_swap_x_out(pool: PoolState, delta_x: float) -> SwapQuote:
    """Quote buying delta_x of X from the pool.

    Mirror of quote_swap_y_out: (x - dx)(y + dy) = x * y gives
    dy = dx * y / (x - dx), and the fee is charged in Y on the input side.
    """
    _check_tradeable(pool)
    delta_x = _require_finite("delta_x", delta_x)
    if delta_x <= 0.0:
        raise InvalidParameter(f"delta_x must be > 0, got {delta_x}")
    if delta_x >= pool.x:
        raise InsufficientLiquidity(
            f"requested {delta_x} X but pool holds only {pool.x}"
        )
    effective = delta_x * pool.y / (pool.x - delta_x)
    fee_paid = effective * pool.fee_rate / (1.0 - pool.fee_rate)
    post = replace(
        pool,
        x=pool.x - delta_x,
        y=pool.y + effective,
        fees_y=pool.fees_y + fee_paid,
    )
    return SwapQuote(
        direction=Direction.Y_IN_X_OUT,
        delta_x=delta_x,
        delta_y=effective / (1.0 - pool.fee_rate),
        fee_paid=fee_paid,
        pre=pool,
        post=post,
    )


def apply_swap(pool: PoolState, quote: SwapQuote) -> PoolState:
    """Apply a quote to the pool it was priced on.

    Raises StaleQuote if the pool snapshot differs from the quote's
    pre-trade state in any field.
    """
    if pool != quote.pre:
        raise StaleQuote("quote was priced on a different pool state")
    return quote.post

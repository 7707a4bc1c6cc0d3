"""Concentrated liquidity: positions that quote only inside a price band.

A position with invariant K = sqrt_k**2 and band [p_low, p_high] behaves
like a constant-product pool whose reserves are shifted:

    (x + sqrt(K * p_low)) * (y + sqrt(K / p_high)) = K

The shifted terms are the virtual reserves the position would need to
cover the whole price axis.  Real reserves hit zero at the band edges:
all Y at p_low, all X at p_high.

Two price conventions are supported for reading reserves off the curve:

* virtual: the price is the ratio of virtual reserves.  This gives the
  closed form x = sqrt(K*P) - sqrt(K*p_low), y = sqrt(K/P) - sqrt(K/p_high)
  and is how live pools quote.
* quadratic: the price is the ratio of real reserves, y = x / P on the
  shifted curve, which leads to a quadratic in each reserve.  Useful for
  reproducing analyses stated in real-reserve terms; the two conventions
  agree in the wide-band limit but differ for narrow bands.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import (
    InconsistentState,
    InvalidParameter,
    InvalidRange,
    NumericalFailure,
    OutOfConvention,
)

_CURVE_RTOL = 1e-9


class Convention(enum.Enum):
    VIRTUAL = "virtual"
    QUADRATIC = "quadratic"


@dataclass(frozen=True)
class PriceRange:
    """Half-open-ended price band: 0 <= p_low < p_high <= inf."""

    p_low: float
    p_high: float

    def __post_init__(self) -> None:
        lo, hi = float(self.p_low), float(self.p_high)
        if math.isnan(lo) or math.isnan(hi):
            raise InvalidRange("range bounds must not be NaN")
        if lo < 0.0 or not lo < hi:
            raise InvalidRange(f"need 0 <= p_low < p_high, got [{lo}, {hi}]")
        object.__setattr__(self, "p_low", lo)
        object.__setattr__(self, "p_high", hi)

    @classmethod
    def full(cls) -> "PriceRange":
        return cls(0.0, math.inf)

    @property
    def is_full(self) -> bool:
        return self.p_low == 0.0 and math.isinf(self.p_high)

    def contains(self, price: float) -> bool:
        return self.p_low <= price <= self.p_high

    def clamp(self, price: float) -> float:
        return min(max(price, self.p_low), self.p_high)


@dataclass(frozen=True)
class RangePosition:
    """Liquidity sqrt_k deployed over a price band under a convention."""

    sqrt_k: float
    bounds: PriceRange = field(default_factory=PriceRange.full)
    convention: Convention = Convention.VIRTUAL

    def __post_init__(self) -> None:
        sk = float(self.sqrt_k)
        if not math.isfinite(sk) or sk <= 0.0:
            raise InvalidParameter(f"sqrt_k must be finite and > 0, got {sk}")
        object.__setattr__(self, "sqrt_k", sk)

    @property
    def k(self) -> float:
        return self.sqrt_k * self.sqrt_k


def v2_position(sqrt_k: float = 1.0) -> RangePosition:
    """Full-range position, equivalent to a plain constant-product pool."""
    return RangePosition(sqrt_k, PriceRange.full())


def _x_virtual(k: float, price: float) -> float:
    # sqrt(K * P); exact 0 at price 0, inf at price inf
    return math.sqrt(k * price)


def _y_virtual(k: float, price: float) -> float:
    # sqrt(K / P); k / 0 would raise, so special-case the open lower end
    if price == 0.0:
        return math.inf
    return math.sqrt(k / price)


def range_intercepts(position: RangePosition) -> tuple[float, float]:
    """Axis intercepts (x_max, y_max) of the shifted curve.

    x_max = sqrt(K*p_high) - sqrt(K*p_low) is the X held when the price
    sits at p_high; y_max = sqrt(K/p_low) - sqrt(K/p_high) is the Y held
    at p_low.  Either is inf when the corresponding bound is open.
    """
    k = position.k
    lo, hi = position.bounds.p_low, position.bounds.p_high
    x_max = _x_virtual(k, hi) - _x_virtual(k, lo)
    y_max = _y_virtual(k, lo) - _y_virtual(k, hi)
    return x_max, y_max


def virtual_reserves(
    real: tuple[float, float], position: RangePosition
) -> tuple[float, float]:
    """Map real reserves to the virtual pair on x' * y' = K.

    Raises InconsistentState if the given reserves do not actually lie on
    the position's shifted curve.
    """
    x, y = float(real[0]), float(real[1])
    if x < 0.0 or y < 0.0 or not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidParameter(f"real reserves must be finite and >= 0, got {real}")
    k = position.k
    xv = x + _x_virtual(k, position.bounds.p_low)
    yv = y + _y_virtual(k, position.bounds.p_high)
    if abs(xv * yv - k) > _CURVE_RTOL * k:
        raise InconsistentState(
            f"reserves {real} are not on the curve for {position.bounds}: "
            f"x'y' = {xv * yv}, K = {k}"
        )
    return xv, yv


def reserves_at_price_closed(position: RangePosition, price: float) -> tuple[float, float]:
    """Real reserves under the virtual-price convention.

    The price is clamped into the band, so outside the band this returns
    the frozen boundary holdings (all Y below p_low, all X above p_high).
    Boundary values reuse the intercept subexpressions and are exact.
    """
    price = _validated_price(price)
    k = position.k
    lo, hi = position.bounds.p_low, position.bounds.p_high
    p = position.bounds.clamp(price)
    x = _x_virtual(k, p) - _x_virtual(k, lo)
    y = _y_virtual(k, p) - _y_virtual(k, hi)
    return x, y


def reserves_at_price_quadratic(
    position: RangePosition, price: float
) -> tuple[float, float]:
    """Real reserves under the real-price convention, y = x / P on the curve.

    Substituting y = x / P into (x + a)(y + b) = K gives

        x**2 + (b*P + a) * x + P * (a*b - K) = 0

    with a = sqrt(K*p_low), b = sqrt(K/p_high), and an analogous quadratic
    for y.  Both have one nonnegative root, evaluated in the cancellation-free
    form -2c / (b + sqrt(b**2 - 4c)).  The price must lie inside the band;
    use position_reserves for automatic clamping.
    """
    price = _validated_price(price)
    if not position.bounds.contains(price):
        raise OutOfConvention(
            f"price {price} outside band [{position.bounds.p_low}, "
            f"{position.bounds.p_high}] for the real-price convention"
        )
    k = position.k
    a = _x_virtual(k, position.bounds.p_low)
    b = _y_virtual(k, position.bounds.p_high)
    shifted = a * b - k  # < 0 for any nondegenerate band
    x = _stable_positive_root(b * price + a, price * shifted)
    y = _stable_positive_root(b + a / price, shifted / price)
    return x, y


def position_reserves(position: RangePosition, price: float) -> tuple[float, float]:
    """Reserves at a price under the position's convention, clamping into the band."""
    if position.convention is Convention.VIRTUAL:
        return reserves_at_price_closed(position, price)
    price = _validated_price(price)
    return reserves_at_price_quadratic(position, position.bounds.clamp(price))


def _validated_price(price: float) -> float:
    price = float(price)
    if math.isnan(price) or price <= 0.0:
        raise InvalidParameter(f"price must be > 0, got {price}")
    return price


def _stable_positive_root(b: float, c: float) -> float:
    # nonnegative root of t**2 + b*t + c = 0 with b >= 0, c <= 0
    disc = b * b - 4.0 * c
    if disc < 0.0 or not math.isfinite(disc):
        raise NumericalFailure(f"no real root: b={b}, c={c}")
    return -2.0 * c / (b + math.sqrt(disc))

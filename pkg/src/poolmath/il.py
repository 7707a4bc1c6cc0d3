"""Impermanent loss, risk-profile curves, and loss tables.

All values are measured in units of X with price P = x / y.  A position
opened at P0 holds (x0, y0); at a later price P1 its reserves have moved
along the curve to (x1, y1) while the buy-and-hold benchmark kept the
initial quantities.  Impermanent loss is the relative shortfall

    epsilon = (x1 + P1*y1 - (x0 + P1*y0)) / (x0 + P0*y0)

normalized by the initial portfolio value V0.  For a full-range position
this reduces to the closed form

    il_v2(R) = sqrt(R) - (R + 1) / 2,    R = P1 / P0

which is asymmetric in R.  The commonly quoted symmetric variant

    il_v2_common(R) = 2*sqrt(R) / (1 + R) - 1

normalizes by the value of the held quantities at the final price
instead; the two are related by il_v2(R) = il_v2_common(R) * (R + 1) / 2.
The V0-normalized form is the default everywhere; the common form is
provided read-only for comparison.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .concentrated import (
    Convention,
    PriceRange,
    RangePosition,
    position_reserves,
    v2_position,
)
from .core import PoolState
from .errors import InvalidParameter

# limits as the price ratio R -> 0 (LP value vanishes, hold keeps the X leg)
IL_V2_LIMIT_AT_ZERO = -0.5
IL_COMMON_LIMIT_AT_ZERO = -1.0

# five-range comparison grid, bounds as fractions of P0
TABLE_PRESETS = {
    "table1": (
        ((0.0, math.inf), (0.0, 2.0), (0.25, 1.75), (0.5, 1.5), (0.75, 1.25)),
        (-0.2, 0.0, 0.2),
    ),
}


def _validated_ratio(r: float) -> float:
    r = float(r)
    if not math.isfinite(r) or r <= 0.0:
        raise InvalidParameter(f"price ratio must be finite and > 0, got {r}")
    return r


def il_v2(r: float) -> float:
    """Loss of a full-range position vs hold, normalized by initial value.

    il_v2(R) = sqrt(R) - (R + 1) / 2 for R = P1 / P0.  Always <= 0, zero
    only at R = 1, and asymmetric: a doubling is roughly twice as bad as
    a halving under this normalization.
    """
    r = _validated_ratio(r)
    return math.sqrt(r) - 0.5 * (r + 1.0)


def il_v2_common(r: float) -> float:
    """Commonly quoted loss form, normalized by the held-value at P1.

    il_v2_common(R) = 2*sqrt(R) / (1 + R) - 1.  Symmetric under
    R <-> 1/R, which is exactly why it understates the asymmetry that
    the V0-normalized il_v2 preserves.
    """
    r = _validated_ratio(r)
    return 2.0 * math.sqrt(r) / (1.0 + r) - 1.0


@dataclass(frozen=True)
class ILPoint:
    """Both loss values at one price ratio.

    epsilon_paper is the V0-normalized il_v2 value; epsilon_common the
    held-value-normalized variant.  They satisfy
    epsilon_paper = epsilon_common * (R + 1) / 2.
    """

    ratio: float
    epsilon_paper: float
    epsilon_common: float


def il_point(r: float) -> ILPoint:
    r = _validated_ratio(r)
    return ILPoint(ratio=r, epsilon_paper=il_v2(r), epsilon_common=il_v2_common(r))


def as_position(position: RangePosition | PoolState) -> RangePosition:
    """Coerce a plain pool into the equivalent full-range position."""
    if isinstance(position, RangePosition):
        return position
    if isinstance(position, PoolState):
        k = position.invariant
        if k <= 0.0:
            raise InvalidParameter("pool must have positive reserves")
        return v2_position(math.sqrt(k))
    raise InvalidParameter(f"expected RangePosition or PoolState, got {type(position).__name__}")


def il_generic(
    position: RangePosition | PoolState, p0: float, p1: float
) -> float:
    """Impermanent loss of any position via its value function.

    Evaluates reserves at P0 and P1 under the position's convention and
    returns (x1 + P1*y1 - (x0 + P1*y0)) / (x0 + P0*y0).  For a full-range
    position this agrees with il_v2(P1/P0) to machine precision, which is
    the end-to-end check that the closed form and the value-function
    definition describe the same quantity.
    """
    pos = as_position(position)
    x0, y0 = position_reserves(pos, p0)
    x1, y1 = position_reserves(pos, p1)
    v0 = x0 + p0 * y0
    return (x1 + p1 * y1 - (x0 + p1 * y0)) / v0


def default_price_grid(p0: float, n: int = 501, span: float = 100.0) -> np.ndarray:
    """Log-spaced curve grid over [p0/span, p0*span].

    Log spacing covers both the near-zero and the large-P tails of a
    value curve without wasting samples; 501 points keep curve files
    small while resolving the curvature near p0.
    """
    p0 = float(p0)
    if not math.isfinite(p0) or p0 <= 0.0:
        raise InvalidParameter(f"p0 must be finite and > 0, got {p0}")
    if n < 1:
        raise InvalidParameter(f"grid size must be >= 1, got {n}")
    if not math.isfinite(span) or span <= 1.0:
        raise InvalidParameter(f"span must be > 1, got {span}")
    return np.geomspace(p0 / span, p0 * span, n)


def _reserves_grid(pos: RangePosition, grid: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # vectorized mirror of position_reserves; same expressions, so results
    # are bitwise identical to the scalar path
    k = pos.k
    lo, hi = pos.bounds.p_low, pos.bounds.p_high
    p = np.clip(grid, lo, hi)
    a = math.sqrt(k * lo)
    b = 0.0 if math.isinf(hi) else math.sqrt(k / hi)
    if pos.convention is Convention.VIRTUAL:
        x = np.sqrt(k * p) - a
        y = np.sqrt(k / p) - b
        return x, y
    shifted = a * b - k
    bx = b * p + a
    by = b + a / p
    x = -2.0 * (p * shifted) / (bx + np.sqrt(bx * bx - 4.0 * (p * shifted)))
    y = -2.0 * (shifted / p) / (by + np.sqrt(by * by - 4.0 * (shifted / p)))
    return x, y


@dataclass(frozen=True)
class ValueCurve:
    """Sampled risk profile: LP value vs buy-and-hold across a price grid.

    il_paper is (v_lp - v_hold) / V0; il_common is (v_lp - v_hold) / v_hold.
    """

    price: np.ndarray
    v_lp: np.ndarray
    v_hold: np.ndarray
    il_paper: np.ndarray
    il_common: np.ndarray
    p0: float
    v0: float
    position: RangePosition

    def __len__(self) -> int:
        return len(self.price)

    def to_csv(self, path: str | None = None) -> str:
        """Emit `price,v_lp,v_hold,il_paper,il_common` rows in full precision."""
        buf = io.StringIO()
        buf.write("price,v_lp,v_hold,il_paper,il_common\n")
        for row in zip(self.price, self.v_lp, self.v_hold, self.il_paper, self.il_common):
            buf.write(",".join(repr(float(v)) for v in row))
            buf.write("\n")
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text


def _validated_grid(grid) -> np.ndarray:
    arr = np.asarray(grid, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidParameter("price grid must be a nonempty 1-d sequence")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise InvalidParameter("price grid values must be finite and > 0")
    if arr.size > 1 and not np.all(np.diff(arr) > 0.0):
        raise InvalidParameter("price grid must be strictly increasing")
    return arr


def risk_profile(
    position: RangePosition | PoolState,
    p0: float,
    grid=None,
) -> ValueCurve:
    """Value curve of a position against buy-and-hold.

    v_lp(P) marks the position's reserves at the external price P (out of
    range the reserves freeze at the band edge, so the curve is linear
    below p_low with slope y_max and flat at x_max above p_high); v_hold
    keeps the opening quantities.  Under the virtual convention the hold
    leg is never below the LP leg, because the pool's chosen point
    minimizes x + P*y along the curve; the real-price convention picks a
    different point and can mark slightly above hold inside the band.
    """
    pos = as_position(position)
    p0 = float(p0)
    if not math.isfinite(p0) or p0 <= 0.0:
        raise InvalidParameter(f"p0 must be finite and > 0, got {p0}")
    if grid is None:
        grid = default_price_grid(p0)
    grid = _validated_grid(grid)
    x0, y0 = position_reserves(pos, p0)
    v0 = x0 + p0 * y0
    x, y = _reserves_grid(pos, grid)
    v_lp = x + grid * y
    v_hold = x0 + grid * y0
    gap = v_lp - v_hold
    return ValueCurve(
        price=grid,
        v_lp=v_lp,
        v_hold=v_hold,
        il_paper=gap / v0,
        il_common=gap / v_hold,
        p0=p0,
        v0=v0,
        position=pos,
    )


@dataclass(frozen=True)
class ILTable:
    """Loss grid: one row per price band, one column per relative move."""

    ranges: tuple[PriceRange, ...]
    moves: tuple[float, ...]
    cells: np.ndarray
    p0: float

    def render_text(self) -> str:
        """Aligned text table, cells as percentages with 2 decimals."""
        header = ["range"] + [f"{m:+.0%}" for m in self.moves]
        rows = []
        for rng, row in zip(self.ranges, self.cells):
            lo = f"{rng.p_low / self.p0:.0%}"
            hi = "inf" if math.isinf(rng.p_high) else f"{rng.p_high / self.p0:.0%}"
            rows.append([f"[{lo}, {hi}]"] + [f"{cell:.2%}" for cell in row])
        widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
        lines = []
        for r in [header] + rows:
            lines.append("  ".join(cell.rjust(w) for cell, w in zip(r, widths)))
        return "\n".join(lines)

    def to_csv(self, path: str | None = None) -> str:
        buf = io.StringIO()
        buf.write("p_low,p_high," + ",".join(f"{m:+g}" for m in self.moves) + "\n")
        for rng, row in zip(self.ranges, self.cells):
            bounds = [repr(rng.p_low), "inf" if math.isinf(rng.p_high) else repr(rng.p_high)]
            buf.write(",".join(bounds + [repr(float(c)) for c in row]))
            buf.write("\n")
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text


def il_table(
    ranges,
    moves,
    p0: float = 1.0,
    sqrt_k: float = 1.0,
    convention: Convention = Convention.VIRTUAL,
) -> ILTable:
    """Loss of one position per price band under each relative move.

    cell(range, m) = il_generic(position over range, P0, P0*(1+m)).
    The zero-move column is exactly 0 because both evaluations see the
    same price.
    """
    p0 = float(p0)
    if not math.isfinite(p0) or p0 <= 0.0:
        raise InvalidParameter(f"p0 must be finite and > 0, got {p0}")
    range_objs = tuple(
        rng if isinstance(rng, PriceRange) else PriceRange(*rng) for rng in ranges
    )
    move_vals = tuple(float(m) for m in moves)
    if not range_objs or not move_vals:
        raise InvalidParameter("need at least one range and one move")
    for m in move_vals:
        if not math.isfinite(m) or m <= -1.0:
            raise InvalidParameter(f"relative move must be > -100%, got {m}")
    cells = np.empty((len(range_objs), len(move_vals)))
    for i, rng in enumerate(range_objs):
        pos = RangePosition(sqrt_k, rng, convention)
        for j, m in enumerate(move_vals):
            cells[i, j] = il_generic(pos, p0, p0 * (1.0 + m))
    return ILTable(ranges=range_objs, moves=move_vals, cells=cells, p0=p0)


def preset_table(name: str = "table1", p0: float = 1.0, sqrt_k: float = 1.0) -> ILTable:
    """Build the named comparison grid, bands scaled to p0."""
    try:
        rows, moves = TABLE_PRESETS[name]
    except KeyError:
        raise InvalidParameter(
            f"unknown preset {name!r}; available: {sorted(TABLE_PRESETS)}"
        ) from None
    ranges = [PriceRange(lo * p0, hi * p0) for lo, hi in rows]
    return il_table(ranges, moves, p0=p0, sqrt_k=sqrt_k)

"""Constant-product AMM analytics.

Pool mechanics (core), concentrated-liquidity positions (concentrated),
impermanent loss and risk profiles (il), order-book-equivalent depth
(depth), and price-path simulation (sim), with an HTTP facade (service)
and a command-line front end (cli).

Price convention used throughout: P = x / y, the price of asset Y in
units of asset X, so portfolio values are measured in X.  This is the
reverse of some industry quoting conventions; check before comparing
numbers.
"""

from .concentrated import (
    Convention,
    PriceRange,
    RangePosition,
    position_reserves,
    range_intercepts,
    reserves_at_price_closed,
    reserves_at_price_quadratic,
    v2_position,
    virtual_reserves,
)
from .core import (
    Direction,
    PoolState,
    SwapQuote,
    apply_swap,
    quote_swap_x_out,
    quote_swap_y_out,
    reserves_from_price,
    spot_price,
)
from .depth import DepthLadder, Side, depth_ladder
from .errors import (
    DegeneratePool,
    InconsistentState,
    InsufficientLiquidity,
    InvalidParameter,
    InvalidRange,
    NumericalFailure,
    OutOfConvention,
    PoolMathError,
    StaleQuote,
)
from .il import (
    IL_COMMON_LIMIT_AT_ZERO,
    IL_V2_LIMIT_AT_ZERO,
    ILPoint,
    ILTable,
    TABLE_PRESETS,
    ValueCurve,
    default_price_grid,
    il_generic,
    il_point,
    il_table,
    il_v2,
    il_v2_common,
    preset_table,
    risk_profile,
)
from .sim import (
    ArbModel,
    MAX_FEE_RATE,
    PricePath,
    STANDARD_FEE_TIERS,
    SimResult,
    annualize,
    annualize_compounded,
    gbm_path,
    pnl_decompose,
    simulate,
    validate_fee_rate,
)

__version__ = "0.1.0"

__all__ = [
    "ArbModel",
    "Convention",
    "DegeneratePool",
    "DepthLadder",
    "Direction",
    "IL_COMMON_LIMIT_AT_ZERO",
    "IL_V2_LIMIT_AT_ZERO",
    "ILPoint",
    "ILTable",
    "InconsistentState",
    "InsufficientLiquidity",
    "InvalidParameter",
    "InvalidRange",
    "MAX_FEE_RATE",
    "NumericalFailure",
    "OutOfConvention",
    "PoolMathError",
    "PoolState",
    "PricePath",
    "PriceRange",
    "RangePosition",
    "STANDARD_FEE_TIERS",
    "SimResult",
    "Side",
    "StaleQuote",
    "SwapQuote",
    "TABLE_PRESETS",
    "ValueCurve",
    "annualize",
    "annualize_compounded",
    "apply_swap",
    "default_price_grid",
    "depth_ladder",
    "gbm_path",
    "il_generic",
    "il_point",
    "il_table",
    "il_v2",
    "il_v2_common",
    "pnl_decompose",
    "position_reserves",
    "preset_table",
    "quote_swap_x_out",
    "quote_swap_y_out",
    "range_intercepts",
    "reserves_at_price_closed",
    "reserves_at_price_quadratic",
    "reserves_from_price",
    "risk_profile",
    "simulate",
    "spot_price",
    "v2_position",
    "virtual_reserves",
]

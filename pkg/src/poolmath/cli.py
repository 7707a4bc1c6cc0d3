"""Command-line front end for the pool analytics engine.

Subcommands map one to one onto the library: `il` for loss numbers,
`profile` for value curves, `table` for loss grids, `depth` for
order-book ladders, `simulate` for price-path runs, `cost` for the
position-setup fee ledger, and `serve` to launch the HTTP service.
Every number printed comes from the engine modules unchanged; the CLI
only parses arguments and formats output (text, csv, or json).

Exit codes: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from ._serialize import jsonable
from .concentrated import Convention, PriceRange, RangePosition, position_reserves
from .core import PoolState
from .depth import Side, depth_ladder
from .errors import InvalidParameter, PoolMathError
from .il import default_price_grid, il_point, il_table, preset_table, risk_profile
from .sim import ArbModel, PricePath, gbm_path, simulate

# position-setup fees from a worked mainnet walkthrough, in USD
SETUP_FEES = (
    ("buy ETH", 1.19),
    ("transfer ETH to wallet", 6.98),
    ("buy USDC", 1.19),
    ("transfer USDC to wallet", 8.00),
    ("wrap ETH", 1.17),
    ("approve WETH9", 1.41),
    ("approve USDC", 1.87),
    ("mint position", 13.26),
)

# the walkthrough quotes the total against 2800 USD of portfolio but
# only 2000 USD was transferred, so both readings are shown by default
DEFAULT_NOTIONALS = (2800.0, 2000.0)


class UsageError(Exception):
    """Argument combination error detected after parsing (exit code 2)."""


def parse_range(text: str) -> PriceRange:
    parts = text.split(":")
    if len(parts) != 2:
        raise InvalidParameter(f"range must look like lo:hi, got {text!r}")
    return PriceRange(float(parts[0]), float(parts[1]))


def parse_grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 4 or parts[0] not in ("log", "lin"):
        raise InvalidParameter(f"grid must look like log:lo:hi:n or lin:lo:hi:n, got {text!r}")
    lo, hi, n = float(parts[1]), float(parts[2]), int(parts[3])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo <= 0.0 or hi < lo or n < 1:
        raise InvalidParameter(f"grid bounds must satisfy 0 < lo <= hi and n >= 1, got {text!r}")
    return np.geomspace(lo, hi, n) if parts[0] == "log" else np.linspace(lo, hi, n)


def parse_floats(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise InvalidParameter(f"expected comma-separated numbers, got {text!r}")


def _parse_convention(text: str) -> Convention:
    try:
        return Convention(text)
    except ValueError:
        raise InvalidParameter(f"convention must be 'virtual' or 'quadratic', got {text!r}")


def cost_ledger(steps) -> tuple[list[tuple[str, float]], float]:
    """Validate an ordered fee ledger and return (items, total)."""
    items = [(str(label), float(fee)) for label, fee in steps]
    if not items:
        raise InvalidParameter("cost ledger needs at least one step")
    for label, fee in items:
        if not math.isfinite(fee) or fee < 0.0:
            raise InvalidParameter(f"fee for {label!r} must be finite and >= 0, got {fee}")
    return items, sum(fee for _, fee in items)


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload, out: str | None) -> None:
    _emit(json.dumps(jsonable(payload), indent=2), out)


def _columns(header: list[str], rows: list[list[str]]) -> str:
    table = [header] + rows
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in table)


def _num(value: float) -> str:
    return f"{value:.10g}"


def _position_from_args(args) -> RangePosition:
    bounds = args.range if args.range is not None else PriceRange.full()
    convention = _parse_convention(getattr(args, "convention", "virtual"))
    return RangePosition(args.sqrt_k, bounds, convention)


def cmd_il(args) -> int:
    if args.ratio is not None:
        if args.p0 is not None or args.p1 is not None:
            raise UsageError("--ratio and --p0/--p1 are mutually exclusive")
        point = il_point(args.ratio)
        payload = {
            "kind": "v2",
            "ratio": point.ratio,
            "epsilon_paper": point.epsilon_paper,
            "epsilon_common": point.epsilon_common,
        }
    else:
        if args.p0 is None or args.p1 is None:
            raise UsageError("either --ratio or both --p0 and --p1 are required")
        position = _position_from_args(args)
        x0, y0 = position_reserves(position, args.p0)
        x1, y1 = position_reserves(position, args.p1)
        gap = x1 + args.p1 * y1 - (x0 + args.p1 * y0)
        payload = {
            "kind": "range",
            "p_low": position.bounds.p_low,
            "p_high": position.bounds.p_high,
            "P0": args.p0,
            "P1": args.p1,
            "epsilon_paper": gap / (x0 + args.p0 * y0),
            "epsilon_common": gap / (x0 + args.p1 * y0),
        }
    if args.format == "json":
        _emit_json(payload, args.out)
    elif args.format == "csv":
        keys = [k for k in payload if k != "kind"]
        _emit(
            ",".join(keys)
            + "\n"
            + ",".join("inf" if payload[k] == math.inf else repr(payload[k]) for k in keys),
            args.out,
        )
    else:
        lines = []
        if payload["kind"] == "v2":
            lines.append(f"ratio: {_num(payload['ratio'])}")
        else:
            hi = payload["p_high"]
            lines.append(f"range: [{_num(payload['p_low'])}, {'inf' if math.isinf(hi) else _num(hi)}]")
            lines.append(f"P0 -> P1: {_num(payload['P0'])} -> {_num(payload['P1'])}")
        lines.append(f"il_paper: {payload['epsilon_paper']:.4%}")
        lines.append(f"il_common: {payload['epsilon_common']:.4%}")
        _emit("\n".join(lines), args.out)
    return 0


def cmd_profile(args) -> int:
    position = _position_from_args(args)
    grid = args.grid if args.grid is not None else default_price_grid(args.p0)
    curve = risk_profile(position, args.p0, grid)
    if args.format == "csv":
        _emit(curve.to_csv(), args.out)
    elif args.format == "json":
        _emit_json(
            {
                "p0": curve.p0,
                "v0": curve.v0,
                "price": curve.price,
                "v_lp": curve.v_lp,
                "v_hold": curve.v_hold,
                "il_paper": curve.il_paper,
                "il_common": curve.il_common,
            },
            args.out,
        )
    else:
        header = ["price", "v_lp", "v_hold", "il_paper", "il_common"]
        rows = [
            [_num(p), _num(lp), _num(h), f"{ip:.4%}", f"{ic:.4%}"]
            for p, lp, h, ip, ic in zip(
                curve.price, curve.v_lp, curve.v_hold, curve.il_paper, curve.il_common
            )
        ]
        _emit(_columns(header, rows), args.out)
    return 0


def cmd_table(args) -> int:
    if args.preset is not None:
        if args.ranges is not None or args.moves is not None:
            raise UsageError("--preset and --ranges/--moves are mutually exclusive")
        table = preset_table(args.preset, p0=args.p0, sqrt_k=args.sqrt_k)
    else:
        if args.ranges is None or args.moves is None:
            raise UsageError("either --preset or both --ranges and --moves are required")
        ranges = [parse_range(part) for part in args.ranges.split(",")]
        table = il_table(
            [(r.p_low, r.p_high) for r in ranges],
            parse_floats(args.moves),
            p0=args.p0,
            sqrt_k=args.sqrt_k,
            convention=_parse_convention(args.convention),
        )
    if args.format == "csv":
        _emit(table.to_csv(), args.out)
    elif args.format == "json":
        _emit_json(
            {
                "p0": table.p0,
                "ranges": list(table.ranges),
                "moves": list(table.moves),
                "cells": table.cells,
            },
            args.out,
        )
    else:
        _emit(table.render_text(), args.out)
    return 0


def cmd_depth(args) -> int:
    if args.x is not None or args.y is not None:
        if args.x is None or args.y is None or args.range is not None:
            raise UsageError("--x and --y describe a plain pool and exclude --range")
        source: PoolState | RangePosition = PoolState(args.x, args.y)
    else:
        if args.range is None:
            raise UsageError("either --x/--y or --range is required")
        if args.price is None:
            raise UsageError("--range needs --price for the starting point")
        source = _position_from_args(args)
    ladder = depth_ladder(
        source,
        args.bucket,
        args.levels,
        Side(args.side),
        price=args.price,
        fee_rate=args.fee,
    )
    if args.format == "csv":
        _emit(ladder.to_csv(), args.out)
    elif args.format == "json":
        _emit_json(
            {
                "side": ladder.side,
                "bucket": ladder.bucket,
                "avg_price": ladder.avg_price,
                "marginal_price": ladder.marginal_price,
                "quantity": ladder.quantity,
                "cumulative_cost": ladder.cumulative_cost,
            },
            args.out,
        )
    else:
        header = ["level", "avg_price", "marginal_price", "quantity", "cumulative_cost"]
        rows = [
            [str(i + 1), _num(a), _num(m), _num(q), _num(c)]
            for i, (a, m, q, c) in enumerate(
                zip(ladder.avg_price, ladder.marginal_price, ladder.quantity, ladder.cumulative_cost)
            )
        ]
        _emit(_columns(header, rows), args.out)
    return 0


def _path_from_args(args) -> PricePath:
    given = [name for name in ("path", "prices", "gbm") if getattr(args, name) is not None]
    if len(given) != 1:
        raise UsageError("exactly one of --path, --prices, or --gbm is required")
    if args.path is not None:
        return PricePath.from_csv(args.path)
    if args.prices is not None:
        return PricePath.from_prices(parse_floats(args.prices))
    parts = args.gbm.split(":")
    if len(parts) not in (4, 5):
        raise InvalidParameter(f"--gbm must look like p0:mu:sigma:n_steps[:seed], got {args.gbm!r}")
    seed = int(parts[4]) if len(parts) == 5 else None
    return gbm_path(float(parts[0]), float(parts[1]), float(parts[2]), int(parts[3]), seed=seed)


def cmd_simulate(args) -> int:
    path = _path_from_args(args)
    position = _position_from_args(args)
    result = simulate(position, path, fee_rate=args.fee, arb=ArbModel(args.arb))
    if args.trace_out:
        result.trace_to_csv(args.trace_out)
    payload = {
        "p0": result.p0,
        "mark_price": result.mark_price,
        "x": result.x,
        "y": result.y,
        "fees_x": result.fees_x,
        "fees_y": result.fees_y,
        "fees_collected": result.fees_collected,
        "v0": result.v0,
        "pnl_total": result.pnl_total,
        "pnl_hold": result.pnl_hold,
        "pnl_il": result.pnl_il,
        "pnl_fees": result.pnl_fees,
    }
    if args.format == "json":
        _emit_json(payload, args.out)
    elif args.format == "csv":
        keys = list(payload)
        _emit(",".join(keys) + "\n" + ",".join(repr(payload[k]) for k in keys), args.out)
    else:
        lines = [f"{k}: {_num(v)}" for k, v in payload.items() if not k.startswith("pnl_")]
        lines += [f"{k}: {v:.4%}" for k, v in payload.items() if k.startswith("pnl_")]
        _emit("\n".join(lines), args.out)
    return 0


def cmd_cost(args) -> int:
    if args.fees is not None:
        fees = parse_floats(args.fees)
        steps = [(f"step {i + 1}", fee) for i, fee in enumerate(fees)]
    else:
        steps = list(SETUP_FEES)
    items, total = cost_ledger(steps)
    notionals = [args.notional] if args.notional is not None else list(DEFAULT_NOTIONALS)
    for notional in notionals:
        if not math.isfinite(notional) or notional <= 0.0:
            raise InvalidParameter(f"notional must be finite and > 0, got {notional}")
    if args.format == "json":
        _emit_json(
            {
                "steps": [{"label": label, "fee_usd": fee} for label, fee in items],
                "total_usd": total,
                "readings": [
                    {"notional_usd": n, "fraction": total / n} for n in notionals
                ],
            },
            args.out,
        )
    elif args.format == "csv":
        lines = ["label,fee_usd"] + [f"{label},{fee:.2f}" for label, fee in items]
        lines.append(f"total,{total:.2f}")
        _emit("\n".join(lines), args.out)
    else:
        width = max(len(label) for label, _ in items)
        lines = [f"{label.ljust(width)}  {fee:>6.2f}" for label, fee in items]
        lines.append(f"{'total'.ljust(width)}  {total:>6.2f}")
        for n in notionals:
            lines.append(f"{total:.2f} / {n:g} notional = {total / n:.2%}")
        _emit("\n".join(lines), args.out)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(static_dir=args.frontend), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poolmath", description="Constant-product pool analytics."
    )
    parser.add_argument("--version", action="version", version=f"poolmath {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "csv", "json"), default="text")
    fmt.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    pos = argparse.ArgumentParser(add_help=False)
    pos.add_argument("--range", type=parse_range, metavar="LO:HI", help="price band (inf allowed)")
    pos.add_argument("--sqrt-k", type=float, default=1.0, dest="sqrt_k")
    pos.add_argument("--convention", choices=("virtual", "quadratic"), default="virtual")

    p = sub.add_parser("il", parents=[fmt, pos], help="impermanent loss numbers")
    p.add_argument("--ratio", type=float, help="price ratio R = P1/P0 for a full-range pool")
    p.add_argument("--p0", type=float, help="starting price")
    p.add_argument("--p1", type=float, help="ending price")
    p.set_defaults(func=cmd_il)

    p = sub.add_parser("profile", parents=[fmt, pos], help="LP value vs buy-and-hold curve")
    p.add_argument("--p0", type=float, required=True, help="price where the position opens")
    p.add_argument("--grid", type=parse_grid, metavar="KIND:LO:HI:N", help="log:lo:hi:n or lin:lo:hi:n")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("table", parents=[fmt], help="loss grid per band and move")
    p.add_argument("--preset", help="named band/move grid (table1)")
    p.add_argument("--ranges", metavar="LO:HI,...", help="comma-separated price bands")
    p.add_argument("--moves", metavar="M,...", help="comma-separated relative moves")
    p.add_argument("--p0", type=float, default=1.0)
    p.add_argument("--sqrt-k", type=float, default=1.0, dest="sqrt_k")
    p.add_argument("--convention", choices=("virtual", "quadratic"), default="virtual")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("depth", parents=[fmt, pos], help="order-book depth ladder")
    p.add_argument("--x", type=float, help="pool X reserve")
    p.add_argument("--y", type=float, help="pool Y reserve")
    p.add_argument("--price", type=float, help="current price (required with --range)")
    p.add_argument("--bucket", type=float, required=True, help="Y quantity per level")
    p.add_argument("--levels", type=int, default=10)
    p.add_argument("--side", choices=("asks", "bids"), default="asks")
    p.add_argument("--fee", type=float, default=0.0)
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("simulate", parents=[fmt, pos], help="run a price path")
    p.add_argument("--path", metavar="FILE", help="CSV price path (timestamp,price)")
    p.add_argument("--prices", metavar="P,...", help="comma-separated prices, one per step")
    p.add_argument("--gbm", metavar="P0:MU:SIGMA:N[:SEED]", help="generated log-normal path")
    p.add_argument("--fee", type=float, default=0.0)
    p.add_argument("--arb", choices=("full_convergence", "fee_band"), default="full_convergence")
    p.add_argument("--trace-out", metavar="FILE", dest="trace_out", help="write per-step trace CSV")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("cost", parents=[fmt], help="position-setup fee ledger")
    p.add_argument("--fees", metavar="F,...", help="override the built-in fee list")
    p.add_argument("--notional", type=float, help="portfolio value the total is quoted against")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default=os.environ.get("POOLMATH_HOST", "127.0.0.1"))
    p.add_argument("--port", type=int, default=int(os.environ.get("POOLMATH_PORT", "8787")))
    p.add_argument("--frontend", metavar="DIR", help="also serve this static directory at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except PoolMathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

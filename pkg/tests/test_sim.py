import math

import numpy as np
import pytest

from poolmath import (
    ArbModel,
    Convention,
    InvalidParameter,
    PoolState,
    PricePath,
    PriceRange,
    RangePosition,
    STANDARD_FEE_TIERS,
    annualize,
    annualize_compounded,
    gbm_path,
    il_v2,
    pnl_decompose,
    simulate,
    v2_position,
    validate_fee_rate,
)

CLOSURE_TOL = 1e-9  # decomposition identity tolerance


class TestPricePath:
    def test_requires_positive_prices(self):
        with pytest.raises(InvalidParameter):
            PricePath.from_prices([1.0, 0.0, 2.0])
        with pytest.raises(InvalidParameter):
            PricePath.from_prices([])

    def test_requires_increasing_timestamps(self):
        with pytest.raises(InvalidParameter):
            PricePath(np.array([0.0, 0.0]), np.array([1.0, 2.0]))
        with pytest.raises(InvalidParameter):
            PricePath(np.array([1.0, 0.5]), np.array([1.0, 2.0]))

    def test_from_prices_spaces_timestamps(self):
        path = PricePath.from_prices([1.0, 1.1, 0.9])
        assert np.array_equal(path.timestamps, [0.0, 1.0, 2.0])
        assert len(path) == 3

    def test_csv_round_trip(self):
        path = PricePath.from_prices([1.0, 0.8123456789012345, 1.25])
        again = PricePath.from_csv_text(path.to_csv())
        assert np.array_equal(again.prices, path.prices)
        assert np.array_equal(again.timestamps, path.timestamps)

    def test_csv_header_optional(self):
        path = PricePath.from_csv_text("0,1.0\n1,2.0\n")
        assert np.array_equal(path.prices, [1.0, 2.0])

    def test_csv_bad_row_rejected(self):
        with pytest.raises(InvalidParameter):
            PricePath.from_csv_text("0,1.0\n1\n")
        with pytest.raises(InvalidParameter):
            PricePath.from_csv_text("0,one\n")

    def test_csv_file_io(self, tmp_path):
        path = PricePath.from_prices([1.0, 2.0])
        f = tmp_path / "path.csv"
        path.to_csv(str(f))
        assert np.array_equal(PricePath.from_csv(str(f)).prices, path.prices)


class TestGbmPath:
    def test_deterministic_for_seed(self):
        a = gbm_path(1.0, 0.05, 0.8, 100, seed=42)
        b = gbm_path(1.0, 0.05, 0.8, 100, seed=42)
        assert np.array_equal(a.prices, b.prices)
        assert a.prices[0] == 1.0
        assert len(a) == 101

    def test_seed_changes_path(self):
        a = gbm_path(1.0, 0.05, 0.8, 100, seed=42)
        b = gbm_path(1.0, 0.05, 0.8, 100, seed=43)
        assert not np.array_equal(a.prices, b.prices)

    def test_parameter_validation(self):
        with pytest.raises(InvalidParameter):
            gbm_path(0.0, 0.0, 0.5, 10)
        with pytest.raises(InvalidParameter):
            gbm_path(1.0, 0.0, -0.5, 10)
        with pytest.raises(InvalidParameter):
            gbm_path(1.0, 0.0, 0.5, 0)


class TestFeeRate:
    def test_standard_tiers_accepted(self):
        for tier in STANDARD_FEE_TIERS:
            assert validate_fee_rate(tier) == tier

    def test_bounds(self):
        assert validate_fee_rate(0.0) == 0.0
        with pytest.raises(InvalidParameter):
            validate_fee_rate(0.1)
        with pytest.raises(InvalidParameter):
            validate_fee_rate(-0.001)
        with pytest.raises(InvalidParameter):
            validate_fee_rate(math.nan)


class TestSimulate:
    def test_halving_run_components(self):
        res = simulate(v2_position(1.0), PricePath.from_prices([1.0, 0.5]))
        assert res.pnl_hold == -0.25
        assert res.pnl_il == il_v2(0.5)
        assert res.pnl_fees == 0.0
        assert res.pnl_total == pytest.approx(math.sqrt(0.5) - 1.0, rel=1e-12)
        assert abs(res.pnl_total - (res.pnl_hold + res.pnl_il + res.pnl_fees)) <= CLOSURE_TOL

    def test_doubling_run_components(self):
        res = simulate(v2_position(1.0), PricePath.from_prices([1.0, 2.0]))
        assert res.pnl_hold == 0.5
        assert res.pnl_il == il_v2(2.0)
        assert res.pnl_fees == 0.0

    def test_constant_path_is_all_zero(self):
        res = simulate(v2_position(1.0), PricePath.from_prices([1.0, 1.0, 1.0]), fee_rate=0.003)
        assert res.pnl_total == res.pnl_hold == res.pnl_il == res.pnl_fees == 0.0

    def test_zero_fee_depends_only_on_endpoints(self):
        direct = simulate(v2_position(1.0), PricePath.from_prices([1.0, 0.5]))
        wiggly = simulate(v2_position(1.0), PricePath.from_prices([1.0, 0.8, 0.9, 1.4, 0.5]))
        assert wiggly.pnl_total == direct.pnl_total
        assert wiggly.x == direct.x and wiggly.y == direct.y

    def test_zero_fee_interior_shuffle_invariance(self):
        interior = [0.7, 1.3, 0.9, 1.1]
        base = simulate(v2_position(1.0), PricePath.from_prices([1.0] + interior + [0.6]))
        rng = np.random.default_rng(9)
        for _ in range(5):
            shuffled = list(rng.permutation(interior))
            res = simulate(v2_position(1.0), PricePath.from_prices([1.0] + shuffled + [0.6]))
            assert res.pnl_total == base.pnl_total

    def test_fee_accrual_known_trade(self):
        # driving price 1 -> 4 on sqrt_k=100 takes exactly 100 effective X in
        res = simulate(v2_position(100.0), PricePath.from_prices([1.0, 4.0]), fee_rate=0.003)
        assert res.fees_x == 100.0 * 0.003 / (1.0 - 0.003)
        assert res.fees_x == pytest.approx(0.3009, abs=1e-4)
        assert res.fees_y == 0.0
        assert res.pnl_fees == res.fees_collected / res.v0

    def test_fees_grow_with_price_variation(self):
        sweep = simulate(v2_position(1.0), PricePath.from_prices([1.0, 1.44]), fee_rate=0.003)
        wiggle = simulate(
            v2_position(1.0),
            PricePath.from_prices([1.0, 1.2, 1.1, 1.3, 1.44]),
            fee_rate=0.003,
        )
        assert wiggle.pnl_fees > sweep.pnl_fees > 0.0

    def test_band_position_freezes_outside(self):
        pos = RangePosition(1.0, PriceRange(0.8, 1.2))
        res = simulate(pos, PricePath.from_prices([1.0, 2.0, 1.8, 2.5]), fee_rate=0.003)
        t = res.trace
        assert t["y"][1] == 0.0
        assert t["x"][1] == t["x"][2] == t["x"][3]
        assert t["fees_x"][1] == t["fees_x"][3]
        assert res.y == 0.0

    def test_decomposition_closure_random_paths(self):
        rng = np.random.default_rng(77)
        for i in range(25):
            path = gbm_path(1.0, 0.0, 1.2, 60, seed=1000 + i)
            if i % 3 == 0:
                pos = v2_position(10.0 ** rng.uniform(-1, 1))
            else:
                lo = 10.0 ** rng.uniform(-1, 0)
                pos = RangePosition(1.0, PriceRange(lo, lo * 10.0 ** rng.uniform(0.2, 1.5)))
            arb = ArbModel.FEE_BAND if i % 2 else ArbModel.FULL_CONVERGENCE
            res = simulate(pos, path, fee_rate=0.003, arb=arb)
            gap = res.pnl_total - (res.pnl_hold + res.pnl_il + res.pnl_fees)
            assert abs(gap) <= CLOSURE_TOL
            assert res.pnl_fees >= 0.0

    def test_fee_band_collects_less_than_full_convergence(self):
        path = gbm_path(1.0, 0.0, 1.5, 80, seed=3)
        full = simulate(v2_position(1.0), path, fee_rate=0.01, arb=ArbModel.FULL_CONVERGENCE)
        band = simulate(v2_position(1.0), path, fee_rate=0.01, arb=ArbModel.FEE_BAND)
        assert band.pnl_fees < full.pnl_fees

    def test_pool_state_input_must_match_path_start(self):
        with pytest.raises(InvalidParameter):
            simulate(PoolState(100.0, 100.0), PricePath.from_prices([2.0, 1.0]))
        res = simulate(PoolState(100.0, 100.0), PricePath.from_prices([1.0, 0.5]))
        assert res.pnl_hold == -0.25

    def test_real_price_convention_rejected(self):
        pos = RangePosition(1.0, PriceRange(0.8, 1.2), Convention.QUADRATIC)
        with pytest.raises(InvalidParameter):
            simulate(pos, PricePath.from_prices([1.0, 1.1]))

    def test_trace_layout(self):
        res = simulate(v2_position(1.0), PricePath.from_prices([1.0, 0.9, 0.8]))
        t = res.trace
        assert list(t["step"]) == [0, 1, 2]
        assert np.array_equal(t["price"], [1.0, 0.9, 0.8])
        assert t["x"][0] == 1.0 and t["y"][0] == 1.0
        lines = res.trace_to_csv().strip().splitlines()
        assert lines[0] == "step,price,x,y,fees_x,fees_y"
        assert len(lines) == 4
        assert lines[1].startswith("0,1.0,")

    def test_trace_can_be_disabled(self):
        res = simulate(v2_position(1.0), PricePath.from_prices([1.0, 0.9]), record_trace=False)
        assert res.trace is None
        with pytest.raises(InvalidParameter):
            res.trace_to_csv()

    def test_decompose_returns_legs(self):
        res = simulate(v2_position(1.0), PricePath.from_prices([1.0, 2.0]))
        assert pnl_decompose(res) == (res.pnl_hold, res.pnl_il, res.pnl_fees)


class TestAnnualize:
    def test_weekly_scaling_known_values(self):
        assert annualize(0.015) == 0.78
        assert annualize(0.01) == 0.52
        assert annualize(0.0) == 0.0

    def test_compounded_variant(self):
        assert annualize_compounded(0.01) == 1.01 ** 52 - 1.0
        assert annualize_compounded(0.0) == 0.0

    def test_rate_floor(self):
        with pytest.raises(InvalidParameter):
            annualize(-1.5)
        with pytest.raises(InvalidParameter):
            annualize_compounded(-1.0)

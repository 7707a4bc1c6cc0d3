import json
import math

import numpy as np
import pytest
from fastapi.testclient import TestClient

import poolmath
from poolmath import (
    PoolState,
    PriceRange,
    RangePosition,
    Convention,
    depth_ladder,
    il_generic,
    il_v2,
    il_v2_common,
    risk_profile,
)
from poolmath.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestILEndpoint:
    def test_v2_numbers_bitwise(self, client):
        r = client.post("/api/v1/il", json={"kind": "v2", "R": 0.5})
        assert r.status_code == 200
        result = r.json()["result"]
        assert result["epsilon_paper"] == il_v2(0.5)
        assert result["epsilon_common"] == il_v2_common(0.5)
        assert result["ratio"] == 0.5

    def test_raw_body_carries_shortest_repr(self, client):
        r = client.post("/api/v1/il", json={"R": 0.5})
        assert f'"epsilon_paper":{il_v2(0.5)!r}' in r.text

    def test_kind_inferred_from_fields(self, client):
        flat = client.post("/api/v1/il", json={"R": 2.0}).json()["result"]
        assert flat["kind"] == "v2"
        assert flat["epsilon_paper"] == il_v2(2.0)

    def test_unit_ratio_gives_zeros(self, client):
        result = client.post("/api/v1/il", json={"R": 1.0}).json()["result"]
        assert result["epsilon_paper"] == 0.0
        assert result["epsilon_common"] == 0.0

    def test_range_kind_matches_library(self, client):
        body = {"kind": "range", "p_low": 0.5, "p_high": 1.5, "P0": 1.0, "P1": 1.2}
        result = client.post("/api/v1/il", json=body).json()["result"]
        pos = RangePosition(1.0, PriceRange(0.5, 1.5))
        assert result["epsilon_paper"] == il_generic(pos, 1.0, 1.2)
        assert result["epsilon_paper"] == pytest.approx(-0.019122, abs=5e-7)

    def test_missing_ratio_names_field(self, client):
        r = client.post("/api/v1/il", json={"kind": "v2"})
        assert r.status_code == 422
        assert "R" in r.json()["error"]["message"]


class TestProfileEndpoint:
    def test_single_point_grid_is_tangency(self, client):
        body = {"position": {"kind": "v2"}, "p0": 1.0, "grid": {"values": [1.0]}}
        result = client.post("/api/v1/profile", json=body).json()["result"]
        assert result["price"] == [1.0]
        assert result["il_paper"] == [0.0]
        assert result["v_lp"] == result["v_hold"]

    def test_matches_library_bitwise(self, client):
        body = {
            "position": {"kind": "range", "p_low": 0.8, "p_high": 1.2},
            "p0": 1.0,
            "grid": {"kind": "log", "lo": 0.5, "hi": 2.0, "n": 7},
        }
        result = client.post("/api/v1/profile", json=body).json()["result"]
        curve = risk_profile(RangePosition(1.0, PriceRange(0.8, 1.2)), 1.0, np.geomspace(0.5, 2.0, 7))
        assert result["v_lp"] == list(curve.v_lp)
        assert result["il_paper"] == list(curve.il_paper)
        assert result["v0"] == curve.v0

    def test_default_grid_size(self, client):
        body = {"position": {"kind": "v2"}, "p0": 2.0}
        result = client.post("/api/v1/profile", json=body).json()["result"]
        assert len(result["price"]) == 501

    def test_quadratic_out_of_band_warns(self, client):
        body = {
            "position": {"kind": "range", "p_low": 0.8, "p_high": 1.2, "convention": "quadratic"},
            "p0": 1.0,
            "grid": {"kind": "lin", "lo": 0.5, "hi": 2.0, "n": 5},
        }
        r = client.post("/api/v1/profile", json=body).json()
        assert any("clamped" in w for w in r["warnings"])

    def test_virtual_never_warns(self, client):
        body = {
            "position": {"kind": "range", "p_low": 0.8, "p_high": 1.2},
            "p0": 1.0,
            "grid": {"kind": "lin", "lo": 0.5, "hi": 2.0, "n": 5},
        }
        assert client.post("/api/v1/profile", json=body).json()["warnings"] == []

    def test_oversized_grid_rejected(self, client):
        body = {
            "position": {"kind": "v2"},
            "p0": 1.0,
            "grid": {"kind": "log", "lo": 0.5, "hi": 2.0, "n": 2_000_000},
        }
        assert client.post("/api/v1/profile", json=body).status_code == 422


class TestDepthEndpoint:
    def test_pool_ladder_matches_library(self, client):
        body = {"pool": {"x": 200.0, "y": 100.0}, "bucket": 10.0, "levels": 2}
        result = client.post("/api/v1/depth", json=body).json()["result"]
        ladder = depth_ladder(PoolState(200.0, 100.0), 10.0, 2)
        assert result["avg_price"] == list(ladder.avg_price)
        assert result["cumulative_cost"] == list(ladder.cumulative_cost)
        assert result["side"] == "asks"

    def test_position_needs_price(self, client):
        body = {
            "position": {"kind": "range", "p_low": 0.8, "p_high": 1.2},
            "bucket": 0.01,
            "levels": 3,
        }
        r = client.post("/api/v1/depth", json=body)
        assert r.status_code == 422
        assert "price" in r.json()["error"]["message"]

    def test_bad_side_rejected(self, client):
        body = {"pool": {"x": 1.0, "y": 1.0}, "bucket": 0.1, "levels": 1, "side": "mid"}
        assert client.post("/api/v1/depth", json=body).status_code == 422

    def test_drain_maps_to_422(self, client):
        body = {"pool": {"x": 100.0, "y": 10.0}, "bucket": 5.0, "levels": 2}
        r = client.post("/api/v1/depth", json=body)
        assert r.status_code == 422
        assert r.json()["error"]["code"] == "insufficient_liquidity"


class TestTableEndpoint:
    def test_preset_numbers(self, client):
        result = client.post("/api/v1/table", json={"preset": "table1"}).json()["result"]
        pos = RangePosition(1.0, PriceRange(0.5, 1.5))
        assert result["cells"][3][2] == il_generic(pos, 1.0, 1.2)
        assert result["moves"] == [-0.2, 0.0, 0.2]
        assert "-1.91%" in result["text"]

    def test_open_upper_bound_becomes_null(self, client):
        result = client.post("/api/v1/table", json={"preset": "table1"}).json()["result"]
        assert result["ranges"][0] == [0.0, None]

    def test_custom_grid(self, client):
        body = {"ranges": [[0.5, 1.5], [0.0, None]], "moves": [0.0, 0.1]}
        result = client.post("/api/v1/table", json=body).json()["result"]
        assert result["cells"][0][0] == 0.0
        assert result["cells"][1][1] == il_v2(1.1)

    def test_unknown_preset(self, client):
        assert client.post("/api/v1/table", json={"preset": "nope"}).status_code == 422


class TestSimulateEndpoint:
    def test_halving_components(self, client):
        body = {"position": {"kind": "v2"}, "path": [1.0, 0.5]}
        result = client.post("/api/v1/simulate", json=body).json()["result"]
        assert result["pnl_total"] == math.sqrt(0.5) - 1.0
        assert result["pnl_hold"] == -0.25
        assert result["pnl_il"] == il_v2(0.5)
        assert result["pnl_fees"] == 0.0

    def test_constant_zero_fee_all_zero(self, client):
        body = {"position": {"kind": "v2"}, "path": [2.0, 2.0, 2.0]}
        result = client.post("/api/v1/simulate", json=body).json()["result"]
        assert result["pnl_total"] == result["pnl_hold"] == result["pnl_il"] == 0.0

    def test_trace_opt_in(self, client):
        body = {"position": {"kind": "v2"}, "path": [1.0, 0.9], "trace": True}
        result = client.post("/api/v1/simulate", json=body).json()["result"]
        assert result["trace"]["price"] == [1.0, 0.9]
        body["trace"] = False
        assert "trace" not in client.post("/api/v1/simulate", json=body).json()["result"]

    def test_gbm_request_is_deterministic(self, client):
        body = {
            "position": {"kind": "v2"},
            "gbm": {"p0": 1.0, "mu": 0.0, "sigma": 0.6, "n_steps": 30, "seed": 7},
            "fee_rate": 0.003,
        }
        a = client.post("/api/v1/simulate", json=body)
        b = client.post("/api/v1/simulate", json=body)
        assert a.content == b.content

    def test_path_cap_maps_to_413(self, client):
        body = {
            "position": {"kind": "v2"},
            "gbm": {"p0": 1.0, "sigma": 0.5, "n_steps": 100_001},
        }
        r = client.post("/api/v1/simulate", json=body)
        assert r.status_code == 413
        assert r.json()["error"]["code"] == "path_too_long"

    def test_long_explicit_path_maps_to_413(self, client):
        body = {"position": {"kind": "v2"}, "path": [1.0] * 100_002}
        assert client.post("/api/v1/simulate", json=body).status_code == 413

    def test_quadratic_position_rejected(self, client):
        body = {
            "position": {"kind": "range", "p_low": 0.8, "p_high": 1.2, "convention": "quadratic"},
            "path": [1.0, 1.1],
        }
        assert client.post("/api/v1/simulate", json=body).status_code == 422


class TestEnvelope:
    def test_request_id_echo(self, client):
        r = client.post("/api/v1/il", json={"R": 0.5, "request_id": "req-7"}).json()
        assert r["request_id"] == "req-7"
        assert r["engine_version"] == poolmath.__version__
        assert r["warnings"] == []

    def test_request_id_defaults_to_null(self, client):
        assert client.post("/api/v1/il", json={"R": 0.5}).json()["request_id"] is None

    def test_identical_requests_identical_bytes(self, client):
        body = {"position": {"kind": "range", "p_low": 0.5, "p_high": 1.5}, "p0": 1.0}
        a = client.post("/api/v1/profile", json=body)
        b = client.post("/api/v1/profile", json=body)
        assert a.content == b.content


class TestErrorMapping:
    def test_malformed_json_is_400(self, client):
        r = client.post("/api/v1/il", content=b"{oops")
        assert r.status_code == 400
        assert r.json()["error"]["code"] == "malformed_body"

    def test_non_object_body_is_400(self, client):
        assert client.post("/api/v1/il", content=b"[1, 2]").status_code == 400
        assert client.post("/api/v1/il", content=b"3.5").status_code == 400

    def test_domain_violation_is_422_with_code(self, client):
        r = client.post("/api/v1/il", json={"R": -2.0})
        assert r.status_code == 422
        assert r.json()["error"]["code"] == "invalid_parameter"

    def test_malformed_fuzz_never_5xx(self, client):
        rng = np.random.default_rng(20200517)
        scalars = [None, True, False, -1, 0, 2.5, "x", "inf", [], {}, [None], {"a": "b"}]
        fields = [
            "kind", "R", "P0", "P1", "p_low", "p_high", "convention", "position",
            "p0", "sqrt_k", "grid", "pool", "bucket", "levels", "side", "price",
            "fee_rate", "preset", "ranges", "moves", "path", "gbm", "arb", "trace",
            "request_id",
        ]
        endpoints = ["il", "profile", "depth", "table", "simulate"]
        for _ in range(120):
            endpoint = endpoints[rng.integers(len(endpoints))]
            mode = rng.integers(3)
            if mode == 0:
                body = bytes(rng.integers(0, 256, size=rng.integers(1, 40), dtype=np.uint8))
            elif mode == 1:
                body = json.dumps(scalars[rng.integers(len(scalars))]).encode()
            else:
                picked = rng.choice(len(fields), size=rng.integers(1, 6), replace=False)
                body = json.dumps(
                    {fields[i]: scalars[rng.integers(len(scalars))] for i in picked}
                ).encode()
            r = client.post(f"/api/v1/{endpoint}", content=body)
            assert r.status_code in (400, 413, 422), (endpoint, body, r.status_code, r.text)
            assert "error" in r.json()


class TestHealth:
    def test_reports_ok_and_uptime(self, client):
        first = client.get("/api/v1/health").json()
        second = client.get("/api/v1/health").json()
        assert first["status"] == "ok"
        assert first["version"] == poolmath.__version__
        assert 0.0 <= first["uptime_seconds"] <= second["uptime_seconds"]

"""Regenerate the canned API responses used by the offline UI tests.

Each fixture is the byte-exact body the service returns for the request
the explorer builds in a pinned state.  The request bodies here must
stay in sync with the expectations listed in test/harness.ts; if the
client-side request builder changes, rerun this script from the repo
root (with the poolmath package installed):

    python3 frontend/test/fixtures/generate.py
"""

import pathlib

from fastapi.testclient import TestClient

from poolmath.service import create_app

HERE = pathlib.Path(__file__).parent

# (filename, endpoint, body) triples mirroring test/harness.ts
FIXTURES = [
    (
        "table-range-up20.json",
        "table",
        {
            "p0": 1.0,
            "ranges": [[0.5, 1.5]],
            "moves": [0.2],
            "convention": "virtual",
            "request_id": "fix-table-up20",
        },
    ),
    (
        "table-range-down20.json",
        "table",
        {
            "p0": 1.0,
            "ranges": [[0.5, 1.5]],
            "moves": [-0.2],
            "convention": "virtual",
            "request_id": "fix-table-down20",
        },
    ),
    (
        "table-range-up20-quadratic.json",
        "table",
        {
            "p0": 1.0,
            "ranges": [[0.5, 1.5]],
            "moves": [0.2],
            "convention": "quadratic",
            "request_id": "fix-table-quad",
        },
    ),
    (
        "il-v2-r05.json",
        "il",
        {"kind": "v2", "R": 0.5, "request_id": "fix-il-v2"},
    ),
    (
        "profile-range.json",
        "profile",
        {
            "position": {"kind": "range", "p_low": 0.5, "p_high": 1.5, "convention": "virtual"},
            "p0": 1.0,
            "grid": {"kind": "log", "lo": 0.25, "hi": 2.25, "n": 201},
            "request_id": "fix-profile-range",
        },
    ),
    (
        "profile-range-quadratic.json",
        "profile",
        {
            "position": {"kind": "range", "p_low": 0.5, "p_high": 1.5, "convention": "quadratic"},
            "p0": 1.0,
            "grid": {"kind": "log", "lo": 0.25, "hi": 2.25, "n": 201},
            "request_id": "fix-profile-quad",
        },
    ),
    (
        "profile-v2.json",
        "profile",
        {
            "position": {"kind": "v2", "convention": "virtual"},
            "p0": 1.0,
            "grid": {"kind": "log", "lo": 0.25, "hi": 4.0, "n": 201},
            "request_id": "fix-profile-v2",
        },
    ),
]


def main() -> None:
    client = TestClient(create_app())
    for filename, endpoint, body in FIXTURES:
        resp = client.post(f"/api/v1/{endpoint}", json=body)
        resp.raise_for_status()
        path = HERE / filename
        path.write_bytes(resp.content)
        print(f"wrote {path.name}: {len(resp.content)} bytes")


if __name__ == "__main__":
    main()

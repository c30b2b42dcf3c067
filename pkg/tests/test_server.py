"""Tests for the HTTP service."""

import httpx
import numpy as np
import pytest

from blockdfe.sim.report import CSV_COLUMNS
from main import app, matrix_from_payload, matrix_to_payload

CHANNEL = {
    "H": matrix_to_payload(np.array([[2.0, 0.3j], [0.1, 1.0], [0.0, 0.5]])),
    "sigma2": 0.1,
    "M": 2,
    "p0": 2.0,
}


@pytest.fixture
async def client():
    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(transport=transport, base_url="http://test") as c:
        yield c


def test_matrix_payload_conversion():
    a = np.array([[1 + 2j, -3.5]])
    assert matrix_to_payload(a) == [[[1.0, 2.0], [-3.5, 0.0]]]
    np.testing.assert_array_equal(matrix_from_payload(matrix_to_payload(a), "a"), a)


async def test_health(client):
    response = await client.get("/health")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "healthy"
    assert "OPT_MMSE_BDFD" in body["schemes"]


async def test_preset(client):
    response = await client.get("/presets/mimo34")
    assert response.status_code == 200
    assert response.json()["P"] == 4
    assert (await client.get("/presets/nope")).status_code == 404


async def test_design(client):
    response = await client.post("/design", json={**CHANNEL, "scheme": "OPT_ZF_BDFD"})
    assert response.status_code == 200
    body = response.json()
    assert body["success"] and body["kind"] == "ZF_BDFD"
    F = matrix_from_payload(body["F"], "F")
    assert F.shape == (2, 2)
    assert np.real(np.trace(F @ F.conj().T)) == pytest.approx(2.0)


async def test_design_unknown_scheme_is_unprocessable(client):
    response = await client.post("/design", json={**CHANNEL, "scheme": "NOPE"})
    assert response.status_code == 422
    assert response.json()["success"] is False


async def test_design_infeasible_is_bad_request(client):
    payload = {**CHANNEL, "H": matrix_to_payload(np.array([[1.0, 2.0], [2.0, 4.0]]))}
    response = await client.post("/design", json={**payload, "scheme": "OPT_ZF_BDFD"})
    assert response.status_code == 400
    assert "RankDeficient" in response.json()["error"]


async def test_analyze(client):
    response = await client.post("/analyze", json={**CHANNEL, "b": 2})
    assert response.status_code == 200
    body = response.json()
    assert len(body["eigenvalues"]) == 2
    assert body["closed_form_mse"]["OPT_ZF_BDFD"] > 0
    assert body["schemes"]["OPT_MMSE_BDFD"]["success"]


async def test_simulate_caps_channels(client):
    response = await client.post(
        "/simulate",
        json={
            "config": {
                "scenario": "MIMO", "P": 2, "K": 2, "M": 2,
                "schemes": ["OPT_MMSE_BDFD"], "snr_db_grid": [10.0],
                "channels_per_point": 1, "blocks_per_channel": 2,
            },
            "channels": 1000,
        },
    )
    assert response.status_code == 200
    body = response.json()
    assert body["channels_per_point"] == 50
    assert len(body["rows"]) == 2
    assert all(list(row) == CSV_COLUMNS for row in body["rows"])
    assert {row["feedback_mode"] for row in body["rows"]} == {"GENIE", "REAL"}


async def test_simulate_needs_one_source(client):
    response = await client.post("/simulate", json={})
    assert response.status_code == 422

import json

import pytest
from fastapi.testclient import TestClient

from propsizer.cli import main
from propsizer.service import create_app

VC_BODY = {
    "rotor_count": 4,
    "total_weight_n": 196.0,
    "thrust_ratio": 0.5,
    "altitude_m": 50.0,
    "endurance_min": 17.0,
}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestHealth:
    def test_ok(self, client):
        resp = client.get("/api/health")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok"}


class TestCatalogEndpoint:
    def test_four_classes(self, client):
        resp = client.get("/api/catalog")
        assert resp.status_code == 200
        doc = resp.json()
        assert set(doc) == {"propellers", "motors", "escs", "batteries"}
        assert any(r["id"] == "U11 KV90" for r in doc["motors"]["records"])


class TestOptimizeEndpoint:
    def test_reference_mission(self, client):
        resp = client.post("/api/optimize", json=VC_BODY)
        assert resp.status_code == 200
        doc = resp.json()
        assert doc["products"]["propeller"]["id"] == "29x9.5CF 2-blade"
        assert doc["products"]["motor"]["id"] == "U11 KV90"
        assert doc["products"]["esc"]["id"] == "FLAME 60A HV"
        assert doc["products"]["battery"]["id"] == "TATTU 6S 15C 16000mAh x2S1P"
        assert doc["performance"]["endurance_min"] >= 17.0
        assert [t["step"] for t in doc["trace"]] == list(range(1, 13))

    def test_thrust_ratio_out_of_range_is_400(self, client):
        body = dict(VC_BODY, thrust_ratio=1.5)
        resp = client.post("/api/optimize", json=body)
        assert resp.status_code == 400
        assert "error" in resp.json()

    def test_malformed_body_is_400(self, client):
        resp = client.post(
            "/api/optimize",
            content=b"{not json",
            headers={"content-type": "application/json"},
        )
        assert resp.status_code == 400

    def test_unknown_field_is_400(self, client):
        resp = client.post("/api/optimize", json=dict(VC_BODY, color="red"))
        assert resp.status_code == 400

    def test_infeasible_is_422_with_step(self, client):
        resp = client.post("/api/optimize", json=dict(VC_BODY, total_weight_n=100000.0))
        assert resp.status_code == 422
        doc = resp.json()
        assert "error" in doc
        assert "step" in doc

    def test_byte_identical_with_cli(self, client, capsys):
        resp = client.post("/api/optimize", json=VC_BODY)
        assert resp.status_code == 200
        rc = main([
            "optimize", "--weight-n", "196", "--rotors", "4",
            "--gamma", "0.5", "--endurance-min", "17", "--altitude-m", "50",
        ])
        assert rc == 0
        cli_text = capsys.readouterr().out
        assert resp.content == cli_text.encode()


class TestEvaluateEndpoint:
    SYSTEM = {
        "propeller": {"diameter_m": 0.7366, "pitch_m": 0.2413, "blade_count": 2, "weight_n": 1.81},
        "motor": {
            "max_voltage_v": 48.0, "max_current_a": 40.0, "kv_rpm_per_v": 90.0,
            "no_load_current_a": 0.2, "resistance_ohm": 0.08, "weight_n": 7.57,
        },
        "esc": {"max_voltage_v": 48.0, "max_current_a": 60.0, "resistance_ohm": 0.006, "weight_n": 0.78},
        "battery": {
            "voltage_v": 48.0, "capacity_mah": 16000.0, "max_discharge_rate_c": 15.0,
            "resistance_ohm": 0.0096, "weight_n": 37.24,
        },
        "rotor_count": 4,
        "altitude_m": 50.0,
    }

    def test_reference_system(self, client):
        resp = client.post("/api/evaluate", json={"system": self.SYSTEM, "hover_thrust_n": 49.0})
        assert resp.status_code == 200
        doc = resp.json()
        assert doc["endurance_min"] == pytest.approx(17.0, rel=0.2)
        assert doc["hover"]["throttle"] < 1.0

    def test_missing_system_is_400(self, client):
        resp = client.post("/api/evaluate", json={"hover_thrust_n": 49.0})
        assert resp.status_code == 400

    def test_unreachable_hover_is_422(self, client):
        resp = client.post("/api/evaluate", json={"system": self.SYSTEM, "hover_thrust_n": 500.0})
        assert resp.status_code == 422

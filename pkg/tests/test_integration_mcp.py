"""Tests for application health, documentation and configuration."""

import asyncio

import httpx
import pytest
from fastapi.testclient import TestClient

from main import app
from config import Settings, settings


client = TestClient(app)


class TestHealthEndpoint:
    """Tests for /health endpoint."""

    def test_health_check_success(self):
        """Test health endpoint returns healthy status."""
        response = client.get("/health")

        assert response.status_code == 200
        data = response.json()
        assert data["status"] == "healthy"
        assert data["service"] == "numphase-mcp-server"
        assert data["version"] == "1.0.0"
        assert data["grid_k"] == settings.grid_k

    def test_health_check_structure(self):
        """Test health endpoint response structure."""
        data = client.get("/health").json()

        for field in ["status", "service", "version", "timestamp", "environment"]:
            assert field in data


class TestRootEndpoint:
    """Tests for / root endpoint."""

    def test_root_success(self):
        response = client.get("/")

        assert response.status_code == 200
        data = response.json()
        assert data["name"] == "Number-Phase Entropy MCP Server"
        assert data["status"] == "operational"
        assert data["endpoints"]["mcp"] == "/mcp"
        assert data["endpoints"]["api"] == "/analysis"


class TestAPIDocumentation:
    """Tests for API documentation endpoints."""

    def test_openapi_schema(self):
        """Test OpenAPI schema lists the analysis tools."""
        response = client.get("/openapi.json")

        assert response.status_code == 200
        data = response.json()
        assert data["info"]["title"] == "Number-Phase Entropy MCP Server"
        for path in ["/analysis/eval", "/analysis/excess-finite", "/analysis/su2-kernel", "/analysis/mu-objective"]:
            assert path in data["paths"]

    def test_swagger_ui(self):
        response = client.get("/docs")

        assert response.status_code == 200
        assert "text/html" in response.headers["content-type"]


class TestConfiguration:
    """Tests for application configuration."""

    def test_numerical_defaults(self):
        fresh = Settings(_env_file=None)
        assert fresh.grid_k == 4096
        assert fresh.tail_tol == 1e-12
        assert fresh.seed == 0
        assert fresh.sweep_mu == 4.085
        assert fresh.mixed_mu == 4.035

    def test_odd_grid_rounded_up(self):
        assert Settings(_env_file=None, grid_k=1001).grid_k == 1002

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("GRID_K", "2048")
        monkeypatch.setenv("MU_BUDGET", "5000")
        fresh = Settings(_env_file=None)
        assert fresh.grid_k == 2048
        assert fresh.mu_budget == 5000

    def test_bad_tail_tolerance(self):
        with pytest.raises(ValueError):
            Settings(_env_file=None, tail_tol=0.5)

    def test_cors_origins_parsing(self):
        fresh = Settings(_env_file=None, cors_origins="http://a.example, http://b.example")
        assert fresh.cors_origins_list == ["http://a.example", "http://b.example"]


class TestAsyncClient:
    """The app served through httpx's ASGI transport."""

    @pytest.mark.asyncio
    async def test_eval_over_asgi(self):
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://test") as ac:
            response = await ac.post("/analysis/eval", json={"state": {"variant": "fock", "m": 1, "dim": 2}})

        assert response.status_code == 200
        assert response.json()["data"]["h_m"] == 0.0

    @pytest.mark.asyncio
    async def test_concurrent_objective_requests(self):
        transport = httpx.ASGITransport(app=app)
        params = [{"alpha_p": a, "beta_p": 0.0, "d": 2} for a in (0.5, 1.0, 1.5707963267948966)]
        async with httpx.AsyncClient(transport=transport, base_url="http://test") as ac:
            responses = await asyncio.gather(*(ac.get("/analysis/mu-objective", params=p) for p in params))

        ratios = [r.json()["data"] for r in responses]
        assert all(r.status_code == 200 for r in responses)
        assert ratios[0] > ratios[1] > ratios[2]

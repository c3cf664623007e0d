import pytest
from httpx import ASGITransport, AsyncClient

from octo_cr.main import _suite_of, app


@pytest.fixture
async def client():
    async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as c:
        yield c


class TestHealth:
    async def test_health(self, client):
        response = await client.get("/health")
        assert response.status_code == 200
        assert response.json()["status"] == "healthy"

    async def test_process_time_header(self, client):
        response = await client.get("/health")
        assert float(response.headers["X-Process-Time"]) >= 0.0


class TestRequestLog:
    def test_suite_tag(self):
        assert _suite_of("/verify/algebra") == "algebra"
        assert _suite_of("/verify/") == "-"
        assert _suite_of("/table") == "-"


class TestTable:
    async def test_json(self, client):
        response = await client.get("/table")
        assert response.status_code == 200
        assert len(response.json()["rows"]) == 8

    async def test_csv(self, client):
        response = await client.get("/table", params={"format": "csv"})
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("text/plain")
        assert response.text.startswith("row,column,sign,index,label")

    async def test_unknown_format(self, client):
        response = await client.get("/table", params={"format": "xml"})
        assert response.status_code == 400
        assert response.json()["code"] == 400


class TestSystems:
    async def test_diff(self, client):
        response = await client.get("/systems", params={"diff_paper": "true"})
        assert response.status_code == 200
        assert response.json()["diff"]["unacknowledged"] == []


class TestVerify:
    async def test_algebra(self, client):
        response = await client.get("/verify/algebra", params={"seed": 4, "samples": 3})
        assert response.status_code == 200
        data = response.json()
        assert data["suite"] == "algebra"
        assert data["seed"] == 4
        assert data["summary"]["failed"] == 0

    async def test_unknown_suite(self, client):
        response = await client.get("/verify/geometry")
        assert response.status_code == 400

    async def test_bad_samples(self, client):
        response = await client.get("/verify/algebra", params={"samples": 0})
        assert response.status_code == 400

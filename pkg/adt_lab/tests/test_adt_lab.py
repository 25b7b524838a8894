import pytest
from fastapi import FastAPI
from httpx import AsyncClient
from starlette import status

from adt_lab.schemes import scheme_parameters


@pytest.mark.anyio
async def test_health(client: AsyncClient, fastapi_app: FastAPI) -> None:
    """
    Checks the health endpoint.

    :param client: client for the app.
    :param fastapi_app: current FastAPI application.
    """
    url = fastapi_app.url_path_for("health_check")
    response = await client.get(url)
    assert response.status_code == status.HTTP_200_OK


@pytest.mark.anyio
async def test_region(client: AsyncClient, fastapi_app: FastAPI) -> None:
    url = fastapi_app.url_path_for("get_region")
    response = await client.get(url, params={"config": "1,2/2,1"})
    assert response.status_code == status.HTTP_200_OK
    body = response.json()
    assert {"forward": "4/3", "backward": "4/3"} in body["corners"]
    assert body["regime"] == "R4"
    assert body["gain_class"] == "PERFECT_FEEDBACK_ACHIEVABLE"
    assert body["corollary1"] is True


@pytest.mark.anyio
async def test_region_of_a_one_way_network(client: AsyncClient, fastapi_app: FastAPI) -> None:
    url = fastapi_app.url_path_for("get_region")
    response = await client.get(url, params={"config": "1,2/0,0"})
    assert response.status_code == status.HTTP_200_OK
    body = response.json()
    assert body["regime"] is None
    assert body["gain_class"] is None


@pytest.mark.anyio
async def test_region_rejects_bad_config(client: AsyncClient, fastapi_app: FastAPI) -> None:
    url = fastapi_app.url_path_for("get_region")
    response = await client.get(url, params={"config": "1,2"})
    assert response.status_code == status.HTTP_400_BAD_REQUEST


@pytest.mark.anyio
async def test_decompose(client: AsyncClient, fastapi_app: FastAPI) -> None:
    url = fastapi_app.url_path_for("get_decomposition")
    response = await client.get(url, params={"m": 2, "n": 4})
    assert response.status_code == status.HTTP_200_OK
    assert response.json()["parts"] == "(1,2)^2"


@pytest.mark.anyio
async def test_decompose_validates_levels(client: AsyncClient, fastapi_app: FastAPI) -> None:
    url = fastapi_app.url_path_for("get_decomposition")
    response = await client.get(url, params={"m": -1, "n": 4})
    assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY


@pytest.mark.anyio
async def test_plan(client: AsyncClient, fastapi_app: FastAPI) -> None:
    url = fastapi_app.url_path_for("get_plan")
    response = await client.get(url, params={"config": "2,4/3,1", "target": "perfect-both"})
    assert response.status_code == status.HTTP_200_OK
    body = response.json()
    assert body["predicted"] == {"forward": "8/3", "backward": "2"}
    assert body["executable"] is True
    assert len(body["pairings"]) == 2
    assert body["finite"] is None
    assert "PREDICTED 8/3 2" in body["serialized"]


@pytest.mark.anyio
async def test_plan_with_finite_rates(client: AsyncClient, fastapi_app: FastAPI) -> None:
    url = fastapi_app.url_path_for("get_plan")
    params = {"config": "1,2/2,1", "target": "perfect-both", "finite": "true"}
    response = await client.get(url, params=params)
    assert response.status_code == status.HTTP_200_OK
    body = response.json()
    assert body["predicted"] == {"forward": "4/3", "backward": "4/3"}
    assert body["finite"] == {"forward": "4/3", "backward": "2/3"}
    assert "FINITE 4/3 2/3" in body["serialized"]


@pytest.mark.anyio
async def test_catalog(client: AsyncClient, fastapi_app: FastAPI) -> None:
    url = fastapi_app.url_path_for("get_catalog")
    response = await client.get(url)
    assert response.status_code == status.HTTP_200_OK
    assert "ex1:L=<L>" in response.json()["schemes"]


@pytest.mark.anyio
async def test_verify(client: AsyncClient, fastapi_app: FastAPI) -> None:
    url = fastapi_app.url_path_for("verify_scheme")
    response = await client.post(url, json={"scheme": "ex1:L=2", "seed": 1})
    assert response.status_code == status.HTTP_200_OK
    body = response.json()
    assert body["achieved"] == {"forward": "4/3", "backward": "2/3"}
    assert body["passed"] is True
    assert body["seed"] == 1


@pytest.mark.anyio
async def test_verify_unknown_scheme(client: AsyncClient, fastapi_app: FastAPI) -> None:
    url = fastapi_app.url_path_for("verify_scheme")
    response = await client.post(url, json={"scheme": "warp:9"})
    assert response.status_code == status.HTTP_400_BAD_REQUEST


@pytest.mark.anyio
async def test_verify_refuses_plan_files(client: AsyncClient, fastapi_app: FastAPI) -> None:
    url = fastapi_app.url_path_for("verify_scheme")
    response = await client.post(url, json={"scheme": "compose:/etc/passwd"})
    assert response.status_code == status.HTTP_400_BAD_REQUEST


@pytest.mark.anyio
@pytest.mark.parametrize(
    "identifier,field",
    [("ex1:L=500", "L"), ("ex2:L=2,M=4096", "M"), ("nf:100,2", "m"), ("l4:iv:i=9,j=1", "i")],
)
async def test_verify_bounds_parameters(
    client: AsyncClient,
    fastapi_app: FastAPI,
    identifier: str,
    field: str,
) -> None:
    url = fastapi_app.url_path_for("verify_scheme")
    response = await client.post(url, json={"scheme": identifier})
    assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY
    assert response.json()["detail"][0].startswith(f"{field}: ")


def test_scheme_parameters() -> None:
    assert scheme_parameters("ex2:L=2,M=4") == {"L": 2, "M": 4}
    assert scheme_parameters("l4:iv:i=1,j=2,L=3") == {"i": 1, "j": 2, "L": 3}
    assert scheme_parameters("l4i:L=2,backward-heavy") == {"L": 2}
    assert scheme_parameters("nf~:2,1") == {"m": 2, "n": 1}
    assert scheme_parameters("pf:1,2") == {}

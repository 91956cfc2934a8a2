"""HTTP service tests over the in-process ASGI app."""

import pytest
from fastapi.testclient import TestClient

from qac.service import create_app


@pytest.fixture(scope="module")
def client(request):
    index = request.getfixturevalue("table1_index")
    with TestClient(create_app(index)) as c:
        yield c


# TestClient needs the session fixture; re-export it at module scope
@pytest.fixture(scope="module")
def table1_index():
    from conftest import fixture_lines
    from qac.corpus import ingest
    from qac.index import Index

    return Index.build(ingest(fixture_lines(), "explicit"))


class TestComplete:
    def test_conjunctive_worked_example(self, client):
        r = client.get("/complete", params={"q": "bmw i3 s", "k": 10,
                                            "mode": "conjunctive"})
        assert r.status_code == 200
        body = r.json()
        assert [x["docid"] for x in body["results"]] == [1, 2, 4]
        assert body["parsed"] == {"prefix_ids": [3, 4], "suffix": "s"}
        assert body["results"][0] == {"rank": 1, "docid": 1, "score": 90,
                                      "completion": "bmw i3 sedan"}
        assert set(body["timings_us"]) == {"parse", "locate", "search",
                                           "report", "total"}

    def test_prefix_mode_empty_result_is_200(self, client):
        r = client.get("/complete", params={"q": "sport", "mode": "prefix"})
        assert r.status_code == 200
        assert r.json()["results"] == []

    def test_missing_q_is_400(self, client):
        assert client.get("/complete").status_code == 400
        assert client.get("/complete", params={"q": ""}).status_code == 400

    def test_k_bounds(self, client):
        assert client.get("/complete", params={"q": "bmw", "k": 0}).status_code == 400
        assert client.get("/complete", params={"q": "bmw", "k": 101}).status_code == 400
        assert client.get("/complete", params={"q": "bmw", "k": 100}).status_code == 200

    def test_bad_mode_and_variant(self, client):
        assert client.get("/complete", params={"q": "bmw", "mode": "x"}).status_code == 400
        assert client.get("/complete", params={"q": "bmw", "variant": "x"}).status_code == 400

    def test_pure_function_of_parameters(self, client):
        params = {"q": "bmw i3 s", "k": 5, "mode": "conjunctive", "variant": "fc"}
        first = client.get("/complete", params=params).json()
        second = client.get("/complete", params=params).json()
        first.pop("timings_us")
        second.pop("timings_us")
        assert first == second

    def test_variants_agree_over_http(self, client):
        docids = []
        for variant in ("heap", "fwd", "fc"):
            r = client.get("/complete", params={"q": "bmw i3 s", "variant": variant})
            docids.append([x["docid"] for x in r.json()["results"]])
        assert docids[0] == docids[1] == docids[2]

    def test_url_encoded_query(self, client):
        r = client.get("/complete?q=bmw%20i3%20s&k=10&mode=conjunctive")
        assert [x["docid"] for x in r.json()["results"]] == [1, 2, 4]


class TestFailurePath:
    def test_internal_failure_maps_to_500(self, table1_index, monkeypatch):
        from qac.engine import Engine

        def boom(self, *args, **kwargs):
            raise RuntimeError("index exploded")

        monkeypatch.setattr(Engine, "search", boom)
        with TestClient(create_app(table1_index),
                        raise_server_exceptions=False) as broken:
            r = broken.get("/complete", params={"q": "bmw"})
            assert r.status_code == 500


class TestAuxEndpoints:
    def test_healthz(self, client):
        r = client.get("/healthz")
        assert r.status_code == 200
        assert r.json() == {"status": "ok"}

    def test_stats(self, client):
        r = client.get("/stats")
        assert r.status_code == 200
        body = r.json()
        assert body["completions"] == 9
        assert body["unique_terms"] == 10
        assert body["avg_terms_per_completion"] == pytest.approx(22 / 9)

import pytest
from fastapi.testclient import TestClient

from factalign.annotation import AnnotationService
from factalign.annotation_api import create_app

from test_annotation import run_golden_phase, seed_tasks

ADMIN = {"Authorization": "Bearer sekrit"}


@pytest.fixture
def service():
    return AnnotationService(golden_quota=1, default_top_n=4)


@pytest.fixture
def client(service):
    return TestClient(create_app(service, admin_token="sekrit"))


def test_register_and_fetch(client, service):
    seed_tasks(service, n_golden=1, n_regular=1)
    response = client.post("/annotators", json={"id": "a1", "language": "hi"})
    assert response.status_code == 201
    assert response.json() == {"annotator_id": "a1", "language": "hi"}

    task = client.get("/tasks/next", params={"annotator": "a1"})
    assert task.status_code == 200
    payload = task.json()
    assert set(payload) == {"task_id", "language", "sentence", "reference_translation", "facts"}
    assert all(set(f) == {"fact_id", "text"} for f in payload["facts"])


def test_unknown_annotator_404(client):
    assert client.get("/tasks/next", params={"annotator": "ghost", "language": "hi"}).status_code == 404


def test_submission_flow_with_duplicate(client, service):
    seed_tasks(service, n_golden=1, n_regular=1)
    client.post("/annotators", json={"id": "a1", "language": "hi"})
    task = client.get("/tasks/next", params={"annotator": "a1"}).json()
    body = {
        "annotator_id": "a1",
        "marked_fact_ids": [task["facts"][0]["fact_id"]],
        "coverage": "complete",
        "issue_text": "",
        "timestamp": "2024-05-01T00:00:00Z",
    }
    first = client.post(f"/tasks/{task['task_id']}/submission", json=body)
    assert first.status_code == 201
    assert first.json() == {"record_id": "S000001"}

    duplicate = client.post(f"/tasks/{task['task_id']}/submission", json=body)
    assert duplicate.status_code == 409


def test_invalid_fact_id_400(client, service):
    seed_tasks(service, n_golden=1, n_regular=1)
    client.post("/annotators", json={"id": "a1", "language": "hi"})
    task = client.get("/tasks/next", params={"annotator": "a1"}).json()
    response = client.post(
        f"/tasks/{task['task_id']}/submission",
        json={"annotator_id": "a1", "marked_fact_ids": ["P9|bogus"], "coverage": "complete"},
    )
    assert response.status_code == 400


def test_exhaustion_gives_204(client, service):
    client.post("/annotators", json={"id": "a1", "language": "hi"})
    assert client.get("/tasks/next", params={"annotator": "a1", "language": "hi"}).status_code == 204


def test_admin_routes_require_token(client, service):
    assert client.get("/admin/stats").status_code == 401
    assert client.get("/admin/stats", headers={"Authorization": "Bearer wrong"}).status_code == 401
    assert client.get("/admin/stats", headers=ADMIN).status_code == 200


def test_qualify_and_export_via_api(client, service):
    seed_tasks(service, n_golden=1, n_regular=1)
    run_golden_phase(service, "good", mark_gold=True)
    ranked = client.get("/admin/qualify", params={"language": "hi"}, headers=ADMIN)
    assert ranked.status_code == 200
    assert ranked.json()[0]["annotator_id"] == "good"
    assert ranked.json()[0]["golden_kappa"] == 1.0

    task = client.get("/tasks/next", params={"annotator": "good"}).json()
    client.post(
        f"/tasks/{task['task_id']}/submission",
        json={
            "annotator_id": "good",
            "marked_fact_ids": [task["facts"][0]["fact_id"]],
            "coverage": "complete",
        },
    )
    export = client.get("/admin/export", params={"language": "hi"}, headers=ADMIN)
    assert export.status_code == 200
    instances = export.json()["instances"]
    assert len(instances) == 1
    assert instances[0]["method"] == "gold"
    assert len(instances[0]["facts"]) == 1


def test_golden_and_regular_payloads_identical_schema(client, service):
    sets, tasks = seed_tasks(service, n_golden=1, n_regular=1)
    client.post("/annotators", json={"id": "a1", "language": "hi"})
    golden_payload = client.get("/tasks/next", params={"annotator": "a1"}).json()
    # Complete the quota so the next fetch (after qualification) is regular.
    client.post(
        f"/tasks/{golden_payload['task_id']}/submission",
        json={"annotator_id": "a1", "marked_fact_ids": [], "coverage": "", "issue_text": "n/a"},
    )
    client.get("/admin/qualify", params={"language": "hi"}, headers=ADMIN)
    regular_payload = client.get("/tasks/next", params={"annotator": "a1"}).json()
    assert set(golden_payload) == set(regular_payload)
    assert [set(f) for f in golden_payload["facts"]] == [set(f) for f in regular_payload["facts"]]

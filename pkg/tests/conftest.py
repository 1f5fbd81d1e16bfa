from __future__ import annotations

import json
from pathlib import Path

import pytest

from kgvb import endpoint
from kgvb.client import EndpointConfig, SparqlClient
from kgvb.engine import Budget, Catalogue
from kgvb.interaction_model import compile_model, load_model
from kgvb.ntriples import load_ntriples
from kgvb.skill import Skill

ROOT = Path(__file__).resolve().parents[1]

MODEL_PATH = ROOT / "models" / "disease-skill.json"
FIXTURE_PATH = ROOT / "fixtures" / "disgenet-mini.nt"
MANIFEST_PATH = ROOT / "fixtures" / "manifest.json"
TEMPLATES_PATH = ROOT / "queries" / "templates.json"
PLANS_PATH = ROOT / "queries" / "plans.json"
CATALOG_DIR = ROOT / "queries" / "catalog"


@pytest.fixture(scope="session")
def model():
    return load_model(MODEL_PATH)


@pytest.fixture(scope="session")
def matcher(model):
    return compile_model(model)


@pytest.fixture(scope="session")
def store():
    return load_ntriples(FIXTURE_PATH)


@pytest.fixture(scope="session")
def fixture_triples(store):
    return list(store)


@pytest.fixture(scope="session")
def manifest():
    return json.loads(MANIFEST_PATH.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def catalogue():
    return Catalogue.load(TEMPLATES_PATH, PLANS_PATH)


@pytest.fixture(scope="session")
def endpoint_handle(store):
    handle = endpoint.serve(store, 0)
    yield handle
    handle.close()


@pytest.fixture(scope="session")
def client(endpoint_handle):
    return SparqlClient(EndpointConfig(url=endpoint_handle.url))


@pytest.fixture()
def skill(matcher, catalogue, client, endpoint_handle):
    return Skill(matcher, catalogue, client, Budget(), endpoint_url=endpoint_handle.url)

"""Acceptance suite: one test per release criterion, each printing PASS/FAIL.

Run with `pytest tests/test_acceptance.py -v -s` to see the criterion lines.
"""

from __future__ import annotations

import copy
import json
import random
import time
import xml.etree.ElementTree as ET
from contextlib import contextmanager

import pytest
import requests

from kgvb import endpoint as endpoint_mod
from kgvb.cli import main as cli_main
from kgvb.engine import (
    Budget,
    InvalidIriError,
    LayerBudgetExceededError,
    bind_plan,
    execute_plan,
    instantiate,
)
from kgvb.evaluator import evaluate
from kgvb.interaction_model import SlotRef
from kgvb.nlu import match, normalize
from kgvb.results import canonical_results_bytes
from kgvb.skill import Skill
from kgvb.sparql import parse_query
from kgvb.webapp import serve_skill

from conftest import CATALOG_DIR
from naive_sparql import oracle_evaluate, same_multiset, same_ordered
from graphgen import random_graph, template_bindings


@contextmanager
def criterion(name: str):
    started = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"\nACCEPTANCE {name}: FAIL ({time.monotonic() - started:.1f}s)")
        raise
    print(f"\nACCEPTANCE {name}: PASS ({time.monotonic() - started:.1f}s)")


# 1. ------------------------------------------------------------------------------


def test_interaction_model_round_trip(model, matcher):
    with criterion("interaction-model round-trip"):
        rng = random.Random(2024)
        gazetteers = {
            st.name: [e.canonical_value for e in st.entries] for st in model.slot_types
        }
        started = time.monotonic()
        cases = 0
        failures = []
        for intent in model.intents:
            slot_types = dict(intent.slots)
            for pattern in intent.samples:
                slot_names = pattern.slot_names()
                # every slot gets ten random gazetteer instantiations
                rounds = [(name, rng.choice(gazetteers[slot_types[name]]))
                          for name in slot_names for _ in range(10)] or [(None, None)]
                for varied_slot, varied_value in rounds:
                    words: list[str] = []
                    for token in pattern.tokens:
                        if isinstance(token, SlotRef):
                            if token.slot_name == varied_slot:
                                value = varied_value
                            else:
                                value = rng.choice(gazetteers[slot_types[token.slot_name]])
                            words.extend(normalize(value))
                        else:
                            words.append(token.word)
                    result = match(matcher, words)
                    cases += 1
                    if result is None or result.intent_name != intent.name:
                        failures.append((pattern.source, words, result))
        elapsed = time.monotonic() - started
        assert cases >= 400, f"only {cases} generated cases"
        assert not failures, failures[:5]
        assert elapsed < 5.0, f"round-trip took {elapsed:.1f}s"
        print(f"  {cases} generated utterances matched their intent in {elapsed:.1f}s")


# 2. ------------------------------------------------------------------------------


def test_restricted_sparql_oracle_equivalence(catalogue):
    with criterion("restricted-SPARQL oracle equivalence"):
        from kgvb.store import TripleSet

        rng = random.Random(99)
        started = time.monotonic()
        checked = 0
        for _ in range(100):
            triples, meta = random_graph(rng, max_triples=300)
            assert len(triples) <= 300
            store = TripleSet(triples)
            for template in catalogue.templates.values():
                ast = parse_query(instantiate(template, template_bindings(rng, meta)))
                got = evaluate(store, ast).rows
                want = oracle_evaluate(triples, ast)
                if ast.order_by:
                    assert same_ordered(got, want), (template.id, len(triples))
                else:
                    assert same_multiset(got, want), (template.id, len(triples))
                checked += 1
        elapsed = time.monotonic() - started
        assert elapsed < 60.0, f"oracle sweep took {elapsed:.1f}s"
        print(f"  {checked} query evaluations matched the nested-loop oracle in {elapsed:.1f}s")


# 3. ------------------------------------------------------------------------------


def test_catalog_query_shapes(store, fixture_triples):
    with criterion("published query shapes"):
        names = ["evidence-excerpts.rq", "top-associations.rq", "gene-disease-rows.rq"]
        for name in names:
            ast = parse_query((CATALOG_DIR / name).read_text(encoding="utf-8"))
            table = evaluate(store, ast)
            assert len(table.rows) > 0, f"{name} returned no rows on the fixture"
        top = parse_query((CATALOG_DIR / "top-associations.rq").read_text(encoding="utf-8"))
        table = evaluate(store, top)
        counts = [int(row["publications"].lexical) for row in table.rows]
        assert counts == sorted(counts, reverse=True), "publication counts must not increase"
        expected = oracle_evaluate(fixture_triples, top)
        assert same_ordered(table.rows, expected), "top-k differs from oracle row-for-row"
        print(f"  3 catalog queries non-empty; top-k counts {counts[:5]}... match the oracle")


# 4. ------------------------------------------------------------------------------


FIXTURE_BINDINGS = [
    {
        "disease_title": "Asthma",
        "gene_symbol": "TP53",
        "class_name": "kinase",
        "disease": "http://linkedlifedata.com/resource/umls/id/C0004096",
        "gene": "http://identifiers.org/ncbigene/7157",
    },
    {
        "disease_title": "Breast Carcinoma",
        "gene_symbol": "BRCA1",
        "class_name": "cytokine",
        "disease": "http://linkedlifedata.com/resource/umls/id/C0678222",
        "gene": "http://identifiers.org/ncbigene/672",
    },
]


def test_loopback_protocol_identity(catalogue, store, client):
    with criterion("loopback protocol identity"):
        queries = [
            instantiate(template, bindings)
            for template in catalogue.templates.values()
            for bindings in FIXTURE_BINDINGS
        ]
        queries += [
            (CATALOG_DIR / name).read_text(encoding="utf-8")
            for name in ("evidence-excerpts.rq", "top-associations.rq", "gene-disease-rows.rq")
        ]
        for query in queries:
            via_http = client.execute(query)
            direct = evaluate(store, parse_query(query))
            assert canonical_results_bytes(via_http) == canonical_results_bytes(direct), query
        print(f"  {len(queries)} queries identical over HTTP and in-process")


# 5. ------------------------------------------------------------------------------


_META = list("\"'\\{}.;,()#?<>@ \t\n\r") + [
    "} . ?s ?p ?o", 'x" . FILTER', "SELECT", "PREFIX", "a", "count(?x)",
    "\\u0022", "--", "é", "世界", "}}#", '"""',
]


def _fuzz_string(rng: random.Random) -> str:
    parts = [rng.choice(_META) for _ in range(rng.randint(1, 8))]
    if rng.random() < 0.5:
        parts.insert(rng.randrange(len(parts) + 1), "asthma")
    return "".join(parts) or "x"


def test_injection_fuzz(catalogue):
    with criterion("injection fuzz"):
        rng = random.Random(1312)
        safe = {"string": "safe", "iri": "http://example.org/safe"}
        shapes = {
            t.id: len(parse_query(instantiate(
                t, {n: safe[k] for n, k in t.params})).where)
            for t in catalogue.templates.values() if t.params
        }
        escapes = 0
        checked = 0
        for _ in range(1000):
            fuzzed = _fuzz_string(rng)
            for template in catalogue.templates.values():
                for pname, kind in template.params:
                    bindings = {n: safe[k] for n, k in template.params}
                    bindings[pname] = fuzzed
                    if kind == "iri":
                        try:
                            query = instantiate(template, bindings)
                        except InvalidIriError:
                            continue  # cleanly rejected, nothing reaches the engine
                    else:
                        query = instantiate(template, bindings)
                    checked += 1
                    try:
                        ast = parse_query(query)
                    except Exception:
                        escapes += 1
                        continue
                    if len(ast.where) != shapes[template.id]:
                        escapes += 1
        assert escapes == 0, f"{escapes} fuzzed strings broke template shape"
        print(f"  1000 fuzzed strings, {checked} instantiations, 0 escapes")


# 6. ------------------------------------------------------------------------------


def test_budget_behavior(catalogue, store):
    with criterion("budget behavior"):
        from kgvb.client import EndpointConfig, SparqlClient

        handle = endpoint_mod.serve(store, 0)
        try:
            clt = SparqlClient(EndpointConfig(url=handle.url))
            plan = bind_plan(
                catalogue.plans["related_diseases_via_top_gene"], {"disease": "Asthma"}
            )
            assert len(plan.layers) == 3
            before = handle.request_count
            with pytest.raises(LayerBudgetExceededError) as exc:
                execute_plan(plan, clt, Budget(max_layers=2), catalogue)
            assert (exc.value.needed, exc.value.allowed) == (3, 2)
            assert handle.request_count == before, "a query leaked past the budget check"

            result = execute_plan(plan, clt, Budget(max_layers=4), catalogue)
            assert result.layers_executed == 3
            assert len(result.table.rows) > 0
        finally:
            handle.close()
        print("  3-layer plan: typed refusal at max_layers=2 with 0 requests; success at 4")


# 7. ------------------------------------------------------------------------------


def _base_envelopes() -> list[dict]:
    envelopes = [
        {"version": "1.0",
         "session": {"new": True, "sessionId": "fz", "attributes": {}},
         "request": {"type": "LaunchRequest", "requestId": "r", "timestamp": "t"}},
        {"version": "1.0",
         "session": {"new": False, "sessionId": "fz", "attributes": {"turnCount": "1"}},
         "request": {"type": "SessionEndedRequest", "reason": "USER_INITIATED"}},
    ]
    intents = {
        "DefinitionIntent": {"disease": "asthma"},
        "GenesForDiseaseIntent": {"disease": "melanoma"},
        "CausationIntent": {"disease": "asthma"},
        "DiseasesForGeneIntent": {"gene": "tp53"},
        "CommonGenesIntent": {},
        "EvidenceIntent": {"gene": "tnf", "disease": "crohns"},
        "PublicationCountIntent": {"gene": "tp53", "disease": "breast cancer"},
        "TopAssociationsIntent": {},
        "ProteinClassIntent": {"protein_class": "kinase"},
        "HelpIntent": {},
        "StopIntent": {},
        "CancelIntent": {},
    }
    for name, slots in intents.items():
        envelopes.append(
            {"version": "1.0",
             "session": {"new": True, "sessionId": "fz", "attributes": {}},
             "request": {"type": "IntentRequest", "requestId": "r", "timestamp": "t",
                         "intent": {"name": name, "slots": {
                             k: {"name": k, "value": v} for k, v in slots.items()}}}}
        )
    return envelopes


_JUNK_VALUES = [None, True, 0, -3, 3.5, "", "x", [], [1], {}, {"a": 1}, chr(0), "💥"]


def _mutate(rng: random.Random, envelope: dict) -> dict:
    doc = copy.deepcopy(envelope)
    for _ in range(rng.randint(1, 3)):
        node = doc
        # walk to a random nested dict
        for _ in range(rng.randint(0, 3)):
            dict_children = [v for v in node.values() if isinstance(v, dict)]
            if not dict_children or rng.random() < 0.3:
                break
            node = rng.choice(dict_children)
        if not isinstance(node, dict) or not node:
            continue
        key = rng.choice(sorted(node))
        action = rng.random()
        if action < 0.4:
            node[key] = rng.choice(_JUNK_VALUES)
        elif action < 0.7:
            del node[key]
        else:
            node[f"{key}_junk"] = rng.choice(_JUNK_VALUES)
    return doc


def test_webhook_totality(skill):
    with criterion("webhook totality"):
        rng = random.Random(777)
        bases = _base_envelopes()
        handle = serve_skill(skill, port=0)
        deadline_s = skill.budget.total_timeout_ms / 1000.0 + 1.0
        ok_200 = ok_400 = 0
        try:
            url = f"{handle.url}/alexa"
            for i in range(500):
                envelope = _mutate(rng, rng.choice(bases))
                started = time.monotonic()
                resp = requests.post(url, json=envelope, timeout=deadline_s + 5)
                elapsed = time.monotonic() - started
                assert elapsed <= deadline_s, f"request {i} took {elapsed:.1f}s"
                body = resp.json()  # every response is JSON
                if resp.status_code == 200:
                    ok_200 += 1
                    assert body["version"] == "1.0"
                    speech = body["response"]["outputSpeech"]
                    root = ET.fromstring(speech["ssml"])
                    assert root.tag == "speak"
                    assert isinstance(body["response"]["shouldEndSession"], bool)
                else:
                    ok_400 += 1
                    assert resp.status_code == 400
                    assert "error" in body
        finally:
            handle.close()
        print(f"  500 mutated envelopes: {ok_200} spoken responses, {ok_400} clean 400s")


# 8. ------------------------------------------------------------------------------


def test_two_turn_session_focus(skill, catalogue, fixture_triples):
    with criterion("two-turn session focus"):
        ranked = instantiate(
            catalogue.templates["genes_ranked_for_disease"],
            {"disease": "http://linkedlifedata.com/resource/umls/id/C0004096"},
        )
        expected = [row["geneSymbol"].lexical
                    for row in oracle_evaluate(fixture_triples, parse_query(ranked))]
        assert expected == ["IL13", "ADRB2", "IL6", "TNF"]  # frozen from the oracle

        first = skill.converse("acceptance-turns", "give me information about asthma")
        assert first.intent == "DefinitionIntent"
        second = skill.converse("acceptance-turns", "what genes cause it")
        assert second.intent == "CausationIntent"
        # the answer lists exactly the oracle's genes, in ranked order
        positions = [second.answer.find(symbol) for symbol in expected]
        assert all(p >= 0 for p in positions), second.answer
        assert positions == sorted(positions), second.answer
        print(f"  follow-up turn resolved to Asthma; ranked genes {expected}")


# 9. ------------------------------------------------------------------------------


SCRIPTED_UTTERANCES = [
    "give me information about asthma",
    "tell me about melanoma",
    "what is cystic fibrosis",
    "define schizophrenia",
    "what genes are associated with breast carcinoma",
    "which genes are associated with parkinson disease",
    "show me genes for crohn disease",
    "what genes cause asthma",
    "which genes cause alzheimer disease",
    "what diseases are associated with TP53",
    "which diseases are linked to TNF",
    "what can EGFR cause",
    "what genes are associated with several diseases",
    "what are the top gene disease associations",
    "show me the top associations",
    "is there evidence that TP53 is associated with breast carcinoma",
    "how many papers link APOE and alzheimer disease",
    "what diseases are associated with a kinase",
    "help",
    "utter gibberish nothing matches this",
]


def test_cli_service_equivalence(capsys, matcher, catalogue, client, endpoint_handle):
    with criterion("CLI/service equivalence"):
        assert len(SCRIPTED_UTTERANCES) == 20
        service_skill = Skill(matcher, catalogue, client, Budget(),
                              endpoint_url=endpoint_handle.url)
        handle = serve_skill(service_skill, port=0)
        try:
            for i, text in enumerate(SCRIPTED_UTTERANCES):
                code = cli_main([
                    "--model", "models/disease-skill.json",
                    "--fixture", "fixtures/disgenet-mini.nt",
                    "ask", text,
                ])
                out = capsys.readouterr().out.strip()
                resp = requests.post(
                    f"{handle.url}/converse",
                    json={"sessionId": f"cli-eq-{i}", "text": text},
                    timeout=30,
                )
                body = resp.json()
                assert out == body["answer"], text
                assert code == (0 if body["intent"] else 3)
        finally:
            handle.close()
        print("  20 scripted utterances: `ask` output equals the /converse answer")

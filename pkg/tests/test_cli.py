from kgvb import cli

from conftest import FIXTURE_PATH, MODEL_PATH


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


BASE = ["--model", str(MODEL_PATH), "--fixture", str(FIXTURE_PATH)]


def test_validate_shipped_artifacts(capsys):
    code, out, err = run_cli(capsys, *BASE, "validate")
    assert code == 0
    assert "model: OK" in out and "fixture: OK" in out and "catalogue: OK" in out


def test_ask_definition(capsys):
    code, out, _ = run_cli(capsys, *BASE, "ask", "give me information about asthma")
    assert code == 0
    assert "DOID:2841" in out


def test_ask_no_match_exit_code(capsys):
    code, out, _ = run_cli(capsys, *BASE, "ask", "gibberish zzz")
    assert code == 3
    assert "didn't understand" in out


def test_flags_accepted_after_subcommand(capsys):
    code, out, _ = run_cli(capsys, "ask", "what is asthma", *BASE)
    assert code == 0


def test_fixture_and_endpoint_conflict(capsys):
    code, _, err = run_cli(
        capsys, "--fixture", str(FIXTURE_PATH), "--endpoint", "http://x/sparql",
        "ask", "hello",
    )
    assert code == 1
    assert "mutually exclusive" in err


def test_port_out_of_range(capsys):
    code, _, err = run_cli(capsys, *BASE, "--port", "99999", "serve")
    assert code == 1


def test_query_tsv_output(capsys):
    query = (
        "PREFIX dcterms: <http://purl.org/dc/terms/> "
        "PREFIX ncit: <http://ncicb.nci.nih.gov/xml/owl/EVS/Thesaurus.owl#> "
        "SELECT ?d ?t WHERE { ?d a ncit:C7057 ; dcterms:title ?t } ORDER BY ?t LIMIT 2"
    )
    code, out, _ = run_cli(capsys, *BASE, "query", query)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "d\tt"
    assert lines[1].endswith('"Alzheimer Disease"')
    assert lines[1].startswith("<http://linkedlifedata.com/")


def test_query_parse_error_exit_2(capsys):
    code, _, err = run_cli(capsys, *BASE, "query", "SELEKT nonsense")
    assert code == 2
    assert "query failed" in err


def test_ask_answer_equals_converse(capsys, skill):
    text = "which diseases are linked to TP53"
    code, out, _ = run_cli(capsys, *BASE, "ask", text)
    assert code == 0
    via_converse = skill.converse("equivalence-check", text)
    assert out.strip() == via_converse.answer


def test_env_endpoint_fallback(capsys, endpoint_handle, monkeypatch):
    monkeypatch.setenv("KGVB_ENDPOINT", endpoint_handle.url)
    code, out, _ = run_cli(capsys, "--model", str(MODEL_PATH), "ask", "what is asthma")
    assert code == 0
    assert "DOID:2841" in out


def test_repl_session_and_json_toggle(capsys, monkeypatch):
    lines = iter([
        "give me information about asthma",
        ":json",
        "what genes cause it",  # session focus carries across the loop
        ":quit",
    ])
    monkeypatch.setattr("builtins.input", lambda prompt="": next(lines))
    code, out, _ = run_cli(capsys, *BASE, "repl")
    assert code == 0
    assert "[DefinitionIntent]" in out
    assert "[CausationIntent]" in out and "IL13" in out
    assert '"type": "IntentRequest"' in out  # envelope display was toggled on

"""Operator entry point: REPL, one-shot questions, serving, validation, raw queries."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import uuid
from dataclasses import dataclass

from . import assets, endpoint, interaction_model, ntriples, webapp
from .client import EndpointConfig, SparqlClient
from .engine import Budget, Catalogue
from .evaluator import evaluate
from .skill import Skill
from .sparql import parse_query
from .store import TripleSet

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2
EXIT_NOMATCH = 3


class ConfigError(Exception):
    """Configuration problem; maps to exit code 1."""


@dataclass
class CliConfig:
    model_path: str
    fixture_path: str | None
    endpoint_url: str | None
    port: int
    max_layers: int | None
    timeout_ms: int | None
    verbose: bool


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS on the shared flags lets them appear before or after the
    # subcommand without the subparser default clobbering an earlier value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", default=argparse.SUPPRESS,
                        help=f"interaction model JSON (default: {assets.DEFAULT_MODEL})")
    common.add_argument("--fixture", default=argparse.SUPPRESS,
                        help="N-Triples file to serve from an embedded endpoint")
    common.add_argument("--endpoint", default=argparse.SUPPRESS,
                        help="external SPARQL endpoint URL (or env KGVB_ENDPOINT)")
    common.add_argument("--port", type=int, default=argparse.SUPPRESS,
                        help="service port (default: 8080)")
    common.add_argument("--max-layers", type=int, default=argparse.SUPPRESS,
                        help="query plan layer budget")
    common.add_argument("--timeout-ms", type=int, default=argparse.SUPPRESS,
                        help="total query time budget in ms")
    common.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS,
                        help="debug logging")

    # no set_defaults here: the parent's actions are shared with the
    # subparsers, and rewriting their defaults would clobber values parsed
    # before the subcommand; resolve_config fills the gaps instead
    parser = argparse.ArgumentParser(
        prog="kgvb",
        description="Question answering over a gene-disease knowledge graph.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("repl", help="interactive question loop", parents=[common])
    ask = sub.add_parser("ask", help="answer one utterance and exit", parents=[common])
    ask.add_argument("text")
    sub.add_parser("serve", help="run the skill service (and embedded endpoint)",
                   parents=[common])
    sub.add_parser("validate", help="check the model and fixture, exit 0/1",
                   parents=[common])
    query = sub.add_parser("query", help="run a raw query, print TSV", parents=[common])
    query.add_argument("sparql")
    return parser


def resolve_config(args: argparse.Namespace) -> CliConfig:
    fixture = getattr(args, "fixture", None)
    endpoint_url = getattr(args, "endpoint", None)
    if fixture and endpoint_url:
        raise ConfigError("--fixture and --endpoint are mutually exclusive")
    if not fixture and not endpoint_url:
        endpoint_url = os.environ.get("KGVB_ENDPOINT") or None
    if not fixture and not endpoint_url:
        fixture = str(assets.fixture_path())
    port = getattr(args, "port", 8080)
    if not 1 <= port <= 65535:
        raise ConfigError(f"port {port} out of range")
    return CliConfig(
        model_path=getattr(args, "model", assets.DEFAULT_MODEL),
        fixture_path=fixture,
        endpoint_url=endpoint_url,
        port=port,
        max_layers=getattr(args, "max_layers", None),
        timeout_ms=getattr(args, "timeout_ms", None),
        verbose=getattr(args, "verbose", False),
    )


@dataclass
class App:
    skill: Skill
    embedded: endpoint.EndpointHandle | None
    store: TripleSet | None

    def close(self) -> None:
        if self.embedded is not None:
            self.embedded.close()


def load_matcher(cfg: CliConfig) -> interaction_model.CompiledMatcher:
    model = interaction_model.load_model(assets.resolve(cfg.model_path))
    violations = interaction_model.validate(model)
    if violations:
        lines = "\n".join(f"  {v.code} at {v.path}: {v.message}" for v in violations)
        raise ConfigError(f"model does not validate:\n{lines}")
    return interaction_model.compile_model(model)


def build_app(cfg: CliConfig, embedded_port: int = 0) -> App:
    matcher = load_matcher(cfg)
    catalogue = Catalogue.load(assets.templates_path(), assets.plans_path())
    budget = Budget(
        max_layers=cfg.max_layers or Budget().max_layers,
        total_timeout_ms=cfg.timeout_ms or Budget().total_timeout_ms,
    )
    store = None
    handle = None
    if cfg.fixture_path:
        store = ntriples.load_ntriples(assets.resolve(cfg.fixture_path))
        handle = endpoint.serve(store, embedded_port)
        url = handle.url
    else:
        url = cfg.endpoint_url or ""
    client = SparqlClient(EndpointConfig(url=url, timeout_ms=budget.total_timeout_ms))
    skill = Skill(matcher, catalogue, client, budget, endpoint_url=url)
    return App(skill=skill, embedded=handle, store=store)


def cmd_ask(cfg: CliConfig, text: str) -> int:
    app = build_app(cfg)
    try:
        result = app.skill.converse(f"cli-{uuid.uuid4()}", text)
        print(result.answer)
        return EXIT_OK if result.intent else EXIT_NOMATCH
    finally:
        app.close()


def cmd_repl(cfg: CliConfig) -> int:
    app = build_app(cfg)
    session_id = f"repl-{uuid.uuid4()}"
    show_json = False
    print("Ask about genes and diseases (:json toggles envelopes, :quit exits).")
    try:
        while True:
            try:
                line = input("> ").strip()
            except EOFError:
                break
            if not line:
                continue
            if line == ":quit":
                break
            if line == ":json":
                show_json = not show_json
                print(f"envelope display {'on' if show_json else 'off'}")
                continue
            result = app.skill.converse(session_id, line)
            tag = result.intent or "no match"
            print(f"[{tag}] {result.answer}")
            if show_json:
                print(json.dumps(result.request, indent=2, ensure_ascii=False))
                print(json.dumps(result.response, indent=2, ensure_ascii=False))
    finally:
        app.close()
    return EXIT_OK


def cmd_serve(cfg: CliConfig) -> int:
    embedded_port = cfg.port + 1 if cfg.fixture_path else 0
    app = build_app(cfg, embedded_port=embedded_port)
    handle = webapp.serve_skill(app.skill, port=cfg.port,
                                console_dir=webapp.default_console_dir())
    if app.embedded is not None:
        print(f"embedded SPARQL endpoint: {app.embedded.url}", file=sys.stderr)
    print(f"skill service listening on {handle.url}", file=sys.stderr)
    try:
        handle.wait()
    except KeyboardInterrupt:
        pass
    finally:
        handle.close()
        app.close()
    return EXIT_OK


def cmd_validate(cfg: CliConfig) -> int:
    status = EXIT_OK
    try:
        model = interaction_model.load_model(assets.resolve(cfg.model_path))
    except interaction_model.ModelError as exc:
        print(f"model: FAIL ({exc})", file=sys.stderr)
        return EXIT_CONFIG
    violations = interaction_model.validate(model)
    if violations:
        status = EXIT_CONFIG
        print(f"model: FAIL ({len(violations)} violations)", file=sys.stderr)
        for v in violations:
            print(f"  {v.code} at {v.path}: {v.message}", file=sys.stderr)
    else:
        intents = len(model.intents)
        samples = sum(len(i.samples) for i in model.intents)
        print(f"model: OK ({intents} intents, {samples} samples)")
    try:
        Catalogue.load(assets.templates_path(), assets.plans_path())
        print("catalogue: OK")
    except Exception as exc:
        status = EXIT_CONFIG
        print(f"catalogue: FAIL ({exc})", file=sys.stderr)
    if cfg.fixture_path:
        try:
            store = ntriples.load_ntriples(assets.resolve(cfg.fixture_path))
            print(f"fixture: OK ({len(store)} triples)")
        except (ntriples.NTriplesError, ntriples.UnsupportedTripleError, OSError) as exc:
            status = EXIT_CONFIG
            print(f"fixture: FAIL ({exc})", file=sys.stderr)
    return status


def cmd_query(cfg: CliConfig, text: str) -> int:
    try:
        if cfg.fixture_path:
            store = ntriples.load_ntriples(assets.resolve(cfg.fixture_path))
            table = evaluate(store, parse_query(text))
        else:
            client = SparqlClient(EndpointConfig(url=cfg.endpoint_url or ""))
            table = client.execute(text)
    except Exception as exc:
        print(f"query failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print("\t".join(table.vars))
    for row in table.rows:
        print("\t".join(
            ntriples.format_term(row[v]) if v in row else "" for v in table.vars
        ))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    verbose = getattr(args, "verbose", False)
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING)
    try:
        cfg = resolve_config(args)
        if args.command == "ask":
            return cmd_ask(cfg, args.text)
        if args.command == "repl":
            return cmd_repl(cfg)
        if args.command == "serve":
            return cmd_serve(cfg)
        if args.command == "validate":
            return cmd_validate(cfg)
        if args.command == "query":
            return cmd_query(cfg, args.sparql)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        if verbose:
            raise
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())

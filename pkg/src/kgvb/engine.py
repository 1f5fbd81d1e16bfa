"""Intent-to-query mapping: parameterized templates and multi-layer plans.

A plan is an ordered list of layers; each layer instantiates one template,
taking its inputs from resolved slot values or from the first result row of
an earlier layer.  Execution runs under an explicit budget so a chain that
is too deep fails as a typed error before any query leaves the process,
instead of dying mid-flight.
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from . import sparql
from .client import ClientError
from .results import ResultTable
from .terms import XSD_INTEGER, Literal, lexical_form

PARAM_RE = re.compile(r"@([A-Za-z_][A-Za-z0-9_]*)")

DEFAULT_MAX_LAYERS = 4
DEFAULT_TOTAL_TIMEOUT_MS = 8000


class EngineError(Exception):
    pass


class CatalogueError(EngineError):
    pass


class InvalidIriError(EngineError):
    def __init__(self, raw: str):
        super().__init__(f"not a usable absolute IRI: {raw!r}")
        self.raw = raw


class MissingParamError(EngineError):
    def __init__(self, name: str):
        super().__init__(f"no binding for template parameter @{name}")
        self.name = name


class UnknownIntentError(EngineError):
    def __init__(self, intent: str):
        super().__init__(f"no plan is registered for intent {intent!r}")
        self.intent = intent


class MissingSlotError(EngineError):
    def __init__(self, name: str, raw_span: str | None = None):
        if raw_span:
            msg = f"slot {name!r} could not be resolved from {raw_span!r}"
        else:
            msg = f"slot {name!r} was not supplied and no session focus can fill it"
        super().__init__(msg)
        self.name = name
        self.raw_span = raw_span


class LayerBudgetExceededError(EngineError):
    def __init__(self, needed: int, allowed: int):
        super().__init__(f"plan needs {needed} layers but the budget allows {allowed}")
        self.needed = needed
        self.allowed = allowed


class TimeBudgetExceededError(EngineError):
    def __init__(self, elapsed_ms: int):
        super().__init__(f"plan exceeded its time budget after {elapsed_ms} ms")
        self.elapsed_ms = elapsed_ms


class EmptyLayerResultError(EngineError):
    def __init__(self, layer: int, needed_by: int, var: str):
        super().__init__(
            f"layer {needed_by} needs ?{var} from layer {layer}, which produced no binding"
        )
        self.layer = layer
        self.needed_by = needed_by
        self.var = var


class LayerExecutionError(EngineError):
    def __init__(self, layer: int, cause: Exception):
        super().__init__(f"layer {layer} failed: {cause}")
        self.layer = layer
        self.cause = cause


# --- plan inputs --------------------------------------------------------------

@dataclass(frozen=True)
class SlotInput:
    slot: str


@dataclass(frozen=True)
class LayerInput:
    layer: int
    var: str


@dataclass(frozen=True)
class BoundInput:
    value: str


PlanInput = SlotInput | LayerInput | BoundInput


@dataclass(frozen=True)
class QueryTemplate:
    id: str
    sparql: str
    params: tuple[tuple[str, str], ...]  # (name, "iri" | "string")
    produces: tuple[str, ...]


@dataclass(frozen=True)
class PlanLayer:
    template_id: str
    inputs: tuple[tuple[str, PlanInput], ...]


@dataclass(frozen=True)
class CommonGenesPost:
    min_diseases: int = 2


@dataclass(frozen=True)
class TopKPost:
    k: int = 20


PostProcess = CommonGenesPost | TopKPost | None


@dataclass(frozen=True)
class QueryPlan:
    id: str
    layers: tuple[PlanLayer, ...]
    postprocess: PostProcess = None


@dataclass(frozen=True)
class BoundPlan:
    """A catalogue plan with every slot input replaced by a concrete value."""

    id: str
    layers: tuple[PlanLayer, ...]
    postprocess: PostProcess = None
    slot_values: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class Budget:
    max_layers: int = DEFAULT_MAX_LAYERS
    total_timeout_ms: int = DEFAULT_TOTAL_TIMEOUT_MS

    def __post_init__(self) -> None:
        if self.max_layers < 1:
            raise ValueError("max_layers must be at least 1")
        if self.total_timeout_ms <= 0:
            raise ValueError("total_timeout_ms must be positive")


@dataclass
class IntentResult:
    plan_id: str
    table: ResultTable
    truncated: bool = False
    layers_executed: int = 0
    slot_values: dict[str, str] = field(default_factory=dict)


# --- escaping and instantiation ----------------------------------------------

_IRI_SCHEME = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:")
_IRI_FORBIDDEN = set('<>"{}|^`\\ ')


def escape_binding(kind: str, raw: str) -> str:
    """Render a raw value as one safe SPARQL term token."""
    if not raw:
        raise ValueError("binding value must be non-empty")
    if kind == "string":
        escaped = (
            raw.replace("\\", "\\\\")
            .replace('"', '\\"')
            .replace("\n", "\\n")
            .replace("\r", "\\r")
            .replace("\t", "\\t")
        )
        return f'"{escaped}"'
    if kind == "iri":
        if not _IRI_SCHEME.match(raw):
            raise InvalidIriError(raw)
        if any(ch in _IRI_FORBIDDEN or ord(ch) <= 0x20 for ch in raw):
            raise InvalidIriError(raw)
        return f"<{raw}>"
    raise ValueError(f"unknown parameter kind {kind!r}")


def instantiate(template: QueryTemplate, bindings: Mapping[str, str]) -> str:
    """Substitute escaped bindings into the template text."""
    kinds = dict(template.params)
    rendered: dict[str, str] = {}
    for name, kind in template.params:
        if name not in bindings:
            raise MissingParamError(name)
        rendered[name] = escape_binding(kind, bindings[name])

    def sub(match: re.Match) -> str:
        name = match.group(1)
        if name not in kinds:
            raise MissingParamError(name)
        return rendered[name]

    return PARAM_RE.sub(sub, template.sparql)


# --- catalogue ----------------------------------------------------------------

_DUMMY = {"string": "placeholder", "iri": "http://example.invalid/param"}


def _check_template(template: QueryTemplate) -> None:
    declared = {name for name, _ in template.params}
    used = set(PARAM_RE.findall(template.sparql))
    if used - declared:
        raise CatalogueError(
            f"template {template.id}: undeclared placeholder(s) {sorted(used - declared)}"
        )
    if declared - used:
        raise CatalogueError(
            f"template {template.id}: unused parameter(s) {sorted(declared - used)}"
        )
    dummy = {name: _DUMMY[kind] for name, kind in template.params}
    try:
        ast = sparql.parse_query(instantiate(template, dummy))
    except Exception as exc:
        raise CatalogueError(f"template {template.id} does not parse: {exc}") from exc
    outputs = set(ast.output_names())
    missing = set(template.produces) - outputs
    if missing:
        raise CatalogueError(
            f"template {template.id}: produces {sorted(missing)} not in projection"
        )


def _parse_input(obj: dict, where: str) -> PlanInput:
    if set(obj) == {"slot"}:
        return SlotInput(obj["slot"])
    if set(obj) == {"layer", "var"}:
        return LayerInput(int(obj["layer"]), obj["var"])
    if set(obj) == {"value"}:
        return BoundInput(str(obj["value"]))
    raise CatalogueError(f"{where}: input must be a slot/layer/value reference, got {obj!r}")


def _parse_postprocess(obj: dict | None, where: str) -> PostProcess:
    if obj is None:
        return None
    kind = obj.get("kind")
    if kind == "common_genes":
        return CommonGenesPost(min_diseases=int(obj.get("minDiseases", 2)))
    if kind == "top_k":
        return TopKPost(k=int(obj.get("k", 20)))
    raise CatalogueError(f"{where}: unknown postprocess kind {kind!r}")


class Catalogue:
    """All templates and plans, validated at load time."""

    def __init__(self, templates: list[QueryTemplate], plans: list[QueryPlan]):
        self.templates = {t.id: t for t in templates}
        if len(self.templates) != len(templates):
            raise CatalogueError("duplicate template ids")
        for template in templates:
            _check_template(template)
        self.plans = {p.id: p for p in plans}
        if len(self.plans) != len(plans):
            raise CatalogueError("duplicate plan ids")
        for plan in plans:
            self._check_plan(plan)

    def _check_plan(self, plan: QueryPlan) -> None:
        if not plan.layers:
            raise CatalogueError(f"plan {plan.id}: needs at least one layer")
        for i, layer in enumerate(plan.layers):
            template = self.templates.get(layer.template_id)
            if template is None:
                raise CatalogueError(f"plan {plan.id}: unknown template {layer.template_id!r}")
            inputs = dict(layer.inputs)
            params = {name for name, _ in template.params}
            if set(inputs) != params:
                raise CatalogueError(
                    f"plan {plan.id} layer {i}: inputs {sorted(inputs)} must cover "
                    f"exactly the template parameters {sorted(params)}"
                )
            for name, source in inputs.items():
                if isinstance(source, LayerInput):
                    if not 0 <= source.layer < i:
                        raise CatalogueError(
                            f"plan {plan.id} layer {i}: input {name} references layer "
                            f"{source.layer}, which is not an earlier layer"
                        )
                    producer = self.templates[plan.layers[source.layer].template_id]
                    if source.var not in producer.produces:
                        raise CatalogueError(
                            f"plan {plan.id} layer {i}: layer {source.layer} does not "
                            f"produce ?{source.var}"
                        )

    @classmethod
    def load(cls, templates_path: Path | str, plans_path: Path | str) -> "Catalogue":
        with open(templates_path, encoding="utf-8") as fh:
            raw_templates = json.load(fh)
        templates = [
            QueryTemplate(
                id=obj["id"],
                sparql=obj["sparql"],
                params=tuple((p["name"], p["kind"]) for p in obj.get("params", [])),
                produces=tuple(obj.get("produces", [])),
            )
            for obj in raw_templates
        ]
        with open(plans_path, encoding="utf-8") as fh:
            raw_plans = json.load(fh)
        plans = []
        for obj in raw_plans:
            layers = tuple(
                PlanLayer(
                    template_id=layer["template"],
                    inputs=tuple(
                        (name, _parse_input(source, f"plan {obj['id']} layer {i}"))
                        for name, source in layer.get("inputs", {}).items()
                    ),
                )
                for i, layer in enumerate(obj["layers"])
            )
            plans.append(
                QueryPlan(
                    id=obj["id"],
                    layers=layers,
                    postprocess=_parse_postprocess(obj.get("postprocess"), f"plan {obj['id']}"),
                )
            )
        return cls(templates, plans)


# --- binding and execution -----------------------------------------------------

def bind_plan(
    plan: QueryPlan,
    slots: Mapping[str, str],
    session_defaults: Mapping[str, str] | None = None,
) -> BoundPlan:
    """Resolve every slot input to a concrete value, falling back to session focus."""
    defaults = session_defaults or {}
    used: dict[str, str] = {}
    bound_layers = []
    for layer in plan.layers:
        bound_inputs = []
        for name, source in layer.inputs:
            if isinstance(source, SlotInput):
                value = slots.get(source.slot) or defaults.get(source.slot)
                if not value:
                    raise MissingSlotError(source.slot)
                used[source.slot] = value
                bound_inputs.append((name, BoundInput(value)))
            else:
                bound_inputs.append((name, source))
        bound_layers.append(PlanLayer(layer.template_id, tuple(bound_inputs)))
    return BoundPlan(
        id=plan.id,
        layers=tuple(bound_layers),
        postprocess=plan.postprocess,
        slot_values=tuple(sorted(used.items())),
    )


def plan_for_intent(
    catalogue: Catalogue,
    intent_plans: Mapping[str, str],
    intent: str,
    slots: Mapping[str, str],
    session_defaults: Mapping[str, str] | None = None,
) -> BoundPlan:
    plan_id = intent_plans.get(intent)
    if not plan_id or plan_id not in catalogue.plans:
        raise UnknownIntentError(intent)
    return bind_plan(catalogue.plans[plan_id], slots, session_defaults)


def apply_postprocess(table: ResultTable, post: PostProcess) -> tuple[ResultTable, bool]:
    if post is None:
        return table, False
    if isinstance(post, TopKPost):
        truncated = len(table.rows) > post.k
        return ResultTable(table.vars, table.rows[: post.k]), truncated
    if isinstance(post, CommonGenesPost):
        by_gene: dict = {}
        for row in table.rows:
            gene = row.get("gene")
            symbol = row.get("geneSymbol")
            disease = row.get("disease")
            if gene is None or symbol is None or disease is None:
                continue
            entry = by_gene.setdefault(gene, (lexical_form(symbol), set()))
            entry[1].add(disease)
        rows = [
            {
                "geneSymbol": Literal(symbol),
                "diseaseCount": Literal(str(len(diseases)), datatype=XSD_INTEGER),
            }
            for symbol, diseases in by_gene.values()
            if len(diseases) >= post.min_diseases
        ]
        rows.sort(key=lambda r: (-int(r["diseaseCount"].lexical), r["geneSymbol"].lexical))
        return ResultTable(["geneSymbol", "diseaseCount"], rows), False
    raise ValueError(f"unknown postprocess {post!r}")


def execute_plan(plan: BoundPlan, client, budget: Budget, catalogue: Catalogue) -> IntentResult:
    """Run the layers in order against a client with an .execute(query) method."""
    if len(plan.layers) > budget.max_layers:
        raise LayerBudgetExceededError(len(plan.layers), budget.max_layers)
    started = time.monotonic()
    tables: list[ResultTable] = []
    for i, layer in enumerate(plan.layers):
        elapsed_ms = int((time.monotonic() - started) * 1000)
        if elapsed_ms > budget.total_timeout_ms:
            raise TimeBudgetExceededError(elapsed_ms)
        template = catalogue.templates[layer.template_id]
        bindings: dict[str, str] = {}
        for name, source in layer.inputs:
            if isinstance(source, BoundInput):
                bindings[name] = source.value
            elif isinstance(source, LayerInput):
                table = tables[source.layer]
                term = table.rows[0].get(source.var) if table.rows else None
                if term is None:
                    raise EmptyLayerResultError(source.layer, i, source.var)
                bindings[name] = lexical_form(term)
            else:  # SlotInput in a plan that was never bound
                raise MissingSlotError(source.slot)
        query = instantiate(template, bindings)
        try:
            tables.append(client.execute(query))
        except ClientError as exc:
            raise LayerExecutionError(i, exc) from exc
    table, truncated = apply_postprocess(tables[-1], plan.postprocess)
    return IntentResult(
        plan_id=plan.id,
        table=table,
        truncated=truncated,
        layers_executed=len(plan.layers),
        slot_values=dict(plan.slot_values),
    )

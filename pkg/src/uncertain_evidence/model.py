"""JSON model files describing (generalized) evidence spaces.

Schema::

    {
      "description": "...",                       # optional
      "hypotheses": ["A", "B"],
      "observations": ["heads", "tails"],
      "mappings": [                               # one or more
        {"A": {"heads": "1", "tails": "0"}, "B": {"heads": "1/2", "tails": "1/2"}}
      ],
      "prior": {"A": "1/100", "B": "99/100"},     # optional
      "coarsening": {"A1": "A", "A2": "A", "B": "B"}   # optional, single mapping only
    }

Rationals are strings ``"p/q"`` or integers. Every error message names the
offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import EvidenceError
from .evidence import EvidenceSpace, LikelihoodMapping
from .generalized import GeneralizedEvidenceSpace
from .prob import Dist, format_rational, make_dist, to_rational
from .refinement import Refinement

__all__ = [
    "Model",
    "ModelError",
    "dump_model",
    "fixture_names",
    "fixture_path",
    "load_model",
    "loads_model",
    "model_from_refinement",
    "resolve_model_path",
]


class ModelError(EvidenceError, ValueError):
    """A model file could not be parsed or violates an invariant."""


@dataclass(frozen=True)
class Model:
    hypotheses: tuple[str, ...]
    observations: tuple[str, ...]
    mappings: tuple[LikelihoodMapping, ...]
    prior: Dist | None = None
    coarsening: dict | None = None
    description: str | None = None

    @property
    def is_generalized(self) -> bool:
        return len(self.mappings) > 1

    def evidence_space(self) -> EvidenceSpace:
        if self.is_generalized:
            raise ModelError("model has several likelihood mappings; it is not a classical evidence space")
        return EvidenceSpace(self.hypotheses, self.observations, self.mappings[0])

    def generalized_space(self) -> GeneralizedEvidenceSpace:
        return GeneralizedEvidenceSpace(self.hypotheses, self.observations, self.mappings)

    def refinement(self) -> Refinement | None:
        if self.coarsening is None:
            return None
        return Refinement(self.evidence_space(), self.coarsening)


def _string_list(raw: Any, field: str) -> tuple[str, ...]:
    if not isinstance(raw, list) or not raw:
        raise ModelError(f"{field}: expected a non-empty list of strings")
    for i, item in enumerate(raw):
        if not isinstance(item, str) or not item:
            raise ModelError(f"{field}[{i}]: expected a non-empty string, got {item!r}")
    if len(set(raw)) != len(raw):
        dups = sorted({x for x in raw if raw.count(x) > 1})
        raise ModelError(f"{field}: duplicate entries {dups}")
    return tuple(raw)


def _rational(raw: Any, field: str):
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise ModelError(f"{field}: expected a rational string like \"3/4\" or an integer, got {raw!r}")
    try:
        return to_rational(raw)
    except (TypeError, ValueError) as exc:
        raise ModelError(f"{field}: {exc}") from None


def _dist(raw: Any, labels: tuple[str, ...], field: str) -> Dist:
    if not isinstance(raw, dict):
        raise ModelError(f"{field}: expected an object mapping {list(labels)} to rationals")
    missing = [x for x in labels if x not in raw]
    extra = [x for x in raw if x not in labels]
    if missing:
        raise ModelError(f"{field}: missing entries for {missing}")
    if extra:
        raise ModelError(f"{field}: unknown labels {extra}")
    masses = [_rational(raw[x], f"{field}.{x}") for x in labels]
    try:
        return make_dist(labels, masses)
    except EvidenceError as exc:
        raise ModelError(f"{field}: {exc}") from None


def model_from_dict(data: Any) -> Model:
    if not isinstance(data, dict):
        raise ModelError("top level: expected an object")
    known = {"description", "hypotheses", "observations", "mappings", "prior", "coarsening"}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ModelError(f"top level: unknown field(s) {unknown}")
    for required in ("hypotheses", "observations", "mappings"):
        if required not in data:
            raise ModelError(f"top level: missing field {required!r}")
    hypotheses = _string_list(data["hypotheses"], "hypotheses")
    observations = _string_list(data["observations"], "observations")

    raw_mappings = data["mappings"]
    if not isinstance(raw_mappings, list) or not raw_mappings:
        raise ModelError("mappings: expected a non-empty list")
    mappings = []
    for i, raw in enumerate(raw_mappings):
        field = f"mappings[{i}]"
        if not isinstance(raw, dict):
            raise ModelError(f"{field}: expected an object keyed by hypothesis")
        missing = [h for h in hypotheses if h not in raw]
        extra = [h for h in raw if h not in hypotheses]
        if missing or extra:
            raise ModelError(f"{field}: must give a likelihood for exactly {list(hypotheses)}")
        mappings.append(
            LikelihoodMapping.of({h: _dist(raw[h], observations, f"{field}.{h}") for h in hypotheses})
        )

    prior = None
    if data.get("prior") is not None:
        coarse = None
        if isinstance(data.get("coarsening"), dict):
            coarse = tuple(dict.fromkeys(data["coarsening"].values()))
        raw = data["prior"]
        labels = hypotheses
        if coarse and isinstance(raw, dict) and set(raw) == set(coarse):
            labels = coarse
        prior = _dist(raw, labels, "prior")

    coarsening = data.get("coarsening")
    if coarsening is not None:
        if len(mappings) != 1:
            raise ModelError("coarsening: only allowed with a single likelihood mapping")
        if not isinstance(coarsening, dict) or set(coarsening) != set(hypotheses):
            raise ModelError(f"coarsening: expected an object mapping each of {list(hypotheses)} to a coarse name")
        for h, v in coarsening.items():
            if not isinstance(v, str) or not v:
                raise ModelError(f"coarsening.{h}: expected a non-empty string")
        coarsening = dict(coarsening)

    description = data.get("description")
    if description is not None and not isinstance(description, str):
        raise ModelError("description: expected a string")

    model = Model(hypotheses, observations, tuple(mappings), prior, coarsening, description)
    try:
        model.generalized_space()
        model.refinement()
    except ModelError:
        raise
    except EvidenceError as exc:
        raise ModelError(str(exc)) from None
    return model


def loads_model(text: str, source: str = "<model>") -> Model:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return model_from_dict(data)
    except ModelError as exc:
        raise ModelError(f"{source}: {exc}") from None


def load_model(path: str | Path) -> Model:
    path = resolve_model_path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ModelError(f"{path}: cannot read model file ({exc})") from None
    return loads_model(text, str(path))


def _table(dist: Dist) -> dict[str, str]:
    return {label: format_rational(mass) for label, mass in dist.items()}


def model_to_dict(model: Model) -> dict:
    data: dict[str, Any] = {}
    if model.description is not None:
        data["description"] = model.description
    data["hypotheses"] = list(model.hypotheses)
    data["observations"] = list(model.observations)
    data["mappings"] = [{h: _table(d) for h, d in m.items()} for m in model.mappings]
    if model.prior is not None:
        data["prior"] = _table(model.prior)
    if model.coarsening is not None:
        data["coarsening"] = dict(model.coarsening)
    return data


def dump_model(model: Model) -> str:
    return json.dumps(model_to_dict(model), indent=2) + "\n"


def model_from_refinement(refinement: Refinement, description: str | None = None) -> Model:
    space = refinement.refined
    return Model(
        space.hypotheses,
        space.observations,
        (space.likelihood,),
        coarsening=dict(refinement.surjection),
        description=description,
    )


def fixture_names() -> list[str]:
    root = resources.files(__package__) / "fixtures"
    return sorted(p.name[: -len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def fixture_path(name: str) -> Path:
    name = name[: -len(".json")] if name.endswith(".json") else name
    if name not in fixture_names():
        raise ModelError(f"no shipped fixture named {name!r}; available: {', '.join(fixture_names())}")
    return Path(str(resources.files(__package__) / "fixtures" / f"{name}.json"))


def resolve_model_path(path: str | Path) -> Path:
    """A filesystem path, or the name of a shipped fixture when no such file exists."""
    candidate = Path(path)
    if candidate.exists():
        return candidate
    name = candidate.name
    stem = name[: -len(".json")] if name.endswith(".json") else name
    if str(candidate.parent) == "." and stem in fixture_names():
        return fixture_path(stem)
    raise ModelError(f"{path}: no such model file or shipped fixture")

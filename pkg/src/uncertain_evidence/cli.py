"""Command line front end.

Exit status: 0 on success, 1 for usage or model-file errors, 2 for domain
errors such as a total conflict or a correlated model where an
uncorrelated one is needed.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from .errors import (
    CorrelatedSpace,
    EvidenceError,
    TotalConflict,
    ZeroDenominator,
    ZeroProbabilityObservation,
)
from .evidence import posterior, weight_of_evidence
from .generalized import (
    TaggedDistSet,
    combine_each,
    generalized_weights,
    posterior_bounds_formula,
)
from .model import Model, ModelError, fixture_names, load_model, model_from_refinement, model_to_dict
from .prob import Dist, dempster_combine, format_rational, make_dist, to_rational, uniform
from .refinement import Correlated, build_refinement, extension_posterior_bounds, factor_uncorrelated
from .sequence import CombinationMode, generalized_sequence_weights, sequence_weight

DOMAIN_ERRORS = (TotalConflict, CorrelatedSpace, ZeroDenominator, ZeroProbabilityObservation)


class MissingMode(click.UsageError):
    pass


class _Group(click.Group):
    """Maps exceptions onto the documented exit codes."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.ClickException as exc:
            exc.show()
            sys.exit(1)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(1)
        except DOMAIN_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except EvidenceError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        if not standalone_mode:
            return rv
        sys.exit(rv if isinstance(rv, int) else 0)


class Renderer:
    def __init__(self, decimal: int | None):
        self.decimal = decimal

    def r(self, value: Fraction) -> str:
        return format_rational(value, self.decimal)

    def dist(self, dist: Dist) -> dict[str, str]:
        return {label: self.r(mass) for label, mass in dist.items()}


def _table(rows: list[list[str]]) -> list[str]:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return [" | ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]


def _parse_obs(text: str | None, model: Model) -> list[list[str]]:
    """``None`` means every observation on its own; otherwise one sequence."""
    if text is None:
        return [[ob] for ob in model.observations]
    items = [t.strip() for t in text.split(",")]
    if not items or any(not t for t in items):
        raise click.BadParameter(f"malformed observation list {text!r}", param_hint="--obs")
    return [items]


def _parse_prior(text: str | None, model: Model) -> Dist:
    refinement = model.refinement()
    if text is None:
        if model.prior is None:
            raise click.UsageError("no --prior given and the model file has no prior")
        return model.prior
    if text.strip() == "uniform":
        return uniform(model.hypotheses)
    masses = {}
    for part in text.split(","):
        name, sep, value = part.partition("=")
        name = name.strip()
        if not sep or not name:
            raise click.BadParameter(f"expected h=p/q entries, got {part!r}", param_hint="--prior")
        if name in masses:
            raise click.BadParameter(f"hypothesis {name!r} given twice", param_hint="--prior")
        try:
            masses[name] = to_rational(value)
        except (TypeError, ValueError) as exc:
            raise click.BadParameter(str(exc), param_hint="--prior") from None
    labels = set(masses)
    if labels != set(model.hypotheses) and not (refinement and labels == set(refinement.coarse_hypotheses)):
        raise click.BadParameter(
            f"prior must give a mass for each of {', '.join(model.hypotheses)}", param_hint="--prior"
        )
    try:
        return make_dist(masses, masses.values())
    except EvidenceError as exc:
        raise click.BadParameter(str(exc), param_hint="--prior") from None


def _emit(fmt: str, data: dict, lines: list[str]):
    if fmt == "json":
        click.echo(json.dumps(data, indent=2))
    else:
        click.echo("\n".join(lines))


def _tag(tag):
    return list(tag) if isinstance(tag, tuple) else tag


def _tag_text(tag) -> str:
    return ",".join(map(str, tag)) if isinstance(tag, tuple) else str(tag)


def _set_block(rd: Renderer, hypotheses, members: TaggedDistSet, key: str) -> tuple[dict, list[list[str]]]:
    data = {
        "members": [{"mapping": _tag(tag), key: rd.dist(d)} for tag, d in members],
        "distinct": [rd.dist(d) for d in members.distinct()],
        "lower": {h: rd.r(members.lower(h)) for h in hypotheses},
        "upper": {h: rd.r(members.upper(h)) for h in hypotheses},
    }
    if members.conflicts:
        data["conflicts"] = [_tag(t) for t in members.conflicts]
    rows = [["mapping", *hypotheses]]
    rows += [[_tag_text(tag), *(rd.r(d[h]) for h in hypotheses)] for tag, d in members]
    rows.append(["lower", *data["lower"].values()])
    rows.append(["upper", *data["upper"].values()])
    return data, rows


def _generalized_weight_set(model: Model, seq: list[str], mode: str | None, skip: bool) -> TaggedDistSet:
    space = model.generalized_space()
    if len(seq) == 1:
        return generalized_weights(space, seq[0])
    if mode is None:
        raise MissingMode("a sequence of observations on a model with several mappings needs --mode")
    return generalized_sequence_weights(space, seq, CombinationMode(mode), skip)


_model_option = click.option("--model", "model_path", required=True,
                             help="Model file, or the name of a shipped fixture.")
_obs_option = click.option("--obs", help="Observation, or comma-separated sequence of observations.")
_mode_option = click.option("--mode", type=click.Choice([m.value for m in CombinationMode]),
                            help="How mappings combine along a sequence (required for sequences on generalized models).")
_format_option = click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table",
                              show_default=True)
_decimal_option = click.option("--decimal", type=click.IntRange(min=0),
                               help="Render values as decimals with this many digits (round half to even).")


@click.group(cls=_Group, context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Weights of evidence and posterior bounds under uncertain likelihoods."""


@cli.command()
def fixtures():
    """List the shipped model fixtures."""
    for name in fixture_names():
        click.echo(name)


@cli.command()
@_model_option
@_obs_option
@_mode_option
@_format_option
@_decimal_option
def weights(model_path, obs, mode, fmt, decimal):
    """Weight of evidence for each hypothesis."""
    model = load_model(model_path)
    rd = Renderer(decimal)
    hyps = list(model.hypotheses)
    sequences = _parse_obs(obs, model)
    data = {"model": model_path, "kind": "generalized" if model.is_generalized else "classical",
            "hypotheses": hyps}
    lines: list[str] = []

    if not model.is_generalized:
        space = model.evidence_space()
        rows = [["observation", *hyps]]
        data["rows"] = []
        for seq in sequences:
            w = weight_of_evidence(space, seq[0]) if len(seq) == 1 else sequence_weight(space, seq)
            data["rows"].append({"observations": seq, "weights": rd.dist(w)})
            rows.append([",".join(seq), *(rd.r(w[h]) for h in hyps)])
        lines = _table(rows)
    else:
        data["blocks"] = []
        for seq in sequences:
            ws = _generalized_weight_set(model, seq, mode, skip=False)
            block, rows = _set_block(rd, hyps, ws, "weights")
            block = {"observations": seq, "mode": mode if len(seq) > 1 else None, **block}
            data["blocks"].append(block)
            if lines:
                lines.append("")
            lines.append("observation: " + ",".join(seq) + (f" (mode {mode})" if len(seq) > 1 else ""))
            lines += _table(rows)
            lines.append(f"distinct weight vectors: {len(ws.distinct())}")
    _emit(fmt, data, lines)


@cli.command(name="posterior")
@_model_option
@click.option("--prior", help='Prior as "h=p/q,..." or "uniform"; defaults to the model file\'s prior.')
@_obs_option
@_mode_option
@click.option("--skip-conflicts", is_flag=True,
              help="Leave out mappings / extensions under which the observation is impossible instead of failing.")
@_format_option
@_decimal_option
def posterior_cmd(model_path, prior, obs, mode, skip_conflicts, fmt, decimal):
    """Posterior (set) for a prior and an observation or sequence."""
    model = load_model(model_path)
    rd = Renderer(decimal)
    prior_dist = _parse_prior(prior, model)
    sequences = _parse_obs(obs, model)
    refinement = model.refinement()
    lines: list[str] = []

    if refinement is not None and prior_dist.labels == refinement.coarse_hypotheses:
        coarse = list(refinement.coarse_hypotheses)
        data = {"model": model_path, "kind": "extension-bounds", "hypotheses": coarse,
                "prior": rd.dist(prior_dist), "blocks": []}
        for seq in sequences:
            if len(seq) != 1:
                raise click.UsageError("extension bounds are computed for a single observation")
            bounds = {h: extension_posterior_bounds(refinement, prior_dist, seq[0], h, skip_conflicts)
                      for h in coarse}
            data["blocks"].append({
                "observations": seq,
                "lower": {h: rd.r(lo) for h, (lo, _) in bounds.items()},
                "upper": {h: rd.r(hi) for h, (_, hi) in bounds.items()},
            })
            if lines:
                lines.append("")
            lines.append(f"observation: {seq[0]}")
            lines += _table([["hypothesis", "lower", "upper"]]
                            + [[h, rd.r(lo), rd.r(hi)] for h, (lo, hi) in bounds.items()])
        _emit(fmt, data, lines)
        return

    hyps = list(model.hypotheses)
    data = {"model": model_path, "kind": "generalized" if model.is_generalized else "classical",
            "hypotheses": hyps, "prior": rd.dist(prior_dist)}
    if not model.is_generalized:
        space = model.evidence_space()
        rows = [["observation", *hyps]]
        data["rows"] = []
        for seq in sequences:
            if len(seq) == 1:
                post = posterior(space, prior_dist, seq[0])
            else:
                post = dempster_combine(prior_dist, sequence_weight(space, seq))
            data["rows"].append({"observations": seq, "posterior": rd.dist(post)})
            rows.append([",".join(seq), *(rd.r(post[h]) for h in hyps)])
        lines = _table(rows)
        _emit(fmt, data, lines)
        return

    space = model.generalized_space()
    uncorrelated = not isinstance(factor_uncorrelated(space), Correlated)
    data["uncorrelated"] = uncorrelated
    data["blocks"] = []
    for seq in sequences:
        ws = _generalized_weight_set(model, seq, mode, skip_conflicts)
        posts = combine_each(prior_dist, ws, skip_conflicts)
        block, rows = _set_block(rd, hyps, posts, "posterior")
        block = {"observations": seq, "mode": mode if len(seq) > 1 else None, **block}
        if uncorrelated and len(seq) == 1:
            rhs = {h: posterior_bounds_formula(space, prior_dist, seq[0], h) for h in hyps}
            block["formula_lower"] = {h: rd.r(lo) for h, (lo, _) in rhs.items()}
            block["formula_upper"] = {h: rd.r(hi) for h, (_, hi) in rhs.items()}
            rows.append(["formula lower", *block["formula_lower"].values()])
            rows.append(["formula upper", *block["formula_upper"].values()])
        data["blocks"].append(block)
        if lines:
            lines.append("")
        lines.append("observation: " + ",".join(seq) + (f" (mode {mode})" if len(seq) > 1 else ""))
        lines += _table(rows)
        if posts.conflicts:
            lines.append("skipped (total conflict): " + "; ".join(_tag_text(t) for t in posts.conflicts))
    _emit(fmt, data, lines)


def _likelihood_rows(rd: Renderer, labels, functions, observations, head: str) -> list[list[str]]:
    rows = [[head, *observations]]
    rows += [[label, *(rd.r(f[ob]) for ob in observations)] for label, f in zip(labels, functions)]
    return rows


@cli.command()
@_model_option
@_format_option
@_decimal_option
def analyze(model_path, fmt, decimal):
    """Decide whether the likelihood mappings are uncorrelated and build a refinement."""
    model = load_model(model_path)
    rd = Renderer(decimal)
    obs = list(model.observations)
    data = {"model": model_path, "hypotheses": list(model.hypotheses), "observations": obs,
            "mappings": len(model.mappings)}
    lines = [f"model: {model_path}",
             f"hypotheses: {', '.join(model.hypotheses)}",
             f"observations: {', '.join(obs)}",
             f"likelihood mappings: {len(model.mappings)}"]

    refinement = model.refinement()
    if refinement is not None:
        coarse = refinement.coarse_hypotheses
        induced = refinement.induced_mappings()
        degenerate = sum(
            1 for m in induced if any(all(lk == 0 for lk in m.likelihoods(ob)) for ob in obs)
        )
        data["status"] = "refinement"
        data["coarse_hypotheses"] = list(coarse)
        data["fibers"] = {h: list(refinement.fiber(h)) for h in coarse}
        data["induced_mappings"] = len(induced)
        data["induced_mappings_with_impossible_observations"] = degenerate
        lines.append(f"status: refinement of {', '.join(coarse)} (uncorrelated by construction)")
        for h in coarse:
            lines.append(f"  {h} <- {', '.join(refinement.fiber(h))}")
        lines.append(f"induced coarse mappings: {len(induced)}, "
                     f"of which {degenerate} leave some observation impossible")
        _emit(fmt, data, lines)
        return

    result = factor_uncorrelated(model.generalized_space())
    if isinstance(result, Correlated):
        data["status"] = "correlated"
        data["witness"] = dict(result.witness_indices)
        data["witness_likelihoods"] = {h: rd.dist(d) for h, d in result.witness.items()}
        data["per_hypothesis"] = {h: [rd.dist(d) for d in fs] for h, fs in result.per_hypothesis.items()}
        lines.append("status: correlated")
        lines.append("witness (missing combination): "
                     + ", ".join(f"{h}: {i}" for h, i in result.witness_indices.items()))
        for h, fs in result.per_hypothesis.items():
            lines.append(f"likelihood functions for {h}:")
            lines += ["  " + s for s in _table(
                _likelihood_rows(rd, [str(i) for i in range(1, len(fs) + 1)], fs, obs, "#"))]
        _emit(fmt, data, lines)
        return

    refinement = build_refinement(result)
    data["status"] = "uncorrelated"
    data["per_hypothesis"] = {h: [rd.dist(d) for d in fs] for h, fs in result.per_hypothesis.items()}
    data["refinement"] = model_to_dict(model_from_refinement(refinement))
    lines.append("status: uncorrelated")
    for h, fs in result.per_hypothesis.items():
        lines.append(f"likelihood functions for {h}:")
        lines += ["  " + s for s in _table(
            _likelihood_rows(rd, [str(i) for i in range(1, len(fs) + 1)], fs, obs, "#"))]
    lines.append("refinement:")
    refined = refinement.refined
    rows = [["refined", "coarse", *obs]]
    for k in refined.hypotheses:
        f = refined.likelihood[k]
        rows.append([k, refinement.surjection[k], *(rd.r(f[ob]) for ob in obs)])
    lines += ["  " + s for s in _table(rows)]
    _emit(fmt, data, lines)


def main(argv=None):
    cli.main(args=argv, prog_name="uncertain-evidence")


if __name__ == "__main__":
    main()

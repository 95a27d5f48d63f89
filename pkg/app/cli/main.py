"""
Command-line interface.

    hgk check kan nerve_pair2.kf --m 2
    hgk build b2group xm0.kf --N 4
    hgk hom count nerve_pair2.kf --domain horn:2:1

Exit codes: 0 when the verdict holds (or the build succeeded), 1 when it
fails or a construction raises a domain error, 2 for usage and parse errors.
"""

import logging
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

import click
from pydantic import BaseModel

from app.actions.bundles import (
    FibrationBundle,
    fiber,
    make_bundle,
    strict_action_groupoid,
    strict_2group_action_groupoid,
)
from app.actions.orbits import free_quotient, invariant_objects
from app.actions.span_data import lambda_extract
from app.actions.strict import StrictAction
from app.actions.strictify import strictify
from app.actions.transport import pullback, pushforward
from app.catalog import make_rng
from app.cli.reports import EXIT_USAGE, Outcome, outcome_from_error, outcome_from_report, render
from app.cli.serialization import ParsedDocument, parse_all, serialize
from app.errors import DocumentValidationError, ParseError, ToolkitError
from app.groupoids.groupoid_bridge import FiniteGroupoid, nerve
from app.groupoids.reduction import check_isotropy_consequences, is_2_isotropy_free, reduce_to_1
from app.groupoids.two_group import CrossedModule, classifying_2group
from app.simplicial.core import SimplicialMap, TruncatedSimplicialSet, standard_complex, truncate
from app.simplicial.hom_search import build_cylinder, count_maps, enumerate_maps
from app.simplicial.kan_verify import (
    check_equivalence,
    check_fibration,
    check_hypercover,
    check_kan,
    classify_n_groupoid,
)
from app.utilities.logging_config import ensure_stderr_logging, setup_search_log_filter
from settings import compute_settings, report_settings

logger = logging.getLogger(__name__)

DOCUMENT = click.Path(exists=True, dir_okay=False, path_type=Path)


class CliState(BaseModel):
    fmt: str
    verbosity: str
    seed: int
    depth: Optional[int] = None


def _load(path: Path) -> ParsedDocument:
    return parse_all(path.read_text(encoding="utf-8"))


def _complex(doc: ParsedDocument, N: Optional[int] = None) -> TruncatedSimplicialSet:
    """The last block as a complex; groupoids give nerves and crossed modules B𝒢."""
    value = doc.last()
    if isinstance(value, TruncatedSimplicialSet):
        return value if N is None or N >= value.N else truncate(value, N)
    if isinstance(value, FiniteGroupoid):
        return nerve(value, N or 3)
    if isinstance(value, CrossedModule):
        return classifying_2group(value, N or 4)
    raise click.UsageError(f"expected a complex, groupoid or crossed module, got a {type(value).__name__}")


def _map(doc: ParsedDocument) -> SimplicialMap:
    value = doc.last()
    if not isinstance(value, SimplicialMap):
        raise click.UsageError(f"expected a map document, got a {type(value).__name__}")
    return value


def _action(doc: ParsedDocument) -> StrictAction:
    value = doc.get("action")
    if value is None:
        raise click.UsageError("expected a document with an action block")
    return value


def _bundle(doc: ParsedDocument, n: int = 2, N: Optional[int] = None) -> FibrationBundle:
    """A bundle from an action block, or from a map certified at level ``n``."""
    if isinstance(doc.last(), SimplicialMap):
        f = doc.last()
        return make_bundle(f.source.name, f, n)
    A = _action(doc)
    if A.is_two_group:
        return strict_2group_action_groupoid(A, N or 4)
    return strict_action_groupoid(A, N or 3)


def _emit(state: CliState, outcome: Outcome) -> None:
    click.echo(render(outcome, state.fmt, state.verbosity))
    sys.stdout.flush()
    click.get_current_context().exit(outcome.exit_code)


def _execute(command: str, body: Callable[[], Outcome]) -> None:
    state: CliState = click.get_current_context().obj
    try:
        outcome = body()
    except (ParseError, DocumentValidationError) as e:
        click.echo(render(outcome_from_error(command, e), state.fmt, state.verbosity))
        click.get_current_context().exit(EXIT_USAGE)
    except ToolkitError as e:
        logger.info(f"{command} raised {type(e).__name__}: {e.message}")
        outcome = outcome_from_error(command, e)
    _emit(state, outcome)


def _built(command: str, document: str, verdict: str = "holds", **summary) -> Outcome:
    return Outcome(command=command, verdict=verdict, summary=summary, document=document)


def _parse_domain(ctx, param, value: str) -> TruncatedSimplicialSet:
    parts = value.split(":")
    try:
        if parts[0] in ("simplex", "boundary") and len(parts) == 2:
            return standard_complex(parts[0], int(parts[1]))
        if parts[0] == "horn" and len(parts) == 3:
            return standard_complex("horn", int(parts[1]), int(parts[2]))
    except ValueError:
        pass
    except ToolkitError as e:
        raise click.BadParameter(e.message)
    raise click.BadParameter("use simplex:m, boundary:m or horn:m:j")


@click.group()
@click.option("--format", "fmt", type=click.Choice(["text", "structured"]), default=None)
@click.option("--verbosity", type=click.Choice(["quiet", "normal", "verbose"]), default=None)
@click.option("--seed", type=int, default=None, help="Seed for sampling commands")
@click.option("--depth", type=int, default=None, help="Default depth for cylinder and equivalence")
@click.option("--log-level", default=None, help="Overrides LOG_LEVEL")
@click.pass_context
def cli(ctx, fmt, verbosity, seed, depth, log_level):
    """Finite truncated simplicial sets, groupoids, 2-groups and their actions."""
    ensure_stderr_logging(log_level)
    if (verbosity or report_settings.verbosity) != "verbose":
        setup_search_log_filter()
    ctx.obj = CliState(
        fmt=fmt or report_settings.default_format,
        verbosity=verbosity or report_settings.verbosity,
        seed=compute_settings.default_seed if seed is None else seed,
        depth=depth,
    )


# -- check ---------------------------------------------------------------------------


@cli.group()
def check():
    """Verify a condition and report a verdict with witnesses."""


@check.command("kan")
@click.argument("path", type=DOCUMENT)
@click.option("--m", "m", type=int, required=True)
@click.option("--j", "j", type=int, default=None, help="Horn index; all horns when omitted")
@click.option("--mode", type=click.Choice(["fill", "unique", "etale"]), default="fill")
def check_kan_command(path, m, j, mode):
    _execute("check kan", lambda: outcome_from_report("check kan", check_kan(_complex(_load(path)), m, j, mode)))


@check.command("ngroupoid")
@click.argument("path", type=DOCUMENT)
@click.option("--n", "n", type=int, required=True)
def check_ngroupoid_command(path, n):
    _execute(
        "check ngroupoid",
        lambda: outcome_from_report("check ngroupoid", classify_n_groupoid(_complex(_load(path)), n)),
    )


@check.command("fibration")
@click.argument("path", type=DOCUMENT)
@click.option("--n", "n", type=int, required=True)
def check_fibration_command(path, n):
    def body() -> Outcome:
        doc = _load(path)
        f = _map(doc) if isinstance(doc.last(), SimplicialMap) else _bundle(doc).pi
        return outcome_from_report("check fibration", check_fibration(f, n))

    _execute("check fibration", body)


@check.command("hypercover")
@click.argument("path", type=DOCUMENT)
@click.option("--n", "n", type=int, required=True)
def check_hypercover_command(path, n):
    _execute(
        "check hypercover",
        lambda: outcome_from_report("check hypercover", check_hypercover(_map(_load(path)), n)),
    )


@check.command("equivalence")
@click.argument("path", type=DOCUMENT)
@click.option("--n", "n", type=int, default=1)
@click.pass_obj
def check_equivalence_command(state: CliState, path, n):
    _execute(
        "check equivalence",
        lambda: outcome_from_report("check equivalence", check_equivalence(_map(_load(path)), n, state.depth)),
    )


@check.command("isotropy")
@click.argument("path", type=DOCUMENT)
@click.option("--consequences", is_flag=True, help="Also check rigidity and boundary injectivity")
def check_isotropy_command(path, consequences):
    def body() -> Outcome:
        Z = _complex(_load(path))
        report = check_isotropy_consequences(Z) if consequences else is_2_isotropy_free(Z)
        return outcome_from_report("check isotropy", report)

    _execute("check isotropy", body)


# -- build ---------------------------------------------------------------------------


@cli.group()
def build():
    """Construct a complex, bundle or groupoid and print it as a document."""


@build.command("nerve")
@click.argument("path", type=DOCUMENT)
@click.option("--N", "N", type=int, default=3)
def build_nerve_command(path, N):
    def body() -> Outcome:
        value = _load(path).last()
        if not isinstance(value, FiniteGroupoid):
            raise click.UsageError("build nerve needs a groupoid document")
        X = nerve(value, N)
        return _built("build nerve", serialize(X), levels=list(X.sizes))

    _execute("build nerve", body)


@build.command("b2group")
@click.argument("path", type=DOCUMENT)
@click.option("--N", "N", type=int, default=lambda: compute_settings.default_truncation)
def build_b2group_command(path, N):
    def body() -> Outcome:
        value = _load(path).last()
        if not isinstance(value, CrossedModule):
            raise click.UsageError("build b2group needs a crossed module document")
        X = classifying_2group(value, N)
        return _built("build b2group", serialize(X), levels=list(X.sizes))

    _execute("build b2group", body)


def _bundle_outcome(command: str, bundle: FibrationBundle) -> Outcome:
    return _built(
        command,
        serialize(bundle.pi),
        verdict=bundle.certificate.verdict,
        total=list(bundle.K.sizes),
        base=list(bundle.G.sizes),
        fibration=bundle.certificate.condition,
    )


@build.command("action")
@click.argument("path", type=DOCUMENT)
@click.option("--N", "N", type=int, default=3)
def build_action_command(path, N):
    _execute("build action", lambda: _bundle_outcome("build action", strict_action_groupoid(_action(_load(path)), N)))


@build.command("action2")
@click.argument("path", type=DOCUMENT)
@click.option("--N", "N", type=int, default=lambda: compute_settings.default_truncation)
def build_action2_command(path, N):
    _execute(
        "build action2",
        lambda: _bundle_outcome("build action2", strict_2group_action_groupoid(_action(_load(path)), N)),
    )


@build.command("pullback")
@click.argument("path", type=DOCUMENT)
@click.option("--along", type=DOCUMENT, required=True, help="Map into the base of the bundle")
@click.option("--n", "n", type=int, default=2, help="Fibration level for map documents")
def build_pullback_command(path, along, n):
    _execute(
        "build pullback",
        lambda: _bundle_outcome("build pullback", pullback(_bundle(_load(path), n), _map(_load(along)))),
    )


@build.command("pushforward")
@click.argument("path", type=DOCUMENT)
@click.option("--along", type=DOCUMENT, default=None, help="Hypercover out of the base of the bundle")
@click.option("--along-reduction", is_flag=True, help="Push along the reduction of a 2-isotropy-free base")
@click.option("--n", "n", type=int, default=2, help="Fibration level for map documents")
@click.option("--hypercover-n", type=int, default=2)
def build_pushforward_command(path, along, along_reduction, n, hypercover_n):
    def body() -> Outcome:
        if (along is None) == (not along_reduction):
            raise click.UsageError("give exactly one of --along and --along-reduction")
        bundle = _bundle(_load(path), n)
        f = reduce_to_1(bundle.G)[1] if along_reduction else _map(_load(along))
        return _bundle_outcome("build pushforward", pushforward(bundle, f, hypercover_n))

    _execute("build pushforward", body)


@build.command("strictify")
@click.argument("path", type=DOCUMENT)
@click.option("--n", "n", type=int, default=2, help="Fibration level for map documents")
@click.option("--N", "N", type=int, default=3)
def build_strictify_command(path, n, N):
    def body() -> Outcome:
        strict, A, f = strictify(_bundle(_load(path), n), N)
        return _built(
            "build strictify",
            serialize(A, f),
            objects=len(strict.objects),
            arrows=len(strict.arrows),
        )

    _execute("build strictify", body)


@build.command("quotient")
@click.argument("path", type=DOCUMENT)
@click.option("--N", "N", type=int, default=3)
def build_quotient_command(path, N):
    def body() -> Outcome:
        Q, projection = free_quotient(_action(_load(path)), N)
        return _built("build quotient", serialize(Q, projection), objects=len(Q.objects), arrows=len(Q.arrows))

    _execute("build quotient", body)


@build.command("reduce")
@click.argument("path", type=DOCUMENT)
def build_reduce_command(path):
    def body() -> Outcome:
        reduced, f = reduce_to_1(_complex(_load(path)))
        return _built(
            "build reduce",
            serialize(reduced, f),
            objects=len(reduced.objects),
            arrows=len(reduced.arrows),
        )

    _execute("build reduce", body)


@build.command("cylinder")
@click.argument("path", type=DOCUMENT)
@click.option("--k", "k", type=int, default=1)
@click.pass_obj
def build_cylinder_command(state: CliState, path, k):
    def body() -> Outcome:
        X = _complex(_load(path))
        cyl = build_cylinder(X, k, state.depth if state.depth is not None else min(2, X.N - k))
        return _built("build cylinder", serialize(cyl.complex), levels=list(cyl.complex.sizes))

    _execute("build cylinder", body)


# -- extract -------------------------------------------------------------------------


@cli.group()
def extract():
    """Read structure off a fibration."""


@extract.command("lambda")
@click.argument("path", type=DOCUMENT)
@click.option("--n", "n", type=int, default=2, help="Fibration level for map documents")
@click.option("--vertex", type=int, default=0)
def extract_lambda_command(path, n, vertex):
    def body() -> Outcome:
        bundle = _bundle(_load(path), n)
        data = lambda_extract(bundle, vertex)
        spans = {
            str(bundle.G.label(1, g)): {
                "cells": len(span.cells),
                "right_of_left": {
                    str(data.fiber.objects[k]): [str(data.fiber.objects[v]) for v in span.right_of_left(k)]
                    for k in range(len(data.fiber.objects))
                },
            }
            for g, span in sorted(data.spans.items())
        }
        transport = {str(bundle.G.label(2, s)): len(table) for s, table in sorted(data.transport.items())}
        return Outcome(
            command="extract lambda",
            verdict="holds",
            summary={"fiber": data.fiber.describe(), "spans": spans, "transport": transport},
        )

    _execute("extract lambda", body)


@extract.command("fiber")
@click.argument("path", type=DOCUMENT)
@click.option("--n", "n", type=int, default=2, help="Fibration level for map documents")
@click.option("--vertex", type=int, default=0)
def extract_fiber_command(path, n, vertex):
    def body() -> Outcome:
        F = fiber(_bundle(_load(path), n), vertex)
        return _built("extract fiber", serialize(F), levels=list(F.sizes))

    _execute("extract fiber", body)


@extract.command("invariants")
@click.argument("path", type=DOCUMENT)
@click.option("--n", "n", type=int, default=2, help="Fibration level for map documents")
@click.option("--vertex", type=int, default=0)
def extract_invariants_command(path, n, vertex):
    def body() -> Outcome:
        bundle = _bundle(_load(path), n)
        found = invariant_objects(bundle, vertex)
        return Outcome(
            command="extract invariants",
            verdict="holds",
            summary={"count": len(found), "objects": [str(bundle.K.label(0, x)) for x in found]},
        )

    _execute("extract invariants", body)


# -- hom -----------------------------------------------------------------------------


@cli.group()
def hom():
    """Hom-sets out of standard simplices, boundaries and horns."""


@hom.command("count")
@click.argument("path", type=DOCUMENT)
@click.option("--domain", required=True, callback=_parse_domain, help="simplex:m, boundary:m or horn:m:j")
def hom_count_command(path, domain):
    def body() -> Outcome:
        X = _complex(_load(path))
        return Outcome(
            command="hom count",
            verdict="holds",
            summary={"domain": domain.name, "target": X.name, "count": count_maps(domain, X)},
        )

    _execute("hom count", body)


@hom.command("list")
@click.argument("path", type=DOCUMENT)
@click.option("--domain", required=True, callback=_parse_domain, help="simplex:m, boundary:m or horn:m:j")
@click.option("--limit", type=int, default=None)
@click.option("--sample", type=int, default=None, help="Print a seeded sample of this size")
@click.pass_obj
def hom_list_command(state: CliState, path, domain, limit, sample):
    def body() -> Outcome:
        X = _complex(_load(path))
        maps = enumerate_maps(domain, X, limit=limit)
        total = len(maps)
        if sample is not None and sample < total:
            maps = sorted(make_rng(state.seed).sample(maps, sample), key=lambda f: f.levels)
        return _built(
            "hom list",
            serialize(*maps) if maps else "",
            domain=domain.name,
            target=X.name,
            count=total,
            shown=len(maps),
        )

    _execute("hom list", body)


def run(argv: Sequence[str]) -> int:
    """Invoke the CLI in-process and return its exit code."""
    try:
        code = cli.main(args=list(argv), prog_name="hgk", standalone_mode=False)
    except click.exceptions.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    return code or 0


def main() -> None:
    cli(prog_name="hgk")


if __name__ == "__main__":
    main()

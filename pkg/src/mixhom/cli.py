"""Command-line interface for mixhom."""

import functools
import logging
import math
from pathlib import Path

try:
    import click
except ImportError:
    raise ImportError(
        "CLI dependencies not installed. Install with: pip install mixhom[cli]"
    )

from .constants import BUILTIN_TARGETS, REPORT_FORMATS
from .constructions import construction_names, construction_spec, generate, replication_gadget
from .core import serialize_graph, write_graph
from .forcing import (
    ORIENTED_MENU,
    TWO_EDGE_COLORED_MENU,
    core_of,
    forcing_reachability,
    nonempty_subsets,
)
from .metrics import check_discharging, girth, is_bipartite, mad_exact, universality_edge_bound
from .models import BranchCase, LinkPattern
from .pathlab import find_blocking_triple, profile_frame, profile_table, verify_path_extension
from .reproduce import load_manifest, resolve_graph, run_checks
from .solver import HomSolver, exists_walk
from .sweep import sweep_planar_targets
from .targets import (
    builtin_target,
    fact_sheet,
    isomorphic,
    reconstruct_candidates,
    verify_target_facts,
)

GOALS = {"abcd": "equals_abcd", "good": "good_set", "full": "equals_full"}


class LibraryError(click.ClickException):
    """A library error reported as a usage-level failure (exit status 2)."""
    exit_code = 2


def library_errors(func):
    """Turn library exceptions into exit status 2 with the message on standard error."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (click.exceptions.Exit, click.exceptions.Abort, click.ClickException):
            # click's own exits are RuntimeErrors too
            raise
        except (ValueError, KeyError, RuntimeError, OSError) as e:
            message = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
            raise LibraryError(str(message))

    return wrapper


def _emit_frame(ctx, frame) -> None:
    if ctx.obj["format"] == "machine":
        click.echo(frame.to_csv(index=False), nl=False)
    else:
        click.echo(frame.to_string(index=False))


def _show_set(graph, vertices) -> str:
    return "{" + ",".join(graph.names(vertices)) + "}"


def _parse_set(graph, text: str):
    """A set of target vertices written ``a,b,c`` or, for single-letter names, ``abc``."""
    if "," in text:
        return graph.color_set(part.strip() for part in text.split(",") if part.strip())
    try:
        return graph.color_set([text])
    except KeyError:
        return graph.color_set(list(text))


def _parse_constraints(source, target, items):
    constraints = {}
    for item in items:
        vertex, sep, values = item.partition("=")
        if not sep:
            raise click.BadParameter(f"expected VERTEX=SET, got {item!r}", param_hint="--constrain")
        constraints[source.vertex_index(vertex)] = _parse_set(target, values)
    return constraints


def _finish(ctx, ok: bool) -> None:
    if not ok:
        ctx.exit(1)


@click.group()
@click.version_option()
@click.option("--verbose", "-v", is_flag=True, help="Log debug messages to standard error")
@click.option(
    "--format",
    "report_format",
    type=click.Choice(REPORT_FORMATS),
    default="plain",
    help="Table output: aligned text or CSV",
)
@click.pass_context
def main(ctx, verbose, report_format):
    """mixhom - homomorphisms of colored-mixed graphs.

    Graph arguments accept an MG1 file, a builtin target name
    (t5, t6, t4_oriented, t4_2ec) or a construction such as gen:cactus:3.
    """
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.ensure_object(dict)
    ctx.obj["format"] = report_format


@main.command()
@click.argument("source")
@click.argument("target")
@click.option("--constrain", "-c", multiple=True, help="Restrict a vertex: v=SET (repeatable)")
@click.option("--time-limit", type=float, default=None, help="Give up after this many seconds")
@click.pass_context
@library_errors
def check(ctx, source, target, constrain, time_limit):
    """Look for a homomorphism from SOURCE to TARGET.

    Prints the mapping, or NONE and exit status 1.
    """
    g, t = resolve_graph(source), resolve_graph(target)
    found = HomSolver(g, t, _parse_constraints(g, t, constrain), time_limit).find()
    if found is None:
        click.echo("NONE")
        ctx.exit(1)
    for line in found.describe(g, t):
        click.echo(line)


@main.command()
@click.argument("source")
@click.argument("target")
@click.option("--vertex", required=True, help="Source vertex to inspect")
@click.option("--constrain", "-c", multiple=True, help="Restrict a vertex: v=SET (repeatable)")
@click.pass_context
@library_errors
def force(ctx, source, target, vertex, constrain):
    """Print the target vertices VERTEX takes over all homomorphisms."""
    g, t = resolve_graph(source), resolve_graph(target)
    solver = HomSolver(g, t, _parse_constraints(g, t, constrain))
    click.echo(_show_set(t, solver.forced(g.vertex_index(vertex))))


@main.command()
@click.argument("target")
@click.option("--pattern", required=True, help='Step tokens, e.g. "B B R B" or "F K F"')
@click.option("--from", "start", required=True, help="First vertex of the walk")
@click.option("--to", "end", required=True, help="Last vertex of the walk")
@click.pass_context
@library_errors
def walk(ctx, target, pattern, start, end):
    """Decide whether TARGET has a walk shaped by a pattern between two vertices."""
    t = resolve_graph(target)
    found = exists_walk(t, LinkPattern.from_tokens(pattern), t.vertex_index(start), t.vertex_index(end))
    click.echo("yes" if found else "no")
    _finish(ctx, found)


@main.command()
@click.argument("name", type=click.Choice(construction_names() + ["replicate"]))
@click.argument("source", required=False)
@click.option("--girth", "-g", type=int, default=None, help="Girth parameter")
@click.option("--output", "-o", type=click.Path(), default=None, help="Write MG1 here instead of stdout")
@click.pass_context
@library_errors
def gen(ctx, name, source, girth, output):
    """Generate a construction as MG1.

    Examples:

        mixhom gen cactus --girth 3 -o cactus.mg

        mixhom gen replicate input.mg --girth 5 -o out.mg
    """
    if name == "replicate":
        if source is None or girth is None:
            raise click.UsageError("gen replicate needs an input graph and --girth")
        graph = replication_gadget(resolve_graph(source), girth)
    else:
        if source is not None:
            raise click.UsageError(f"gen {name} takes no input graph")
        graph = generate(construction_spec(name, girth))
    if output:
        write_graph(graph, output)
        click.echo(f"Wrote {graph.num_vertices} vertices, {graph.num_links} links to {output}", err=True)
    else:
        click.echo(serialize_graph(graph), nl=False)


@main.command()
@click.argument("graph")
@click.option("--girth", "show_girth", is_flag=True, help="Girth of the underlying graph")
@click.option("--mad", "show_mad", is_flag=True, help="Exact maximum average degree")
@click.option("--bipartite", "show_bipartite", is_flag=True, help="Bipartiteness")
@click.pass_context
@library_errors
def stats(ctx, graph, show_girth, show_mad, show_bipartite):
    """Print structural statistics of GRAPH (all of them when no flag is given)."""
    g = resolve_graph(graph)
    every = not (show_girth or show_mad or show_bipartite)
    click.echo(f"vertices: {g.num_vertices}")
    click.echo(f"signature: ({g.m},{g.n})")
    click.echo(f"links: {g.num_links}")
    if every or show_girth:
        value = girth(g)
        click.echo(f"girth: {'inf' if value == math.inf else value}")
    if every or show_mad:
        click.echo(f"mad: {mad_exact(g)}")
    if every or show_bipartite:
        click.echo(f"bipartite: {'yes' if is_bipartite(g) else 'no'}")


@main.command()
@click.argument("graph")
@click.option("--k", "k", type=int, required=True, help="Discharging parameter")
@click.pass_context
@library_errors
def discharge(ctx, graph, k):
    """Check the discharging hypothesis on GRAPH and, when it holds, the mad bound."""
    report = check_discharging(resolve_graph(graph), k)
    run = "unbounded" if report.max_consecutive_2vertices is None else report.max_consecutive_2vertices
    click.echo(f"k: {report.k}")
    click.echo(f"longest 2-vertex run: {run}")
    click.echo(f"most 2-weak-neighbors of a 3-vertex: {report.max_2weak_neighbors_of_3vertex}")
    click.echo(f"hypothesis: {'holds' if report.hypothesis_holds else 'fails'}")
    if report.reason:
        click.echo(f"reason: {report.reason}")
    click.echo(f"mad lower bound: {report.mad_lower_bound}")
    click.echo(f"excluded girth: {report.girth_exclusion}")
    if report.mad is not None:
        click.echo(f"mad: {report.mad}")
        click.echo(f"smallest final charge: {report.min_final_charge}")
    _finish(ctx, report.hypothesis_holds and bool(report.bound_holds))


@main.command()
@click.option("--m", "m", type=int, required=True, help="Arc colors")
@click.option("--n", "n", type=int, required=True, help="Edge colors")
@click.option("--k", "k", type=int, required=True, help="Target order")
@library_errors
def bound(m, n, k):
    """Compare the links a universal target needs with the planar maximum."""
    result = universality_edge_bound(m, n, k)
    relation = ">" if result.exceeds else "<="
    verdict = "impossible" if result.impossible else "possible"
    click.echo(f"required {result.required} {relation} planar_max {result.planar_max}, {verdict}")


@main.group()
def pathlab():
    """Path extension and forbidden-set profiles of a target."""


@pathlab.command("profile")
@click.argument("target")
@click.option("--max-len", type=int, required=True, help="Largest number of internal vertices")
@click.pass_context
@library_errors
def pathlab_profile(ctx, target, max_len):
    """Print the forbidden-set profile of TARGET for 0..max-len internal vertices."""
    t = resolve_graph(target)
    _emit_frame(ctx, profile_frame(t, profile_table(t, max_len, target_name=target)))


@pathlab.command("extend")
@click.argument("target")
@click.option("--internal", type=int, required=True, help="Number of internal vertices")
@click.pass_context
@library_errors
def pathlab_extend(ctx, target, internal):
    """Check that every precoloring of the ends of a path extends."""
    ok = verify_path_extension(resolve_graph(target), internal)
    click.echo("extends" if ok else "does not extend")
    _finish(ctx, ok)


@pathlab.command("branches")
@click.argument("target")
@click.option("--case", "cases", multiple=True, required=True, help="Branch lengths l1,l2,l3 (repeatable)")
@click.pass_context
@library_errors
def pathlab_branches(ctx, target, cases):
    """Check that the center of every branch case keeps a color."""
    t = resolve_graph(target)
    ok = True
    for text in cases:
        case = BranchCase(tuple(int(x) for x in text.split(",")))
        blocking = find_blocking_triple(t, case)
        if blocking is None:
            click.echo(f"{text}: ok")
        else:
            ok = False
            click.echo(f"{text}: blocked by {' '.join(_show_set(t, s) for s in blocking)}")
    _finish(ctx, ok)


@main.group()
def target():
    """Builtin targets and their fact sheets."""


@target.command("dump")
@click.argument("name", type=click.Choice(BUILTIN_TARGETS))
def target_dump(name):
    """Print a builtin target as MG1."""
    click.echo(serialize_graph(builtin_target(name)), nl=False)


@target.command("verify")
@click.argument("name", type=click.Choice(BUILTIN_TARGETS))
@click.option("--graph", default=None, help="Evaluate the facts on this graph instead")
@click.pass_context
@library_errors
def target_verify(ctx, name, graph):
    """Evaluate the fact sheet of a builtin target."""
    report = verify_target_facts(name, resolve_graph(graph) if graph else None)
    _emit_frame(ctx, report.to_frame())
    _finish(ctx, report.passed)


@target.command("reconstruct")
@click.argument("name", type=click.Choice(BUILTIN_TARGETS))
@click.pass_context
@library_errors
def target_reconstruct(ctx, name):
    """List every graph satisfying the fact sheet, one per isomorphism class."""
    builtin = builtin_target(name)
    candidates = reconstruct_candidates(
        fact_sheet(name), (builtin.num_vertices, builtin.m, builtin.n)
    )
    click.echo(f"{len(candidates)} candidate(s)")
    for candidate in candidates:
        click.echo(f"c {'builtin' if isomorphic(candidate, builtin) else 'other'}")
        click.echo(serialize_graph(candidate), nl=False)
    _finish(ctx, any(isomorphic(c, builtin) for c in candidates))


@main.command("force-closure")
@click.argument("target")
@click.option("--goal", type=click.Choice(sorted(GOALS)), required=True, help="Sets to reach")
@click.option("--within", default=None, help="Start from every non-empty subset of these vertices")
@click.pass_context
@library_errors
def force_closure(ctx, target, goal, within):
    """Search gadget sequences from every start set to a goal set."""
    t = resolve_graph(target)
    menu = ORIENTED_MENU if t.m else TWO_EDGE_COLORED_MENU
    if within is None:
        within = "abd" if t.m else "abcde"
    starts = nonempty_subsets(sorted(_parse_set(t, within)))
    report = forcing_reachability(t, starts, GOALS[goal], menu, target)
    _emit_frame(ctx, report.to_frame(t))
    _finish(ctx, report.passed)


@main.command()
@click.argument("graph")
@library_errors
def core(graph):
    """Print the core of a small GRAPH as MG1."""
    click.echo(serialize_graph(core_of(resolve_graph(graph))), nl=False)


@main.command()
@click.argument("source")
@click.option("--max-order", type=int, default=5, help="Largest target order")
@click.option("--workers", type=int, default=1, help="Worker processes")
@click.option("--progress/--no-progress", default=True, help="Show a progress bar")
@click.pass_context
@library_errors
def sweep(ctx, source, max_order, workers, progress):
    """Try SOURCE against every planar target of its signature; exit 1 if one admits it."""
    result = sweep_planar_targets(resolve_graph(source), max_order, workers, progress)
    click.echo(f"{len(result.targets)} targets, {len(result.admitting)} admit a homomorphism")
    for index in result.admitting:
        order, links = result.targets[index]
        click.echo(f"  target {index}: {order} vertices, {links} links")
    _finish(ctx, result.refuted)


@main.command()
@click.option("--all", "include_slow", is_flag=True, help="Include slow checks")
@click.option("--manifest", type=click.Path(exists=True, dir_okay=False), default=None, help="Manifest CSV")
@click.option("--progress/--no-progress", default=False, help="Show a progress bar")
@click.pass_context
@library_errors
def reproduce(ctx, include_slow, manifest, progress):
    """Run every check of the reproduction manifest."""
    checks = load_manifest(Path(manifest) if manifest else None)
    report = run_checks(checks, include_slow=include_slow, show_progress=progress)
    _emit_frame(ctx, report.to_frame())
    failures = report.failures()
    if failures:
        click.echo(f"{len(failures)} check(s) failed", err=True)
    _finish(ctx, not failures)


if __name__ == "__main__":
    main()

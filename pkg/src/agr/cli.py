"""Command-line front end.

Exit codes: 0 success, 1 domain/validation failure, 2 I/O or parse failure.
Validation output is machine-parsable: one "violation: ..." line each.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import analysis, render
from .catalog import ThreatCatalog, builtin_catalog, load_catalog, validate_tags
from .errors import (
    AttackGraphError,
    GraphValidationError,
    SpecParseError,
)
from .graph import AttackGraph, apply_update, build_graph, parse_updates

EXIT_DOMAIN = 1
EXIT_IO = 2


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        click.echo(f"error: cannot read {path}: {exc}", err=True)
        sys.exit(EXIT_IO)


def _load_graph(spec_path: str, updates_path: str | None = None) -> AttackGraph:
    text = _read_file(spec_path)
    try:
        graph = build_graph(text)
        if updates_path is not None:
            graph = apply_update(graph, parse_updates(_read_file(updates_path)))
    except SpecParseError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    except GraphValidationError as exc:
        for violation in exc.violations:
            click.echo(f"violation: {violation}", err=True)
        sys.exit(EXIT_DOMAIN)
    except AttackGraphError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)
    return graph


def _load_catalog(catalog_path: str | None) -> ThreatCatalog:
    if catalog_path is None:
        return builtin_catalog()
    try:
        return load_catalog(_read_file(catalog_path))
    except SpecParseError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    except AttackGraphError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)


def _run_analysis(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except AttackGraphError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)


@click.group()
@click.version_option(package_name="agr", prog_name="agr")
def main() -> None:
    """Attack-graph risk modeling and assessment."""


@main.command()
@click.argument("spec", type=click.Path())
@click.option(
    "--catalog",
    "catalog_path",
    type=click.Path(),
    envvar="AGR_CATALOG",
    default=None,
    help="Catalog document merged over the built-in taxonomy (env: AGR_CATALOG).",
)
def validate(spec: str, catalog_path: str | None) -> None:
    """Check a graph spec: structure, invariants, and taxonomy tags."""
    catalog = _load_catalog(catalog_path)
    text = _read_file(spec)
    try:
        graph = build_graph(text)
    except SpecParseError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    except GraphValidationError as exc:
        for violation in exc.violations:
            click.echo(f"violation: {violation}")
        sys.exit(EXIT_DOMAIN)
    tag_violations = validate_tags(graph, catalog)
    for violation in tag_violations:
        click.echo(f"violation: {violation}")
    if tag_violations:
        sys.exit(EXIT_DOMAIN)
    click.echo(f"ok: {graph.vertex_count} vertices, {graph.edge_count} edges")
    click.echo(render.edges_table(graph))


@main.command()
@click.argument("spec", type=click.Path())
@click.option("--from", "start", required=True, help="Attack-vector vertex id.")
@click.option("--to", "target", required=True, help="Consequence vertex id.")
@click.option("--cost", type=float, default=None, help="Consequence cost (monetary).")
@click.option(
    "--updates",
    "updates_path",
    type=click.Path(),
    default=None,
    help="Update document applied before ranking.",
)
@click.option("--max-hops", type=int, default=analysis.DEFAULT_MAX_HOPS, show_default=True)
@click.option("--max-paths", type=int, default=analysis.DEFAULT_MAX_PATHS, show_default=True)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
)
def report(spec, start, target, cost, updates_path, max_hops, max_paths, fmt) -> None:
    """Rank every attack path between a vector and a consequence."""
    graph = _load_graph(spec, updates_path)
    result = _run_analysis(
        analysis.rank_paths,
        graph,
        start,
        target,
        cost,
        max_hops=max_hops,
        max_paths=max_paths,
    )
    if fmt == "json":
        click.echo(render.stable_json(render.report_payload(result)), nl=False)
    else:
        click.echo(render.report_table(result))
        if result.unreachable:
            click.echo("warning: empty ranking (target unreachable)", err=True)


@main.command()
@click.argument("spec", type=click.Path())
@click.option("--from", "start", required=True, help="Attack-vector vertex id.")
@click.option("--to", "target", required=True, help="Consequence vertex id.")
@click.option("--max-hops", type=int, default=analysis.DEFAULT_MAX_HOPS, show_default=True)
@click.option("--max-paths", type=int, default=analysis.DEFAULT_MAX_PATHS, show_default=True)
@click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True
)
def paths(spec, start, target, max_hops, max_paths, fmt) -> None:
    """Enumerate all simple attack paths between two vertices."""
    graph = _load_graph(spec)
    enumeration = _run_analysis(
        analysis.enumerate_paths,
        graph,
        start,
        target,
        max_hops=max_hops,
        max_paths=max_paths,
    )
    if fmt == "json":
        payload = {
            "start": start,
            "target": target,
            "truncated": enumeration.truncated,
            "paths": [
                {
                    "vertices": list(p.vertices),
                    "hop_length": p.hop_length,
                    "cumulative_weight": p.cumulative_weight,
                    "success_probability": p.success_probability,
                }
                for p in enumeration.paths
            ],
        }
        click.echo(render.stable_json(payload), nl=False)
        return
    for path in enumeration.paths:
        click.echo(
            f"{render.path_arrow(path.vertices)}  "
            f"(hops {path.hop_length}, weight {render.format_weight(path.cumulative_weight)})"
        )
    if enumeration.truncated:
        click.echo("warning: enumeration truncated by limits", err=True)


@main.command()
@click.argument("spec", type=click.Path())
@click.option("--from", "start", required=True, help="Attack-vector vertex id.")
@click.option("--to", "target", required=True, help="Consequence vertex id.")
@click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True
)
def shortest(spec, start, target, fmt) -> None:
    """Most attractive attack path: the lowest cumulative weight."""
    graph = _load_graph(spec)
    path = _run_analysis(analysis.shortest_path, graph, start, target)
    if fmt == "json":
        payload = {
            "vertices": list(path.vertices),
            "hop_length": path.hop_length,
            "cumulative_weight": path.cumulative_weight,
            "success_probability": path.success_probability,
        }
        click.echo(render.stable_json(payload), nl=False)
    else:
        click.echo(render.path_arrow(path.vertices))
        click.echo(
            f"hops {path.hop_length}, cumulative weight "
            f"{render.format_weight(path.cumulative_weight)}"
        )


@main.command()
@click.argument("spec", type=click.Path())
@click.option("--from", "start", required=True, help="Attack-vector vertex id.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json", "dot"]),
    default="text",
    show_default=True,
)
def propagate(spec, start, fmt) -> None:
    """Depth-first attack propagation from one attack vector."""
    graph = _load_graph(spec)
    result = _run_analysis(analysis.propagate, graph, start)
    if fmt == "json":
        click.echo(render.stable_json(render.propagation_payload(result)), nl=False)
    elif fmt == "dot":
        click.echo(
            render.to_dot(
                graph,
                tree_edges=set(result.tree_edges),
                visited=set(result.visited),
                start=result.start,
            ),
            nl=False,
        )
    else:
        click.echo(render.propagation_text(result))


@main.command(name="export-dot")
@click.argument("spec", type=click.Path())
@click.option("--highlight-shortest", is_flag=True, default=False)
@click.option("--from", "start", default=None, help="Required with --highlight-shortest.")
@click.option("--to", "target", default=None, help="Required with --highlight-shortest.")
def export_dot(spec, highlight_shortest, start, target) -> None:
    """Emit the graph in DOT for visualization."""
    graph = _load_graph(spec)
    highlight: set[tuple[str, str]] = set()
    if highlight_shortest:
        if start is None or target is None:
            click.echo("error: --highlight-shortest needs --from and --to", err=True)
            sys.exit(EXIT_DOMAIN)
        path = _run_analysis(analysis.shortest_path, graph, start, target)
        highlight = set(zip(path.vertices, path.vertices[1:]))
    click.echo(render.to_dot(graph, highlight_edges=highlight), nl=False)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option(
    "--fixture",
    "fixture_path",
    type=click.Path(),
    default=None,
    help="Graph spec preloaded into a session at boot.",
)
def serve(host, port, fixture_path) -> None:
    """Run the what-if analysis HTTP service."""
    import uvicorn

    from .service import create_app

    preload = None
    if fixture_path is not None:
        preload = _read_file(fixture_path)
    app = create_app(preload_spec=preload)
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()

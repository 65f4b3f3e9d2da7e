"""Command-line interface for the natural-language query engine."""

from __future__ import annotations

import json
import sys

import click

from .errors import NlidbError
from .graph import export_dot, export_json
from .workspace import ENV_WORKSPACE, list_databases, load_workspace

workspace_option = click.option(
    "--workspace",
    "-w",
    default=None,
    envvar=ENV_WORKSPACE,
    help="Workspace directory (defaults to the bundled data).",
)


@click.group()
def main():
    """Translate natural-language questions into explained SQL."""


@main.command()
@workspace_option
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(workspace, host, port):
    """Run the HTTP service."""
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(workspace), host=host, port=port)


@main.command()
@workspace_option
@click.option("--db", required=True, help="Database name in the workspace.")
@click.option(
    "--tagger",
    type=click.Choice(["gold", "auto"]),
    default="gold",
    show_default=True,
)
@click.option("--explain", is_flag=True, help="Include per-token explanations.")
@click.argument("query")
def translate(workspace, db, tagger, explain, query):
    """Translate QUERY against a database and print the JSON response."""
    from .pipeline import handle_translate

    bundle = _bundle(db, workspace)
    response = handle_translate(bundle, query, tagger, explain)
    click.echo(json.dumps(response, indent=2))
    if "error" in response:
        sys.exit(1)


@main.group()
def graph():
    """Schema-graph utilities."""


@graph.command("export")
@workspace_option
@click.option("--db", required=True)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "dot"]),
    default="json",
    show_default=True,
)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def graph_export(workspace, db, fmt, out):
    """Export a database's schema graph as JSON or Graphviz DOT."""
    bundle = _bundle(db, workspace)
    text = export_json(bundle.graph) if fmt == "json" else export_dot(bundle.graph)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        click.echo(out)
    else:
        click.echo(text, nl=False)


@main.group()
def index():
    """Value-index utilities."""


@index.command("build")
@workspace_option
@click.option("--db", required=True)
def index_build(workspace, db):
    """Build the value index for a database and print its statistics."""
    bundle = _bundle(db, workspace)
    stats = bundle.index.stats()
    click.echo(json.dumps(stats, indent=2, sort_keys=True))


@main.command("eval")
@workspace_option
@click.option("--db", required=True)
@click.option(
    "--tagger",
    type=click.Choice(["gold", "auto"]),
    default="gold",
    show_default=True,
)
@click.option(
    "--out",
    type=click.Path(file_okay=False),
    default=None,
    help="Directory for the delimited report and rendered figures.",
)
def eval_cmd(workspace, db, tagger, out):
    """Evaluate tagging and translation accuracy on the gold corpus."""
    from .evaluate import run_eval, write_report

    bundle = _bundle(db, workspace)
    if not bundle.gold:
        raise click.ClickException(f"database {db!r} has no gold corpus")
    report = run_eval(bundle, tagger_mode=tagger)
    click.echo(report.to_json())
    if out:
        for path in write_report(report, out):
            click.echo(path, err=True)


@main.command()
@workspace_option
@click.option("--db", required=True)
@click.option("--runs", default=20, show_default=True, type=int)
@click.option(
    "--out",
    type=click.Path(file_okay=False),
    default=None,
    help="Directory for the delimited timings and rendered figure.",
)
def bench(workspace, db, runs, out):
    """Measure median per-query tagging and translation time."""
    from .evaluate import run_bench, write_bench

    bundle = _bundle(db, workspace)
    if not bundle.gold:
        raise click.ClickException(f"database {db!r} has no gold corpus")
    rows = run_bench(bundle, runs=runs)
    click.echo(json.dumps(rows, indent=2))
    if out:
        for path in write_bench(rows, out):
            click.echo(path, err=True)


@main.command()
@workspace_option
def dbs(workspace):
    """List the databases available in the workspace."""
    for name in list_databases(workspace):
        click.echo(name)


def _bundle(db, workspace):
    try:
        return load_workspace(db, workspace)
    except NlidbError as exc:
        raise click.ClickException(str(exc)) from exc

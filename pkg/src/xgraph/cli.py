"""Command line interface: ``xgraph <subcommand>``.

Exit codes: 0 valid / success, 1 invalid graph, failed certificate or
nothing found, 2 usage or resource error.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import io
from .certificate import certificate_report
from .errors import XGraphError
from .graph import export_dot
from .search import ALPHABETS, SearchSpace, export_polynomial_system, search_max_dimension
from .sparsify import prune_to_fixpoint
from .validity import bound_report_for, verify

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _json_option(f):
    return click.option(
        "--json",
        "json_out",
        is_flag=False,
        flag_value="-",
        default=None,
        metavar="[PATH]",
        help="Write the machine-readable report to PATH (standard output if omitted).",
    )(f)


def _finish(code: int):
    raise click.exceptions.Exit(code)


def _emit_json(doc, dest) -> None:
    text = io.dumps(doc)
    if dest == "-":
        click.echo(text, nl=False)
    else:
        Path(dest).write_text(text)


def _write_text(text: str, dest) -> None:
    if dest in (None, "-"):
        click.echo(text, nl=False)
    else:
        Path(dest).write_text(text)


def _load(path, float_eps=None):
    return io.load(path, allow_float=float_eps is not None)


def _verdict_text(g, v) -> str:
    lines = [f"valid: {'yes' if v.is_valid else 'no'}", f"mu: {v.mu}" + (" (vacuous)" if v.vacuous else "")]
    lines.append(f"perfect matchings: {v.matching_count}")
    lines.append("weight table:")
    for vc, e in v.table.items():
        lines.append(f"  {vc.ket()}  weight {e.weight}  matchings {e.matchings}")
    for vc, w in v.violations:
        want = 1 if vc.is_monochromatic() else 0
        lines.append(f"violation: {vc.ket()} has weight {w}, expected {want}")
    return "\n".join(lines) + "\n"


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Experiment graphs: validity, dimension, pruning, certificates and search."""


@cli.command("verify")
@click.argument("path", type=click.Path(dir_okay=False))
@_json_option
@click.option("--float-eps", type=float, default=None, help="Accept float weights; compare within EPS.")
def verify_cmd(path, json_out, float_eps):
    """Check every feasible colouring of a graph against its required weight."""
    g = _load(path, float_eps)
    v = verify(g, tolerance=float_eps)
    if json_out:
        _emit_json(v.to_json(), json_out)
    if json_out != "-":
        click.echo(_verdict_text(g, v), nl=False)
    _finish(EXIT_OK if v.is_valid else EXIT_FAIL)


@cli.command("dim")
@click.argument("path", type=click.Path(dir_okay=False))
@_json_option
@click.option("--float-eps", type=float, default=None, help="Accept float weights; compare within EPS.")
def dim_cmd(path, json_out, float_eps):
    """Dimension of a valid graph and its position against the bounds."""
    g = _load(path, float_eps)
    v = verify(g, tolerance=float_eps)
    if not v.is_valid:
        if json_out:
            _emit_json({"valid": False, "violations": v.to_json(False)["violations"]}, json_out)
        click.echo("graph is not valid; dimension undefined", err=True)
        _finish(EXIT_FAIL)
    r = bound_report_for(g.vertex_count, v.mu)
    if json_out:
        _emit_json(r.to_json(), json_out)
    if json_out != "-":
        click.echo(
            f"n: {r.n}\nmu: {r.mu}\n"
            f"2mu^2 <= n^2: {r.bound_sqrt2} ({'holds' if r.bound_sqrt2.holds else 'fails'})\n"
            f"2mu < n: {r.bound_conjecture} ({'holds' if r.bound_conjecture.holds else 'fails'})\n"
            f"counterexample to theorem: {'yes' if r.is_counterexample_thm else 'no'}\n"
            f"counterexample to conjecture: {'yes' if r.is_counterexample_conj else 'no'}"
        )
    _finish(EXIT_OK)


@cli.command("prune")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False), help="Pruned graph.")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), help="Write the removal trace here.")
@click.option("--paranoid/--no-paranoid", default=None, help="Re-verify after each colour-isolation batch.")
@_json_option
def prune_cmd(path, output, trace_path, paranoid, json_out):
    """Apply the pruning rules until none fires."""
    g = io.load(path)
    out, trace = prune_to_fixpoint(g, paranoid=paranoid)
    io.save(out, output)
    if trace_path:
        Path(trace_path).write_text(io.dumps(trace.to_json(g)))
    summary = {"edges_before": len(g.edges), "edges_after": len(out.edges), "steps": len(trace)}
    if json_out:
        _emit_json({**summary, **trace.to_json(g)}, json_out)
    if json_out != "-":
        click.echo(f"fixpoint reached: {summary['edges_before']} -> {summary['edges_after']} edges in {len(trace)} steps")
    _finish(EXIT_OK)


@cli.command("certify")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--color", "colors", type=int, multiple=True, help="Restrict the per-colour sweep (repeatable).")
@_json_option
def certify_cmd(path, colors, json_out):
    """Evaluate the structural certificates of a valid graph."""
    g = io.load(path)
    internal = None
    if colors:
        labels = {g.color_label(c): c for c in g.colors_used()}
        internal = [labels[c] for c in colors if c in labels]
    rep = certificate_report(g, colors=internal)
    if json_out:
        _emit_json(rep.to_json(), json_out)
    if json_out != "-":
        click.echo(rep.table(), nl=False)
    _finish(EXIT_OK if rep.passed else EXIT_FAIL)


@cli.command("search")
@click.option("--n", "n", type=int, required=True, help="Number of vertices (even, <= 8).")
@click.option("--colors", type=int, required=True, help="Maximum number of colours d.")
@click.option("--weights", type=click.Choice(sorted(ALPHABETS)), default="i4", show_default=True)
@click.option("--mono-only/--bichromatic", default=True, show_default=True)
@click.option("--up-to-iso/--labeled", default=True, show_default=True)
@click.option("--base", "base_path", type=click.Path(dir_okay=False), help="Skeleton restricting the vertex pairs.")
@click.option("--budget", type=int, default=10**8, show_default=True)
@click.option("--target-mu", type=int, default=None, help="Only try colour counts >= this.")
@click.option("--collect-all", is_flag=True, help="Try every colour count instead of stopping at the best.")
@click.option("--reduced", is_flag=True, help="Keep only fixpoints of the pruning rules.")
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--checkpoint", "ckpt", type=click.Path(dir_okay=False), help="Checkpoint file (written periodically).")
@click.option("--resume", type=click.Path(dir_okay=False), help="Resume from (and keep updating) a checkpoint.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Result JSON (standard output if omitted).")
def search_cmd(n, colors, weights, mono_only, up_to_iso, base_path, budget, target_mu, collect_all, reduced, workers, ckpt, resume, output):
    """Search small graphs for the largest dimension."""
    base = io.load(base_path) if base_path else None
    space = SearchSpace(n, colors, weights, mono_only, up_to_iso, base)
    res = search_max_dimension(
        space,
        budget=budget,
        target_mu=target_mu,
        collect_all=collect_all,
        reduced=reduced,
        workers=workers,
        checkpoint=ckpt or resume,
        resume=resume,
    )
    doc = {"space": space.to_json(), **res.to_json()}
    _emit_json(doc, output or "-")
    if output:
        state = "complete" if res.complete else "incomplete (budget exhausted)"
        click.echo(f"best mu: {res.best_mu}, witnesses: {len(res.witnesses)}, {state}")
    _finish(EXIT_OK if res.witnesses else EXIT_FAIL)


@cli.command("export-dot")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False))
def export_dot_cmd(path, output):
    """Graphviz rendering of a graph."""
    _write_text(export_dot(io.load(path)), output)


@cli.command("export-poly")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False))
def export_poly_cmd(path, output):
    """Validity conditions of a coloured skeleton as polynomial equations."""
    _write_text(export_polynomial_system(io.load(path)), output)


def main(argv=None):
    try:
        code = cli.main(args=argv, prog_name="xgraph", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_ERROR
    except click.exceptions.Abort:
        return EXIT_ERROR
    except (XGraphError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_ERROR
    return code if isinstance(code, int) else EXIT_OK


def _entry():
    sys.exit(main())

"""Command-line interface.

Exit status is 0 on success, 1 for bad input, 2 when the crossing cap is
hit and 3 when the cabling fit leaves a nonzero residual. Diagnostics go
to stderr as a single line.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import sys

import click

from .classifier import CableParams, classify_cable_surgery
from .errors import InputError, ModelViolationError, NotACableError, ParseError, ResourceLimitError
from .invariants import Unavailable, alexander, delta2, jones_of
from .knots import Cable, Leaf, parse_knot_expr, parse_leaf_class, simplify
from .manifolds import jsj_torus_count, to_json
from .obstructions import ObstructionReport, fit_cabling_constants, obstruction_report, scan
from .slopes import parse_slope
from .tables import KnotTable, load_table

FORMATS = ("json", "csv", "text")
EXIT_INPUT, EXIT_RESOURCE, EXIT_MODEL = 1, 2, 3


class _Cli(click.Group):
    """Group that maps library errors onto exit codes instead of tracebacks."""

    def main(self, args=None, prog_name=None, **extra):
        extra.pop("standalone_mode", None)
        try:
            rv = super().main(args, prog_name, standalone_mode=False, **extra)
        except click.ClickException as exc:
            click.echo(f"error: {exc.format_message()}", err=True)
            sys.exit(EXIT_INPUT)
        except click.Abort:
            sys.exit(EXIT_INPUT)
        except InputError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except ResourceLimitError as exc:
            click.echo(f"resource limit: {exc}", err=True)
            sys.exit(EXIT_RESOURCE)
        except ModelViolationError as exc:
            if exc.fit is not None:
                click.echo(json.dumps(exc.fit.to_json()))
            click.echo(f"model violation: {exc}", err=True)
            sys.exit(EXIT_MODEL)
        sys.exit(rv if isinstance(rv, int) else 0)


@dataclasses.dataclass
class CliConfig:
    max_crossings: int
    fmt: str
    table: KnotTable | None
    declared: dict[str, str]

    def leaves(self) -> dict:
        leaves = self.table.leaves() if self.table is not None else {}
        for name, cls in self.declared.items():
            existing = leaves.get(name)
            parsed = parse_leaf_class(cls)
            if isinstance(existing, Leaf):
                leaves[name] = dataclasses.replace(existing, declared_class=parsed)
            elif existing is None:
                leaves[name] = Leaf(name, declared_class=parsed)
            else:
                raise InputError(f"{name} is an expression row; only leaves take a class")
        return leaves

    def knot(self, text: str):
        return parse_knot_expr(text, self.leaves())


def _emit_csv(rows):
    writer = csv.writer(sys.stdout, lineterminator="\n")
    for row in rows:
        writer.writerow(row)


def _emit_json(obj):
    click.echo(json.dumps(obj))


def _parse_declare(values) -> dict[str, str]:
    out = {}
    for item in values:
        name, sep, cls = item.partition("=")
        if not sep or not name.strip():
            raise ParseError(f"--declare expects name=class, got {item!r}")
        out[name.strip()] = cls.strip()
    return out


def _parse_grid(text: str) -> tuple[int, int]:
    for sep in (",", "x", "X"):
        if sep in text:
            a, _, b = text.partition(sep)
            try:
                return int(a), int(b)
            except ValueError:
                break
    raise ParseError(f"grid must look like MAX_M,MAX_N, got {text!r}")


_SLOPE_ARGS = {"ignore_unknown_options": True}


@click.group(cls=_Cli)
@click.option(
    "--max-crossings",
    type=int,
    default=26,
    show_default=True,
    envvar="CABLE_COSMETIC_MAX_CROSSINGS",
    help="Largest diagram the Jones engine will evaluate.",
)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json", show_default=True)
@click.option("--table", "table_path", type=click.Path(dir_okay=False), help="Knot table CSV for K(name).")
@click.option("--declare", multiple=True, metavar="NAME=CLASS", help="Declare a leaf class, e.g. k1=hyperbolic.")
@click.pass_context
def cli(ctx, max_crossings, fmt, table_path, declare):
    """Cosmetic surgery obstructions for cable knots."""
    if max_crossings < 0:
        raise InputError("--max-crossings must be non-negative")
    table = load_table(table_path) if table_path else None
    ctx.obj = CliConfig(max_crossings, fmt, table, _parse_declare(declare))


@cli.command(context_settings=_SLOPE_ARGS)
@click.argument("knot")
@click.argument("slope")
@click.pass_obj
def classify(cfg: CliConfig, knot, slope):
    """Identify the surgered manifold S^3_SLOPE(KNOT) for a cable KNOT."""
    k = simplify(cfg.knot(knot))
    r = parse_slope(slope)
    if not isinstance(k, Cable):
        raise NotACableError(f"{k} is not a cable of a non-trivial knot")
    tag, d = classify_cable_surgery(CableParams(k.p, k.q), r, k.companion)
    try:
        tori = jsj_torus_count(d)
    except InputError:
        tori = None
    record = {"knot": str(k), "slope": str(r), "case": tag.value, "descriptor": to_json(d), "jsj_tori": tori}
    if cfg.fmt == "json":
        _emit_json(record)
    elif cfg.fmt == "csv":
        _emit_csv([["knot", "slope", "case", "jsj_tori", "descriptor"],
                   [str(k), str(r), tag.value, "" if tori is None else tori, json.dumps(to_json(d))]])
    else:
        click.echo(f"{k} at {r}: {tag.value}")
        click.echo(f"  {d}")
        click.echo(f"  JSJ tori: {'unknown' if tori is None else tori}")


@cli.command()
@click.argument("knot")
@click.pass_obj
def invariants(cfg: CliConfig, knot):
    """Alexander and Jones data for KNOT."""
    k = cfg.knot(knot)
    alex = alexander(k)
    d2 = delta2(k)
    v = jones_of(k, cfg.max_crossings)
    jones_text = None if isinstance(v, Unavailable) else str(v)
    v3 = None if isinstance(v, Unavailable) else v.derivative_at_one(3)
    record = {
        "knot": str(k),
        "alexander": str(alex),
        "delta2": d2,
        "jones": jones_text,
        "v3": v3,
    }
    if isinstance(v, Unavailable):
        record["jones_unavailable"] = v.reason
    if cfg.fmt == "json":
        _emit_json(record)
    elif cfg.fmt == "csv":
        keys = list(record)
        _emit_csv([keys, ["" if record[key] is None else record[key] for key in keys]])
    else:
        click.echo(f"knot        {k}")
        click.echo(f"Alexander   {alex}")
        click.echo(f"Delta''(1)  {d2}")
        click.echo(f"Jones       {jones_text if jones_text is not None else v}")
        click.echo(f"V'''(1)     {v3 if v3 is not None else v}")


def _emit_reports(cfg: CliConfig, records):
    if cfg.fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(ObstructionReport.csv_header())
        for rec in records:
            writer.writerow(rec.csv_row())
    elif cfg.fmt == "json":
        for rec in records:
            _emit_json(rec.to_json())
    else:
        for rec in records:
            click.echo(rec.to_text())


@cli.command(context_settings=_SLOPE_ARGS)
@click.argument("knot")
@click.argument("r")
@click.argument("s", required=False)
@click.option("--tau", type=int, default=None, help="Known tau invariant of KNOT.")
@click.pass_obj
def obstruct(cfg: CliConfig, knot, r, s, tau):
    """Run every obstruction on the pair (R, S); S defaults to -R."""
    k = cfg.knot(knot)
    r_slope = parse_slope(r)
    s_slope = parse_slope(s) if s is not None else None
    report = obstruction_report(k, r_slope, s_slope, tau, cfg.max_crossings)
    _emit_reports(cfg, [report])


@cli.command(name="scan")
@click.argument("table_path", metavar="TABLE", type=click.Path(dir_okay=False))
@click.argument("grid")
@click.pass_obj
def scan_cmd(cfg: CliConfig, table_path, grid):
    """Reports for (r, -r) over reduced slopes r = m/n in GRID (MAX_M,MAX_N)."""
    table = load_table(table_path)
    bounds = _parse_grid(grid)
    _emit_reports(cfg, scan(table, bounds, cfg.max_crossings))


@cli.command()
@click.argument("q", type=int)
@click.argument("table_path", metavar="TABLE", type=click.Path(dir_okay=False))
@click.option("--epsilon", type=click.Choice(["1", "-1"]), default="1", show_default=True)
@click.pass_obj
def fit(cfg: CliConfig, q, table_path, epsilon):
    """Fit the affine cabling constants for C(+-1, Q; K) over the knots in TABLE."""
    table = load_table(table_path)
    bad = [e for e in table if not e.ok]
    for entry in bad:
        click.echo(f"skipping {entry.name}: {entry.error}", err=True)
    sample = [e.knot for e in table if e.ok]
    result = fit_cabling_constants(q, sample, int(epsilon), cfg.max_crossings)
    if cfg.fmt == "json":
        _emit_json(result.to_json())
    elif cfg.fmt == "csv":
        rows = [["knot", "delta2", "cable_delta2", "v3", "cable_v3"]]
        rows += [[r.knot, r.delta2, r.cable_delta2, r.v3, r.cable_v3] for r in result.rows]
        _emit_csv(rows)
    else:
        click.echo(f"q = {q}, epsilon = {epsilon}")
        click.echo(f"cable Delta''(1) = {result.a} * Delta''(1) + {result.b}")
        click.echo(f"cable V'''(1) = {result.c} * V'''(1) + {result.d} * Delta''(1) + {result.e}")
        click.echo(f"residual = {result.residual}")


def main():
    cli(prog_name="cable-cosmetic")


if __name__ == "__main__":
    main()

"""Command line entry point: ``okbd check|zariski|volume|polygon|oracle``.

Exit status: 0 when every check passes, 1 when a check or computation
fails, 2 for invalid input.
"""

from __future__ import annotations

import json
import os
import sys

import click

from .errors import InputError, OkbdError
from .okounkov import Flag, okounkov_polygon
from .report import CheckReport, decimal, exact, run_checks
from .scenario import parse_scenario
from .svg import emit_svg
from .toric import h0_count, kappa_estimate, volume_estimate
from .zariski import numerical_dimension, volume, zariski_decompose

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _color() -> bool:
    env = os.environ.get("OKBD_COLOR")
    if env is not None:
        return env.strip() == "1"
    return sys.stdout.isatty()


def _verdict(passed: bool) -> str:
    text = "PASS" if passed else "FAIL"
    if _color():
        return click.style(text, fg="green" if passed else "red", bold=True)
    return text


def _load(path):
    try:
        return parse_scenario(path)
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)


def _divisor(sf, name):
    if name in sf.divisors:
        return sf.divisors[name]
    if sf.model.has_curve(name):
        return sf.model.curve(name).divisor
    click.echo(f"error: unknown divisor {name!r}", err=True)
    sys.exit(EXIT_INPUT)


def _emit(data) -> None:
    click.echo(json.dumps(data, indent=2, sort_keys=True))


@click.group()
def main():
    """Exact volumes, Zariski decompositions and Okounkov bodies on surfaces."""


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--report", "report_path", type=click.Path(dir_okay=False), help="write the JSON report here")
@click.option("--svg", "svg_dir", type=click.Path(file_okay=False), help="write polygon figures here")
@click.option("--jobs", default=1, show_default=True, help="scenarios evaluated concurrently")
def check(path, report_path, svg_dir, jobs):
    """Run every configured check of a scenario file."""
    sf = _load(path)
    report: CheckReport = run_checks(sf, jobs=jobs)
    for r in report.records:
        line = f"{_verdict(r.passed)}  {r.name}"
        if r.note:
            line += f"  ({r.note})"
        click.echo(line)
    click.echo(f"overall: {_verdict(report.passed)}")
    report_path = report_path or sf.options.get("report")
    svg_dir = svg_dir or sf.options.get("svg_dir")
    try:
        if report_path:
            with open(report_path, "w") as fh:
                fh.write(report.dumps())
        if svg_dir:
            emit_svg(report.polygons, svg_dir)
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_FAIL)
    sys.exit(EXIT_OK if report.passed else EXIT_FAIL)


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--divisor", "name", required=True)
def zariski(path, name):
    """Print the Zariski decomposition of a named divisor."""
    sf = _load(path)
    D = _divisor(sf, name)
    try:
        z = zariski_decompose(sf.model, D)
    except OkbdError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_FAIL)
    _emit(
        {
            "divisor": name,
            "class": exact(list(D)),
            "positive": exact(list(z.positive)),
            "negative": [[c.label, exact(a)] for c, a in z.negative_support],
        }
    )


@main.command("volume")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--divisor", "name", required=True)
def volume_cmd(path, name):
    """Print vol(D) and the numerical dimension of a named divisor."""
    sf = _load(path)
    D = _divisor(sf, name)
    v = volume(sf.model, D)
    _emit({"divisor": name, "volume": exact(v), "decimal": decimal(v), "numerical_dimension": exact(numerical_dimension(sf.model, D))})


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--divisor", "name", required=True)
@click.option("--flag", "flag_curve", required=True, help="label of the flag curve")
@click.option("--point", default="generic", show_default=True, help="curve through the flag point, or 'generic'")
@click.option("--svg", "svg_dir", type=click.Path(file_okay=False))
def polygon(path, name, flag_curve, point, svg_dir):
    """Print the Okounkov polygon of a named divisor."""
    sf = _load(path)
    D = _divisor(sf, name)
    if not sf.model.has_curve(flag_curve) or (point != "generic" and not sf.model.has_curve(point)):
        click.echo("error: unknown flag curve", err=True)
        sys.exit(EXIT_INPUT)
    try:
        flag = Flag(sf.model.curve(flag_curve), None if point == "generic" else point)
        p = okounkov_polygon(sf.model, D, flag)
    except OkbdError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_FAIL)
    data = p.to_json()
    data["area"] = exact(p.area())
    _emit(data)
    if svg_dir:
        try:
            emit_svg([(f"{name}_{flag_curve}", p, None)], svg_dir)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_FAIL)


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--m-max", "m_max", default=30, show_default=True)
def oracle(path, m_max):
    """Lattice-point section counts for every named divisor."""
    sf = _load(path)
    if not sf.model.toric_fan:
        click.echo("error: model has no toric fan", err=True)
        sys.exit(EXIT_INPUT)
    out = []
    for name, D in sf.divisors.items():
        est = volume_estimate(sf.model, D, m_max)
        out.append(
            {
                "divisor": name,
                "volume": exact(volume(sf.model, D)),
                "h0": [h0_count(sf.model, D, m) for m in range(1, m_max + 1)],
                "volume_estimate": exact(est),
                "kappa": exact(kappa_estimate(sf.model, D, max(m_max, 10))),
            }
        )
    _emit({"model": sf.model.name, "divisors": out})


if __name__ == "__main__":
    main()

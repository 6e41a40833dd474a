"""Command-line entry point.

Subcommands mirror the service endpoints and call the same handlers
in-process; `serve` starts the HTTP service.  Exit codes: 0 success,
2 invalid input, 3 negative Pell equation unsolvable, 4 certificate
verification mismatch, 5 inconclusive pipeline.
"""

from __future__ import annotations

import json
import sys

import click

from .certify import (
    VERDICT_INCONCLUSIVE,
    certificate_to_json,
    verify_certificate,
)
from .grammar import ElementSyntaxError
from .pell import InvalidParameterError, PellUnsolvableError
from .service.app import handle_hyper, handle_pell, handle_plane

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_NO_PELL = 3
EXIT_VERIFY_MISMATCH = 4
EXIT_INCONCLUSIVE = 5


@click.group()
def main() -> None:
    """Certify that explicit real curve families are not definable over Q."""


@main.command("pell")
@click.option("--D", "D", type=int, required=True, help="square-free D > 1")
def pell_cmd(D: int) -> None:
    """Fundamental solution of a^2 - D b^2 = -1, or "none"."""
    try:
        result = handle_pell(D)
    except (InvalidParameterError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID_INPUT)
    if not result["solvable"]:
        click.echo("none")
        sys.exit(EXIT_NO_PELL)
    click.echo(
        f"a={result['a']} b={result['b']} unit={result['unit']}"
    )
    sys.exit(EXIT_OK)


def _emit(cert: dict, emit_cert: str | None) -> None:
    text = certificate_to_json(cert)
    if emit_cert:
        with open(emit_cert, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    for check in cert["checks"]:
        click.echo(f"  {check['name']}: {check['status']}")
    for assumption in cert["assumptions"]:
        click.echo(f"  assumption: {assumption['name']}")
    click.echo(f"verdict: {cert['verdict']}")


def _finish(cert: dict, emit_cert: str | None) -> None:
    _emit(cert, emit_cert)
    if cert["verdict"] == VERDICT_INCONCLUSIVE:
        names = {c["name"]: c["status"] for c in cert["checks"]}
        if names.get("pell-negative-solvable") == "fail":
            sys.exit(EXIT_NO_PELL)
        sys.exit(EXIT_INCONCLUSIVE)
    sys.exit(EXIT_OK)


def _run_family(runner, emit_cert: str | None) -> None:
    try:
        cert = runner()
    except (
        InvalidParameterError,
        PellUnsolvableError,
        ElementSyntaxError,
        ValueError,
    ) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID_INPUT)
    _finish(cert, emit_cert)


def _check_even_genus(genus: int) -> None:
    if genus < 2 or genus % 2 != 0:
        click.echo("error: genus must be an even integer >= 2", err=True)
        sys.exit(EXIT_INVALID_INPUT)


def _check_degree(d: int) -> None:
    if d < 4 or d % 4 != 0:
        click.echo("error: degree must be a positive multiple of 4", err=True)
        sys.exit(EXIT_INVALID_INPUT)


@main.command("hyper")
@click.option("--D", "D", type=int, required=True)
@click.option("--genus", type=int, required=True)
@click.option("--t", "t", default="auto", show_default=True)
@click.option("--etas", default="auto", show_default=True,
              help='"auto" or comma-separated unit expressions')
@click.option("--bound", type=int, default=100, show_default=True,
              help="height bound for --t auto")
@click.option("--emit-cert", type=click.Path(dir_okay=False), default=None)
def hyper_cmd(D, genus, t, etas, bound, emit_cert) -> None:
    """Certify the hyperelliptic family instance (D, genus, t, etas)."""
    _check_even_genus(genus)
    _run_family(lambda: handle_hyper(D, genus, t, etas, bound), emit_cert)


@main.command("plane")
@click.option("--D", "D", type=int, required=True)
@click.option("--d", "d", type=int, required=True)
@click.option("--t", "t", default="auto", show_default=True)
@click.option("--etas", default="auto", show_default=True,
              help='"auto" or comma-separated unit expressions')
@click.option("--bound", type=int, default=100, show_default=True,
              help="height bound for --t auto")
@click.option("--emit-cert", type=click.Path(dir_okay=False), default=None)
def plane_cmd(D, d, t, etas, bound, emit_cert) -> None:
    """Certify the plane-curve family instance (D, d, t, etas)."""
    _check_degree(d)
    _run_family(lambda: handle_plane(D, d, t, etas, bound), emit_cert)


@main.command("verify")
@click.argument("cert_path", type=click.Path(exists=True, dir_okay=False))
def verify_cmd(cert_path: str) -> None:
    """Re-run all checks of a certificate and diff against the original."""
    try:
        with open(cert_path, encoding="utf-8") as fh:
            cert = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID_INPUT)
    try:
        match, diffs, _ = verify_certificate(cert)
    except (InvalidParameterError, KeyError, TypeError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID_INPUT)
    if match:
        click.echo("match")
        sys.exit(EXIT_OK)
    for path in diffs:
        click.echo(f"mismatch at {path}")
    sys.exit(EXIT_VERIFY_MISMATCH)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve_cmd(host: str, port: int) -> None:
    """Start the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()

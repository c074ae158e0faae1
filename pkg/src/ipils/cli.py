"""Command line entry points: batch experiments, the service, a thin client."""

from __future__ import annotations

import json
import sys

import click
import httpx

from .archive import ReferencePoint
from .experiment import ExperimentSpec, run_experiment
from .instance_io import load_instance
from .oracle import dp_front, enumerate_front, write_front


def _parse_ref(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}")


@click.group()
def main() -> None:
    """Interactive Pareto Iterated Local Search for multi-objective knapsacks."""


@main.command()
@click.option("--instance", "instance_path", required=True, type=click.Path(exists=True))
@click.option("--ref", "refs", multiple=True, required=True, help="reference point r1,r2[,rK]; repeatable")
@click.option("--runs", default=100, show_default=True, type=int)
@click.option("--evals", default=100_000, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--oracle", "oracle_path", type=click.Path(exists=True), default=None, help="imported exact front file")
@click.option("--weights", default=101, show_default=True, type=int)
@click.option("--out", "output_dir", default="out", show_default=True, type=click.Path())
@click.option("--strict-cone", is_flag=True, default=False)
@click.option("--workers", default=None, type=int, help="parallel run workers (default: one per CPU)")
def experiment(instance_path, refs, runs, evals, seed, oracle_path, weights, output_dir, strict_cone, workers):
    """Run seeded batches per reference point and write M-metric CSVs."""
    spec = ExperimentSpec(
        instance_path=instance_path,
        reference_points=tuple(ReferencePoint(_parse_ref(r)) for r in refs),
        runs=runs,
        max_evaluations=evals,
        base_seed=seed,
        oracle_path=oracle_path,
        output_dir=output_dir,
        weight_count=weights,
        strict_cone_mode=strict_cone,
        workers=workers,
    )
    report = run_experiment(spec)
    for label, curve in report.mean_curves.items():
        click.echo(f"ref {label}: final mean M = {curve.checkpoints[-1][1]:.4f}")
    click.echo(f"outputs written to {output_dir}")


@main.command()
@click.option("--instance", "instance_path", required=True, type=click.Path(exists=True))
@click.option("--out", "output_path", required=True, type=click.Path())
@click.option("--method", type=click.Choice(["auto", "dp", "enumeration"]), default="auto", show_default=True)
def front(instance_path, output_path, method):
    """Compute the exact Pareto front and write it as a front file."""
    instance = load_instance(instance_path)
    if method == "enumeration" or (method == "auto" and instance.K != 2):
        result = enumerate_front(instance)
    else:
        result = dp_front(instance)
    write_front(result, output_path)
    click.echo(f"{len(result.points)} efficient points ({result.method}) -> {output_path}")


@main.command()
@click.option("--name", default="rand", show_default=True)
@click.option("--n", default=50, show_default=True, type=int)
@click.option("--objectives", "k", default=2, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", "output_path", required=True, type=click.Path())
def gen(name, n, k, seed, output_path):
    """Write a random instance with uniform [1,100] coefficients."""
    from .generate import random_instance
    from .instance_io import serialize_instance

    instance = random_instance(f"{name}-{seed}", n, k, seed)
    with open(output_path, "w") as fh:
        fh.write(serialize_instance(instance))
    click.echo(f"wrote {instance.name} (n={n}, K={k}, C={instance.capacity})")


@main.command("convert-2kp")
@click.argument("source", type=click.Path(exists=True))
@click.argument("destination", type=click.Path())
def convert_2kp(source, destination):
    """Convert a downloaded 2KP50-50 benchmark file to the native format.

    The benchmark data is not redistributed here; download it yourself and
    pass the file. This stub accepts the plain layout `n`, `C`, then n lines
    of `cost profit1 profit2`. If the distributed copy uses a different
    layout, adapt this command accordingly.
    """
    from .core import KnapsackInstance
    from .instance_io import serialize_instance

    tokens: list[int] = []
    with open(source) as fh:
        for line in fh:
            tokens.extend(int(v) for v in line.replace(",", " ").split())
    if len(tokens) < 2 or len(tokens) != 2 + 3 * tokens[0]:
        raise click.UsageError(
            "unrecognized benchmark layout; expected 'n', 'C', then n rows of "
            "'cost profit1 profit2' (adapt convert-2kp to the actual file)"
        )
    n, capacity = tokens[0], tokens[1]
    rows = [tokens[2 + 3 * j : 5 + 3 * j] for j in range(n)]
    instance = KnapsackInstance(
        name="2kp50-50",
        n=n,
        K=2,
        capacity=capacity,
        costs=tuple(r[0] for r in rows),
        profits=(tuple(r[1] for r in rows), tuple(r[2] for r in rows)),
    )
    with open(destination, "w") as fh:
        fh.write(serialize_instance(instance))
    click.echo(f"wrote {destination} (n={n}, C={capacity})")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host, port):
    """Start the session service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


@main.group()
@click.option("--server", default="http://127.0.0.1:8000", show_default=True)
@click.pass_context
def session(ctx, server):
    """Thin client for a running session service."""
    ctx.obj = server.rstrip("/")


def _post(server: str, endpoint: str, payload: dict) -> dict:
    resp = httpx.post(f"{server}/{endpoint}", json=payload, timeout=60.0)
    if resp.status_code >= 400:
        click.echo(f"error {resp.status_code}: {resp.json().get('detail')}", err=True)
        sys.exit(1)
    return resp.json()


@session.command("create")
@click.option("--instance", "instance_path", required=True, type=click.Path(exists=True))
@click.option("--evals", default=100_000, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--weights", default=101, show_default=True, type=int)
@click.pass_obj
def session_create(server, instance_path, evals, seed, weights):
    with open(instance_path) as fh:
        text = fh.read()
    out = _post(
        server,
        "session.create",
        {
            "instance": text,
            "config": {"max_evaluations": evals, "seed": seed, "weight_count": weights},
        },
    )
    click.echo(json.dumps(out["status"], indent=2))


@session.command("set-ref")
@click.argument("session_id")
@click.argument("ref")
@click.pass_obj
def session_set_ref(server, session_id, ref):
    out = _post(server, "session.setReference", {"session_id": session_id, "r": list(_parse_ref(ref))})
    click.echo(json.dumps(out))


@session.command("start")
@click.argument("session_id")
@click.pass_obj
def session_start(server, session_id):
    click.echo(json.dumps(_post(server, "session.start", {"session_id": session_id})))


@session.command("pause")
@click.argument("session_id")
@click.pass_obj
def session_pause(server, session_id):
    click.echo(json.dumps(_post(server, "session.pause", {"session_id": session_id})))


@session.command("accept")
@click.argument("session_id")
@click.argument("selection")
@click.pass_obj
def session_accept(server, session_id, selection):
    click.echo(json.dumps(_post(server, "session.accept", {"session_id": session_id, "selection": selection})))


@session.command("status")
@click.argument("session_id")
@click.pass_obj
def session_status(server, session_id):
    resp = httpx.get(f"{server}/session.status", params={"session_id": session_id}, timeout=30.0)
    click.echo(json.dumps(resp.json(), indent=2))


@session.command("watch")
@click.argument("session_id")
@click.option("--max-events", default=None, type=int)
@click.pass_obj
def session_watch(server, session_id, max_events):
    """Print the session event stream as JSON lines."""
    params: dict = {"session_id": session_id}
    if max_events is not None:
        params["max_events"] = max_events
    with httpx.stream(
        "GET", f"{server}/session.subscribe", params=params, timeout=None
    ) as resp:
        for line in resp.iter_lines():
            if line.startswith("data: "):
                click.echo(line[len("data: "):])


if __name__ == "__main__":
    main()

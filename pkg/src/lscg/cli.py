"""Command-line front end.

The CLI is a thin HTTP client for the service in :mod:`lscg.service`.
With ``--url`` it talks to a running server; without it, requests are
served by an in-process application over an ASGI transport, so every
command also works standalone.  Reports are JSON with a versioned schema
and a full configuration echo.

Exit codes: 0 success, 1 input error, 2 verification-suite failure.
"""

from __future__ import annotations

import json
import sys
from contextlib import contextmanager
from pathlib import Path

import click
import httpx

from .generators import GENERATORS

DEFAULT_TIMEOUT = 3600.0


@contextmanager
def api_client(url: str | None):
    if url:
        with httpx.Client(base_url=url, timeout=DEFAULT_TIMEOUT) as client:
            yield client
        return
    import warnings

    with warnings.catch_warnings():
        # this starlette version warns about its httpx-backed TestClient
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import create_app

    with TestClient(create_app()) as client:
        yield client


def fail(message: str, code: int = 1):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def check(response: httpx.Response) -> dict:
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        fail(str(detail))
    return response.json()


def parse_gen_args(pairs: tuple[str, ...]) -> dict:
    """KEY=VALUE pairs with int/float coercion; repeatable flag, and
    multiple pairs may be packed into one flag separated by commas
    (e.g. ``--gen-args n=64,p=0.3``)."""
    params = {}
    for pair in (item for raw in pairs for item in raw.split(",") if item):
        key, sep, value = pair.partition("=")
        if not sep or not key:
            fail(f"--gen-args expects KEY=VALUE, got {pair!r}")
        try:
            params[key] = int(value)
        except ValueError:
            try:
                params[key] = float(value)
            except ValueError:
                fail(f"--gen-args value for {key!r} must be numeric, got {value!r}")
    return params


def upload_graph(
    client: httpx.Client,
    graph_file: str | None,
    gen: str | None,
    gen_args: tuple[str, ...],
    seed: int,
) -> str:
    if (graph_file is None) == (gen is None):
        fail("provide exactly one of --graph FILE or --gen KIND")
    if graph_file is not None:
        path = Path(graph_file)
        if not path.is_file():
            fail(f"no such file: {graph_file}")
        body = {"edge_list": path.read_text()}
    else:
        body = {"generator": {"kind": gen, "seed": seed, "params": parse_gen_args(gen_args)}}
    info = check(client.post("/graphs", json=body))
    return info["id"]


def write_json(report: dict, json_path: str | None) -> None:
    if json_path:
        Path(json_path).write_text(json.dumps(report, indent=2) + "\n")


def graph_options(fn):
    fn = click.option("--graph", "graph_file", type=str, default=None, help="edge-list file")(fn)
    fn = click.option(
        "--gen", type=click.Choice(sorted(GENERATORS)), default=None, help="generator kind"
    )(fn)
    fn = click.option(
        "--gen-args", multiple=True, help="generator parameter KEY=VALUE (repeatable)"
    )(fn)
    return fn


def config_options(fn):
    fn = click.option("--seed", type=int, default=0, show_default=True)(fn)
    fn = click.option("--T", "threshold", type=float, default=16.0, show_default=True)(fn)
    fn = click.option("--d", type=float, default=2.0, show_default=True)(fn)
    fn = click.option("--scale", type=float, default=1.0, show_default=True)(fn)
    fn = click.option("--log-base", type=float, default=2.0, show_default=True)(fn)
    return fn


def common_options(fn):
    fn = click.option("--json", "json_path", type=str, default=None, help="write report here")(fn)
    fn = click.option("--url", type=str, default=None, help="base URL of a running server")(fn)
    return fn


def make_config(seed, threshold, d, scale, log_base) -> dict:
    return {"seed": seed, "T": threshold, "d": d, "c_scale": scale, "log_base": log_base}


@click.group()
def main():
    """Local sparse-connected-subgraph queries and experiments."""


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


@main.command()
@click.argument("u", type=int)
@click.argument("v", type=int)
@graph_options
@config_options
@common_options
def query(u, v, graph_file, gen, gen_args, seed, threshold, d, scale, log_base, json_path, url):
    """Decide membership of edge (U, V) in the sparse subgraph."""
    cfg = make_config(seed, threshold, d, scale, log_base)
    with api_client(url) as client:
        gid = upload_graph(client, graph_file, gen, gen_args, seed)
        report = check(
            client.post(f"/graphs/{gid}/query", json={"u": u, "v": v, "config": cfg})
        )
    write_json(report, json_path)
    verdict = "accept" if report["accepted"] else "reject"
    click.echo(
        f"{verdict} edge ({report['u']}, {report['v']})  "
        f"s_hat={report['s_hat']:.6g}  g_star={report['g_star']}  "
        f"below_threshold={report['below_threshold']}  "
        f"probes={report['probes']['total']}"
    )


@main.command()
@graph_options
@config_options
@common_options
@click.option("--out", type=str, default=None, help="write the kept edge list here")
def materialize(
    graph_file, gen, gen_args, seed, threshold, d, scale, log_base, json_path, url, out
):
    """Decide every edge and report the resulting subgraph."""
    cfg = make_config(seed, threshold, d, scale, log_base)
    with api_client(url) as client:
        gid = upload_graph(client, graph_file, gen, gen_args, seed)
        report = check(
            client.post(
                f"/graphs/{gid}/materialize", json={"config": cfg, "include_edges": True}
            )
        )
    if out:
        lines = [f"{report['n']} {report['edge_count']}"]
        lines += [f"{a} {b}" for a, b in report["edges"]]
        Path(out).write_text("\n".join(lines) + "\n")
    write_json(report, json_path)
    click.echo(
        f"kept {report['edge_count']}/{report['input_m']} edges  "
        f"connected={report['connected']}  "
        f"below_threshold={report['below_threshold_count']}  "
        f"mean_probes={report['probes_mean_per_query']:.1f}"
    )


@main.command()
@graph_options
@config_options
@common_options
@click.option(
    "--T-list",
    "t_list",
    default="16,64,256",
    show_default=True,
    help="ascending comma-separated thresholds",
)
@click.option("--num-edges", type=int, default=200, show_default=True)
def scaling(
    graph_file, gen, gen_args, seed, threshold, d, scale, log_base, json_path, url,
    t_list, num_edges,
):
    """Mean probes per query as the threshold T varies."""
    try:
        t_values = [float(t) for t in t_list.split(",") if t.strip()]
    except ValueError:
        fail(f"--T-list must be comma-separated numbers, got {t_list!r}")
    if not t_values or sorted(t_values) != t_values:
        fail("--T-list must be nonempty and ascending")
    cfg = make_config(seed, threshold, d, scale, log_base)
    with api_client(url) as client:
        gid = upload_graph(client, graph_file, gen, gen_args, seed)
        report = check(
            client.post(
                f"/graphs/{gid}/scaling",
                json={"t_values": t_values, "config": cfg, "num_edges": num_edges},
            )
        )
    write_json(report, json_path)
    click.echo(f"{'T':>10}  {'mean_probes':>12}  {'max_probes':>10}")
    for row in report["rows"]:
        click.echo(f"{row['T']:>10.6g}  {row['mean_probes']:>12.1f}  {row['max_probes']:>10.0f}")


@main.command()
@graph_options
@common_options
@click.option("--seed", type=int, default=0, show_default=True)
def oracle(graph_file, gen, gen_args, json_path, url, seed):
    """Exact strong connectivity of every edge (offline oracle)."""
    with api_client(url) as client:
        gid = upload_graph(client, graph_file, gen, gen_args, seed)
        report = check(client.post(f"/graphs/{gid}/oracle"))
    write_json(report, json_path)
    for a, b, s in report["strong_connectivities"]:
        click.echo(f"{a} {b} {s}")


@main.command()
@click.argument("suite")
@click.option("--seed", type=int, default=0, show_default=True)
@common_options
def verify(suite, seed, json_path, url):
    """Run a named verification suite; exit 2 if any check fails."""
    with api_client(url) as client:
        report = check(client.post("/verify", json={"suite": suite, "seed": seed}))
    write_json(report, json_path)
    for chk in report["checks"]:
        status = "PASS" if chk["passed"] else "FAIL"
        click.echo(f"{status}  {report['suite']}.{chk['name']}  {chk['details']}")
    if not report["passed"]:
        sys.exit(2)
    click.echo(f"suite {report['suite']} passed in {report['wall_time']:.1f}s")


@main.command()
@click.option("--gen", type=click.Choice(sorted(GENERATORS)), required=True)
@click.option("--gen-args", multiple=True, help="generator parameter KEY=VALUE (repeatable)")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=str, default=None, help="output file (default stdout)")
@click.option("--url", type=str, default=None)
def generate(gen, gen_args, seed, out, url):
    """Generate a graph and emit its canonical edge list."""
    with api_client(url) as client:
        gid = upload_graph(client, None, gen, gen_args, seed)
        payload = check(client.get(f"/graphs/{gid}/edge-list"))
    text = payload["edge_list"]
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":
    main()

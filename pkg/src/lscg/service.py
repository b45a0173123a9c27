"""HTTP service exposing the subgraph engine over a small JSON API.

Graphs are uploaded once (as edge-list text or a generator spec), stored
in process memory under a content-derived ID, and then queried any number
of times.  Every report echoes the full configuration so that re-running
with the echoed values reproduces the decisions bit for bit.

Endpoints:

* ``GET  /health``
* ``POST /graphs``                 upload or generate a graph
* ``GET  /graphs/{graph_id}``      basic facts
* ``GET  /graphs/{graph_id}/edge-list``  canonical serialization
* ``POST /graphs/{graph_id}/query``        one edge-membership decision
* ``POST /graphs/{graph_id}/materialize``  decide every edge
* ``POST /graphs/{graph_id}/scaling``      probe sweep over thresholds
* ``POST /graphs/{graph_id}/oracle``       exact strong connectivities
* ``POST /verify``                 run a named verification suite
"""

from __future__ import annotations

import hashlib
import time
from typing import Any

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .engine import LscgConfig, graph_is_connected, materialize_subgraph, query_edge
from .generators import GENERATORS, generate
from .graph import EdgeRef, Graph, GraphFormatError, ProbedView, load_edge_list
from .oracle import exact_strong_connectivities
from .suites import SUITE_NAMES, run_suite, scaling_experiment
from .tester import InvalidEdgeError, TesterConfig

REPORT_SCHEMA = 1

# exact oracle cost grows steeply; refuse beyond this many vertices
ORACLE_MAX_N = 512


class ConfigParams(BaseModel):
    """Engine and tester knobs plus the global seed (echoed in reports)."""

    seed: int = 0
    T: float = Field(default=16.0, ge=1.0)
    d: float = Field(default=2.0, ge=0.0)
    c_scale: float = Field(default=1.0, gt=0.0)
    log_base: float = Field(default=2.0, gt=1.0)
    rounds_override: int | None = Field(default=None, ge=1)

    def to_lscg(self) -> LscgConfig:
        return LscgConfig(
            T=self.T,
            tester=TesterConfig(
                d=self.d,
                c_scale=self.c_scale,
                log_base=self.log_base,
                rounds_override=self.rounds_override,
            ),
            seed=self.seed,
        )

    def echo(self) -> dict[str, Any]:
        return self.model_dump()


class GeneratorSpec(BaseModel):
    kind: str
    seed: int = 0
    params: dict[str, Any] = Field(default_factory=dict)


class GraphUpload(BaseModel):
    """Exactly one of ``edge_list`` or ``generator`` must be given."""

    edge_list: str | None = None
    generator: GeneratorSpec | None = None


class GraphInfo(BaseModel):
    id: str
    n: int
    m: int
    connected: bool


class ProbeReport(BaseModel):
    degree_probes: int
    neighbor_probes: int
    adjacency_probes: int
    total: int


class QueryRequest(BaseModel):
    u: int
    v: int
    config: ConfigParams = Field(default_factory=ConfigParams)


class QueryResponse(BaseModel):
    schema_version: int = Field(default=REPORT_SCHEMA, alias="schema")
    graph_id: str
    u: int
    v: int
    config: dict[str, Any]
    accepted: bool
    s_hat: float
    g_star: float | None
    below_threshold: bool
    tester_calls: int
    probes: ProbeReport

    model_config = {"populate_by_name": True}


class MaterializeRequest(BaseModel):
    config: ConfigParams = Field(default_factory=ConfigParams)
    include_edges: bool = True


class MaterializeResponse(BaseModel):
    schema_version: int = Field(default=REPORT_SCHEMA, alias="schema")
    graph_id: str
    config: dict[str, Any]
    n: int
    input_m: int
    edge_count: int
    connected: bool
    input_connected: bool
    below_threshold_count: int
    tester_accepts: int
    tester_rejects: int
    probes_total: ProbeReport
    probes_max_per_query: int
    probes_mean_per_query: float
    wall_time: float
    edges: list[tuple[int, int]] | None = None

    model_config = {"populate_by_name": True}


class ScalingRequest(BaseModel):
    t_values: list[float]
    config: ConfigParams = Field(default_factory=ConfigParams)
    num_edges: int = Field(default=200, ge=1)


class ScalingResponse(BaseModel):
    schema_version: int = Field(default=REPORT_SCHEMA, alias="schema")
    graph_id: str
    config: dict[str, Any]
    rows: list[dict[str, float]]
    wall_time: float

    model_config = {"populate_by_name": True}


class OracleResponse(BaseModel):
    schema_version: int = Field(default=REPORT_SCHEMA, alias="schema")
    graph_id: str
    strong_connectivities: list[tuple[int, int, int]]

    model_config = {"populate_by_name": True}


class VerifyRequest(BaseModel):
    suite: str
    seed: int = 0
    overrides: dict[str, int] = Field(default_factory=dict)


class VerifyResponse(BaseModel):
    schema_version: int = Field(default=REPORT_SCHEMA, alias="schema")
    suite: str
    seed: int
    passed: bool
    wall_time: float
    checks: list[dict[str, Any]]

    model_config = {"populate_by_name": True}


def graph_id_of(graph: Graph) -> str:
    """Content hash of the canonical edge-list serialization."""
    digest = hashlib.blake2b(graph.to_edge_list_text().encode(), digest_size=16)
    return digest.hexdigest()


def create_app() -> FastAPI:
    app = FastAPI(title="lscg", version="0.1.0")
    graphs: dict[str, Graph] = {}
    app.state.graphs = graphs

    def get_graph(graph_id: str) -> Graph:
        graph = graphs.get(graph_id)
        if graph is None:
            raise HTTPException(status_code=404, detail=f"unknown graph {graph_id!r}")
        return graph

    @app.get("/health")
    def health() -> dict[str, Any]:
        return {"status": "ok", "graphs": len(graphs)}

    @app.post("/graphs", response_model=GraphInfo)
    def upload_graph(body: GraphUpload) -> GraphInfo:
        if (body.edge_list is None) == (body.generator is None):
            raise HTTPException(
                status_code=400,
                detail="provide exactly one of edge_list or generator",
            )
        try:
            if body.edge_list is not None:
                graph = load_edge_list(body.edge_list)
            else:
                spec = body.generator
                if spec.kind not in GENERATORS:
                    raise ValueError(
                        f"unknown generator {spec.kind!r}; choose from {sorted(GENERATORS)}"
                    )
                graph = generate(spec.kind, seed=spec.seed, **spec.params)
        except (GraphFormatError, ValueError, TypeError, RuntimeError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        gid = graph_id_of(graph)
        graphs[gid] = graph
        return GraphInfo(id=gid, n=graph.n, m=graph.m, connected=graph_is_connected(graph))

    @app.get("/graphs/{graph_id}", response_model=GraphInfo)
    def graph_info(graph_id: str) -> GraphInfo:
        graph = get_graph(graph_id)
        return GraphInfo(
            id=graph_id, n=graph.n, m=graph.m, connected=graph_is_connected(graph)
        )

    @app.get("/graphs/{graph_id}/edge-list")
    def graph_edge_list(graph_id: str) -> dict[str, str]:
        return {"edge_list": get_graph(graph_id).to_edge_list_text()}

    @app.post("/graphs/{graph_id}/query", response_model=QueryResponse, response_model_by_alias=True)
    def query(graph_id: str, body: QueryRequest) -> QueryResponse:
        graph = get_graph(graph_id)
        try:
            edge = EdgeRef.of(body.u, body.v)
            decision = query_edge(ProbedView(graph), edge, body.config.to_lscg())
        except (InvalidEdgeError, ValueError, IndexError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return QueryResponse(
            graph_id=graph_id,
            u=edge.a,
            v=edge.b,
            config=body.config.echo(),
            accepted=decision.accepted,
            s_hat=decision.s_hat,
            g_star=decision.g_star,
            below_threshold=decision.below_threshold,
            tester_calls=decision.tester_calls,
            probes=ProbeReport(**decision.probes.as_dict()),
        )

    @app.post(
        "/graphs/{graph_id}/materialize",
        response_model=MaterializeResponse,
        response_model_by_alias=True,
    )
    def materialize(graph_id: str, body: MaterializeRequest) -> MaterializeResponse:
        graph = get_graph(graph_id)
        start = time.monotonic()
        result = materialize_subgraph(graph, body.config.to_lscg())
        wall = time.monotonic() - start
        return MaterializeResponse(
            graph_id=graph_id,
            config=body.config.echo(),
            n=result.n,
            input_m=result.input_m,
            edge_count=result.edge_count,
            connected=result.connected,
            input_connected=result.input_connected,
            below_threshold_count=result.below_threshold_count,
            tester_accepts=result.tester_accepts,
            tester_rejects=result.tester_rejects,
            probes_total=ProbeReport(**result.probes_total.as_dict()),
            probes_max_per_query=result.probes_max_per_query,
            probes_mean_per_query=result.probes_mean_per_query,
            wall_time=wall,
            edges=[(e.a, e.b) for e in result.edges] if body.include_edges else None,
        )

    @app.post(
        "/graphs/{graph_id}/scaling",
        response_model=ScalingResponse,
        response_model_by_alias=True,
    )
    def scaling(graph_id: str, body: ScalingRequest) -> ScalingResponse:
        graph = get_graph(graph_id)
        if sorted(body.t_values) != body.t_values:
            raise HTTPException(status_code=400, detail="t_values must be ascending")
        cfg = body.config.to_lscg()
        start = time.monotonic()
        rows = scaling_experiment(
            graph, body.t_values, cfg.tester, seed=cfg.seed, num_edges=body.num_edges
        )
        return ScalingResponse(
            graph_id=graph_id,
            config=body.config.echo(),
            rows=rows,
            wall_time=time.monotonic() - start,
        )

    @app.post(
        "/graphs/{graph_id}/oracle",
        response_model=OracleResponse,
        response_model_by_alias=True,
    )
    def oracle(graph_id: str) -> OracleResponse:
        graph = get_graph(graph_id)
        if graph.n > ORACLE_MAX_N:
            raise HTTPException(
                status_code=400, detail=f"oracle limited to n <= {ORACLE_MAX_N}"
            )
        strong = exact_strong_connectivities(graph)
        return OracleResponse(
            graph_id=graph_id,
            strong_connectivities=[(e.a, e.b, s) for e, s in sorted(strong.items())],
        )

    @app.post("/verify", response_model=VerifyResponse, response_model_by_alias=True)
    def verify(body: VerifyRequest) -> VerifyResponse:
        if body.suite not in SUITE_NAMES:
            raise HTTPException(
                status_code=400,
                detail=f"unknown suite {body.suite!r}; choose from {SUITE_NAMES}",
            )
        try:
            result = run_suite(body.suite, seed=body.seed, **body.overrides)
        except TypeError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        payload = result.as_dict()
        return VerifyResponse(
            suite=payload["suite"],
            seed=payload["seed"],
            passed=payload["passed"],
            wall_time=payload["wall_time"],
            checks=payload["checks"],
        )

    return app


app = create_app()

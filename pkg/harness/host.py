# harness/host.py

from __future__ import annotations

import logging
from dataclasses import dataclass

from graphs.blowup import BlowupGraph, blowup
from graphs.graph import average_degree
from params.derive import ConstructionParams, target_average_degree
from randgen.seeds import Seed
from verify.construction import EdgeCheck, construct_g0
from verify.star import StarMode, StarVerdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HostReport:
    """
    Statistics of the host G = G0 blown up by r, with the finite-d checks of
    the vertex and degree chain. Failed checks are flags, not errors.
    """

    vertices: int
    edges: int
    g0_edges: int
    average_degree: str
    headline: float
    vertex_bound: float
    vertex_bound_holds: bool
    degree_target: float
    degree_target_holds: bool
    g0_attempts: int
    edge_check: EdgeCheck
    verdict: StarVerdict

    def stats(self) -> dict:
        """The replayable part of the report."""
        return {
            "vertices": self.vertices,
            "edges": self.edges,
            "g0_edges": self.g0_edges,
            "average_degree": self.average_degree,
            "headline": self.headline,
            "vertex_bound": self.vertex_bound,
            "vertex_bound_holds": self.vertex_bound_holds,
            "degree_target": self.degree_target,
            "degree_target_holds": self.degree_target_holds,
            "g0_attempts": self.g0_attempts,
            "edge_check": self.edge_check.to_dict(),
        }


def build_host(
    params: ConstructionParams,
    seed: Seed,
    mode: StarMode | str = StarMode.SAMPLED,
    max_retries: int | None = None,
    **star_options,
) -> tuple[BlowupGraph, HostReport]:
    """
    Builds G0 with construct_g0 and blows it up by r.

    Args:
        params (ConstructionParams): The construction parameters.
        seed (Seed): Experiment seed; only its value affects the host.
        mode (StarMode | str): (star) verification mode for G0.
        max_retries (int | None): Attempts for construct_g0.
        **star_options: Forwarded to verify_star.

    Returns:
        tuple[BlowupGraph, HostReport]: The host and its report.
    """
    logger.info(f"🚀 Building host for d={params.d}, t={params.t}, r={params.r}")
    g0, verdict, edge_check, attempts = construct_g0(params, seed, mode, max_retries, **star_options)
    host = blowup(g0, params.r)

    vertices = host.graph.n
    if vertices != params.d * params.r:
        raise ArithmeticError(f"|V(G)| = {vertices} differs from d*r = {params.d * params.r}")

    eps = params.epsilon
    avg = average_degree(host.graph)
    vertex_bound = (1 - eps / 4) * params.ell * params.t
    targets = target_average_degree(params)
    report = HostReport(
        vertices=vertices,
        edges=host.graph.edge_count,
        g0_edges=g0.edge_count,
        average_degree=f"{avg.numerator}/{avg.denominator}",
        headline=targets.headline,
        vertex_bound=vertex_bound,
        vertex_bound_holds=vertices < vertex_bound,
        degree_target=targets.intermediate,
        degree_target_holds=float(avg) >= targets.intermediate,
        g0_attempts=attempts,
        edge_check=edge_check,
        verdict=verdict,
    )
    if not report.vertex_bound_holds:
        logger.warning(f"  -> |V(G)| = {vertices} is not below (1 - eps/4) ell t = {vertex_bound:.4g}")
    if not report.degree_target_holds:
        logger.warning(
            f"  -> average degree {float(avg):.4g} is below (1 - eps/2)^2 p t ell = {targets.intermediate:.4g}"
        )
    logger.info(f"✅ Host ready: {vertices} vertices, {report.edges} edges, average degree {float(avg):.4g}")
    return host, report

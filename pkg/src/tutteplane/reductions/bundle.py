"""Serializable reduction outputs: a gadget graph file plus a key=value parameter record."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from tutteplane.exact.core import WeightedGraph
from tutteplane.exact.counting import count_perfect_matchings
from tutteplane.exact.frontier import reliability_frontier, z_frontier
from tutteplane.exact.potts import proper_colourings
from tutteplane.io import GraphFile, serialize_graph, serialize_sidecar
from tutteplane.multigraph import Multigraph
from tutteplane.rational import Q, RationalLike
from tutteplane.reductions import colourings, matchings, threedm, threeway

KINDS = ("3waycut", "3dm", "matchings", "colourings", "q0")


@dataclass
class ReductionBundle:
    kind: str
    graph: GraphFile
    params: dict[str, object]
    outcome: dict[str, object] = field(default_factory=dict)

    def files(self) -> tuple[str, str]:
        return serialize_graph(self.graph), serialize_sidecar({"kind": self.kind, **self.params})

    def write(self, prefix: str | Path) -> tuple[Path, Path]:
        graph_text, sidecar_text = self.files()
        prefix = Path(prefix)
        graph_path = prefix.with_suffix(".graph")
        sidecar_path = prefix.with_suffix(".params")
        graph_path.write_text(graph_text)
        sidecar_path.write_text(sidecar_text)
        return graph_path, sidecar_path


def _weighted_file(gw: WeightedGraph, comment: str, terminals: tuple[int, ...] = ()) -> GraphFile:
    return GraphFile(gw.graph, gw.weights, terminals, (comment,))


def three_way_bundle(
    g: Multigraph, terminals: tuple[int, int, int], q: RationalLike, alpha1: RationalLike, alpha2: RationalLike, run: bool
) -> ReductionBundle:
    inst = threeway.ThreeWayCutInstance(g, terminals)
    p = threeway.bedrock_params(g.m, g.n, q, alpha1, alpha2)
    gw = threeway.build_3waycut_gadget(inst, p.beta1, p.beta2)
    params = {
        "q": p.q, "alpha1": p.alpha1, "alpha2": p.alpha2, "k1": p.k1, "k2": p.k2,
        "M": p.M, "delta": p.delta, "beta1": p.beta1, "beta2": p.beta2, "C_of_beta2": p.C_of_beta2,
    }
    bundle = ReductionBundle("3waycut", _weighted_file(gw, "three-way cut gadget: edges at beta1, triangle at beta2", terminals), params)
    if run:
        rec = threeway.recover_cut_count(z_frontier(gw, p.q), p, g.m)
        c, count = threeway.min_3way_cuts(inst)
        bundle.outcome = {"c": rec.c, "N": rec.N, "residual": rec.residual, "bound": Fraction(1, 4),
                          "brute_force_c": c, "brute_force_N": count}
    return bundle


def q0_bundle(gw: WeightedGraph, y: RationalLike, run: bool) -> ReductionBundle:
    inst = threeway.build_q0_stretch_instance(gw, y)
    params = {"y": Q(y), "alpha": inst.alpha, "alpha2": inst.alpha2, "k": inst.k, "scale": inst.scale}
    bundle = ReductionBundle("q0", _weighted_file(inst.graph, "alpha2 edges stretched; constant weight alpha"), params)
    if run:
        r_original = reliability_frontier(gw)
        r_stretched = reliability_frontier(inst.graph)
        bundle.outcome = {"R_original": r_original, "R_stretched": r_stretched,
                          "identity_holds": r_original == inst.scale * r_stretched}
    return bundle


def three_dm_bundle(inst: threedm.ThreeDMInstance, q: RationalLike, alpha1: RationalLike, alpha2: RationalLike, run: bool) -> ReductionBundle:
    p = threedm.three_dm_params(inst, q, alpha1, alpha2)
    gw = threedm.build_fredjaja_graph(inst, p.beta1, p.beta2)
    params = {
        "q": p.q, "alpha1": p.alpha1, "alpha2": p.alpha2, "k1": p.k1, "k2": p.k2,
        "epsilon": p.epsilon, "delta": p.delta, "beta1": p.beta1, "beta2": p.beta2, "Q": p.Q,
        "n": inst.n, "m": inst.m,
    }
    bundle = ReductionBundle("3dm", _weighted_file(gw, "tree edges at beta2, link edges at beta1; root is vertex 1"), params)
    if run:
        count, residual = threedm.recover_3dm_count(z_frontier(gw, p.q), p.q, p.beta1, inst.n, inst.m)
        bundle.outcome = {"N": count, "residual": residual, "bound": Fraction(1, 4), "brute_force_N": threedm.count_3dm(inst)}
    return bundle


def matchings_bundle(g: Multigraph, alpha1: RationalLike, alpha2: RationalLike, run: bool) -> ReductionBundle:
    p = matchings.matching_params(g, alpha1, alpha2)
    gw = matchings.build_h2_matching_gadget(g, p.beta1, p.beta2)
    params = {
        "q": 2, "alpha1": p.alpha1, "alpha2": p.alpha2, "k1": p.k1, "k2": p.k2,
        "epsilon": p.epsilon, "delta": p.delta, "beta1": p.beta1, "beta2": p.beta2, "Q": p.Q,
    }
    bundle = ReductionBundle("matchings", _weighted_file(gw, f"apex is vertex {g.n + 1}; spokes at beta2"), params)
    if run:
        count, residual = matchings.recover_pm_count(z_frontier(gw, 2), p.beta1, g.n // 2)
        bundle.outcome = {"N": count, "residual": residual, "bound": Fraction(1, 4),
                          "brute_force_N": count_perfect_matchings(g)}
    return bundle


def colourings_bundle(g: Multigraph, y: RationalLike, run: bool) -> ReductionBundle:
    y = Q(y)
    colourings.check_instance(g)
    r = colourings.thickening_exponent(g.n, y)
    g_prime = colourings.build_g_prime(g, r)
    params = {"y": y, "r": r, "n": g.n, "epsilon": Fraction(1, 2 ** (g.n * g.n)), "a": g.n + 1, "b": g.n + 2}
    gf = GraphFile(g_prime, None, (g.n + 1, g.n + 2), ("thickened graph with apex vertices a, b; theta gadget attached per bisection step",))
    bundle = ReductionBundle("colourings", gf, params)
    if run:
        search = colourings.three_colouring_search(g, y)
        bundle.outcome = {"P(G;3,0)": search.count, "P(G;2,0)": search.p2, "bisections": search.bisections,
                          "z_low": search.z_low, "z_high": search.z_high,
                          "brute_force": proper_colourings(g, 3)}
    return bundle

"""Synchronous time-stepped swarm simulation with reproducible randomness.

Every node owns a private random stream derived from (master seed, node id),
and initial placement uses a separate stream, so a run is bit-reproducible
from its seed regardless of scheduling. Each step, all nodes read the same
time-t snapshot, consume exactly four normals from their own stream (two for
the step length, two for the heading noise), and move simultaneously.

The per-node work after the draws is elementwise, so it is split into
fixed-size blocks that an optional thread pool may execute concurrently;
the block boundaries never depend on the worker count, which keeps results
bit-identical whether one thread or many are used.
"""

from __future__ import annotations

import copy
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .core import SwarmParams, build_neighborhood, hammer

# Nodes per elementwise work block; fixed so results cannot depend on the
# number of workers.
_BLOCK = 512


@dataclass(frozen=True)
class Box:
    """Axis-aligned placement region."""

    min_x: float
    min_y: float
    max_x: float
    max_y: float

    def __post_init__(self) -> None:
        if not (self.min_x < self.max_x and self.min_y < self.max_y):
            raise ValueError(f"degenerate region {self}")


@dataclass
class SwarmState:
    """One simulation frame: step index, node positions (complex), and the
    per-node random streams.

    ``advance_swarm`` consumes the streams in place and returns a new state
    sharing them; snapshot copies made by ``run`` carry deep-copied streams
    and are therefore resumable.
    """

    t: int
    positions: np.ndarray
    streams: list[np.random.Generator]


@dataclass(frozen=True)
class Metrics:
    t: int
    mean_dist_to_rho: float
    frac_within_eps: float
    mean_pairwise_dist: float
    cluster_count: int


def init_stream(master_seed: int) -> np.random.Generator:
    """Stream used only for the initial placement."""
    return np.random.default_rng(
        np.random.SeedSequence(entropy=master_seed, spawn_key=(0,)))


def node_stream(master_seed: int, node_id: int) -> np.random.Generator:
    """Private stream of one node, keyed by (master seed, node id)."""
    return np.random.default_rng(
        np.random.SeedSequence(entropy=master_seed, spawn_key=(node_id + 1,)))


def init_swarm(params: SwarmParams, master_seed: int, region: Box) -> SwarmState:
    """Place ``n_nodes`` i.i.d. uniform over ``region`` and attach per-node
    streams."""
    rng = init_stream(master_seed)
    u = rng.uniform(size=(params.n_nodes, 2))
    x = region.min_x + u[:, 0] * (region.max_x - region.min_x)
    y = region.min_y + u[:, 1] * (region.max_y - region.min_y)
    positions = x + 1j * y
    streams = [node_stream(master_seed, i) for i in range(params.n_nodes)]
    return SwarmState(t=0, positions=positions, streams=streams)


def default_sigma_const(positions, params: SwarmParams) -> float:
    """Constant speed for environment-off runs: the environment-on speed
    averaged over the given placement, so both modes start comparably fast."""
    d = np.abs(np.asarray(positions, dtype=np.complex128) - params.rho)
    return float(params.c1 * (params.c2 + d.mean()))


def resolve_sigma_const(params: SwarmParams, positions) -> SwarmParams:
    """Fill in ``sigma_const`` from the placement when it is needed but unset."""
    if params.env_enabled or params.sigma_const is not None:
        return params
    return replace(params, sigma_const=default_sigma_const(positions, params))


def advance_swarm(state: SwarmState, params: SwarmParams,
                  workers: int = 1) -> SwarmState:
    """One synchronous step: all nodes read the time-t snapshot, draw, and
    move together. Consumes the state's streams; returns the t+1 state."""
    p = state.positions
    n = p.size

    draws = np.empty((n, 4))
    for i, stream in enumerate(state.streams):
        draws[i] = stream.standard_normal(4)
    u_raw = np.hypot(draws[:, 0], draws[:, 1])
    z = draws[:, 2] + 1j * draws[:, 3]

    if params.social_enabled:
        graph = build_neighborhood(p, params.r)
        i_idx, j_idx = graph.directed_edges()
        hs = hammer(p[j_idx] - p[i_idx], params.s)
        acc = (np.bincount(i_idx, weights=hs.real, minlength=n)
               + 1j * np.bincount(i_idx, weights=hs.imag, minlength=n))
        deg = graph.degrees()
        arg = np.where(deg > 0,
                       (params.w / np.maximum(deg, 1)) * acc + z,
                       z)
    else:
        arg = z

    if params.env_enabled:
        sigma = params.c1 * (params.c2 + np.abs(p - params.rho))
    else:
        if params.sigma_const is None:
            raise ValueError("sigma_const must be set when the environmental "
                             "factor is disabled")
        sigma = np.full(n, float(params.sigma_const))

    new_p = np.empty_like(p)

    def do_block(lo: int, hi: int) -> None:
        v = np.angle(arg[lo:hi])
        v = np.where(v == -np.pi, np.pi, v)
        new_p[lo:hi] = p[lo:hi] + sigma[lo:hi] * u_raw[lo:hi] * np.exp(1j * v)

    spans = [(lo, min(lo + _BLOCK, n)) for lo in range(0, n, _BLOCK)]
    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda span: do_block(*span), spans))
    else:
        for lo, hi in spans:
            do_block(lo, hi)

    return SwarmState(t=state.t + 1, positions=new_p, streams=state.streams)


def compute_metrics(state: SwarmState, params: SwarmParams, eps: float) -> Metrics:
    """Convergence and cohesion summary of one frame.

    Clusters are the connected components of the sensing-radius graph. The
    pairwise mean is over unordered pairs and is 0 for a single node.
    """
    p = state.positions
    d = np.abs(p - params.rho)
    n = p.size
    if n >= 2:
        iu = np.triu_indices(n, k=1)
        pairwise = float(np.abs(p[iu[0]] - p[iu[1]]).mean())
    else:
        pairwise = 0.0
    graph = build_neighborhood(p, params.r)
    return Metrics(
        t=state.t,
        mean_dist_to_rho=float(d.mean()),
        frac_within_eps=float((d <= eps).mean()),
        mean_pairwise_dist=pairwise,
        cluster_count=graph.component_count(),
    )


def _snapshot(state: SwarmState) -> SwarmState:
    return SwarmState(t=state.t,
                      positions=state.positions.copy(),
                      streams=[copy.deepcopy(g) for g in state.streams])


def run(params: SwarmParams, master_seed: int, region: Box, n_steps: int,
        snapshot_stride: int, eps: float = 0.15,
        workers: int = 1) -> list[tuple[SwarmState, Metrics]]:
    """Simulate ``n_steps`` steps, recording (snapshot, metrics) at t = 0,
    every ``snapshot_stride`` steps, and the final step."""
    if n_steps < 0:
        raise ValueError(f"n_steps must be >= 0, got {n_steps}")
    if snapshot_stride < 1:
        raise ValueError(f"snapshot_stride must be >= 1, got {snapshot_stride}")
    state = init_swarm(params, master_seed, region)
    params = resolve_sigma_const(params, state.positions)
    records = [(_snapshot(state), compute_metrics(state, params, eps))]
    for t in range(1, n_steps + 1):
        state = advance_swarm(state, params, workers=workers)
        if t % snapshot_stride == 0 or t == n_steps:
            records.append((_snapshot(state), compute_metrics(state, params, eps)))
    return records


def first_passage(params: SwarmParams, master_seed: int, region: Box,
                  eps: float, frac: float, max_steps: int,
                  workers: int = 1) -> int | None:
    """First step at which the fraction of nodes within ``eps`` of the
    darkest spot reaches ``frac``; None if it never does within
    ``max_steps``."""
    state = init_swarm(params, master_seed, region)
    params = resolve_sigma_const(params, state.positions)
    for t in range(1, max_steps + 1):
        state = advance_swarm(state, params, workers=workers)
        if (np.abs(state.positions - params.rho) <= eps).mean() >= frac:
            return t
    return None

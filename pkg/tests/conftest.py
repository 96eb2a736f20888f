import time

import numpy as np
import pytest

from shinerswarm.density import GridPdf, KernelParams, initial_pdf, propagate

# Reference 1D scenario: walker starting at 5 with c1 = 1, c2 = 0.1.
REF_KERNEL = KernelParams(c1=1.0, c2=0.1)
REF_X0 = 5.0

_REF_TIMING: dict[str, float] = {}


@pytest.fixture(scope="session")
def ref_chain() -> dict[int, GridPdf]:
    """Grid pdfs for t = 1, 2, 3 of the reference scenario on the default
    grid; computed once per session."""
    t0 = time.perf_counter()
    f = initial_pdf(REF_X0, REF_KERNEL)
    chain = {1: f}
    for t in (2, 3):
        f = propagate(f, REF_KERNEL)
        chain[t] = f
    _REF_TIMING["seconds"] = time.perf_counter() - t0
    return chain


@pytest.fixture(scope="session")
def ref_chain_seconds(ref_chain) -> float:
    """Wall-clock cost of building the reference chain."""
    return _REF_TIMING["seconds"]


def grid_bin_masses(f: GridPdf, edges: np.ndarray) -> np.ndarray:
    """Probability mass of a grid pdf in each bin, via the piecewise-linear
    cumulative integral interpolated at the bin edges."""
    z = f.z
    cdf = np.concatenate(
        [[0.0], np.cumsum((f.values[1:] + f.values[:-1]) * 0.5 * f.step)])
    return np.diff(np.interp(edges, z, cdf))


def tv_distance_to_samples(f: GridPdf, samples: np.ndarray,
                           edges: np.ndarray) -> float:
    """Total variation distance between a grid pdf and an empirical sample,
    over the given bins plus a catch-all outside bin."""
    p = grid_bin_masses(f, edges)
    counts, _ = np.histogram(samples, bins=edges)
    q = counts / samples.size
    total_mass = float(np.trapezoid(f.values, f.z))
    p_out = total_mass - p.sum()
    q_out = 1.0 - q.sum()
    return 0.5 * (np.abs(p - q).sum() + abs(p_out - q_out))

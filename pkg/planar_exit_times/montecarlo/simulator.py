"""
Monte Carlo estimates of the expected exit time.

Two estimators are provided. Walk on spheres jumps to a uniform point on the
largest inscribed circle around the current position and adds that circle's
mean exit time d²/2, stopping inside the absorbing shell. Euler discretises
the Brownian path with steps √h·N(0, I) and stops at the first sample outside
the domain.

Paths are simulated in batches, each with its own Philox stream keyed by
(seed, batch index), so results do not depend on the number of workers.
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..domains.geometry import boundary_distance_many, contains, contains_many
from ..domains.grammar import format_domain
from ..errors import AllPathsTruncatedError, InvalidParameterError, PreconditionError
from ..monitoring.metrics import MetricsCollector
from ..schemas.models import DomainSpec, McConfig, McMethod, McResult, Point2, Wedge

logger = logging.getLogger(__name__)

# leading-order overshoot constant of discretely monitored Brownian motion, -ζ(½)/√(2π)
EULER_OVERSHOOT = 0.5826
PROBE_START = Point2(x=1.0, y=0.0)
PROBE_CONFIG = McConfig(method=McMethod.EULER, paths=2000, step=1e-4)


def _batch_generator(seed: int, batch_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(batch_index,))))


def _walk_on_spheres(domain: DomainSpec, start: complex, count: int, cfg: McConfig,
                     rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Accumulated times and truncation flags of `count` walks."""
    z = np.full(count, start, dtype=complex)
    times = np.zeros(count)
    active = np.ones(count, dtype=bool)
    truncated = np.zeros(count, dtype=bool)
    steps = 0
    while active.any():
        idx = np.flatnonzero(active)
        if steps >= cfg.max_steps:
            truncated[idx] = True
            break
        d = boundary_distance_many(domain, z[idx])
        absorbed = d < cfg.shell
        active[idx[absorbed]] = False
        live, radius = idx[~absorbed], d[~absorbed]
        times[live] += 0.5 * radius * radius
        z[live] += radius * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, size=live.size))
        steps += 1
    return times, truncated


def _euler(domain: DomainSpec, start: complex, count: int, cfg: McConfig,
           rng: np.random.Generator, common_noise: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """
    Exit times (step count times h) and truncation flags of `count` Euler paths.

    With common_noise every path draws its increment at every step, so path i
    sees the same Brownian increments in any domain for a given stream.
    """
    z = np.full(count, start, dtype=complex)
    times = np.zeros(count)
    active = np.ones(count, dtype=bool)
    truncated = np.zeros(count, dtype=bool)
    scale = math.sqrt(cfg.step)
    steps = 0
    while active.any():
        idx = np.flatnonzero(active)
        if steps >= cfg.max_steps:
            truncated[idx] = True
            break
        if common_noise:
            noise = rng.standard_normal((2, count))[:, idx]
        else:
            noise = rng.standard_normal((2, idx.size))
        z[idx] += scale * (noise[0] + 1j * noise[1])
        steps += 1
        times[idx] = steps * cfg.step
        active[idx[~contains_many(domain, z[idx])]] = False
    return times, truncated


def _simulate_batch(domain: DomainSpec, start: complex, count: int, cfg: McConfig,
                    batch_index: int, common_noise: bool) -> Tuple[np.ndarray, np.ndarray, float]:
    began = time.perf_counter()
    rng = _batch_generator(cfg.seed, batch_index)
    if cfg.method == McMethod.WALK_ON_SPHERES:
        times, truncated = _walk_on_spheres(domain, start, count, cfg, rng)
    else:
        times, truncated = _euler(domain, start, count, cfg, rng, common_noise)
    return times, truncated, time.perf_counter() - began


def simulate(domain: DomainSpec, start: Point2, cfg: Optional[McConfig] = None,
             metrics: Optional[MetricsCollector] = None, common_noise: bool = False) -> McResult:
    """
    Estimate the expected exit time from start.

    Args:
        domain: Domain specification
        start: Interior starting point
        cfg: Monte Carlo configuration; defaults to McConfig()
        metrics: Optional collector receiving path counts and batch wall times
        common_noise: Euler only; draw increments for every path at every step so
            that runs with the same seed can be compared path by path across domains

    Returns:
        Sample mean over all paths (truncated paths contribute the time
        accumulated up to max_steps) with its standard error

    Raises:
        PreconditionError: start is not interior
        AllPathsTruncatedError: Every path reached max_steps
    """
    cfg = cfg or McConfig()
    if not contains(domain, start):
        raise PreconditionError(f"start ({start.x}, {start.y}) is not interior to {domain.kind}")

    sizes = [min(cfg.batch_size, cfg.paths - first) for first in range(0, cfg.paths, cfg.batch_size)]
    logger.debug(f"Simulating {cfg.paths} {cfg.method.value} paths in {len(sizes)} batches")

    def run(batch_index: int):
        return _simulate_batch(domain, start.z, sizes[batch_index], cfg, batch_index, common_noise)

    if cfg.workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
            batches = list(executor.map(run, range(len(sizes))))
    else:
        batches = [run(i) for i in range(len(sizes))]

    times = np.concatenate([b[0] for b in batches])
    truncated = np.concatenate([b[1] for b in batches])
    truncated_count = int(truncated.sum())
    mean = float(np.mean(times))

    if metrics is not None:
        labels = {"method": cfg.method.value, "domain": domain.kind}
        metrics.increment_counter("mc.paths", int(times.size), labels)
        metrics.increment_counter("mc.truncated_paths", truncated_count, labels)
        for _, _, elapsed in batches:
            metrics.record_histogram("mc.batch_seconds", elapsed, labels)

    if truncated_count == times.size:
        raise AllPathsTruncatedError(
            f"all {times.size} paths reached max_steps={cfg.max_steps} in {format_domain(domain)}",
            truncated_mean=mean,
        )

    std_error = float(np.std(times, ddof=1) / math.sqrt(times.size))
    if cfg.method == McMethod.WALK_ON_SPHERES:
        bias_bound = 0.5 * cfg.shell ** 2
    else:
        bias_bound = EULER_OVERSHOOT * math.sqrt(cfg.step) * math.sqrt(2.0 * max(mean, 0.0))
    return McResult(
        mean=mean,
        std_error=std_error,
        paths_used=int(times.size),
        truncated_paths=truncated_count,
        bias_bound=bias_bound,
        method=cfg.method,
    )


def wedge_divergence_probe(p: float, caps: Sequence[int], cfg: Optional[McConfig] = None,
                           start: Point2 = PROBE_START) -> List[float]:
    """
    Truncated-mean exit times from the wedge |arg z| < πp/2 for increasing step caps.

    The Euler estimator is always used, so a cap of N steps truncates time at
    N·h. Every cap reuses the same seed and each path follows the same
    trajectory up to the smaller cap, making the sequence non-decreasing. Paths
    draw common noise, so runs for two values of p with the same seed are
    coupled path by path and the wider wedge never exits first. For
    p < ½ it settles near ½(sec πp - 1); for p ≥ ½ it keeps growing.

    Args:
        p: Wedge parameter, 0 < p ≤ 1
        caps: max_steps values
        cfg: Base configuration, PROBE_CONFIG by default; max_steps is replaced by each cap
        start: Starting point, by default z = 1
    """
    if not 0 < p <= 1:
        raise InvalidParameterError(f"wedge parameter must lie in (0, 1], got {p}")
    cfg = cfg or PROBE_CONFIG
    domain = Wedge(p=p)
    estimates = []
    for cap in caps:
        capped = cfg.model_copy(update={"max_steps": int(cap), "method": McMethod.EULER})
        try:
            estimates.append(simulate(domain, start, capped, common_noise=True).mean)
        except AllPathsTruncatedError as e:
            estimates.append(e.truncated_mean)
        logger.debug(f"Wedge p={p} cap={cap}: truncated mean {estimates[-1]:.6g}")
    return estimates

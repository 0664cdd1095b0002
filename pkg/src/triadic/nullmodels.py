"""Degree-preserving random affiliation networks.

Samples come from a Markov chain of checkerboard swaps
``(i, a), (j, b) -> (i, b), (j, a)``, accepted only when both new edges are
absent, so actor and event degrees are preserved and the graph stays
simple.  Randomness comes from numpy's PCG64 bit generator, seeded
explicitly, which makes runs reproducible bit for bit.
"""

from __future__ import annotations

import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bigraph import BipartiteGraph
from .census import full_census
from .errors import DataError, UndefinedStatistic
from .wedges import Formulation, WedgeScheme, census_cc, global_cc


@dataclass(frozen=True)
class DegreeSequencePair:
    actor_degrees: tuple
    event_degrees: tuple

    @classmethod
    def of(cls, graph: BipartiteGraph):
        return cls(tuple(sorted(graph.actor_degrees())), tuple(sorted(graph.event_degrees())))


def _rng(seed):
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


class SwapChain:
    """Checkerboard-swap chain started at ``graph``."""

    def __init__(self, graph: BipartiteGraph, seed=0):
        if graph.n_attendance < 2:
            raise DataError("randomisation needs at least two attendance edges")
        self._template = graph
        self._edges = [
            (i, x) for i, events in enumerate(graph._act_ev) for x in sorted(events)
        ]
        self._present = set(self._edges)
        self._rng = _rng(seed)
        self.attempted = 0
        self.rejected = 0

    def run(self, swaps: int, batch: int = 4096):
        """Attempt ``swaps`` swaps; return the number accepted."""
        edges, present = self._edges, self._present
        m = len(edges)
        accepted = 0
        left = swaps
        while left > 0:
            draws = self._rng.integers(0, m, size=(min(batch, left), 2))
            left -= len(draws)
            for p, q in draws.tolist():
                i, a = edges[p]
                j, b = edges[q]
                if i == j or a == b or (i, b) in present or (j, a) in present:
                    continue
                present.difference_update(((i, a), (j, b)))
                present.update(((i, b), (j, a)))
                edges[p] = (i, b)
                edges[q] = (j, a)
                accepted += 1
        self.attempted += swaps
        self.rejected += swaps - accepted
        return accepted

    def graph(self) -> BipartiteGraph:
        g = self._template
        attendance = [(g.actors[i], g.events[x]) for i, x in self._edges]
        return BipartiteGraph(g.actors, g.events, attendance, g.event_time)


def randomize(graph: BipartiteGraph, swaps: int, seed=0) -> BipartiteGraph:
    """Apply ``swaps`` attempted checkerboard swaps; failed attempts are skipped."""
    chain = SwapChain(graph, seed)
    chain.run(swaps)
    return chain.graph()


@dataclass(frozen=True)
class NullSummary:
    mean: float
    std: float
    undefined_draws: int
    samples: int

    def to_json(self):
        return {
            "mean": self.mean,
            "std": self.std,
            "undefined_draws": self.undefined_draws,
            "samples": self.samples,
        }


def _statistic(graph, scheme):
    if scheme.formulation is Formulation.CLOSURE_RATE and graph.n_actors >= 3:
        return census_cc(full_census(graph), scheme)
    return global_cc(graph, scheme)


def _run_chain(graph, scheme, n_samples, burn_in, seed):
    chain = SwapChain(graph, seed)
    values, undefined = [], 0
    chain.run(burn_in)
    for _ in range(n_samples):
        try:
            values.append(_statistic(chain.graph(), scheme))
        except UndefinedStatistic:
            undefined += 1
        chain.run(burn_in)
    return values, undefined


def null_values(graph, scheme, samples, burn_in=None, seed=0, chains=1, threads=None):
    """Draw ``samples`` statistics from ``chains`` independent swap chains.

    ``burn_in`` swaps are run before the first draw and between draws
    (default ``10 * |attendance|``).  Chain seeds are spawned from ``seed``
    and results are concatenated in chain order, so the output does not
    depend on ``threads``.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if chains < 1:
        raise ValueError("chains must be positive")
    if burn_in is None:
        burn_in = 10 * graph.n_attendance
    seeds = np.random.SeedSequence(seed).spawn(chains)
    quota = [samples // chains + (c < samples % chains) for c in range(chains)]
    jobs = [(graph, scheme, quota[c], burn_in, seeds[c]) for c in range(chains) if quota[c]]
    if threads and threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: _run_chain(*job), jobs))
    else:
        results = [_run_chain(*job) for job in jobs]
    values = [v for vals, _ in results for v in vals]
    undefined = sum(u for _, u in results)
    return values, undefined


def c_rand(graph: BipartiteGraph, scheme: WedgeScheme, samples: int, burn_in=None,
           seed=0, chains=1, threads=None) -> NullSummary:
    """Mean and standard deviation of ``scheme`` over degree-preserving samples.

    Undefined draws are excluded and counted.  The standard deviation is
    the sample (n - 1) version, 0 for a single draw.
    """
    values, undefined = null_values(graph, scheme, samples, burn_in, seed, chains, threads)
    if not values:
        raise UndefinedStatistic(f"all {samples} null draws were undefined")
    mean = sum(values, Fraction(0)) / len(values)
    std = statistics.stdev(values) if len(values) > 1 else 0
    return NullSummary(float(mean), float(std), undefined, samples)


def corrected_ratio(graph, scheme, samples, **kwargs) -> float:
    """Observed coefficient over its null-model mean."""
    summary = c_rand(graph, scheme, samples, **kwargs)
    if summary.mean == 0:
        raise UndefinedStatistic("null-model mean is zero")
    return float(global_cc(graph, scheme)) / summary.mean

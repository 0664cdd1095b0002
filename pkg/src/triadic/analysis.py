"""Strong triadic closure and walk-based centrality on affiliation networks."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import comb
from typing import NamedTuple

import numpy as np
from scipy import sparse

from .bigraph import BipartiteGraph
from .errors import ConvergenceError, UndefinedStatistic


class StcRow(NamedTuple):
    weak_ties: int
    triples: int
    probability: Fraction


def _strength_table(g: BipartiteGraph):
    """Per wedge strength: ``[triples, weakly tied triples, sum of w_ik]``.

    Strength of the ordered triple ``(i, j, k)`` is the product of the
    events ``i, j`` share without ``k`` and those ``j, k`` share without
    ``i``.  Every ordered triple of distinct actors is tallied; those
    outside a center's neighborhood have strength 0 and are added in bulk.
    """
    n = g.n_actors
    table = defaultdict(lambda: [0, 0, 0])
    seen = weak_seen = shared_seen = 0
    for j in range(n):
        nbrs = sorted(g._neighbors[j])
        for i in nbrs:
            for k in nbrs:
                if i == k:
                    continue
                w3 = g._w3(i, j, k)
                s = (g._w(i, j) - w3) * (g._w(j, k) - w3)
                w_ik = g._w(i, k)
                row = table[s]
                row[0] += 1
                row[1] += w_ik > 0
                row[2] += w_ik
                seen += 1
                weak_seen += w_ik > 0
                shared_seen += w_ik
    # each tied pair {i, k} appears in 2 (n - 2) ordered triples
    weak_all = sum(2 * (n - 2) for _ in g._pair_weights)
    shared_all = sum(2 * (n - 2) * w for w in g._pair_weights.values())
    rest = 6 * comb(n, 3) - seen
    if rest:
        row = table[0]
        row[0] += rest
        row[1] += weak_all - weak_seen
        row[2] += shared_all - shared_seen
    return {s: tuple(v) for s, v in sorted(table.items()) if v[0]}


def stc_profile(graph: BipartiteGraph, max_s: int) -> dict:
    """Probability of a weak tie ``i - k`` given the strength of ``(i, j, k)``.

    Returns ``{s: StcRow(weak_ties, triples, probability)}`` for strengths
    ``0 <= s <= max_s`` that occur.
    """
    return {
        s: StcRow(weak, triples, Fraction(weak, triples))
        for s, (triples, weak, _) in _strength_table(graph).items()
        if s <= max_s
    }


def expected_shared_events(graph: BipartiteGraph, max_s: int) -> dict:
    """Mean number of events ``i`` and ``k`` share, by strength of ``(i, j, k)``."""
    return {
        s: Fraction(shared, triples)
        for s, (triples, _, shared) in _strength_table(graph).items()
        if s <= max_s
    }


# -- centrality ---------------------------------------------------------------

MODES = ("bipartite", "projection")


def incidence_matrix(graph: BipartiteGraph):
    rows, cols = [], []
    for i, events in enumerate(graph._act_ev):
        for x in sorted(events):
            rows.append(i)
            cols.append(x)
    data = np.ones(len(rows))
    return sparse.csr_matrix((data, (rows, cols)), shape=(graph.n_actors, graph.n_events))


def _projection_matrix(graph):
    inc = incidence_matrix(graph)
    coattend = (inc @ inc.T).tolil()
    coattend.setdiag(0)
    return coattend.tocsr()


def _unit(vec, what):
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise UndefinedStatistic(f"{what}: all scores are zero")
    return vec / norm


def _as_scores(graph, vec):
    return {a: float(v) for a, v in zip(graph.actors, vec)}


def walk_centrality(graph: BipartiteGraph, ell: int, mode: str = "bipartite") -> dict:
    """Unit-normalised count of walks of length 1..ell from each actor.

    In ``bipartite`` mode walks run through the affiliation graph, so
    ``ell=1`` gives event counts.  ``projection`` mode walks the weighted
    actor projection instead.  Length-0 walks are not counted.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    if graph.n_actors == 0:
        raise UndefinedStatistic("walk centrality of an empty graph")
    if mode == "bipartite":
        inc = incidence_matrix(graph)
        actors = np.ones(graph.n_actors)
        events = np.ones(graph.n_events)
        total = np.zeros(graph.n_actors)
        for _ in range(ell):
            actors, events = inc @ events, inc.T @ actors
            total += actors
    elif mode == "projection":
        adj = _projection_matrix(graph)
        x = np.ones(graph.n_actors)
        total = np.zeros(graph.n_actors)
        for _ in range(ell):
            x = adj @ x
            total += x
    else:
        raise ValueError(f"mode must be one of {MODES}")
    return _as_scores(graph, _unit(total, f"{ell}-walk centrality"))


def power_iteration(matrix, start, tol=1e-12, max_iter=100_000):
    """Leading eigenvector of a symmetric positive semi-definite matrix.

    Stops when successive unit iterates differ by less than ``tol`` in
    Euclidean norm.
    """
    x = _unit(np.asarray(start, dtype=float), "power iteration start")
    for it in range(1, max_iter + 1):
        y = matrix @ x
        norm = np.linalg.norm(y)
        if norm == 0:
            raise UndefinedStatistic("eigenvector centrality: matrix annihilates start vector")
        y /= norm
        if np.linalg.norm(y - x) < tol:
            return y
        x = y
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps", max_iter)


def eigen_centrality(graph: BipartiteGraph, mode: str = "bipartite",
                     tol: float = 1e-12, max_iter: int = 100_000) -> dict:
    """Actor part of the leading adjacency eigenvector, unit-normalised.

    For the bipartite adjacency ``[[0, B], [B^T, 0]]`` the actor block of the
    Perron vector is the leading eigenvector of ``B B^T``.  Iterating on
    that positive semi-definite block avoids the +/-lambda oscillation of
    the bipartite spectrum.  Disconnected graphs are not reweighted by
    component.
    """
    if graph.n_attendance == 0:
        raise UndefinedStatistic("eigenvector centrality needs at least one attendance")
    if mode == "bipartite":
        inc = incidence_matrix(graph)
        op = (inc @ inc.T).tocsr()
    elif mode == "projection":
        adj = _projection_matrix(graph)
        if adj.nnz == 0:
            raise UndefinedStatistic("eigenvector centrality: projection has no edges")
        # shift by the largest weighted degree so the spectrum is non-negative
        shift = float(abs(adj).sum(axis=1).max())
        op = (adj + shift * sparse.identity(graph.n_actors, format="csr")).tocsr()
    else:
        raise ValueError(f"mode must be one of {MODES}")
    vec = power_iteration(op, np.ones(graph.n_actors), tol=tol, max_iter=max_iter)
    return _as_scores(graph, vec)


def corrected_centrality(graph: BipartiteGraph, ell: int, mode: str = "bipartite") -> dict:
    """``c_inf - c_ell``: influence carried by walks longer than ``ell``.

    Entries may be negative; the difference is not renormalised.
    """
    c_inf = eigen_centrality(graph, mode=mode)
    c_ell = walk_centrality(graph, ell, mode=mode)
    return {a: c_inf[a] - c_ell[a] for a in graph.actors}

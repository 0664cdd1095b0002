"""Dynamic triadic closure on time-labelled affiliation networks."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import inf

from .bigraph import BipartiteGraph, Projection, projection
from .errors import DataError, UndefinedStatistic


def timed_projection(graph: BipartiteGraph) -> Projection:
    """Projection whose every edge carries its earliest shared-event time."""
    _require_times(graph)
    return projection(graph)


def _require_times(graph):
    missing = [e for e in graph.events if e not in graph.event_time]
    if missing:
        raise DataError(f"{len(missing)} events lack a time, e.g. {missing[0]!r}")


def _first_times(graph):
    first = {}
    for x, members in enumerate(graph._ev_act):
        t = graph.event_time[graph.events[x]]
        for pair in combinations(sorted(members), 2):
            if t < first.get(pair, inf):
                first[pair] = t
    return first


def closure_counts(graph: BipartiteGraph):
    """``(closed, qualifying)`` triad counts behind :func:`dynamic_closure`."""
    _require_times(graph)
    first = _first_times(graph)
    nbrs = graph._neighbors

    def t(i, j):
        return first.get((i, j) if i < j else (j, i), inf)

    closed = qualifying = 0
    for j in range(graph.n_actors):
        for i, k in combinations(sorted(nbrs[j]), 2):
            if k in nbrs[i] and j > i:
                continue
            _, t2, t3 = sorted((t(i, j), t(j, k), t(i, k)))
            if t3 == inf:
                qualifying += 1
            elif t3 > t2:
                qualifying += 1
                closed += 1
    return closed, qualifying


def dynamic_closure(graph: BipartiteGraph) -> Fraction:
    """Share of once-open triads that later close.

    Each projection edge takes the time of the earliest event behind it.
    A triad qualifies when, at some time, exactly two of its edges exist:
    either it never gains a third edge, or its last edge appears strictly
    after the second.  It is closed in the latter case.  Triads whose last
    two edges appear together never show an open 2-path and are skipped.
    """
    closed, qualifying = closure_counts(graph)
    if not qualifying:
        raise UndefinedStatistic("dynamic closure: no triad ever has an open 2-path")
    return Fraction(closed, qualifying)

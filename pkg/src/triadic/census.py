"""Triad classification and the full, structural, and simple triad censuses.

A triad (three actors plus every event at least two of them attended) is
classified by ``(mu, w)``: ``w`` counts events attended by all three and
``mu`` is the descending triple of per-pair counts of events attended by
exactly that pair.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from math import comb
from types import MappingProxyType
from typing import Mapping, NamedTuple

from .bigraph import BipartiteGraph
from .errors import DataError, EmptyCensusError


class TriadClass(NamedTuple):
    mu: tuple
    w: int

    @property
    def key(self):
        """Export key of the form ``"mu1.mu2.mu3-w"``."""
        return "{}.{}.{}-{}".format(*self.mu, self.w)

    @classmethod
    def from_key(cls, key):
        try:
            head, w = key.split("-")
            mu = tuple(int(x) for x in head.split("."))
            return make_class(mu, int(w))
        except ValueError:
            raise DataError(f"bad triad class key {key!r}") from None

    @property
    def exclusive_pairs(self):
        return sum(1 for m in self.mu if m > 0)


def make_class(mu, w):
    mu = tuple(mu)
    if len(mu) != 3 or any(m < 0 for m in mu) or w < 0:
        raise DataError(f"invalid triad class {mu!r}, {w!r}")
    return TriadClass(tuple(sorted(mu, reverse=True)), int(w))


def _class_from_weights(w_ij, w_jk, w_ik, w_ijk):
    mu = sorted((w_ij - w_ijk, w_jk - w_ijk, w_ik - w_ijk), reverse=True)
    return TriadClass(tuple(mu), w_ijk)


def _classify(g, i, j, k):
    return _class_from_weights(g._w(i, j), g._w(j, k), g._w(i, k), g._w3(i, j, k))


def classify_triad(graph: BipartiteGraph, p, q, r) -> TriadClass:
    """Isomorphism class of the triad scheduled by actors ``p, q, r``."""
    i, j, k = graph._distinct_indices(p, q, r)
    return _classify(graph, i, j, k)


class FullCensus:
    """Sparse tally of triads per :class:`TriadClass`.

    Zero tallies are omitted; indexing a missing class returns 0.
    """

    def __init__(self, tallies: Mapping[TriadClass, int], n_actors: int):
        self.tallies = MappingProxyType({c: t for c, t in tallies.items() if t})
        self.n_actors = n_actors

    def __getitem__(self, cls):
        return self.tallies.get(cls, 0)

    def __eq__(self, other):
        if not isinstance(other, FullCensus):
            return NotImplemented
        return self.n_actors == other.n_actors and dict(self.tallies) == dict(other.tallies)

    def __repr__(self):
        body = ", ".join(f"{c.key}: {t}" for c, t in self.items())
        return f"FullCensus({{{body}}}, n_actors={self.n_actors})"

    @property
    def total(self):
        return sum(self.tallies.values())

    def items(self):
        """Classes with tallies, in partition-index order then by ``w``."""
        return sorted(self.tallies.items(), key=lambda kv: (index_partition(kv[0].mu), kv[0].w))

    def to_json(self):
        return {c.key: t for c, t in self.items()}

    @classmethod
    def from_json(cls, data, n_actors=None):
        tallies = {TriadClass.from_key(k): int(v) for k, v in data.items()}
        if n_actors is None:
            n_actors = _actors_for_total(sum(tallies.values()))
        return cls(tallies, n_actors)

    def to_matrix(self):
        """Dense layout: rows are partitions in index order, columns are ``w``.

        Returns ``(partitions, matrix)``.
        """
        top = max((c.mu[0] for c in self.tallies), default=0)
        wmax = max((c.w for c in self.tallies), default=0)
        rows = [unindex_partition(r) for r in range(1, comb(top + 3, 3) + 1)]
        matrix = [[self[TriadClass(mu, w)] for w in range(wmax + 1)] for mu in rows]
        return rows, matrix


def _actors_for_total(total):
    n = 3
    while comb(n, 3) < total:
        n += 1
    if comb(n, 3) != total:
        raise DataError(f"census total {total} is not a binomial coefficient C(n, 3)")
    return n


class StructuralCensus(NamedTuple):
    """Tallies ``t[x][y]``: ``x`` pairs with an exclusive event, ``y`` any inclusive event."""

    t: tuple

    @property
    def total(self):
        return sum(sum(row) for row in self.t)

    def to_json(self):
        return [list(row) for row in self.t]


class SimpleCensus(NamedTuple):
    """Projection triads by number of edges."""

    s0: int
    s1: int
    s2: int
    s3: int

    @property
    def total(self):
        return sum(self)


def full_census(graph: BipartiteGraph) -> FullCensus:
    """Full triad census.

    Triads with two or more projection edges are enumerated from each
    center's neighbor pairs; single-edge and empty triads are counted
    arithmetically, so the cost scales with the number of 2-paths rather
    than with C(n, 3).
    """
    n = graph.n_actors
    if n < 3:
        raise EmptyCensusError(f"census needs at least 3 actors, got {n}")
    nbrs = graph._neighbors
    tallies = Counter()
    connected = 0
    for j in range(n):
        for i, k in combinations(sorted(nbrs[j]), 2):
            # triangles are met once per vertex; keep the visit from the smallest
            if k in nbrs[i] and j > i:
                continue
            tallies[_classify(graph, i, j, k)] += 1
            connected += 1
    for (i, j), w in graph._pair_weights.items():
        lone = n - len(nbrs[i] | nbrs[j])
        if lone:
            tallies[TriadClass((w, 0, 0), 0)] += lone
            connected += lone
    tallies[TriadClass((0, 0, 0), 0)] += comb(n, 3) - connected
    return FullCensus(tallies, n)


def structural_census(census: FullCensus) -> StructuralCensus:
    t = [[0, 0] for _ in range(4)]
    for cls, tally in census.tallies.items():
        t[cls.exclusive_pairs][min(cls.w, 1)] += tally
    return StructuralCensus(tuple(tuple(row) for row in t))


def simple_census(census: FullCensus) -> SimpleCensus:
    s = [0, 0, 0, 0]
    for cls, tally in census.tallies.items():
        s[3 if cls.w > 0 else cls.exclusive_pairs] += tally
    return SimpleCensus(*s)


# -- partition indexing --------------------------------------------------------
#
# A partition mu1 >= mu2 >= mu3 >= 0 maps to the 3-subset
# {mu3 + 1, mu2 + 2, mu1 + 3}, which is then ranked in revolving-door order.
# The revolving-door order on k-subsets of [n] begins with the order on
# k-subsets of [n - 1], so the rank does not depend on n.


def index_partition(mu, n=None) -> int:
    """1-based revolving-door index of a partition with at most three parts."""
    m1, m2, m3 = _check_partition(mu)
    if n is not None and m1 > n:
        raise DataError(f"partition {tuple(mu)} has a part larger than {n}")
    t1, t2, t3 = m3 + 1, m2 + 2, m1 + 3
    return comb(t3, 3) - comb(t2, 2) + t1


def unindex_partition(index: int, n=None) -> tuple:
    """Inverse of :func:`index_partition`."""
    if not isinstance(index, int) or index < 1:
        raise DataError(f"partition index must be a positive integer, got {index!r}")
    if n is not None and index > comb(n + 3, 3):
        raise DataError(f"index {index} exceeds C({n + 3}, 3)")
    r = index - 1
    subset = []
    for size in (3, 2, 1):
        x = size - 1
        while comb(x + 1, size) <= r:
            x += 1
        subset.append(x + 1)
        r = comb(x + 1, size) - 1 - r
    t3, t2, t1 = subset
    return (t3 - 3, t2 - 2, t1 - 1)


def _check_partition(mu):
    mu = tuple(mu)
    if len(mu) != 3 or not all(isinstance(m, int) for m in mu):
        raise DataError(f"expected three integer parts, got {mu!r}")
    if not mu[0] >= mu[1] >= mu[2] >= 0:
        raise DataError(f"parts must be non-increasing and non-negative, got {mu!r}")
    return mu

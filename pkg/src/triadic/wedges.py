"""A parameterised family of affiliation-network clustering coefficients.

A *wedge* at the ordered actor triple ``(i, j, k)`` (center ``j``) is a map
of the 4-path ``i - e1 - j - e2 - k`` into the graph; an *alcove* is a map of
the 6-cycle that adds ``k - e3 - i``.  A wedge is closed when it extends to
an alcove.  A :class:`WedgeScheme` fixes which maps count:

* category -- ``ALL`` maps, ``INJECTIVE`` maps (distinct events), or
  ``INDUCED`` injections (no event touches the opposite actor);
* congruence -- ``NONE`` counts every map, ``STRUCTURAL`` identifies maps
  whose events are attended by the same subsets of ``{i, j, k}``, ``ACTOR``
  identifies all maps on the same actor triple;
* formulation -- ``CLOSURE_RATE`` (closed wedges / wedges) or
  ``ALCOVE_RATIO`` (alcoves / wedges).

Within the triad at ``(i, j, k)`` every relevant event is of one of four
types: exclusive to ``ij`` (``a`` of them), to ``jk`` (``b``), to ``ik``
(``c``), or inclusive (``w``).  Whether a map extends depends only on the
types of its events, so all counts follow from ``(a, b, c, w)`` by summing
over type patterns.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import perm
from typing import NamedTuple

from .bigraph import BipartiteGraph
from .census import FullCensus, StructuralCensus, TriadClass
from .errors import UndefinedStatistic


class Category(enum.Enum):
    ALL = "all"
    INJECTIVE = "injective"
    INDUCED = "induced"


class Congruence(enum.Enum):
    NONE = "none"
    STRUCTURAL = "structural"
    ACTOR = "actor"


class Formulation(enum.Enum):
    CLOSURE_RATE = "rate"
    ALCOVE_RATIO = "ratio"


@dataclass(frozen=True)
class WedgeScheme:
    category: Category
    congruence: Congruence
    formulation: Formulation = Formulation.CLOSURE_RATE

    def __str__(self):
        return f"{self.category.value}/{self.congruence.value}/{self.formulation.value}"

    @classmethod
    def grid(cls):
        """All 18 category x congruence x formulation combinations."""
        return [cls(*combo) for combo in product(Category, Congruence, Formulation)]


CLASSICAL = WedgeScheme(Category.ALL, Congruence.ACTOR)
OPSAHL = WedgeScheme(Category.INJECTIVE, Congruence.NONE)
EXCLUSIVE = WedgeScheme(Category.INDUCED, Congruence.STRUCTURAL)

NAMED_SCHEMES = {"classical": CLASSICAL, "opsahl": OPSAHL, "exclusive": EXCLUSIVE}


class WedgeCount(NamedTuple):
    total: int
    closed: int


class ClassWedgeProfile(NamedTuple):
    open: int
    closed: int


# -- per-triple counting kernel ---------------------------------------------

_INC = "w"
_WEDGE_PATTERNS = [(e1, e2) for e1 in ("a", _INC) for e2 in ("b", _INC)]


def _maps(sizes, slots, category):
    """Number of event assignments to ``slots`` allowed by ``category``."""
    n_inc = slots.count(_INC)
    if category is Category.INDUCED and n_inc:
        return 0
    count = 1
    for s in slots:
        if s != _INC:
            count *= sizes[s]
    if category is Category.INJECTIVE:
        return count * perm(sizes[_INC], n_inc)
    return count * sizes[_INC] ** n_inc


@lru_cache(maxsize=65536)
def triple_counts(a, b, c, w, category, congruence):
    """``(wedges, closed wedges, alcoves)`` at one ordered triple.

    ``a``, ``b``, ``c`` are the exclusive-event counts on the pairs
    ``ij``, ``jk``, ``ik`` and ``w`` the inclusive-event count.
    """
    sizes = {"a": a, "b": b, "c": c, _INC: w}
    wedges = closed = alcoves = 0
    any_wedge = any_closed = False
    for pattern in _WEDGE_PATTERNS:
        n = _maps(sizes, pattern, category)
        if not n:
            continue
        ext = [_maps(sizes, pattern + (e3,), category) for e3 in ("c", _INC)]
        closable = any(ext)
        any_wedge = True
        any_closed = any_closed or closable
        if congruence is Congruence.NONE:
            wedges += n
            closed += n if closable else 0
            alcoves += sum(ext)
        elif congruence is Congruence.STRUCTURAL:
            wedges += 1
            closed += 1 if closable else 0
            alcoves += sum(1 for x in ext if x)
    if congruence is Congruence.ACTOR:
        return int(any_wedge), int(any_closed), int(any_closed)
    return wedges, closed, alcoves


def _triple(g, i, j, k, scheme):
    w = g._w3(i, j, k)
    return triple_counts(
        g._w(i, j) - w, g._w(j, k) - w, g._w(i, k) - w, w,
        scheme.category, scheme.congruence,
    )


def _center_counts(g, j, scheme, partner=None):
    """Sum ``(wedges, closed, alcoves)`` over wedges centered at ``j``.

    With ``partner`` set, numerators only count wedges whose first end is
    ``partner``; the wedge total still runs over all of ``j``'s wedges.
    """
    nbrs = sorted(g._neighbors[j])
    wedges = closed = alcoves = 0
    for i in nbrs:
        for k in nbrs:
            if i == k:
                continue
            tw, tc, ta = _triple(g, i, j, k, scheme)
            wedges += tw
            if partner is None or i == partner:
                closed += tc
                alcoves += ta
    return wedges, closed, alcoves


def _ratio(numerator, denominator, what):
    if denominator == 0:
        raise UndefinedStatistic(f"{what}: no wedges")
    return Fraction(numerator, denominator)


def _numerator(scheme, closed, alcoves):
    return closed if scheme.formulation is Formulation.CLOSURE_RATE else alcoves


# -- public operations ------------------------------------------------------


def wedge_count_at(graph: BipartiteGraph, i, j, k, scheme: WedgeScheme) -> WedgeCount:
    """Wedges and closed wedges from ``i`` through center ``j`` to ``k``."""
    a, b, c = graph._distinct_indices(i, j, k)
    total, closed, _ = _triple(graph, a, b, c, scheme)
    return WedgeCount(total, closed)


def alcove_count_at(graph: BipartiteGraph, i, j, k, scheme: WedgeScheme) -> int:
    a, b, c = graph._distinct_indices(i, j, k)
    return _triple(graph, a, b, c, scheme)[2]


def global_counts(graph: BipartiteGraph, scheme: WedgeScheme):
    """``(wedges, closed, alcoves)`` summed over every centered triple."""
    totals = [0, 0, 0]
    for j in range(graph.n_actors):
        for n, x in enumerate(_center_counts(graph, j, scheme)):
            totals[n] += x
    return tuple(totals)


def global_cc(graph: BipartiteGraph, scheme: WedgeScheme) -> Fraction:
    """Global clustering coefficient as an exact fraction.

    Raises :class:`UndefinedStatistic` when the graph has no wedges.
    Alcove ratios may exceed 1.
    """
    wedges, closed, alcoves = global_counts(graph, scheme)
    return _ratio(_numerator(scheme, closed, alcoves), wedges, f"global {scheme}")


def local_cc(graph: BipartiteGraph, actor, scheme: WedgeScheme) -> Fraction:
    j = graph.actor_index(actor)
    wedges, closed, alcoves = _center_counts(graph, j, scheme)
    return _ratio(_numerator(scheme, closed, alcoves), wedges, f"local {scheme} at {actor!r}")


def local_values(graph: BipartiteGraph, scheme: WedgeScheme):
    """Local coefficient for every actor in input order; ``None`` if undefined."""
    out = {}
    for j, actor in enumerate(graph.actors):
        wedges, closed, alcoves = _center_counts(graph, j, scheme)
        out[actor] = Fraction(_numerator(scheme, closed, alcoves), wedges) if wedges else None
    return out


def wedge_dependent_cc(graph: BipartiteGraph, scheme: WedgeScheme, with_counts=False):
    """Mean local coefficient over actors grouped by wedge count ``ell``.

    ``ell`` counts ordered wedges (both orientations); actors without
    wedges are left out.  With ``with_counts`` the values are
    ``(mean, number_of_actors)`` pairs.
    """
    groups = defaultdict(list)
    for j in range(graph.n_actors):
        wedges, closed, alcoves = _center_counts(graph, j, scheme)
        if wedges:
            groups[wedges].append(Fraction(_numerator(scheme, closed, alcoves), wedges))
    out = {}
    for ell in sorted(groups):
        values = groups[ell]
        mean = sum(values, Fraction(0)) / len(values)
        out[ell] = (mean, len(values)) if with_counts else mean
    return out


def constraint(graph: BipartiteGraph, i, j, scheme: WedgeScheme) -> Fraction:
    """Constraint on ``i`` due to ``j``.

    Closed wedges centered at ``i`` that start at ``j``, over all wedges
    centered at ``i``.  Summed over ``j`` this is the local coefficient.
    """
    a, b = graph._distinct_indices(i, j)
    wedges, closed, alcoves = _center_counts(graph, a, scheme, partner=b)
    return _ratio(_numerator(scheme, closed, alcoves), wedges, f"constraint at {i!r}")


def representative(cls: TriadClass) -> BipartiteGraph:
    """Canonical three-actor graph of a triad class.

    ``mu1`` events on ``{p, q}``, ``mu2`` on ``{q, r}``, ``mu3`` on
    ``{p, r}``, and ``w`` on ``{p, q, r}``.
    """
    (m1, m2, m3), w = cls
    groups = [("pq", m1, "pq"), ("qr", m2, "qr"), ("pr", m3, "pr"), ("pqr", w, "pqr")]
    events, attendance = [], []
    for label, count, members in groups:
        for n in range(count):
            e = f"{label}{n}"
            events.append(e)
            attendance.extend((a, e) for a in members)
    return BipartiteGraph("pqr", events, attendance)


@lru_cache(maxsize=4096)
def _profile(cls, category, congruence):
    g = representative(cls)
    scheme = WedgeScheme(category, congruence)
    total, closed, _ = global_counts(g, scheme)
    return ClassWedgeProfile(total - closed, closed)


def class_wedge_profile(cls: TriadClass, scheme: WedgeScheme) -> ClassWedgeProfile:
    """Open and closed wedges over all six ordered triples of a triad class."""
    return _profile(TriadClass(*cls), scheme.category, scheme.congruence)


def census_cc(census: FullCensus, scheme: WedgeScheme) -> Fraction:
    """Closure rate from a full census and per-class wedge profiles."""
    if scheme.formulation is not Formulation.CLOSURE_RATE:
        raise ValueError("census formulation applies to the closure rate only")
    closed = total = 0
    for cls, tally in census.tallies.items():
        prof = class_wedge_profile(cls, scheme)
        closed += tally * prof.closed
        total += tally * (prof.open + prof.closed)
    return _ratio(closed, total, f"census {scheme}")


def binned_cc(census: StructuralCensus) -> Fraction:
    """Exclusive coefficient from a structural census.

    Triads with exclusive events on all three pairs carry six closed
    wedges, those with exactly two such pairs two open wedges.
    """
    t = census.t
    closed = t[3][0] + t[3][1]
    open_ = t[2][0] + t[2][1]
    return _ratio(3 * closed, open_ + 3 * closed, "binned exclusive coefficient")

"""Affiliation networks as simple bipartite graphs of actors and events.

Actor and event ids are opaque strings at the boundary.  Internally each
actor and event gets a dense integer index (in order of first appearance),
and attendance is held in both directions as frozensets of indices so that
shared-event counts reduce to set intersections.
"""

from __future__ import annotations

import csv
import logging
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone
from functools import cached_property
from itertools import combinations
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DataError

logger = logging.getLogger(__name__)

_EPOCH = datetime(1, 1, 1)


@dataclass(frozen=True)
class PairWeights:
    """Shared-event counts for an ordered triple of actors (p, q, r)."""

    w_pq: int
    w_qr: int
    w_pr: int
    w_pqr: int


@dataclass(frozen=True)
class Projection:
    """One-mode actor projection weighted by shared-event counts.

    Pairs are stored as tuples ordered by actor position in the source
    graph; use :meth:`weight` for symmetric lookup.
    """

    nodes: tuple
    weights: Mapping[tuple, int]
    first_time: Optional[Mapping[tuple, int]] = None
    _order: Mapping[str, int] = field(default_factory=dict, repr=False, compare=False)

    @property
    def edges(self):
        return frozenset(self.weights)

    def _key(self, p, q):
        return (p, q) if self._order[p] < self._order[q] else (q, p)

    def weight(self, p, q):
        return self.weights.get(self._key(p, q), 0)

    def time(self, p, q):
        if self.first_time is None:
            return None
        return self.first_time.get(self._key(p, q))

    def neighbors(self, p):
        return [q for q in self.nodes if q != p and self.weight(p, q) > 0]


def parse_time(value):
    """Parse an integer or ISO-8601 timestamp into ``(kind, int)``.

    Integers pass through unchanged.  Dates and datetimes become whole
    seconds since 0001-01-01 (UTC for aware datetimes).
    """
    if isinstance(value, bool):
        raise DataError(f"invalid timestamp {value!r}")
    if isinstance(value, int):
        return "int", value
    text = str(value).strip()
    try:
        return "int", int(text)
    except ValueError:
        pass
    try:
        stamp = datetime.fromisoformat(text)
    except ValueError:
        raise DataError(f"invalid timestamp {value!r}") from None
    if stamp.tzinfo is not None:
        stamp = stamp.astimezone(timezone.utc).replace(tzinfo=None)
    return "iso", int((stamp - _EPOCH).total_seconds())


class BipartiteGraph:
    """An immutable affiliation network.

    Parameters
    ----------
    actors, events : iterable of str
        Node ids.  Order is preserved and determines output order.
    attendance : iterable of (actor, event)
        Attendance edges.  Duplicates are not allowed here; use
        :func:`from_edge_list` to collapse them.
    event_time : mapping, optional
        Event id to integer timestamp.  Events may be missing.
    """

    def __init__(self, actors, events, attendance, event_time=None):
        self._actors = tuple(dict.fromkeys(actors))
        self._events = tuple(dict.fromkeys(events))
        self._aidx = {a: i for i, a in enumerate(self._actors)}
        self._eidx = {e: i for i, e in enumerate(self._events)}
        clash = set(self._aidx) & set(self._eidx)
        if clash:
            raise DataError(f"ids used as both actor and event: {sorted(clash)}")

        act_ev = [set() for _ in self._actors]
        ev_act = [set() for _ in self._events]
        for a, e in attendance:
            try:
                i, x = self._aidx[a], self._eidx[e]
            except KeyError as err:
                raise DataError(f"attendance ({a!r}, {e!r}) references unknown id") from err
            if x in act_ev[i]:
                raise DataError(f"duplicate attendance ({a!r}, {e!r})")
            act_ev[i].add(x)
            ev_act[x].add(i)
        self._act_ev = tuple(frozenset(s) for s in act_ev)
        self._ev_act = tuple(frozenset(s) for s in ev_act)

        times = {}
        for e, t in (event_time or {}).items():
            if e not in self._eidx:
                raise DataError(f"time given for unknown event {e!r}")
            if t is not None:
                times[e] = t
        self._event_time = MappingProxyType(times)
        self.duplicate_rows = 0

    # -- public views -------------------------------------------------------

    @property
    def actors(self):
        return self._actors

    @property
    def events(self):
        return self._events

    @property
    def event_time(self):
        return self._event_time

    @cached_property
    def attendance(self):
        return frozenset(
            (self._actors[i], self._events[x])
            for i, evs in enumerate(self._act_ev)
            for x in evs
        )

    @property
    def n_actors(self):
        return len(self._actors)

    @property
    def n_events(self):
        return len(self._events)

    @property
    def n_attendance(self):
        return sum(len(s) for s in self._act_ev)

    @property
    def has_times(self):
        return len(self._event_time) == len(self._events)

    def events_of(self, actor):
        return frozenset(self._events[x] for x in self._act_ev[self.actor_index(actor)])

    def attendees(self, event):
        try:
            x = self._eidx[event]
        except KeyError:
            raise DataError(f"unknown event {event!r}") from None
        return frozenset(self._actors[i] for i in self._ev_act[x])

    def actor_index(self, actor):
        try:
            return self._aidx[actor]
        except KeyError:
            raise DataError(f"unknown actor {actor!r}") from None

    def actor_degrees(self):
        return [len(s) for s in self._act_ev]

    def event_degrees(self):
        return [len(s) for s in self._ev_act]

    def summary(self):
        """Counts and degree sequences, JSON-serialisable."""
        return {
            "actors": self.n_actors,
            "events": self.n_events,
            "attendance": self.n_attendance,
            "timed_events": len(self._event_time),
            "actor_degrees": dict(zip(self._actors, self.actor_degrees())),
            "event_degrees": dict(zip(self._events, self.event_degrees())),
        }

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            set(self._actors) == set(other._actors)
            and set(self._events) == set(other._events)
            and self.attendance == other.attendance
            and dict(self._event_time) == dict(other._event_time)
        )

    def __hash__(self):
        return hash(self.attendance)

    def __repr__(self):
        return (
            f"BipartiteGraph(actors={self.n_actors}, events={self.n_events}, "
            f"attendance={self.n_attendance})"
        )

    # -- index-level helpers used by the census and wedge code --------------

    @cached_property
    def _pair_weights(self):
        counts = Counter()
        for members in self._ev_act:
            for i, j in combinations(sorted(members), 2):
                counts[i, j] += 1
        return dict(counts)

    @cached_property
    def _neighbors(self):
        nbrs = [set() for _ in self._actors]
        for i, j in self._pair_weights:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return tuple(frozenset(s) for s in nbrs)

    def _w(self, i, j):
        return self._pair_weights.get((i, j) if i < j else (j, i), 0)

    def _w3(self, i, j, k):
        return len(self._act_ev[i] & self._act_ev[j] & self._act_ev[k])

    def _distinct_indices(self, *ids):
        idx = [self.actor_index(a) for a in ids]
        if len(set(idx)) != len(idx):
            raise DataError(f"actors must be distinct, got {ids!r}")
        return idx


def from_edge_list(rows: Iterable[Sequence], *, first_row: int = 1) -> BipartiteGraph:
    """Build a graph from ``(actor, event[, time])`` rows.

    ``None`` rows are skipped but still counted for row numbering.
    Duplicate attendance rows collapse to one edge; the number collapsed is
    stored on the result as ``duplicate_rows``.  Conflicting times for one
    event, mixed integer/ISO timestamps, and ids used on both sides are
    rejected with :class:`DataError`.
    """
    actors, events = {}, {}
    attendance = {}
    times, time_row = {}, {}
    kinds = set()
    duplicates = 0
    for n, row in enumerate(rows, start=first_row):
        if row is None:
            continue
        if len(row) < 2:
            raise DataError(f"row {n}: expected actor and event")
        actor, event = str(row[0]).strip(), str(row[1]).strip()
        if not actor or not event:
            raise DataError(f"row {n}: empty actor or event id")
        actors.setdefault(actor, None)
        events.setdefault(event, None)
        if (actor, event) in attendance:
            duplicates += 1
        else:
            attendance[actor, event] = n
        raw = row[2] if len(row) > 2 else None
        if raw is None or (isinstance(raw, str) and not raw.strip()):
            continue
        kind, t = parse_time(raw)
        kinds.add(kind)
        if len(kinds) > 1:
            raise DataError(f"row {n}: mixed integer and ISO timestamps")
        if event in times and times[event] != t:
            raise DataError(
                f"rows {time_row[event]} and {n}: conflicting times for event {event!r}"
            )
        times[event] = t
        time_row.setdefault(event, n)

    clash = set(actors) & set(events)
    if clash:
        name = sorted(clash)[0]
        rows_a = sorted(r for (a, _), r in attendance.items() if a == name)
        rows_e = sorted(r for (_, e), r in attendance.items() if e == name)
        raise DataError(
            f"id {name!r} used as actor (row {rows_a[0]}) and event (row {rows_e[0]})"
        )
    graph = BipartiteGraph(actors, events, attendance, times)
    graph.duplicate_rows = duplicates
    if duplicates:
        logger.info("collapsed %d duplicate attendance rows", duplicates)
    return graph


def read_edge_list(path) -> BipartiteGraph:
    """Read a CSV or TSV file with header ``actor,event[,time]``."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as err:
        raise DataError(f"cannot read {path}: {err}") from err
    return parse_edge_list(text.splitlines())


def parse_edge_list(lines: Sequence[str]) -> BipartiteGraph:
    lines = list(lines)
    if not lines:
        raise DataError("empty input: missing header")
    delimiter = "\t" if "\t" in lines[0] else ","
    reader = csv.reader(lines, delimiter=delimiter)
    header = [h.strip().lower() for h in next(reader)]
    if header[:2] != ["actor", "event"] or header[2:] not in ([], ["time"]):
        raise DataError(f"bad header {header!r}; expected actor,event[,time]")
    rows = []
    for row in reader:
        if not row or all(not c.strip() for c in row):
            rows.append(None)
            continue
        if len(row) > len(header):
            raise DataError(f"row {len(rows) + 2}: too many fields")
        rows.append(row)
    return from_edge_list(rows, first_row=2)


def projection(graph: BipartiteGraph) -> Projection:
    """Weighted one-mode projection onto the actors."""
    names = graph.actors
    weights = {(names[i], names[j]): w for (i, j), w in graph._pair_weights.items()}
    first = None
    if graph.event_time:
        first = {}
        for x, members in enumerate(graph._ev_act):
            t = graph.event_time.get(graph.events[x])
            if t is None:
                continue
            for i, j in combinations(sorted(members), 2):
                key = (names[i], names[j])
                if key not in first or t < first[key]:
                    first[key] = t
    return Projection(
        nodes=names,
        weights=MappingProxyType(weights),
        first_time=None if first is None else MappingProxyType(first),
        _order=graph._aidx,
    )


def scheduled_subgraph(graph: BipartiteGraph, actors: Iterable[str]) -> BipartiteGraph:
    """Subgraph on ``actors`` plus every event two or more of them attended."""
    chosen = set(actors)
    for a in chosen:
        graph.actor_index(a)
    keep = [a for a in graph.actors if a in chosen]
    events, attendance = [], []
    for e in graph.events:
        present = graph.attendees(e) & chosen
        if len(present) >= 2:
            events.append(e)
            attendance.extend((a, e) for a in keep if a in present)
    times = {e: graph.event_time[e] for e in events if e in graph.event_time}
    return BipartiteGraph(keep, events, attendance, times)


def pair_weights(graph: BipartiteGraph, p: str, q: str, r: str) -> PairWeights:
    i, j, k = graph._distinct_indices(p, q, r)
    return PairWeights(graph._w(i, j), graph._w(j, k), graph._w(i, k), graph._w3(i, j, k))

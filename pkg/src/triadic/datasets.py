"""Bundled example networks and synthetic generators.

``dg2``
    Five women (Miss A to Miss E) and five social activities from Davis,
    Gardner & Gardner, *Deep South* (1941).  Events are numbered 1-5.  The
    attendance is the unique table consistent with the published pairwise
    description of these five women (coattendance counts and the triads
    they form).
``dg1``
    The eighteen women and fourteen events of Davis, Gardner & Gardner's
    Old City social calendar, as distributed with networkx.  Times are the
    month-day labels of the events encoded as integers ``MMDD``; the year
    is not recorded in the source table.
``kite_a`` .. ``kite_d``
    Four networks projecting to the kite graph (triangle ``i, j, k`` with
    pendant ``l`` on ``k``) whose ``{i, j, k}`` triads are, in order,
    ``((1,1,1),0)``, ``((0,0,0),1)``, ``((2,1,1),0)`` and ``((0,0,0),3)``.
``biclique-N-M``
    The complete bipartite graph with ``N`` actors and ``M`` events.
"""

from __future__ import annotations

import re
from importlib import resources

from .bigraph import BipartiteGraph, parse_edge_list
from .errors import DataError

_FILES = {
    "dg1": "dg1.csv",
    "dg2": "dg2.csv",
    "kite_a": "kite_a.csv",
    "kite_b": "kite_b.csv",
    "kite_c": "kite_c.csv",
    "kite_d": "kite_d.csv",
}

DESCRIPTIONS = {
    "dg1": "Davis-Gardner-Gardner 18 women x 14 events, times as MMDD",
    "dg2": "Davis-Gardner-Gardner five women (A-E) x five activities",
    "kite_a": "kite, {i,j,k} triad ((1,1,1),0)",
    "kite_b": "kite, {i,j,k} triad ((0,0,0),1)",
    "kite_c": "kite, {i,j,k} triad ((2,1,1),0)",
    "kite_d": "kite, {i,j,k} triad ((0,0,0),3)",
    "biclique-N-M": "complete bipartite graph, N actors x M events",
}

_BICLIQUE = re.compile(r"biclique-(\d+)-(\d+)$")


def names():
    return list(DESCRIPTIONS)


def raw_csv(name: str) -> str:
    """CSV text of a bundled dataset or generated biclique."""
    match = _BICLIQUE.match(name)
    if match:
        g = biclique(int(match[1]), int(match[2]))
        lines = ["actor,event"] + [f"{a},{e}" for a in g.actors for e in g.events]
        return "\n".join(lines) + "\n"
    try:
        filename = _FILES[name]
    except KeyError:
        raise DataError(f"unknown dataset {name!r}; choose from {names()}") from None
    return resources.files(__package__).joinpath("data", filename).read_text(encoding="utf-8")


def load(name: str) -> BipartiteGraph:
    return parse_edge_list(raw_csv(name).splitlines())


def biclique(n_actors: int, n_events: int) -> BipartiteGraph:
    """``K_{n,m}``: every actor attends every event."""
    actors = [f"p{i}" for i in range(n_actors)]
    events = [f"e{x}" for x in range(n_events)]
    return BipartiteGraph(actors, events, [(a, e) for a in actors for e in events])


def single_event(actors) -> BipartiteGraph:
    actors = list(actors)
    return BipartiteGraph(actors, ["e"], [(a, "e") for a in actors])

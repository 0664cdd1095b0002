import pytest
from hypothesis import given, settings

from strategies import bigraphs
from triadic import datasets
from triadic.bigraph import (
    BipartiteGraph, PairWeights, from_edge_list, pair_weights, parse_edge_list, parse_time,
    projection, read_edge_list, scheduled_subgraph,
)
from triadic.errors import DataError


def test_basic_views():
    g = datasets.load("dg2")
    assert g.actors == ("A", "B", "C", "D", "E")
    assert g.n_events == 5
    assert g.n_attendance == 14
    assert g.attendees("1") == {"A", "C", "D"}
    assert g.events_of("E") == {"2", "4", "5"}
    assert sum(g.actor_degrees()) == sum(g.event_degrees()) == g.n_attendance


def test_duplicates_collapse_and_are_counted():
    g = from_edge_list([("a", "x"), ("a", "x"), ("b", "x")])
    assert g.n_attendance == 2
    assert g.duplicate_rows == 1


def test_conflicting_times_name_both_rows():
    with pytest.raises(DataError, match=r"rows 2 and 3"):
        parse_edge_list(["actor,event,time", "a,x,1", "b,x,2"])


def test_mixed_time_kinds_rejected():
    with pytest.raises(DataError, match="mixed"):
        parse_edge_list(["actor,event,time", "a,x,5", "b,y,2020-01-01"])


def test_actor_event_clash():
    with pytest.raises(DataError, match="row 3"):
        parse_edge_list(["actor,event", "a,x", "x,y"])


def test_bad_header():
    with pytest.raises(DataError, match="header"):
        parse_edge_list(["person,club", "a,x"])
    with pytest.raises(DataError):
        parse_edge_list([])


def test_tab_delimited_and_blank_lines(tmp_path):
    path = tmp_path / "g.tsv"
    path.write_text("actor\tevent\na\tx\n\nb\tx\n")
    g = read_edge_list(path)
    assert g.attendees("x") == {"a", "b"}


def test_missing_file():
    with pytest.raises(DataError):
        read_edge_list("/nonexistent/graph.csv")


def test_parse_time():
    assert parse_time("17") == ("int", 17)
    kind, a = parse_time("2020-01-02")
    _, b = parse_time("2020-01-01")
    assert kind == "iso" and a - b == 86400
    with pytest.raises(DataError):
        parse_time("soon")


def test_unknown_references():
    with pytest.raises(DataError):
        BipartiteGraph(["a"], ["x"], [("a", "y")])
    with pytest.raises(DataError):
        BipartiteGraph(["a"], ["x"], [("a", "x"), ("a", "x")])


def test_projection_weights_and_times():
    g = parse_edge_list(["actor,event,time", "a,x,3", "b,x,3", "a,y,1", "b,y,1", "c,y,1"])
    p = projection(g)
    assert p.weight("a", "b") == 2
    assert p.weight("b", "a") == 2
    assert p.weight("a", "c") == 1
    assert p.time("a", "b") == 1
    assert set(p.neighbors("c")) == {"a", "b"}


def test_scheduled_subgraph_drops_small_events():
    g = datasets.load("dg2")
    sub = scheduled_subgraph(g, ["A", "B", "E"])
    assert set(sub.events) == {"3", "4"}
    assert sub.attendees("4") == {"A", "B", "E"}


def test_pair_weights():
    g = datasets.load("dg2")
    assert pair_weights(g, "A", "C", "D") == PairWeights(1, 2, 2, 1)
    with pytest.raises(DataError):
        pair_weights(g, "A", "A", "D")


@settings(max_examples=50, deadline=None)
@given(bigraphs())
def test_equality_ignores_order(g):
    shuffled = BipartiteGraph(reversed(g.actors), reversed(g.events), list(g.attendance)[::-1])
    assert shuffled == g
    assert hash(shuffled) == hash(g)


@settings(max_examples=50, deadline=None)
@given(bigraphs(min_actors=3))
def test_scheduled_subgraph_keeps_pair_weights(g):
    actors = g.actors[:3]
    sub = scheduled_subgraph(g, actors)
    assert pair_weights(sub, *actors) == pair_weights(g, *actors)

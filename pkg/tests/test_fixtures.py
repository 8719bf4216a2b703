"""Registry invariants for the audited reference graphs."""

import pytest

from geocert import oracles
from geocert.errors import FixtureProvenanceError
from geocert.fixtures import FIXTURES, FixtureEntry, fixture, no_pairs
from geocert.graphs import cycle_graph, has_induced_cycle_at_least, parse_edge_list
from geocert.schemes import ALL_SCHEMES


def test_registered_names():
    assert sorted(FIXTURES) == [
        "anchored-ring",
        "asteroidal-tree",
        "c4",
        "c6",
        "claw",
        "crossed-blocks",
    ]


def test_every_entry_is_well_formed():
    for entry in FIXTURES.values():
        decided = 0
        for tag in ALL_SCHEMES:
            v = entry.verdict(tag)
            assert v in ("yes", "no", "unknown")
            if v != "unknown":
                decided += 1
                note = entry.provenance[tag]
                assert note.startswith(("theory:", "oracle:"))
        assert decided >= 2


def test_no_pairs_cover_the_soundness_matrix():
    pairs = set(no_pairs())
    assert len(pairs) == 16
    # the eleven pairs the fuzzing sweep is built on
    required = {
        ("c4", "chordal"),
        ("c4", "interval"),
        ("c4", "proper-interval"),
        ("claw", "proper-interval"),
        ("claw", "proper-circular-arc"),
        ("c6", "trapezoid"),
        ("c6", "permutation"),
        ("crossed-blocks", "trapezoid"),
        ("crossed-blocks", "permutation"),
        ("asteroidal-tree", "interval"),
        ("anchored-ring", "circular-arc"),
    }
    assert required <= pairs


def test_lookup_unknown_name():
    with pytest.raises(FixtureProvenanceError):
        fixture("nope")


def test_verdict_unknown_tag():
    with pytest.raises(FixtureProvenanceError):
        fixture("c4").verdict("bogus")


def test_verdict_without_provenance_refused():
    with pytest.raises(FixtureProvenanceError):
        FixtureEntry("x", cycle_graph(4), {"chordal": "no"}, {})


def test_dangling_provenance_refused():
    with pytest.raises(FixtureProvenanceError):
        FixtureEntry(
            "x",
            cycle_graph(4),
            {"chordal": "unknown"},
            {"chordal": "oracle: stale"},
        )


def test_unprefixed_note_refused():
    with pytest.raises(FixtureProvenanceError):
        FixtureEntry(
            "x",
            cycle_graph(4),
            {"chordal": "no"},
            {"chordal": "because I said so"},
        )


def test_bad_verdict_refused():
    with pytest.raises(FixtureProvenanceError):
        FixtureEntry("x", cycle_graph(4), {"chordal": "maybe"}, {"chordal": "oracle: x"})


def test_bad_tag_refused():
    with pytest.raises(FixtureProvenanceError):
        FixtureEntry("x", cycle_graph(4), {"square": "no"}, {"square": "oracle: x"})


def test_spacey_name_refused():
    with pytest.raises(FixtureProvenanceError):
        FixtureEntry("two words", cycle_graph(4), {}, {})


def test_yes_verdicts_reproduce():
    assert oracles.search_ordering(fixture("c4").graph, "quasi") is not None
    assert oracles.search_ordering(fixture("c4").graph, "compatible") is not None
    assert oracles.permutation_model_search(fixture("c4").graph) is not None
    assert oracles.is_chordal(fixture("claw").graph)
    assert oracles.is_interval(fixture("claw").graph)
    assert oracles.is_chordal(fixture("asteroidal-tree").graph)
    assert oracles.search_ordering(fixture("c6").graph, "compatible") is not None


def test_no_verdicts_reproduce():
    assert not oracles.is_chordal(fixture("c4").graph)
    assert not oracles.is_interval(fixture("c4").graph)
    assert not oracles.is_proper_interval(fixture("c4").graph)
    assert not oracles.is_proper_interval(fixture("claw").graph)
    assert oracles.search_ordering(fixture("claw").graph, "compatible") is None
    assert oracles.has_asteroidal_triple(fixture("asteroidal-tree").graph)
    assert oracles.trapezoid_no_certificate(fixture("c6").graph)
    assert oracles.trapezoid_no_certificate(fixture("crossed-blocks").graph)


def test_crossed_blocks_keeps_its_long_hole():
    g = fixture("crossed-blocks").graph
    assert g.n == 15
    assert has_induced_cycle_at_least(g, 5)


def test_graph_text_round_trips():
    for entry in FIXTURES.values():
        assert parse_edge_list(entry.graph_text()) == entry.graph
        assert entry.filename == f"{entry.name}.graph"

"""Named reference graphs with audited per-scheme membership verdicts.

Soundness campaigns need graphs that are known to sit outside a class, and
every such claim must be traceable: either an oracle run reproduces it, or a
short structural argument pins it down. Each entry therefore pairs its
verdict map with a provenance note per decided verdict, and registration
refuses entries where a yes or no verdict arrives without one. Schemes a
fixture has not been audited against stay "unknown".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import FixtureProvenanceError
from .graphs import (
    Graph,
    build_graph,
    chorded_path_graph,
    crossing,
    cycle_graph,
    star_graph,
    write_edge_list,
)
from .schemes import ALL_SCHEMES

VERDICTS = ("yes", "no", "unknown")

_PREFIXES = ("theory:", "oracle:")


@dataclass(frozen=True)
class FixtureEntry:
    """A named graph plus a per-scheme verdict map with provenance notes.

    verdicts maps scheme tags to "yes", "no" or "unknown"; tags absent from
    the map count as "unknown". provenance must carry a note for exactly the
    decided tags, and each note must start with "theory:" (a structural
    argument spelled out in the docstring or note itself) or "oracle:" (a
    reproducible oracle call on the fixture graph).
    """

    name: str
    graph: Graph
    verdicts: Mapping[str, str]
    provenance: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.name or any(ch.isspace() for ch in self.name):
            raise FixtureProvenanceError(f"fixture name {self.name!r} must be a single token")
        for tag, verdict in self.verdicts.items():
            if tag not in ALL_SCHEMES:
                raise FixtureProvenanceError(f"{self.name}: unknown scheme tag {tag!r}")
            if verdict not in VERDICTS:
                raise FixtureProvenanceError(f"{self.name}/{tag}: bad verdict {verdict!r}")
        decided = {tag for tag, v in self.verdicts.items() if v != "unknown"}
        noted = set(self.provenance)
        if missing := decided - noted:
            raise FixtureProvenanceError(
                f"{self.name}: verdicts without provenance: {sorted(missing)}"
            )
        if dangling := noted - decided:
            raise FixtureProvenanceError(
                f"{self.name}: provenance for undecided tags: {sorted(dangling)}"
            )
        for tag, note in self.provenance.items():
            if not note.startswith(_PREFIXES):
                raise FixtureProvenanceError(
                    f"{self.name}/{tag}: note must start with one of {_PREFIXES}"
                )

    def verdict(self, tag: str) -> str:
        if tag not in ALL_SCHEMES:
            raise FixtureProvenanceError(f"unknown scheme tag {tag!r}")
        return self.verdicts.get(tag, "unknown")

    @property
    def filename(self) -> str:
        return f"{self.name}.graph"

    def graph_text(self) -> str:
        return write_edge_list(self.graph)


def _spider() -> Graph:
    """Hub node with three legs of two edges each.

    The far leg ends are pairwise nonadjacent and each pair is joined by a
    path through the hub that avoids the third end's neighborhood, so no
    interval layout can host this tree even though every tree is chordal.
    """
    edges = [(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]
    return build_graph(range(1, 8), edges)


def _anchored_ring() -> Graph:
    """Six-cycle with a pendant two-path on alternating corners.

    The three far pendant ends pairwise demand disjoint stretches of the
    circle while the ring forces its own wrap-around, which no arc family
    on a single circle can satisfy.
    """
    ring = [(i, i % 6 + 1) for i in range(1, 7)]
    pins = [(1, 7), (7, 8), (3, 9), (9, 10), (5, 11), (11, 12)]
    return build_graph(range(1, 13), ring + pins)


def _crossed_blocks() -> Graph:
    """Two chorded-path blocks with one rung pair swapped between them.

    Swapping the rungs 3-4 and 8-9 for 3-9 and 4-8 opens the chordless
    six-cycle 2-3-9-7-8-4 while keeping the graph connected.
    """
    return crossing(chorded_path_graph(3), (3, 4), (8, 9), {3: 8, 4: 9})


def _entries() -> tuple[FixtureEntry, ...]:
    # Every oracle note below was reproduced on the stated graph before the
    # verdict was frozen; theory notes spell out the containment they use.
    return (
        FixtureEntry(
            name="c4",
            graph=cycle_graph(4),
            verdicts={
                "chordal": "no",
                "interval": "no",
                "proper-interval": "no",
                "circular-arc": "yes",
                "proper-circular-arc": "yes",
                "trapezoid": "yes",
                "permutation": "yes",
            },
            provenance={
                "chordal": "oracle: is_chordal finds no elimination order for the four-cycle",
                "interval": "oracle: is_interval rejects the four-cycle",
                "proper-interval": "oracle: is_proper_interval finds no umbrella order",
                "circular-arc": "oracle: search_ordering(g, 'quasi') returns an order",
                "proper-circular-arc": "oracle: search_ordering(g, 'compatible') returns an order",
                "trapezoid": (
                    "oracle: permutation_model_search finds a diagram, and every "
                    "diagram converts to a box layout"
                ),
                "permutation": "oracle: permutation_model_search finds a diagram",
            },
        ),
        FixtureEntry(
            name="claw",
            graph=star_graph(3),
            verdicts={
                "chordal": "yes",
                "interval": "yes",
                "proper-interval": "no",
                "circular-arc": "yes",
                "proper-circular-arc": "no",
                "trapezoid": "yes",
                "permutation": "yes",
            },
            provenance={
                "chordal": "oracle: is_chordal returns an elimination order",
                "interval": "oracle: is_interval accepts",
                "proper-interval": (
                    "oracle: is_proper_interval finds no umbrella order; the hub "
                    "needs three pairwise far leaves"
                ),
                "circular-arc": "oracle: search_ordering(g, 'quasi') returns an order",
                "proper-circular-arc": (
                    "oracle: search_ordering(g, 'compatible', max_n=4) exhausts every order"
                ),
                "trapezoid": (
                    "oracle: permutation_model_search finds a diagram, and every "
                    "diagram converts to a box layout"
                ),
                "permutation": "oracle: permutation_model_search finds a diagram",
            },
        ),
        FixtureEntry(
            name="c6",
            graph=cycle_graph(6),
            verdicts={
                "chordal": "no",
                "interval": "no",
                "proper-interval": "no",
                "circular-arc": "yes",
                "proper-circular-arc": "yes",
                "trapezoid": "no",
                "permutation": "no",
            },
            provenance={
                "chordal": "oracle: is_chordal finds no elimination order for the six-cycle",
                "interval": "oracle: is_interval rejects the six-cycle",
                "proper-interval": "oracle: is_proper_interval finds no umbrella order",
                "circular-arc": "oracle: search_ordering(g, 'quasi') returns an order",
                "proper-circular-arc": "oracle: search_ordering(g, 'compatible') returns an order",
                "trapezoid": (
                    "theory: box layouts host no chordless cycle past four nodes, "
                    "and has_induced_cycle_at_least(g, 5) holds"
                ),
                "permutation": (
                    "theory: every diagram converts to a box layout, and the box "
                    "verdict is no"
                ),
            },
        ),
        FixtureEntry(
            name="crossed-blocks",
            graph=_crossed_blocks(),
            verdicts={
                "trapezoid": "no",
                "permutation": "no",
            },
            provenance={
                "trapezoid": (
                    "theory: the rung swap opens the chordless six-cycle "
                    "2-3-9-7-8-4 and box layouts host no chordless cycle past "
                    "four nodes; has_induced_cycle_at_least(g, 5) confirms"
                ),
                "permutation": (
                    "theory: every diagram converts to a box layout, and the box "
                    "verdict is no"
                ),
            },
        ),
        FixtureEntry(
            name="asteroidal-tree",
            graph=_spider(),
            verdicts={
                "chordal": "yes",
                "interval": "no",
                "proper-interval": "no",
            },
            provenance={
                "chordal": "oracle: is_chordal returns an elimination order; trees have no cycles",
                "interval": "oracle: has_asteroidal_triple finds a triple among the leg ends",
                "proper-interval": (
                    "theory: proper interval layouts are interval layouts, and the "
                    "interval verdict is no"
                ),
            },
        ),
        FixtureEntry(
            name="anchored-ring",
            graph=_anchored_ring(),
            verdicts={
                "circular-arc": "no",
                "proper-circular-arc": "no",
            },
            provenance={
                "circular-arc": (
                    "oracle: search_ordering(g, 'quasi', max_n=12) exhausts every order"
                ),
                "proper-circular-arc": (
                    "theory: compatible orders are a subfamily of the orders the "
                    "wider search exhausts"
                ),
            },
        ),
    )


def _build_registry() -> dict[str, FixtureEntry]:
    registry: dict[str, FixtureEntry] = {}
    for entry in _entries():
        if entry.name in registry:
            raise FixtureProvenanceError(f"duplicate fixture name {entry.name!r}")
        registry[entry.name] = entry
    return registry


FIXTURES: dict[str, FixtureEntry] = _build_registry()


def fixture(name: str) -> FixtureEntry:
    try:
        return FIXTURES[name]
    except KeyError:
        raise FixtureProvenanceError(
            f"unknown fixture {name!r}; registered: {sorted(FIXTURES)}"
        ) from None


def no_pairs() -> tuple[tuple[str, str], ...]:
    """All (fixture name, scheme tag) pairs registered with a no verdict."""
    pairs = []
    for name in sorted(FIXTURES):
        entry = FIXTURES[name]
        for tag in sorted(ALL_SCHEMES):
            if entry.verdict(tag) == "no":
                pairs.append((name, tag))
    return tuple(pairs)

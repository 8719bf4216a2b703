"""Schemes for proper circular-arc and circular-arc graphs.

The proper scheme hands every node an arc on a common circle plus its
rank in right endpoint order. A size certificate pins the true node
count and the unique rank zero node, a successor chain keeps the ranks
consecutive and aligned with the arcs, and each closed neighborhood
must fill a contiguous circular window of ranks. On top of that every
node replays the two reorderings that put it first, once by rotation
and once by reflection, and compares where its window ends against the
node that lands second. Those comparisons are the local shadow of the
banded matrix shape that characterizes the class.

The general scheme is lighter: a rank, an agreed node total, a spanning
tree, and the length of the solid run of neighbors that follows the
rank. Nodes check that their run is filled position by position, and
that every incident edge falls inside their own run or the other
endpoint's run. The node total is only agreed through the tree here,
not counted, so the scheme leans on the fuzz campaigns for its
adversarial coverage.
"""

from __future__ import annotations

from ..errors import InvalidWitnessError
from ..graphs import Graph
from ..models import ArcModel, arc_contains, arcs_intersect, validate_arc_model
from ..oracles import (
    compatible_ordering_from_arcs,
    has_quasi_circular_ones,
    quasi_ordering_from_arcs,
)
from ..runtime import (
    Field,
    NodeView,
    Schema,
    Scheme,
    check_size,
    check_spanning_tree,
    id_field,
    make_size_cert,
    make_spanning_tree_cert,
    size_schema,
    spanning_tree_schema,
)

# ---------------------------------------------------------------------------
# proper circular-arc


PROPER_CIRC_SCHEMA = Schema(
    "proper-circular-arc",
    (
        Field("right", lambda n: 1, lambda n: 4 * n),
        Field("left", lambda n: 1, lambda n: 4 * n),
        id_field("first"),
        Field("pi", lambda n: 0, lambda n: n - 1),
        Field("range_lo", lambda n: 0, lambda n: n - 1),
        Field("range_hi", lambda n: 0, lambda n: n - 1),
    ),
    (size_schema(),),
)


def _rotate_gap_first(arcs: ArcModel) -> dict[int, tuple[int, int]]:
    """Rotate the circle so any uncovered stretch ends at the top slot.

    With the gap parked just before slot one, sorting by right endpoint
    starts right after it and consecutive ranks are always adjacent in a
    connected graph. Fully covered circles are returned unchanged since
    any anchor works for them.
    """
    slots = arcs.slots
    coords = arcs.arcs
    cut = 0
    for x in range(1, slots + 1):
        covered = any(
            (x - l) % slots < (r - l) % slots for r, l in coords.values()
        )
        if not covered:
            cut = x
            break
    if cut in (0, slots):
        return dict(coords)
    return {
        v: (((r - cut - 1) % slots) + 1, ((l - cut - 1) % slots) + 1)
        for v, (r, l) in coords.items()
    }


def proper_circ_prove(g: Graph, ordering, arcs: ArcModel) -> dict[int, dict]:
    """Certificates from a proper arc model and its right endpoint order.

    The ordering must list the nodes by increasing right endpoint of the
    given arcs. The prover re-anchors the circle at a coverage gap when
    one exists, so the emitted ranks may be a rotation of the witness
    order; arc slots are doubled to leave room between endpoints.
    """
    if not arcs.proper or not validate_arc_model(arcs, g):
        raise InvalidWitnessError("witness is not a proper arc model of g")
    if tuple(ordering) != compatible_ordering_from_arcs(arcs):
        raise InvalidWitnessError("ordering does not sort the nodes by right endpoint")
    coords = _rotate_gap_first(arcs)
    order = sorted(coords, key=lambda v: coords[v][0])
    pos = {v: i for i, v in enumerate(order)}
    n = g.n
    size = make_size_cert(g, order[0])
    certs = {}
    for v in g.ids:
        ranks = {pos[u] for u in g.neighbors(v)} | {pos[v]}
        if len(ranks) == n:
            lo, hi = 0, n - 1
        else:
            starts = [p for p in ranks if (p - 1) % n not in ranks]
            assert len(starts) == 1, "proper arc neighborhoods are circular rank runs"
            lo = starts[0]
            hi = (lo + len(ranks) - 1) % n
        r, l = coords[v]
        certs[v] = {
            "right": 2 * r,
            "left": 2 * l,
            "first": order[0],
            "pi": pos[v],
            "range_lo": lo,
            "range_hi": hi,
            "size": size[v],
        }
    return certs


def _successor_ok(c: dict, nbrs, n: int, slots: int) -> bool:
    # the wrap pair may be non-adjacent, so rank n-1 needs no successor
    succ = None
    for _, nc in nbrs:
        if nc["pi"] == (c["pi"] + 1) % n:
            succ = nc
    if succ is None:
        return c["pi"] > n - 2
    gap = (succ["left"] - c["left"]) % slots
    if gap == 0:
        return False
    for _, nc in nbrs:
        if nc is not succ and (nc["left"] - c["left"]) % slots <= gap:
            return False
    return True


def _permutation_cases_ok(c: dict, nbrs, n: int) -> bool:
    span = (c["range_hi"] - c["range_lo"]) % n + 1
    if span == n:
        # universal nodes sit in every window and skip the comparison
        return True
    pi = c["pi"]
    for _, nc in nbrs:
        other_span = (nc["range_hi"] - nc["range_lo"]) % n + 1
        if other_span == n:
            continue
        if nc["pi"] == (pi + 1) % n:
            # rotate myself first; the successor lands second
            my_hi = (c["range_hi"] - pi) % n
            their_hi = (nc["range_hi"] - pi) % n
            if their_hi != n - 1 and my_hi > their_hi:
                return False
        if nc["pi"] == (pi - 1) % n:
            # reflect, then rotate myself first; the predecessor lands second
            my_hi = (pi - c["range_lo"]) % n
            their_hi = (pi - nc["range_lo"]) % n
            if their_hi != n - 1 and my_hi > their_hi:
                return False
    return True


def proper_circ_verify(view: NodeView) -> bool:
    c = view.cert
    nbrs = view.neighbors
    if not check_size(view.id, c["size"], [(u, nc["size"]) for u, nc in nbrs]):
        return False
    n = c["size"]["claimed"]
    if c["size"]["tree"]["root"] != c["first"]:
        return False
    for _, nc in nbrs:
        if nc["first"] != c["first"]:
            return False
    if (view.id == c["first"]) != (c["pi"] == 0):
        return False
    if c["pi"] >= n or c["range_lo"] >= n or c["range_hi"] >= n:
        return False
    span = (c["range_hi"] - c["range_lo"]) % n + 1
    if span != view.degree + 1:
        return False
    if (c["pi"] - c["range_lo"]) % n >= span:
        return False
    slots = 4 * n
    if not (1 <= c["right"] <= slots and 1 <= c["left"] <= slots):
        return False
    mine = (c["right"], c["left"])
    seen = {c["pi"]}
    for _, nc in nbrs:
        p = nc["pi"]
        if p >= n or p in seen or (p - c["range_lo"]) % n >= span:
            return False
        seen.add(p)
        theirs = (nc["right"], nc["left"])
        if not arcs_intersect(mine, theirs, slots):
            return False
        if arc_contains(mine, theirs, slots) or arc_contains(theirs, mine, slots):
            return False
        if (p < c["pi"]) != (nc["right"] < c["right"]):
            return False
    if not _successor_ok(c, nbrs, n, slots):
        return False
    return _permutation_cases_ok(c, nbrs, n)


def _proper_circ_prove_model(g: Graph, model: ArcModel) -> dict[int, dict]:
    return proper_circ_prove(g, compatible_ordering_from_arcs(model), model)


PROPER_CIRC_SCHEME = Scheme(
    tag="proper-circular-arc",
    schema=PROPER_CIRC_SCHEMA,
    prove=_proper_circ_prove_model,
    verify=proper_circ_verify,
    witness_kind="proper-arc-model",
)


# ---------------------------------------------------------------------------
# circular-arc


CIRC_SCHEMA = Schema(
    "circular-arc",
    (
        Field("pi", lambda n: 0, lambda n: n - 1),
        Field("claimed", lambda n: 1, lambda n: n * n),
        Field("run", lambda n: 1, lambda n: n),
    ),
    (spanning_tree_schema(),),
)


def circ_prove(g: Graph, ordering) -> dict[int, dict]:
    """Certificates from an ordering whose stacked neighborhoods wrap.

    Each node gets its rank and the length of the solid run of ones
    below its diagonal entry, wrapping past the bottom. The run length
    is what lets two endpoints of an edge argue about who covers it.
    """
    order = tuple(ordering)
    if sorted(order) != sorted(g.ids):
        raise InvalidWitnessError("ordering is not a permutation of the nodes")
    if not has_quasi_circular_ones(g, order):
        raise InvalidWitnessError("ordering does not stack neighborhoods circularly")
    n = g.n
    tree = make_spanning_tree_cert(g, order[0])
    certs = {}
    for i, v in enumerate(order):
        run = 1
        while run < n and g.has_edge(v, order[(i + run) % n]):
            run += 1
        certs[v] = {"pi": i, "claimed": n, "run": run, "tree": tree[v]}
    return certs


def circ_verify(view: NodeView) -> bool:
    c = view.cert
    nbrs = view.neighbors
    if not check_spanning_tree(view.id, c["tree"], [(u, nc["tree"]) for u, nc in nbrs]):
        return False
    n = c["claimed"]
    if c["pi"] >= n or c["run"] > n or c["tree"]["depth"] >= n:
        return False
    if c["run"] - 1 > view.degree:
        return False
    positions = set()
    for _, nc in nbrs:
        if nc["claimed"] != n or nc["pi"] >= n or nc["run"] > n:
            return False
        if nc["pi"] == c["pi"] or nc["pi"] in positions:
            return False
        positions.add(nc["pi"])
    if c["pi"] <= n - 2:
        # every rank inside my run must be a visible neighbor, once each
        for t in range(1, c["run"]):
            if (c["pi"] + t) % n not in positions:
                return False
    for _, nc in nbrs:
        inside_mine = (nc["pi"] - c["pi"]) % n < c["run"]
        inside_theirs = (c["pi"] - nc["pi"]) % n < nc["run"]
        if not (inside_mine or inside_theirs):
            return False
    return True


def _circ_prove_model(g: Graph, model: ArcModel) -> dict[int, dict]:
    if not validate_arc_model(model, g):
        raise InvalidWitnessError("witness is not an arc model of g")
    return circ_prove(g, quasi_ordering_from_arcs(model))


CIRC_SCHEME = Scheme(
    tag="circular-arc",
    schema=CIRC_SCHEMA,
    prove=_circ_prove_model,
    verify=circ_verify,
    witness_kind="arc-model",
)

"""Schemes for proper interval, chordal, and interval graphs.

The proper interval scheme certifies a position in an umbrella ordering
plus the two neighbor window widths. The chordal scheme certifies the
trim partition of a normalized clique tree: every node learns its class
leader, class size, class depth, and the parent class leader, and a
chain walk lets any node audit the leader path from a deeper neighbor's
class down to its own. The interval scheme adds span fields on top of
the chordal certificate: a consecutive arrangement of the maximal
cliques assigns every node a contiguous position range, each position's
first new node marks itself as the bag leader and publishes the bag
size, and every node tallies the occupants of each position it covers
against that leader's count. In a chordal graph those tallies force
each position's occupants to form a clique, so the ranges really are an
interval representation.
"""

from __future__ import annotations

from ..errors import InvalidWitnessError, LeaderChoiceError
from ..graphs import Graph
from ..models import (
    CliqueTree,
    IntervalModel,
    choose_leaders,
    normalize_clique_tree,
    trim_partition,
    validate_clique_tree,
    validate_interval_model,
)
from ..runtime import (
    Field,
    NodeView,
    Schema,
    Scheme,
    check_size,
    id_field,
    bit_field,
    make_size_cert,
    optional_id_field,
    size_schema,
)

# ---------------------------------------------------------------------------
# proper interval


PROPER_INTERVAL_SCHEMA = Schema(
    "proper-interval",
    (
        Field("pos", lambda n: 1, lambda n: n),
        Field("left", lambda n: 0, lambda n: n - 1),
        Field("right", lambda n: 0, lambda n: n - 1),
        id_field("first"),
        id_field("last"),
    ),
)


def proper_interval_prove(g: Graph, ordering) -> dict[int, dict]:
    """Certificates from an umbrella ordering of the nodes.

    The ordering must make every neighborhood a contiguous block of
    positions around its node, which is exactly the ordering condition
    that characterizes proper interval graphs.
    """
    order = list(ordering)
    if sorted(order) != sorted(g.ids):
        raise InvalidWitnessError("ordering is not a permutation of the nodes")
    pos = {v: i + 1 for i, v in enumerate(order)}
    certs = {}
    for v in g.ids:
        before = sum(1 for u in g.neighbors(v) if pos[u] < pos[v])
        after = g.degree(v) - before
        want = list(range(pos[v] - before, pos[v])) + list(
            range(pos[v] + 1, pos[v] + after + 1)
        )
        if sorted(pos[u] for u in g.neighbors(v)) != want:
            raise InvalidWitnessError("ordering violates the umbrella condition")
        certs[v] = {
            "pos": pos[v],
            "left": before,
            "right": after,
            "first": order[0],
            "last": order[-1],
        }
    return certs


def _umbrella_order(model: IntervalModel) -> tuple[int, ...]:
    # in a proper model left endpoint order is an umbrella ordering
    return tuple(sorted(model.intervals, key=lambda v: (model.intervals[v], v)))


def _proper_interval_prove_model(g: Graph, model: IntervalModel) -> dict[int, dict]:
    if not model.proper or not validate_interval_model(model, g):
        raise InvalidWitnessError("witness is not a proper interval model of g")
    return proper_interval_prove(g, _umbrella_order(model))


def proper_interval_verify(view: NodeView) -> bool:
    c = view.cert
    mine = c["pos"]
    if c["left"] + c["right"] != view.degree:
        return False
    am_first = c["first"] == view.id
    am_last = c["last"] == view.id
    if view.degree == 0:
        # an isolated node claims the one node graph
        return am_first and am_last and mine == 1
    if am_first and am_last:
        return False
    for _, nc in view.neighbors:
        if nc["first"] != c["first"] or nc["last"] != c["last"]:
            return False
    if am_first and (mine != 1 or c["left"] != 0):
        return False
    if not am_first and c["left"] < 1:
        return False
    if am_last and c["right"] != 0:
        return False
    if not am_last and c["right"] < 1:
        return False
    want = list(range(mine - c["left"], mine)) + list(
        range(mine + 1, mine + c["right"] + 1)
    )
    return sorted(nc["pos"] for _, nc in view.neighbors) == want


# ---------------------------------------------------------------------------
# chordal

CHORDAL_FIELDS = (
    Field("tree_size", lambda n: 1, lambda n: n),
    id_field("root_leader"),
    id_field("f_leader"),
    Field("f_size", lambda n: 1, lambda n: n),
    Field("depth", lambda n: 0, lambda n: n - 1),
    id_field("parent_leader"),
    bit_field("edge_leader"),
    bit_field("aux"),
    optional_id_field("vouch_child"),
    Field("vouch_child_depth", lambda n: 0, lambda n: n - 1),
)

CHORDAL_SCHEMA = Schema("chordal", CHORDAL_FIELDS, (size_schema(),))


def _class_certs(g: Graph, tree: CliqueTree):
    """Shared per-node class data for the chordal and interval schemes."""
    classes = trim_partition(tree)
    assignment = choose_leaders(tree, g)
    rho = {}
    for b in range(tree.size):
        rho[b] = assignment.leader[tree.root] if b == tree.root else min(classes[b])
    bag_of = {}
    for b, members in enumerate(classes):
        for v in members:
            bag_of[v] = b
    led: dict[int, list[int]] = {}
    for b, v in assignment.leader.items():
        if b != tree.root:
            led.setdefault(v, []).append(b)
    base = {}
    for v in g.ids:
        b = bag_of[v]
        parent_bag = tree.parent[b]
        base[v] = {
            "tree_size": tree.size,
            "root_leader": rho[tree.root],
            "f_leader": rho[b],
            "f_size": len(classes[b]),
            "depth": tree.depth[b],
            "parent_leader": rho[parent_bag] if b != tree.root else rho[b],
            "edge_leader": 1 if v in led else 0,
            "aux": 1 if v in set(assignment.aux.values()) else 0,
        }
    return classes, rho, bag_of, led, base


def chordal_prove(g: Graph, t: CliqueTree) -> dict[int, dict]:
    if not validate_clique_tree(t, g):
        raise InvalidWitnessError("witness is not a clique tree of g")
    try:
        tree = normalize_clique_tree(t, g)
    except LeaderChoiceError as exc:
        raise InvalidWitnessError(str(exc)) from exc
    _, rho, _, led, base = _class_certs(g, tree)
    size = make_size_cert(g, rho[tree.root])
    certs = {}
    for v in g.ids:
        cert = dict(base[v])
        if v in led:
            # several led bags share one depth; vouch the smallest leader
            chosen = min(led[v], key=lambda b: rho[b])
            cert["vouch_child"] = rho[chosen]
            cert["vouch_child_depth"] = tree.depth[chosen]
        else:
            cert["vouch_child"] = 0
            cert["vouch_child_depth"] = 0
        cert["size"] = size[v]
        certs[v] = cert
    return certs


def _check_class_core(view: NodeView) -> bool:
    """Checks shared by the chordal and interval verifiers."""
    c = view.cert
    nbrs = view.neighbors
    if not check_size(view.id, c["size"], [(u, nc["size"]) for u, nc in nbrs]):
        return False
    if c["size"]["tree"]["root"] != c["root_leader"]:
        return False
    for _, nc in nbrs:
        if nc["root_leader"] != c["root_leader"] or nc["tree_size"] != c["tree_size"]:
            return False
    if c["depth"] >= c["tree_size"]:
        return False
    if (c["depth"] == 0) != (c["f_leader"] == c["root_leader"]):
        return False
    if view.id == c["root_leader"] and (c["depth"] != 0 or c["f_leader"] != view.id):
        return False
    if c["depth"] == 0:
        if c["parent_leader"] != c["f_leader"]:
            return False
    elif c["parent_leader"] == c["f_leader"]:
        return False

    same_class = [nc for _, nc in nbrs if nc["f_leader"] == c["f_leader"]]
    for nc in same_class:
        if (
            nc["depth"] != c["depth"]
            or nc["parent_leader"] != c["parent_leader"]
            or nc["f_size"] != c["f_size"]
        ):
            return False
    if len(same_class) != c["f_size"] - 1:
        return False
    if c["f_leader"] != view.id:
        leader = next((nc for u, nc in nbrs if u == c["f_leader"]), None)
        if leader is None or leader["f_leader"] != c["f_leader"]:
            return False
        # class parameters were already matched through the same_class loop
    # adjacent equal-depth nodes always share a bag, hence a class
    for _, nc in nbrs:
        if nc["depth"] == c["depth"] and nc["f_leader"] != c["f_leader"]:
            return False
    if c["depth"] >= 1 and not any(nc["depth"] < c["depth"] for _, nc in nbrs):
        return False
    return _chain_walks(view)


def _chain_walks(view: NodeView) -> bool:
    """Audit the leader chain from every deeper neighbor's class to mine.

    Each step looks up the expected class leader among my own neighbors,
    demands it certify itself, and counts its whole class among my
    neighbors; then the expected pair moves to the parent class one depth
    up. Reaching my depth must land exactly on my own class leader.
    """
    c = view.cert
    by_id = {u: nc for u, nc in view.neighbors}
    class_count: dict[int, int] = {}
    for _, nc in view.neighbors:
        class_count[nc["f_leader"]] = class_count.get(nc["f_leader"], 0) + 1
    for _, nc in view.neighbors:
        if nc["depth"] <= c["depth"]:
            continue
        expected_id, expected_depth = nc["f_leader"], nc["depth"]
        while expected_depth > c["depth"]:
            x = by_id.get(expected_id)
            if x is None or x["f_leader"] != expected_id or x["depth"] != expected_depth:
                return False
            if class_count.get(expected_id, 0) != x["f_size"]:
                return False
            expected_id, expected_depth = x["parent_leader"], expected_depth - 1
        if expected_id != c["f_leader"]:
            return False
    return True


def chordal_verify(view: NodeView) -> bool:
    if not _check_class_core(view):
        return False
    c = view.cert
    nbrs = view.neighbors
    if c["edge_leader"] and c["aux"]:
        return False
    if not c["edge_leader"]:
        if c["vouch_child"] != 0 or c["vouch_child_depth"] != 0:
            return False
    else:
        if not _vouch_ok(
            view, c["vouch_child"], c["vouch_child_depth"], c["f_leader"]
        ):
            return False
        if c["depth"] >= 1 and not any(
            nc["edge_leader"]
            and nc["depth"] == c["depth"] - 1
            and nc["vouch_child_depth"] == c["depth"]
            for _, nc in nbrs
        ):
            return False
    if c["aux"]:
        if c["depth"] < 1:
            return False
        if not any(
            nc["edge_leader"]
            and nc["depth"] == c["depth"] - 1
            and nc["vouch_child_depth"] == c["depth"]
            for _, nc in nbrs
        ):
            return False
    return True


def _vouch_ok(view: NodeView, child: int, child_depth: int, parent_value: int) -> bool:
    """One vouch slot: the named child class leader must be an adjacent
    self-certifying leader one level down whose parent class is named, with
    its full class visible from here."""
    c = view.cert
    if child == 0 or child_depth != c["depth"] + 1:
        return False
    x = next((nc for u, nc in view.neighbors if u == child), None)
    if x is None or x["f_leader"] != child or x["depth"] != child_depth:
        return False
    if x["parent_leader"] != parent_value:
        return False
    seen = sum(1 for _, nc in view.neighbors if nc["f_leader"] == child)
    return seen == x["f_size"]


# ---------------------------------------------------------------------------
# interval

INTERVAL_SCHEMA = Schema(
    "interval",
    CHORDAL_FIELDS
    + (
        Field("span_lo", lambda n: 0, lambda n: n - 1),
        Field("span_hi", lambda n: 0, lambda n: n - 1),
        bit_field("span_leader"),
        Field("span_size", lambda n: 1, lambda n: n),
    ),
    (size_schema(),),
)


def _consecutive_arrangements(bags: list[frozenset[int]]):
    """Orders where every node's bags are consecutive, by backtracking.

    A node that has appeared and is still due in an unplaced bag must be
    in the next bag, which prunes the search hard. The stack is explicit
    so deep arrangements do not hit the interpreter recursion limit, and
    candidates are drawn from the bags containing one open node instead
    of the full bag list; both changes keep the exploration order of the
    plain index scan.
    """
    k = len(bags)
    if k == 0:
        yield []
        return
    total: dict[int, int] = {}
    holding: dict[int, list[int]] = {}
    for i, b in enumerate(bags):
        for v in b:
            total[v] = total.get(v, 0) + 1
            holding.setdefault(v, []).append(i)
    seen = {v: 0 for v in total}
    open_nodes: set[int] = set()
    order: list[int] = []
    used = [False] * k

    def place(i: int) -> None:
        for v in bags[i]:
            seen[v] += 1
            if seen[v] < total[v]:
                open_nodes.add(v)
            else:
                open_nodes.discard(v)
        used[i] = True
        order.append(i)

    def unplace(i: int) -> None:
        for v in bags[i]:
            seen[v] -= 1
            if seen[v] == 0:
                open_nodes.discard(v)
            elif seen[v] < total[v]:
                open_nodes.add(v)
        used[i] = False
        order.pop()

    def candidates():
        # any valid bag contains every open node, so scanning one open
        # node's holders ascending matches scanning all indices ascending
        if not open_nodes:
            return iter(range(k))
        pivot = min(open_nodes, key=lambda v: (len(holding[v]), v))
        return iter(holding[pivot])

    stack = [candidates()]
    while stack:
        pushed = False
        for i in stack[-1]:
            if used[i] or open_nodes - bags[i]:
                continue
            place(i)
            if len(order) == k:
                yield list(order)
                unplace(i)
                continue
            stack.append(candidates())
            pushed = True
            break
        if not pushed:
            stack.pop()
            if order:
                unplace(order[-1])


def interval_prove(g: Graph, t: CliqueTree) -> dict[int, dict]:
    """Chordal certificates plus spans over a consecutive clique arrangement.

    Interval graphs are exactly the chordal graphs whose maximal cliques
    can be lined up so that every node's cliques are consecutive; the span
    fields publish each node's position range in one such line, the first
    new node of every position marks itself as that bag's leader and
    carries the bag size.
    """
    if not validate_clique_tree(t, g):
        raise InvalidWitnessError("witness is not a clique tree of g")
    bags = list(t.bags)
    order = next(_consecutive_arrangements(bags), None)
    if order is None:
        raise InvalidWitnessError("maximal cliques admit no consecutive arrangement")
    certs = chordal_prove(g, t)
    lo = {v: None for v in g.ids}
    hi = {}
    leader_at = []
    for pos, bag_idx in enumerate(order):
        bag = bags[bag_idx]
        entrants = bag - bags[order[pos - 1]] if pos else bag
        assert entrants, "maximal cliques always bring a new node"
        leader_at.append(min(entrants))
        for v in bag:
            if lo[v] is None:
                lo[v] = pos
            hi[v] = pos
    leaders = set(leader_at)
    for v in g.ids:
        certs[v]["span_lo"] = lo[v]
        certs[v]["span_hi"] = hi[v]
        certs[v]["span_leader"] = 1 if v in leaders else 0
        certs[v]["span_size"] = (
            len(bags[order[lo[v]]]) if v in leaders else 1
        )
    return certs


def interval_verify(view: NodeView) -> bool:
    """Chordal checks plus the consecutive-arrangement span checks.

    Every position in my span must expose exactly one adjacent-or-self
    bag leader whose member count matches my own tally. Together with
    chordality this pins each position's occupants to a clique, so the
    published spans really are an interval representation.
    """
    if not chordal_verify(view):
        return False
    c = view.cert
    lo, hi = c["span_lo"], c["span_hi"]
    if lo > hi:
        return False
    if not c["span_leader"] and c["span_size"] != 1:
        return False
    for _, nc in view.neighbors:
        if nc["span_hi"] < lo or nc["span_lo"] > hi:
            return False
    for d in range(lo, hi + 1):
        owners = [
            nc
            for _, nc in view.neighbors
            if nc["span_leader"] and nc["span_lo"] == d
        ]
        if c["span_leader"] and lo == d:
            owners.append(c)
        if len(owners) != 1:
            return False
        present = 1 + sum(
            1 for _, nc in view.neighbors if nc["span_lo"] <= d <= nc["span_hi"]
        )
        if present != owners[0]["span_size"]:
            return False
    return True


PROPER_INTERVAL_SCHEME = Scheme(
    tag="proper-interval",
    schema=PROPER_INTERVAL_SCHEMA,
    prove=_proper_interval_prove_model,
    verify=proper_interval_verify,
    witness_kind="proper-interval",
)

CHORDAL_SCHEME = Scheme(
    tag="chordal",
    schema=CHORDAL_SCHEMA,
    prove=chordal_prove,
    verify=chordal_verify,
    witness_kind="clique-tree",
)

INTERVAL_SCHEME = Scheme(
    tag="interval",
    schema=INTERVAL_SCHEMA,
    prove=interval_prove,
    verify=interval_verify,
    witness_kind="clique-tree",
)

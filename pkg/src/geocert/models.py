"""Geometric intersection models and the clique-tree machinery.

A model is the prover's witness: intervals on a line, arcs on a circle,
trapezoids or crossing segments between two parallel lines, or a rooted
clique tree. Validators check a model against a graph; the trim partition
and leader selection turn a rooted clique tree into the structures the
chordal and interval schemes certify.

Coordinates are integer slots: intervals and arcs use [1, 2n] with every
slot an endpoint of exactly one node, trapezoids use [1, 2n] per line.
Integer slots are equivalent to real coordinates here because every
argument only needs separation between endpoints, and they keep tests
bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import (
    EmptyBagSetError,
    GraphFormatError,
    LeaderChoiceError,
    MalformedModelError,
)
from .graphs import Graph


# ---------------------------------------------------------------------------
# interval models


@dataclass(frozen=True)
class IntervalModel:
    """Per-node intervals (a, b) with a < b over the slots [1, 2n]."""

    intervals: dict[int, tuple[int, int]]
    proper: bool = False

    @property
    def n(self) -> int:
        return len(self.intervals)


def _check_interval_structure(m: IntervalModel, g: Graph) -> None:
    if set(m.intervals) != set(g.ids):
        raise MalformedModelError("model nodes differ from graph nodes")
    endpoints: list[int] = []
    for v, (a, b) in m.intervals.items():
        if a >= b:
            raise MalformedModelError(f"interval of {v} is not increasing")
        endpoints += [a, b]
    if sorted(endpoints) != list(range(1, 2 * g.n + 1)):
        raise MalformedModelError("endpoints must cover [1, 2n] exactly once each")


def validate_interval_model(m: IntervalModel, g: Graph) -> bool:
    """True iff interval intersection reproduces adjacency exactly.

    With the proper flag set, containment between any two intervals also
    fails validation. Structural breakage raises MalformedModelError.
    """
    _check_interval_structure(m, g)
    ids = g.ids
    for i, u in enumerate(ids):
        au, bu = m.intervals[u]
        for v in ids[i + 1 :]:
            av, bv = m.intervals[v]
            meet = au <= bv and av <= bu
            if meet != g.has_edge(u, v):
                return False
            if m.proper and ((au < av and bv < bu) or (av < au and bu < bv)):
                return False
    return True


# ---------------------------------------------------------------------------
# circular-arc models

# An arc is stored as (r, l): traversed counter-clockwise it starts at the
# left endpoint l and ends at the right endpoint r. Coverage is decided by
# circular offsets so that near-full arcs behave correctly.


def arc_covers(arc: tuple[int, int], x: int, slots: int) -> bool:
    r, l = arc
    return (x - l) % slots <= (r - l) % slots


def arcs_intersect(a: tuple[int, int], b: tuple[int, int], slots: int) -> bool:
    return (
        arc_covers(a, b[0], slots)
        or arc_covers(a, b[1], slots)
        or arc_covers(b, a[0], slots)
        or arc_covers(b, a[1], slots)
    )


def arc_contains(outer: tuple[int, int], inner: tuple[int, int], slots: int) -> bool:
    off = (inner[1] - outer[1]) % slots
    return off + (inner[0] - inner[1]) % slots <= (outer[0] - outer[1]) % slots


@dataclass(frozen=True)
class ArcModel:
    """Per-node arcs (r, l) on a cycle of 2n integer slots."""

    arcs: dict[int, tuple[int, int]]
    proper: bool = False

    @property
    def n(self) -> int:
        return len(self.arcs)

    @property
    def slots(self) -> int:
        return 2 * len(self.arcs)


def _check_arc_structure(m: ArcModel, g: Graph) -> None:
    if set(m.arcs) != set(g.ids):
        raise MalformedModelError("model nodes differ from graph nodes")
    endpoints: list[int] = []
    for v, (r, l) in m.arcs.items():
        endpoints += [r, l]
    if sorted(endpoints) != list(range(1, 2 * g.n + 1)):
        raise MalformedModelError("arc endpoints must cover [1, 2n] exactly once each")


def validate_arc_model(m: ArcModel, g: Graph) -> bool:
    """True iff circular arc intersection reproduces adjacency exactly."""
    _check_arc_structure(m, g)
    slots = m.slots
    ids = g.ids
    for i, u in enumerate(ids):
        for v in ids[i + 1 :]:
            meet = arcs_intersect(m.arcs[u], m.arcs[v], slots)
            if meet != g.has_edge(u, v):
                return False
            if m.proper and (
                arc_contains(m.arcs[u], m.arcs[v], slots)
                or arc_contains(m.arcs[v], m.arcs[u], slots)
            ):
                return False
    return True


# ---------------------------------------------------------------------------
# trapezoid and permutation models


@dataclass(frozen=True)
class TrapezoidModel:
    """Per-node (t1, t2, b1, b2) corners between two parallel lines.

    mode "proper" demands adjacency iff trapezoid intersection; the weaker
    "semi-proper" mode only demands that adjacent nodes intersect.
    """

    coords: dict[int, tuple[int, int, int, int]]
    mode: str = "proper"
    consecutive: bool = False

    @property
    def n(self) -> int:
        return len(self.coords)


def trapezoids_disjoint(
    p: tuple[int, int, int, int], q: tuple[int, int, int, int]
) -> bool:
    # disjoint iff one trapezoid lies strictly left of the other on both lines
    return (p[1] < q[0] and p[3] < q[2]) or (q[1] < p[0] and q[3] < p[2])


def _check_trapezoid_structure(m: TrapezoidModel, g: Graph) -> None:
    if set(m.coords) != set(g.ids):
        raise MalformedModelError("model nodes differ from graph nodes")
    if m.mode not in ("proper", "semi-proper"):
        raise MalformedModelError(f"unknown mode {m.mode!r}")
    tops: list[int] = []
    bottoms: list[int] = []
    for v, (t1, t2, b1, b2) in m.coords.items():
        if t1 >= t2 or b1 >= b2:
            raise MalformedModelError(f"corners of {v} are not increasing")
        if m.consecutive and (t2 != t1 + 1 or b2 != b1 + 1):
            raise MalformedModelError(f"corners of {v} are not consecutive")
        tops += [t1, t2]
        bottoms += [b1, b2]
    domain = list(range(1, 2 * g.n + 1))
    if sorted(tops) != domain or sorted(bottoms) != domain:
        raise MalformedModelError("each line's corners must cover [1, 2n] exactly")


def validate_trapezoid_model(m: TrapezoidModel, g: Graph) -> bool:
    """Check a trapezoid model against the graph in its declared mode."""
    _check_trapezoid_structure(m, g)
    ids = g.ids
    for i, u in enumerate(ids):
        for v in ids[i + 1 :]:
            meet = not trapezoids_disjoint(m.coords[u], m.coords[v])
            edge = g.has_edge(u, v)
            if m.mode == "proper" and meet != edge:
                return False
            if m.mode == "semi-proper" and edge and not meet:
                return False
    return True


@dataclass(frozen=True)
class PermutationModel:
    """Two bijections node -> [1, n]; nodes are adjacent iff their segments cross."""

    l1: dict[int, int]
    l2: dict[int, int]

    @property
    def n(self) -> int:
        return len(self.l1)


def validate_permutation_model(m: PermutationModel, g: Graph) -> bool:
    domain = list(range(1, g.n + 1))
    if set(m.l1) != set(g.ids) or set(m.l2) != set(g.ids):
        raise MalformedModelError("model nodes differ from graph nodes")
    if sorted(m.l1.values()) != domain or sorted(m.l2.values()) != domain:
        raise MalformedModelError("l1 and l2 must be bijections onto [1, n]")
    ids = g.ids
    for i, u in enumerate(ids):
        for v in ids[i + 1 :]:
            crosses = (m.l1[v] - m.l1[u]) * (m.l2[v] - m.l2[u]) < 0
            if crosses != g.has_edge(u, v):
                return False
    return True


def permutation_to_consecutive_trapezoid(m: PermutationModel) -> TrapezoidModel:
    """Blow each crossing segment up into a width-one trapezoid."""
    coords = {
        v: (2 * m.l2[v] - 1, 2 * m.l2[v], 2 * m.l1[v] - 1, 2 * m.l1[v]) for v in m.l1
    }
    return TrapezoidModel(coords, mode="proper", consecutive=True)


def consecutive_trapezoid_to_permutation(m: TrapezoidModel) -> PermutationModel:
    """Inverse of permutation_to_consecutive_trapezoid; needs odd t1 and b1."""
    if not m.consecutive:
        raise MalformedModelError("only consecutive models convert back")
    l1, l2 = {}, {}
    for v, (t1, _, b1, _) in m.coords.items():
        if t1 % 2 == 0 or b1 % 2 == 0:
            raise MalformedModelError("consecutive corners must start at odd slots")
        l2[v] = (t1 + 1) // 2
        l1[v] = (b1 + 1) // 2
    return PermutationModel(l1, l2)


# ---------------------------------------------------------------------------
# clique trees


@dataclass(frozen=True)
class CliqueTree:
    """Rooted clique tree: bags of nodes, a parent index per bag.

    The root is its own parent. Bags are maximal cliques for valid trees;
    validate_clique_tree checks that together with the decomposition
    conditions.
    """

    bags: tuple[frozenset[int], ...]
    parent: tuple[int, ...]
    root: int

    def __post_init__(self) -> None:
        k = len(self.bags)
        if len(self.parent) != k or not 0 <= self.root < k:
            raise GraphFormatError("parent array does not match the bag list")
        if self.parent[self.root] != self.root:
            raise GraphFormatError("the root bag must be its own parent")

    @property
    def size(self) -> int:
        return len(self.bags)

    @cached_property
    def depth(self) -> tuple[int, ...]:
        depth = [-1] * self.size
        depth[self.root] = 0
        changed = True
        while changed:
            changed = False
            for i, p in enumerate(self.parent):
                if depth[i] < 0 and depth[p] >= 0:
                    depth[i] = depth[p] + 1
                    changed = True
        if any(d < 0 for d in depth):
            raise GraphFormatError("parent pointers do not reach the root")
        return tuple(depth)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.bags]
        for i, p in enumerate(self.parent):
            if i != self.root:
                kids[p].append(i)
        return tuple(tuple(k) for k in kids)

    def is_leaf(self, i: int) -> bool:
        return i != self.root and not self.children[i]

    def re_root(self, new_root: int) -> "CliqueTree":
        """Same bag set and tree edges, rooted at another bag."""
        edges: dict[int, set[int]] = {i: set() for i in range(self.size)}
        for i, p in enumerate(self.parent):
            if i != self.root:
                edges[i].add(p)
                edges[p].add(i)
        parent = list(range(self.size))
        seen = {new_root}
        frontier = [new_root]
        while frontier:
            nxt = []
            for b in frontier:
                for c in edges[b]:
                    if c not in seen:
                        seen.add(c)
                        parent[c] = b
                        nxt.append(c)
            frontier = nxt
        return CliqueTree(self.bags, tuple(parent), new_root)


def validate_clique_tree(t: CliqueTree, g: Graph) -> bool:
    """Tree-decomposition conditions plus bag maximality, as booleans."""
    covered = set().union(*t.bags) if t.bags else set()
    if covered != set(g.ids):
        return False
    for u, v in g.edges:
        if not any(u in bag and v in bag for bag in t.bags):
            return False
    for v in g.ids:
        holding = [i for i, bag in enumerate(t.bags) if v in bag]
        if not _bags_connected(t, holding):
            return False
    for bag in t.bags:
        if not g.is_clique(bag):
            return False
        closed = None
        for v in bag:
            closed = g.closed_neighborhood(v) if closed is None else closed & g.closed_neighborhood(v)
        if closed is None or closed != bag:
            return False
    return True


def _bags_connected(t: CliqueTree, indices: list[int]) -> bool:
    if not indices:
        return False
    member = set(indices)
    seen = {indices[0]}
    frontier = [indices[0]]
    while frontier:
        nxt = []
        for b in frontier:
            adjacent = list(t.children[b])
            if b != t.root:
                adjacent.append(t.parent[b])
            for c in adjacent:
                if c in member and c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen == member


def trim_partition(t: CliqueTree) -> tuple[frozenset[int], ...]:
    """Assign every node to the lowest-depth bag containing it.

    For a valid clique tree the class of bag b is exactly b minus its
    parent bag. An empty class means b was contained in its parent, which
    contradicts bag maximality, hence the explicit error.
    """
    classes = []
    for i, bag in enumerate(t.bags):
        f = bag if i == t.root else bag - t.bags[t.parent[i]]
        if not f:
            raise EmptyBagSetError(f"bag {i} is contained in its parent")
        classes.append(frozenset(f))
    return tuple(classes)


@dataclass(frozen=True)
class LeaderAssignment:
    """Per-bag connector leaders plus one auxiliary per non-root leaf."""

    leader: dict[int, int]
    aux: dict[int, int]


def choose_leaders(t: CliqueTree, g: Graph | None = None) -> LeaderAssignment:
    """Pick per-bag leaders so that certificates can simulate tree edges.

    A non-root bag's leader lives in the intersection with its parent but
    outside its grandparent, which pins its trim depth to the parent's
    level and makes leaders at different depths distinct. The root leader
    is picked outside every child intersection that is a forced singleton,
    so the depth-one choices stay available. Smallest id breaks every tie.

    Raises LeaderChoiceError when some bag has no eligible node; callers
    re-normalize the tree and retry.
    """
    depth = t.depth
    root_bag = t.bags[t.root]
    forced = set()
    for c in t.children[t.root]:
        inter = root_bag & t.bags[c]
        if not inter:
            raise LeaderChoiceError("adjacent bags must intersect")
        if len(inter) == 1:
            forced |= inter
    candidates = sorted(root_bag - forced)
    if not candidates:
        raise LeaderChoiceError("no root leader avoids the forced child picks")
    leader = {t.root: candidates[0]}
    for i in range(t.size):
        if i == t.root:
            continue
        p = t.parent[i]
        eligible = t.bags[i] & t.bags[p]
        if depth[i] >= 2:
            eligible = eligible - t.bags[t.parent[p]]
        else:
            eligible = eligible - {leader[t.root]}
        if not eligible:
            raise LeaderChoiceError(f"bag {i} has no eligible leader")
        leader[i] = min(eligible)
    aux = {}
    for i in range(t.size):
        if t.is_leaf(i):
            private = t.bags[i] - t.bags[t.parent[i]]
            if not private:
                raise LeaderChoiceError(f"leaf bag {i} adds no node")
            aux[i] = min(private)
    assignment = LeaderAssignment(leader, aux)
    check_leader_conditions(t, g, assignment)
    return assignment


def check_leader_conditions(
    t: CliqueTree, g: Graph | None, a: LeaderAssignment
) -> None:
    """Assert the five structural leader conditions; None graph skips edges."""
    depth = t.depth
    for b, v in a.leader.items():
        assert v in t.bags[b], "leader must belong to its bag"
        if g is not None and b != t.root:
            assert g.has_edge(v, a.leader[t.parent[b]]), "leader chain must be edges"
    items = list(a.leader.items())
    for i, (b, v) in enumerate(items):
        for b2, v2 in items[i + 1 :]:
            if depth[b] != depth[b2]:
                assert v != v2, "leaders at different depths must differ"
    for leaf, w in a.aux.items():
        assert w in t.bags[leaf], "auxiliary must belong to its leaf"
        if g is not None:
            assert w == a.leader[leaf] or g.has_edge(w, a.leader[leaf])
    assert not set(a.leader.values()) & set(a.aux.values()), (
        "leaders and auxiliaries must be disjoint"
    )


def normalize_clique_tree(t: CliqueTree, g: Graph | None = None) -> CliqueTree:
    """Massage a valid clique tree until leader choice succeeds.

    Two moves: re-hang a bag under its grandparent whenever its parent
    intersection is contained there (this strictly lowers the depth sum,
    so it terminates), and, if a rooting gets stuck, restart from another
    root bag. Trees of connected chordal graphs always land somewhere
    choose_leaders accepts.
    """
    order = [t.root] + [i for i in range(t.size) if i != t.root]
    for root in order:
        cur = t if root == t.root else t.re_root(root)
        for _ in range(t.size * t.size + 1):
            try:
                choose_leaders(cur, g)
                return cur
            except LeaderChoiceError:
                move = _find_rehang(cur)
                if move is None:
                    break
                cur = _apply_rehang(cur, *move)
        else:
            raise AssertionError("re-hang loop exceeded its bound")
    raise LeaderChoiceError("no rooting of this tree admits a leader choice")


def _find_rehang(t: CliqueTree) -> tuple[int, int] | None:
    depth = t.depth
    for b in range(t.size):
        if b == t.root or depth[b] < 2:
            continue
        p = t.parent[b]
        gp = t.parent[p]
        if t.bags[b] & t.bags[p] <= t.bags[gp]:
            return b, gp
    return None


def _apply_rehang(t: CliqueTree, bag: int, new_parent: int) -> CliqueTree:
    parent = list(t.parent)
    parent[bag] = new_parent
    return CliqueTree(t.bags, tuple(parent), t.root)


# ---------------------------------------------------------------------------
# model files

_MODEL_TAGS = {
    "interval": IntervalModel,
    "proper-interval": IntervalModel,
    "circular-arc": ArcModel,
    "proper-circular-arc": ArcModel,
    "trapezoid": TrapezoidModel,
    "permutation": PermutationModel,
    "clique-tree": CliqueTree,
}


def write_model(model) -> str:
    """Serialize a model in the line-oriented text format."""
    lines: list[str] = []
    if isinstance(model, IntervalModel):
        lines.append("class proper-interval" if model.proper else "class interval")
        for v in sorted(model.intervals):
            a, b = model.intervals[v]
            lines.append(f"{v} {a} {b}")
    elif isinstance(model, ArcModel):
        lines.append(
            "class proper-circular-arc" if model.proper else "class circular-arc"
        )
        for v in sorted(model.arcs):
            r, l = model.arcs[v]
            lines.append(f"{v} {r} {l}")
    elif isinstance(model, TrapezoidModel):
        lines.append("class trapezoid")
        lines.append(f"mode {model.mode}")
        lines.append(f"consecutive {int(model.consecutive)}")
        for v in sorted(model.coords):
            t1, t2, b1, b2 = model.coords[v]
            lines.append(f"{v} {t1} {t2} {b1} {b2}")
    elif isinstance(model, PermutationModel):
        lines.append("class permutation")
        for v in sorted(model.l1):
            lines.append(f"{v} {model.l1[v]} {model.l2[v]}")
    elif isinstance(model, CliqueTree):
        lines.append("class clique-tree")
        lines.append(f"root {model.root}")
        for i, bag in enumerate(model.bags):
            lines.append(f"bag {i} " + " ".join(str(v) for v in sorted(bag)))
        for i, p in enumerate(model.parent):
            if i != model.root:
                lines.append(f"edge {i} {p}")
    else:
        raise MalformedModelError(f"cannot serialize {type(model).__name__}")
    return "\n".join(lines) + "\n"


def parse_model(text: str):
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("class "):
        raise GraphFormatError("model file must start with a class line")
    tag = lines[0][len("class ") :].strip()
    if tag not in _MODEL_TAGS:
        raise GraphFormatError(f"unknown model class {tag!r}")
    body = lines[1:]
    if tag in ("interval", "proper-interval"):
        pairs = _parse_rows(body, 3)
        return IntervalModel(
            {v: (a, b) for v, a, b in pairs}, proper=tag == "proper-interval"
        )
    if tag in ("circular-arc", "proper-circular-arc"):
        pairs = _parse_rows(body, 3)
        return ArcModel(
            {v: (r, l) for v, r, l in pairs}, proper=tag == "proper-circular-arc"
        )
    if tag == "permutation":
        rows = _parse_rows(body, 3)
        return PermutationModel(
            {v: a for v, a, _ in rows}, {v: b for v, _, b in rows}
        )
    if tag == "trapezoid":
        if len(body) < 2 or not body[0].startswith("mode ") or not body[
            1
        ].startswith("consecutive "):
            raise GraphFormatError("trapezoid model needs mode and consecutive lines")
        mode = body[0][len("mode ") :].strip()
        consecutive = body[1][len("consecutive ") :].strip()
        if consecutive not in ("0", "1"):
            raise GraphFormatError("consecutive must be 0 or 1")
        rows = _parse_rows(body[2:], 5)
        return TrapezoidModel(
            {v: (t1, t2, b1, b2) for v, t1, t2, b1, b2 in rows},
            mode=mode,
            consecutive=consecutive == "1",
        )
    # clique tree
    if not body or not body[0].startswith("root "):
        raise GraphFormatError("clique tree needs a root line")
    try:
        root = int(body[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise GraphFormatError("bad root line") from exc
    bags: dict[int, frozenset[int]] = {}
    parents: dict[int, int] = {}
    for ln in body[1:]:
        parts = ln.split()
        if parts[0] == "bag":
            try:
                idx = int(parts[1])
                members = frozenset(int(x) for x in parts[2:])
            except ValueError as exc:
                raise GraphFormatError(f"bad bag line: {ln!r}") from exc
            if idx in bags or not members:
                raise GraphFormatError(f"bad bag line: {ln!r}")
            bags[idx] = members
        elif parts[0] == "edge" and len(parts) == 3:
            try:
                child, parent = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise GraphFormatError(f"bad edge line: {ln!r}") from exc
            if child in parents:
                raise GraphFormatError(f"duplicate edge for bag {child}")
            parents[child] = parent
        else:
            raise GraphFormatError(f"unexpected line: {ln!r}")
    k = len(bags)
    if sorted(bags) != list(range(k)) or set(parents) != set(range(k)) - {root}:
        raise GraphFormatError("bag indices and edges do not form a rooted tree")
    parent = tuple(parents.get(i, i) for i in range(k))
    return CliqueTree(tuple(bags[i] for i in range(k)), parent, root)


def _parse_rows(lines: list[str], width: int) -> list[tuple[int, ...]]:
    rows = []
    for ln in lines:
        parts = ln.split()
        if len(parts) != width:
            raise GraphFormatError(f"expected {width} integers per line: {ln!r}")
        try:
            rows.append(tuple(int(x) for x in parts))
        except ValueError as exc:
            raise GraphFormatError(f"bad model line: {ln!r}") from exc
    return rows


def random_model(kind: str, n: int, seed: int):
    """Sample (graph, model) of the requested class; see generators module."""
    from . import generators

    return generators.random_model(kind, n, seed)

"""Undirected graphs with validated construction plus small-graph utilities.

Nodes carry positive integer ids, by default 1..n but anything distinct
inside [1, n**ID_EXPONENT] is accepted so verifiers can be exercised under
permuted id spaces. Construction rejects self loops, duplicate edges,
unknown endpoints and disconnected inputs; everything downstream relies on
connectivity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    GraphFormatError,
    IdCollisionError,
    IdRangeError,
    SearchTooLargeError,
    SelfLoopError,
    UnknownNodeError,
)

ID_EXPONENT = 3

INDUCED_CYCLE_CAP = 16


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph. ids and edges are stored sorted."""

    ids: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    adj: dict[int, frozenset[int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        nbrs: dict[int, set[int]] = {v: set() for v in self.ids}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "adj", {v: frozenset(s) for v, s in nbrs.items()})

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj.get(u, frozenset())

    def is_clique(self, nodes) -> bool:
        nodes = list(nodes)
        return all(
            self.has_edge(u, v) for i, u in enumerate(nodes) for v in nodes[i + 1 :]
        )


def build_graph(ids, edges, id_exponent: int = ID_EXPONENT) -> Graph:
    """Validate and construct a connected Graph over the given ids."""
    id_list = list(ids)
    id_set = set(id_list)
    if len(id_set) != len(id_list):
        raise IdCollisionError("node ids must be distinct")
    if not id_list:
        raise GraphFormatError("a graph needs at least one node")
    n = len(id_list)
    bound = n**id_exponent
    for v in id_list:
        if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= bound:
            raise IdRangeError(f"id {v!r} outside [1, {bound}]")
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        if u == v:
            raise SelfLoopError(f"self loop at {u}")
        if u not in id_set or v not in id_set:
            raise UnknownNodeError(f"edge ({u}, {v}) references an unknown id")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(f"edge {key} appears twice")
        seen.add(key)
    g = Graph(tuple(sorted(id_set)), tuple(sorted(seen)))
    if not _is_connected(g):
        raise DisconnectedGraphError("graph is not connected")
    return g


def _is_connected(g: Graph) -> bool:
    start = g.ids[0]
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in g.adj[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == g.n


def bfs_distances(g: Graph, root: int) -> dict[int, int]:
    """Distance from root to every node; relies on connectivity."""
    dist = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in sorted(g.adj[v]):
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def bfs_tree(g: Graph, root: int) -> dict[int, int]:
    """Parent map of a BFS tree; the root maps to itself."""
    parent = {root: root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in sorted(g.adj[v]):
            if u not in parent:
                parent[u] = v
                queue.append(u)
    return parent


def shortest_path(g: Graph, s: int, t: int) -> list[int]:
    parent = bfs_tree(g, s)
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    path.reverse()
    return path


# parametric families, ids are 1..n


def path_graph(n: int) -> Graph:
    return build_graph(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    edges = [(i, i + 1) for i in range(1, n)] + [(n, 1)]
    return build_graph(range(1, n + 1), edges)


def complete_graph(n: int) -> Graph:
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return build_graph(range(1, n + 1), edges)


def star_graph(leaves: int) -> Graph:
    return build_graph(range(1, leaves + 2), [(1, i) for i in range(2, leaves + 2)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    left = range(1, a + 1)
    right = range(a + 1, a + b + 1)
    return build_graph(range(1, a + b + 1), [(i, j) for i in left for j in right])


def chorded_path_graph(k: int) -> Graph:
    """Path on 5k nodes plus one chord per 5-node block.

    Block i (nodes 5i+1 .. 5i+5) carries the chord between its second and
    fourth node. The family is a permutation graph for every k and is the
    base graph of the crossing construction used for non-trapezoid fixtures.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = 5 * k
    edges = [(i, i + 1) for i in range(1, n)]
    edges += [(5 * i + 2, 5 * i + 4) for i in range(k)]
    return build_graph(range(1, n + 1), edges)


def crossing(g: Graph, h1, h2, sigma: dict[int, int]) -> Graph:
    """Toggle the edges inside h1, inside h2, and between mismatched pairs.

    Every pair inside h1, every pair inside h2, and every pair {x, sigma(y)}
    with x != y in h1 flips its edge/non-edge status. Pairs {x, sigma(x)}
    are left alone. Applying the same crossing twice restores the graph.
    """
    s1, s2 = set(h1), set(h2)
    if not s1 or len(s1) != len(s2) or s1 & s2:
        raise GraphFormatError("h1 and h2 must be disjoint nonempty sets of equal size")
    if not s1 <= set(g.ids) or not s2 <= set(g.ids):
        raise UnknownNodeError("crossing sets must be nodes of the graph")
    if set(sigma) != s1 or set(sigma.values()) != s2:
        raise GraphFormatError("sigma must be a bijection from h1 onto h2")
    toggles: set[tuple[int, int]] = set()
    ordered = sorted(s1)
    for i, x in enumerate(ordered):
        for y in ordered[i + 1 :]:
            toggles.add((x, y))
            toggles.add(tuple(sorted((sigma[x], sigma[y]))))
            toggles.add(tuple(sorted((x, sigma[y]))))
            toggles.add(tuple(sorted((y, sigma[x]))))
    new_edges = set(g.edges) ^ toggles
    return build_graph(g.ids, sorted(new_edges))


def has_induced_cycle_at_least(g: Graph, k: int, cap: int = INDUCED_CYCLE_CAP) -> bool:
    """Whether the graph contains a chordless cycle with at least k nodes.

    Backtracking over induced paths; exponential in the worst case, so the
    graph size is capped and exceeding the cap is an explicit error rather
    than silent slowness. Callers working on known larger fixtures pass a
    bigger cap.
    """
    if g.n > cap:
        raise SearchTooLargeError(f"induced cycle search capped at n={cap}")
    if k < 3:
        raise ValueError("cycles have at least 3 nodes")
    order = {v: i for i, v in enumerate(g.ids)}

    def extend(start: int, path: list[int], on_path: set[int]) -> bool:
        last = path[-1]
        for w in sorted(g.adj[last]):
            if order[w] <= order[start] or w in on_path:
                continue
            # chordless: w may touch the path only at its endpoint
            if any(w in g.adj[p] for p in path[1:-1]):
                continue
            if len(path) >= 2 and start in g.adj[w]:
                if len(path) + 1 >= k:
                    return True
                # closing early would create a chord in any longer cycle
                continue
            path.append(w)
            on_path.add(w)
            if extend(start, path, on_path):
                return True
            on_path.remove(w)
            path.pop()
        return False

    return any(extend(v, [v], {v}) for v in g.ids)


# edge-list text format:
#   line 1: "n m"
#   next m lines: "u v" with 0 <= u < v < n, strictly ascending as pairs
#   then either no id lines or exactly n lines "id i id_value" for i = 0..n-1
def parse_edge_list(text: str) -> Graph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise GraphFormatError("empty edge-list file")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError("first line must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphFormatError("first line must hold two integers") from exc
    if n < 1 or m < 0 or len(lines) < 1 + m:
        raise GraphFormatError("header does not match the file body")
    pairs: list[tuple[int, int]] = []
    for ln in lines[1 : 1 + m]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"bad edge line: {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"bad edge line: {ln!r}") from exc
        if not (0 <= u < v < n):
            raise GraphFormatError(f"edge ({u}, {v}) outside 0..{n - 1} or unordered")
        if pairs and (u, v) <= pairs[-1]:
            raise GraphFormatError("edges must be listed in ascending order")
        pairs.append((u, v))
    rest = lines[1 + m :]
    ids = list(range(1, n + 1))
    if rest:
        if len(rest) != n:
            raise GraphFormatError("id map must cover every index or be absent")
        for i, ln in enumerate(rest):
            parts = ln.split()
            if len(parts) != 3 or parts[0] != "id":
                raise GraphFormatError(f"bad id line: {ln!r}")
            try:
                idx, value = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise GraphFormatError(f"bad id line: {ln!r}") from exc
            if idx != i:
                raise GraphFormatError("id lines must appear in index order")
            ids[i] = value
    return build_graph(ids, [(ids[u], ids[v]) for u, v in pairs])


def write_edge_list(g: Graph) -> str:
    index = {v: i for i, v in enumerate(g.ids)}
    pairs = sorted((index[u], index[v]) for u, v in g.edges)
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in pairs]
    if list(g.ids) != list(range(1, g.n + 1)):
        lines += [f"id {i} {v}" for i, v in enumerate(g.ids)]
    return "\n".join(lines) + "\n"

"""Independent recognition routines used to cross-check provers and schemes.

These are deliberately separate from the certificate machinery: they
decide class membership (or search for witnesses) by classical
characterizations, so tests can compare two routes that share no code.

The augmented neighborhood matrix of an ordering is the adjacency matrix
with ones on the diagonal. Two circular-ones style properties of that
matrix drive the circular-arc oracles; both are invariant under rotating
the ordering, so searches pin the first node.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .errors import InvalidWitnessError, SearchTooLargeError
from .graphs import Graph, has_induced_cycle_at_least
from .models import ArcModel, CliqueTree, PermutationModel, validate_arc_model


# ---------------------------------------------------------------------------
# chordality, interval, proper interval


def is_chordal(g: Graph):
    """Return a perfect elimination ordering, or None for non-chordal input.

    Maximum cardinality search visits a chordal graph so that the reverse
    visit order eliminates perfectly; the explicit check below then
    accepts exactly the chordal graphs.
    """
    weight = {v: 0 for v in g.ids}
    visited: list[int] = []
    seen: set[int] = set()
    for _ in range(g.n):
        v = max((w for w in g.ids if w not in seen), key=lambda w: (weight[w], -w))
        visited.append(v)
        seen.add(v)
        for u in g.neighbors(v):
            if u not in seen:
                weight[u] += 1
    order = tuple(reversed(visited))
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
        if not later:
            continue
        anchor = min(later, key=lambda w: pos[w])
        for w in later:
            if w != anchor and not g.has_edge(anchor, w):
                return None
    return order


def clique_tree_from_peo(g: Graph, peo) -> CliqueTree:
    """Build a rooted clique tree from a perfect elimination ordering.

    Bag candidates are each node with its later neighbors; the maximal
    ones are the maximal cliques, and any maximum-weight spanning tree of
    their intersection sizes is a valid clique tree.
    """
    pos = {v: i for i, v in enumerate(peo)}
    candidates = []
    for v in peo:
        candidates.append(frozenset({v} | {w for w in g.neighbors(v) if pos[w] > pos[v]}))
    unique = sorted(set(candidates), key=lambda b: (-len(b), sorted(b)))
    bags = [b for i, b in enumerate(unique) if not any(b < other for other in unique[:i])]
    k = len(bags)
    if k == 1:
        return CliqueTree((bags[0],), (0,), 0)
    weighted = []
    for i in range(k):
        for j in range(i + 1, k):
            w = len(bags[i] & bags[j])
            if w:
                weighted.append((-w, i, j))
    weighted.sort()
    lead = list(range(k))

    def find(x: int) -> int:
        while lead[x] != x:
            lead[x] = lead[lead[x]]
            x = lead[x]
        return x

    adjacency: dict[int, list[int]] = {i: [] for i in range(k)}
    taken = 0
    for _, i, j in weighted:
        ri, rj = find(i), find(j)
        if ri != rj:
            lead[ri] = rj
            adjacency[i].append(j)
            adjacency[j].append(i)
            taken += 1
    assert taken == k - 1, "clique intersections of a connected graph span"
    parent = list(range(k))
    seenb = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for b in frontier:
            for c in adjacency[b]:
                if c not in seenb:
                    seenb.add(c)
                    parent[c] = b
                    nxt.append(c)
        frontier = nxt
    return CliqueTree(tuple(bags), tuple(parent), 0)


def chordal_clique_tree(g: Graph) -> CliqueTree | None:
    peo = is_chordal(g)
    return None if peo is None else clique_tree_from_peo(g, peo)


def has_asteroidal_triple(g: Graph) -> bool:
    """Three pairwise non-adjacent nodes, each pair linked outside the third's
    closed neighborhood."""
    comp: dict[int, dict[int, int]] = {}
    for z in g.ids:
        blocked = g.closed_neighborhood(z)
        label: dict[int, int] = {}
        mark = 0
        for s in g.ids:
            if s in blocked or s in label:
                continue
            mark += 1
            stack = [s]
            label[s] = mark
            while stack:
                x = stack.pop()
                for y in g.neighbors(x):
                    if y not in blocked and y not in label:
                        label[y] = mark
                        stack.append(y)
        comp[z] = label

    def linked(a: int, b: int, around: int) -> bool:
        la = comp[around].get(a)
        return la is not None and la == comp[around].get(b)

    for x, y, z in combinations(g.ids, 3):
        if g.has_edge(x, y) or g.has_edge(x, z) or g.has_edge(y, z):
            continue
        if linked(x, y, z) and linked(x, z, y) and linked(y, z, x):
            return True
    return False


def is_interval(g: Graph) -> bool:
    return is_chordal(g) is not None and not has_asteroidal_triple(g)


def is_claw_free(g: Graph) -> bool:
    for v in g.ids:
        nbrs = sorted(g.neighbors(v))
        for a, b, c in combinations(nbrs, 3):
            if not (g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c)):
                return False
    return True


def umbrella_ordering(g: Graph, max_n: int = 10):
    """Search for an ordering where every edge spans a complete stretch.

    Such an ordering exists exactly for proper interval graphs. Backtracks
    over prefixes; a new node may not witness a broken umbrella with any
    earlier pair.
    """
    if g.n > max_n:
        raise SearchTooLargeError(f"umbrella search capped at {max_n} nodes")
    ids = sorted(g.ids)

    def extend(prefix: list[int], rest: list[int]):
        k = len(prefix)
        for i in range(k - 1):
            if g.has_edge(prefix[i], prefix[k - 1]):
                for j in range(i + 1, k - 1):
                    if not (
                        g.has_edge(prefix[i], prefix[j])
                        and g.has_edge(prefix[j], prefix[k - 1])
                    ):
                        return None
        if not rest:
            return tuple(prefix)
        for idx, v in enumerate(rest):
            got = extend(prefix + [v], rest[:idx] + rest[idx + 1 :])
            if got is not None:
                return got
        return None

    return extend([], ids)


def is_proper_interval(g: Graph) -> bool:
    if g.n <= 10:
        return umbrella_ordering(g) is not None
    return is_interval(g) and is_claw_free(g)


# ---------------------------------------------------------------------------
# circular-ones machinery


def neighborhood_matrix(g: Graph, ordering) -> tuple[tuple[int, ...], ...]:
    if sorted(ordering) != list(g.ids):
        raise InvalidWitnessError("ordering must enumerate the node ids once each")
    n = g.n
    return tuple(
        tuple(
            1 if i == j or g.has_edge(ordering[i], ordering[j]) else 0
            for j in range(n)
        )
        for i in range(n)
    )


def sigma_inversion(p: int, n: int) -> int:
    return (n - 2 - p) % n


def sigma_shift(p: int, n: int) -> int:
    return (p + 1) % n


def last_index(column) -> int | None:
    """Largest i with a one directly above a zero, read top-down, or None."""
    best = None
    for i in range(len(column) - 1):
        if column[i] == 1 and column[i + 1] == 0:
            best = i
    return best


def apply_perm(m, which: str):
    """Reindex rows and columns of a matrix by one inversion or shift step."""
    if which == "inversion":
        sigma = sigma_inversion
    elif which == "shift":
        sigma = sigma_shift
    else:
        raise ValueError(f"unknown permutation {which!r}")
    n = len(m)
    return tuple(
        tuple(m[sigma(i, n)][sigma(j, n)] for j in range(n)) for i in range(n)
    )


def _dihedral_maps(n: int):
    for invert in (False, True):
        for shift in range(n):
            if invert:
                yield tuple((sigma_inversion(i, n) + shift) % n for i in range(n))
            else:
                yield tuple((i + shift) % n for i in range(n))


def has_circularly_compatible_ones(g: Graph, ordering) -> bool:
    """Rows are circular runs of ones and adjacent columns stay compatible
    under every rotation and the inversion."""
    m = neighborhood_matrix(g, ordering)
    n = g.n
    if n == 1:
        return True
    for row in m:
        blocks = sum(1 for i in range(n) if row[i] == 1 and row[(i + 1) % n] == 0)
        if blocks > 1:
            return False
    for perm in _dihedral_maps(n):
        c0 = [m[perm[i]][perm[0]] for i in range(n)]
        c1 = [m[perm[i]][perm[1]] for i in range(n)]
        l0, l1 = last_index(c0), last_index(c1)
        if l0 is None or l1 is None:
            continue
        if l0 > l1:
            return False
    return True


def _forward_runs(m, n: int) -> list[int]:
    runs = []
    for i in range(n):
        k = 0
        while k < n - 1 and m[(i + 1 + k) % n][i] == 1:
            k += 1
        runs.append(k)
    return runs


def has_quasi_circular_ones(g: Graph, ordering) -> bool:
    """Every off-diagonal one is reachable inside the solid run below one of
    its two diagonal entries."""
    m = neighborhood_matrix(g, ordering)
    n = g.n
    runs = _forward_runs(m, n)
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] == 0:
                continue
            if (j - i) % n <= runs[i] or (i - j) % n <= runs[j]:
                continue
            return False
    return True


def search_ordering(g: Graph, kind: str, max_n: int = 10):
    """Find an ordering with the requested circular-ones property.

    kind "compatible" scans orderings outright; kind "quasi" backtracks
    with a pruning rule that only fires once both cover routes of some
    placed edge are decidedly dead. Both properties are rotation
    invariant, so the first node is pinned.
    """
    if g.n > max_n:
        raise SearchTooLargeError(f"ordering search capped at {max_n} nodes")
    if kind not in ("compatible", "quasi"):
        raise ValueError(f"unknown ordering property {kind!r}")
    ids = sorted(g.ids)
    if g.n == 1:
        return (ids[0],)
    if kind == "compatible":
        for rest in permutations(ids[1:]):
            ordering = (ids[0],) + rest
            if has_circularly_compatible_ones(g, ordering):
                return ordering
        return None
    return _quasi_search(g, ids)


def _quasi_search(g: Graph, ids: list[int]):
    n = len(ids)

    def extend(prefix: list[int], rest: list[int]):
        k = len(prefix)
        # forward run of each placed node; None while it survives the prefix
        stopped: list[int | None] = []
        for a in range(k):
            length = 0
            while a + 1 + length < k and g.has_edge(prefix[a], prefix[a + 1 + length]):
                length += 1
            stopped.append(length if a + 1 + length < k else None)
        for a in range(k):
            for b in range(a + 1, k):
                if not g.has_edge(prefix[a], prefix[b]):
                    continue
                if stopped[a] is None or b - a <= stopped[a]:
                    continue
                if stopped[b] is not None and n - (b - a) > stopped[b]:
                    return None
        if not rest:
            ordering = tuple(prefix)
            return ordering if has_quasi_circular_ones(g, ordering) else None
        for idx, v in enumerate(rest):
            got = extend(prefix + [v], rest[:idx] + rest[idx + 1 :])
            if got is not None:
                return got
        return None

    return extend([ids[0]], ids[1:])


# ---------------------------------------------------------------------------
# witness searches for the remaining classes


def quasi_ordering_from_arcs(m: ArcModel):
    """Sort nodes by left endpoint; for arc models this ordering always has
    quasi circular ones."""
    return tuple(sorted(m.arcs, key=lambda v: m.arcs[v][1]))


def compatible_ordering_from_arcs(m: ArcModel):
    return tuple(sorted(m.arcs, key=lambda v: m.arcs[v][0]))


def _compositions(total: int, parts: int):
    for cuts in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield out


def proper_arc_model_search(g: Graph, max_n: int = 6) -> ArcModel | None:
    """Exhaustive proper arc model search, independent of the ordering route.

    In a containment-free arc family the left endpoints follow the same
    circular order as the right endpoints, so candidates are one right
    endpoint order, a rotation offset, and a distribution of left
    endpoints over the gaps.
    """
    if g.n > max_n:
        raise SearchTooLargeError(f"arc model search capped at {max_n} nodes")
    n = g.n
    ids = sorted(g.ids)
    if n == 1:
        return ArcModel({ids[0]: (2, 1)}, proper=True)
    for rest in permutations(ids[1:]):
        order = (ids[0],) + rest
        for start in range(n):
            for comp in _compositions(n, n):
                slot = 0
                rights: dict[int, int] = {}
                lefts: dict[int, int] = {}
                li = 0
                for gap in range(n):
                    slot += 1
                    rights[order[gap]] = slot
                    for _ in range(comp[gap]):
                        slot += 1
                        lefts[order[(start + li) % n]] = slot
                        li += 1
                arcs = {v: (rights[v], lefts[v]) for v in ids}
                model = ArcModel(arcs, proper=True)
                if validate_arc_model(model, g):
                    return model
    return None


def permutation_model_search(g: Graph, max_n: int = 8) -> PermutationModel | None:
    """Backtracking search for a permutation model.

    A top-line order forces, for every placed pair, which node must come
    first on the bottom line; those forced choices form a tournament that
    must stay transitive, which for tournaments is the same as all
    out-degrees being distinct.
    """
    if g.n > max_n:
        raise SearchTooLargeError(f"permutation model search capped at {max_n} nodes")
    ids = sorted(g.ids)
    n = g.n

    def below(u: int, v: int, u_first_on_top: bool) -> bool:
        # True when u precedes v on the bottom line
        return u_first_on_top != g.has_edge(u, v)

    def outdegrees(prefix: list[int]) -> list[int] | None:
        degs = []
        for a, u in enumerate(prefix):
            d = 0
            for b, v in enumerate(prefix):
                if u != v and below(u, v, a < b):
                    d += 1
            degs.append(d)
        return degs if len(set(degs)) == len(degs) else None

    def extend(prefix: list[int], rest: list[int]):
        degs = outdegrees(prefix)
        if degs is None:
            return None
        if not rest:
            l1 = {v: i + 1 for i, v in enumerate(prefix)}
            l2 = {v: n - degs[i] for i, v in enumerate(prefix)}
            return PermutationModel(l1, l2)
        for idx, v in enumerate(rest):
            got = extend(prefix + [v], rest[:idx] + rest[idx + 1 :])
            if got is not None:
                return got
        return None

    return extend([], ids)


def trapezoid_no_certificate(g: Graph, cap: int | None = None) -> bool:
    """True when the graph is certainly not a trapezoid graph."""
    return has_induced_cycle_at_least(g, 5, cap=g.n if cap is None else cap)

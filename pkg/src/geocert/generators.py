"""Seeded random yes-instance samplers, one per graph class.

Every sampler draws a model first and reads the graph off the model, so
the pair is a yes-instance by construction. Samplers resample (from the
same generator stream) until the graph comes out connected; a bounded
retry count turns pathological parameters into SeedExhaustedError instead
of a hang.
"""

from __future__ import annotations

import random
from collections import deque

from .errors import DisconnectedGraphError, SeedExhaustedError
from .graphs import Graph, build_graph
from .models import (
    ArcModel,
    IntervalModel,
    PermutationModel,
    TrapezoidModel,
    arc_contains,
    arcs_intersect,
    trapezoids_disjoint,
)

MAX_TRIES = 300

GENERATOR_KINDS = (
    "proper-interval",
    "interval",
    "chordal",
    "proper-circular-arc",
    "circular-arc",
    "trapezoid",
    "permutation",
)


def random_model(kind: str, n: int, seed: int):
    """Sample a connected yes-instance (graph, model) for the given class."""
    if kind not in GENERATOR_KINDS:
        raise ValueError(f"unknown generator kind {kind!r}")
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random((kind, n, seed).__repr__())
    if kind == "chordal":
        return _chordal(n, rng)
    for _ in range(MAX_TRIES):
        try:
            if kind in ("interval", "proper-interval"):
                got = _interval(n, rng, proper=kind == "proper-interval")
            elif kind == "circular-arc":
                got = _circular_arc(n, rng)
            elif kind == "proper-circular-arc":
                got = _proper_circular_arc(n, rng)
            elif kind == "trapezoid":
                got = _trapezoid(n, rng)
            else:
                got = _permutation(n, rng)
        except DisconnectedGraphError:
            continue
        if got is not None:
            return got
    raise SeedExhaustedError(f"no connected {kind} instance after {MAX_TRIES} draws")


def _interval(n: int, rng: random.Random, proper: bool):
    opened: deque[int] = deque()
    intervals: dict[int, list[int]] = {}
    nxt = 1
    for slot in range(1, 2 * n + 1):
        can_open = nxt <= n
        can_close = bool(opened)
        if can_open and (not can_close or rng.random() < 0.5):
            intervals[nxt] = [slot, 0]
            opened.append(nxt)
            nxt += 1
        else:
            # FIFO closing forbids nesting, which is exactly properness
            v = opened.popleft() if proper else opened[rng.randrange(len(opened))]
            if not proper:
                opened.remove(v)
            intervals[v][1] = slot
    coords = {v: (a, b) for v, (a, b) in intervals.items()}
    edges = []
    ids = sorted(coords)
    for i, u in enumerate(ids):
        for v in ids[i + 1 :]:
            if coords[u][0] <= coords[v][1] and coords[v][0] <= coords[u][1]:
                edges.append((u, v))
    g = build_graph(ids, edges)
    return g, IntervalModel(coords, proper=proper)


def _arc_graph(arcs: dict[int, tuple[int, int]]) -> Graph:
    slots = 2 * len(arcs)
    ids = sorted(arcs)
    edges = []
    for i, u in enumerate(ids):
        for v in ids[i + 1 :]:
            if arcs_intersect(arcs[u], arcs[v], slots):
                edges.append((u, v))
    return build_graph(ids, edges)


def _circular_arc(n: int, rng: random.Random):
    slots = list(range(1, 2 * n + 1))
    rng.shuffle(slots)
    arcs = {}
    for v in range(1, n + 1):
        x, y = slots[2 * v - 2], slots[2 * v - 1]
        arcs[v] = (x, y) if rng.random() < 0.5 else (y, x)
    return _arc_graph(arcs), ArcModel(arcs, proper=False)


def _proper_circular_arc(n: int, rng: random.Random):
    events = ["open"] * n + ["close"] * n
    rng.shuffle(events)
    queue: deque[tuple[int, int]] = deque()
    orphans: list[int] = []
    arcs: dict[int, tuple[int, int]] = {}
    nxt = 1
    for slot, ev in enumerate(events, start=1):
        if ev == "open":
            queue.append((nxt, slot))
            nxt += 1
        elif queue:
            v, left = queue.popleft()
            arcs[v] = (slot, left)
        else:
            orphans.append(slot)
    for slot in orphans:
        # wrapped arcs close in open order, keeping the matching FIFO
        v, left = queue.popleft()
        arcs[v] = (slot, left)
    slots = 2 * n
    ids = sorted(arcs)
    for i, u in enumerate(ids):
        for v in ids[i + 1 :]:
            if arc_contains(arcs[u], arcs[v], slots) or arc_contains(
                arcs[v], arcs[u], slots
            ):
                return None
    return _arc_graph(arcs), ArcModel(arcs, proper=True)


def _chordal(n: int, rng: random.Random):
    from . import oracles

    edges: list[tuple[int, int]] = []
    cliques: list[list[int]] = [[1]]
    for v in range(2, n + 1):
        base = cliques[rng.randrange(len(cliques))]
        take = rng.randint(1, len(base))
        anchors = rng.sample(base, take)
        edges.extend((u, v) for u in anchors)
        cliques.append(sorted(anchors) + [v])
    g = build_graph(range(1, n + 1), edges)
    tree = oracles.chordal_clique_tree(g)
    assert tree is not None, "incremental clique growth is always chordal"
    return g, tree


def _trapezoid(n: int, rng: random.Random):
    def pairing() -> list[tuple[int, int]]:
        slots = list(range(1, 2 * n + 1))
        rng.shuffle(slots)
        return [
            (min(slots[2 * i], slots[2 * i + 1]), max(slots[2 * i], slots[2 * i + 1]))
            for i in range(n)
        ]

    tops = pairing()
    bottoms = pairing()
    coords = {
        v: (tops[v - 1][0], tops[v - 1][1], bottoms[v - 1][0], bottoms[v - 1][1])
        for v in range(1, n + 1)
    }
    edges = []
    ids = sorted(coords)
    for i, u in enumerate(ids):
        for v in ids[i + 1 :]:
            if not trapezoids_disjoint(coords[u], coords[v]):
                edges.append((u, v))
    g = build_graph(ids, edges)
    return g, TrapezoidModel(coords, mode="proper", consecutive=False)


def _permutation(n: int, rng: random.Random):
    ranks1 = list(range(1, n + 1))
    ranks2 = list(range(1, n + 1))
    rng.shuffle(ranks1)
    rng.shuffle(ranks2)
    l1 = {v: ranks1[v - 1] for v in range(1, n + 1)}
    l2 = {v: ranks2[v - 1] for v in range(1, n + 1)}
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if (l1[v] - l1[u]) * (l2[v] - l2[u]) < 0:
                edges.append((u, v))
    g = build_graph(range(1, n + 1), edges)
    return g, PermutationModel(l1, l2)

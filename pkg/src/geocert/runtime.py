"""Certificate schemas, the local verification harness, and corruptions.

A certificate is a nested dict of bounded integers. A Schema mirrors that
nesting and gives every field a closed integer domain as a function of n,
which yields the exact bit size of an encoded certificate and lets the
corruption strategies stay inside representable values (out-of-domain
values are unrepresentable at the encoding layer, so feeding them to a
verifier would test nothing).

Verifiers are functions of a single NodeView: own id, own certificate,
and the (id, certificate) pairs of the neighbors, in adversarial order.
They never see the graph, the true n, or any other node.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .graphs import Graph, bfs_distances, bfs_tree


@dataclass(frozen=True)
class Field:
    """One bounded integer slot; lo and hi map true n to the domain ends."""

    name: str
    lo: Callable[[int], int]
    hi: Callable[[int], int]

    def domain(self, n: int) -> tuple[int, int]:
        lo, hi = self.lo(n), self.hi(n)
        if lo > hi:
            raise ValueError(f"field {self.name} has empty domain at n={n}")
        return lo, hi

    def bits(self, n: int) -> int:
        lo, hi = self.domain(n)
        return (hi - lo).bit_length()


@dataclass(frozen=True)
class Schema:
    name: str
    fields: tuple[Field, ...] = ()
    children: tuple["Schema", ...] = ()

    def bit_size(self, n: int) -> int:
        return sum(f.bits(n) for f in self.fields) + sum(
            c.bit_size(n) for c in self.children
        )

    def flat_fields(self, prefix: tuple[str, ...] = ()):
        """Yield (path, field) pairs in declaration order."""
        for f in self.fields:
            yield prefix + (f.name,), f
        for c in self.children:
            yield from c.flat_fields(prefix + (c.name,))


def id_field(name: str) -> Field:
    return Field(name, lambda n: 1, lambda n: n**3)


def optional_id_field(name: str) -> Field:
    # zero is the explicit "no node" sentinel
    return Field(name, lambda n: 0, lambda n: n**3)


def bit_field(name: str) -> Field:
    return Field(name, lambda n: 0, lambda n: 1)


@dataclass(frozen=True)
class NodeView:
    id: int
    cert: dict
    neighbors: tuple[tuple[int, dict], ...]

    @property
    def degree(self) -> int:
        return len(self.neighbors)


Verifier = Callable[[NodeView], bool]


@dataclass(frozen=True)
class Scheme:
    """A proof labeling scheme: tag, certificate schema, prover, verifier."""

    tag: str
    schema: Schema
    prove: Callable
    verify: Verifier
    witness_kind: str


@dataclass
class RunReport:
    scheme: str
    n: int
    seed: int | None
    verdict: str
    rejecting_ids: tuple[int, ...]
    max_cert_bits: int
    wall_time: float = field(default=0.0, compare=False)

    def to_json(self) -> str:
        payload = {
            "scheme": self.scheme,
            "n": self.n,
            "seed": self.seed,
            "verdict": self.verdict,
            "rejecting_ids": list(self.rejecting_ids),
            "max_cert_bits": self.max_cert_bits,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_json(text: str) -> "RunReport":
        raw = json.loads(text)
        return RunReport(
            scheme=raw["scheme"],
            n=raw["n"],
            seed=raw["seed"],
            verdict=raw["verdict"],
            rejecting_ids=tuple(raw["rejecting_ids"]),
            max_cert_bits=raw["max_cert_bits"],
        )


def node_views(g: Graph, certs: dict[int, dict], seed: int | None = None):
    """One NodeView per node; a seed shuffles each neighbor list."""
    rng = random.Random(seed) if seed is not None else None
    for v in g.ids:
        nbrs = [(u, certs[u]) for u in sorted(g.neighbors(v))]
        if rng is not None:
            rng.shuffle(nbrs)
        yield NodeView(v, certs[v], tuple(nbrs))


def run_pls(
    scheme: Scheme, g: Graph, certs: dict[int, dict], seed: int | None = None
) -> RunReport:
    """Evaluate the verifier at every node and report the global verdict.

    A verifier that raises on malformed input counts as rejecting at that
    node; adversarial certificates must never crash the harness.
    """
    start = time.perf_counter()
    rejecting = []
    for view in node_views(g, certs, seed):
        try:
            ok = scheme.verify(view)
        except Exception:
            ok = False
        if not ok:
            rejecting.append(view.id)
    return RunReport(
        scheme=scheme.tag,
        n=g.n,
        seed=seed,
        verdict="accept" if not rejecting else "reject",
        rejecting_ids=tuple(sorted(rejecting)),
        max_cert_bits=scheme.schema.bit_size(g.n),
        wall_time=time.perf_counter() - start,
    )


def some_node_rejects(
    scheme: Scheme, g: Graph, certs: dict[int, dict], seed: int | None = None
) -> bool:
    """Short-circuit variant of run_pls for high-volume fuzzing."""
    for view in node_views(g, certs, seed):
        try:
            if not scheme.verify(view):
                return True
        except Exception:
            return True
    return False


# ---------------------------------------------------------------------------
# certificate access helpers


def get_path(cert: dict, path: tuple[str, ...]):
    cur = cert
    for part in path:
        cur = cur[part]
    return cur


def set_path(cert: dict, path: tuple[str, ...], value) -> dict:
    out = dict(cert)
    if len(path) == 1:
        out[path[0]] = value
    else:
        out[path[0]] = set_path(out[path[0]], path[1:], value)
    return out


CORRUPTION_STRATEGIES = ("flip-field", "swap-nodes", "resample-field", "truncate")


def corrupt(
    certs: dict[int, dict], schema: Schema, n: int, seed: int, strategy: str
) -> dict[int, dict]:
    """Return a corrupted copy of an honest certificate assignment.

    flip-field xors one random bit of one field (wrapping back into the
    domain), swap-nodes exchanges two nodes' whole certificates,
    resample-field redraws one field uniformly, truncate resets a whole
    field suffix to each domain minimum. All are deterministic in seed.
    """
    rng = random.Random(("corrupt", strategy, seed).__repr__())
    nodes = sorted(certs)
    paths = list(schema.flat_fields())
    if strategy == "swap-nodes":
        if len(nodes) < 2:
            return dict(certs)
        a, b = rng.sample(nodes, 2)
        out = dict(certs)
        out[a], out[b] = certs[b], certs[a]
        return out
    v = rng.choice(nodes)
    out = dict(certs)
    if strategy == "flip-field":
        path, f = paths[rng.randrange(len(paths))]
        lo, hi = f.domain(n)
        width = max(1, f.bits(n))
        offset = get_path(certs[v], path) - lo
        offset ^= 1 << rng.randrange(width)
        out[v] = set_path(certs[v], path, lo + offset % (hi - lo + 1))
    elif strategy == "resample-field":
        path, f = paths[rng.randrange(len(paths))]
        lo, hi = f.domain(n)
        out[v] = set_path(certs[v], path, rng.randint(lo, hi))
    elif strategy == "truncate":
        start = rng.randrange(len(paths))
        cur = certs[v]
        for path, f in paths[start:]:
            cur = set_path(cur, path, f.domain(n)[0])
        out[v] = cur
    else:
        raise ValueError(f"unknown corruption strategy {strategy!r}")
    return out


def random_assignment(
    schema: Schema, ids, n: int, rng: random.Random
) -> dict[int, dict]:
    """Uniform random in-domain certificates for every node."""

    def sample(s: Schema) -> dict:
        cert: dict = {}
        for f in s.fields:
            lo, hi = f.domain(n)
            cert[f.name] = rng.randint(lo, hi)
        for c in s.children:
            cert[c.name] = sample(c)
        return cert

    return {v: sample(schema) for v in ids}


# ---------------------------------------------------------------------------
# toolbox: spanning tree, counting, path certificates


def spanning_tree_schema() -> Schema:
    return Schema(
        "tree",
        (
            id_field("root"),
            id_field("parent"),
            Field("depth", lambda n: 0, lambda n: n - 1),
            Field("parent_depth", lambda n: 0, lambda n: n - 1),
        ),
    )


def make_spanning_tree_cert(g: Graph, root: int) -> dict[int, dict]:
    parent = bfs_tree(g, root)
    depth = bfs_distances(g, root)
    return {
        v: {
            "root": root,
            "parent": parent[v],
            "depth": depth[v],
            "parent_depth": depth[parent[v]],
        }
        for v in g.ids
    }


def check_spanning_tree(my_id: int, my: dict, nbrs) -> bool:
    """Local spanning tree checks; accepting everywhere forces a real root.

    Zero depth must coincide with carrying the root's own id, so depths
    descending through parent pointers always end at the claimed root.
    """
    for _, nc in nbrs:
        if nc["root"] != my["root"]:
            return False
    if my["depth"] == 0:
        return my["root"] == my_id and my["parent"] == my_id and my["parent_depth"] == 0
    if my["root"] == my_id:
        return False
    if my["depth"] != my["parent_depth"] + 1:
        return False
    for nid, nc in nbrs:
        if nid == my["parent"] and nc["depth"] == my["parent_depth"]:
            return True
    return False


def size_schema() -> Schema:
    return Schema(
        "size",
        (
            Field("count", lambda n: 1, lambda n: n),
            Field("claimed", lambda n: 1, lambda n: n * n),
        ),
        (spanning_tree_schema(),),
    )


def make_size_cert(g: Graph, root: int) -> dict[int, dict]:
    tree = make_spanning_tree_cert(g, root)
    count = {v: 1 for v in g.ids}
    for v in sorted(g.ids, key=lambda v: -tree[v]["depth"]):
        if v != root:
            count[tree[v]["parent"]] += count[v]
    return {
        v: {"count": count[v], "claimed": g.n, "tree": tree[v]} for v in g.ids
    }


def check_size(my_id: int, my: dict, nbrs) -> bool:
    """Spanning tree plus subtree counting; the root must see the claimed n."""
    if not check_spanning_tree(my_id, my["tree"], [(u, c["tree"]) for u, c in nbrs]):
        return False
    for _, nc in nbrs:
        if nc["claimed"] != my["claimed"]:
            return False
    total = 1
    for _, nc in nbrs:
        if (
            nc["tree"]["parent"] == my_id
            and nc["tree"]["depth"] == my["tree"]["depth"] + 1
        ):
            total += nc["count"]
    if total != my["count"]:
        return False
    if my["tree"]["depth"] == 0 and my["count"] != my["claimed"]:
        return False
    return True


def path_schema(name: str) -> Schema:
    return Schema(
        name,
        (
            bit_field("member"),
            optional_id_field("pred"),
            optional_id_field("succ"),
        ),
    )


def make_path_cert(g: Graph, path_nodes) -> dict[int, dict]:
    order = list(path_nodes)
    cert = {v: {"member": 0, "pred": 0, "succ": 0} for v in g.ids}
    for i, v in enumerate(order):
        cert[v] = {
            "member": 1,
            "pred": order[i - 1] if i > 0 else 0,
            "succ": order[i + 1] if i + 1 < len(order) else 0,
        }
    return cert


def check_path(my_id: int, my: dict, nbrs) -> bool:
    """Doubly linked membership: named ends must be member neighbors that
    name me back."""
    if my["member"] == 0:
        return my["pred"] == 0 and my["succ"] == 0
    if my["pred"] == my_id or my["succ"] == my_id:
        return False
    if my["pred"] != 0 and my["pred"] == my["succ"]:
        return False
    for which, back in (("pred", "succ"), ("succ", "pred")):
        want = my[which]
        if want == 0:
            continue
        ok = False
        for nid, nc in nbrs:
            if nid == want:
                ok = nc["member"] == 1 and nc[back] == my_id
                break
        if not ok:
            return False
    return True


def path_endpoint(my: dict, end: str) -> bool:
    return my["member"] == 1 and my[end] == 0

"""Proper circular-arc and circular-arc schemes end to end."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from geocert.errors import InvalidWitnessError
from geocert.graphs import (
    build_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    star_graph,
)
from geocert.models import ArcModel, random_model
from geocert.oracles import (
    apply_perm,
    compatible_ordering_from_arcs,
    neighborhood_matrix,
    proper_arc_model_search,
    quasi_ordering_from_arcs,
    search_ordering,
)
from geocert.runtime import (
    CORRUPTION_STRATEGIES,
    corrupt,
    make_spanning_tree_cert,
    random_assignment,
    run_pls,
)
from geocert.schemes.circular import (
    CIRC_SCHEMA,
    CIRC_SCHEME,
    PROPER_CIRC_SCHEMA,
    PROPER_CIRC_SCHEME,
    circ_prove,
    proper_circ_prove,
)


def cycle_arcs(n):
    """A proper arc model of the n-cycle, one arc per node."""
    # each arc spans three slots and overlaps exactly its two ring mates
    return ArcModel(
        {i: ((2 * i + 1) % (2 * n) + 1, 2 * i - 1) for i in range(1, n + 1)},
        proper=True,
    )


def non_circular_fixture():
    """Six-cycle with a pendant two-path on alternating corners.

    The three far pendant ends pairwise demand disjoint stretches of any
    hosting circle while their anchors pin all of it, so no arc model
    exists at any properness level.
    """
    edges = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)]
    edges += [(1, 7), (7, 8), (3, 9), (9, 10), (5, 11), (11, 12)]
    return build_graph(range(1, 13), edges)


FLAT_FIELDS = [f.name for f in PROPER_CIRC_SCHEMA.fields]


# ---------------------------------------------------------------------------
# proper circular-arc


def test_c4_certificates():
    g = cycle_graph(4)
    arcs = ArcModel({1: (4, 1), 2: (6, 3), 3: (8, 5), 4: (2, 7)}, proper=True)
    certs = proper_circ_prove(g, (4, 1, 2, 3), arcs)
    assert {v: {k: c[k] for k in FLAT_FIELDS} for v, c in certs.items()} == {
        1: {"right": 8, "left": 2, "first": 4, "pi": 1, "range_lo": 0, "range_hi": 2},
        2: {"right": 12, "left": 6, "first": 4, "pi": 2, "range_lo": 1, "range_hi": 3},
        3: {"right": 16, "left": 10, "first": 4, "pi": 3, "range_lo": 2, "range_hi": 0},
        4: {"right": 4, "left": 14, "first": 4, "pi": 0, "range_lo": 3, "range_hi": 1},
    }
    # the counted spanning tree hangs off the first node
    assert certs[4]["size"] == {
        "count": 4,
        "claimed": 4,
        "tree": {"root": 4, "parent": 4, "depth": 0, "parent_depth": 0},
    }
    assert certs[1]["size"]["count"] == 2
    assert run_pls(PROPER_CIRC_SCHEME, g, certs, seed=0).verdict == "accept"


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_cycles_accept(n):
    g = cycle_graph(n)
    arcs = cycle_arcs(n)
    certs = proper_circ_prove(g, compatible_ordering_from_arcs(arcs), arcs)
    assert run_pls(PROPER_CIRC_SCHEME, g, certs, seed=n).verdict == "accept"


def test_rotation_reanchors_coverage_gap():
    # the model leaves the stretch between slots 2 and 3 uncovered, so the
    # raw right-endpoint order (2, 3, 1) is re-anchored to start after the
    # gap and node 1 ends up ranked first
    g = path_graph(3)
    arcs = ArcModel({1: (5, 3), 2: (1, 4), 3: (2, 6)}, proper=True)
    certs = proper_circ_prove(g, (2, 3, 1), arcs)
    assert {v: (c["pi"], c["first"]) for v, c in certs.items()} == {
        1: (0, 1),
        2: (1, 1),
        3: (2, 1),
    }
    assert {v: (c["right"], c["left"]) for v, c in certs.items()} == {
        1: (6, 2),
        2: (10, 4),
        3: (12, 8),
    }
    assert run_pls(PROPER_CIRC_SCHEME, g, certs, seed=0).verdict == "accept"


def test_complete_graph_universal_windows():
    # every node is universal, so each rank window wraps the whole circle
    # and the pairwise window comparisons are vacuous
    g = complete_graph(4)
    arcs = ArcModel({1: (6, 1), 2: (8, 3), 3: (2, 5), 4: (4, 7)}, proper=True)
    certs = proper_circ_prove(g, (3, 4, 1, 2), arcs)
    for c in certs.values():
        assert (c["range_lo"], c["range_hi"]) == (0, 3)
    assert run_pls(PROPER_CIRC_SCHEME, g, certs, seed=0).verdict == "accept"


def test_two_arcs_accept():
    g = path_graph(2)
    arcs = ArcModel({1: (3, 1), 2: (2, 4)}, proper=True)
    certs = proper_circ_prove(g, (2, 1), arcs)
    assert {v: c["pi"] for v, c in certs.items()} == {1: 1, 2: 0}
    assert run_pls(PROPER_CIRC_SCHEME, g, certs, seed=0).verdict == "accept"


def test_single_arc_accepts():
    g = build_graph([1], [])
    certs = proper_circ_prove(g, (1,), ArcModel({1: (2, 1)}, proper=True))
    assert run_pls(PROPER_CIRC_SCHEME, g, certs, seed=0).verdict == "accept"


def test_claw_has_no_proper_model():
    g = star_graph(3)
    assert proper_arc_model_search(g, max_n=4) is None
    assert search_ordering(g, "compatible", max_n=4) is None


def test_claw_fuzz_never_accepts():
    g = star_graph(3)
    rng = random.Random("claw-pca")
    for seed in range(800):
        certs = random_assignment(PROPER_CIRC_SCHEMA, g.ids, g.n, rng)
        assert run_pls(PROPER_CIRC_SCHEME, g, certs, seed=seed).verdict == "reject"


def test_unsorted_ordering_refused():
    g = cycle_graph(4)
    arcs = ArcModel({1: (4, 1), 2: (6, 3), 3: (8, 5), 4: (2, 7)}, proper=True)
    with pytest.raises(InvalidWitnessError):
        proper_circ_prove(g, (1, 2, 3, 4), arcs)
    with pytest.raises(InvalidWitnessError):
        proper_circ_prove(g, (4, 1, 2), arcs)


def test_foreign_or_improper_model_refused():
    arcs = ArcModel({1: (4, 1), 2: (6, 3), 3: (8, 5), 4: (2, 7)}, proper=True)
    with pytest.raises(InvalidWitnessError):
        proper_circ_prove(path_graph(4), (4, 1, 2, 3), arcs)
    relabeled = ArcModel(dict(arcs.arcs), proper=False)
    with pytest.raises(InvalidWitnessError):
        proper_circ_prove(cycle_graph(4), (4, 1, 2, 3), relabeled)


# ---------------------------------------------------------------------------
# circular-arc


def test_c6_certificates():
    g = cycle_graph(6)
    certs = circ_prove(g, (1, 2, 3, 4, 5, 6))
    assert {v: (c["pi"], c["claimed"], c["run"]) for v, c in certs.items()} == {
        v: (v - 1, 6, 2) for v in range(1, 7)
    }
    assert certs[1]["tree"] == {"root": 1, "parent": 1, "depth": 0, "parent_depth": 0}
    assert run_pls(CIRC_SCHEME, g, certs, seed=0).verdict == "accept"


def test_complete_graph_runs_cover_everything():
    g = complete_graph(5)
    certs = circ_prove(g, (1, 2, 3, 4, 5))
    assert sorted(c["run"] for c in certs.values()) == [5, 5, 5, 5, 5]
    assert run_pls(CIRC_SCHEME, g, certs, seed=0).verdict == "accept"


@pytest.mark.parametrize("n", [1, 2, 3, 5, 9, 14, 20])
def test_interval_instances_prove_circular(n):
    # interval graphs are circular-arc graphs; reading the intervals off
    # by left endpoint already stacks the neighborhoods circularly
    for seed in range(3):
        g, m = random_model("interval", n, seed)
        ordering = tuple(sorted(g.ids, key=lambda v: m.intervals[v][0]))
        certs = circ_prove(g, ordering)
        assert run_pls(CIRC_SCHEME, g, certs, seed=seed).verdict == "accept"


def test_last_rank_run_claim_is_lenient():
    # nobody audits the window of the final rank, so inflating its run
    # within the degree bound is a weaker claim that still accepts;
    # deflating it or inflating any audited rank breaks the exchange
    g = cycle_graph(9)
    honest = circ_prove(g, tuple(range(1, 10)))
    assert honest[9]["pi"] == 8 and honest[9]["run"] == 2
    for node, run, verdict in ((9, 3, "accept"), (9, 1, "reject"), (5, 3, "reject")):
        certs = {v: dict(c) for v, c in honest.items()}
        certs[node]["run"] = run
        assert run_pls(CIRC_SCHEME, g, certs, seed=0).verdict == verdict


def test_circ_prover_refusals():
    fix = non_circular_fixture()
    with pytest.raises(InvalidWitnessError):
        circ_prove(fix, tuple(range(1, 13)))
    with pytest.raises(InvalidWitnessError):
        circ_prove(fix, tuple(range(1, 12)))
    arcs = cycle_arcs(4)
    with pytest.raises(InvalidWitnessError):
        CIRC_SCHEME.prove(path_graph(4), arcs)


def test_fixture_admits_no_quasi_ordering():
    assert search_ordering(non_circular_fixture(), "quasi", max_n=12) is None


def test_fixture_fuzz_never_accepts():
    fix = non_circular_fixture()
    rng = random.Random("fix-ca")
    for seed in range(800):
        certs = random_assignment(CIRC_SCHEMA, fix.ids, fix.n, rng)
        assert run_pls(CIRC_SCHEME, fix, certs, seed=seed).verdict == "reject"
    # the sharpest attack: an honest counted tree with fabricated ranks
    tree = make_spanning_tree_cert(fix, 1)
    n = fix.n
    for seed in range(500):
        fab = random.Random(f"struct-{seed}")
        if seed % 2:
            pis = list(range(n))
            fab.shuffle(pis)
        else:
            pis = [fab.randrange(n) for _ in range(n)]
        certs = {
            v: {"pi": pis[i], "claimed": n, "run": fab.randint(1, n), "tree": dict(tree[v])}
            for i, v in enumerate(sorted(fix.ids))
        }
        assert run_pls(CIRC_SCHEME, fix, certs, seed=seed).verdict == "reject"


# ---------------------------------------------------------------------------
# sweeps shared by both schemes


SCHEMES = {
    "proper-circular-arc": PROPER_CIRC_SCHEME,
    "circular-arc": CIRC_SCHEME,
}


@pytest.mark.parametrize("tag", sorted(SCHEMES))
@pytest.mark.parametrize("n", [1, 2, 3, 6, 11, 24])
def test_honest_generated_instances_accept(tag, n):
    scheme = SCHEMES[tag]
    for seed in range(3):
        g, model = random_model(tag, n, seed)
        certs = scheme.prove(g, model)
        report = run_pls(scheme, g, certs, seed=seed)
        assert report.verdict == "accept"
        assert report.max_cert_bits <= scheme.schema.bit_size(n)
        # accepted ranks always line up as a bijection onto [0, n)
        assert sorted(c["pi"] for c in certs.values()) == list(range(n))
        # verdicts do not depend on the adversarial neighbor order
        again = run_pls(scheme, g, certs, seed=seed + 99)
        assert again.verdict == "accept"


@pytest.mark.parametrize("tag", sorted(SCHEMES))
def test_prover_is_deterministic(tag):
    g, model = random_model(tag, 13, 5)
    assert SCHEMES[tag].prove(g, model) == SCHEMES[tag].prove(g, model)


@pytest.mark.parametrize("n", range(2, 9))
def test_range_transforms_match_reordered_matrices(n):
    # the window a verifier reconstructs for each dihedral reordering must
    # match the actual first row after permuting the neighborhood matrix
    for seed in range(3):
        g, m = random_model("proper-circular-arc", n, seed)
        certs = proper_circ_prove(g, compatible_ordering_from_arcs(m), m)
        order = sorted(g.ids, key=lambda v: certs[v]["pi"])
        mat = neighborhood_matrix(g, order)
        for v in g.ids:
            pi = certs[v]["pi"]
            lo, hi = certs[v]["range_lo"], certs[v]["range_hi"]
            span = (hi - lo) % n + 1
            fwd = mat
            for _ in range(pi):
                fwd = apply_perm(fwd, "shift")
            ones = {j for j in range(n) if fwd[0][j]}
            assert ones == {(lo - pi + k) % n for k in range(span)}
            rev = apply_perm(mat, "inversion")
            for _ in range((n - 2 - pi) % n):
                rev = apply_perm(rev, "shift")
            ones = {j for j in range(n) if rev[0][j]}
            assert ones == {(pi - hi + k) % n for k in range(span)}


def _get_path(cert, path):
    for key in path:
        cert = cert[key]
    return cert


def _changed_paths(schema, before, after):
    out = set()
    for v in before:
        for path, _ in schema.flat_fields():
            if _get_path(before[v], path) != _get_path(after[v], path):
                out.add(path)
    return out


# arc endpoints may wiggle inside the slack slots and still describe a
# valid model, and the count-free spanning tree accepts any valid parent,
# so corruption of those fields can land on a different sound proof
FLEX_FIELDS = {
    "proper-circular-arc": {("right",), ("left",)},
    "circular-arc": {("run",), ("tree", "parent")},
}


@pytest.mark.parametrize("tag", sorted(SCHEMES))
@pytest.mark.parametrize("strategy", CORRUPTION_STRATEGIES)
def test_corruption_rejects(tag, strategy):
    # a long cycle has no twin nodes and every tree parent is forced
    scheme = SCHEMES[tag]
    g = cycle_graph(9)
    if tag == "proper-circular-arc":
        arcs = cycle_arcs(9)
        certs = proper_circ_prove(g, compatible_ordering_from_arcs(arcs), arcs)
        flex = FLEX_FIELDS[tag]
    else:
        certs = circ_prove(g, tuple(range(1, 10)))
        flex = {("run",)}
    for seed in range(60):
        bad = corrupt(certs, scheme.schema, g.n, seed, strategy)
        if bad == certs:
            continue  # the draw may recreate the honest value
        if _changed_paths(scheme.schema, certs, bad) <= flex:
            continue
        assert run_pls(scheme, g, bad, seed=seed).verdict == "reject"


def test_bit_budgets():
    for n in (4, 16, 64, 256, 1024, 4096):
        ref = (max(4 * n, n**3) - 1).bit_length()
        assert PROPER_CIRC_SCHEMA.bit_size(n) <= 8 * ref
        # the rank, size claim, run length, and tree layout is exact
        assert CIRC_SCHEMA.bit_size(n) == 4 * ref
    assert PROPER_CIRC_SCHEMA.bit_size(4) == 42
    assert CIRC_SCHEMA.bit_size(4) == 24


@st.composite
def generated_arc_instances(draw):
    tag = draw(st.sampled_from(sorted(SCHEMES)))
    n = draw(st.integers(min_value=1, max_value=16))
    seed = draw(st.integers(min_value=0, max_value=10_000))
    return tag, n, seed


@settings(max_examples=60, deadline=None)
@given(generated_arc_instances())
def test_property_honest_instances_accept(instance):
    tag, n, seed = instance
    g, model = random_model(tag, n, seed)
    certs = SCHEMES[tag].prove(g, model)
    report = run_pls(SCHEMES[tag], g, certs, seed=seed)
    assert report.verdict == "accept"
    assert not report.rejecting_ids
    assert sorted(c["pi"] for c in certs.values()) == list(range(n))


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(sorted(SCHEMES)),
    st.integers(min_value=2, max_value=14),
    st.integers(min_value=0, max_value=10_000),
    # swap-nodes is excluded: exchanging twin nodes of a dense instance
    # produces a different valid proof, which rightly accepts
    st.sampled_from(("flip-field", "resample-field", "truncate")),
)
def test_property_corruption_never_accepts(tag, n, seed, strategy):
    g, model = random_model(tag, n, seed)
    scheme = SCHEMES[tag]
    certs = scheme.prove(g, model)
    bad = corrupt(certs, scheme.schema, g.n, seed, strategy)
    if bad == certs or _changed_paths(scheme.schema, certs, bad) <= FLEX_FIELDS[tag]:
        return
    assert run_pls(scheme, g, bad, seed=seed).verdict == "reject"

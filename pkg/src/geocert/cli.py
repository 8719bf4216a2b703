"""Command line front end for certificate schemes on geometric graph classes.

Subcommands: gen (sample a yes-instance and write its files), prove (emit
per-node certificates for a graph and witness), verify (run the one-round
verifier everywhere and report), oracle (ground-truth membership check),
fuzz (bomb registered no-instances with sampled certificates), bits
(certificate growth along a ladder of n), report (run all campaign kinds
and render tables plus figures).

Exit codes: 0 means all-accept (or a confirmed yes), 1 means some node
rejected (or a prover refusal, or a non-yes oracle verdict, or a campaign
finding), 2 means usage or file trouble.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import oracles
from .campaigns import (
    BITS_LADDER,
    CAMPAIGN_CAPS,
    CampaignConfig,
    bits_campaign,
    completeness_campaign,
    fuzz_campaign,
    witness_for,
)
from .errors import CampaignConfigError, GeocertError, SearchTooLargeError
from .fixtures import FIXTURES, no_pairs
from .generators import random_model
from .graphs import Graph, parse_edge_list, write_edge_list
from .models import (
    ArcModel,
    CliqueTree,
    IntervalModel,
    PermutationModel,
    TrapezoidModel,
    parse_model,
    write_model,
)
from .reporting import FORMATS, report_csv, report_json, write_report
from .runtime import run_pls
from .schemes import ALL_SCHEMES

EXPECTED_WITNESS = {
    "proper-interval": (IntervalModel,),
    "interval": (IntervalModel, CliqueTree),
    "chordal": (CliqueTree,),
    "proper-circular-arc": (ArcModel,),
    "circular-arc": (ArcModel,),
    "trapezoid": (TrapezoidModel, PermutationModel),
    "permutation": (PermutationModel,),
}


class _CliFailure(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code
        self.msg = msg


def _load_graph(path: str) -> Graph:
    try:
        return parse_edge_list(Path(path).read_text())
    except (OSError, GeocertError, ValueError) as e:
        raise _CliFailure(2, f"graph file {path}: {e}") from e


def _load_model(path: str):
    try:
        return parse_model(Path(path).read_text())
    except (OSError, GeocertError, ValueError) as e:
        raise _CliFailure(2, f"model file {path}: {e}") from e


def _scheme(tag: str):
    if tag not in ALL_SCHEMES:
        raise _CliFailure(2, f"unknown scheme {tag!r}; pick from {sorted(ALL_SCHEMES)}")
    return ALL_SCHEMES[tag]


def cmd_gen(args) -> int:
    _scheme(args.scheme)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        g, model = random_model(args.scheme, args.n, args.seed)
    except (GeocertError, ValueError) as e:
        raise _CliFailure(2, f"generation failed: {e}") from e
    stem = f"{args.scheme}-n{args.n}-s{args.seed}"
    graph_path = out / f"{stem}.graph"
    model_path = out / f"{stem}.model"
    graph_path.write_text(write_edge_list(g))
    model_path.write_text(write_model(model))
    print(graph_path)
    print(model_path)
    return 0


def certs_to_json(tag: str, n: int, certs: dict[int, dict]) -> str:
    payload = {"scheme": tag, "n": n, "certs": {str(v): certs[v] for v in sorted(certs)}}
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def certs_from_json(text: str, g: Graph) -> dict[int, dict]:
    raw = json.loads(text)
    parsed = {int(k): v for k, v in raw["certs"].items()}
    # missing or surplus nodes still yield one cert per node; the verifier
    # treats an empty cert as malformed and rejects there
    return {v: parsed.get(v, {}) for v in g.ids}


def cmd_prove(args) -> int:
    scheme = _scheme(args.scheme)
    g = _load_graph(args.graph)
    model = _load_model(args.model)
    try:
        witness = witness_for(args.scheme, g, model)
        if not isinstance(witness, EXPECTED_WITNESS[args.scheme]):
            raise _CliFailure(
                1,
                f"scheme {args.scheme} cannot take a witness of type "
                f"{type(model).__name__}",
            )
        certs = scheme.prove(g, witness)
    except GeocertError as e:
        raise _CliFailure(1, f"prover refused: {e}") from e
    out = Path(args.out)
    if out.is_dir():
        out = out / f"{args.scheme}-certs.json"
    out.write_text(certs_to_json(args.scheme, g.n, certs))
    print(out)
    return 0


def cmd_verify(args) -> int:
    scheme = _scheme(args.scheme)
    g = _load_graph(args.graph)
    try:
        certs = certs_from_json(Path(args.certs).read_text(), g)
    except (OSError, ValueError, KeyError, TypeError) as e:
        print(f"certificate file {args.certs} is unusable ({e}); "
              "verifying with empty certificates", file=sys.stderr)
        certs = {v: {} for v in g.ids}
    rep = run_pls(scheme, g, certs, seed=args.seed)
    print(rep.to_json())
    return 0 if rep.verdict == "accept" else 1


def oracle_verdict(tag: str, g: Graph) -> str:
    """Ground-truth class membership: yes, no, or unknown past search caps."""
    try:
        if tag == "chordal":
            return "yes" if oracles.is_chordal(g) else "no"
        if tag == "interval":
            return "yes" if oracles.is_interval(g) else "no"
        if tag == "proper-interval":
            return "yes" if oracles.is_proper_interval(g) else "no"
        if tag == "circular-arc":
            return "yes" if oracles.search_ordering(g, "quasi") else "no"
        if tag == "proper-circular-arc":
            return "yes" if oracles.search_ordering(g, "compatible") else "no"
        if tag == "permutation":
            return "yes" if oracles.permutation_model_search(g) else "no"
        # only the long-hole refutation is implemented for trapezoid graphs
        return "no" if oracles.trapezoid_no_certificate(g) else "unknown"
    except SearchTooLargeError:
        return "unknown"


def cmd_oracle(args) -> int:
    _scheme(args.scheme)
    g = _load_graph(args.graph)
    verdict = oracle_verdict(args.scheme, g)
    print(json.dumps({"scheme": args.scheme, "n": g.n, "verdict": verdict}))
    return 0 if verdict == "yes" else 1


def _emit(report, args) -> None:
    text = report_json(report) if args.format == "json" else report_csv(report)
    sys.stdout.write(text)
    if args.out:
        write_report(report, args.out, args.format)


def cmd_fuzz(args) -> int:
    _scheme(args.scheme)
    if args.fixture:
        pairs = [(args.fixture, args.scheme)]
    else:
        pairs = [(name, tag) for name, tag in no_pairs() if tag == args.scheme]
        if not pairs:
            raise _CliFailure(2, f"no registered no-instance for scheme {args.scheme!r}")
    cfg = CampaignConfig(scheme=args.scheme, fuzz_iters=args.iters, seed=args.seed)
    summaries = []
    ok = True
    for name, tag in pairs:
        try:
            rep = fuzz_campaign(cfg, name)
        except (CampaignConfigError, GeocertError) as e:
            raise _CliFailure(2, str(e)) from e
        if args.out:
            write_report(rep, args.out, args.format)
        summaries.append(dict(rep.summary) | {"scheme": tag})
        ok = ok and rep.ok
    print(json.dumps({"scheme": args.scheme, "pairs": summaries, "ok": ok}, sort_keys=True))
    return 0 if ok else 1


def cmd_bits(args) -> int:
    _scheme(args.scheme)
    ns = tuple(args.n) if args.n else BITS_LADDER
    try:
        rep = bits_campaign(args.scheme, ns=ns, seed=args.seed)
    except (CampaignConfigError, GeocertError, ValueError) as e:
        raise _CliFailure(2, f"bits campaign failed: {e}") from e
    _emit(rep, args)
    return 0 if rep.ok else 1


def cmd_report(args) -> int:
    _scheme(args.scheme)
    n_lo, n_hi = args.n if args.n else (4, min(48, CAMPAIGN_CAPS[args.scheme]))
    try:
        cfg = CampaignConfig(
            scheme=args.scheme,
            n_lo=n_lo,
            n_hi=n_hi,
            instances=args.count,
            fuzz_iters=args.iters,
            seed=args.seed,
        )
    except CampaignConfigError as e:
        raise _CliFailure(2, str(e)) from e
    reports = [completeness_campaign(cfg)]
    for name, tag in no_pairs():
        if tag == args.scheme:
            reports.append(fuzz_campaign(cfg, name))
    reports.append(bits_campaign(args.scheme, seed=args.seed))
    files: list[str] = []
    for rep in reports:
        files += [str(p) for p in write_report(rep, args.out, args.format)]
    ok = all(rep.ok for rep in reports)
    print(json.dumps({"scheme": args.scheme, "files": files, "ok": ok}, sort_keys=True))
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geocert",
        description="certificate schemes for geometric intersection graph classes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        p.add_argument("--scheme", required=True, help="scheme tag")
        p.add_argument("--seed", type=int, default=0)
        return p

    p = add("gen", cmd_gen, "sample a yes-instance; write graph and model files")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True, help="output directory")

    p = add("prove", cmd_prove, "emit per-node certificates for a graph and witness")
    p.add_argument("--graph", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True, help="certificate file (or directory)")

    p = add("verify", cmd_verify, "run the verifier at every node; print the report")
    p.add_argument("--graph", required=True)
    p.add_argument("--certs", required=True)

    p = add("oracle", cmd_oracle, "ground-truth membership verdict for a graph")
    p.add_argument("--graph", required=True)

    p = add("fuzz", cmd_fuzz, "sample certificates against registered no-instances")
    p.add_argument("--fixture", help=f"one of {sorted(FIXTURES)} (default: all registered)")
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--out", help="write tables and figures here")
    p.add_argument("--format", choices=FORMATS, default="json")

    p = add("bits", cmd_bits, "certificate bit growth along a ladder of n")
    p.add_argument("--n", type=int, nargs="*", help="ladder sizes")
    p.add_argument("--out", help="write the table and figure here")
    p.add_argument("--format", choices=FORMATS, default="json")

    p = add("report", cmd_report, "run every campaign kind; render tables and figures")
    p.add_argument("--n", type=int, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--count", type=int, default=50, help="completeness instances")
    p.add_argument("--iters", type=int, default=1000, help="fuzz iterations per fixture")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=FORMATS, default="json")

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CliFailure as e:
        print(f"error: {e.msg}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())

"""End-to-end command line contract.

Exit codes under test: 0 for all-accept or confirmed yes, 1 for rejections
and prover refusals, 2 for usage and file trouble.
"""

import json

import pytest

from geocert import oracles
from geocert.cli import main
from geocert.fixtures import fixture
from geocert.graphs import parse_edge_list, star_graph, write_edge_list
from geocert.models import CliqueTree, PermutationModel, parse_model, write_model
from geocert.runtime import RunReport


def run(capsys, *args):
    rc = main(list(args))
    out, err = capsys.readouterr()
    return rc, out, err


def gen(capsys, tmp_path, scheme, n, seed):
    rc, out, _ = run(capsys, "gen", "--scheme", scheme, "--n", str(n),
                     "--seed", str(seed), "--out", str(tmp_path))
    assert rc == 0
    graph_path, model_path = out.splitlines()
    return graph_path, model_path


def test_gen_writes_two_loadable_files(tmp_path, capsys):
    graph_path, model_path = gen(capsys, tmp_path, "permutation", 10, 7)
    assert graph_path.endswith("permutation-n10-s7.graph")
    assert model_path.endswith("permutation-n10-s7.model")
    g = parse_edge_list(open(graph_path).read())
    m = parse_model(open(model_path).read())
    assert g.n == 10
    assert isinstance(m, PermutationModel)


def test_gen_chordal_files_pass_the_oracle(tmp_path, capsys):
    graph_path, model_path = gen(capsys, tmp_path, "chordal", 40, 1)
    g = parse_edge_list(open(graph_path).read())
    assert g.n == 40
    assert oracles.is_chordal(g)
    assert isinstance(parse_model(open(model_path).read()), CliqueTree)


def test_gen_single_node(tmp_path, capsys):
    graph_path, _ = gen(capsys, tmp_path, "interval", 1, 0)
    assert parse_edge_list(open(graph_path).read()).n == 1


def test_prove_then_verify_round_trip(tmp_path, capsys):
    graph_path, model_path = gen(capsys, tmp_path, "chordal", 9, 2)
    cert_path = tmp_path / "certs.json"
    rc, out, _ = run(capsys, "prove", "--scheme", "chordal", "--graph", graph_path,
                     "--model", model_path, "--out", str(cert_path))
    assert rc == 0
    assert out.strip() == str(cert_path)
    rc, out, _ = run(capsys, "verify", "--scheme", "chordal", "--graph", graph_path,
                     "--certs", str(cert_path))
    assert rc == 0
    rep = RunReport.from_json(out)
    assert rep.verdict == "accept"
    assert rep.rejecting_ids == ()
    assert rep.n == 9


def test_prove_into_directory_picks_a_name(tmp_path, capsys):
    graph_path, model_path = gen(capsys, tmp_path, "trapezoid", 6, 4)
    rc, out, _ = run(capsys, "prove", "--scheme", "trapezoid", "--graph", graph_path,
                     "--model", model_path, "--out", str(tmp_path))
    assert rc == 0
    assert out.strip().endswith("trapezoid-certs.json")


def test_prove_refuses_mismatched_pair(tmp_path, capsys):
    graph_path, _ = gen(capsys, tmp_path, "chordal", 8, 1)
    _, other_model = gen(capsys, tmp_path, "chordal", 8, 2)
    rc, _, err = run(capsys, "prove", "--scheme", "chordal", "--graph", graph_path,
                     "--model", other_model, "--out", str(tmp_path / "x.json"))
    assert rc == 1
    assert "prover refused" in err


def test_prove_refuses_chordal_certificates_for_c4(tmp_path, capsys):
    graph_path = tmp_path / "c4.graph"
    graph_path.write_text(fixture("c4").graph_text())
    model_path = tmp_path / "claw.model"
    model_path.write_text(write_model(oracles.chordal_clique_tree(star_graph(3))))
    rc, _, err = run(capsys, "prove", "--scheme", "chordal", "--graph", str(graph_path),
                     "--model", str(model_path), "--out", str(tmp_path / "x.json"))
    assert rc == 1
    assert "prover refused" in err


def test_prove_refuses_wrong_witness_type(tmp_path, capsys):
    graph_path, model_path = gen(capsys, tmp_path, "permutation", 6, 3)
    rc, _, err = run(capsys, "prove", "--scheme", "chordal", "--graph", graph_path,
                     "--model", model_path, "--out", str(tmp_path / "x.json"))
    assert rc == 1
    assert "PermutationModel" in err


def test_verify_truncated_certs_rejects_with_diagnostic(tmp_path, capsys):
    graph_path, model_path = gen(capsys, tmp_path, "permutation", 10, 7)
    cert_path = tmp_path / "certs.json"
    run(capsys, "prove", "--scheme", "permutation", "--graph", graph_path,
        "--model", model_path, "--out", str(cert_path))
    cert_path.write_text(cert_path.read_text()[:60])
    rc, out, err = run(capsys, "verify", "--scheme", "permutation",
                       "--graph", graph_path, "--certs", str(cert_path))
    assert rc == 1
    assert "unusable" in err
    rep = RunReport.from_json(out)
    assert rep.verdict == "reject"
    assert len(rep.rejecting_ids) == 10


def test_verify_corrupted_claim_rejects(tmp_path, capsys):
    graph_path, model_path = gen(capsys, tmp_path, "chordal", 9, 3)
    cert_path = tmp_path / "certs.json"
    run(capsys, "prove", "--scheme", "chordal", "--graph", graph_path,
        "--model", model_path, "--out", str(cert_path))
    raw = json.loads(cert_path.read_text())
    raw["certs"]["1"]["size"]["claimed"] = 2
    cert_path.write_text(json.dumps(raw))
    rc, out, _ = run(capsys, "verify", "--scheme", "chordal", "--graph", graph_path,
                     "--certs", str(cert_path))
    assert rc == 1
    assert RunReport.from_json(out).verdict == "reject"


def test_oracle_verdicts_and_exit_codes(tmp_path, capsys):
    c4 = tmp_path / "c4.graph"
    c4.write_text(fixture("c4").graph_text())
    rc, out, _ = run(capsys, "oracle", "--scheme", "chordal", "--graph", str(c4))
    assert rc == 1
    assert json.loads(out)["verdict"] == "no"
    claw = tmp_path / "claw.graph"
    claw.write_text(fixture("claw").graph_text())
    rc, out, _ = run(capsys, "oracle", "--scheme", "interval", "--graph", str(claw))
    assert rc == 0
    assert json.loads(out)["verdict"] == "yes"


def test_oracle_goes_unknown_past_search_caps(tmp_path, capsys):
    big_star = tmp_path / "star9.graph"
    big_star.write_text(write_edge_list(star_graph(8)))
    rc, out, _ = run(capsys, "oracle", "--scheme", "permutation", "--graph", str(big_star))
    assert rc == 1
    assert json.loads(out)["verdict"] == "unknown"


def test_fuzz_sweeps_all_registered_pairs(tmp_path, capsys):
    rc, out, _ = run(capsys, "fuzz", "--scheme", "permutation", "--iters", "200",
                     "--seed", "1", "--out", str(tmp_path / "figs"))
    assert rc == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert sorted(p["fixture"] for p in payload["pairs"]) == ["c6", "crossed-blocks"]
    names = sorted(p.name for p in (tmp_path / "figs").iterdir())
    assert names == [
        "fuzz-c6-permutation.json",
        "fuzz-c6-permutation.png",
        "fuzz-crossed-blocks-permutation.json",
        "fuzz-crossed-blocks-permutation.png",
    ]


def test_fuzz_yes_slot_is_a_config_error(capsys):
    rc, _, err = run(capsys, "fuzz", "--scheme", "chordal", "--fixture", "claw",
                     "--iters", "10")
    assert rc == 2
    assert "not registered as a no-instance" in err


def test_fuzz_unknown_fixture_is_a_config_error(capsys):
    rc, _, err = run(capsys, "fuzz", "--scheme", "chordal", "--fixture", "nope",
                     "--iters", "10")
    assert rc == 2


def test_bits_csv_table_is_frozen(capsys):
    rc, out, _ = run(capsys, "bits", "--scheme", "proper-interval",
                     "--n", "16", "64", "256", "--format", "csv")
    assert rc == 0
    assert out == (
        "n,bits,ceil_log2,ratio,budget,verdict\n"
        "16,36,4,9.0,40,accept\n"
        "64,54,6,9.0,58,accept\n"
        "256,72,8,9.0,76,accept\n"
    )


def test_bits_single_size_is_a_config_error(capsys):
    rc, _, err = run(capsys, "bits", "--scheme", "chordal", "--n", "16")
    assert rc == 2


def test_report_renders_figures_next_to_tables(tmp_path, capsys):
    out_dir = tmp_path / "rep"
    rc, out, _ = run(capsys, "report", "--scheme", "trapezoid", "--count", "5",
                     "--iters", "150", "--n", "4", "24", "--seed", "6",
                     "--out", str(out_dir), "--format", "csv")
    assert rc == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    names = sorted(p.name for p in out_dir.iterdir())
    assert names == [
        "bits-trapezoid.csv",
        "bits-trapezoid.png",
        "completeness-trapezoid.csv",
        "completeness-trapezoid.png",
        "fuzz-c6-trapezoid.csv",
        "fuzz-c6-trapezoid.png",
        "fuzz-crossed-blocks-trapezoid.csv",
        "fuzz-crossed-blocks-trapezoid.png",
    ]


def test_missing_subcommand_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    capsys.readouterr()


def test_missing_required_flag_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--n", "4", "--out", "x"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_unknown_scheme_usage_error(tmp_path, capsys):
    rc, _, err = run(capsys, "gen", "--scheme", "square", "--n", "4",
                     "--out", str(tmp_path))
    assert rc == 2
    assert "unknown scheme" in err


def test_missing_graph_file_usage_error(tmp_path, capsys):
    rc, _, err = run(capsys, "verify", "--scheme", "chordal",
                     "--graph", str(tmp_path / "nope.graph"),
                     "--certs", str(tmp_path / "nope.json"))
    assert rc == 2
    assert "graph file" in err

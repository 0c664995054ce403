"""End-to-end tests for the command line interface."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from frozencol.cli import CommandConfig, main, run
from frozencol.graph import cycle_graph, decode_graph6, encode_graph6
from frozencol.partitions import (
    BlockPartition,
    is_frozen_clique_partition,
    is_proper_colouring,
)

FIXTURE_ROOT = Path(__file__).resolve().parent.parent / "fixtures"
ME2_LEFT = str(FIXTURE_ROOT / "figures/me2.left.json")
ME2_RIGHT = str(FIXTURE_ROOT / "figures/me2.right.json")


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def c5_path(tmp_path):
    p = tmp_path / "c5.g6"
    p.write_text(encode_graph6(cycle_graph(5)) + "\n")
    return str(p)


@pytest.fixture
def c6_path(tmp_path):
    p = tmp_path / "c6.g6"
    p.write_text(encode_graph6(cycle_graph(6)) + "\n")
    return str(p)


# -- family ---------------------------------------------------------------------


def test_family_json_payload(runner):
    result = runner.invoke(main, ["family", "--name", "ME", "--q", "2"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["family"] == "ME"
    assert data["param"] == 2
    g = decode_graph6(data["graph6"])
    assert g.n == 10
    frozen = BlockPartition.from_json(data["frozen_partition"])
    assert frozen.k == 5
    assert is_frozen_clique_partition(g, frozen)


def test_family_graph6_output(runner):
    result = runner.invoke(main, ["family", "--name", "ME", "--q", "2",
                                  "--format", "graph6"])
    assert result.exit_code == 0
    assert decode_graph6(result.output.strip()).n == 10


def test_family_dimacs_output(runner):
    result = runner.invoke(main, ["family", "--name", "KE", "--q", "1",
                                  "--format", "dimacs"])
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "p edge 6 9"


def test_family_star_alias(runner):
    result = runner.invoke(main, ["family", "--name", "ME*", "--q", "2"])
    assert result.exit_code == 0
    assert json.loads(result.output)["family"] == "ME_STAR"


def test_family_unknown_name_is_usage_error(runner):
    result = runner.invoke(main, ["family", "--name", "NOPE", "--q", "2"])
    assert result.exit_code == 2


def test_family_bad_parameter_is_usage_error(runner):
    result = runner.invoke(main, ["family", "--name", "ME", "--q", "1"])
    assert result.exit_code == 2


def test_family_out_file(runner, tmp_path):
    out = tmp_path / "me2.json"
    result = runner.invoke(main, ["family", "--name", "ME", "--q", "2",
                                  "--out", str(out)])
    assert result.exit_code == 0
    assert json.loads(out.read_text())["family"] == "ME"


# -- check ----------------------------------------------------------------------


def test_check_frozen_clique_partition_passes(runner):
    result = runner.invoke(main, ["check", ME2_RIGHT, ME2_RIGHT,
                                  "--frozen", "--clique-partition"])
    assert result.exit_code == 0
    assert result.output.startswith("PASS")


def test_check_clique_blocks_fail_as_colouring(runner):
    result = runner.invoke(main, ["check", ME2_LEFT, ME2_LEFT, "--frozen"])
    assert result.exit_code == 1
    assert result.output.startswith("FAIL")


def test_check_plain_clique_partition_passes(runner):
    result = runner.invoke(main, ["check", ME2_LEFT, ME2_LEFT, "--clique-partition"])
    assert result.exit_code == 0


def test_check_colour_line_partition(runner, c6_path, tmp_path):
    line = tmp_path / "cols.txt"
    line.write_text("0 1 0 1 0 1\n")
    ok = runner.invoke(main, ["check", c6_path, str(line), "--k", "2"])
    assert ok.exit_code == 0
    frozen = runner.invoke(main, ["check", c6_path, str(line), "--k", "3",
                                  "--frozen"])
    assert frozen.exit_code == 1


def test_check_size_mismatch_is_usage_error(runner, c5_path, tmp_path):
    line = tmp_path / "cols.txt"
    line.write_text("0 1 0\n")
    result = runner.invoke(main, ["check", c5_path, str(line), "--k", "2"])
    assert result.exit_code == 2


def test_check_unreadable_graph_is_usage_error(runner, tmp_path):
    result = runner.invoke(main, ["check", str(tmp_path / "absent.g6"), ME2_LEFT])
    assert result.exit_code == 2


# -- solve ----------------------------------------------------------------------


def test_solve_single_invariant(runner, c5_path):
    result = runner.invoke(main, ["solve", c5_path, "--invariant", "chi"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["chi"] == 3
    g = cycle_graph(5)
    witness = BlockPartition.from_json(data["witness"])
    assert is_proper_colouring(g, witness)


def test_solve_full_report(runner):
    result = runner.invoke(main, ["solve", ME2_RIGHT])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["theta"] == 4
    assert data["c4_free"] is True
    assert data["2k2_free"] is False


# -- reconfig -------------------------------------------------------------------


def test_reconfig_counts_and_frozen_states(runner, c6_path):
    result = runner.invoke(main, ["reconfig", c6_path, "--k", "3"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["k"] == 3
    assert data["colouring_count"] == 66
    assert len(data["frozen_colourings"]) == 6
    assert data["component_count"] == 7
    assert not data["truncated"]


def test_reconfig_dot_export(runner, c5_path, tmp_path):
    dot = tmp_path / "moves.dot"
    result = runner.invoke(main, ["reconfig", c5_path, "--k", "3",
                                  "--dot", str(dot)])
    assert result.exit_code == 0
    text = dot.read_text()
    assert text.startswith("graph")
    assert "--" in text


def test_reconfig_cap_flag(runner, c6_path):
    result = runner.invoke(main, ["reconfig", c6_path, "--k", "3", "--cap", "5"])
    assert result.exit_code == 2


def test_reconfig_cap_env_var(runner, c6_path):
    result = runner.invoke(main, ["reconfig", c6_path, "--k", "3"],
                           env={"FROZENCOL_CAP": "5"})
    assert result.exit_code == 2


def test_reconfig_cap_flag_beats_env_var(runner, c6_path):
    result = runner.invoke(main, ["reconfig", c6_path, "--k", "3", "--cap", "100"],
                           env={"FROZENCOL_CAP": "5"})
    assert result.exit_code == 0


def test_reconfig_bad_cap_env_var(runner, c6_path):
    result = runner.invoke(main, ["reconfig", c6_path, "--k", "3"],
                           env={"FROZENCOL_CAP": "many"})
    assert result.exit_code == 2


# -- subdivide ------------------------------------------------------------------


def test_subdivide_bare_edge(runner, c5_path):
    result = runner.invoke(main, ["subdivide", c5_path, "--x", "0", "--y", "1"])
    assert result.exit_code == 0
    out = decode_graph6(json.loads(result.output)["graph6"])
    assert out.n == 7
    assert out.edge_count == 7


def test_subdivide_non_edge_is_usage_error(runner, c5_path):
    result = runner.invoke(main, ["subdivide", c5_path, "--x", "0", "--y", "2"])
    assert result.exit_code == 2


def test_subdivide_with_certificates(runner, tmp_path):
    left = json.loads(Path(ME2_LEFT).read_text())
    right = json.loads(Path(ME2_RIGHT).read_text())
    certs = tmp_path / "certs.json"
    certs.write_text(json.dumps({
        "clique_partition": {"k": left["k"], "blocks": left["blocks"]},
        "frozen_partition": {"k": right["k"], "blocks": right["blocks"]},
    }))
    result = runner.invoke(main, ["subdivide", ME2_RIGHT, "--x", "7", "--y", "8",
                                  "--certs", str(certs), "--theta-check"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    g = decode_graph6(data["graph6"])
    assert g.n == 12
    assert data["case_used"] == 1
    assert data["theta_incremented"] is True
    f = BlockPartition.from_json(data["frozen_partition"])
    assert is_frozen_clique_partition(g, f)


# -- recolour -------------------------------------------------------------------


def test_recolour_between_endpoints(runner, c5_path):
    result = runner.invoke(main, ["recolour", c5_path, "--ell", "4",
                                  "--start", "0 1 0 1 2",
                                  "--target", "1 0 1 0 2"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["ell"] == 4
    assert data["per_vertex_max"] <= 14
    assert data["total"] == len(data["moves"])


def test_recolour_sampled_pairs(runner, c5_path):
    result = runner.invoke(main, ["recolour", c5_path, "--ell", "4",
                                  "--sample", "3", "--seed", "7"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert len(data["paths"]) == 3


def test_recolour_sampling_is_seed_deterministic(runner, c5_path):
    args = ["recolour", c5_path, "--ell", "4", "--sample", "2", "--seed", "5"]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.exit_code == 0
    assert first.output == second.output


def test_recolour_rejects_graphs_outside_algorithm_scope(runner, c6_path):
    # The stepwise algorithm needs a graph with no induced pair of
    # disjoint edges; the six-cycle has one.
    result = runner.invoke(main, ["recolour", c6_path, "--ell", "4",
                                  "--sample", "1", "--seed", "0"])
    assert result.exit_code == 2


def test_recolour_requires_endpoints_or_sample(runner, c5_path):
    result = runner.invoke(main, ["recolour", c5_path, "--ell", "4"])
    assert result.exit_code == 2


def test_recolour_improper_endpoint_is_usage_error(runner, c5_path):
    result = runner.invoke(main, ["recolour", c5_path, "--ell", "4",
                                  "--start", "0 0 0 0 0",
                                  "--target", "0 1 0 1 2"])
    assert result.exit_code == 2


# -- search ---------------------------------------------------------------------


def test_search_stream_from_stdin(runner):
    stream = encode_graph6(cycle_graph(6)) + "\n" + encode_graph6(cycle_graph(5)) + "\n"
    result = runner.invoke(main, ["search", "--stream", "-"], input=stream)
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["graphs_scanned"] == 2
    assert len(data["hits"]) == 1
    assert data["hits"][0]["chi"] == 2
    assert data["hits"][0]["k"] == 3


def test_search_exhaustive_small(runner):
    result = runner.invoke(main, ["search", "--exhaustive", "3"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["graphs_scanned"] == 11
    assert data["hits"] == []


def test_search_exhaustive_cap(runner):
    result = runner.invoke(main, ["search", "--exhaustive", "9"])
    assert result.exit_code == 2


def test_search_checkpoint_resumes(runner, tmp_path):
    stream = tmp_path / "stream.g6"
    stream.write_text(encode_graph6(cycle_graph(6)) + "\n"
                      + encode_graph6(cycle_graph(5)) + "\n")
    mark = tmp_path / "mark.txt"
    first = runner.invoke(main, ["search", "--stream", str(stream),
                                 "--checkpoint", str(mark)])
    assert first.exit_code == 0
    assert json.loads(first.output)["graphs_scanned"] == 2
    assert mark.read_text().strip() == "2"
    second = runner.invoke(main, ["search", "--stream", str(stream),
                                  "--checkpoint", str(mark)])
    assert second.exit_code == 0
    assert json.loads(second.output)["graphs_scanned"] == 0


def test_search_filter_side(runner):
    line = encode_graph6(cycle_graph(6)) + "\n"
    dropped = runner.invoke(main, ["search", "--stream", "-",
                                   "--two-k2-free", "graph"], input=line)
    assert json.loads(dropped.output)["hits"] == []
    kept = runner.invoke(main, ["search", "--stream", "-",
                                "--two-k2-free", "complement"], input=line)
    assert len(json.loads(kept.output)["hits"]) == 1


# -- regen-fixtures and plumbing ------------------------------------------------


def test_regen_fixtures_writes_all_files(runner, tmp_path):
    result = runner.invoke(main, ["regen-fixtures", "--dir", str(tmp_path / "fx")])
    assert result.exit_code == 0
    written = sorted((tmp_path / "fx").rglob("*.json"))
    assert len(written) == 26


def test_unknown_subcommand_exits_two(runner):
    result = runner.invoke(main, ["bogus"])
    assert result.exit_code == 2


def test_run_rejects_unknown_config():
    assert run(CommandConfig("bogus")) == 2

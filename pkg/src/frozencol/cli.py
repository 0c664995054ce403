"""Command-line surface: build families, check certificates, solve, explore.

Exit codes separate mathematics from plumbing: 0 means every requested check
passed, 1 means a certificate or bound failed verification, 2 means the
request itself was unusable (unknown input, malformed file, cap exceeded).
"""

from __future__ import annotations

import dataclasses
import json
import os
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click

from .families import BUILDERS
from .fixtures import regenerate_fixtures
from .graph import (
    Graph,
    decode_graph6,
    encode_graph6,
    graph_from_json,
    graph_to_json,
    read_dimacs,
    write_dimacs,
)
from .partitions import (
    BlockPartition,
    is_clique_partition,
    is_frozen_clique_partition,
    is_frozen_colouring,
    is_proper_colouring,
)
from .recolour import path_between, verify_moves
from .reconfig import (
    DEFAULT_COLOURING_CAP,
    CapExceeded,
    reconfiguration_components,
    reconfiguration_dot,
)
from .search import PredicateSpec, exhaustive_small, scan_stream
from .solvers import (
    analyze,
    chromatic_number,
    clique_cover_number,
    clique_number,
    independence_number,
)
from .transform import subdivide_edge, subdivide_with_certificates, with_theta_check

ENV_CAP = "FROZENCOL_CAP"


class UsageFailure(Exception):
    """Operationally wrong request: bad file, bad format, exceeded cap."""


class VerificationFailure(Exception):
    """Mathematically false claim: a certificate or bound did not check."""


@dataclass(frozen=True)
class CommandConfig:
    """One parsed invocation: the subcommand plus its parameters."""

    subcommand: str
    params: dict = field(default_factory=dict)
    verify: bool = True
    fmt: str = "auto"
    out: str | None = None
    cap: int | None = None
    seed: int = 0


def default_cap() -> int:
    raw = os.environ.get(ENV_CAP)
    if raw is None:
        return DEFAULT_COLOURING_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise UsageFailure(f"{ENV_CAP} must be an integer, got {raw!r}")
    if cap <= 0:
        raise UsageFailure(f"{ENV_CAP} must be positive, got {cap}")
    return cap


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageFailure(f"cannot read {path}: {exc}")


def _sniff_format(path: str, text: str) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".g6", ".graph6"):
        return "graph6"
    if suffix == ".col":
        return "dimacs"
    if suffix == ".json":
        return "json"
    body = text.lstrip()
    if body.startswith("{"):
        return "json"
    if body.startswith(("p ", "c ", "p\t")):
        return "dimacs"
    return "graph6"


def read_graph(path: str, fmt: str = "auto") -> Graph:
    """Load a graph from a file or '-' (stdin) in graph6, DIMACS, or JSON."""
    text = _read_text(path)
    if fmt == "auto":
        fmt = _sniff_format(path, text)
    try:
        if fmt == "graph6":
            first = next((ln for ln in text.splitlines() if ln.strip()), "")
            return decode_graph6(first)
        if fmt == "dimacs":
            return read_dimacs(text)
        if fmt == "json":
            return graph_from_json(json.loads(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageFailure(f"cannot parse {path} as {fmt}: {exc}")
    raise UsageFailure(f"unknown graph format {fmt!r}")


def read_partition(path: str, k: int | None = None) -> BlockPartition:
    """Load a partition from JSON {k, blocks} or a colour-per-vertex line."""
    text = _read_text(path).strip()
    try:
        if text.startswith("{"):
            return BlockPartition.from_json(json.loads(text))
        return BlockPartition.from_colour_line(text, k)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageFailure(f"cannot parse partition {path}: {exc}")


def _emit(config: CommandConfig, text: str) -> None:
    if config.out is None or config.out == "-":
        click.echo(text, nl=not text.endswith("\n"))
    else:
        Path(config.out).write_text(text)


def _dump(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# -- subcommand handlers -------------------------------------------------------


_FAMILY_ALIASES = {"ME*": "ME_STAR", "MESTAR": "ME_STAR", "ME_STAR": "ME_STAR"}


def _run_family(config: CommandConfig) -> int:
    name = config.params["name"].upper().replace("-", "_")
    name = _FAMILY_ALIASES.get(name, name)
    if name not in BUILDERS:
        raise UsageFailure(
            f"unknown family {config.params['name']!r}; choose from "
            + ", ".join(sorted(BUILDERS))
        )
    param = config.params["q"]
    try:
        inst = BUILDERS[name](param)
    except ValueError as exc:
        raise UsageFailure(str(exc))
    g = inst.graph
    if config.verify:
        if not is_clique_partition(g, inst.canonical):
            raise VerificationFailure("canonical partition failed verification")
        if not is_frozen_clique_partition(g, inst.frozen):
            raise VerificationFailure("frozen partition failed verification")
    if config.fmt == "graph6":
        _emit(config, encode_graph6(g) + "\n")
    elif config.fmt == "dimacs":
        _emit(config, write_dimacs(g))
    else:
        payload = {
            "family": inst.family,
            "param": inst.param,
            "graph6": encode_graph6(g),
            "graph": graph_to_json(g),
            "theta_partition": inst.canonical.to_json(),
            "frozen_partition": inst.frozen.to_json(),
            "expected": dataclasses.asdict(inst.expected),
        }
        _emit(config, _dump(payload))
    return 0


def _run_check(config: CommandConfig) -> int:
    g = read_graph(config.params["graph"], config.fmt)
    part = read_partition(config.params["partition"], config.params.get("k"))
    if part.ground != g.n:
        raise UsageFailure(
            f"partition covers {part.ground} vertices but the graph has {g.n}"
        )
    frozen = config.params.get("frozen", False)
    clique = config.params.get("clique_partition", False)
    checker = {
        (False, False): is_proper_colouring,
        (False, True): is_clique_partition,
        (True, False): is_frozen_colouring,
        (True, True): is_frozen_clique_partition,
    }[(frozen, clique)]
    try:
        ok = checker(g, part)
        reason = "" if ok else "checker returned false"
    except ValueError as exc:
        ok, reason = False, str(exc)
    label = checker.__name__.removeprefix("is_").replace("_", " ")
    if ok:
        _emit(config, f"PASS: {label}\n")
        return 0
    _emit(config, f"FAIL: {label}: {reason}\n")
    return 1


def _run_solve(config: CommandConfig) -> int:
    g = read_graph(config.params["graph"], config.fmt)
    which = config.params.get("invariant", "all")
    if which == "all":
        payload = analyze(g).to_json()
    else:
        solver = {
            "chi": chromatic_number,
            "theta": clique_cover_number,
            "alpha": independence_number,
            "omega": clique_number,
        }[which]
        value, witness = solver(g)
        if config.verify:
            if which == "chi" and not is_proper_colouring(g, witness):
                raise VerificationFailure("colouring witness failed verification")
            if which == "theta" and not is_clique_partition(g, witness):
                raise VerificationFailure("cover witness failed verification")
        payload = {
            which: value,
            "witness": witness.to_json()
            if isinstance(witness, BlockPartition)
            else sorted(witness),
        }
    _emit(config, _dump(payload))
    return 0


def _run_reconfig(config: CommandConfig) -> int:
    g = read_graph(config.params["graph"], config.fmt)
    k = config.params["k"]
    cap = config.cap if config.cap is not None else default_cap()
    report = reconfiguration_components(g, k, colouring_cap=cap)
    dot_path = config.params.get("dot")
    if dot_path:
        Path(dot_path).write_text(reconfiguration_dot(g, k, cap=cap))
    if config.verify:
        for p in report.frozen_colourings:
            if not is_frozen_colouring(g, p):
                raise VerificationFailure("reported frozen colouring is not frozen")
    _emit(config, _dump(report.to_json()))
    return 0


def _run_subdivide(config: CommandConfig) -> int:
    g = read_graph(config.params["graph"], config.fmt)
    x, y = config.params["x"], config.params["y"]
    certs_path = config.params.get("certs")
    if certs_path is None:
        try:
            out = subdivide_edge(g, x, y)
        except ValueError as exc:
            raise UsageFailure(str(exc))
        _emit(config, _dump({"graph6": encode_graph6(out), "graph": graph_to_json(out)}))
        return 0
    data = json.loads(_read_text(certs_path))
    try:
        q = BlockPartition.from_json(data["clique_partition"])
        f = BlockPartition.from_json(data["frozen_partition"])
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageFailure(f"bad certificate file {certs_path}: {exc}")
    try:
        result = subdivide_with_certificates(
            g, q, f, x, y, strict_c4=config.params.get("strict_c4", True)
        )
    except ValueError as exc:
        raise VerificationFailure(str(exc))
    if config.params.get("theta_check"):
        result = with_theta_check(result, g, q.k)
        if result.theta_incremented is False:
            raise VerificationFailure("cover number did not rise by one")
    payload = {
        "graph6": encode_graph6(result.graph_out),
        "graph": graph_to_json(result.graph_out),
        "clique_partition": result.q_out.to_json(),
        "frozen_partition": result.f_out.to_json(),
        "case_used": result.case_used,
        "c4_preserved": result.c4_preserved,
        "theta_incremented": result.theta_incremented,
    }
    _emit(config, _dump(payload))
    return 0


def _random_proper(g: Graph, ell: int, rng: random.Random) -> BlockPartition:
    """Rejection-sampled proper ell-colouring (retries whole assignments)."""
    for _ in range(10000):
        cols = []
        for v in range(g.n):
            used = {cols[u] for u in g.neighbour_list(v) if u < v}
            free = [c for c in range(ell) if c not in used]
            if not free:
                break
            cols.append(rng.choice(free))
        else:
            return BlockPartition.from_colours(cols, ell)
    raise UsageFailure(f"could not sample a proper {ell}-colouring")


def _run_recolour(config: CommandConfig) -> int:
    g = read_graph(config.params["graph"], config.fmt)
    ell = config.params["ell"]
    sample = config.params.get("sample")
    pairs: list[tuple[BlockPartition, BlockPartition]] = []
    if sample:
        rng = random.Random(config.seed)
        for _ in range(sample):
            pairs.append((_random_proper(g, ell, rng), _random_proper(g, ell, rng)))
    else:
        try:
            beta = BlockPartition.from_colour_line(config.params["start"], ell)
            gamma = BlockPartition.from_colour_line(config.params["target"], ell)
        except ValueError as exc:
            raise UsageFailure(f"bad colour line: {exc}")
        pairs.append((beta, gamma))
    sequences = []
    for beta, gamma in pairs:
        try:
            seq = path_between(g, beta, gamma, ell)
        except ValueError as exc:
            raise UsageFailure(str(exc))
        if config.verify:
            stats = verify_moves(g, seq)
            if not stats.valid or stats.end != gamma:
                raise VerificationFailure("move sequence failed replay verification")
        sequences.append(seq.to_json())
    payload = sequences[0] if len(sequences) == 1 else {"paths": sequences}
    _emit(config, _dump(payload))
    return 0


def _count_lines(lines, counter: list[int]):
    for line in lines:
        counter[0] += 1
        yield line


def _run_search(config: CommandConfig) -> int:
    sides = {}
    for flag in ("two_k2_free", "p5_free", "c4_free"):
        side = config.params.get(flag)
        if side is not None:
            sides[flag] = side
    try:
        spec = PredicateSpec(
            gap=config.params.get("gap", 1),
            max_k=config.params.get("max_k"),
            **sides,
        )
    except ValueError as exc:
        raise UsageFailure(str(exc))
    exhaustive_n = config.params.get("exhaustive")
    if exhaustive_n is not None:
        try:
            report = exhaustive_small(exhaustive_n, spec)
        except ValueError as exc:
            raise UsageFailure(str(exc))
    else:
        stream = config.params.get("stream", "-")
        text = _read_text(stream)
        lines = text.splitlines()
        checkpoint = config.params.get("checkpoint")
        done = 0
        if checkpoint and Path(checkpoint).exists():
            try:
                done = int(Path(checkpoint).read_text().strip() or 0)
            except ValueError:
                raise UsageFailure(f"corrupt checkpoint file {checkpoint}")
        counter = [0]
        report = scan_stream(_count_lines(lines[done:], counter), spec)
        if checkpoint:
            Path(checkpoint).write_text(f"{done + counter[0]}\n")
    _emit(config, _dump(report.to_json()))
    return 0


def _run_regen_fixtures(config: CommandConfig) -> int:
    root = config.params.get("dir", "fixtures")
    written = regenerate_fixtures(root)
    _emit(config, f"wrote {len(written)} fixture files under {root}\n")
    return 0


_HANDLERS = {
    "family": _run_family,
    "check": _run_check,
    "solve": _run_solve,
    "reconfig": _run_reconfig,
    "subdivide": _run_subdivide,
    "recolour": _run_recolour,
    "search": _run_search,
    "regen-fixtures": _run_regen_fixtures,
}


def run(config: CommandConfig) -> int:
    """Dispatch one parsed invocation; returns the process exit code."""
    handler = _HANDLERS.get(config.subcommand)
    if handler is None:
        click.echo(f"error: unknown subcommand {config.subcommand!r}", err=True)
        return 2
    try:
        return handler(config)
    except VerificationFailure as exc:
        click.echo(f"verification failed: {exc}", err=True)
        return 1
    except CapExceeded as exc:
        click.echo(f"cap exceeded: {exc}", err=True)
        return 2
    except UsageFailure as exc:
        click.echo(f"error: {exc}", err=True)
        return 2


# -- click wiring --------------------------------------------------------------


def _common(params: dict, verify: bool, fmt: str, out: str | None,
            cap: int | None = None, seed: int = 0) -> CommandConfig:
    sub = params.pop("_subcommand")
    return CommandConfig(sub, params, verify=verify, fmt=fmt, out=out, cap=cap, seed=seed)


verify_option = click.option(
    "--verify/--no-verify", default=True, show_default=True,
    help="Re-check every emitted certificate.")
format_option = click.option(
    "--format", "fmt", default="auto",
    type=click.Choice(["auto", "graph6", "dimacs", "json"]),
    show_default=True, help="Input/output graph format.")
out_option = click.option("--out", default=None, help="Output path (default stdout).")


@click.group()
@click.version_option(package_name="frozencol")
def main() -> None:
    """Frozen graph colourings: builders, certificates, and searches."""


@main.command()
@click.option("--name", required=True, help="Family name (ME, ME*, KM, KE, B, H, CHAIN).")
@click.option("--q", "-q", "q", required=True, type=int,
              help="Family parameter (q or t).")
@verify_option
@format_option
@out_option
def family(name: str, q: int, verify: bool, fmt: str, out: str | None) -> None:
    """Build a family instance with its certificates."""
    cfg = _common({"_subcommand": "family", "name": name, "q": q}, verify, fmt, out)
    sys.exit(run(cfg))


@main.command()
@click.argument("graph")
@click.argument("partition")
@click.option("--frozen", is_flag=True, help="Require the partition to be frozen.")
@click.option("--clique-partition", "clique_partition", is_flag=True,
              help="Treat blocks as cliques of the graph, not colour classes.")
@click.option("--k", type=int, default=None, help="Block count for colour-line input.")
@format_option
@out_option
def check(graph: str, partition: str, frozen: bool, clique_partition: bool,
          k: int | None, fmt: str, out: str | None) -> None:
    """Check a partition against a graph; exit 0 iff it passes."""
    cfg = _common({"_subcommand": "check", "graph": graph, "partition": partition,
                   "frozen": frozen, "clique_partition": clique_partition, "k": k},
                  True, fmt, out)
    sys.exit(run(cfg))


@main.command()
@click.argument("graph")
@click.option("--invariant", default="all",
              type=click.Choice(["all", "chi", "theta", "alpha", "omega"]),
              show_default=True)
@verify_option
@format_option
@out_option
def solve(graph: str, invariant: str, verify: bool, fmt: str, out: str | None) -> None:
    """Exact invariants with verified witnesses."""
    cfg = _common({"_subcommand": "solve", "graph": graph, "invariant": invariant},
                  verify, fmt, out)
    sys.exit(run(cfg))


@main.command()
@click.argument("graph")
@click.option("--k", required=True, type=int, help="Number of colours.")
@click.option("--dot", default=None, help="Also write the move graph in DOT form.")
@click.option("--cap", type=int, default=None,
              help=f"State cap (default ${ENV_CAP} or {DEFAULT_COLOURING_CAP}).")
@verify_option
@format_option
@out_option
def reconfig(graph: str, k: int, dot: str | None, cap: int | None, verify: bool,
             fmt: str, out: str | None) -> None:
    """Component structure of the recolouring graph on k colours."""
    cfg = _common({"_subcommand": "reconfig", "graph": graph, "k": k, "dot": dot},
                  verify, fmt, out, cap=cap)
    sys.exit(run(cfg))


@main.command()
@click.argument("graph")
@click.option("--x", required=True, type=int)
@click.option("--y", required=True, type=int)
@click.option("--certs", default=None,
              help="JSON file with clique_partition and frozen_partition to transport.")
@click.option("--strict-c4/--no-strict-c4", "strict_c4", default=True, show_default=True,
              help="Refuse diamond-middle case-1 edges that could create a square.")
@click.option("--theta-check", is_flag=True,
              help="Confirm with the exact solver that the cover number rose.")
@verify_option
@format_option
@out_option
def subdivide(graph: str, x: int, y: int, certs: str | None, strict_c4: bool,
              theta_check: bool, verify: bool, fmt: str, out: str | None) -> None:
    """Subdivide edge xy into a path x-u-v-y, transporting certificates."""
    cfg = _common({"_subcommand": "subdivide", "graph": graph, "x": x, "y": y,
                   "certs": certs, "strict_c4": strict_c4, "theta_check": theta_check},
                  verify, fmt, out)
    sys.exit(run(cfg))


@main.command()
@click.argument("graph")
@click.option("--ell", required=True, type=int, help="Number of colours available.")
@click.option("--start", "start", default=None, help="Start colour line, e.g. '0 1 0'.")
@click.option("--target", "target", default=None, help="Target colour line.")
@click.option("--sample", type=int, default=None,
              help="Instead of endpoints, walk this many seeded random pairs.")
@click.option("--seed", type=int, default=0, show_default=True)
@verify_option
@format_option
@out_option
def recolour(graph: str, ell: int, start: str | None, target: str | None,
             sample: int | None, seed: int, verify: bool, fmt: str,
             out: str | None) -> None:
    """Stepwise recolouring between two colourings, replay-verified."""
    if sample is None and (start is None or target is None):
        raise click.UsageError("provide --start and --target, or --sample N")
    cfg = _common({"_subcommand": "recolour", "graph": graph, "ell": ell,
                   "start": start, "target": target, "sample": sample},
                  verify, fmt, out, seed=seed)
    sys.exit(run(cfg))


@main.command()
@click.option("--stream", default=None,
              help="graph6 stream file, or '-' for stdin.")
@click.option("--exhaustive", type=int, default=None,
              help="Scan all labelled graphs up to this order instead of a stream.")
@click.option("--gap", type=int, default=1, show_default=True)
@click.option("--max-k", "max_k", type=int, default=None)
@click.option("--two-k2-free", "two_k2_free", default=None,
              type=click.Choice(["graph", "complement"]))
@click.option("--p5-free", "p5_free", default=None,
              type=click.Choice(["graph", "complement"]))
@click.option("--c4-free", "c4_free", default=None,
              type=click.Choice(["graph", "complement"]))
@click.option("--checkpoint", default=None,
              help="Resumable line-index file for long streams.")
@out_option
def search(stream: str | None, exhaustive: int | None, gap: int, max_k: int | None,
           two_k2_free: str | None, p5_free: str | None, c4_free: str | None,
           checkpoint: str | None, out: str | None) -> None:
    """Scan graphs for frozen colourings above the chromatic number."""
    if stream is None and exhaustive is None:
        stream = "-"
    cfg = _common({"_subcommand": "search", "stream": stream, "exhaustive": exhaustive,
                   "gap": gap, "max_k": max_k, "two_k2_free": two_k2_free,
                   "p5_free": p5_free, "c4_free": c4_free, "checkpoint": checkpoint},
                  True, "auto", out)
    sys.exit(run(cfg))


@main.command("regen-fixtures")
@click.option("--dir", "dir_", default="fixtures", show_default=True,
              help="Directory to write fixture files into.")
@out_option
def regen_fixtures(dir_: str, out: str | None) -> None:
    """Rebuild every drawing and table fixture deterministically."""
    cfg = _common({"_subcommand": "regen-fixtures", "dir": dir_}, True, "auto", out)
    sys.exit(run(cfg))


if __name__ == "__main__":
    main()

"""Search for graphs whose chromatic gap hides a frozen colouring.

A hit is a graph admitting a frozen (chi+gap)-colouring, optionally filtered
by forbidden induced subgraphs on the graph or its complement. Every hit is
re-verified (solver for chi, checker for frozenness) before it is reported,
and reports are deduplicated by graph isomorphism.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .graph import (
    Graph,
    are_isomorphic,
    complement,
    decode_graph6,
    encode_graph6,
    find_induced,
)
from .partitions import BlockPartition, is_frozen_colouring
from .reconfig import find_frozen
from .solvers import chromatic_number

_SIDES = (None, "graph", "complement")
EXHAUSTIVE_MAX = 7


@dataclass(frozen=True)
class PredicateSpec:
    """What to search for: a chromatic gap plus optional freeness filters.

    Each freeness flag is None (off), "graph", or "complement", naming the
    side on which the pattern must be absent. The search probes frozen
    k-colourings for k from chi+gap up to max_k (chi+gap when max_k unset).
    """

    gap: int = 1
    max_k: int | None = None
    two_k2_free: str | None = None
    p5_free: str | None = None
    c4_free: str | None = None

    def __post_init__(self):
        if self.gap < 1:
            raise ValueError("gap must be at least 1")
        if self.max_k is not None and self.max_k < 2:
            raise ValueError("max_k must be at least 2")
        for name in ("two_k2_free", "p5_free", "c4_free"):
            if getattr(self, name) not in _SIDES:
                raise ValueError(f"{name} must be None, 'graph', or 'complement'")

    def filters(self) -> list[tuple[str, str]]:
        """(pattern, side) pairs for the active freeness flags."""
        out = []
        for name, pattern in (
            ("two_k2_free", "2K2"),
            ("p5_free", "P5"),
            ("c4_free", "C4"),
        ):
            side = getattr(self, name)
            if side is not None:
                out.append((pattern, side))
        return out

    def to_json(self) -> dict:
        return {
            "gap": self.gap,
            "max_k": self.max_k,
            "two_k2_free": self.two_k2_free,
            "p5_free": self.p5_free,
            "c4_free": self.c4_free,
        }


@dataclass(frozen=True)
class Hit:
    """A verified find: the graph, its chromatic number, and the witness."""

    graph6: str
    chi: int
    k: int
    colours: str

    def to_json(self) -> dict:
        return {"graph6": self.graph6, "chi": self.chi, "k": self.k, "colours": self.colours}


@dataclass(frozen=True)
class SearchReport:
    """Outcome of a scan: counts, verified hits, and dropped duplicates."""

    graphs_scanned: int
    hits: tuple
    dedup_count: int
    skipped: int
    runtime: float

    def to_json(self, include_runtime: bool = False) -> dict:
        out = {
            "graphs_scanned": self.graphs_scanned,
            "hits": [h.to_json() for h in self.hits],
            "dedup_count": self.dedup_count,
            "skipped": self.skipped,
        }
        if include_runtime:
            out["runtime"] = self.runtime
        return out


def _passes_filters(g: Graph, spec: PredicateSpec) -> bool:
    comp = None
    for pattern, side in spec.filters():
        if side == "graph":
            target = g
        else:
            if comp is None:
                comp = complement(g)
            target = comp
        if find_induced(target, pattern) is not None:
            return False
    return True


def _graph_hits(g: Graph, spec: PredicateSpec) -> list[Hit]:
    chi, _ = chromatic_number(g)
    low = chi + spec.gap
    high = low if spec.max_k is None else spec.max_k
    out = []
    for k in range(low, high + 1):
        if k > g.n:
            break  # a frozen colouring uses all k classes: impossible past n
        witness = find_frozen(g, k)
        if witness is None:
            continue
        # independent re-verification before the hit is admitted
        assert chromatic_number(g)[0] == chi
        assert is_frozen_colouring(g, witness)
        out.append(Hit(encode_graph6(g), chi, k, witness.to_colour_line()))
    return out


def _deduplicate(hits: list[Hit]) -> tuple[list[Hit], int]:
    """Keep one hit per (isomorphism class, k), in (n, graph6, k) order."""
    decoded = [(hit, decode_graph6(hit.graph6)) for hit in hits]
    decoded.sort(key=lambda pair: (pair[1].n, pair[0].graph6, pair[0].k))
    kept: list[Hit] = []
    kept_graphs: list[Graph] = []
    dropped = 0
    for hit, g in decoded:
        duplicate = False
        for other_hit, other_g in zip(kept, kept_graphs):
            if other_hit.k == hit.k and are_isomorphic(g, other_g) is not None:
                duplicate = True
                break
        if duplicate:
            dropped += 1
        else:
            kept.append(hit)
            kept_graphs.append(g)
    return kept, dropped


def scan_stream(lines, spec: PredicateSpec) -> SearchReport:
    """Scan a graph6 stream; malformed lines are counted and skipped."""
    start = time.perf_counter()
    scanned = 0
    skipped = 0
    hits: list[Hit] = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        try:
            g = decode_graph6(line)
        except ValueError:
            skipped += 1
            continue
        scanned += 1
        if _passes_filters(g, spec):
            hits.extend(_graph_hits(g, spec))
    kept, dropped = _deduplicate(hits)
    return SearchReport(scanned, tuple(kept), dropped, skipped, time.perf_counter() - start)


def _all_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        rows = [0] * n
        m = mask
        for u, v in pairs:
            if m & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            m >>= 1
        yield Graph(n, rows)


def exhaustive_small(n_max: int, spec: PredicateSpec) -> SearchReport:
    """Scan every labelled graph on 1..n_max vertices (n_max capped at 7)."""
    if not 1 <= n_max <= EXHAUSTIVE_MAX:
        raise ValueError(f"n_max must be between 1 and {EXHAUSTIVE_MAX}")
    start = time.perf_counter()
    scanned = 0
    hits: list[Hit] = []
    for n in range(1, n_max + 1):
        for g in _all_graphs(n):
            scanned += 1
            if _passes_filters(g, spec):
                hits.extend(_graph_hits(g, spec))
    kept, dropped = _deduplicate(hits)
    return SearchReport(scanned, tuple(kept), dropped, 0, time.perf_counter() - start)


def frozen_gap_finder(g: Graph, max_k: int) -> list[tuple[int, BlockPartition]]:
    """All k in chi+1..max_k admitting a frozen k-colouring, with witnesses."""
    chi, _ = chromatic_number(g)
    out = []
    for k in range(chi + 1, max_k + 1):
        if k > g.n:
            break
        witness = find_frozen(g, k)
        if witness is not None:
            assert is_frozen_colouring(g, witness)
            out.append((k, witness))
    return out

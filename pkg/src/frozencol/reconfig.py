"""Explicit exploration of the recolouring state space R_k(G).

R_k(G) has one vertex per proper k-colouring (ordered blocks, empty blocks
allowed) and an edge between colourings differing on exactly one vertex.
States are colour-per-vertex tuples; components come from union-find over the
implicit move relation, so edges are never stored.
"""

from __future__ import annotations

import warnings
from collections import Counter, deque
from dataclasses import dataclass

from .graph import Graph
from .partitions import BlockPartition, is_frozen_colouring, is_proper_colouring
from .solvers import chromatic_number

DEFAULT_COLOURING_CAP = 2 * 10**7
DEFAULT_UNION_CAP = 10**8
DEFAULT_BFS_CAP = 2000


class CapExceeded(RuntimeError):
    """A state-space walk crossed its configured budget."""


def proper_colour_vectors(g: Graph, k: int, cap: int = DEFAULT_COLOURING_CAP):
    """Yield every proper k-colour vector of g in lexicographic order.

    Iterative backtracking: vertex v only ever checks neighbours below it.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = g.n
    if n == 0:
        yield ()
        return
    if k == 0:
        return
    earlier = [tuple(u for u in g.neighbour_list(v) if u < v) for v in range(n)]
    cols = [0] * n
    nxt = [0] * n
    forb = [0] * n
    count = 0
    v = 0
    fresh = True
    while v >= 0:
        if v == n:
            count += 1
            if count > cap:
                raise CapExceeded(f"more than {cap} proper colourings")
            yield tuple(cols)
            v -= 1
            fresh = False
            continue
        if fresh:
            f = 0
            for u in earlier[v]:
                f |= 1 << cols[u]
            forb[v] = f
            nxt[v] = 0
        c = nxt[v]
        f = forb[v]
        while c < k and f >> c & 1:
            c += 1
        if c < k:
            cols[v] = c
            nxt[v] = c + 1
            v += 1
            fresh = True
        else:
            v -= 1
            fresh = False


def enumerate_colourings(g: Graph, k: int, cap: int = DEFAULT_COLOURING_CAP):
    """Yield every proper k-colouring as a BlockPartition, lexicographically."""
    for vec in proper_colour_vectors(g, k, cap):
        yield BlockPartition.from_colours(vec, k)


def colouring_degree(g: Graph, p: BlockPartition) -> int:
    """Number of neighbours of this colouring in R_k(g), k = p.k."""
    if not is_proper_colouring(g, p):
        raise ValueError("not a proper colouring")
    vec = p.to_colours()
    full = (1 << p.k) - 1
    deg = 0
    for v in range(g.n):
        forb = 0
        for u in g.neighbour_list(v):
            forb |= 1 << vec[u]
        deg += (full & ~forb & ~(1 << vec[v])).bit_count()
    return deg


@dataclass(frozen=True)
class ReconfigReport:
    """Shape of R_k(g): state count, components, isolated states."""

    k: int
    colouring_count: int
    component_count: int
    component_sizes: tuple
    frozen_colourings: tuple
    diameter: object = None
    truncated: bool = False

    def to_json(self) -> dict:
        d = self.diameter
        return {
            "k": self.k,
            "colouring_count": self.colouring_count,
            "component_count": self.component_count,
            "component_sizes": list(self.component_sizes),
            "frozen_colourings": [p.to_json() for p in self.frozen_colourings],
            "diameter": list(d) if isinstance(d, tuple) else d,
            "truncated": self.truncated,
        }


def _move_targets(vec, v, nbrs, full):
    """Colours vertex v can switch to from vec, as a bitmask."""
    forb = 0
    for u in nbrs:
        forb |= 1 << vec[u]
    return full & ~forb & ~(1 << vec[v])


def reconfiguration_components(
    g: Graph,
    k: int,
    colouring_cap: int = DEFAULT_COLOURING_CAP,
    union_cap: int = DEFAULT_UNION_CAP,
    truncate: bool = False,
) -> ReconfigReport:
    """Component structure of R_k(g) by union-find over the move relation.

    Raises CapExceeded when a budget is crossed unless truncate is set, in
    which case a partial report is returned with the truncated flag up.
    """
    n = g.n
    states: dict[tuple, int] = {}
    truncated = False
    try:
        for vec in proper_colour_vectors(g, k, colouring_cap):
            states[vec] = len(states)
    except CapExceeded:
        if not truncate:
            raise
        truncated = True
    order = list(states)
    parent = list(range(len(order)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    nbr_lists = [g.neighbour_list(v) for v in range(n)]
    full = (1 << k) - 1
    unions = 0
    frozen_vecs = []
    for i, vec in enumerate(order):
        isolated = True
        lst = list(vec)
        for v in range(n):
            targets = _move_targets(vec, v, nbr_lists[v], full)
            while targets:
                c = (targets & -targets).bit_length() - 1
                targets &= targets - 1
                isolated = False
                lst[v] = c
                j = states.get(tuple(lst))
                if j is not None:
                    unions += 1
                    if unions > union_cap:
                        if not truncate:
                            raise CapExceeded(f"more than {union_cap} union operations")
                        truncated = True
                        targets = 0
                        break
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[ri] = rj
            lst[v] = vec[v]
        if truncated and unions > union_cap:
            break
        if isolated and len(set(vec)) == k:
            frozen_vecs.append(vec)

    sizes = Counter(find(i) for i in range(len(order)))
    component_sizes = tuple(sorted(sizes.values(), reverse=True))
    frozen = tuple(BlockPartition.from_colours(v_, k) for v_ in frozen_vecs)
    for p in frozen:
        assert is_frozen_colouring(g, p)
    assert sum(component_sizes) == len(order)
    return ReconfigReport(
        k=k,
        colouring_count=len(order),
        component_count=len(sizes),
        component_sizes=component_sizes,
        frozen_colourings=frozen,
        truncated=truncated,
    )


def is_k_mixing(
    g: Graph,
    k: int,
    colouring_cap: int = DEFAULT_COLOURING_CAP,
    union_cap: int = DEFAULT_UNION_CAP,
) -> bool:
    """True iff R_k(g) is connected; vacuously true when it is empty."""
    report = reconfiguration_components(g, k, colouring_cap, union_cap)
    if report.colouring_count == 0:
        warnings.warn(f"no proper {k}-colourings; mixing holds vacuously")
        return True
    return report.component_count == 1


def recolouring_diameter(
    g: Graph,
    k: int,
    colouring_cap: int = DEFAULT_COLOURING_CAP,
    bfs_cap: int = DEFAULT_BFS_CAP,
):
    """Exact diameter of R_k(g) by repeated BFS.

    Returns one integer when R_k is connected, otherwise a tuple of
    per-component diameters ordered by decreasing component size.
    """
    states: dict[tuple, int] = {}
    for vec in proper_colour_vectors(g, k, colouring_cap):
        states[vec] = len(states)
    if not states:
        raise ValueError("no proper colourings")
    order = list(states)
    n = g.n
    nbr_lists = [g.neighbour_list(v) for v in range(n)]
    full = (1 << k) - 1
    adj: list[list[int]] = [[] for _ in order]
    for i, vec in enumerate(order):
        lst = list(vec)
        for v in range(n):
            targets = _move_targets(vec, v, nbr_lists[v], full)
            while targets:
                c = (targets & -targets).bit_length() - 1
                targets &= targets - 1
                lst[v] = c
                adj[i].append(states[tuple(lst)])
            lst[v] = vec[v]

    comp = [-1] * len(order)
    members: list[list[int]] = []
    for s in range(len(order)):
        if comp[s] >= 0:
            continue
        comp[s] = len(members)
        queue = deque([s])
        group = [s]
        while queue:
            i = queue.popleft()
            for j in adj[i]:
                if comp[j] < 0:
                    comp[j] = comp[s]
                    queue.append(j)
                    group.append(j)
        members.append(group)

    diameters = []
    for group in sorted(members, key=lambda grp: (-len(grp), grp[0])):
        if len(group) > bfs_cap:
            raise CapExceeded(f"component of {len(group)} states exceeds bfs cap {bfs_cap}")
        ecc = 0
        for s in group:
            dist = {s: 0}
            queue = deque([s])
            while queue:
                i = queue.popleft()
                for j in adj[i]:
                    if j not in dist:
                        dist[j] = dist[i] + 1
                        queue.append(j)
            ecc = max(ecc, max(dist.values()))
        diameters.append(ecc)
    return diameters[0] if len(diameters) == 1 else tuple(diameters)


def find_frozen(g: Graph, k: int) -> BlockPartition | None:
    """Search for a frozen k-colouring without enumerating R_k.

    Backtracking over vertices in index order, colours in first-appearance
    order. Prunes on properness, on classes that can no longer all be used,
    and on vertices whose remaining unassigned neighbours cannot cover the
    colours still missing around them.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = g.n
    if k == 0:
        return BlockPartition([]) if n == 0 else None
    if n == 0 or k > n:
        return None
    # a frozen vertex sees all other k-1 colours among its neighbours
    if any(g.degree(v) < k - 1 for v in range(n)):
        return None
    full = (1 << k) - 1
    nbrs = [g.neighbour_list(v) for v in range(n)]
    cols = [-1] * n
    seen = [0] * n  # colours among assigned neighbours, as a bitmask
    cnt = [[0] * k for _ in range(n)]  # per-colour assigned-neighbour counts
    pending = [len(nbrs[v]) for v in range(n)]

    def feasible(v: int) -> bool:
        # colours still missing around v must fit in its unassigned neighbours
        missing = full & ~seen[v] & ~(1 << cols[v])
        return missing.bit_count() <= pending[v]

    def rec(v: int, used: int) -> BlockPartition | None:
        if v == n:
            part = BlockPartition.from_colours(cols, k)
            assert is_frozen_colouring(g, part)
            return part
        top = min(k - 1, used)
        for c in range(top + 1):
            if seen[v] >> c & 1:
                continue
            now_used = used + (1 if c == used else 0)
            if k - now_used > n - v - 1:
                continue
            cols[v] = c
            bit = 1 << c
            ok = True
            for u in nbrs[v]:
                pending[u] -= 1
                cnt[u][c] += 1
                seen[u] |= bit
            if not feasible(v):
                ok = False
            else:
                for u in nbrs[v]:
                    if cols[u] >= 0:
                        if not feasible(u):
                            ok = False
                            break
                    elif seen[u] == full:
                        ok = False
                        break
            if ok:
                found = rec(v + 1, now_used)
                if found is not None:
                    return found
            for u in nbrs[v]:
                pending[u] += 1
                cnt[u][c] -= 1
                if cnt[u][c] == 0:
                    seen[u] &= ~bit
            cols[v] = -1
        return None

    return rec(0, 0)


def recolourable_up_to(
    g: Graph,
    k_max: int,
    colouring_cap: int = DEFAULT_COLOURING_CAP,
    union_cap: int = DEFAULT_UNION_CAP,
) -> list[tuple[int, bool | None]]:
    """Mixing verdicts for k from chi(g)+1 up to k_max.

    A bounded probe only: a row (k, True) means R_k(g) is connected, and a
    None verdict means the cap was exceeded at that k. No claim is made
    beyond k_max.
    """
    chi, _ = chromatic_number(g)
    out: list[tuple[int, bool | None]] = []
    for k in range(chi + 1, k_max + 1):
        try:
            out.append((k, is_k_mixing(g, k, colouring_cap, union_cap)))
        except CapExceeded:
            out.append((k, None))
    return out


def reconfiguration_dot(g: Graph, k: int, cap: int = 10**4) -> str:
    """Render R_k(g) in DOT, nodes labelled by their colour vectors."""
    states: dict[tuple, int] = {}
    for vec in proper_colour_vectors(g, k, cap):
        states[vec] = len(states)
    order = list(states)
    n = g.n
    nbr_lists = [g.neighbour_list(v) for v in range(n)]
    full = (1 << k) - 1
    lines = ["graph reconfig {"]
    for i, vec in enumerate(order):
        label = " ".join(map(str, vec)) if vec else "()"
        lines.append(f'  s{i} [label="{label}"];')
    for i, vec in enumerate(order):
        lst = list(vec)
        for v in range(n):
            targets = _move_targets(vec, v, nbr_lists[v], full)
            while targets:
                c = (targets & -targets).bit_length() - 1
                targets &= targets - 1
                lst[v] = c
                j = states[tuple(lst)]
                if i < j:
                    lines.append(f"  s{i} -- s{j};")
            lst[v] = vec[v]
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Brute-force ground truth for tiny graphs and the chi >= 3 / c(f) = 3
cross-check for the constructed joins."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .constructions import label_join
from .errors import InvalidParameter
from .graph import Graph, chromatic_number
from .labeling import EdgeLabeling, is_local_antimagic

EXACT = "exact"
NO_LABELING = "no-labeling-exists"
ABORTED = "aborted-at-limit"

DEFAULT_EDGE_LIMIT = 12


@dataclass
class SearchReport:
    order: int
    size: int
    status: str
    chi_la: int | None = None
    witness: list[int] | None = None
    lower_bound: int | None = None
    nodes: int = 0
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "size": self.size,
            "status": self.status,
            "chi_la": self.chi_la,
            "witness": self.witness,
            "lower_bound": self.lower_bound,
            "nodes": self.nodes,
            "elapsed": round(self.elapsed, 6),
            "notes": self.notes,
        }


class _Search:
    def __init__(self, graph: Graph):
        self.graph = graph
        pos = {v: k for k, v in enumerate(graph.vertices)}
        self.adj = [[pos[w] for w in graph.neighbors(v)] for v in graph.vertices]
        deg = [len(a) for a in self.adj]
        ends = [(pos[a], pos[b]) for a, b in graph.edges]
        # label edges with high endpoint degree first
        self.order = sorted(range(len(ends)), key=lambda e: (-(deg[ends[e][0]] + deg[ends[e][1]]), e))
        self.ends = ends
        self.q = len(ends)
        self.remaining = deg[:]
        self.partial = [0] * len(deg)
        self.final = [False] * len(deg)
        self.assign = [0] * self.q
        self.free = [True] * (self.q + 1)
        self.nodes = 0

    def _finalise_ok(self, v: int) -> bool:
        c = self.partial[v]
        return all(not self.final[w] or self.partial[w] != c for w in self.adj[v])

    def run(self, stop_first: bool, floor: int):
        best = [None, None]

        def rec(depth: int) -> bool:
            self.nodes += 1
            if depth == self.q:
                count = len(set(self.partial))
                if best[0] is None or count < best[0]:
                    best[0], best[1] = count, self.assign[:]
                return stop_first or best[0] <= floor
            e = self.order[depth]
            a, b = self.ends[e]
            for val in range(1, self.q + 1):
                if not self.free[val]:
                    continue
                self.free[val] = False
                self.assign[e] = val
                self.partial[a] += val
                self.partial[b] += val
                self.remaining[a] -= 1
                self.remaining[b] -= 1
                ok = True
                closed = []
                for v in (a, b):
                    if self.remaining[v] == 0:
                        self.final[v] = True
                        closed.append(v)
                for v in closed:
                    if not self._finalise_ok(v):
                        ok = False
                done = ok and rec(depth + 1)
                for v in closed:
                    self.final[v] = False
                self.remaining[a] += 1
                self.remaining[b] += 1
                self.partial[a] -= val
                self.partial[b] -= val
                self.free[val] = True
                if done:
                    return True
            return False

        # isolated vertices are final from the start
        for v, r in enumerate(self.remaining):
            if r == 0:
                self.final[v] = True
        rec(0)
        return best[0], best[1]


def _check_limit(graph: Graph, edge_limit: int) -> None:
    if edge_limit < 0:
        raise InvalidParameter("edge_limit must be non-negative")


def brute_force_chi_la(
    graph: Graph,
    edge_limit: int = DEFAULT_EDGE_LIMIT,
    force: bool = False,
    stop_at_lower_bound: bool = False,
) -> SearchReport:
    """Exact local antimagic chromatic number by exhaustive labelling search.

    The search visits every bijection that survives the adjacent-colour
    pruning and keeps the minimum colour count.  With ``stop_at_lower_bound``
    it returns as soon as that minimum reaches the chromatic number, which no
    labelling can beat.
    """
    _check_limit(graph, edge_limit)
    start = time.perf_counter()
    report = SearchReport(graph.order, graph.size, ABORTED)
    if graph.order <= 64:
        report.lower_bound = chromatic_number(graph)
    if graph.size > edge_limit and not force:
        report.notes.append(f"size {graph.size} exceeds edge limit {edge_limit}; pass force to search anyway")
        report.elapsed = time.perf_counter() - start
        return report
    search = _Search(graph)
    floor = report.lower_bound if stop_at_lower_bound and report.lower_bound is not None else 0
    count, assign = search.run(stop_first=False, floor=floor)
    report.nodes = search.nodes
    if count is None:
        report.status = NO_LABELING
    else:
        report.status = EXACT
        report.chi_la = count
        report.witness = assign
    report.elapsed = time.perf_counter() - start
    return report


def exists_local_antimagic(graph: Graph, edge_limit: int = DEFAULT_EDGE_LIMIT, force: bool = False) -> bool | None:
    """Whether some bijection is local antimagic; ``None`` if over the limit."""
    _check_limit(graph, edge_limit)
    if graph.size > edge_limit and not force:
        return None
    count, _ = _Search(graph).run(stop_first=True, floor=0)
    return count is not None


def witness_labeling(graph: Graph, report: SearchReport) -> EdgeLabeling | None:
    if report.witness is None:
        return None
    return EdgeLabeling(graph, report.witness)


def cross_validate(n: int, k: int, parity: str) -> dict:
    """chi(join) = 3 together with a verified 3-colouring pins chi_la = 3."""
    graph, labeling, triple = label_join(n, k, parity)
    verdict = is_local_antimagic(labeling)
    chi = chromatic_number(graph)
    problems = []
    if chi != 3:
        problems.append(f"lower-bound side: chromatic number is {chi}, expected 3")
    if not verdict:
        a, b = verdict.witness
        problems.append(f"construction side: edge {a}-{b} joins equal colours")
    elif verdict.coloring.distinct_count != 3:
        problems.append(f"construction side: {verdict.coloring.distinct_count} colours, expected 3")
    return {
        "parity": parity,
        "n": n,
        "k": k,
        "order": graph.order,
        "size": graph.size,
        "chromatic_number": chi,
        "colors": list(triple),
        "color_count": verdict.coloring.distinct_count,
        "local_antimagic": verdict.ok,
        "chi_la": 3 if not problems else None,
        "ok": not problems,
        "discrepancies": problems,
    }

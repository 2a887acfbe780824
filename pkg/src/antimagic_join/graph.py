"""Graph model with structural vertex tags, the constructors used to build
``aP2 v O_m`` style joins, vertex merging and an exact chromatic number."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InvalidInput, InvalidParameter, MergeConflict, SizeLimitExceeded


class Kind(enum.IntEnum):
    U = 0
    V = 1
    XFLAT = 2
    XCOPY = 3
    MERGED = 4


_KIND_NAMES = {
    Kind.U: "U",
    Kind.V: "V",
    Kind.XFLAT: "Xflat",
    Kind.XCOPY: "Xcopy",
    Kind.MERGED: "Merged",
}
_KIND_BY_NAME = {name: kind for kind, name in _KIND_NAMES.items()}


@dataclass(frozen=True, order=True)
class VertexTag:
    """Structural name of a vertex.

    ``U``/``V`` use ``i``; ``XFLAT`` uses ``j``; ``XCOPY`` uses both;
    ``MERGED`` carries the sorted ``(i, j)`` pairs it was formed from.
    """

    kind: Kind
    i: int = 0
    j: int = 0
    members: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        kind = self.kind
        if kind in (Kind.U, Kind.V):
            ok = self.i >= 1 and self.j == 0 and not self.members
        elif kind is Kind.XFLAT:
            ok = self.j >= 1 and self.i == 0 and not self.members
        elif kind is Kind.XCOPY:
            ok = self.i >= 1 and self.j >= 1 and not self.members
        else:
            ok = (
                self.i == 0
                and self.j == 0
                and len(self.members) > 0
                and list(self.members) == sorted(set(self.members))
            )
        if not ok:
            raise InvalidInput(f"malformed vertex tag {self!r}")

    @classmethod
    def u(cls, i: int) -> VertexTag:
        return cls(Kind.U, i=i)

    @classmethod
    def v(cls, i: int) -> VertexTag:
        return cls(Kind.V, i=i)

    @classmethod
    def xflat(cls, j: int) -> VertexTag:
        return cls(Kind.XFLAT, j=j)

    @classmethod
    def xcopy(cls, i: int, j: int) -> VertexTag:
        return cls(Kind.XCOPY, i=i, j=j)

    @classmethod
    def merged(cls, members: Iterable[tuple[int, int]]) -> VertexTag:
        return cls(Kind.MERGED, members=tuple(sorted(set(map(tuple, members)))))

    @property
    def is_x(self) -> bool:
        return self.kind >= Kind.XFLAT

    def __str__(self):
        if self.kind is Kind.U:
            return f"u{self.i}"
        if self.kind is Kind.V:
            return f"v{self.i}"
        if self.kind is Kind.XFLAT:
            return f"x{self.j}"
        if self.kind is Kind.XCOPY:
            return f"x{self.i},{self.j}"
        return "x{" + ";".join(f"{i},{j}" for i, j in self.members) + "}"

    def to_json(self) -> dict:
        out: dict = {"kind": _KIND_NAMES[self.kind]}
        if self.kind in (Kind.U, Kind.V, Kind.XCOPY):
            out["i"] = self.i
        if self.kind in (Kind.XFLAT, Kind.XCOPY):
            out["j"] = self.j
        if self.kind is Kind.MERGED:
            out["members"] = [list(m) for m in self.members]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> VertexTag:
        try:
            kind = _KIND_BY_NAME[obj["kind"]]
        except (KeyError, TypeError):
            raise InvalidInput(f"bad vertex record {obj!r}") from None
        if kind is Kind.MERGED:
            members = obj.get("members") or []
            return cls.merged((int(i), int(j)) for i, j in members)
        return cls(kind, i=int(obj.get("i", 0)), j=int(obj.get("j", 0)))


Edge = tuple[VertexTag, VertexTag]


def edge_key(a: VertexTag, b: VertexTag) -> Edge:
    return (a, b) if a < b else (b, a)


class Graph:
    """Immutable simple undirected graph over :class:`VertexTag` vertices.

    Vertices and edges are stored in sorted order, so ``graph.edges[k]`` is a
    stable edge index usable by labelings and files.
    """

    __slots__ = ("_vertices", "_edges", "_edge_set", "_adj", "_edge_index")

    def __init__(self, vertices: Iterable[VertexTag], edges: Iterable[tuple[VertexTag, VertexTag]] = ()):
        vs = tuple(sorted(vertices))
        vset = frozenset(vs)
        if len(vset) != len(vs):
            raise InvalidInput("duplicate vertex tag")
        seen: set[Edge] = set()
        adj: dict[VertexTag, set[VertexTag]] = {v: set() for v in vs}
        for a, b in edges:
            if a == b:
                raise InvalidInput(f"self-loop at {a}")
            if a not in vset or b not in vset:
                raise InvalidInput(f"edge {a}-{b} has an undeclared endpoint")
            e = edge_key(a, b)
            if e in seen:
                raise InvalidInput(f"duplicate edge {a}-{b}")
            seen.add(e)
            adj[a].add(b)
            adj[b].add(a)
        self._vertices = vs
        self._edges = tuple(sorted(seen))
        self._edge_set = frozenset(seen)
        self._adj = {v: frozenset(n) for v, n in adj.items()}
        self._edge_index = {e: k for k, e in enumerate(self._edges)}

    @property
    def vertices(self) -> tuple[VertexTag, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def order(self) -> int:
        return len(self._vertices)

    @property
    def size(self) -> int:
        return len(self._edges)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[VertexTag]:
        return iter(self._vertices)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edge_set == other._edge_set

    def __hash__(self):
        return hash((self._vertices, self._edge_set))

    def __repr__(self):
        return f"Graph(order={self.order}, size={self.size})"

    def neighbors(self, v: VertexTag) -> frozenset[VertexTag]:
        return self._adj[v]

    def degree(self, v: VertexTag) -> int:
        return len(self._adj[v])

    def has_edge(self, a: VertexTag, b: VertexTag) -> bool:
        return edge_key(a, b) in self._edge_set

    def edge_index(self, e: Edge) -> int:
        return self._edge_index[edge_key(*e)]

    def incident_edges(self, v: VertexTag) -> list[Edge]:
        return [edge_key(v, w) for w in self._adj[v]]

    def degree_sequence(self) -> list[int]:
        return sorted((len(n) for n in self._adj.values()), reverse=True)

    def regular_degree(self) -> int | None:
        """Common degree if the graph is regular, else ``None``."""
        degrees = {len(n) for n in self._adj.values()}
        return degrees.pop() if len(degrees) == 1 else None

    def components(self) -> list[frozenset[VertexTag]]:
        seen: set[VertexTag] = set()
        out = []
        for start in self._vertices:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                for w in self._adj[stack.pop()]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def is_connected(self) -> bool:
        return self.order > 0 and len(self.components()) == 1


def make_null(m: int) -> Graph:
    """Edgeless graph ``O_m`` on ``x_1..x_m``."""
    if m < 1:
        raise InvalidParameter(f"null graph needs m >= 1, got {m}")
    return Graph(VertexTag.xflat(j) for j in range(1, m + 1))


def make_matching(a: int) -> Graph:
    """``aP_2``: edges ``u_i v_i`` for ``i = 1..a``."""
    if a < 1:
        raise InvalidParameter(f"matching needs a >= 1, got {a}")
    us = [VertexTag.u(i) for i in range(1, a + 1)]
    vs = [VertexTag.v(i) for i in range(1, a + 1)]
    return Graph(us + vs, zip(us, vs))


def join(g: Graph, h: Graph) -> Graph:
    if set(g.vertices) & set(h.vertices):
        raise InvalidInput("join operands share vertex tags")
    cross = [(a, b) for a in g.vertices for b in h.vertices]
    return Graph(g.vertices + h.vertices, list(g.edges) + list(h.edges) + cross)


def disjoint_copies(a: int, g: Graph) -> Graph:
    """``a`` vertex-disjoint copies of ``g``.

    The copy number goes into the ``i`` coordinate: copy ``c`` shifts the
    ``i`` of U/V/Xcopy/Merged tags by ``(c - 1)`` times the largest ``i`` of
    that family in ``g``, and ``x_j`` becomes ``x_{c,j}``.
    """
    if a < 1:
        raise InvalidParameter(f"need at least one copy, got {a}")
    uv_span = max((t.i for t in g.vertices if t.kind in (Kind.U, Kind.V)), default=0)
    x_span = max(
        [t.i for t in g.vertices if t.kind is Kind.XCOPY]
        + [i for t in g.vertices if t.kind is Kind.MERGED for i, _ in t.members],
        default=0,
    )

    def shift(t: VertexTag, c: int) -> VertexTag:
        if t.kind in (Kind.U, Kind.V):
            return VertexTag(t.kind, i=t.i + (c - 1) * uv_span)
        if t.kind is Kind.XFLAT:
            return VertexTag.xcopy(c, t.j)
        if t.kind is Kind.XCOPY:
            return VertexTag.xcopy(t.i + (c - 1) * x_span, t.j)
        return VertexTag.merged((i + (c - 1) * x_span, j) for i, j in t.members)

    vertices = []
    edges = []
    for c in range(1, a + 1):
        vertices.extend(shift(t, c) for t in g.vertices)
        edges.extend((shift(p, c), shift(q, c)) for p, q in g.edges)
    return Graph(vertices, edges)


def _member_pairs(t: VertexTag) -> tuple[tuple[int, int], ...]:
    if t.kind is Kind.XCOPY:
        return ((t.i, t.j),)
    if t.kind is Kind.MERGED:
        return t.members
    raise MergeConflict(f"only x-vertices can be merged, got {t}")


def merge_vertices(g: Graph, groups: Iterable[Iterable[VertexTag]]) -> Graph:
    """Collapse each group of pairwise non-adjacent x-vertices into one
    ``MERGED`` vertex that inherits every incident edge."""
    groups = [list(grp) for grp in groups]
    target: dict[VertexTag, VertexTag] = {}
    for grp in groups:
        if not grp:
            raise MergeConflict("empty merge group")
        for t in grp:
            if t not in g:
                raise MergeConflict(f"{t} is not a vertex of the graph")
            if t in target:
                raise MergeConflict(f"{t} appears in more than one group")
        for a_idx, a in enumerate(grp):
            for b in grp[a_idx + 1:]:
                if g.has_edge(a, b):
                    raise MergeConflict(f"group members {a} and {b} are adjacent")
        merged = VertexTag.merged(p for t in grp for p in _member_pairs(t))
        for t in grp:
            target[t] = merged

    new_vertices = [target.get(t, t) for t in g.vertices]
    if len(set(new_vertices)) != len(set(target.values())) + g.order - len(target):
        raise MergeConflict("merged tag collides with an existing vertex")
    new_edges = set()
    for a, b in g.edges:
        e = edge_key(target.get(a, a), target.get(b, b))
        if e in new_edges:
            raise MergeConflict(f"merging creates a duplicate edge {e[0]}-{e[1]}")
        new_edges.add(e)
    return Graph(set(new_vertices), new_edges)


def _index_adjacency(g: Graph) -> list[list[int]]:
    pos = {v: k for k, v in enumerate(g.vertices)}
    return [sorted(pos[w] for w in g.neighbors(v)) for v in g.vertices]


def _greedy_clique(adj: list[list[int]]) -> int:
    best = 1 if adj else 0
    nbr = [set(a) for a in adj]
    for v in range(len(adj)):
        clique = [v]
        cands = sorted(adj[v], key=lambda w: -len(adj[w]))
        for w in cands:
            if all(w in nbr[c] for c in clique):
                clique.append(w)
        best = max(best, len(clique))
    return best


def _dsatur_greedy(adj: list[list[int]]) -> int:
    n = len(adj)
    color = [-1] * n
    sat: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = max((u for u in range(n) if color[u] < 0), key=lambda u: (len(sat[u]), len(adj[u]), -u))
        c = 0
        while c in sat[v]:
            c += 1
        color[v] = c
        for w in adj[v]:
            sat[w].add(c)
    return max(color) + 1 if n else 0


def _k_colorable(adj: list[list[int]], k: int) -> bool:
    n = len(adj)
    color = [-1] * n
    # per-vertex count of neighbours holding each colour
    counts = [[0] * k for _ in range(n)]

    def pick() -> int:
        best, key = -1, None
        for u in range(n):
            if color[u] < 0:
                s = sum(1 for c in counts[u] if c)
                kk = (s, len(adj[u]))
                if key is None or kk > key:
                    best, key = u, kk
        return best

    def rec(done: int, used: int) -> bool:
        if done == n:
            return True
        v = pick()
        for c in range(min(used + 1, k)):
            if counts[v][c]:
                continue
            color[v] = c
            for w in adj[v]:
                counts[w][c] += 1
            if rec(done + 1, max(used, c + 1)):
                return True
            for w in adj[v]:
                counts[w][c] -= 1
            color[v] = -1
        return False

    return rec(0, 0)


def is_k_colorable(g: Graph, k: int) -> bool:
    if k < 0:
        raise InvalidParameter("k must be non-negative")
    if g.order == 0:
        return True
    if k == 0:
        return False
    return _k_colorable(_index_adjacency(g), k)


def chromatic_number(g: Graph, max_order: int = 64) -> int:
    """Exact chromatic number by DSatur-ordered backtracking, bracketed by a
    greedy clique (lower) and a DSatur colouring (upper)."""
    if g.order > max_order:
        raise SizeLimitExceeded("graph order", max_order, g.order)
    if g.order == 0:
        return 0
    adj = _index_adjacency(g)
    lower = _greedy_clique(adj)
    upper = _dsatur_greedy(adj)
    for k in range(lower, upper):
        if _k_colorable(adj, k):
            return k
    return upper

"""Label matrices for ``(2k+1)(P2 v O_m)`` and the merged joins
``(2k+1)P2 v O_m`` they induce.

A label matrix has one column per copy ``i = 1..2k+1`` and one row per edge
role: ``u_i x_{i,1..m}``, then ``u_i v_i``, then ``v_i x_{i,1..m}``.  With
``m = 2n`` the matrix has ``4n+1`` rows, with ``m = 2n+1`` it has ``4n+3``.
Every row is an arithmetic progression in ``i``; for the even case the
progression restarts at column ``k+2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import InternalConsistencyError, InvalidParameter
from .graph import (
    Graph,
    Kind,
    VertexTag,
    disjoint_copies,
    edge_key,
    join,
    make_matching,
    make_null,
    merge_vertices,
)
from .labeling import EdgeLabeling, induced_colors

EVEN = "even"
ODD = "odd"
PARITIES = (EVEN, ODD)


class RowRole(NamedTuple):
    kind: str  # "ux", "uv" or "vx"
    j: int = 0

    def __str__(self):
        if self.kind == "uv":
            return "f(u_i v_i)"
        end = "u" if self.kind == "ux" else "v"
        return f"f({end}_i x_i,{self.j})"


class ColorTriple(NamedTuple):
    x_color: int
    u_color: int
    v_color: int

    @property
    def distinct(self) -> bool:
        return len(set(self)) == 3


@dataclass(frozen=True)
class LabelMatrix:
    parity: str
    n: int
    k: int
    roles: tuple[RowRole, ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        """Number of null-graph vertices per copy."""
        return 2 * self.n if self.parity == EVEN else 2 * self.n + 1

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), 2 * self.k + 1

    @property
    def q(self) -> int:
        r, c = self.shape
        return r * c

    def row(self, kind: str, j: int = 0) -> tuple[int, ...]:
        return self.rows[self.roles.index(RowRole(kind, j))]

    def entries(self) -> list[int]:
        return [x for row in self.rows for x in row]

    def is_bijective(self) -> bool:
        return sorted(self.entries()) == list(range(1, self.q + 1))

    def column_sums(self) -> tuple[list[int], list[int]]:
        """Per-column sums of the first ``m+1`` rows (the ``u_i`` edges) and
        of the last ``m+1`` rows (the ``v_i`` edges)."""
        head = self.rows[: self.m + 1]
        tail = self.rows[self.m:]
        return [sum(c) for c in zip(*head)], [sum(c) for c in zip(*tail)]


def _check_nk(n: int, k: int) -> None:
    if n < 1 or k < 1:
        raise InvalidParameter(f"n and k must be >= 1, got n={n}, k={k}")


def _split_row(k: int, first_a: int, step_a: int, first_b: int, step_b: int) -> tuple[int, ...]:
    # columns 1..k+1 start at first_a, columns k+2..2k+1 at first_b
    left = [first_a + step_a * t for t in range(k + 1)]
    right = [first_b + step_b * t for t in range(k)]
    return tuple(left + right)


def _even_row_params(n: int, k: int, role: RowRole) -> tuple[int, int, int, int]:
    c = 8 * k + 4
    kind, p = role
    if kind == "uv":
        return 1, 1, k + 2, 1
    if kind == "ux":
        if p == 2 * n - 1:
            return 10 * k + 5, -2, 10 * k + 4, -2
        if p == 2 * n:
            return 5 * k + 3, 1, 4 * k + 3, 1
        if p % 2:
            j = (2 * n + 1 - p) // 2
            return k + 1 + j * c, -1, 2 * k + 1 + j * c, -1
        j = (2 * n + 2 - p) // 2
        return -3 * k - 1 + j * c, 1, -4 * k - 1 + j * c, 1
    if p == 1:
        return 3 * k + 2, 1, 2 * k + 2, 1
    if p == 2:
        return 8 * k + 4, -2, 8 * k + 3, -2
    if p % 2:
        j = (p + 1) // 2
        return -5 * k - 2 + j * c, 1, -6 * k - 2 + j * c, 1
    j = p // 2
    return -k + j * c, -1, j * c, -1


def _odd_row_params(n: int, k: int, role: RowRole) -> tuple[int, int]:
    c = 4 * k + 2
    kind, p = role
    if kind == "uv":
        return 1, 1
    if kind == "ux":
        if p == 2 * n + 1:
            return 2 * k + 1 + (n + 1) * c, -1
        if p % 2:
            j = (2 * n + 1 - p) // 2
            return 6 * k + 3 + (n + j) * c, -1
        j = (2 * n + 2 - p) // 2
        return 2 * k + 2 + (n + j) * c, 1
    if p == 1:
        return 4 * k + 2, -1
    if p % 2 == 0:
        return 2 * k + 1 + (p // 2) * c, -1
    return 2 * k + 2 + (p // 2) * c, 1


def _roles(m: int) -> tuple[RowRole, ...]:
    return (
        tuple(RowRole("ux", j) for j in range(1, m + 1))
        + (RowRole("uv"),)
        + tuple(RowRole("vx", j) for j in range(1, m + 1))
    )


def even_matrix(n: int, k: int) -> LabelMatrix:
    """The ``(4n+1) x (2k+1)`` matrix labelling ``(2k+1)(P2 v O_2n)``.

    For ``n = 1`` only the five fixed rows remain (``x_{2n-1} = x_1``,
    ``x_{2n} = x_2``).
    """
    _check_nk(n, k)
    roles = _roles(2 * n)
    rows = tuple(_split_row(k, *_even_row_params(n, k, r)) for r in roles)
    mat = LabelMatrix(EVEN, n, k, roles, rows)
    if not mat.is_bijective():
        raise InternalConsistencyError(f"even matrix n={n} k={k} is not a bijection")
    return mat


def odd_matrix(n: int, k: int) -> LabelMatrix:
    """The ``(4n+3) x (2k+1)`` matrix labelling ``(2k+1)(P2 v O_{2n+1})``."""
    _check_nk(n, k)
    roles = _roles(2 * n + 1)
    rows = []
    for r in roles:
        first, step = _odd_row_params(n, k, r)
        rows.append(tuple(first + step * t for t in range(2 * k + 1)))
    mat = LabelMatrix(ODD, n, k, roles, tuple(rows))
    if not mat.is_bijective():
        raise InternalConsistencyError(f"odd matrix n={n} k={k} is not a bijection")
    return mat


def label_matrix(n: int, k: int, parity: str) -> LabelMatrix:
    if parity == EVEN:
        return even_matrix(n, k)
    if parity == ODD:
        return odd_matrix(n, k)
    raise InvalidParameter(f"parity must be 'even' or 'odd', got {parity!r}")


def copies_graph(m: int, copies: int) -> Graph:
    """``copies`` disjoint copies of ``P2 v O_m`` with tags ``u_i, v_i, x_{i,j}``."""
    return disjoint_copies(copies, join(make_matching(1), make_null(m)))


def apply_matrix(mat: LabelMatrix) -> tuple[Graph, EdgeLabeling]:
    """Label ``(2k+1)(P2 v O_m)``: column ``i`` of the row with role ``ux j``
    labels ``u_i x_{i,j}``, and so on."""
    graph = copies_graph(mat.m, 2 * mat.k + 1)
    labels = {}
    for role, row in zip(mat.roles, mat.rows):
        for i, val in enumerate(row, start=1):
            u, v = VertexTag.u(i), VertexTag.v(i)
            if role.kind == "uv":
                e = edge_key(u, v)
            else:
                e = edge_key(u if role.kind == "ux" else v, VertexTag.xcopy(i, role.j))
            if not graph.has_edge(*e) or e in labels:
                raise InternalConsistencyError(f"row role {role} does not match the graph")
            labels[e] = val
    if len(labels) != graph.size:
        raise InternalConsistencyError("matrix does not cover every edge")
    return graph, EdgeLabeling(graph, labels)


def merge_labeled(
    graph: Graph, labeling: EdgeLabeling, groups: Iterable[Iterable[VertexTag]]
) -> tuple[Graph, EdgeLabeling]:
    """:func:`merge_vertices` that carries edge labels over to the merged graph."""
    groups = [list(g) for g in groups]
    merged = merge_vertices(graph, groups)
    target = {}
    for grp in groups:
        tag = VertexTag.merged(
            p for t in grp for p in (t.members if t.kind is Kind.MERGED else ((t.i, t.j),))
        )
        for t in grp:
            target[t] = tag
    labels = {
        edge_key(target.get(a, a), target.get(b, b)): val for (a, b), val in labeling.items()
    }
    return merged, EdgeLabeling(merged, labels)


def column_groups(m: int, copies: int) -> list[list[VertexTag]]:
    """For each ``j``, the group ``{x_{i,j} : i}`` merged into ``x_j``."""
    return [[VertexTag.xcopy(i, j) for i in range(1, copies + 1)] for j in range(1, m + 1)]


def role_colors(graph: Graph, colors: dict[VertexTag, int]) -> ColorTriple:
    """Collapse per-vertex colours to the (x, u, v) triple; each role must be
    uniformly coloured."""
    by_role: dict[str, set[int]] = {"x": set(), "u": set(), "v": set()}
    for v in graph.vertices:
        key = "u" if v.kind is Kind.U else "v" if v.kind is Kind.V else "x"
        by_role[key].add(colors[v])
    for key, vals in by_role.items():
        if len(vals) != 1:
            raise InternalConsistencyError(f"{key}-vertices carry several colours {sorted(vals)}")
    return ColorTriple(by_role["x"].pop(), by_role["u"].pop(), by_role["v"].pop())


def label_join(n: int, k: int, parity: str) -> tuple[Graph, EdgeLabeling, ColorTriple]:
    """Labelled ``(2k+1)P2 v O_m`` (``m = 2n`` or ``2n+1``) and its colours."""
    mat = label_matrix(n, k, parity)
    graph, labeling = apply_matrix(mat)
    graph, labeling = merge_labeled(graph, labeling, column_groups(mat.m, 2 * k + 1))
    return graph, labeling, role_colors(graph, induced_colors(labeling).color)


def predicted_colors(n: int, k: int, parity: str) -> ColorTriple:
    _check_nk(n, k)
    if parity == EVEN:
        return ColorTriple(
            (2 * k + 1) * ((4 * k + 3) + n * (8 * k + 4)),
            8 * n * n * k + 6 * n * k + 4 * n * n + 4 * n + k + 1,
            8 * n * n * k + 2 * n * k + 4 * n * n + 2 * n + k + 1,
        )
    if parity == ODD:
        return ColorTriple(
            (2 * k + 1) * ((8 * k + 5) + 2 * n * (4 * k + 2)),
            12 * n * n * k + 16 * n * k + 6 * n * n + 9 * n + 6 * k + 4,
            4 * n * n * k + 8 * n * k + 2 * n * n + 5 * n + 4 * k + 3,
        )
    raise InvalidParameter(f"parity must be 'even' or 'odd', got {parity!r}")


def pair_sum_constant(n: int, k: int, parity: str) -> int:
    """Common value of ``f(u_i x_{i,j}) + f(v_i x_{i,j})`` on the constant
    columns; also the mean of every pair-sum sequence."""
    if parity == EVEN:
        return (4 * k + 3) + n * (8 * k + 4)
    if parity == ODD:
        return (8 * k + 5) + 2 * n * (4 * k + 2)
    raise InvalidParameter(f"parity must be 'even' or 'odd', got {parity!r}")


def s_sequence(n: int, k: int, parity: str, j: int, mat: LabelMatrix | None = None) -> list[int]:
    """Pair sums ``f(u_i x_{i,j}) + f(v_i x_{i,j})`` for ``i = 1..2k+1``."""
    mat = mat or label_matrix(n, k, parity)
    if not 1 <= j <= mat.m:
        raise InvalidParameter(f"j must lie in [1, {mat.m}], got {j}")
    return [a + b for a, b in zip(mat.row("ux", j), mat.row("vx", j))]

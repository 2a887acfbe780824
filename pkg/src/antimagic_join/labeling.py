"""Edge labelings, induced vertex colours and the local antimagic verifier."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .errors import InvalidLabeling
from .graph import Edge, Graph, VertexTag, edge_key


class EdgeLabeling:
    """Bijection from the edges of ``graph`` onto ``1..q``.

    ``labels`` is either a mapping edge -> value or a sequence aligned with
    ``graph.edges``.
    """

    __slots__ = ("graph", "_values")

    def __init__(self, graph: Graph, labels: Mapping[Edge, int] | Sequence[int]):
        self.graph = graph
        if isinstance(labels, Mapping):
            values = [None] * graph.size
            for e, val in labels.items():
                try:
                    k = graph.edge_index(edge_key(*e))
                except KeyError:
                    raise InvalidLabeling(f"label given for non-edge {e[0]}-{e[1]}") from None
                values[k] = val
            missing = [graph.edges[k] for k, val in enumerate(values) if val is None]
            if missing:
                a, b = missing[0]
                raise InvalidLabeling(f"{len(missing)} edge(s) unlabeled, e.g. {a}-{b}")
        else:
            values = list(labels)
            if len(values) != graph.size:
                raise InvalidLabeling(f"expected {graph.size} labels, got {len(values)}")
        _check_bijection(values, graph.size)
        self._values = tuple(values)

    @property
    def values(self) -> tuple[int, ...]:
        """Labels in ``graph.edges`` order."""
        return self._values

    @property
    def q(self) -> int:
        return len(self._values)

    def __getitem__(self, e: Edge) -> int:
        return self._values[self.graph.edge_index(e)]

    def items(self) -> Iterator[tuple[Edge, int]]:
        return zip(self.graph.edges, self._values)

    def as_dict(self) -> dict[Edge, int]:
        return dict(self.items())

    def __eq__(self, other):
        if not isinstance(other, EdgeLabeling):
            return NotImplemented
        return self.graph == other.graph and self._values == other._values

    def __hash__(self):
        return hash((self.graph, self._values))


def _check_bijection(values: Sequence, q: int) -> None:
    for val in values:
        if isinstance(val, bool) or not isinstance(val, int):
            raise InvalidLabeling(f"label {val!r} is not an integer")
        if not 1 <= val <= q:
            raise InvalidLabeling(f"label {val} outside [1, {q}]")
    dupes = sorted(v for v, c in Counter(values).items() if c > 1)
    if dupes:
        raise InvalidLabeling(f"label(s) used more than once: {dupes[:10]}")


@dataclass(frozen=True)
class InducedColoring:
    color: dict[VertexTag, int]
    distinct_count: int

    def __getitem__(self, v: VertexTag) -> int:
        return self.color[v]


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`is_local_antimagic`; truthy iff the labeling passes."""

    ok: bool
    coloring: InducedColoring
    witness: Edge | None = field(default=None)

    def __bool__(self):
        return self.ok


def induced_colors(labeling: EdgeLabeling) -> InducedColoring:
    g = labeling.graph
    color = {v: 0 for v in g.vertices}
    for (a, b), val in labeling.items():
        color[a] += val
        color[b] += val
    return InducedColoring(color, len(set(color.values())))


def is_local_antimagic(labeling: EdgeLabeling) -> Verdict:
    coloring = induced_colors(labeling)
    for a, b in labeling.graph.edges:
        if coloring.color[a] == coloring.color[b]:
            return Verdict(False, coloring, (a, b))
    return Verdict(True, coloring)


def color_classes(labeling: EdgeLabeling) -> dict[int, frozenset[VertexTag]]:
    classes: dict[int, set[VertexTag]] = {}
    for v, c in induced_colors(labeling).color.items():
        classes.setdefault(c, set()).add(v)
    return {c: frozenset(classes[c]) for c in sorted(classes)}

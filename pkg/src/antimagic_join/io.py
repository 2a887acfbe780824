"""Canonical file formats: graph JSON, labeling sidecar, matrix CSV, DOT and
run manifests."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from pathlib import Path
from typing import Iterable

from .constructions import LabelMatrix
from .errors import InvalidInput, InvalidLabeling
from .graph import Graph, VertexTag
from .labeling import EdgeLabeling, color_classes, induced_colors, is_local_antimagic


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def graph_to_json(graph: Graph) -> dict:
    pos = {v: k for k, v in enumerate(graph.vertices)}
    return {
        "vertices": [v.to_json() for v in graph.vertices],
        "edges": [[pos[a], pos[b]] for a, b in graph.edges],
    }


def graph_from_json(obj: dict) -> Graph:
    try:
        verts = [VertexTag.from_json(v) for v in obj["vertices"]]
        pairs = [(int(a), int(b)) for a, b in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed graph JSON: {exc}") from None
    for a, b in pairs:
        if not (0 <= a < len(verts) and 0 <= b < len(verts)):
            raise InvalidInput(f"edge [{a},{b}] refers to a missing vertex")
    return Graph(verts, [(verts[a], verts[b]) for a, b in pairs])


def labeling_to_json(labeling: EdgeLabeling) -> dict:
    return {"labels": [[k, val] for k, val in enumerate(labeling.values)]}


def labeling_from_json(obj: dict, graph: Graph) -> EdgeLabeling:
    try:
        pairs = [(int(k), int(val)) for k, val in obj["labels"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidLabeling(f"malformed labeling JSON: {exc}") from None
    values: list = [None] * graph.size
    for k, val in pairs:
        if not 0 <= k < graph.size:
            raise InvalidLabeling(f"edge index {k} outside the graph's {graph.size} edges")
        if values[k] is not None:
            raise InvalidLabeling(f"edge index {k} labeled twice")
        values[k] = val
    if None in values:
        raise InvalidLabeling(f"edge index {values.index(None)} unlabeled")
    return EdgeLabeling(graph, values)


def _read_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: not valid JSON ({exc})") from None


def save_graph(graph: Graph, path: str | Path) -> None:
    Path(path).write_text(dumps(graph_to_json(graph)))


def load_graph(path: str | Path) -> Graph:
    return graph_from_json(_read_json(path))


def save_labeling(labeling: EdgeLabeling, path: str | Path) -> None:
    Path(path).write_text(dumps(labeling_to_json(labeling)))


def load_labeling(path: str | Path, graph: Graph) -> EdgeLabeling:
    return labeling_from_json(_read_json(path), graph)


def matrix_to_csv(mat: LabelMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["role"] + [f"i={i}" for i in range(1, mat.shape[1] + 1)])
    for role, row in zip(mat.roles, mat.rows):
        w.writerow([str(role), *row])
    return buf.getvalue()


def matrix_from_csv(text: str) -> list[list[int]]:
    rows = list(csv.reader(io.StringIO(text)))
    return [[int(x) for x in row[1:]] for row in rows[1:]]


def verification_report(labeling: EdgeLabeling) -> dict:
    verdict = is_local_antimagic(labeling)
    classes = color_classes(labeling)
    out = {
        "ok": verdict.ok,
        "order": labeling.graph.order,
        "size": labeling.graph.size,
        "color_count": verdict.coloring.distinct_count,
        "colors": sorted(classes),
        "classes": {str(c): sorted(str(v) for v in vs) for c, vs in classes.items()},
        "witness": None,
    }
    if verdict.witness is not None:
        a, b = verdict.witness
        out["witness"] = {"edge": [str(a), str(b)], "color": verdict.coloring.color[a]}
    return out


_PALETTE = (
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
)
_SHAPES = ("ellipse", "box", "diamond", "hexagon", "octagon", "triangle")


def _quote(s) -> str:
    # backslashes pass through so DOT escapes such as \n keep working
    return '"' + str(s).replace('"', '\\"') + '"'


def to_dot(graph: Graph, labeling: EdgeLabeling | None = None, name: str = "G") -> str:
    """DOT text; with a labeling, edges show ``f`` and vertices ``f+``, and
    each colour class gets its own fill and shape."""
    if labeling is not None and labeling.graph != graph:
        raise InvalidLabeling("labeling belongs to a different graph")
    ids = {v: f"n{k}" for k, v in enumerate(graph.vertices)}
    lines = [f"graph {_quote(name)} {{", "  node [style=filled];"]
    colors = induced_colors(labeling).color if labeling is not None else None
    rank = {c: r for r, c in enumerate(sorted(set(colors.values())))} if colors else {}
    for v in graph.vertices:
        if colors is None:
            lines.append(f"  {ids[v]} [label={_quote(v)}, fillcolor=\"white\"];")
        else:
            r = rank[colors[v]]
            text = _quote(str(v) + "\\n" + str(colors[v]))
            lines.append(
                f"  {ids[v]} [label={text}, "
                f"fillcolor={_quote(_PALETTE[r % len(_PALETTE)])}, shape={_SHAPES[r % len(_SHAPES)]}];"
            )
    for k, (a, b) in enumerate(graph.edges):
        if labeling is None:
            lines.append(f"  {ids[a]} -- {ids[b]};")
        else:
            lines.append(f"  {ids[a]} -- {ids[b]} [label={_quote(labeling.values[k])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def sha256_file(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_manifest(
    path: str | Path,
    command: str,
    parameters: dict,
    inputs: Iterable[str | Path] = (),
    outputs: Iterable[str | Path] = (),
    verdicts: dict | None = None,
    wall_time: float = 0.0,
) -> dict:
    manifest = {
        "command": command,
        "parameters": parameters,
        "inputs": {str(p): sha256_file(p) for p in inputs},
        "outputs": {str(p): sha256_file(p) for p in outputs},
        "verdicts": verdicts or {},
        "wall_time": round(wall_time, 6),
    }
    Path(path).write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n")
    return manifest

"""Magic rectangles, equal-sum block partitions of pair-sum sequences, the
block-merged graph families and the delete-add edge swap."""

from __future__ import annotations

import hashlib
import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .constructions import (
    EVEN,
    ColorTriple,
    apply_matrix,
    label_matrix,
    merge_labeled,
    pair_sum_constant,
    predicted_colors,
    s_sequence,
)
from .errors import (
    InternalConsistencyError,
    InvalidInput,
    InvalidParameter,
    PartitionFailure,
    PreconditionViolation,
    UnsupportedDimension,
)
from .graph import Graph, Kind, VertexTag, edge_key
from .labeling import EdgeLabeling, induced_colors, is_local_antimagic

Block = tuple[int, ...]
Partition = tuple[Block, ...]


# -- magic rectangles -------------------------------------------------------


@dataclass(frozen=True)
class MagicRectangle:
    entries: tuple[tuple[int, ...], ...]

    @property
    def a(self) -> int:
        return len(self.entries)

    @property
    def b(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def rows(self) -> list[tuple[int, ...]]:
        return list(self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return list(zip(*self.entries))

    def is_valid(self) -> bool:
        a, b = self.a, self.b
        if a == 0 or any(len(r) != b for r in self.entries):
            return False
        n = a * b
        if sorted(x for r in self.entries for x in r) != list(range(1, n + 1)):
            return False
        if any(2 * sum(r) != b * (n + 1) for r in self.entries):
            return False
        return all(2 * sum(c) == a * (n + 1) for c in self.columns())


def validate_magic_rectangle(entries: Sequence[Sequence[int]]) -> MagicRectangle:
    rect = MagicRectangle(tuple(tuple(int(x) for x in row) for row in entries))
    if not rect.is_valid():
        raise InvalidInput("not a magic rectangle")
    return rect


def _siamese(n: int) -> list[list[int]]:
    sq = [[0] * n for _ in range(n)]
    r, c = 0, n // 2
    for val in range(1, n * n + 1):
        sq[r][c] = val
        nr, nc = (r - 1) % n, (c + 1) % n
        if sq[nr][nc]:
            nr, nc = (r + 1) % n, c
        r, c = nr, nc
    return sq


def _kotzig_rows(rows: int, n: int) -> list[list[int]]:
    # rows x n array, each row a permutation of 0..n-1, constant column sums
    h = (n - 1) // 2
    out = [list(range(n)), [(j + h) % n for j in range(n)]]
    out.append([3 * h - out[0][j] - out[1][j] for j in range(n)])
    for t in range((rows - 3) // 2):
        p = [(j + t + 1) % n for j in range(n)]
        out.append(p)
        out.append([n - 1 - x for x in p])
    return out


def _three_by(b: int) -> list[list[int]] | None:
    # entry = 3*K + L + 1 with K a Kotzig array over Z_b and L a column-wise
    # permutation of Z_3 chosen by DFS so that rows balance and pairs are distinct
    kot = _kotzig_rows(3, b)
    perms = list(itertools.permutations(range(3)))
    target = b
    used: set[tuple[int, int]] = set()
    sums = [0, 0, 0]
    chosen: list[tuple[int, ...]] = []

    def dfs(j: int) -> bool:
        if j == b:
            return True
        rem = b - j - 1
        for p in perms:
            cells = [(kot[r][j], p[r]) for r in range(3)]
            if any(c in used for c in cells):
                continue
            if not all(0 <= target - sums[r] - p[r] <= 2 * rem for r in range(3)):
                continue
            used.update(cells)
            for r in range(3):
                sums[r] += p[r]
            chosen.append(p)
            if dfs(j + 1):
                return True
            chosen.pop()
            for r in range(3):
                sums[r] -= p[r]
            used.difference_update(cells)
        return False

    if not dfs(0):
        return None
    return [[3 * kot[r][j] + chosen[j][r] + 1 for j in range(b)] for r in range(3)]


def _anneal(a: int, b: int, seed: int, steps: int) -> list[list[int]] | None:
    rng = random.Random(seed)
    n = a * b
    vals = list(range(1, n + 1))
    rng.shuffle(vals)
    grid = [vals[r * b:(r + 1) * b] for r in range(a)]
    row_dev = [sum(row) - b * (n + 1) // 2 for row in grid]
    col_dev = [sum(grid[r][c] for r in range(a)) - a * (n + 1) // 2 for c in range(b)]
    cost = sum(x * x for x in row_dev) + sum(x * x for x in col_dev)
    temp = 1.0
    for _ in range(steps):
        if cost == 0:
            return grid
        r1, c1, r2, c2 = rng.randrange(a), rng.randrange(b), rng.randrange(a), rng.randrange(b)
        d = grid[r2][c2] - grid[r1][c1]
        if d == 0 or (r1 == r2 and c1 == c2):
            continue
        new_rows = {r1: row_dev[r1] + d}
        new_rows[r2] = new_rows.get(r2, row_dev[r2]) - d
        new_cols = {c1: col_dev[c1] + d}
        new_cols[c2] = new_cols.get(c2, col_dev[c2]) - d
        delta = (
            sum(v * v for v in new_rows.values())
            + sum(v * v for v in new_cols.values())
            - sum(row_dev[r] ** 2 for r in new_rows)
            - sum(col_dev[c] ** 2 for c in new_cols)
        )
        if delta <= 0 or rng.random() < 2.718281828 ** (-delta / temp):
            grid[r1][c1], grid[r2][c2] = grid[r2][c2], grid[r1][c1]
            for r, v in new_rows.items():
                row_dev[r] = v
            for c, v in new_cols.items():
                col_dev[c] = v
            cost += delta
        temp = max(0.05, temp * 0.9999)
    return None


@lru_cache(maxsize=None)
def _magic_entries(a: int, b: int) -> tuple[tuple[int, ...], ...]:
    if a == b:
        # transposed Siamese square; for order 3 this is [[8,3,4],[1,5,9],[6,7,2]]
        grid = [list(col) for col in zip(*_siamese(a))]
    elif min(a, b) == 3:
        grid = _three_by(max(a, b))
        if grid is not None and a != 3:
            grid = [list(col) for col in zip(*grid)]
    else:
        grid = None
    seed = 0
    while grid is None:
        if seed >= 500:
            raise InternalConsistencyError(f"no {a}x{b} magic rectangle found")
        grid = _anneal(a, b, seed, 200_000)
        seed += 1
    return tuple(tuple(row) for row in grid)


def magic_rectangle(a: int, b: int) -> MagicRectangle:
    """Deterministic ``a x b`` magic rectangle for odd ``a, b >= 3``."""
    if a < 3 or b < 3 or a % 2 == 0 or b % 2 == 0:
        raise UnsupportedDimension(f"only odd dimensions >= 3 are supported, got {a}x{b}")
    rect = MagicRectangle(_magic_entries(a, b))
    if not rect.is_valid():
        raise InternalConsistencyError(f"{a}x{b} construction failed validation")
    return rect


# -- equal-sum partitions ---------------------------------------------------


def _is_arithmetic(seq: Sequence[int]) -> bool:
    return len(seq) < 2 or len({b - a for a, b in zip(seq, seq[1:])}) == 1


def _normalise(blocks) -> Partition:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def check_partition(seq: Sequence[int], part: Partition, nblocks: int, size: int) -> int:
    """Validate ``part`` as an equal-sum partition of positions ``1..len(seq)``
    into ``nblocks`` blocks of ``size``; return the block sum."""
    flat = sorted(i for b in part for i in b)
    if flat != list(range(1, len(seq) + 1)):
        raise PartitionFailure("blocks do not cover every position exactly once")
    if len(part) != nblocks or any(len(b) != size for b in part):
        raise PartitionFailure(f"expected {nblocks} blocks of size {size}")
    sums = {sum(seq[i - 1] for i in b) for b in part}
    if len(sums) != 1:
        raise PartitionFailure(f"block sums differ: {sorted(sums)}")
    return sums.pop()


def equal_sum_partitions(seq: Sequence[int], nblocks: int, size: int) -> Iterator[Partition]:
    """All equal-sum partitions of positions ``1..len(seq)`` in lexicographic
    order (each block sorted, blocks ordered by their smallest position)."""
    total = sum(seq)
    if len(seq) != nblocks * size or total % nblocks:
        return
    target = total // nblocks

    def rec(remaining: tuple[int, ...]) -> Iterator[list[Block]]:
        if not remaining:
            yield []
            return
        head, rest = remaining[0], remaining[1:]
        need = target - seq[head - 1]
        for combo in itertools.combinations(rest, size - 1):
            if sum(seq[i - 1] for i in combo) != need:
                continue
            block = (head,) + combo
            left = tuple(i for i in rest if i not in combo)
            for tail in rec(left):
                yield [block] + tail

    for blocks in rec(tuple(range(1, len(seq) + 1))):
        yield tuple(blocks)


def parse_scheme(scheme) -> tuple[str, int]:
    """``"rows"``, ``"columns"``, ``"chunks"`` or ``"search:<seed>"``."""
    if isinstance(scheme, tuple):
        return scheme
    name, _, arg = str(scheme).partition(":")
    if name in ("rows", "columns", "chunks") and not arg:
        return name, 0
    if name == "search":
        try:
            return name, int(arg or 0)
        except ValueError:
            pass
    raise InvalidParameter(f"unknown partition scheme {scheme!r}")


def partition_sequence(seq: Sequence[int], r: int, s: int, scheme="rows") -> Partition:
    """Split positions ``1..(2r+1)(2s+1)`` of ``seq`` into ``2r+1`` blocks of
    ``2s+1`` with equal sums.

    ``rows``/``columns`` read the blocks off the rows of a
    ``(2r+1) x (2s+1)`` magic rectangle or the columns of a
    ``(2s+1) x (2r+1)`` one, treating entries as positions; this needs
    ``seq`` to be arithmetic.  ``chunks`` takes consecutive runs (constant
    sequences only).  ``search:<seed>`` returns the seed-th partition in
    lexicographic order.
    """
    nblocks, size = 2 * r + 1, 2 * s + 1
    if r < 1 or s < 1:
        raise InvalidParameter("r and s must be >= 1")
    if len(seq) != nblocks * size:
        raise InvalidParameter(f"sequence of length {len(seq)} cannot split into {nblocks}x{size}")
    name, seed = parse_scheme(scheme)
    if name in ("rows", "columns", "chunks"):
        if not _is_arithmetic(seq):
            raise PartitionFailure(f"scheme {name!r} needs an arithmetic sequence")
        if name == "rows":
            part = _normalise(magic_rectangle(nblocks, size).rows())
        elif name == "columns":
            part = _normalise(magic_rectangle(size, nblocks).columns())
        else:
            part = tuple(tuple(range(b * size + 1, (b + 1) * size + 1)) for b in range(nblocks))
    else:
        if seed < 0:
            raise InvalidParameter("search seed must be non-negative")
        part = next(itertools.islice(equal_sum_partitions(seq, nblocks, size), seed, None), None)
        if part is None:
            raise PartitionFailure(f"fewer than {seed + 1} equal-sum partitions exist")
    check_partition(seq, part, nblocks, size)
    return part


# -- block-merged families --------------------------------------------------


@dataclass
class FamilyMember:
    graph: Graph
    labeling: EdgeLabeling
    provenance: dict
    aliases: list[dict] = field(default_factory=list)

    @property
    def colors(self) -> dict[VertexTag, int]:
        return induced_colors(self.labeling).color

    @property
    def color_set(self) -> set[int]:
        return set(self.colors.values())


def block_k(r: int, s: int) -> int:
    if r < 1 or s < 1:
        raise InvalidParameter("r and s must be >= 1")
    return ((2 * r + 1) * (2 * s + 1) - 1) // 2


def family_colors(n: int, r: int, s: int, parity: str) -> ColorTriple:
    """Predicted (merged x, u, v) colours of every member of the family."""
    k = block_k(r, s)
    base = predicted_colors(n, k, parity)
    return ColorTriple((2 * s + 1) * pair_sum_constant(n, k, parity), base.u_color, base.v_color)


def build_family_member(n: int, r: int, s: int, parity: str, schemes="rows", k: int | None = None) -> FamilyMember:
    """Merge each equal-sum block of ``x_{i,j}`` vertices of the labelled
    ``(2k+1)(P2 v O_m)`` into one vertex, ``2k+1 = (2r+1)(2s+1)``.

    ``schemes`` is one scheme for every ``j`` or a list with one per ``j``;
    explicit partitions (tuples of blocks) are accepted in place of names.
    """
    kk = block_k(r, s)
    if k is not None and k != kk:
        raise InvalidParameter(f"2k+1 = {2 * k + 1} is not (2r+1)(2s+1) = {2 * kk + 1}")
    k = kk
    mat = label_matrix(n, k, parity)
    m = mat.m
    if _is_single_scheme(schemes) or _looks_like_partition(schemes):
        schemes = [schemes] * m
    schemes = list(schemes)
    if len(schemes) != m:
        raise InvalidParameter(f"need {m} schemes, got {len(schemes)}")

    graph, labeling = apply_matrix(mat)
    groups = []
    descriptors = []
    for j, scheme in enumerate(schemes, start=1):
        seq = s_sequence(n, k, parity, j, mat)
        if _looks_like_partition(scheme):
            part = _normalise(scheme)
            check_partition(seq, part, 2 * r + 1, 2 * s + 1)
            descriptors.append([list(b) for b in part])
        else:
            part = partition_sequence(seq, r, s, scheme)
            name, seed = parse_scheme(scheme)
            descriptors.append(f"search:{seed}" if name == "search" else name)
        groups.extend([VertexTag.xcopy(i, j) for i in block] for block in part)
    graph, labeling = merge_labeled(graph, labeling, groups)
    member = FamilyMember(
        graph,
        labeling,
        {"parity": parity, "n": n, "k": k, "r": r, "s": s, "schemes": descriptors, "delete_add": []},
    )
    _certify(member)
    return member


def _is_single_scheme(obj) -> bool:
    return isinstance(obj, str) or (
        isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], str) and isinstance(obj[1], int)
    )


def _looks_like_partition(obj) -> bool:
    return (
        isinstance(obj, (list, tuple))
        and bool(obj)
        and all(isinstance(b, (list, tuple)) and all(isinstance(i, int) for i in b) for b in obj)
    )


def _certify(member: FamilyMember) -> None:
    verdict = is_local_antimagic(member.labeling)
    if not verdict or verdict.coloring.distinct_count != 3:
        raise InternalConsistencyError(
            f"family member is not a local antimagic 3-colouring: {member.provenance}"
        )


# -- delete-add -------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SwapPair:
    """Swap the ``u_i, v_i`` attachment of ``x`` with the ``u_i', v_i'``
    attachment of ``x_prime``."""

    x: VertexTag
    x_prime: VertexTag
    i: int
    i_prime: int

    def to_json(self) -> dict:
        return {"x": str(self.x), "x_prime": str(self.x_prime), "i": self.i, "i_prime": self.i_prime}


def _pair_sum_for(member: FamilyMember) -> int:
    prov = member.provenance
    if prov["parity"] == EVEN and prov["n"] < 2:
        raise PreconditionViolation("delete-add needs an even family with n >= 2 or an odd family")
    return pair_sum_constant(prov["n"], prov["k"], prov["parity"])


def _attached(member: FamilyMember, x: VertexTag, i: int) -> int | None:
    """Label sum of ``x u_i`` and ``x v_i`` if both edges exist."""
    g = member.graph
    u, v = VertexTag.u(i), VertexTag.v(i)
    if not (g.has_edge(x, u) and g.has_edge(x, v)):
        return None
    lab = member.labeling
    return lab[edge_key(x, u)] + lab[edge_key(x, v)]


def eligible_delete_add_pairs(member: FamilyMember) -> list[SwapPair]:
    target = _pair_sum_for(member)
    s = member.provenance["s"]
    g = member.graph
    xs = [t for t in g.vertices if t.kind is Kind.MERGED and g.degree(t) == 4 * s + 2]
    hits = {}
    for x in xs:
        ids = sorted({w.i for w in g.neighbors(x) if w.kind is Kind.U})
        hits[x] = [i for i in ids if _attached(member, x, i) == target]
    out = []
    for a_idx, x in enumerate(xs):
        if not hits[x]:
            continue
        for y in xs[a_idx + 1:]:
            if not hits[y] or g.neighbors(x) & g.neighbors(y):
                continue
            out.extend(SwapPair(x, y, i, j) for i in hits[x] for j in hits[y])
    return out


def delete_add(member: FamilyMember, pair: SwapPair) -> FamilyMember:
    """Exchange the two attachments; labels travel with their ``u``/``v``
    endpoint.  Applying the same pair twice restores the original graph."""
    target = _pair_sum_for(member)
    x, y, i, j = pair.x, pair.x_prime, pair.i, pair.i_prime
    g = member.graph
    if x not in g or y not in g or x == y:
        raise PreconditionViolation("swap vertices must be two distinct vertices of the graph")
    if _attached(member, x, i) is None and _attached(member, x, j) is not None:
        i, j = j, i
    if _attached(member, x, i) != target or _attached(member, y, j) != target:
        raise PreconditionViolation(f"pair {pair.to_json()} does not carry two pair-sums of {target}")
    if g.neighbors(x) & g.neighbors(y):
        raise PreconditionViolation(f"{x} and {y} share neighbours")

    labels = member.labeling.as_dict()
    moves = []
    for src, dst, idx in ((x, y, i), (y, x, j)):
        for end in (VertexTag.u(idx), VertexTag.v(idx)):
            moves.append((edge_key(src, end), edge_key(dst, end)))
    carried = {new: labels.pop(old) for old, new in moves}
    labels.update(carried)
    graph = Graph(g.vertices, labels.keys())
    prov = dict(member.provenance)
    prov["delete_add"] = list(prov["delete_add"]) + [SwapPair(x, y, i, j).to_json()]
    out = FamilyMember(graph, EdgeLabeling(graph, labels), prov)
    _certify(out)
    return out


# -- enumeration ------------------------------------------------------------


def _wl_hash(graph: Graph, colors: dict[VertexTag, int], rounds: int = 3) -> str:
    lab = {v: str(colors[v]) for v in graph.vertices}
    for _ in range(rounds):
        lab = {
            v: hashlib.sha1((lab[v] + "|" + ",".join(sorted(lab[w] for w in graph.neighbors(v)))).encode()).hexdigest()
            for v in graph.vertices
        }
    return hashlib.sha1(",".join(sorted(lab.values())).encode()).hexdigest()


def invariant_key(member: FamilyMember) -> tuple:
    """Cheap isomorphism invariant: equal keys mean "possibly isomorphic"."""
    g = member.graph
    colors = member.colors
    return (
        tuple(g.degree_sequence()),
        tuple(sorted(colors.values())),
        tuple(sorted(len(c) for c in g.components())),
        tuple(sorted(Counter(colors.values()).values())),
        _wl_hash(g, colors),
    )


def enumerate_family(
    n: int,
    r: int,
    s: int,
    parity: str,
    schemes: Sequence = ("rows", "columns"),
    max_schemes: int = 64,
    delete_add_depth: int = 0,
    max_members: int = 256,
) -> list[FamilyMember]:
    """Members built from every per-``j`` choice among ``schemes`` (at most
    ``max_schemes`` combinations), then grown breadth-first by delete-add up
    to ``delete_add_depth`` swaps.  Members sharing an invariant key are
    folded into the first one's ``aliases``."""
    m = 2 * n if parity == EVEN else 2 * n + 1
    by_key: dict[tuple, FamilyMember] = {}
    seen_graphs: set[Graph] = set()
    frontier: list[tuple[FamilyMember, SwapPair | None]] = []
    generated = 0

    def record(member: FamilyMember) -> bool:
        nonlocal generated
        if member.graph in seen_graphs:
            return False
        seen_graphs.add(member.graph)
        generated += 1
        key = invariant_key(member)
        if key in by_key:
            by_key[key].aliases.append(member.provenance)
        else:
            by_key[key] = member
        return True

    for combo in itertools.islice(itertools.product(schemes, repeat=m), max_schemes):
        try:
            member = build_family_member(n, r, s, parity, list(combo))
        except PartitionFailure:
            continue
        if record(member):
            frontier.append((member, None))
        if generated >= max_members:
            break

    swappable = not (parity == EVEN and n < 2)
    for _ in range(delete_add_depth if swappable else 0):
        nxt = []
        for member, last in frontier:
            for pair in eligible_delete_add_pairs(member):
                if last is not None and {pair.x, pair.x_prime} == {last.x, last.x_prime} and {
                    pair.i,
                    pair.i_prime,
                } == {last.i, last.i_prime}:
                    continue
                if generated >= max_members:
                    break
                child = delete_add(member, pair)
                if record(child):
                    nxt.append((child, pair))
        frontier = nxt
        if not frontier or generated >= max_members:
            break
    return list(by_key.values())
